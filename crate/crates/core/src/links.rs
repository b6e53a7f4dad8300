//! Braid words, closures, framings, cabling and linking matrices.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::linalg::{integer_determinant, symmetric_eigenvalues};
use crate::qcore::FormalColor;
use crate::reps::WeightModule;
use crate::{Error, Result, Scalar};

/// A braid on `strands` strands; letter `±i` is `σ_i^{±1}`, `1 ≤ i < strands`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::OutOfRange { what: "strand count", value: 0 });
        }
        for &l in &letters {
            let i = l.unsigned_abs() as usize;
            if l == 0 || i >= strands {
                return Err(Error::GeneratorOutOfRange { letter: l, needed: i + 1, strands });
            }
        }
        Ok(Self { strands, letters })
    }

    /// Parses `strands ':' signed-int*`, e.g. `"3: 1 -2 1 -2"`.
    pub fn parse(text: &str) -> Result<Self> {
        let colon = text.find(':').ok_or(Error::Parse { pos: text.len(), msg: "expected ':'".into() })?;
        let head = &text[..colon];
        let strands = head.trim().parse::<usize>().map_err(|_| Error::Parse {
            pos: head.len() - head.trim_start().len(),
            msg: format!("expected a strand count, found {:?}", head.trim()),
        })?;
        let mut letters = Vec::new();
        let body = &text[colon + 1..];
        let mut offset = colon + 1;
        for token in body.split_inclusive(char::is_whitespace) {
            let word = token.trim();
            if !word.is_empty() {
                let pos = offset + (token.len() - token.trim_start().len());
                let l = word.parse::<i32>().map_err(|_| Error::Parse { pos, msg: format!("expected a signed generator, found {word:?}") })?;
                letters.push(l);
            }
            offset += token.len();
        }
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Sum of crossing signs.
    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|&l| l.signum() as i64).sum()
    }

    /// `perm[p]`: the bottom position reached by the strand entering at top `p`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize;
            at.swap(i - 1, i);
        }
        let mut perm = vec![0; self.strands];
        for (bottom, &top) in at.iter().enumerate() {
            perm[top] = bottom;
        }
        perm
    }

    pub fn inverse(&self) -> Self {
        Self { strands: self.strands, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &BraidWord) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::Arity { what: "strands", expected: self.strands, got: other.strands });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self { strands: self.strands, letters })
    }

    /// `g·self·g⁻¹`, a Markov conjugation with the same closure.
    pub fn conjugated(&self, g: &BraidWord) -> Result<Self> {
        g.then(self)?.then(&g.inverse())
    }

    /// Markov stabilization: one more strand and a trailing `σ_n^{±1}`.
    pub fn stabilized(&self, sign: i8) -> Self {
        let mut letters = self.letters.clone();
        letters.push(if sign >= 0 { self.strands as i32 } else { -(self.strands as i32) });
        Self { strands: self.strands + 1, letters }
    }

    /// `σ_1σ_2…σ_{s−1}`: carries the strand at top position 1 to position `s`.
    pub fn carrier(strands: usize, s: usize) -> Self {
        Self { strands, letters: (1..s as i32).collect() }
    }

    pub fn closure(&self) -> ClosureData {
        closure_components(self)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.strands)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Components of a braid closure and crossing-sign sums between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureData {
    /// Top positions of each component, in traversal order from its smallest.
    pub components: Vec<Vec<usize>>,
    /// Component of each top position.
    pub component_of: Vec<usize>,
    /// `crossings[i][j]`: sum of signs of crossings between components `i`
    /// and `j`; the diagonal is the self-writhe.
    pub crossings: Vec<Vec<i64>>,
}

impl ClosureData {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn writhe(&self, c: usize) -> i64 {
        self.crossings[c][c]
    }

    pub fn linking(&self, i: usize, j: usize) -> i64 {
        self.crossings[i][j] / 2
    }
}

pub fn closure_components(b: &BraidWord) -> ClosureData {
    let perm = b.permutation();
    let mut component_of = vec![usize::MAX; b.strands];
    let mut components = Vec::new();
    for start in 0..b.strands {
        if component_of[start] != usize::MAX {
            continue;
        }
        let mut cycle = Vec::new();
        let mut p = start;
        while component_of[p] == usize::MAX {
            component_of[p] = components.len();
            cycle.push(p);
            p = perm[p];
        }
        components.push(cycle);
    }
    let n = components.len();
    let mut crossings = vec![vec![0i64; n]; n];
    let mut at: Vec<usize> = (0..b.strands).collect();
    for &l in &b.letters {
        let i = l.unsigned_abs() as usize;
        let (x, y) = (component_of[at[i - 1]], component_of[at[i]]);
        let s = l.signum() as i64;
        crossings[x][y] += s;
        if x != y {
            crossings[y][x] += s;
        }
        at.swap(i - 1, i);
    }
    ClosureData { components, component_of, crossings }
}

/// A component color: one module, or a formal combination expanded
/// multilinearly at evaluation.
#[derive(Debug, Clone)]
pub enum Color {
    Module(WeightModule),
    Formal(FormalColor),
}

impl From<WeightModule> for Color {
    fn from(m: WeightModule) -> Self {
        Color::Module(m)
    }
}

impl From<FormalColor> for Color {
    fn from(c: FormalColor) -> Self {
        Color::Formal(c)
    }
}

impl Color {
    pub fn terms(&self) -> Vec<(Scalar, &WeightModule)> {
        match self {
            Color::Module(m) => vec![(Scalar::new(1.0, 0.0), m)],
            Color::Formal(f) => f.terms().collect(),
        }
    }

    pub fn as_module(&self) -> Option<&WeightModule> {
        match self {
            Color::Module(m) => Some(m),
            Color::Formal(_) => None,
        }
    }
}

/// A braid closure with a color and framing per component and an optional
/// component cut open.
#[derive(Debug, Clone)]
pub struct ColoredBraidClosure {
    braid: BraidWord,
    closure: ClosureData,
    pub colors: Vec<Color>,
    pub framings: Vec<i64>,
    pub cut: Option<usize>,
}

impl ColoredBraidClosure {
    pub fn new(braid: BraidWord, colors: Vec<Color>, framings: Vec<i64>, cut: Option<usize>) -> Result<Self> {
        let closure = braid.closure();
        let n = closure.len();
        if colors.len() != n {
            return Err(Error::Arity { what: "component colors", expected: n, got: colors.len() });
        }
        if framings.len() != n {
            return Err(Error::Arity { what: "component framings", expected: n, got: framings.len() });
        }
        if let Some(c) = cut {
            if c >= n {
                return Err(Error::OutOfRange { what: "cut component", value: c as i64 });
            }
        }
        Ok(Self { braid, closure, colors, framings, cut })
    }

    /// Every component colored by `color`, with the blackboard framing.
    pub fn uniform(braid: BraidWord, color: impl Into<Color>) -> Result<Self> {
        let closure = braid.closure();
        let color = color.into();
        let framings = (0..closure.len()).map(|c| closure.writhe(c)).collect();
        Self::new(braid, vec![color; closure.len()], framings, None)
    }

    pub fn braid(&self) -> &BraidWord {
        &self.braid
    }

    pub fn closure(&self) -> &ClosureData {
        &self.closure
    }

    pub fn num_components(&self) -> usize {
        self.closure.len()
    }

    pub fn with_cut(mut self, cut: Option<usize>) -> Result<Self> {
        if cut.is_some_and(|c| c >= self.num_components()) {
            return Err(Error::OutOfRange { what: "cut component", value: cut.unwrap_or(0) as i64 });
        }
        self.cut = cut;
        Ok(self)
    }

    /// Multilinear expansion into single-module colorings, in lexicographic
    /// order of the per-component terms.
    pub fn expand(&self) -> Vec<(Scalar, Vec<WeightModule>)> {
        let mut out = vec![(Scalar::new(1.0, 0.0), Vec::new())];
        for color in &self.colors {
            let terms = color.terms();
            let mut next = Vec::with_capacity(out.len() * terms.len());
            for (c, mods) in &out {
                for (t, m) in &terms {
                    let mut mods = mods.clone();
                    mods.push((*m).clone());
                    next.push((c * t, mods));
                }
            }
            out = next;
        }
        out
    }

    pub fn linking_data(&self) -> LinkingData {
        let all: Vec<usize> = (0..self.num_components()).collect();
        linking_data(&self.closure, &self.framings, &all)
    }
}

/// Blackboard parallel: the strand entering at top position `p` is replaced
/// by `widths[p]` parallel strands (zero deletes it). Widths must be
/// constant on closure components.
pub fn cable(b: &BraidWord, widths: &[usize]) -> Result<(usize, Vec<i32>)> {
    if widths.len() != b.strands {
        return Err(Error::Arity { what: "cable widths", expected: b.strands, got: widths.len() });
    }
    let cd = b.closure();
    for comp in &cd.components {
        if comp.iter().any(|&p| widths[p] != widths[comp[0]]) {
            return Err(Error::Shape("cable widths differ along a component".into()));
        }
    }
    let mut w = widths.to_vec();
    let mut out = Vec::new();
    for &l in &b.letters {
        let i = l.unsigned_abs() as usize;
        let offset = 1 + w[..i - 1].iter().sum::<usize>() as i32;
        let (wa, wb) = (w[i - 1], w[i]);
        if l > 0 {
            out.extend(crossing_block(offset, wa, wb));
        } else {
            out.extend(crossing_block(offset, wb, wa).iter().rev().map(|g| -g));
        }
        w.swap(i - 1, i);
    }
    Ok((widths.iter().sum(), out))
}

/// Positive crossing of a block of `a` strands over a block of `b` strands
/// starting at generator `offset`.
fn crossing_block(offset: i32, a: usize, b: usize) -> Vec<i32> {
    let mut out = Vec::with_capacity(a * b);
    for s in (0..a as i32).rev() {
        for t in 0..b as i32 {
            out.push(offset + s + t);
        }
    }
    out
}

/// 2-cable of a knot braid followed by `twists` full twists of the first
/// strand pair. Component `A` occupies the even top positions, `B` the odd
/// ones; `lk(A, B) = writhe(b) + twists`.
pub fn cable2(b: &BraidWord, twists: i64) -> Result<BraidWord> {
    let n = b.closure().len();
    if n != 1 {
        return Err(Error::NotAKnot(n));
    }
    let (strands, mut letters) = cable(b, &vec![2; b.strands])?;
    let g = if twists >= 0 { 1 } else { -1 };
    letters.extend(core::iter::repeat_n(g, 2 * twists.unsigned_abs() as usize));
    BraidWord::new(strands, letters)
}

/// Coefficients `c_k` of `T_n = Σ_k c_k·L^{(k)}` (k-fold parallels), from
/// `T_n = L·T_{n−1} − T_{n−2}`, `T_0 = ∅`, `T_1 = L`.
pub fn chebyshev_expand(n: usize) -> Vec<i64> {
    let mut prev = vec![1i64];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![0, 1];
    for _ in 1..n {
        let mut next = vec![0i64; cur.len() + 1];
        for (k, &c) in cur.iter().enumerate() {
            next[k + 1] += c;
        }
        for (k, &c) in prev.iter().enumerate() {
            next[k] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Linking matrix, signature and `|det|` of a sublink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkingData {
    pub matrix: Vec<Vec<i64>>,
    /// Numbers of positive and negative eigenvalues.
    pub signature: (usize, usize),
    pub det_abs: u128,
}

impl LinkingData {
    pub fn from_matrix(matrix: Vec<Vec<i64>>) -> Self {
        let real: Vec<Vec<f64>> = matrix.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
        let ev = symmetric_eigenvalues(&real);
        let p = ev.iter().filter(|&&x| x > 1e-9).count();
        let s = ev.iter().filter(|&&x| x < -1e-9).count();
        let det_abs = integer_determinant(&matrix).unsigned_abs();
        Self { matrix, signature: (p, s), det_abs }
    }
}

/// Linking data of the components `subset`, with `framings` on the diagonal.
pub fn linking_data(cd: &ClosureData, framings: &[i64], subset: &[usize]) -> LinkingData {
    let matrix = subset
        .iter()
        .map(|&i| subset.iter().map(|&j| if i == j { framings[i] } else { cd.linking(i, j) }).collect())
        .collect();
    LinkingData::from_matrix(matrix)
}

/// Small built-in braids: `unknot`, `trefoil`, `figure8`, `hopf`.
pub fn knot_table(name: &str) -> Result<BraidWord> {
    let text = match name {
        "unknot" => "1:",
        "trefoil" => "2: 1 1 1",
        "figure8" => "3: 1 -2 1 -2",
        "hopf" => "2: 1 1",
        _ => return Err(Error::UnknownKnot(name.to_string())),
    };
    BraidWord::parse(text)
}

pub fn knot_names() -> &'static [&'static str] {
    &["unknot", "trefoil", "figure8", "hopf"]
}

/// A readable `name[:framing]`-style label for reports.
pub fn describe(b: &BraidWord) -> String {
    for name in knot_names() {
        if knot_table(name).is_ok_and(|k| &k == b) {
            return (*name).to_string();
        }
    }
    b.to_string()
}
