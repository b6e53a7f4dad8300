//! Braiding, twist, duality and partial quantum traces.
//!
//! Operators on `W_1 ⊗ … ⊗ W_k` use row-major flat indices, first factor
//! most significant (the same layout as [`Mat::kron`]).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::{Float, Zero};

use crate::linalg::Mat;
use crate::reps::{ModuleKind, WeightModule};
use crate::{Error, Result, Scalar};

/// Tolerance for deciding that a tangle endomorphism is scalar.
pub const SCALAR_TOL: f64 = 1e-8;

/// A sparse linear map between tensor products, with factor shapes.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator {
    domain: Vec<usize>,
    codomain: Vec<usize>,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl SparseOperator {
    pub fn zero(domain: Vec<usize>, codomain: Vec<usize>) -> Self {
        Self { domain, codomain, entries: BTreeMap::new() }
    }

    pub fn identity(dims: Vec<usize>) -> Self {
        let n = dims.iter().product();
        let entries = (0..n).map(|i| ((i, i), Scalar::new(1.0, 0.0))).collect();
        Self { domain: dims.clone(), codomain: dims, entries }
    }

    pub fn from_dense(m: &Mat, domain: Vec<usize>, codomain: Vec<usize>) -> Result<Self> {
        if m.cols() != domain.iter().product::<usize>() || m.rows() != codomain.iter().product::<usize>() {
            return Err(Error::Shape(format!("{}x{} matrix vs factors {domain:?} -> {codomain:?}", m.rows(), m.cols())));
        }
        let mut op = Self::zero(domain, codomain);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                op.insert(i, j, m[(i, j)]);
            }
        }
        Ok(op)
    }

    /// Adds `v` at `(row, col)`; exact zeros are not stored.
    pub fn insert(&mut self, row: usize, col: usize, v: Scalar) {
        if v.is_zero() {
            return;
        }
        let e = self.entries.entry((row, col)).or_insert(Scalar::zero());
        *e += v;
    }

    pub fn domain(&self) -> &[usize] {
        &self.domain
    }

    pub fn codomain(&self) -> &[usize] {
        &self.codomain
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, row: usize, col: usize) -> Scalar {
        self.entries.get(&(row, col)).copied().unwrap_or(Scalar::zero())
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Scalar)> + '_ {
        self.entries.iter().map(|(&(i, j), &v)| (i, j, v))
    }

    pub fn to_dense(&self) -> Mat {
        let mut m = Mat::zeros(self.codomain.iter().product(), self.domain.iter().product());
        for (i, j, v) in self.entries() {
            m[(i, j)] = v;
        }
        m
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &SparseOperator) -> Result<SparseOperator> {
        if rhs.codomain != self.domain {
            return Err(Error::Shape(format!("compose {:?} after {:?}", self.domain, rhs.codomain)));
        }
        let mut by_row: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
        for (i, j, v) in self.entries() {
            by_row.entry(j).or_default().push((i, v));
        }
        let mut out = Self::zero(rhs.domain.clone(), self.codomain.clone());
        for (k, j, v) in rhs.entries() {
            if let Some(col) = by_row.get(&k) {
                for &(i, w) in col {
                    out.insert(i, j, w * v);
                }
            }
        }
        Ok(out)
    }

    pub fn tensor(&self, other: &SparseOperator) -> SparseOperator {
        let (or, oc) = (other.codomain.iter().product::<usize>(), other.domain.iter().product::<usize>());
        let mut domain = self.domain.clone();
        domain.extend_from_slice(&other.domain);
        let mut codomain = self.codomain.clone();
        codomain.extend_from_slice(&other.codomain);
        let mut out = Self::zero(domain, codomain);
        for (i, j, v) in self.entries() {
            for (k, l, w) in other.entries() {
                out.insert(i * or + k, j * oc + l, v * w);
            }
        }
        out
    }

    /// `Id ⊗ self ⊗ Id`, with `self` acting on the factors starting at `pos`.
    pub fn acting_on(&self, dims: &[usize], pos: usize) -> Result<SparseOperator> {
        let m = self.domain.len();
        if pos + m > dims.len() || dims[pos..pos + m] != self.domain[..] {
            return Err(Error::Shape(format!("{:?} does not fit {dims:?} at {pos}", self.domain)));
        }
        let left = SparseOperator::identity(dims[..pos].to_vec());
        let right = SparseOperator::identity(dims[pos + m..].to_vec());
        Ok(left.tensor(self).tensor(&right))
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.codomain.iter().product()];
        for (i, j, w) in self.entries() {
            out[i] += w * v[j];
        }
        out
    }

    pub fn max_abs_diff(&self, other: &SparseOperator) -> f64 {
        let a = self.to_dense();
        let b = other.to_dense();
        if a.rows() != b.rows() || a.cols() != b.cols() {
            return f64::INFINITY;
        }
        (&a - &b).max_abs()
    }
}

/// `q^{x}` applied to a weight pair `λλ'/2`.
fn cartan_factor(v: &WeightModule, w: &WeightModule, sign: f64) -> Vec<Scalar> {
    let p = v.params();
    v.weights()
        .iter()
        .flat_map(|&a| w.weights().iter().map(move |&b| p.qpow(a * b * 0.5 * sign)))
        .collect()
}

/// `Σ_n s_n·Eⁿ⊗Fⁿ` with `s_n = ({1}^{2n}/{n}!)·q^{n(n−1)/2}`, or the inverse
/// series `(−1)ⁿ{1}^{2n}/{n}!·q^{−n(n−1)/2}` when `inverse` is set.
fn ef_series(v: &WeightModule, w: &WeightModule, inverse: bool) -> Mat {
    let p = v.params();
    let one = p.qnum_re(1.0);
    let mut en = Mat::identity(v.dim());
    let mut fn_ = Mat::identity(w.dim());
    let mut sum = Mat::zeros(v.dim() * w.dim(), v.dim() * w.dim());
    let mut fact = Scalar::new(1.0, 0.0);
    for n in 0..p.r() {
        if n > 0 {
            fact *= p.qnum_re(n as f64);
            en = &en * v.mat_e();
            fn_ = &fn_ * w.mat_f();
            if en.max_abs() == 0.0 || fn_.max_abs() == 0.0 {
                break;
            }
        }
        let nf = n as f64;
        let coeff = if inverse {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            one.powu(2 * n) / fact * p.qpow_re(-nf * (nf - 1.0) / 2.0) * sign
        } else {
            one.powu(2 * n) / fact * p.qpow_re(nf * (nf - 1.0) / 2.0)
        };
        sum = &sum + &en.kron(&fn_).scale(coeff);
    }
    sum
}

/// `R = q^{H⊗H/2} Σ_{n=0}^{r−1} ({1}^{2n}/{n}!) q^{n(n−1)/2} Eⁿ⊗Fⁿ` on `V⊗W`.
pub fn rmatrix(v: &WeightModule, w: &WeightModule) -> SparseOperator {
    let m = &Mat::diag(&cartan_factor(v, w, 1.0)) * &ef_series(v, w, false);
    SparseOperator::from_dense(&m, vec![v.dim(), w.dim()], vec![v.dim(), w.dim()]).expect("shapes match")
}

/// Closed-form `R⁻¹ = [Σ (−1)ⁿ{1}^{2n}/{n}! q^{−n(n−1)/2} Eⁿ⊗Fⁿ]·q^{−H⊗H/2}`.
pub fn rmatrix_inverse(v: &WeightModule, w: &WeightModule) -> SparseOperator {
    let m = &ef_series(v, w, true) * &Mat::diag(&cartan_factor(v, w, -1.0));
    SparseOperator::from_dense(&m, vec![v.dim(), w.dim()], vec![v.dim(), w.dim()]).expect("shapes match")
}

/// `x⊗y ↦ y⊗x` from `V⊗W` (dimensions `dv`, `dw`) to `W⊗V`.
pub fn flip(dv: usize, dw: usize) -> SparseOperator {
    let mut op = SparseOperator::zero(vec![dv, dw], vec![dw, dv]);
    for i in 0..dv {
        for j in 0..dw {
            op.insert(j * dv + i, i * dw + j, Scalar::new(1.0, 0.0));
        }
    }
    op
}

/// `c_{V,W} = flip∘R : V⊗W → W⊗V` for `sign = 1`; for `sign = −1` its
/// inverse `R⁻¹∘flip : W⊗V → V⊗W`.
pub fn braiding(v: &WeightModule, w: &WeightModule, sign: i8) -> Result<SparseOperator> {
    match sign {
        1 => flip(v.dim(), w.dim()).compose(&rmatrix(v, w)),
        -1 => rmatrix_inverse(v, w).compose(&flip(w.dim(), v.dim())),
        _ => Err(Error::OutOfRange { what: "braiding sign", value: sign as i64 }),
    }
}

/// `c_{V,W}⁻¹` by Gauss-Jordan inversion of the dense braiding.
pub fn braiding_inverse_numeric(v: &WeightModule, w: &WeightModule) -> Result<SparseOperator> {
    let c = braiding(v, w, 1)?;
    let inv = c.to_dense().inverse()?;
    SparseOperator::from_dense(&inv, vec![w.dim(), v.dim()], vec![v.dim(), w.dim()])
}

/// `tr_{others}((⊗ pivots) ∘ op)` keeping factor `keep`, or the full quantum
/// trace (a 1×1 matrix) when `keep` is `None`.
pub fn partial_qtrace(op: &SparseOperator, modules: &[&WeightModule], keep: Option<usize>) -> Result<Mat> {
    match keep {
        Some(k) => partial_qtrace_keeping(op, modules, &[k]),
        None => partial_qtrace_keeping(op, modules, &[]),
    }
}

/// Quantum trace over every factor not listed in `keep` (sorted, distinct);
/// the result acts on the tensor product of the kept factors.
pub fn partial_qtrace_keeping(op: &SparseOperator, modules: &[&WeightModule], keep: &[usize]) -> Result<Mat> {
    let dims: Vec<usize> = modules.iter().map(|m| m.dim()).collect();
    if op.domain() != &dims[..] || op.codomain() != &dims[..] {
        return Err(Error::Shape(format!("operator {:?} vs modules {dims:?}", op.domain())));
    }
    if keep.iter().any(|&k| k >= dims.len()) || keep.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Shape(format!("kept factors {keep:?} of {}", dims.len())));
    }
    let pivots: Vec<Vec<Scalar>> = modules.iter().map(|m| m.pivot_diag()).collect();
    let dk: usize = keep.iter().map(|&k| dims[k]).product();
    let mut out = Mat::zeros(dk, dk);
    let digits = |mut idx: usize| {
        let mut d = vec![0usize; dims.len()];
        for f in (0..dims.len()).rev() {
            d[f] = idx % dims[f];
            idx /= dims[f];
        }
        d
    };
    let kept_index = |d: &[usize]| keep.iter().fold(0, |acc, &k| acc * dims[k] + d[k]);
    for (i, j, v) in op.entries() {
        let (di, dj) = (digits(i), digits(j));
        let traced: Vec<usize> = (0..dims.len()).filter(|f| !keep.contains(f)).collect();
        if traced.iter().any(|&f| di[f] != dj[f]) {
            continue;
        }
        let weight: Scalar = traced.iter().map(|&f| pivots[f][di[f]]).product();
        out[(kept_index(&di), kept_index(&dj))] += weight * v;
    }
    Ok(out)
}

/// The operator of a braid word on modules `modules` (per top position),
/// composed from local crossings. Dense in spirit; meant for small checks.
pub fn braid_operator(modules: &[&WeightModule], letters: &[i32]) -> Result<SparseOperator> {
    let mut cur: Vec<&WeightModule> = modules.to_vec();
    let mut acc = SparseOperator::identity(cur.iter().map(|m| m.dim()).collect());
    for &l in letters {
        let i = l.unsigned_abs() as usize;
        if l == 0 || i >= cur.len() {
            return Err(Error::GeneratorOutOfRange { letter: l, needed: i + 1, strands: cur.len() });
        }
        let (a, b) = (cur[i - 1], cur[i]);
        let local = if l > 0 { braiding(a, b, 1)? } else { braiding(b, a, -1)? };
        let dims: Vec<usize> = cur.iter().map(|m| m.dim()).collect();
        acc = local.acting_on(&dims, i - 1)?.compose(&acc)?;
        cur.swap(i - 1, i);
    }
    Ok(acc)
}

/// `s` with `m = s·Id`, or a non-scalar error.
pub fn scalar_of(m: &Mat) -> Result<Scalar> {
    let s = m[(0, 0)];
    let dev = (m - &Mat::identity(m.rows()).scale(s)).max_abs();
    if dev > SCALAR_TOL * s.norm().max(1.0) {
        return Err(Error::NonScalar(dev));
    }
    Ok(s)
}

/// The kink endomorphism `ptr_2((Id⊗K^{1−r})∘c^{±}_{V,V})`.
pub fn kink_endomorphism(v: &WeightModule, sign: i8) -> Result<Mat> {
    let c = braiding(v, v, sign)?;
    partial_qtrace(&c, &[v, v], Some(0))
}

/// Positive-kink scalar `θ_V`, evaluated from the braiding and the pivot.
pub fn twist_scalar(v: &WeightModule) -> Result<Scalar> {
    scalar_of(&kink_endomorphism(v, 1)?)
}

/// Closed forms: `θ_{V_α} = q^{(α²−(r−1)²)/2}`, `θ_{S_n} = (−1)ⁿq^{(n²+2n)/2}`,
/// `θ_τ = −i^{−r}`.
pub fn twist_closed_form(v: &WeightModule) -> Scalar {
    let p = v.params();
    let r = p.r() as f64;
    match v.kind() {
        ModuleKind::Typical(a) => p.qpow((a * a - (r - 1.0) * (r - 1.0)) * 0.5),
        ModuleKind::Simple(n) => {
            let n = n as f64;
            let sign = if (n as u32).is_multiple_of(2) { 1.0 } else { -1.0 };
            p.qpow_re((n * n + 2.0 * n) / 2.0) * sign
        }
        ModuleKind::Tau => -Scalar::new(0.0, -1.0).powu(p.r()),
    }
}

/// `b: 1 → V⊗V*`, `d: V*⊗V → 1`, `b′: 1 → V*⊗V`, `d′: V⊗V* → 1`, as flat
/// coefficient vectors in the fixed basis and its dual.
#[derive(Debug, Clone)]
pub struct Duality {
    pub dim: usize,
    pub b: Vec<Scalar>,
    pub d: Vec<Scalar>,
    pub b_prime: Vec<Scalar>,
    pub d_prime: Vec<Scalar>,
}

pub fn duality_vectors(v: &WeightModule) -> Duality {
    let n = v.dim();
    let pivot = v.pivot_diag();
    let inv_pivot = v.k_diag(v.params().r() as f64 - 1.0);
    let mut b = vec![Scalar::zero(); n * n];
    let mut bp = b.clone();
    let mut dp = b.clone();
    for i in 0..n {
        b[i * n + i] = Scalar::new(1.0, 0.0);
        bp[i * n + i] = inv_pivot[i];
        dp[i * n + i] = pivot[i];
    }
    Duality { dim: n, d: b.clone(), b, b_prime: bp, d_prime: dp }
}

impl Duality {
    /// `d′∘b`, the quantum dimension.
    pub fn loop_value(&self) -> Scalar {
        self.b.iter().zip(&self.d_prime).map(|(x, y)| x * y).sum()
    }

    /// Deviation from the identity of the four snake compositions:
    /// `(Id⊗d)(b⊗Id)`, `(d⊗Id)(Id⊗b)`, `(d′⊗Id)(Id⊗b′)`, `(Id⊗d′)(b′⊗Id)`.
    pub fn zigzag_residuals(&self) -> [f64; 4] {
        let n = self.dim;
        let col = |v: &[Scalar]| {
            let mut m = Mat::zeros(n * n, 1);
            for (i, &x) in v.iter().enumerate() {
                m[(i, 0)] = x;
            }
            m
        };
        let row = |v: &[Scalar]| {
            let mut m = Mat::zeros(1, n * n);
            for (i, &x) in v.iter().enumerate() {
                m[(0, i)] = x;
            }
            m
        };
        let id = Mat::identity(n);
        let snake = |left_cup: bool, cup: &[Scalar], cap: &[Scalar]| {
            let m = if left_cup {
                &id.kron(&row(cap)) * &col(cup).kron(&id)
            } else {
                &row(cap).kron(&id) * &id.kron(&col(cup))
            };
            (&m - &id).max_abs()
        };
        [
            snake(true, &self.b, &self.d),
            snake(false, &self.b, &self.d),
            snake(false, &self.b_prime, &self.d_prime),
            snake(true, &self.b_prime, &self.d_prime),
        ]
    }
}

/// One crossing compiled for slice application: `cols[c]` lists the
/// `(row, value)` pairs of local column `c`.
#[derive(Debug, Clone)]
struct LocalOp {
    cols: Vec<Vec<(usize, Scalar)>>,
}

impl LocalOp {
    fn new(op: &SparseOperator) -> Self {
        let mut cols = vec![Vec::new(); op.domain().iter().product()];
        for (i, j, v) in op.entries() {
            cols[j].push((i, v));
        }
        Self { cols }
    }
}

/// Evaluates closures of braids colored by modules, one trace column at a
/// time, without materializing the full operator.
#[derive(Debug, Clone)]
pub struct ClosureEvaluator {
    dims: Vec<usize>,
    steps: Vec<(usize, usize)>,
    ops: Vec<LocalOp>,
    pivots: Vec<Vec<Scalar>>,
}

impl ClosureEvaluator {
    /// `modules[p]` colors the strand entering at position `p`; a letter
    /// `±i` is `σ_i^{±1}` acting on positions `i−1, i`.
    pub fn new(modules: &[&WeightModule], letters: &[i32]) -> Result<Self> {
        let k = modules.len();
        let mut distinct: Vec<&WeightModule> = Vec::new();
        let mut ids: Vec<usize> = modules
            .iter()
            .map(|m| match distinct.iter().position(|d| d == m) {
                Some(i) => i,
                None => {
                    distinct.push(m);
                    distinct.len() - 1
                }
            })
            .collect();
        let start = ids.clone();
        let mut cache: BTreeMap<(usize, usize, i8), usize> = BTreeMap::new();
        let mut ops = Vec::new();
        let mut steps = Vec::with_capacity(letters.len());
        for &l in letters {
            let i = l.unsigned_abs() as usize;
            if l == 0 || i >= k {
                return Err(Error::GeneratorOutOfRange { letter: l, needed: i + 1, strands: k });
            }
            let pos = i - 1;
            let sign: i8 = if l > 0 { 1 } else { -1 };
            let key = (ids[pos], ids[pos + 1], sign);
            let idx = match cache.get(&key) {
                Some(&idx) => idx,
                None => {
                    let (a, b) = (distinct[key.0], distinct[key.1]);
                    let op = if sign > 0 { braiding(a, b, 1)? } else { braiding(b, a, -1)? };
                    ops.push(LocalOp::new(&op));
                    cache.insert(key, ops.len() - 1);
                    ops.len() - 1
                }
            };
            steps.push((pos, idx));
            ids.swap(pos, pos + 1);
        }
        if ids != start {
            return Err(Error::Shape("colors do not match along the closure".into()));
        }
        Ok(Self {
            dims: modules.iter().map(|m| m.dim()).collect(),
            steps,
            ops,
            pivots: modules.iter().map(|m| m.pivot_diag()).collect(),
        })
    }

    fn run(&self, start: usize, buf: &mut Vec<Scalar>, tmp: &mut Vec<Scalar>) {
        let total: usize = self.dims.iter().product();
        buf.clear();
        buf.resize(total, Scalar::zero());
        buf[start] = Scalar::new(1.0, 0.0);
        let mut dims = self.dims.clone();
        for &(pos, idx) in &self.steps {
            let op = &self.ops[idx];
            let right: usize = dims[pos + 2..].iter().product();
            let block = dims[pos] * dims[pos + 1];
            let left = total / (block * right);
            tmp.clear();
            tmp.resize(total, Scalar::zero());
            for l in 0..left {
                for c in 0..block {
                    let base = (l * block + c) * right;
                    for rgt in 0..right {
                        let x = buf[base + rgt];
                        if x.is_zero() {
                            continue;
                        }
                        for &(row, v) in &op.cols[c] {
                            tmp[(l * block + row) * right + rgt] += v * x;
                        }
                    }
                }
            }
            core::mem::swap(buf, tmp);
            dims.swap(pos, pos + 1);
        }
    }

    fn rest_pivot(&self, mut j: usize) -> Scalar {
        let mut w = Scalar::new(1.0, 0.0);
        for f in (1..self.dims.len()).rev() {
            w *= self.pivots[f][j % self.dims[f]];
            j /= self.dims[f];
        }
        w
    }

    /// Contribution of trace column `j` to row set `rows` of input column `b`.
    fn column(&self, b: usize, j: usize, rows: usize) -> Vec<Scalar> {
        let rest: usize = self.dims[1..].iter().product();
        let mut buf = Vec::new();
        let mut tmp = Vec::new();
        self.run(b * rest + j, &mut buf, &mut tmp);
        let w = self.rest_pivot(j);
        (0..rows).map(|a| w * buf[a * rest + j]).collect()
    }

    /// `ptr_{2..k}((Id⊗pivot^{⊗(k−1)})∘β)`. With `full` unset only the
    /// `(0,0)` entry is computed (a 1×1 result).
    pub fn endomorphism(&self, full: bool) -> Mat {
        let d0 = self.dims[0];
        let rest: usize = self.dims[1..].iter().product();
        let (cols, rows) = if full { (d0, d0) } else { (1, 1) };
        let tasks: Vec<(usize, usize)> = (0..cols).flat_map(|b| (0..rest).map(move |j| (b, j))).collect();
        #[cfg(feature = "parallel")]
        let parts: Vec<Vec<Scalar>> = {
            use rayon::prelude::*;
            tasks.par_iter().map(|&(b, j)| self.column(b, j, rows)).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let parts: Vec<Vec<Scalar>> = tasks.iter().map(|&(b, j)| self.column(b, j, rows)).collect();
        let mut out = Mat::zeros(rows, cols);
        for (&(b, _), part) in tasks.iter().zip(&parts) {
            for (a, x) in part.iter().enumerate() {
                out[(a, b)] += x;
            }
        }
        out
    }

    /// The scalar of the (1-1)-tangle cut at position 0, checked against the
    /// full endomorphism when `check` is set.
    pub fn bracket(&self, check: bool) -> Result<Scalar> {
        if check {
            scalar_of(&self.endomorphism(true))
        } else {
            Ok(self.endomorphism(false)[(0, 0)])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::QParams;

    fn p(r: u32) -> QParams {
        QParams::new(r).unwrap()
    }

    fn c(re: f64, im: f64) -> Scalar {
        Scalar::new(re, im)
    }

    fn v(r: u32, a: Scalar) -> WeightModule {
        WeightModule::typical(p(r), a)
    }

    fn s(r: u32, n: u32) -> WeightModule {
        WeightModule::simple(p(r), n).unwrap()
    }

    #[test]
    fn embedded_operator_matches_kron() {
        let m = Mat::identity(2).kron(&Mat::diag(&[c(1.0, 0.0), c(2.0, 1.0), c(0.0, 3.0)]));
        let op = SparseOperator::from_dense(&m, vec![2, 3], vec![2, 3]).unwrap();
        let full = op.acting_on(&[3, 2, 3, 2], 1).unwrap().to_dense();
        let expected = Mat::identity(3).kron(&m).kron(&Mat::identity(2));
        assert_eq!(full, expected);
        assert!(op.acting_on(&[3, 2], 1).is_err());
    }

    #[test]
    fn composition_is_associative() {
        let a = braiding(&v(3, c(0.3, 0.0)), &v(3, c(-1.7, 0.0)), 1).unwrap();
        let b = braiding(&v(3, c(-1.7, 0.0)), &v(3, c(0.3, 0.0)), 1).unwrap();
        let id = SparseOperator::identity(vec![3, 3]);
        let ab_a = a.compose(&b).unwrap().compose(&a).unwrap();
        let a_ba = a.compose(&b.compose(&a).unwrap()).unwrap();
        assert!(ab_a.max_abs_diff(&a_ba) < 1e-12);
        assert!(a.compose(&id).unwrap().max_abs_diff(&a) < 1e-15);
    }

    #[test]
    fn s1_rmatrix_truncates() {
        let r = p(5);
        let s1 = s(5, 1);
        let cart = Mat::diag(&cartan_factor(&s1, &s1, 1.0));
        let ef = s1.mat_e().kron(s1.mat_f()).scale(r.qnum_re(1.0));
        let expected = &cart * &(&Mat::identity(4) + &ef);
        assert!((&rmatrix(&s1, &s1).to_dense() - &expected).max_abs() < 1e-14);
    }

    #[test]
    fn braiding_inverse_both_ways() {
        let (a, b) = (v(3, c(0.3, 0.0)), v(3, c(-1.7, 0.0)));
        let c = braiding(&a, &b, 1).unwrap();
        let ci = braiding(&a, &b, -1).unwrap();
        assert!(c.compose(&ci).unwrap().max_abs_diff(&SparseOperator::identity(vec![3, 3])) < 1e-12);
        assert!(ci.compose(&c).unwrap().max_abs_diff(&SparseOperator::identity(vec![3, 3])) < 1e-12);
        let num = braiding_inverse_numeric(&a, &b).unwrap();
        assert!(num.max_abs_diff(&ci) < 1e-11);
    }

    #[test]
    fn s1_skein_relation() {
        for r in [3u32, 4, 5, 7] {
            let pr = p(r);
            let s1 = s(r, 1);
            let c = braiding(&s1, &s1, 1).unwrap().to_dense();
            let ci = braiding(&s1, &s1, -1).unwrap().to_dense();
            let lhs = &c.scale(pr.qpow_re(0.5)) - &ci.scale(pr.qpow_re(-0.5));
            let rhs = Mat::identity(4).scale(pr.qnum_re(1.0));
            assert!((&lhs - &rhs).max_abs() < 1e-13, "r={r}");
        }
    }

    #[test]
    fn tau_crosses_typical_by_a_phase() {
        // R on τ⊗V_α is diagonal with entries q^{rλ/2}; the double braiding
        // on τ⊗v_0 is q^{r(α+r−1)}.
        let r = p(3);
        let a = c(0.4, 0.1);
        let va = v(3, a);
        let tau = WeightModule::tau(r);
        let rm = rmatrix(&tau, &va).to_dense();
        for i in 0..3 {
            let expected = r.qpow((a + 2.0 - 2.0 * i as f64) * 3.0 * 0.5);
            assert!((rm[(i, i)] - expected).norm() < 1e-13);
        }
        let double = braiding(&va, &tau, 1).unwrap().compose(&braiding(&tau, &va, 1).unwrap()).unwrap();
        let full = r.qpow((a + 2.0) * 3.0);
        assert!((double.get(0, 0) - full).norm() < 1e-13);
    }

    #[test]
    fn yang_baxter() {
        for r in [3u32, 5] {
            let mods = [v(r, c(0.3, 0.2)), v(r, c(-1.1, 0.0)), v(r, c(2.45, -0.3))];
            let d = r as usize;
            let dims = vec![d, d, d];
            let c12 = |x: &WeightModule, y: &WeightModule| braiding(x, y, 1).unwrap().acting_on(&dims, 0).unwrap();
            let c23 = |x: &WeightModule, y: &WeightModule| braiding(x, y, 1).unwrap().acting_on(&dims, 1).unwrap();
            let [a, b, cc] = &mods;
            // (c⊗1)(1⊗c)(c⊗1) on a⊗b⊗c: first c_{a,b}, then c_{a,c}, then c_{b,c}.
            let lhs = c12(b, cc).compose(&c23(a, cc).compose(&c12(a, b)).unwrap()).unwrap();
            let rhs = c23(a, b).compose(&c12(a, cc).compose(&c23(b, cc)).unwrap()).unwrap();
            assert!(lhs.max_abs_diff(&rhs) < 1e-8, "r={r}");
        }
    }

    #[test]
    fn twists_match_closed_forms() {
        for r in [2u32, 3, 5, 6] {
            let mut mods: Vec<WeightModule> = (0..r).map(|n| s(r, n)).collect();
            mods.push(v(r, c(0.37, -0.2)));
            mods.push(v(r, c(r as f64 - 1.0, 0.0)));
            mods.push(WeightModule::tau(p(r)));
            for m in &mods {
                let t = twist_scalar(m).unwrap();
                assert!((t - twist_closed_form(m)).norm() < 1e-10, "r={r} {:?}: {t}", m.kind());
                let neg = scalar_of(&kink_endomorphism(m, -1).unwrap()).unwrap();
                assert!((neg * t - 1.0).norm() < 1e-10);
            }
        }
        let vr = v(4, c(3.0, 0.0));
        assert!((twist_closed_form(&vr) - 1.0).norm() < 1e-14);
        let s1 = s(5, 1);
        assert!((twist_scalar(&s1).unwrap() + p(5).qpow_re(1.5)).norm() < 1e-12);
    }

    #[test]
    fn duality_zigzags_and_loops() {
        for m in [s(3, 1), v(3, c(0.5, 0.0)), s(5, 3), WeightModule::tau(p(5))] {
            let dual = duality_vectors(&m);
            assert!(dual.zigzag_residuals().iter().all(|&x| x < 1e-13));
            assert!((dual.loop_value() - m.qdim()).norm() < 1e-12);
        }
        assert!(duality_vectors(&v(3, c(0.5, 0.0))).loop_value().norm() < 1e-12);
    }

    #[test]
    fn partial_traces() {
        let (a, s1) = (v(3, c(0.3, 0.0)), s(3, 1));
        let id = SparseOperator::identity(vec![3, 2]);
        let t = partial_qtrace(&id, &[&a, &s1], Some(0)).unwrap();
        assert!((&t - &Mat::identity(3).scale(s1.qdim())).max_abs() < 1e-14);
        let full = partial_qtrace(&SparseOperator::identity(vec![2]), &[&s1], None).unwrap();
        assert!((full[(0, 0)] + p(3).qpow_re(1.0) + p(3).qpow_re(-1.0)).norm() < 1e-14);
    }

    #[test]
    fn hopf_closure_is_kauffman_value() {
        // State sum of the σ₁² closure at A = q^{1/2}: A²δ² + 2δ + A⁻²δ².
        for r in [3u32, 4, 5] {
            let pr = p(r);
            let s1 = s(r, 1);
            let ev = ClosureEvaluator::new(&[&s1, &s1], &[1, 1]).unwrap();
            let f = s1.qdim() * ev.bracket(true).unwrap();
            let aa = pr.qpow_re(0.5);
            let delta = -aa * aa - (aa * aa).inv();
            let expected = aa * aa * delta * delta + 2.0 * delta + (aa * aa).inv() * delta * delta;
            assert!((f - expected).norm() < 1e-12, "r={r}");
        }
    }

    #[test]
    fn evaluator_rejects_bad_letters() {
        let s1 = s(3, 1);
        assert!(matches!(
            ClosureEvaluator::new(&[&s1, &s1], &[2]),
            Err(Error::GeneratorOutOfRange { letter: 2, .. })
        ));
        let a = v(3, c(0.3, 0.0));
        assert!(ClosureEvaluator::new(&[&s1, &a], &[1]).is_err());
    }

    #[test]
    fn kink_via_evaluator_matches_partial_trace() {
        let a = v(5, c(0.21, 0.4));
        let ev = ClosureEvaluator::new(&[&a, &a], &[1]).unwrap();
        let t = ev.bracket(true).unwrap();
        assert!((t - twist_closed_form(&a)).norm() < 1e-11);
        let ev = ClosureEvaluator::new(&[&a, &a], &[-1]).unwrap();
        assert!((ev.bracket(true).unwrap() * t - 1.0).norm() < 1e-11);
    }
}
