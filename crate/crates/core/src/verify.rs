//! Executable identity checks. Every check returns a [`CheckReport`] with
//! the worst deviation it saw; `pass ⇔ max_abs_error ≤ tolerance`.
//!
//! Unless a check says otherwise, the deviation of a witness is
//! `|lhs − rhs| / max(1, |lhs|, |rhs|)`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;
use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};

use crate::invariants::manifold::{
    homology_order, nr, nr0_knot, nr0_knot_cabled, nr0_knot_limit, wrt, ComponentRole, Triple, LIMIT_EPS,
};
use crate::invariants::skein::jones_skein;
use crate::invariants::{blackboard_framings, f_prime, jones_rt, tangle_bracket};
use crate::linalg::Mat;
use crate::links::{describe, knot_table, BraidWord, ColoredBraidClosure};
use crate::qcore::{Degree, QParams};
use crate::reps::WeightModule;
use crate::ribbon::{
    braid_operator, braiding, braiding_inverse_numeric, duality_vectors, partial_qtrace_keeping, twist_closed_form,
    twist_scalar, SparseOperator,
};
use crate::{rel_err, Error, Result, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub input: String,
    pub lhs: Scalar,
    pub rhs: Scalar,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub name: String,
    pub parameters: Vec<(String, String)>,
    pub max_abs_error: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub witnesses: Vec<Witness>,
    /// Errors raised while evaluating; any entry fails the report.
    pub failures: Vec<String>,
    /// Set when the check does not apply to the parameters.
    pub skipped: Option<String>,
}

impl CheckReport {
    pub fn new(name: &str, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            parameters: Vec::new(),
            max_abs_error: 0.0,
            tolerance,
            pass: true,
            witnesses: Vec::new(),
            failures: Vec::new(),
            skipped: None,
        }
    }

    pub fn skip(name: &str, reason: impl Into<String>) -> Self {
        let mut r = Self::new(name, 0.0);
        r.skipped = Some(reason.into());
        r
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.push((key.to_string(), value.to_string()));
        self
    }

    fn update(&mut self, err: f64) {
        if err.is_nan() || err > self.max_abs_error {
            self.max_abs_error = if err.is_nan() { f64::INFINITY } else { err };
        }
        self.pass = self.failures.is_empty() && self.max_abs_error <= self.tolerance;
    }

    /// Records `lhs ≈ rhs` with the scaled deviation.
    pub fn record(&mut self, input: impl Into<String>, lhs: Scalar, rhs: Scalar) {
        self.update(rel_err(lhs, rhs));
        self.witnesses.push(Witness { input: input.into(), lhs, rhs });
    }

    /// Records `lhs ≈ rhs` with the relative deviation `|lhs − rhs|/|rhs|`.
    pub fn record_relative(&mut self, input: impl Into<String>, lhs: Scalar, rhs: Scalar) {
        self.update((lhs - rhs).norm() / rhs.norm().max(f64::MIN_POSITIVE));
        self.witnesses.push(Witness { input: input.into(), lhs, rhs });
    }

    /// Records a residual that should vanish.
    pub fn record_zero(&mut self, input: impl Into<String>, residual: f64) {
        self.update(residual);
        self.witnesses.push(Witness { input: input.into(), lhs: Scalar::new(residual, 0.0), rhs: Scalar::new(0.0, 0.0) });
    }

    pub fn record_result(&mut self, input: impl Into<String>, pair: Result<(Scalar, Scalar)>) {
        match pair {
            Ok((l, r)) => self.record(input, l, r),
            Err(e) => self.fail(input, e),
        }
    }

    pub fn fail(&mut self, input: impl Into<String>, e: Error) {
        self.failures.push(format!("{}: {e}", input.into()));
        self.pass = false;
    }

    /// Replaces the tolerance and re-evaluates `pass`.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self.pass = self.failures.is_empty() && self.max_abs_error <= tolerance;
        self
    }
}

/// Seeded random colors `α` with `Re α ∈ [−3, 3]`, `Im α ∈ [−0.5, 0.5]`,
/// at least 0.05 away from the integers.
pub fn random_alphas(seed: u64, count: usize) -> Vec<Scalar> {
    let mut rng = SmallRng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let a = Scalar::new(rng.random_range(-3.0..3.0), rng.random_range(-0.5..0.5));
        if (a - a.re.round()).norm() > 0.05 {
            out.push(a);
        }
    }
    out
}

pub const DEFAULT_SEED: u64 = 0x5eed_f0ad;

fn knot(name: &str) -> BraidWord {
    knot_table(name).expect("built-in knot")
}

fn mat_dev(a: &Mat, b: &Mat) -> f64 {
    (a - b).max_abs()
}

/// Algebra relations, zigzags, `c∘c⁻¹ = Id`, Yang-Baxter, the `S_1` skein
/// relation, closed-form twists, the ribbon identity and the periodicity
/// of the normalized braiding.
pub fn check_axioms(p: QParams, seed: u64) -> Vec<CheckReport> {
    let r = p.r();
    let alphas = random_alphas(seed, 20);
    let mut modules: Vec<WeightModule> = (0..r).map(|n| WeightModule::simple(p, n).expect("n < r")).collect();
    modules.extend(alphas.iter().take(4).map(|&a| WeightModule::typical(p, a)));
    modules.extend((1..r).map(|k| WeightModule::typical(p, Scalar::new(k as f64, 0.0))));
    modules.push(WeightModule::tau(p));

    let mut rel = CheckReport::new("module relations", 1e-10).param("r", r);
    let mut zig = CheckReport::new("zigzag identities", 1e-10).param("r", r);
    for m in &modules {
        let res = m.relation_residuals();
        rel.record_zero(format!("{:?}", m.kind()), res.iter().cloned().fold(0.0, f64::max));
        let d = duality_vectors(m);
        zig.record_zero(format!("{:?}", m.kind()), d.zigzag_residuals().iter().cloned().fold(0.0, f64::max));
        zig.record(format!("d'∘b on {:?}", m.kind()), d.loop_value(), m.qdim());
    }

    let pairs: Vec<(WeightModule, WeightModule)> = vec![
        (WeightModule::typical(p, alphas[0]), WeightModule::typical(p, alphas[1])),
        (WeightModule::typical(p, alphas[2]), WeightModule::simple(p, r - 1).expect("n < r")),
        (WeightModule::simple(p, 1.min(r - 1)).expect("n < r"), WeightModule::tau(p)),
    ];
    let mut inv = CheckReport::new("braiding inverse", 1e-8).param("r", r);
    for (a, b) in &pairs {
        let tag = format!("{:?}⊗{:?}", a.kind(), b.kind());
        let run = || -> Result<(f64, f64, f64)> {
            let c = braiding(a, b, 1)?;
            let ci = braiding(a, b, -1)?;
            let id_ab = SparseOperator::identity(vec![a.dim(), b.dim()]);
            let id_ba = SparseOperator::identity(vec![b.dim(), a.dim()]);
            Ok((
                ci.compose(&c)?.max_abs_diff(&id_ab),
                c.compose(&ci)?.max_abs_diff(&id_ba),
                braiding_inverse_numeric(a, b)?.max_abs_diff(&ci),
            ))
        };
        match run() {
            Ok((x, y, z)) => {
                inv.record_zero(format!("c⁻¹∘c on {tag}"), x);
                inv.record_zero(format!("c∘c⁻¹ on {tag}"), y);
                inv.record_zero(format!("closed vs numeric inverse on {tag}"), z);
            }
            Err(e) => inv.fail(tag, e),
        }
    }

    let mut yb = CheckReport::new("Yang-Baxter", 1e-8).param("r", r);
    let triples = [
        [alphas[3], alphas[4], alphas[5]],
        [alphas[6], alphas[7], alphas[8]],
    ];
    for t in triples {
        let mods: Vec<WeightModule> = t.iter().map(|&a| WeightModule::typical(p, a)).collect();
        let refs: Vec<&WeightModule> = mods.iter().collect();
        let run = || -> Result<f64> {
            let lhs = braid_operator(&refs, &[1, 2, 1])?;
            let rhs = braid_operator(&refs, &[2, 1, 2])?;
            Ok(lhs.max_abs_diff(&rhs) / lhs.to_dense().max_abs().max(1.0))
        };
        match run() {
            Ok(x) => yb.record_zero(format!("V{}⊗V{}⊗V{}", t[0], t[1], t[2]), x),
            Err(e) => yb.fail("triple", e),
        }
    }

    let mut skein = CheckReport::new("S1 skein relation", 1e-10).param("r", r);
    if r >= 2 {
        let s1 = WeightModule::simple(p, 1).expect("r ≥ 2");
        let run = || -> Result<f64> {
            let c = braiding(&s1, &s1, 1)?.to_dense();
            let ci = braiding(&s1, &s1, -1)?.to_dense();
            let lhs = &c.scale(p.qpow_re(0.5)) - &ci.scale(p.qpow_re(-0.5));
            Ok(mat_dev(&lhs, &Mat::identity(4).scale(p.qnum_re(1.0))))
        };
        match run() {
            Ok(x) => skein.record_zero("q^{1/2}c − q^{-1/2}c⁻¹ − {1}Id", x),
            Err(e) => skein.fail("S1", e),
        }
    }

    let mut tw = CheckReport::new("twist closed forms", 1e-10).param("r", r);
    let mut twist_mods: Vec<WeightModule> = (0..r).map(|n| WeightModule::simple(p, n).expect("n < r")).collect();
    twist_mods.push(WeightModule::tau(p));
    twist_mods.extend(alphas.iter().map(|&a| WeightModule::typical(p, a)));
    for m in &twist_mods {
        match twist_scalar(m) {
            Ok(t) => tw.record(format!("{:?}", m.kind()), t, twist_closed_form(m)),
            Err(e) => tw.fail(format!("{:?}", m.kind()), e),
        }
    }

    let mut ribbon = CheckReport::new("ribbon identity", 1e-8).param("r", r);
    if r <= 5 {
        let (v, w) = (WeightModule::typical(p, alphas[9]), WeightModule::typical(p, alphas[10]));
        match ribbon_identity_deviation(&v, &w) {
            Ok(x) => ribbon.record_zero(format!("θ on V{}⊗V{}", alphas[9], alphas[10]), x),
            Err(e) => ribbon.fail("pair", e),
        }
    } else {
        ribbon = ribbon.param("note", "compared for r ≤ 5 only (dimension r⁴)");
    }

    let mut period = CheckReport::new("braiding periodicity", 1e-8).param("r", r);
    for pair in alphas[11..15].chunks(2) {
        let (a, b) = (pair[0], pair[1]);
        let normalized = |a: Scalar| -> Result<Mat> {
            let c = braiding(&WeightModule::typical(p, a), &WeightModule::typical(p, b), 1)?.to_dense();
            let phase = p.qpow(-(a * b) * 0.5 - (a + b) * ((r as f64 - 1.0) / 2.0));
            Ok(c.scale(phase))
        };
        match (normalized(a), normalized(a + 2.0 * r as f64)) {
            (Ok(x), Ok(y)) => period.record_zero(format!("α={a}, β={b}"), mat_dev(&x, &y) / x.max_abs().max(1.0)),
            (Err(e), _) | (_, Err(e)) => period.fail("pair", e),
        }
    }

    vec![rel, zig, inv, yb, skein, tw, ribbon, period]
}

/// `θ_{V⊗W}` from the kink on the doubled strand versus
/// `c_{W,V}∘c_{V,W}∘(θ_V⊗θ_W)`. Returns the largest entry deviation.
pub fn ribbon_identity_deviation(v: &WeightModule, w: &WeightModule) -> Result<f64> {
    let mods = [v, w, v, w];
    let cross = braid_operator(&mods, &[2, 3, 1, 2])?;
    let lhs = partial_qtrace_keeping(&cross, &mods, &[0, 1])?;
    let double = braiding(w, v, 1)?.compose(&braiding(v, w, 1)?)?.to_dense();
    let rhs = &double * &Mat::identity(v.dim() * w.dim()).scale(twist_closed_form(v) * twist_closed_form(w));
    Ok(mat_dev(&lhs, &rhs) / rhs.max_abs().max(1.0))
}

/// Every color vector with entries `< r` (at most `max_color`), RT route
/// against the skein route, 0-framed.
pub fn check_jones_paths(p: QParams, names: &[&str], max_color: u32) -> CheckReport {
    let r = p.r();
    let top = max_color.min(r - 1);
    let mut rep = CheckReport::new("colored Jones: RT vs skein", 1e-8).param("r", r).param("knots", names.join(","));
    for name in names {
        let b = knot(name);
        let m = b.closure().len();
        let framings = vec![0i64; m];
        let mut colors = vec![0u32; m];
        loop {
            let input = format!("{name} colors {colors:?}");
            let pair = jones_rt(p, &b, &colors, &framings).and_then(|x| Ok((x, jones_skein(p, &b, &colors, &framings)?)));
            rep.record_result(input, pair);
            let mut i = 0;
            while i < m {
                colors[i] += 1;
                if colors[i] <= top {
                    break;
                }
                colors[i] = 0;
                i += 1;
            }
            if i == m {
                break;
            }
        }
    }
    rep
}

/// `Δ^{SO(3)}_±` by direct summation against the case table through
/// `Δ^{SO(3)}_+ = Δ_+/({1}r)` and `Δ^{SO(3)}_− = −Δ_−/({1}r)`, plus
/// conjugacy and nonvanishing.
pub fn check_normalization_constants(p: QParams) -> CheckReport {
    let r = p.r();
    if p.require_manifold_order().is_err() {
        return CheckReport::skip("normalization constants", format!("r = {r} is divisible by 4"));
    }
    let mut rep = CheckReport::new("normalization constants", 1e-10).param("r", r);
    let one_r = p.qnum_re(1.0) * r as f64;
    match (p.delta_so3(1), p.delta_so3(-1), p.delta_cgp_table(1), p.delta_cgp_table(-1)) {
        (Ok(plus), Ok(minus), Ok(tp), Ok(tm)) => {
            rep.record("Δso3+ vs Δ+/({1}r)", plus, tp / one_r);
            rep.record("Δso3− vs −Δ−/({1}r)", minus, -tm / one_r);
            rep.record("Δso3− vs conj Δso3+", minus, plus.conj());
            rep.record("Δ− vs conj Δ+", tm, tp.conj());
            if plus.norm() < 1e-8 {
                rep.fail("Δso3+", Error::NotComputable("vanishes".into()));
            }
        }
        (a, b, c, d) => {
            for e in [a.err(), b.err(), c.err(), d.err()].into_iter().flatten() {
                rep.fail("constants", e);
            }
        }
    }
    rep
}

fn bracket_of(p: QParams, b: &BraidWord, m: &WeightModule, f: i64) -> Result<Scalar> {
    let _ = p;
    tangle_bracket(b, &b.closure(), &[m], &[f], 0, true)
}

/// `⟨V_k⟩ = ⟨S_{r−1−k}⟩` for `0 ≤ k ≤ r−1`, `⟨V_j⟩ = ⟨S_{r−1+j}⟩` for
/// `1−r ≤ j ≤ 0`, and the induced `⟨S_{k−1}⟩ = ⟨S_{r−1−k}⟩`, 0-framed.
pub fn check_symmetry(p: QParams, b: &BraidWord) -> CheckReport {
    let r = p.r();
    let mut rep = CheckReport::new("symmetry principle", 1e-8).param("r", r).param("knot", describe(b));
    let v = |k: i64| WeightModule::typical(p, Scalar::new(k as f64, 0.0));
    let s = |n: i64| WeightModule::simple(p, n as u32);
    let ri = r as i64;
    for k in 0..ri {
        let pair = s(ri - 1 - k).and_then(|sm| Ok((bracket_of(p, b, &v(k), 0)?, bracket_of(p, b, &sm, 0)?)));
        rep.record_result(format!("⟨V_{k}⟩ vs ⟨S_{}⟩", ri - 1 - k), pair);
    }
    for j in (1 - ri)..=0 {
        let pair = s(ri - 1 + j).and_then(|sm| Ok((bracket_of(p, b, &v(j), 0)?, bracket_of(p, b, &sm, 0)?)));
        rep.record_result(format!("⟨V_{j}⟩ vs ⟨S_{}⟩", ri - 1 + j), pair);
    }
    for k in 1..ri {
        let pair = s(k - 1).and_then(|a| Ok((bracket_of(p, b, &a, 0)?, bracket_of(p, b, &s(ri - 1 - k)?, 0)?)));
        rep.record_result(format!("⟨S_{}⟩ vs ⟨S_{}⟩", k - 1, ri - 1 - k), pair);
        let pair = Ok::<_, Error>(()).and_then(|_| Ok((bracket_of(p, b, &v(k + ri), 0)?, bracket_of(p, b, &v(k), 0)?)));
        rep.record_result(format!("⟨V_{}⟩ vs ⟨V_{k}⟩", k + ri), pair);
    }
    rep
}

/// `K̃(α+r) = K̃(α)` (0-framed), `F′(K^f_{α+2r}) = q^{2rαf}F′(K^f_α)` and
/// `F′(K^f_{α+r}) = (−1)^{r+1}(iq^α)^{rf}F′(K^f_α)` at random `α`.
pub fn check_color_shift_laws(p: QParams, b: &BraidWord, framings: &[i64], alphas: &[Scalar]) -> CheckReport {
    let r = p.r();
    let rf = r as f64;
    let mut rep = CheckReport::new("color shift laws", 1e-7)
        .param("r", r)
        .param("knot", describe(b))
        .param("framings", format!("{framings:?}"))
        .param("samples", alphas.len());
    let cd = b.closure();
    let fprime = |a: Scalar, f: i64| -> Result<Scalar> {
        let c = ColoredBraidClosure::new(b.clone(), vec![WeightModule::typical(p, a).into()], vec![f], Some(0))?;
        f_prime(&c)
    };
    let sign = if r % 2 == 1 { 1.0 } else { -1.0 };
    for &a in alphas {
        let k0 = |a: Scalar| tangle_bracket(b, &cd, &[&WeightModule::typical(p, a)], &[0], 0, false);
        rep.record_result(format!("K̃ at α={a} vs α+r"), k0(a + rf).and_then(|x| Ok((x, k0(a)?))));
        for &f in framings {
            let ff = f as f64;
            let pair = fprime(a + 2.0 * rf, f).and_then(|x| Ok((x, p.qpow(a * (2.0 * rf * ff)) * fprime(a, f)?)));
            rep.record_result(format!("F′ f={f} α={a} → α+2r"), pair);
            let i_pow = Scalar::new(0.0, 1.0).powi((r as i64 * f) as i32);
            let factor = i_pow * p.qpow(a * (rf * ff)) * sign;
            let pair = fprime(a + rf, f).and_then(|x| Ok((x, factor * fprime(a, f)?)));
            rep.record_result(format!("F′ f={f} α={a} → α+r"), pair);
        }
    }
    rep
}

/// Residue of `α ↦ F′(K_{V_α})` at `n = k + 2mr` against
/// `±(r/π)sin(π/r)·J_{r−1∓k}(K)`, with `J` from the skein route. The
/// residue is `lim ε·F′(K_{V_{n+ε}})`, extrapolated over two dyadic `ε`.
/// Deviations are relative.
pub fn check_residue(p: QParams, b: &BraidWord, n: i64) -> CheckReport {
    let r = p.r() as i64;
    let mut rep = CheckReport::new("residue formula", 1e-4).param("r", r).param("knot", describe(b)).param("n", n);
    let k = (n + r).rem_euclid(2 * r) - r;
    if k == 0 || k.abs() >= r {
        rep.fail(format!("n={n}"), Error::OutOfRange { what: "residue point", value: n });
        return rep;
    }
    let cd = b.closure();
    if cd.len() != 1 {
        rep.fail(describe(b), Error::NotAKnot(cd.len()));
        return rep;
    }
    let g = |alpha: Scalar| -> Result<Scalar> {
        let v = WeightModule::typical(p, alpha);
        Ok(p.mdim(alpha)? * tangle_bracket(b, &cd, &[&v], &[0], 0, false)?)
    };
    let (e1, e2) = LIMIT_EPS;
    let run = || -> Result<(Scalar, Scalar)> {
        let r1 = g(Scalar::new(n as f64 + e1, 0.0))? * e1;
        let r2 = g(Scalar::new(n as f64 + e2, 0.0))? * e2;
        let ratio = e1 / e2;
        let numeric = (r2 * ratio - r1) / (ratio - 1.0);
        let (sign, m) = if k > 0 { (1.0, r - 1 - k) } else { (-1.0, r - 1 + k) };
        let j = jones_skein(p, b, &[m as u32], &[0])?;
        Ok((numeric, j * (sign * r as f64 / PI * (PI / r as f64).sin())))
    };
    match run() {
        Ok((l, rr)) => rep.record_relative(format!("n={n}"), l, rr),
        Err(e) => rep.fail(format!("n={n}"), e),
    }
    if *b == knot_table("unknot").expect("built-in") {
        let pair = p.residue_mdim(n).map(|x| Scalar::new(x, 0.0));
        match (run(), pair) {
            (Ok((l, _)), Ok(x)) => rep.record_relative(format!("Res(d, {n})"), l, x),
            (Err(e), _) | (_, Err(e)) => rep.fail("Res(d)", e),
        }
    }
    rep
}

/// `N⁰_r = |f|·WRT_r` on surgery along the `f`-framed knot, and
/// `ord H_1 = |f|`.
pub fn check_knot_surgery(p: QParams, b: &BraidWord, f: i64, omega: u8) -> CheckReport {
    let r = p.r();
    let name = "N0 = |f|·WRT";
    if p.require_manifold_order().is_err() {
        return CheckReport::skip(name, format!("r = {r} is divisible by 4"));
    }
    let mut rep = CheckReport::new(name, 1e-8).param("r", r).param("knot", describe(b)).param("f", f).param("omega", omega);
    let pair = Triple::knot_surgery(b, f, omega).and_then(|t| {
        let ord = homology_order(&t);
        rep.record("ord H1 vs |f|", Scalar::new(ord as f64, 0.0), Scalar::new(f.unsigned_abs() as f64, 0.0));
        Ok((nr0_knot(p, b, f, omega)?, wrt(p, &t)? * ord as f64))
    });
    rep.record_result(format!("{} f={f} ω={omega}", describe(b)), pair);
    rep
}

/// The closed φ-formula against the 2-cable route at each `α`.
pub fn check_cabled_route(p: QParams, b: &BraidWord, f: i64, omega: u8, alphas: &[Scalar]) -> CheckReport {
    let r = p.r();
    let name = "N0: closed formula vs 2-cable";
    if p.require_manifold_order().is_err() {
        return CheckReport::skip(name, format!("r = {r} is divisible by 4"));
    }
    let mut rep = CheckReport::new(name, 1e-8).param("r", r).param("knot", describe(b)).param("f", f).param("omega", omega);
    for &a in alphas {
        let pair = nr0_knot(p, b, f, omega).and_then(|x| Ok((nr0_knot_cabled(p, b, f, omega, a)?, x)));
        rep.record_result(format!("α={a}"), pair);
    }
    rep
}

/// The closed φ-formula against the `ε`-limit route (truncation error
/// `O(ε²)`, hence the looser tolerance).
pub fn check_limit_route(p: QParams, b: &BraidWord, f: i64, omega: u8) -> CheckReport {
    let r = p.r();
    let name = "N0: closed formula vs epsilon limit";
    if p.require_manifold_order().is_err() {
        return CheckReport::skip(name, format!("r = {r} is divisible by 4"));
    }
    let mut rep = CheckReport::new(name, 1e-5).param("r", r).param("knot", describe(b)).param("f", f).param("omega", omega);
    let pair = nr0_knot(p, b, f, omega).and_then(|x| Ok((nr0_knot_limit(p, b, f, omega)?, x)));
    rep.record_result(format!("{} f={f} ω={omega}", describe(b)), pair);
    rep
}

/// The `ε`-limit at `f = 0` (surgery with `b₁ = 1`) vanishes.
pub fn check_vanishing_f0(p: QParams, b: &BraidWord, omega: u8) -> CheckReport {
    let r = p.r();
    let name = "N0 vanishes at f = 0";
    if p.require_manifold_order().is_err() {
        return CheckReport::skip(name, format!("r = {r} is divisible by 4"));
    }
    let mut rep = CheckReport::new(name, 1e-6).param("r", r).param("knot", describe(b)).param("omega", omega);
    match nr0_knot_limit(p, b, 0, omega) {
        Ok(s) => rep.record(format!("{} ω={omega}", describe(b)), s, Scalar::new(0.0, 0.0)),
        Err(e) => rep.fail(describe(b), e),
    }
    rep
}

/// Presentations of the trefoil and a meridian-linked cargo used by
/// [`check_presentation_independence`].
fn trefoil_presentations() -> Vec<BraidWord> {
    let t = knot("trefoil");
    let mut out = vec![t.clone(), t.stabilized(1), t.stabilized(-1)];
    let g = BraidWord::carrier(3, 3);
    out.push(t.stabilized(1).conjugated(&g).expect("same strands"));
    out
}

fn trefoil_with_meridian() -> Vec<BraidWord> {
    let base = BraidWord::parse("3: 1 1 1 2 2").expect("literal");
    let g = BraidWord::parse("3: 2 1").expect("literal");
    vec![base.clone(), base.stabilized(1), base.conjugated(&g).expect("same strands")]
}

/// Markov-move and Kirby-lift independence on the trefoil: `F′`, `WRT`,
/// `N⁰` (both closed and cabled) and `N_r` agree across presentations.
pub fn check_presentation_independence(p: QParams, alphas: &[Scalar]) -> CheckReport {
    let r = p.r();
    let mut rep = CheckReport::new("presentation independence", 1e-7).param("r", r);
    let presentations = trefoil_presentations();
    let base = &presentations[0];
    let a = alphas.first().copied().unwrap_or(Scalar::new(0.3141, 0.1));
    for f in [0i64, 1] {
        let fp = |b: &BraidWord| -> Result<Scalar> {
            let c = ColoredBraidClosure::new(b.clone(), vec![WeightModule::typical(p, a).into()], vec![f], Some(0))?;
            f_prime(&c)
        };
        for b in &presentations[1..] {
            rep.record_result(format!("F′ f={f}: {base} vs {b}"), fp(base).and_then(|x| Ok((x, fp(b)?))));
        }
    }
    if p.require_manifold_order().is_err() {
        return rep.param("note", "3-manifold comparisons skipped: r divisible by 4");
    }
    for b in &presentations[1..] {
        let w = |k: &BraidWord| Triple::knot_surgery(k, 1, 0).and_then(|t| wrt(p, &t));
        rep.record_result(format!("WRT f=1: {base} vs {b}"), w(base).and_then(|x| Ok((x, w(b)?))));
        let n0 = |k: &BraidWord| nr0_knot(p, k, -1, 0);
        rep.record_result(format!("N0 f=-1: {base} vs {b}"), n0(base).and_then(|x| Ok((x, n0(b)?))));
    }
    let cabled = |k: &BraidWord| nr0_knot_cabled(p, k, 1, 0, a);
    let stab = &presentations[1];
    if r <= 3 {
        rep.record_result(format!("cabled N0 f=1: {base} vs {stab}"), cabled(base).and_then(|x| Ok((x, cabled(stab)?))));
    }
    // N_r with a meridian cargo V_β: the longitude condition f·g + β + r − 1 ∈ 2ℤ.
    let f = 1i64;
    let g = Degree::new(Scalar::new(0.4, 0.2));
    let beta = -g.lift() * f as f64 - (r as f64 - 1.0);
    let nr_of = |b: &BraidWord, g: Degree| -> Result<Scalar> {
        let roles_of = |cd: &crate::links::ClosureData| -> Vec<ComponentRole> {
            let mut roles = vec![ComponentRole::Surgery { degree: g }; cd.len()];
            // The trefoil is the component with self-writhe 3 in every presentation used here.
            let cargo = (0..cd.len()).find(|&c| cd.writhe(c) != 3).expect("two components");
            roles[cargo] = ComponentRole::Cargo { color: WeightModule::typical(p, beta), degree: None };
            roles
        };
        let cd = b.closure();
        let roles = roles_of(&cd);
        let framings = (0..cd.len()).map(|c| if roles[c].is_surgery() { f } else { 0 }).collect();
        nr(p, &Triple::new(b.clone(), roles, framings)?)
    };
    let with_meridian = trefoil_with_meridian();
    let m0 = &with_meridian[0];
    for b in &with_meridian[1..] {
        rep.record_result(format!("N_r: {m0} vs {b}"), nr_of(m0, g).and_then(|x| Ok((x, nr_of(b, g)?))));
    }
    let shifted = Degree::new(g.lift() + 2.0);
    rep.record_result(format!("N_r lift {} vs {}", g.lift(), shifted.lift()), nr_of(m0, g).and_then(|x| Ok((x, nr_of(m0, shifted)?))));
    rep
}

/// Kirby-lift independence of `N_r` on `+1`-surgery on the unknot with a
/// Hopf-linked cargo `V_β`.
pub fn check_kirby_lift(p: QParams, g: Degree) -> CheckReport {
    let r = p.r();
    let name = "Kirby color lift independence";
    if p.require_manifold_order().is_err() {
        return CheckReport::skip(name, format!("r = {r} is divisible by 4"));
    }
    let mut rep = CheckReport::new(name, 1e-8).param("r", r).param("degree", g.lift());
    let hopf = knot("hopf");
    let beta = -g.lift() - (r as f64 - 1.0);
    let eval = |g: Degree| -> Result<Scalar> {
        let roles = vec![
            ComponentRole::Surgery { degree: g },
            ComponentRole::Cargo { color: WeightModule::typical(p, beta), degree: None },
        ];
        nr(p, &Triple::new(hopf.clone(), roles, vec![1, 0])?)
    };
    for shift in [2.0, -2.0, 4.0] {
        let g2 = Degree::new(g.lift() + shift);
        rep.record_result(format!("lift {} vs {}", g.lift(), g2.lift()), eval(g).and_then(|x| Ok((x, eval(g2)?))));
    }
    rep
}

/// Names accepted by [`run_suite`].
pub const SUITES: &[&str] =
    &["axioms", "jones", "constants", "symmetry", "shift", "residue", "knot-surgery", "cabled", "limit", "vanishing", "markov"];

/// Runs one named suite (or `all`) at order `r` on `knot` where a knot
/// parameter applies. Knot-independent suites ignore `knot`.
pub fn run_suite(p: QParams, suite: &str, knot_name: Option<&str>, seed: u64) -> Result<Vec<CheckReport>> {
    let r = p.r();
    let knots: Vec<BraidWord> = match knot_name {
        Some(n) => vec![knot_table(n)?],
        None => Vec::new(),
    };
    let pick = |default: &[&str]| -> Vec<BraidWord> {
        if knots.is_empty() {
            default.iter().map(|n| knot(n)).collect()
        } else {
            knots.clone()
        }
    };
    let alphas = random_alphas(seed, 10);
    let mut out = Vec::new();
    match suite {
        "axioms" => out.extend(check_axioms(p, seed)),
        "jones" => {
            let names: Vec<&str> = match knot_name {
                Some(n) => vec![n],
                None => vec!["unknot", "hopf", "trefoil", "figure8"],
            };
            let top = if r <= 5 { r - 1 } else { 3 };
            let mut rep = check_jones_paths(p, &names, top);
            if top < r - 1 {
                rep = rep.param("max_color", top);
            }
            out.push(rep);
        }
        "constants" => out.push(check_normalization_constants(p)),
        "symmetry" => out.extend(pick(&["trefoil", "figure8"]).iter().map(|b| check_symmetry(p, b))),
        "shift" => {
            for b in pick(&["trefoil"]).iter().filter(|b| b.closure().len() == 1) {
                out.push(check_color_shift_laws(p, b, &[-1, 0, 1, 2], &alphas));
            }
        }
        "residue" => {
            for b in pick(&["unknot", "trefoil"]).iter().filter(|b| b.closure().len() == 1) {
                for n in [1i64, -1, 2, -2] {
                    if n.rem_euclid(r as i64) != 0 {
                        out.push(check_residue(p, b, n));
                    }
                }
            }
        }
        "knot-surgery" => {
            for b in pick(&["unknot", "trefoil"]).iter().filter(|b| b.closure().len() == 1) {
                for f in [-2i64, -1, 1, 2] {
                    for omega in [0u8, 1] {
                        out.push(check_knot_surgery(p, b, f, omega));
                    }
                }
            }
        }
        "cabled" => {
            for b in pick(&["unknot", "trefoil"]).iter().filter(|b| b.closure().len() == 1) {
                for (f, omega) in [(1i64, 0u8), (-1, 1), (2, 1)] {
                    out.push(check_cabled_route(p, b, f, omega, &[alphas[0], alphas[1]]));
                }
            }
        }
        "limit" => {
            for b in pick(&["unknot", "trefoil"]).iter().filter(|b| b.closure().len() == 1) {
                for (f, omega) in [(1i64, 0u8), (-1, 1), (2, 0)] {
                    out.push(check_limit_route(p, b, f, omega));
                }
            }
        }
        "vanishing" => {
            for b in pick(&["unknot", "trefoil"]).iter().filter(|b| b.closure().len() == 1) {
                for omega in [0u8, 1] {
                    out.push(check_vanishing_f0(p, b, omega));
                }
            }
        }
        "markov" => {
            out.push(check_presentation_independence(p, &alphas));
            out.push(check_kirby_lift(p, Degree::new(Scalar::new(0.4, 0.2))));
        }
        "all" => {
            for s in SUITES {
                out.extend(run_suite(p, s, knot_name, seed)?);
            }
        }
        other => return Err(Error::Parse { pos: 0, msg: format!("unknown suite {other:?}") }),
    }
    Ok(out)
}

/// Blackboard framings of a braid, re-exported for report inputs.
pub fn default_framings(b: &BraidWord) -> Vec<i64> {
    blackboard_framings(b)
}
