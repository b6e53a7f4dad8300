//! Root-of-unity arithmetic.
//!
//! `q = exp(iπ/r)`, and for complex `x` the power `q^x` always means
//! `exp(iπx/r)`. The real part of every exponent is reduced modulo `2r`
//! before exponentiating; `q^{2r} = 1`, and the reduction keeps large
//! exponents (`q^{α²/2}` for big `α`) accurate.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Euclid;

use crate::reps::{ModuleKind, WeightModule};
use crate::{Error, Result, Scalar};

/// Integers closer than this to a complex number count as hitting it.
pub const INTEGRALITY_TOL: f64 = 1e-9;

const I: Scalar = Scalar::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QParams {
    r: u32,
}

impl QParams {
    pub fn new(r: u32) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidOrder(r));
        }
        Ok(Self { r })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn ri(&self) -> i64 {
        self.r as i64
    }

    pub fn q(&self) -> Scalar {
        self.qpow_re(1.0)
    }

    /// Fails for `r ∈ 4ℤ`, where the 3-manifold normalizations are undefined.
    pub fn require_manifold_order(&self) -> Result<()> {
        if self.r.is_multiple_of(4) {
            Err(Error::OrderDivisibleByFour(self.r))
        } else {
            Ok(())
        }
    }

    /// `q^x = exp(iπx/r)`.
    pub fn qpow(&self, x: Scalar) -> Scalar {
        let period = 2.0 * self.r as f64;
        let re = x.re - period * (x.re / period).round();
        (Scalar::new(re, x.im) * (I * PI / self.r as f64)).exp()
    }

    pub fn qpow_re(&self, x: f64) -> Scalar {
        self.qpow(Scalar::new(x, 0.0))
    }

    /// `{x} = q^x − q^{−x} = 2i·sin(πx/r)`.
    pub fn qnum(&self, x: Scalar) -> Scalar {
        self.qpow(x) - self.qpow(-x)
    }

    pub fn qnum_re(&self, x: f64) -> Scalar {
        self.qnum(Scalar::new(x, 0.0))
    }

    /// Quantum integer `[n] = {n}/{1}`.
    pub fn qint(&self, n: i64) -> Scalar {
        self.qnum_re(n as f64) / self.qnum_re(1.0)
    }

    /// `{1}^{...}` factorial `{1}{2}…{n}`.
    pub fn qnum_factorial(&self, n: u32) -> Scalar {
        (1..=n).map(|j| self.qnum_re(j as f64)).product()
    }

    /// Is `α` a pole of the modified dimension, i.e. `α ∈ ℤ ∖ rℤ`?
    pub fn is_pole(&self, alpha: Scalar) -> bool {
        nearest_integer(alpha).is_some_and(|n| n.rem_euclid(self.ri()) != 0)
    }

    /// Modified dimension `d(α) = (−1)^{r−1}·r·{α}/{rα}`.
    ///
    /// `{rα} = 2i·sin(πα)` is evaluated after splitting off the nearest
    /// integer `m`, as `2i(−1)^m·sin(π(α−m))`, so values next to a pole keep
    /// full relative accuracy. Next to `rℤ` (a removable singularity) the
    /// product form is used instead.
    pub fn mdim(&self, alpha: Scalar) -> Result<Scalar> {
        if self.is_pole(alpha) {
            return Err(Error::Pole(alpha));
        }
        let m = alpha.re.round();
        let delta = alpha - m;
        if Euclid::rem_euclid(&m, &(self.r as f64)) == 0.0 && delta.norm() < 1e-3 {
            return Ok(self.mdim_product(alpha));
        }
        let parity = if (m as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let denom = 2.0 * I * parity * (delta * PI).sin();
        Ok(self.sign_r_minus_1() * self.r as f64 * self.qnum(alpha) / denom)
    }

    /// `(−1)^{r−1} ∏_{j=1}^{r−1} {j}/{α+r−j}`; the unreduced product form.
    pub fn mdim_product(&self, alpha: Scalar) -> Scalar {
        let r = self.r as f64;
        let prod: Scalar = (1..self.r)
            .map(|j| self.qnum_re(j as f64) / self.qnum(alpha + r - j as f64))
            .product();
        self.sign_r_minus_1() * prod
    }

    /// Residue of `d` at `n ∈ ℤ∖rℤ`: `(−1)^{r−1+n}(r/π)sin(nπ/r)`.
    pub fn residue_mdim(&self, n: i64) -> Result<f64> {
        if n.rem_euclid(self.ri()) == 0 {
            return Err(Error::OutOfRange { what: "residue point (multiple of r)", value: n });
        }
        let sign = if (self.ri() - 1 + n).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let r = self.r as f64;
        Ok(sign * r / PI * (n as f64 * PI / r).sin())
    }

    /// `H_r = {1−r, 3−r, …, r−1}`.
    pub fn hr_set(&self) -> Vec<i64> {
        let r = self.ri();
        (0..r).map(|i| 1 - r + 2 * i).collect()
    }

    fn sign_r_minus_1(&self) -> f64 {
        if (self.r - 1).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    /// Kirby color `Ω_α = Σ_{k∈H_r} d(α+k)·V_{α+k}`; `α` must not be an integer.
    pub fn kirby_color(&self, alpha: Scalar) -> Result<FormalColor> {
        if nearest_integer(alpha).is_some() {
            return Err(Error::Pole(alpha));
        }
        let terms = self
            .hr_set()
            .into_iter()
            .map(|k| {
                let a = alpha + k as f64;
                Ok((self.mdim(a)?, WeightModule::typical(*self, a)))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut color = FormalColor::new(terms)?;
        color.degree = Some(Degree::new(alpha).canonical());
        Ok(color)
    }

    /// `Ω^RT_0 = Σ_{j even} [j+1]·S_j` and `Ω^RT_1 = Σ_{j odd} −[j+1]·S_j`,
    /// with `0 ≤ j ≤ r−2`.
    pub fn kirby_rt(&self, parity: u8) -> Result<FormalColor> {
        if parity > 1 {
            return Err(Error::OutOfRange { what: "Kirby color parity", value: parity as i64 });
        }
        let sign = if parity == 0 { 1.0 } else { -1.0 };
        let terms = (0..self.r.saturating_sub(1))
            .filter(|j| j % 2 == parity as u32)
            .map(|j| Ok((sign * self.qint(j as i64 + 1), WeightModule::simple(*self, j)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut color = FormalColor::new(terms)?;
        color.degree = Some(Degree::new(Scalar::new(parity as f64, 0.0)));
        Ok(color)
    }

    /// `Δ^{SO(3)}_± = F(u_{±1})`: the `±1`-framed unknot colored by `Ω^RT_0`,
    /// summed term by term as `Σ coeff·qdim(S_j)·θ_{S_j}^{±1}`. The twist is
    /// the kink evaluation from [`crate::ribbon::twist_scalar`].
    pub fn delta_so3(&self, sign: i8) -> Result<Scalar> {
        self.require_manifold_order()?;
        let sign = normalize_sign(sign)?;
        let omega = self.kirby_rt(0)?;
        let mut total = Scalar::new(0.0, 0.0);
        for (coeff, module) in omega.terms() {
            let theta = crate::ribbon::twist_scalar(module)?;
            let twist = if sign > 0 { theta } else { theta.inv() };
            total += coeff * module.qdim() * twist;
        }
        Ok(total)
    }

    /// `Δ_+ = {1}·r·Δ^{SO(3)}_+` and `Δ_− = −{1}·r·Δ^{SO(3)}_−`.
    pub fn delta_cgp(&self, sign: i8) -> Result<Scalar> {
        let sign = normalize_sign(sign)?;
        let base = self.qnum_re(1.0) * self.r as f64 * self.delta_so3(sign)?;
        Ok(if sign > 0 { base } else { -base })
    }

    /// The case table for `Δ_−` in terms of `(rq)^{3/2}` (principal branch);
    /// `Δ_+` is its conjugate. Kept as a cross-check of [`Self::delta_cgp`].
    pub fn delta_cgp_table(&self, sign: i8) -> Result<Scalar> {
        self.require_manifold_order()?;
        let sign = normalize_sign(sign)?;
        let t = (self.q() * self.r as f64).powf(1.5);
        let minus = match self.r % 4 {
            1 => I * t,
            2 => (I - 1.0) * t,
            _ => -t,
        };
        Ok(if sign < 0 { minus } else { minus.conj() })
    }
}

fn normalize_sign(sign: i8) -> Result<i8> {
    match sign {
        1 | -1 => Ok(sign),
        _ => Err(Error::OutOfRange { what: "sign", value: sign as i64 }),
    }
}

/// The integer `x` is within [`INTEGRALITY_TOL`] of, if any.
pub fn nearest_integer(x: Scalar) -> Option<i64> {
    let n = x.re.round();
    if (x - n).norm() < INTEGRALITY_TOL {
        Some(n as i64)
    } else {
        None
    }
}

/// An element of `ℂ/2ℤ`, stored through a chosen lift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Degree(Scalar);

impl Degree {
    pub fn new(lift: Scalar) -> Self {
        Self(lift)
    }

    pub fn integer(n: i64) -> Self {
        Self(Scalar::new(n as f64, 0.0))
    }

    pub fn lift(&self) -> Scalar {
        self.0
    }

    /// The lift with real part in `[0, 2)`.
    pub fn canonical(&self) -> Self {
        let mut re = Euclid::rem_euclid(&self.0.re, &2.0);
        if 2.0 - re < INTEGRALITY_TOL {
            re = 0.0;
        }
        Self(Scalar::new(re, self.0.im))
    }

    /// Whether the class lies in `ℤ/2ℤ ⊂ ℂ/2ℤ`.
    pub fn is_integral(&self) -> bool {
        nearest_integer(self.0).is_some()
    }

    /// `0` or `1` for integral classes.
    pub fn parity(&self) -> Option<u8> {
        nearest_integer(self.0).map(|n| n.rem_euclid(2) as u8)
    }

    /// Equality in `ℂ/2ℤ`.
    pub fn congruent(&self, other: &Degree) -> bool {
        Degree(self.0 - other.0).parity() == Some(0)
    }
}

/// A finite formal combination `Σ c_i·M_i` of weight modules from a single
/// family (all `V`'s or all `S`/`τ`'s).
#[derive(Debug, Clone)]
pub struct FormalColor {
    terms: Vec<(Scalar, WeightModule)>,
    pub degree: Option<Degree>,
}

impl FormalColor {
    pub fn new(terms: Vec<(Scalar, WeightModule)>) -> Result<Self> {
        let typical = |m: &WeightModule| matches!(m.kind(), ModuleKind::Typical(_));
        if let Some((_, first)) = terms.first() {
            let family = typical(first);
            if terms.iter().any(|(_, m)| typical(m) != family) {
                return Err(Error::MixedFormalColor);
            }
        }
        Ok(Self { terms, degree: None })
    }

    pub fn terms(&self) -> impl Iterator<Item = (Scalar, &WeightModule)> {
        self.terms.iter().map(|(c, m)| (*c, m))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Evaluates a functional linearly: `Σ c_i·g(M_i)`.
    pub fn evaluate<G>(&self, mut g: G) -> Result<Scalar>
    where
        G: FnMut(&WeightModule) -> Result<Scalar>,
    {
        let mut total = Scalar::new(0.0, 0.0);
        for (c, m) in &self.terms {
            total += *c * g(m)?;
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(r: u32) -> QParams {
        QParams::new(r).unwrap()
    }

    fn c(re: f64, im: f64) -> Scalar {
        Scalar::new(re, im)
    }

    fn close(a: Scalar, b: Scalar, tol: f64) -> bool {
        crate::rel_err(a, b) < tol
    }

    #[test]
    fn order_must_be_at_least_two() {
        assert_eq!(QParams::new(1), Err(Error::InvalidOrder(1)));
        assert!(p(4).require_manifold_order().is_err());
        assert!(p(6).require_manifold_order().is_ok());
    }

    #[test]
    fn q_is_a_primitive_2r_root() {
        for r in 2..9 {
            let q = p(r).q();
            assert!((q.norm() - 1.0).abs() < 1e-14);
            assert!(close(q.powu(2 * r), c(1.0, 0.0), 1e-12));
        }
    }

    #[test]
    fn qnum_examples() {
        let v = p(3).qnum_re(1.0);
        assert!(close(v, c(0.0, 3f64.sqrt()), 1e-14));
        assert!(p(3).qnum_re(3.0).norm() < 1e-14);
        // 2i·sin(π(2+i)/5), direct complex sine
        let z = c(2.0, 1.0) * PI / 5.0;
        let direct = c(0.0, 2.0) * z.sin();
        assert!(close(p(5).qnum(c(2.0, 1.0)), direct, 1e-14));
    }

    #[test]
    fn mdim_examples() {
        assert!(close(p(3).mdim(c(0.5, 0.0)).unwrap(), c(1.5, 0.0), 1e-13));
        // r = 2, α = 1/2: −2·{1/2}/{1} = −2·(2i sin(π/4))/(2i) = −√2
        assert!(close(p(2).mdim(c(0.5, 0.0)).unwrap(), c(-(2f64).sqrt(), 0.0), 1e-13));
        assert_eq!(p(3).mdim(c(1.0, 0.0)), Err(Error::Pole(c(1.0, 0.0))));
        assert!(p(3).mdim(c(3.0, 0.0)).is_ok());
    }

    #[test]
    fn mdim_at_multiples_of_r_is_finite() {
        // d(mr) = (−1)^{r−1+m(r+1)}
        for r in [3u32, 4, 5] {
            for m in [-1i64, 0, 1, 2] {
                let v = p(r).mdim(c((m * r as i64) as f64, 0.0)).unwrap();
                let s = if ((r as i64 - 1) + m * (r as i64 + 1)).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                assert!(close(v, c(s, 0.0), 1e-10), "r={r} m={m} {v}");
            }
        }
    }

    #[test]
    fn closed_and_product_forms_agree() {
        for r in 2..8 {
            for alpha in [c(0.5, 0.0), c(0.31, 0.2), c(-2.7, -0.4), c(11.2, 1.0), c(3.999, 0.0)] {
                let a = p(r).mdim(alpha).unwrap();
                let b = p(r).mdim_product(alpha);
                assert!(close(a, b, 1e-10), "r={r} α={alpha}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn residue_examples() {
        let r3 = p(3);
        let expected = -(3.0 / PI) * (3f64.sqrt() / 2.0);
        assert!((r3.residue_mdim(1).unwrap() - expected).abs() < 1e-14);
        let eps = 1e-6;
        let limit = r3.mdim(c(1.0 + eps, 0.0)).unwrap() * eps;
        assert!((limit.re - expected).abs() / expected.abs() < 1e-4 && limit.im.abs() < 1e-4);
        assert!(p(5).residue_mdim(5).is_err());
    }

    #[test]
    fn hr_sets() {
        assert_eq!(p(2).hr_set(), [-1, 1]);
        assert_eq!(p(3).hr_set(), [-2, 0, 2]);
        for r in 2..10 {
            let h = p(r).hr_set();
            assert_eq!(h.len(), r as usize);
            assert!(h.iter().all(|k| h.contains(&-k)));
        }
    }

    #[test]
    fn kirby_color_unfolds() {
        let k = p(2).kirby_color(c(0.5, 0.0)).unwrap();
        let terms: Vec<_> = k.terms().collect();
        assert_eq!(terms.len(), 2);
        assert!(close(terms[0].0, p(2).mdim(c(-0.5, 0.0)).unwrap(), 1e-14));
        assert_eq!(terms[0].1.kind(), ModuleKind::Typical(c(-0.5, 0.0)));
        assert!(close(terms[1].0, p(2).mdim(c(1.5, 0.0)).unwrap(), 1e-14));
        assert!(p(3).kirby_color(c(2.0, 0.0)).is_err());
        for r in 2..7 {
            assert_eq!(p(r).kirby_color(c(0.2, 0.1)).unwrap().len(), r as usize);
        }
        let deg = p(3).kirby_color(c(-1.5, 0.0)).unwrap().degree.unwrap();
        assert!(close(deg.lift(), c(0.5, 0.0), 1e-14));
    }

    #[test]
    fn kirby_rt_examples() {
        // r = 3: j ranges over 0..=1, so Ω^RT_0 = [1]·S_0 (the S_2 weight [3] vanishes anyway)
        let k0 = p(3).kirby_rt(0).unwrap();
        let t: Vec<_> = k0.terms().collect();
        assert_eq!(t.len(), 1);
        assert!(close(t[0].0, c(1.0, 0.0), 1e-14));
        assert!(p(3).qint(3).norm() < 1e-14);
        let k1 = p(3).kirby_rt(1).unwrap();
        let t: Vec<_> = k1.terms().collect();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].1.kind(), ModuleKind::Simple(1));
        assert!(close(t[0].0, c(-1.0, 0.0), 1e-14));
        let k5: Vec<_> = p(5).kirby_rt(0).unwrap().terms().map(|(_, m)| m.kind()).collect();
        assert_eq!(k5, [ModuleKind::Simple(0), ModuleKind::Simple(2)]);
    }

    #[test]
    fn delta_so3_at_three() {
        let d = p(3).delta_so3(1).unwrap();
        assert!(close(d, c(1.0, 0.0), 1e-12));
        for r in [3, 5, 6, 7] {
            let plus = p(r).delta_so3(1).unwrap();
            let minus = p(r).delta_so3(-1).unwrap();
            assert!(close(minus, plus.conj(), 1e-12));
            assert!(plus.norm() > 1e-3);
            let prod = plus * minus;
            assert!(prod.re > 0.0 && prod.im.abs() < 1e-12);
        }
        assert!(p(8).delta_so3(1).is_err());
    }

    #[test]
    fn delta_cgp_matches_case_table() {
        // r = 3 ≡ 3 mod 4: Δ_− = −(3q)^{3/2}
        let expected = -(p(3).q() * 3.0).powf(1.5);
        assert!(close(p(3).delta_cgp(-1).unwrap(), expected, 1e-12));
        for r in [3, 5, 6, 7, 9, 10] {
            for s in [1, -1] {
                let a = p(r).delta_cgp(s).unwrap();
                let b = p(r).delta_cgp_table(s).unwrap();
                assert!(close(a, b, 1e-10), "r={r} s={s}: {a} vs {b}");
            }
            let plus = p(r).delta_cgp(1).unwrap();
            assert!(close(p(r).delta_cgp(-1).unwrap(), plus.conj(), 1e-12));
            let ratio = plus.norm() / (p(r).qnum_re(1.0).norm() * r as f64 * p(r).delta_so3(1).unwrap().norm());
            assert!((ratio - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn degree_classes() {
        let d = Degree::new(c(-1.5, 0.25));
        assert!(close(d.canonical().lift(), c(0.5, 0.25), 1e-14));
        assert!(!d.is_integral());
        assert_eq!(Degree::integer(-3).parity(), Some(1));
        assert!(Degree::new(c(0.3, 0.0)).congruent(&Degree::new(c(2.3, 0.0))));
        assert!(!Degree::new(c(0.3, 0.0)).congruent(&Degree::new(c(1.3, 0.0))));
    }

    #[test]
    fn formal_colors_reject_mixed_families() {
        let r = p(3);
        let mixed = FormalColor::new(alloc::vec![
            (c(1.0, 0.0), WeightModule::simple(r, 1).unwrap()),
            (c(1.0, 0.0), WeightModule::typical(r, c(0.5, 0.0))),
        ]);
        assert!(matches!(mixed, Err(Error::MixedFormalColor)));
    }
}
