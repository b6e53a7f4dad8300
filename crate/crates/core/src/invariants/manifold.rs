//! 3-manifold invariants from surgery presentations: `WRT_r`, `N_r` and,
//! for knot surgeries and their connected sums, `N⁰_r`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::{f_closed, f_prime, tangle_bracket};
use crate::links::{cable2, linking_data, BraidWord, ClosureData, Color, ColoredBraidClosure, LinkingData};
use crate::qcore::{nearest_integer, Degree, QParams};
use crate::reps::{ModuleKind, WeightModule};
use crate::{Error, Result, Scalar};

/// Default auxiliary color for the cabled route, and its fallback.
pub const DEFAULT_ALPHA: Scalar = Scalar::new(0.3141, 0.1);
pub const FALLBACK_ALPHA: Scalar = Scalar::new(0.2718, 0.05);

/// Step sizes of the two-point extrapolation in [`nr0_knot_limit`]: dyadic,
/// with `ε + n` exact for every integer `n` involved.
pub const LIMIT_EPS: (f64, f64) = (1.0 / 1024.0, 1.0 / 8192.0);

#[derive(Debug, Clone, PartialEq)]
pub enum ComponentRole {
    /// A surgery component with meridian degree `g_ω(L_i)`.
    Surgery { degree: Degree },
    /// A component of the colored graph `T`; its degree defaults to the
    /// weight class of the color.
    Cargo { color: WeightModule, degree: Option<Degree> },
}

impl ComponentRole {
    pub fn is_surgery(&self) -> bool {
        matches!(self, ComponentRole::Surgery { .. })
    }

    pub fn degree(&self) -> Degree {
        match self {
            ComponentRole::Surgery { degree } => *degree,
            ComponentRole::Cargo { color, degree } => degree.unwrap_or_else(|| color.degree()),
        }
    }
}

/// A surgery presentation `L ∪ T` of a triple `(M, T, ω)`.
#[derive(Debug, Clone)]
pub struct Triple {
    link: Option<(BraidWord, ClosureData)>,
    roles: Vec<ComponentRole>,
    framings: Vec<i64>,
}

impl Triple {
    /// `S³` with nothing in it.
    pub fn empty() -> Self {
        Self { link: None, roles: Vec::new(), framings: Vec::new() }
    }

    /// Validates arity, cargo compatibility, and that `ω` vanishes on every
    /// surgery longitude: `Σ_j A_ij g_j + Σ_t lk(L_i, T_t) g_t ∈ 2ℤ`.
    pub fn new(braid: BraidWord, roles: Vec<ComponentRole>, framings: Vec<i64>) -> Result<Self> {
        let t = Self::new_relaxed(braid, roles, framings)?;
        t.check_longitudes()?;
        Ok(t)
    }

    /// As [`Triple::new`] without the longitude condition. The formulas below
    /// still evaluate; the result is only a topological invariant when the
    /// condition holds.
    pub fn new_relaxed(braid: BraidWord, roles: Vec<ComponentRole>, framings: Vec<i64>) -> Result<Self> {
        let closure = braid.closure();
        let n = closure.len();
        if roles.len() != n {
            return Err(Error::Arity { what: "component roles", expected: n, got: roles.len() });
        }
        if framings.len() != n {
            return Err(Error::Arity { what: "component framings", expected: n, got: framings.len() });
        }
        for (i, role) in roles.iter().enumerate() {
            if let ComponentRole::Cargo { color, degree: Some(d) } = role {
                if !color.degree().congruent(d) {
                    return Err(Error::Incompatible(format!(
                        "component {i}: color {:?} has weights in class {} but degree {} was declared",
                        color.kind(),
                        color.degree().lift(),
                        d.lift()
                    )));
                }
            }
        }
        Ok(Self { link: Some((braid, closure)), roles, framings })
    }

    /// `K` with framing `f` and meridian degree `ω`.
    pub fn knot_surgery(knot: &BraidWord, f: i64, omega: u8) -> Result<Self> {
        Self::new_relaxed(knot.clone(), vec![ComponentRole::Surgery { degree: Degree::integer(omega as i64) }], vec![f])
    }

    pub fn braid(&self) -> Option<&BraidWord> {
        self.link.as_ref().map(|l| &l.0)
    }

    pub fn roles(&self) -> &[ComponentRole] {
        &self.roles
    }

    pub fn framings(&self) -> &[i64] {
        &self.framings
    }

    pub fn surgery_indices(&self) -> Vec<usize> {
        (0..self.roles.len()).filter(|&i| self.roles[i].is_surgery()).collect()
    }

    /// Linking data of the surgery sublink.
    pub fn surgery_linking(&self) -> LinkingData {
        match &self.link {
            Some((_, cd)) => linking_data(cd, &self.framings, &self.surgery_indices()),
            None => LinkingData::from_matrix(Vec::new()),
        }
    }

    fn check_longitudes(&self) -> Result<()> {
        let Some((_, cd)) = &self.link else { return Ok(()) };
        for i in self.surgery_indices() {
            let mut total = Scalar::new(0.0, 0.0);
            for (j, role) in self.roles.iter().enumerate() {
                let coeff = if i == j { self.framings[i] } else { cd.linking(i, j) };
                total += role.degree().lift() * coeff as f64;
            }
            if !Degree::new(total).congruent(&Degree::integer(0)) {
                return Err(Error::Incompatible(format!(
                    "degree {} on the longitude of surgery component {i} is not in 2ℤ",
                    total
                )));
            }
        }
        Ok(())
    }

    /// The same presentation with every surgery degree replaced.
    pub fn with_surgery_degrees(&self, degree: Degree) -> Result<Self> {
        let roles = self
            .roles
            .iter()
            .map(|r| if r.is_surgery() { ComponentRole::Surgery { degree } } else { r.clone() })
            .collect();
        let t = Self { link: self.link.clone(), roles, framings: self.framings.clone() };
        t.check_longitudes()?;
        Ok(t)
    }

    fn colored(&self, color_surgery: impl Fn(Degree) -> Result<Color>) -> Result<Option<ColoredBraidClosure>> {
        let Some((braid, _)) = &self.link else { return Ok(None) };
        let colors = self
            .roles
            .iter()
            .map(|r| match r {
                ComponentRole::Surgery { degree } => color_surgery(*degree),
                ComponentRole::Cargo { color, .. } => Ok(Color::Module(color.clone())),
            })
            .collect::<Result<Vec<_>>>()?;
        ColoredBraidClosure::new(braid.clone(), colors, self.framings.clone(), None).map(Some)
    }
}

fn signed_power(plus: Scalar, minus: Scalar, (p, s): (usize, usize)) -> Scalar {
    plus.powi(p as i32) * minus.powi(s as i32)
}

/// `WRT_r = F(L ∪ T)/((Δ^{SO(3)}_+)^p (Δ^{SO(3)}_−)^s)`, surgery components
/// colored by `Ω^RT_{g_ω(L_i)}`.
pub fn wrt(p: QParams, t: &Triple) -> Result<Scalar> {
    p.require_manifold_order()?;
    for (i, role) in t.roles().iter().enumerate() {
        match role {
            ComponentRole::Surgery { degree } if degree.parity().is_none() => {
                return Err(Error::Incompatible(format!("surgery component {i} needs a degree in ℤ/2ℤ")));
            }
            ComponentRole::Cargo { color, .. } if !matches!(color.kind(), ModuleKind::Simple(_) | ModuleKind::Tau) => {
                return Err(Error::IllegalColor(format!("{:?} on cargo component {i}; WRT takes S_n and τ", color.kind())));
            }
            _ => {}
        }
    }
    let Some(c) = t.colored(|d| Ok(Color::Formal(p.kirby_rt(d.parity().unwrap_or(0))?)))? else {
        return Ok(Scalar::new(1.0, 0.0));
    };
    let value = f_closed(&c)?;
    let norm = signed_power(p.delta_so3(1)?, p.delta_so3(-1)?, t.surgery_linking().signature);
    Ok(value / norm)
}

/// `WRT^{SO(3)}(M, T) = WRT(M, T, 0)`.
pub fn wrt_so3(p: QParams, t: &Triple) -> Result<Scalar> {
    wrt(p, &t.with_surgery_degrees(Degree::integer(0))?)
}

/// Why a presentation is not computable, if it is not.
pub fn computability(t: &Triple) -> Result<()> {
    let surgery = t.surgery_indices();
    for &i in &surgery {
        if t.roles()[i].degree().is_integral() {
            return Err(Error::NotComputable(format!("surgery component {i} has integral degree")));
        }
    }
    if surgery.is_empty() {
        let typical = t.roles().iter().any(|r| matches!(r, ComponentRole::Cargo { color, .. } if color.is_typical()));
        if !typical {
            return Err(Error::NotComputable("no surgery components and no typical cargo color".into()));
        }
    }
    Ok(())
}

/// `N_r = F′(L ∪ T)/(Δ_+^p Δ_−^s)`, surgery component `i` colored by the
/// Kirby color at the given lift of `g_ω(L_i)`.
pub fn nr(p: QParams, t: &Triple) -> Result<Scalar> {
    p.require_manifold_order()?;
    computability(t)?;
    let c = t.colored(|d| Ok(Color::Formal(p.kirby_color(d.lift())?)))?.ok_or(Error::NoTypicalColor)?;
    let value = f_prime(&c)?;
    let norm = signed_power(p.delta_cgp(1)?, p.delta_cgp(-1)?, t.surgery_linking().signature);
    Ok(value / norm)
}

fn knot_checks(p: QParams, knot: &BraidWord, omega: u8) -> Result<ClosureData> {
    p.require_manifold_order()?;
    if omega > 1 {
        return Err(Error::OutOfRange { what: "omega", value: omega as i64 });
    }
    let cd = knot.closure();
    if cd.len() != 1 {
        return Err(Error::NotAKnot(cd.len()));
    }
    Ok(cd)
}

/// `e ∈ {0, 1}` with `e ≡ r−1+ω (mod 2)`.
pub fn parity_e(p: QParams, omega: u8) -> u8 {
    ((p.r() - 1 + omega as u32) % 2) as u8
}

fn sign_of(f: i64) -> i8 {
    if f > 0 {
        1
    } else {
        -1
    }
}

/// `⟨K^f_{V_α}⟩` for a knot.
pub fn knot_bracket(p: QParams, knot: &BraidWord, cd: &ClosureData, alpha: Scalar, f: i64) -> Result<Scalar> {
    let v = WeightModule::typical(p, alpha);
    tangle_bracket(knot, cd, &[&v], &[f], 0, false)
}

/// `N⁰_r` of surgery on the `f`-framed knot `K`:
/// `c·Σ_{n=0}^{r−1} (q^k − q^e){k}⟨K^f_{V_k}⟩`, `k = 2n+e`,
/// `c = rf/({1}Δ_{sign f})`.
pub fn nr0_knot(p: QParams, knot: &BraidWord, f: i64, omega: u8) -> Result<Scalar> {
    let cd = knot_checks(p, knot, omega)?;
    if f == 0 {
        return Err(Error::ZeroFraming);
    }
    let e = parity_e(p, omega) as f64;
    let c = Scalar::new((p.r() as i64 * f) as f64, 0.0) / (p.qnum_re(1.0) * p.delta_cgp(sign_of(f))?);
    let mut total = Scalar::new(0.0, 0.0);
    for n in 0..p.r() {
        let k = 2.0 * n as f64 + e;
        let phi = (p.qpow_re(k) - p.qpow_re(e)) * p.qnum_re(k);
        if phi.norm() == 0.0 {
            continue;
        }
        total += phi * knot_bracket(p, knot, &cd, Scalar::new(k, 0.0), f)?;
    }
    Ok(c * total)
}

/// Whether `α` is too close to the integers for the cabled route.
pub fn is_degenerate_alpha(alpha: Scalar) -> bool {
    (alpha - alpha.re.round()).norm() < 1e-6
}

/// `N⁰_r` through the 2-cable `DK`:
/// `(1/Δ_{sign f}) Σ_{h∈H_r} d(e−α+h)·⟨DK; V_α cut, V_{e−α+h}⟩`, both
/// components framed `f`.
pub fn nr0_knot_cabled(p: QParams, knot: &BraidWord, f: i64, omega: u8, alpha: Scalar) -> Result<Scalar> {
    let cd = knot_checks(p, knot, omega)?;
    if f == 0 {
        return Err(Error::ZeroFraming);
    }
    if is_degenerate_alpha(alpha) {
        return Err(Error::DegenerateAlpha(alpha));
    }
    let dk = cable2(knot, f - cd.writhe(0))?;
    let dcd = dk.closure();
    let e = parity_e(p, omega) as f64;
    let va = WeightModule::typical(p, alpha);
    let mut total = Scalar::new(0.0, 0.0);
    for h in p.hr_set() {
        let beta = -alpha + e + h as f64;
        let vb = WeightModule::typical(p, beta);
        let b = tangle_bracket(&dk, &dcd, &[&va, &vb], &[f, f], 0, false)?;
        total += p.mdim(beta)? * b;
    }
    Ok(total / p.delta_cgp(sign_of(f))?)
}

/// [`nr0_knot_cabled`] at [`DEFAULT_ALPHA`], or [`FALLBACK_ALPHA`] if the
/// default is degenerate.
pub fn nr0_knot_cabled_auto(p: QParams, knot: &BraidWord, f: i64, omega: u8) -> Result<Scalar> {
    let alpha = if is_degenerate_alpha(DEFAULT_ALPHA) { FALLBACK_ALPHA } else { DEFAULT_ALPHA };
    nr0_knot_cabled(p, knot, f, omega, alpha)
}

/// `P(α) = Σ_{k∈H_r} F′(K^f_{V_{α+k}})`.
pub fn p_function(p: QParams, knot: &BraidWord, cd: &ClosureData, f: i64, alpha: Scalar) -> Result<Scalar> {
    let mut total = Scalar::new(0.0, 0.0);
    for k in p.hr_set() {
        let a = alpha + k as f64;
        total += p.mdim(a)? * knot_bracket(p, knot, cd, a, f)?;
    }
    Ok(total)
}

/// `S(ε) = Σ_{ℓ∈H_r} q^{ℓ+e} P(ε+ℓ+e)`.
pub fn limit_sum(p: QParams, knot: &BraidWord, f: i64, omega: u8, eps: f64) -> Result<Scalar> {
    let cd = knot_checks(p, knot, omega)?;
    let e = parity_e(p, omega) as i64;
    let mut total = Scalar::new(0.0, 0.0);
    for l in p.hr_set() {
        let shift = (l + e) as f64;
        total += p.qpow_re(shift) * p_function(p, knot, &cd, f, Scalar::new(eps + shift, 0.0))?;
    }
    Ok(total)
}

/// `N⁰_r` as the limit `(−1)^ω·lim_{ε→0} S(ε)/Δ_{sign f}`, by two-point
/// Richardson extrapolation over [`LIMIT_EPS`]. For `f = 0` the bare limit
/// `(−1)^ω·lim S(ε)` is returned; it vanishes.
pub fn nr0_knot_limit(p: QParams, knot: &BraidWord, f: i64, omega: u8) -> Result<Scalar> {
    let (e1, e2) = LIMIT_EPS;
    let s1 = limit_sum(p, knot, f, omega, e1)?;
    let s2 = limit_sum(p, knot, f, omega, e2)?;
    let ratio = e1 / e2;
    let s = (s2 * ratio - s1) / (ratio - 1.0);
    let s = if omega == 1 { -s } else { s };
    if f == 0 {
        Ok(s)
    } else {
        Ok(s / p.delta_cgp(sign_of(f))?)
    }
}

/// `N⁰_r` of a connected sum of knot surgeries: the product of the factors.
pub fn nr0_connected_sum(p: QParams, summands: &[(BraidWord, i64, u8)]) -> Result<Scalar> {
    summands.iter().try_fold(Scalar::new(1.0, 0.0), |acc, (k, f, w)| Ok(acc * nr0_knot(p, k, *f, *w)?))
}

/// `ord H_1(M; ℤ) = |det A|` of the surgery sublink.
pub fn homology_order(t: &Triple) -> u128 {
    t.surgery_linking().det_abs
}

/// The non-integral lift used for a degree on a typical cargo: `α` for
/// `V_α` with `α+r−1 ≡ g`.
pub fn alpha_for_degree(p: QParams, g: Degree) -> Option<Scalar> {
    let a = g.lift() - (p.r() as f64 - 1.0);
    nearest_integer(a).is_none().then_some(a)
}
