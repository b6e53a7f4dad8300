//! Link invariants from the ribbon structure: the (1-1)-tangle bracket,
//! `F` of closed links, the renormalized `F′`, and the colored Jones
//! polynomial by two routes.

pub mod manifold;
pub mod skein;

use alloc::vec::Vec;

use crate::links::{BraidWord, ClosureData, Color, ColoredBraidClosure};
use crate::qcore::QParams;
use crate::reps::WeightModule;
use crate::ribbon::{twist_closed_form, ClosureEvaluator};
use crate::{Error, Result, Scalar};

/// Bracket of one coloring by modules (`mods[c]` colors component `c`),
/// cut at component `cut`, with framing corrections `θ^{f−w}`.
pub fn tangle_bracket(
    braid: &BraidWord,
    closure: &ClosureData,
    mods: &[&WeightModule],
    framings: &[i64],
    cut: usize,
    check: bool,
) -> Result<Scalar> {
    let start = closure.components[cut][0];
    let carrier = BraidWord::carrier(braid.strands(), start + 1);
    let word = braid.conjugated(&carrier)?;
    let carried = carrier.permutation();
    let per_position: Vec<&WeightModule> =
        (0..braid.strands()).map(|p| mods[closure.component_of[carried[p]]]).collect();
    let ev = ClosureEvaluator::new(&per_position, word.letters())?;
    let mut value = ev.bracket(check)?;
    for (c, m) in mods.iter().enumerate() {
        let excess = framings[c] - closure.writhe(c);
        if excess != 0 {
            value *= twist_closed_form(m).powi(excess as i32);
        }
    }
    Ok(value)
}

fn expanded_bracket(c: &ColoredBraidClosure, cut: usize, check: bool, weight: impl Fn(&WeightModule) -> Result<Scalar>) -> Result<Scalar> {
    if matches!(c.colors[cut], Color::Formal(_)) && c.colors[cut].terms().len() != 1 {
        return Err(Error::FormalCut);
    }
    let mut total = Scalar::new(0.0, 0.0);
    for (coeff, mods) in c.expand() {
        let refs: Vec<&WeightModule> = mods.iter().collect();
        let b = tangle_bracket(c.braid(), c.closure(), &refs, &c.framings, cut, check)?;
        total += coeff * weight(refs[cut])? * b;
    }
    Ok(total)
}

/// `⟨T⟩`: the scalar of the (1-1)-tangle obtained by cutting `c.cut`.
/// Formal colors on the other components expand linearly.
pub fn bracket(c: &ColoredBraidClosure) -> Result<Scalar> {
    let cut = c.cut.ok_or(Error::OutOfRange { what: "cut component (none given)", value: -1 })?;
    expanded_bracket(c, cut, false, |_| Ok(Scalar::new(1.0, 0.0)))
}

/// [`bracket`], additionally checking that the whole endomorphism is scalar.
pub fn bracket_checked(c: &ColoredBraidClosure) -> Result<Scalar> {
    let cut = c.cut.ok_or(Error::OutOfRange { what: "cut component (none given)", value: -1 })?;
    expanded_bracket(c, cut, true, |_| Ok(Scalar::new(1.0, 0.0)))
}

/// `F(L) = qdim(X)·⟨T_X⟩`, cutting component `c.cut` (default 0).
pub fn f_closed(c: &ColoredBraidClosure) -> Result<Scalar> {
    let cut = c.cut.unwrap_or(0);
    let mut total = Scalar::new(0.0, 0.0);
    for (coeff, mods) in c.expand() {
        let refs: Vec<&WeightModule> = mods.iter().collect();
        let b = tangle_bracket(c.braid(), c.closure(), &refs, &c.framings, cut, false)?;
        total += coeff * refs[cut].qdim() * b;
    }
    Ok(total)
}

/// The component `F′` cuts: `c.cut` if given, else the first component
/// whose color is typical in every term.
pub fn typical_cut(c: &ColoredBraidClosure) -> Result<usize> {
    let typical = |color: &Color| color.terms().iter().all(|(_, m)| m.is_typical());
    match c.cut {
        Some(i) if typical(&c.colors[i]) => Ok(i),
        Some(i) => Err(Error::IllegalColor(alloc::format!("cut component {i} is not typically colored"))),
        None => c.colors.iter().position(typical).ok_or(Error::NoTypicalColor),
    }
}

/// `F′(L) = d(α)·⟨T_{V_α}⟩`; formal colors expand multilinearly.
pub fn f_prime(c: &ColoredBraidClosure) -> Result<Scalar> {
    let cut = typical_cut(c)?;
    let mut total = Scalar::new(0.0, 0.0);
    for (coeff, mods) in c.expand() {
        let refs: Vec<&WeightModule> = mods.iter().collect();
        let alpha = match refs[cut].kind() {
            crate::ModuleKind::Typical(a) => a,
            _ => return Err(Error::NoTypicalColor),
        };
        let d = refs[cut].params().mdim(alpha)?;
        let b = tangle_bracket(c.braid(), c.closure(), &refs, &c.framings, cut, false)?;
        total += coeff * d * b;
    }
    Ok(total)
}

fn simple_colors(p: QParams, colors: &[u32]) -> Result<Vec<Color>> {
    colors.iter().map(|&n| Ok(Color::Module(WeightModule::simple(p, n)?))).collect()
}

/// Colored Jones polynomial at `q = e^{iπ/r}` through the RT functor:
/// `F` with colors `S_{n_i}` and the given framings.
pub fn jones_rt(p: QParams, braid: &BraidWord, colors: &[u32], framings: &[i64]) -> Result<Scalar> {
    let c = ColoredBraidClosure::new(braid.clone(), simple_colors(p, colors)?, framings.to_vec(), None)?;
    f_closed(&c)
}

/// Blackboard framings (one per component) of a braid closure.
pub fn blackboard_framings(braid: &BraidWord) -> Vec<i64> {
    let cd = braid.closure();
    (0..cd.len()).map(|c| cd.writhe(c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::links::knot_table;

    fn p(r: u32) -> QParams {
        QParams::new(r).unwrap()
    }

    fn c(re: f64, im: f64) -> Scalar {
        Scalar::new(re, im)
    }

    fn knot(name: &str, color: WeightModule, f: i64) -> ColoredBraidClosure {
        ColoredBraidClosure::new(knot_table(name).unwrap(), alloc::vec![color.into()], alloc::vec![f], Some(0)).unwrap()
    }

    #[test]
    fn unknot_brackets() {
        let a = c(0.31, -0.2);
        let va = WeightModule::typical(p(5), a);
        assert!((bracket(&knot("unknot", va.clone(), 0)).unwrap() - 1.0).norm() < 1e-14);
        let b = bracket(&knot("unknot", va.clone(), 3)).unwrap();
        assert!((b - twist_closed_form(&va).powi(3)).norm() < 1e-12);
        let fp = f_prime(&knot("unknot", va.clone(), 0)).unwrap();
        assert!((fp - p(5).mdim(a).unwrap()).norm() < 1e-12);
        let s1 = WeightModule::simple(p(5), 1).unwrap();
        let f = f_closed(&knot("unknot", s1, 0)).unwrap();
        assert!((f + 2.0 * (core::f64::consts::PI / 5.0).cos()).norm() < 1e-13);
    }

    #[test]
    fn tau_colored_knots_are_unknotted() {
        for r in [3u32, 4, 5] {
            let tau = WeightModule::tau(p(r));
            for name in ["trefoil", "figure8"] {
                let f = f_closed(&knot(name, tau.clone(), 0)).unwrap();
                let sign = if r % 2 == 1 { 1.0 } else { -1.0 };
                assert!((f - sign).norm() < 1e-12, "r={r} {name}");
            }
        }
    }

    #[test]
    fn cut_choice_does_not_matter() {
        let hopf = knot_table("hopf").unwrap();
        let (va, vb) = (WeightModule::typical(p(3), c(0.3, 0.1)), WeightModule::typical(p(3), c(-0.45, 0.0)));
        let mk = |cut| ColoredBraidClosure::new(hopf.clone(), alloc::vec![va.clone().into(), vb.clone().into()], alloc::vec![0, 0], Some(cut)).unwrap();
        let (x, y) = (f_prime(&mk(0)).unwrap(), f_prime(&mk(1)).unwrap());
        assert!((x - y).norm() < 1e-10 * x.norm().max(1.0));
        let s1 = WeightModule::simple(p(4), 1).unwrap();
        let s2 = WeightModule::simple(p(4), 2).unwrap();
        let mk = |cut| ColoredBraidClosure::new(hopf.clone(), alloc::vec![s1.clone().into(), s2.clone().into()], alloc::vec![1, 1], Some(cut)).unwrap();
        assert!((f_closed(&mk(0)).unwrap() - f_closed(&mk(1)).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn f_prime_needs_a_typical_color() {
        let s1 = WeightModule::simple(p(3), 1).unwrap();
        assert_eq!(f_prime(&knot("trefoil", s1, 0).with_cut(None).unwrap()), Err(Error::NoTypicalColor));
        let v1 = WeightModule::typical(p(3), c(1.0, 0.0));
        assert!(matches!(f_prime(&knot("trefoil", v1, 0)), Err(Error::IllegalColor(_))));
    }

    #[test]
    fn brackets_are_scalar() {
        for a in [c(0.3, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(-1.0, 0.0)] {
            let va = WeightModule::typical(p(3), a);
            assert!(bracket_checked(&knot("figure8", va, 0)).is_ok(), "α={a}");
        }
    }

    #[test]
    fn jones_rt_deletes_trivial_components() {
        let hopf = knot_table("hopf").unwrap();
        let v = jones_rt(p(5), &hopf, &[2, 0], &[0, 0]).unwrap();
        let u = jones_rt(p(5), &knot_table("unknot").unwrap(), &[2], &[0]).unwrap();
        assert!((v - u).norm() < 1e-12);
        assert!(jones_rt(p(3), &hopf, &[3, 0], &[0, 0]).is_err());
    }
}
