//! Reference values from an independent dense-matrix evaluation.

use qtop_core::invariants::manifold::{nr0_knot, nr0_knot_cabled, wrt, Triple};
use qtop_core::invariants::{f_prime, jones_rt};
use qtop_core::invariants::skein::jones_skein;
use qtop_core::links::{knot_table, ColoredBraidClosure};
use qtop_core::{rel_err, QParams, Scalar, WeightModule};

fn p(r: u32) -> QParams {
    QParams::new(r).unwrap()
}

fn c(re: f64, im: f64) -> Scalar {
    Scalar::new(re, im)
}

#[track_caller]
fn assert_close(got: Scalar, want: Scalar, tol: f64) {
    assert!(rel_err(got, want) < tol, "got {got}, want {want}");
}

const ALPHA: Scalar = Scalar::new(0.3141, 0.1);

fn fprime_knot(r: u32, name: &str, a: Scalar, f: i64) -> Scalar {
    let k = ColoredBraidClosure::new(knot_table(name).unwrap(), vec![WeightModule::typical(p(r), a).into()], vec![f], Some(0)).unwrap();
    f_prime(&k).unwrap()
}

#[test]
fn colored_jones() {
    let trefoil = knot_table("trefoil").unwrap();
    // Blackboard framing 3.
    let want = c(1.902113032590307, 1.6180339887498942);
    assert_close(jones_rt(p(5), &trefoil, &[1], &[3]).unwrap(), want, 1e-12);
    assert_close(jones_skein(p(5), &trefoil, &[1], &[3]).unwrap(), want, 1e-12);
    let figure8 = knot_table("figure8").unwrap();
    assert_close(jones_rt(p(5), &figure8, &[2], &[0]).unwrap(), c(-2.0, 0.0), 1e-12);
}

#[test]
fn renormalized_link_invariant() {
    assert_close(fprime_knot(3, "trefoil", ALPHA, 0), c(-0.6207921951778145, 4.701133917796811), 1e-11);
    assert_close(fprime_knot(5, "figure8", ALPHA, 1), c(15.343782521211095, 43.056539876815435), 1e-11);
    let hopf = ColoredBraidClosure::new(
        knot_table("hopf").unwrap(),
        vec![WeightModule::typical(p(3), c(0.3, 0.1)).into(), WeightModule::typical(p(3), c(-0.45, 0.0)).into()],
        vec![0, 0],
        Some(0),
    )
    .unwrap();
    assert_close(f_prime(&hopf).unwrap(), c(3.1133824479354044, -0.44309993906482736), 1e-11);
}

#[test]
fn unknot_at_half() {
    assert_close(fprime_knot(3, "unknot", c(0.5, 0.0), 0), c(1.5, 0.0), 1e-13);
}

#[test]
fn knot_surgeries() {
    let trefoil = knot_table("trefoil").unwrap();
    assert_close(nr0_knot(p(3), &trefoil, 1, 0).unwrap(), c(1.0, 0.0), 1e-11);
    assert_close(nr0_knot(p(5), &trefoil, -1, 1).unwrap(), c(-0.9510565162951545, 1.9270509831248548), 1e-11);
    let t = Triple::knot_surgery(&trefoil, 1, 0).unwrap();
    assert_close(wrt(p(5), &t).unwrap(), c(-0.8090169943749456, -2.4898982848827793), 1e-11);
    let t = Triple::knot_surgery(&trefoil, -2, 1).unwrap();
    assert_close(wrt(p(3), &t).unwrap(), c(-1.0, 0.0), 1e-11);
    assert_close(nr0_knot_cabled(p(3), &trefoil, 1, 0, ALPHA).unwrap(), c(1.0, 0.0), 1e-10);
}

#[test]
fn normalization_constants() {
    assert_close(p(5).delta_so3(1).unwrap(), c(-1.1180339887498945, 1.538841768587627), 1e-12);
    assert_close(p(7).delta_so3(-1).unwrap(), c(1.9009688679024195, -2.383739563481205), 1e-12);
    assert_close(p(3).delta_cgp(1).unwrap(), c(0.0, 5.196152422706632), 1e-12);
    assert_close(p(6).delta_cgp(-1).unwrap(), c(-20.78460969082653, 0.0), 1e-12);
}
