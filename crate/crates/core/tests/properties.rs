use proptest::prelude::*;
use qtop_core::invariants::{f_closed, f_prime, tangle_bracket};
use qtop_core::links::{cable2, knot_table, BraidWord, ColoredBraidClosure};
use qtop_core::ribbon::{braid_operator, braiding, twist_closed_form, twist_scalar, SparseOperator};
use qtop_core::{rel_err, QParams, Scalar, WeightModule};

fn generic_alpha() -> impl Strategy<Value = Scalar> {
    (-3.0f64..3.0, -0.5f64..0.5)
        .prop_map(|(re, im)| Scalar::new(re, im))
        .prop_filter("near an integer", |a| (a - a.re.round()).norm() > 0.05)
}

fn odd_order() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![3u32, 5, 7])
}

fn close(a: Scalar, b: Scalar, tol: f64) -> bool {
    rel_err(a, b) < tol
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mdim_forms_agree(r in 2u32..8, a in generic_alpha()) {
        let p = QParams::new(r).unwrap();
        let d = p.mdim(a).unwrap();
        prop_assert!(close(d, p.mdim_product(a), 1e-10));
    }

    #[test]
    fn mdim_even_and_periodic(r in 2u32..8, a in generic_alpha()) {
        let p = QParams::new(r).unwrap();
        let d = p.mdim(a).unwrap();
        prop_assert!(close(p.mdim(-a).unwrap(), d, 1e-10));
        prop_assert!(close(p.mdim(a + 2.0 * r as f64).unwrap(), d, 1e-10));
    }

    #[test]
    fn module_relations_hold(r in 2u32..8, a in generic_alpha()) {
        let p = QParams::new(r).unwrap();
        let v = WeightModule::typical(p, a);
        prop_assert!(v.relation_residuals().iter().all(|&x| x < 1e-10));
        let k = v.mat_k();
        for (i, w) in v.weights().iter().enumerate() {
            prop_assert!((k[(i, i)] - p.qpow(*w)).norm() < 1e-12);
        }
    }

    #[test]
    fn yang_baxter(r in odd_order(), a in generic_alpha(), b in generic_alpha(), c in generic_alpha()) {
        prop_assume!(r <= 5);
        let p = QParams::new(r).unwrap();
        let mods = [WeightModule::typical(p, a), WeightModule::typical(p, b), WeightModule::typical(p, c)];
        let refs: Vec<&WeightModule> = mods.iter().collect();
        let lhs = braid_operator(&refs, &[1, 2, 1]).unwrap();
        let rhs = braid_operator(&refs, &[2, 1, 2]).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-8 * lhs.to_dense().max_abs().max(1.0));
    }

    #[test]
    fn braiding_inverts(r in odd_order(), a in generic_alpha(), n in 0u32..3) {
        let p = QParams::new(r).unwrap();
        let v = WeightModule::typical(p, a);
        let s = WeightModule::simple(p, n.min(r - 1)).unwrap();
        let c = braiding(&v, &s, 1).unwrap();
        let ci = braiding(&v, &s, -1).unwrap();
        let id = SparseOperator::identity(vec![v.dim(), s.dim()]);
        prop_assert!(ci.compose(&c).unwrap().max_abs_diff(&id) < 1e-8);
    }

    #[test]
    fn kink_matches_closed_twist(r in odd_order(), a in generic_alpha()) {
        let p = QParams::new(r).unwrap();
        let v = WeightModule::typical(p, a);
        prop_assert!(close(twist_scalar(&v).unwrap(), twist_closed_form(&v), 1e-10));
    }

    #[test]
    fn markov_invariance_of_f_prime(a in generic_alpha(), f in -1i64..3, sign in prop::sample::select(vec![1i8, -1])) {
        let p = QParams::new(3).unwrap();
        let t = knot_table("trefoil").unwrap();
        let fp = |b: &BraidWord| {
            let c = ColoredBraidClosure::new(b.clone(), vec![WeightModule::typical(p, a).into()], vec![f], Some(0)).unwrap();
            f_prime(&c).unwrap()
        };
        let base = fp(&t);
        let stab = t.stabilized(sign);
        prop_assert!(close(fp(&stab), base, 1e-8));
        let g = BraidWord::parse("3: 2 -1").unwrap();
        prop_assert!(close(fp(&stab.conjugated(&g).unwrap()), base, 1e-8));
    }

    #[test]
    fn cut_independence(a in generic_alpha(), b in generic_alpha()) {
        let p = QParams::new(3).unwrap();
        let hopf = knot_table("hopf").unwrap();
        let mk = |cut| ColoredBraidClosure::new(
            hopf.clone(),
            vec![WeightModule::typical(p, a).into(), WeightModule::typical(p, b).into()],
            vec![0, 1],
            Some(cut),
        ).unwrap();
        prop_assert!(close(f_prime(&mk(0)).unwrap(), f_prime(&mk(1)).unwrap(), 1e-9));
    }

    #[test]
    fn split_links_multiply(a in generic_alpha(), n in 0u32..3) {
        let p = QParams::new(3).unwrap();
        let split = BraidWord::parse("4: 1 1 1 3 3").unwrap();
        let v = WeightModule::typical(p, a);
        let s = WeightModule::simple(p, n).unwrap();
        let whole = ColoredBraidClosure::new(split, vec![v.clone().into(), s.clone().into(), s.clone().into()], vec![0, 0, 0], Some(0)).unwrap();
        let knot = ColoredBraidClosure::new(knot_table("trefoil").unwrap(), vec![v.into()], vec![0], Some(0)).unwrap();
        let hopf = ColoredBraidClosure::new(knot_table("hopf").unwrap(), vec![s.clone().into(), s.into()], vec![0, 0], None).unwrap();
        prop_assert!(close(f_prime(&whole).unwrap(), f_prime(&knot).unwrap() * f_closed(&hopf).unwrap(), 1e-9));
    }
}

#[test]
fn submodules_of_integral_typicals_are_stable() {
    for r in [3u32, 5, 7] {
        let p = QParams::new(r).unwrap();
        for k in 0..r {
            let v = WeightModule::typical(p, Scalar::new(k as f64, 0.0));
            assert!(v.submodule_leak(k as usize).unwrap() < 1e-12, "r={r} k={k}");
        }
    }
}

#[test]
fn delta_product_is_real_positive() {
    for r in [3u32, 5, 6, 7] {
        let p = QParams::new(r).unwrap();
        let prod = p.delta_so3(1).unwrap() * p.delta_so3(-1).unwrap();
        assert!(prod.re > 0.0 && prod.im.abs() < 1e-12 * prod.re, "r={r}");
    }
}

#[test]
fn cable_components_close_to_the_knot() {
    let p = QParams::new(3).unwrap();
    let a = Scalar::new(0.37, 0.11);
    let v = WeightModule::typical(p, a);
    for name in ["trefoil", "figure8"] {
        let k = knot_table(name).unwrap();
        let cd = k.closure();
        let single = tangle_bracket(&k, &cd, &[&v], &[0], 0, false).unwrap();
        let cabled = cable2(&k, 0).unwrap();
        let ccd = cabled.closure();
        assert_eq!(ccd.len(), 2);
        let trivial = WeightModule::simple(p, 0).unwrap();
        for c in 0..2 {
            let mut mods = [&trivial, &trivial];
            mods[c] = &v;
            let b = tangle_bracket(&cabled, &ccd, &mods, &[0, 0], c, false).unwrap();
            assert!(close(b, single, 1e-9), "{name} component {c}");
        }
    }
}

#[test]
fn braid_word_round_trips() {
    for text in ["1:", "2: 1 1 1", "3: 1 -2 1 -2", "5: 4 -3 2 -1"] {
        let b = BraidWord::parse(text).unwrap();
        assert_eq!(b.to_string().parse::<BraidWord>().unwrap(), b);
    }
}
