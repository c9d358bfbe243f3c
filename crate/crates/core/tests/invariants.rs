mod common;

use common::random_sl2z;
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use seifert_rt::invariants::{
    tau_compact, tau_cs11, tau_generic, tau_graph_sum, tau_lens, tau_section5, ComplexityCap,
};
use seifert_rt::modular::{check_axioms, max_abs_diff, r_rep_gauss, r_rep_word, sl2_datum, RRepMatrices};
use seifert_rt::seifert::{jankins_neumann_move, random_seifert, seifert_from_lens, Base, LensSpace};
use seifert_rt::{CfStyle, SeifertData};

fn unitary_defect(m: &DMatrix<Complex64>) -> f64 {
    let id = DMatrix::<Complex64>::identity(m.nrows(), m.ncols());
    max_abs_diff(&(m.adjoint() * m), &id)
}

#[test]
fn representation_relations() {
    for r in 2..=30 {
        let g = RRepMatrices::new(r).unwrap();
        let n = (r - 1) as usize;
        let id = DMatrix::<Complex64>::identity(n, n);
        assert!(max_abs_diff(&(&g.xi * &g.xi), &id) < 1e-10, "r={r}");
        let tx = &g.theta * &g.xi;
        assert!(max_abs_diff(&(&tx * &tx * &tx), &id) < 1e-10, "r={r}");
        assert!(unitary_defect(&g.xi) < 1e-10);
        assert!(unitary_defect(&g.theta) < 1e-10);
    }
}

#[test]
fn representation_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for r in [3, 7, 12] {
        for _ in 0..15 {
            let a = random_sl2z(&mut rng, 12);
            let b = random_sl2z(&mut rng, 12);
            let lhs = r_rep_word(&(&a * &b), r).unwrap();
            let rhs = r_rep_word(&a, r).unwrap() * r_rep_word(&b, r).unwrap();
            assert!(max_abs_diff(&lhs, &rhs) < 1e-9, "r={r} {a} {b}");
        }
    }
}

#[test]
fn sl2_data_satisfy_axioms() {
    for r in 2..=30 {
        let rep = check_axioms(&sl2_datum(r).unwrap(), 1e-10);
        assert!(rep.passed(), "r={r}: {rep:?}");
        let mirror = check_axioms(&sl2_datum(r).unwrap().mirror(), 1e-10);
        assert!(mirror.passed(), "mirror r={r}: {mirror:?}");
    }
}

#[test]
fn non_orientable_genus_one_matches_across_routes() {
    let m: SeifertData = "n;g=1;b=0;".parse().unwrap();
    for r in 3..12 {
        let d = sl2_datum(r).unwrap();
        let g = tau_generic(&d, &m, CfStyle::Minus).unwrap().value;
        let c = tau_cs11(r, &m).unwrap().value;
        assert!((g - c).norm() < 1e-9);
    }
}

#[test]
fn poincare_sphere_all_routes() {
    let m: SeifertData = "o;g=0;b=-1;2/1,3/1,5/1".parse().unwrap();
    for r in 3..=12 {
        let d = sl2_datum(r).unwrap();
        let g = tau_generic(&d, &m, CfStyle::Minus).unwrap().value;
        let cap = ComplexityCap { max_chain_total: 8, max_level: 12 };
        for other in [
            tau_cs11(r, &m).unwrap().value,
            tau_compact(r, &m).unwrap().value,
            tau_graph_sum(&d, &m, cap).unwrap().value,
            tau_section5(&d, &m).unwrap().value,
        ] {
            assert!((g - other).norm() < 1e-9, "r={r}");
        }
    }
}

#[test]
fn lens_presentations_agree() {
    for r in [4, 9] {
        for p in 1..=9i64 {
            for q in 1..p {
                if num_integer::Integer::gcd(&p, &q) != 1 {
                    continue;
                }
                let l = LensSpace::new(p, q).unwrap();
                let e = tau_lens(r, l).unwrap();
                let c = tau_cs11(r, &seifert_from_lens(l).unwrap()).unwrap().value;
                assert!(e.discrepancy() < 1e-9);
                assert!((c - e.direct.value).norm() < 1e-9, "L({p},{q}) r={r}");
            }
        }
    }
}

#[test]
fn loaded_datum_reproduces_sl2() {
    let r = 6;
    let d = sl2_datum(r).unwrap();
    let mut loaded = seifert_rt::ModularDatum::from_json_str(&d.to_json_string()).unwrap();
    loaded.eps = d.eps.clone();
    for s in ["o;g=1;b=-1;3/2,2/1", "n;g=1;b=2;5/2"] {
        let m: SeifertData = s.parse().unwrap();
        let a = tau_generic(&d, &m, CfStyle::Minus).unwrap().value;
        let b = tau_generic(&loaded, &m, CfStyle::Minus).unwrap().value;
        assert!((a - b).norm() < 1e-9, "{s}");
    }
    let mut no_eps = loaded.clone();
    no_eps.eps = vec![None; no_eps.n_labels];
    let m: SeifertData = "n;g=1;b=0;".parse().unwrap();
    assert!(matches!(tau_generic(&no_eps, &m, CfStyle::Minus), Err(seifert_rt::Error::MissingEpsilon(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gauss_matches_word(seed in any::<u64>(), r in 2u32..=20) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_sl2z(&mut rng, 30);
        let w = r_rep_word(&a, r).unwrap();
        let g = r_rep_gauss(&a, r).unwrap();
        prop_assert!(max_abs_diff(&w, &g) < 1e-8);
    }

    #[test]
    fn routes_agree(seed in any::<u64>(), r in 3u32..=9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_seifert(&mut rng);
        let d = sl2_datum(r).unwrap();
        let g = tau_generic(&d, &m, CfStyle::Minus).unwrap().value;
        let e = tau_generic(&d, &m, CfStyle::Euclidean).unwrap().value;
        let c = tau_cs11(r, &m).unwrap().value;
        let k = tau_compact(r, &m).unwrap().value;
        prop_assert!((g - e).norm() < 1e-9);
        prop_assert!((g - c).norm() < 1e-8);
        prop_assert!((g - k).norm() < 1e-8);
        if m.base() == Base::Orientable {
            let s5 = tau_section5(&d, &m).unwrap().value;
            prop_assert!((g - s5).norm() < 1e-8);
        }
    }

    #[test]
    fn orientation_reversal_conjugates(seed in any::<u64>(), r in 3u32..=9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_seifert(&mut rng);
        let d = sl2_datum(r).unwrap();
        let t = tau_generic(&d, &m, CfStyle::Minus).unwrap().value;
        let rev = tau_generic(&d, &m.reverse_orientation().unwrap(), CfStyle::Minus).unwrap().value;
        prop_assert!((rev - t.conj()).norm() < 1e-9);
    }

    #[test]
    fn equivalent_presentations_agree(seed in any::<u64>(), r in 3u32..=9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_seifert(&mut rng);
        let moved = jankins_neumann_move(&m, &mut rng);
        prop_assert!(moved.are_equivalent(&m));
        let d = sl2_datum(r).unwrap();
        let a = tau_generic(&d, &m, CfStyle::Minus).unwrap().value;
        let b = tau_generic(&d, &moved, CfStyle::Minus).unwrap().value;
        let c = tau_cs11(r, &moved).unwrap().value;
        prop_assert!((a - b).norm() < 1e-9);
        prop_assert!((a - c).norm() < 1e-9);
    }

    #[test]
    fn normalization_invariants(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = jankins_neumann_move(&random_seifert(&mut rng), &mut rng);
        let n = m.normalize();
        prop_assert_eq!(n.euler_number(), m.euler_number());
        prop_assert!(n.are_equivalent(&m));
        prop_assert_eq!(n.normalize(), n.clone());
        let rev = n.reverse_orientation().unwrap();
        prop_assert_eq!(rev.euler_number(), -n.euler_number());
        prop_assert_eq!(rev.reverse_orientation().unwrap().normalize(), n.clone());
        prop_assert_eq!(m.to_string().parse::<SeifertData>().unwrap(), m.clone());
        prop_assert_eq!(n.to_string().parse::<SeifertData>().unwrap(), n);
    }
}
