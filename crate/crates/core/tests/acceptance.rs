//! Acceptance suite: every criterion prints one PASS/FAIL line and the process
//! exits non-zero if any criterion fails.

mod common;

use common::{dedekind_cot, random_sl2z, random_word};
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use seifert_rt::invariants::{
    applicable_methods, tau, tau_cs11, tau_generic, tau_lens, verlinde_dim, ComplexityCap,
    EvalOptions, Method,
};
use seifert_rt::modular::{check_axioms, max_abs_diff, r_rep_gauss, r_rep_word, sl2_datum, RRepMatrices};
use seifert_rt::seifert::{jankins_neumann_move, random_batch, seifert_from_lens, LensSpace};
use seifert_rt::sl2z::{
    convergents, dedekind_sum, linking_matrix, rademacher_phi, rademacher_phi_integer,
    sigma_closed_form, sigma_phi_form, signature_exact,
};
use seifert_rt::{CfStyle, SeifertData};
use std::time::{Duration, Instant};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn seifert(s: &str) -> SeifertData {
    s.parse().expect("valid literal")
}

fn unit_values() -> Outcome {
    let start = Instant::now();
    let opts = EvalOptions {
        cap: Some(ComplexityCap { max_chain_total: 8, max_level: 16 }),
        ..EvalOptions::default()
    };
    let s1s2 = seifert("o;g=0;b=0;");
    let spheres = [seifert("o;g=0;b=1;"), seifert("o;g=0;b=-1;"), seifert("nn:o;g=0;1/1")];
    let mut worst = 0.0f64;
    let mut evaluations = 0;
    for r in 3..=16u32 {
        let s3_value = (2.0 / r as f64).sqrt() * (std::f64::consts::PI / r as f64).sin();
        for (m, target) in std::iter::once((&s1s2, 1.0)).chain(spheres.iter().map(|m| (m, s3_value))) {
            for method in applicable_methods(m) {
                let t = tau(method, r, m, &opts).expect("evaluation");
                worst = worst.max((t.value - target).norm());
                evaluations += 1;
            }
        }
        for (l, target) in [(LensSpace { p: 1, q: 0 }, s3_value), (LensSpace { p: 0, q: 1 }, 1.0)] {
            let e = tau_lens(r, l).expect("lens");
            worst = worst.max((e.direct.value - target).norm()).max((e.corollary.value - target).norm());
            evaluations += 2;
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst < 1e-10 && elapsed < Duration::from_secs(1),
        format!("{evaluations} evaluations, max error {worst:.2e}, {:.3} s", elapsed.as_secs_f64()),
    )
}

fn cross_method() -> Outcome {
    let start = Instant::now();
    let cap = ComplexityCap::default();
    let opts = EvalOptions { cap: Some(cap), ..EvalOptions::default() };
    let mut worst = 0.0f64;
    let mut worst_case = String::new();
    let (mut graph_runs, mut skipped) = (0, 0);
    for m in random_batch(2024, 50) {
        let chain_total: usize = m.chains(CfStyle::Minus).iter().map(|c| c.len()).sum();
        for r in 3..=10u32 {
            let mut methods = vec![Method::Generic, Method::Cs11, Method::Compact];
            if m.base() == seifert_rt::Base::Orientable {
                methods.push(Method::Section5);
                if cap.admits(chain_total, r) {
                    methods.push(Method::GraphSum);
                    graph_runs += 1;
                } else {
                    skipped += 1;
                }
            }
            let values: Vec<Complex64> =
                methods.iter().map(|&k| tau(k, r, &m, &opts).expect("evaluation").value).collect();
            for i in 0..values.len() {
                for j in 0..i {
                    let diff = (values[i] - values[j]).norm();
                    if diff > worst {
                        worst = diff;
                        worst_case = format!("{m} r={r} {} vs {}", methods[i], methods[j]);
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst < 1e-8 && elapsed < Duration::from_secs(120),
        format!(
            "max |Δ| {worst:.2e} ({worst_case}), graph sums {graph_runs}, over cap {skipped}, {:.1} s",
            elapsed.as_secs_f64()
        ),
    )
}

fn cf_invariance() -> Outcome {
    let mut worst = 0.0f64;
    for m in random_batch(2024, 50) {
        for r in 3..=10u32 {
            let d = sl2_datum(r).unwrap();
            let a = tau_generic(&d, &m, CfStyle::Minus).unwrap().value;
            let b = tau_generic(&d, &m, CfStyle::Euclidean).unwrap().value;
            worst = worst.max((a - b).norm());
        }
    }
    outcome(worst < 1e-9, format!("max |Δ| {worst:.2e}"))
}

fn lens_consistency() -> Outcome {
    let (mut worst_cs11, mut worst_routes, mut count) = (0.0f64, 0.0f64, 0);
    for p in 2..=10i64 {
        for q in 1..p {
            if p.gcd(&q) != 1 {
                continue;
            }
            let l = LensSpace::new(p, q).unwrap();
            let m = seifert_from_lens(l).unwrap();
            for r in 3..=12u32 {
                let e = tau_lens(r, l).unwrap();
                let c = tau_cs11(r, &m).unwrap().value;
                worst_cs11 = worst_cs11.max((c - e.direct.value).norm());
                worst_routes = worst_routes.max(e.discrepancy());
                count += 1;
            }
        }
    }
    outcome(
        worst_cs11 < 1e-9 && worst_routes < 1e-9,
        format!("{count} cases, cs11 vs lens {worst_cs11:.2e}, lens routes {worst_routes:.2e}"),
    )
}

fn orientation_reversal() -> Outcome {
    let mut worst = 0.0f64;
    for m in random_batch(77, 50) {
        let rev = m.reverse_orientation().unwrap();
        for r in 3..=10u32 {
            let d = sl2_datum(r).unwrap();
            let a = tau_generic(&d, &m, CfStyle::Minus).unwrap().value;
            let b = tau_generic(&d, &rev, CfStyle::Minus).unwrap().value;
            let c = tau_cs11(r, &rev).unwrap().value;
            worst = worst.max((b - a.conj()).norm()).max((c - a.conj()).norm());
        }
    }
    outcome(worst < 1e-9, format!("max |τ(−M) − conj τ(M)| {worst:.2e}"))
}

fn exact_signatures() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let mut mismatches = 0;
    let inputs: Vec<SeifertData> = random_batch(606, 100)
        .into_iter()
        .flat_map(|d| {
            let moved = jankins_neumann_move(&d, &mut rng);
            [d, moved]
        })
        .collect();
    for m in &inputs {
        for style in [CfStyle::Minus, CfStyle::Euclidean] {
            let cfs = m.chains(style);
            let tables: Vec<_> = cfs.iter().map(convergents).collect();
            let closed = sigma_closed_form(m.base(), m.euler_sign(), &tables);
            let via_phi = sigma_phi_form(m.base(), m.euler_sign(), &cfs).unwrap();
            let (exact, _) = signature_exact(&linking_matrix(m, &cfs).unwrap()).unwrap();
            if closed != exact || via_phi != exact {
                mismatches += 1;
            }
        }
    }
    let mut cocycle_failures = 0;
    let mut triples = 0;
    while triples < 200 {
        let a1 = random_sl2z(&mut rng, 30);
        let a2 = random_sl2z(&mut rng, 30);
        let a3 = &a1 * &a2;
        if num_traits::Zero::is_zero(a3.c()) {
            continue;
        }
        let s = seifert_rt::phase::sign(&(a1.c() * a2.c() * a3.c()));
        let rhs = rademacher_phi(&a1) + rademacher_phi(&a2)
            - BigRational::from_integer(num_bigint::BigInt::from(3 * s));
        if rademacher_phi(&a3) != rhs {
            cocycle_failures += 1;
        }
        triples += 1;
    }
    outcome(
        mismatches == 0 && cocycle_failures == 0,
        format!(
            "{} signature inputs x 2 styles: {mismatches} mismatches; {triples} cocycle triples: {cocycle_failures} failures",
            inputs.len()
        ),
    )
}

fn representation_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let mats: Vec<_> = (0..50).map(|_| random_sl2z(&mut rng, 30)).collect();
    let mut gauss = 0.0f64;
    for r in 2..=20u32 {
        for a in &mats {
            gauss = gauss.max(max_abs_diff(&r_rep_word(a, r).unwrap(), &r_rep_gauss(a, r).unwrap()));
        }
    }
    let mut relations = 0.0f64;
    let mut unitarity = 0.0f64;
    for r in 2..=20u32 {
        let g = RRepMatrices::new(r).unwrap();
        let n = (r - 1) as usize;
        let id = DMatrix::<Complex64>::identity(n, n);
        let tx = &g.theta * &g.xi;
        relations = relations
            .max(max_abs_diff(&(&g.xi * &g.xi), &id))
            .max(max_abs_diff(&(&tx * &tx * &tx), &id));
        unitarity = unitarity
            .max(max_abs_diff(&(g.xi.adjoint() * &g.xi), &id))
            .max(max_abs_diff(&(g.theta.adjoint() * &g.theta), &id));
    }
    outcome(
        gauss < 1e-8 && relations < 1e-10 && unitarity < 1e-10,
        format!("gauss vs word {gauss:.2e}, relations {relations:.2e}, unitarity {unitarity:.2e}"),
    )
}

fn modular_axioms() -> Outcome {
    let mut worst = 0.0f64;
    let mut failed = Vec::new();
    for r in 2..=30u32 {
        let rep = check_axioms(&sl2_datum(r).unwrap(), 1e-10);
        worst = worst.max(rep.max_residual());
        if !rep.passed() {
            failed.push(format!("r={r}: {:?}", rep.failures()));
        }
    }
    outcome(failed.is_empty(), format!("max residual {worst:.2e} {}", failed.join("; ")))
}

fn verlinde_integrality() -> Outcome {
    let mut worst = 0.0f64;
    let mut negative = 0;
    let mut torus = 0.0f64;
    let mut count = 0;
    for r in 2..=12u32 {
        let d = sl2_datum(r).unwrap();
        let n = d.n_labels;
        let mut colourings: Vec<Vec<usize>> = vec![vec![]];
        colourings.extend((0..n).map(|i| vec![i]));
        colourings.extend((0..n).flat_map(|i| (i..n).map(move |j| vec![i, j])));
        for g in 0..=3u32 {
            for c in &colourings {
                let v = verlinde_dim(&d, g, c).unwrap();
                worst = worst.max((v - v.round()).abs());
                if v.round() < 0.0 {
                    negative += 1;
                }
                count += 1;
            }
        }
        torus = torus.max((verlinde_dim(&d, 1, &[]).unwrap() - (r - 1) as f64).abs());
    }
    outcome(
        worst < 1e-6 && negative == 0 && torus < 1e-6,
        format!("{count} values, max distance to Z {worst:.2e}, negatives {negative}, |dim(T²) − (r−1)| {torus:.2e}"),
    )
}

fn equivalence_moves() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1010);
    let mut worst = 0.0f64;
    let mut inequivalent = 0;
    for m in random_batch(1010, 30) {
        let moved = jankins_neumann_move(&m, &mut rng);
        if !moved.are_equivalent(&m) {
            inequivalent += 1;
        }
        for r in 3..=10u32 {
            let d = sl2_datum(r).unwrap();
            let a = tau_generic(&d, &m, CfStyle::Minus).unwrap().value;
            let b = tau_generic(&d, &moved, CfStyle::Minus).unwrap().value;
            let c = tau_cs11(r, &moved).unwrap().value;
            worst = worst.max((a - b).norm()).max((a - c).norm());
        }
    }
    outcome(worst < 1e-9 && inequivalent == 0, format!("30 pairs, max |Δτ| {worst:.2e}"))
}

fn dedekind_phi_suite() -> Outcome {
    let mut cot = 0.0f64;
    for q in 1..=50i64 {
        for s in -q..=q {
            if s.gcd(&q) == 1 {
                let exact = dedekind_sum(s, q).unwrap().to_f64().unwrap();
                cot = cot.max((exact - dedekind_cot(s, q)).abs());
            }
        }
    }
    let zero_modulus_one = (-50..=50).all(|s| num_traits::Zero::is_zero(&dedekind_sum(s, 1).unwrap()));
    let odd = (1..=60i64)
        .flat_map(|b| (-60..=60i64).map(move |a| (a, b)))
        .all(|(a, b)| dedekind_sum(-a, b).unwrap() == -dedekind_sum(a, b).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(1111);
    let mut non_integral = 0;
    for i in 0..500 {
        let m = if i % 2 == 0 { random_sl2z(&mut rng, 1000) } else { random_word(&mut rng, 1 + i % 25) };
        if rademacher_phi_integer(&m).is_err() {
            non_integral += 1;
        }
    }
    outcome(
        cot < 1e-9 && zero_modulus_one && odd && non_integral == 0,
        format!(
            "cotangent oracle {cot:.2e}, s(s,1)=0 {zero_modulus_one}, odd {odd}, non-integral Φ {non_integral}/500"
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("unit values of S1xS2 and S3", unit_values),
        ("cross-method agreement", cross_method),
        ("continued fraction style invariance", cf_invariance),
        ("lens space consistency", lens_consistency),
        ("orientation reversal", orientation_reversal),
        ("exact signature oracle and phi cocycle", exact_signatures),
        ("representation suite", representation_suite),
        ("modular axioms", modular_axioms),
        ("verlinde integrality", verlinde_integrality),
        ("equivalence moves", equivalence_moves),
        ("dedekind and phi exact suite", dedekind_phi_suite),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.passed {
            failures += 1;
        }
        println!(
            "criterion {:>2} {} {name}: {}",
            i + 1,
            if o.passed { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
