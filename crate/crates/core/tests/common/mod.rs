#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rand::Rng;
use seifert_rt::Sl2z;
use std::f64::consts::PI;

/// `s(h, k) = (1/4k) Σ_{i=1}^{k−1} cot(πi/k) cot(πhi/k)` for coprime `h, k`.
pub fn dedekind_cot(h: i64, k: i64) -> f64 {
    assert!(k >= 1 && h.gcd(&k) == 1);
    let cot = |x: f64| x.cos() / x.sin();
    (1..k)
        .map(|i| {
            let hi = (h * i).rem_euclid(k);
            cot(PI * i as f64 / k as f64) * cot(PI * hi as f64 / k as f64)
        })
        .sum::<f64>()
        / (4 * k) as f64
}

/// `Σ_{i=1}^{k−1} ((i/k)) ((hi/k))` with the sawtooth `((x))`, exactly.
pub fn dedekind_sawtooth(h: i64, k: i64) -> BigRational {
    let saw = |num: i64| -> BigRational {
        let r = num.rem_euclid(k);
        if r == 0 {
            BigRational::from_integer(0.into())
        } else {
            BigRational::new(BigInt::from(2 * r - k), BigInt::from(2 * k))
        }
    };
    (1..k).map(|i| saw(i) * saw(h * i)).sum()
}

/// Random `[[a, b], [c, d]]` with `|a|, |c| ≤ bound`, `c ≠ 0` and small `b, d`.
pub fn random_sl2z<R: Rng>(rng: &mut R, bound: i64) -> Sl2z {
    loop {
        let a = rng.gen_range(-bound..=bound);
        let c = rng.gen_range(-bound..=bound);
        if c == 0 || a.gcd(&c) != 1 {
            continue;
        }
        // a·d ≡ 1 (mod c), d chosen in the symmetric residue range
        let e = a.extended_gcd(&c);
        let mut d = (e.x * e.gcd).rem_euclid(c.abs());
        if 2 * d > c.abs() {
            d -= c.abs();
        }
        if (a * d - 1) % c != 0 {
            continue;
        }
        let b = (a * d - 1) / c;
        if b.abs() > bound || d.abs() > bound {
            continue;
        }
        return Sl2z::new(a, b, c, d).expect("determinant one");
    }
}

/// Random element with a possibly zero lower-left entry.
pub fn random_word<R: Rng>(rng: &mut R, len: usize) -> Sl2z {
    let mut m = Sl2z::identity();
    for _ in 0..len {
        let k = rng.gen_range(-4..=4i64);
        m = &(&m * &Sl2z::theta_pow(k)) * &Sl2z::xi();
    }
    m
}
