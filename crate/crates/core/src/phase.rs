//! Roots of unity with exactly reduced arguments.
//!
//! Every oscillatory sum in the crate has phases that are rational multiples
//! of π. Reducing the rational modulo 2 before calling `sin`/`cos` keeps the
//! floating-point argument in `[0, 2π)` no matter how large the integers get.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use std::f64::consts::PI;

/// `exp(iπ · num/den)` for `den > 0`.
pub fn cis_pi(num: i128, den: i128) -> Complex64 {
    debug_assert!(den > 0);
    let r = num.rem_euclid(2 * den);
    // 2r/den in [0, 4); fold to (-1, 1] for a better-conditioned argument
    let (r, den) = reduce_pair(r, den);
    let x = if 2 * r > 2 * den { r - 2 * den } else { r };
    let theta = PI * (x as f64) / (den as f64);
    Complex64::from_polar(1.0, theta)
}

fn reduce_pair(r: i128, den: i128) -> (i128, i128) {
    let g = r.gcd(&den);
    if g > 1 {
        (r / g, den / g)
    } else {
        (r, den)
    }
}

/// `exp(iπ · q)` for an exact rational `q`.
pub fn cis_pi_rational(q: &BigRational) -> Complex64 {
    let den = q.denom().clone();
    let two_den: BigInt = &den * 2;
    let num = q.numer().mod_floor(&two_den);
    match (num.to_i128(), den.to_i128()) {
        (Some(n), Some(d)) => cis_pi(n, d),
        _ => {
            // astronomically large denominators: fall back to a float ratio
            let x = BigRational::new(num, den);
            let f = x.to_f64().unwrap_or(0.0);
            Complex64::from_polar(1.0, PI * f)
        }
    }
}

/// `sign` with `sign(0) = 0`.
pub fn sign<T: PartialOrd + Zero>(x: &T) -> i64 {
    let zero = T::zero();
    if *x > zero {
        1
    } else if *x < zero {
        -1
    } else {
        0
    }
}
