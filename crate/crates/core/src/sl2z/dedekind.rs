use super::Sl2z;
use crate::error::{Error, Result};
use crate::phase::sign;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dedekind sum `s(h, k) = Σ_{i=1}^{k−1} ((i/k)) ((hi/k))` for `k ≥ 1`.
///
/// Evaluated exactly through the reciprocity law
/// `s(h,k) + s(k,h) = −1/4 + (h² + k² + 1)/(12hk)` (coprime `h, k > 0`),
/// so the cost is logarithmic in `k`.
pub fn dedekind_sum(h: impl Into<BigInt>, k: impl Into<BigInt>) -> Result<BigRational> {
    let (h, k) = (h.into(), k.into());
    if !k.is_positive() {
        return Err(Error::InvalidModulus(k.to_string()));
    }
    Ok(dedekind_unchecked(&h, &k))
}

fn dedekind_unchecked(h: &BigInt, k: &BigInt) -> BigRational {
    let g = h.gcd(k);
    let (mut h, mut k) = if g.is_zero() { (h.clone(), k.clone()) } else { (h / &g, k / &g) };
    h = h.mod_floor(&k);
    let mut acc = BigRational::zero();
    let mut sgn = BigInt::one();
    let twelve = BigInt::from(12);
    // invariant: answer = acc + sgn · s(h, k) with 0 ≤ h < k coprime
    while !h.is_zero() {
        let term = BigRational::new(BigInt::from(-1), BigInt::from(4))
            + BigRational::new(&h * &h + &k * &k + 1u32, &twelve * &h * &k);
        acc += BigRational::from_integer(sgn.clone()) * term;
        sgn = -sgn;
        let next = k.mod_floor(&h);
        k = h;
        h = next;
    }
    acc
}

/// Rademacher Φ on `[[a, b], [c, d]]`:
/// `(a + d)/c − 12 sign(c) s(d, |c|)` for `c ≠ 0` and `b/d` for `c = 0`.
pub fn rademacher_phi(m: &Sl2z) -> BigRational {
    let (a, b, c, d) = (m.a(), m.b(), m.c(), m.d());
    if c.is_zero() {
        return BigRational::new(b.clone(), d.clone());
    }
    let s = dedekind_unchecked(d, &c.abs());
    BigRational::new(a + d, c.clone()) - BigRational::from_integer(BigInt::from(12 * sign(c))) * s
}

/// Φ as an integer; a non-integral value means corrupted input and is reported.
pub fn rademacher_phi_integer(m: &Sl2z) -> Result<BigInt> {
    let phi = rademacher_phi(m);
    if phi.is_integer() {
        Ok(phi.to_integer())
    } else {
        Err(Error::NonIntegralPhi(m.to_string()))
    }
}
