//! Exact integer layer: SL(2,ℤ), continued fractions, Dedekind sums,
//! the Rademacher Φ function and signatures of Seifert linking matrices.

mod cf;
mod dedekind;
mod signature;

pub use cf::{cf_expand, convergents, CfStyle, ContinuedFraction, ConvergentTable};
pub use dedekind::{dedekind_sum, rademacher_phi, rademacher_phi_integer};
pub use signature::{
    linking_matrix, sigma_closed_form, sigma_phi_form, signature_exact, LinkingMatrix,
};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Mul, Neg};

/// An integer matrix `[[a, b], [c, d]]` with `ad − bc = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sl2z {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl Sl2z {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        let (a, b, c, d) = (a.into(), b.into(), c.into(), d.into());
        if &a * &d - &b * &c != BigInt::one() {
            return Err(Error::NotUnimodular);
        }
        Ok(Sl2z { a, b, c, d })
    }

    fn raw(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        debug_assert!(&a * &d - &b * &c == BigInt::one());
        Sl2z { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::raw(BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one())
    }

    /// Ξ = [[0, −1], [1, 0]].
    pub fn xi() -> Self {
        Self::raw(BigInt::zero(), -BigInt::one(), BigInt::one(), BigInt::zero())
    }

    /// Θ^k = [[1, k], [0, 1]].
    pub fn theta_pow(k: impl Into<BigInt>) -> Self {
        Self::raw(BigInt::one(), k.into(), BigInt::zero(), BigInt::one())
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }
    pub fn b(&self) -> &BigInt {
        &self.b
    }
    pub fn c(&self) -> &BigInt {
        &self.c
    }
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn inverse(&self) -> Self {
        Self::raw(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    pub fn first_column(&self) -> (&BigInt, &BigInt) {
        (&self.a, &self.c)
    }

    /// Equality in PSL(2,ℤ).
    pub fn eq_projective(&self, other: &Sl2z) -> bool {
        self == other || *self == -other.clone()
    }
}

impl Mul for &Sl2z {
    type Output = Sl2z;
    fn mul(self, o: &Sl2z) -> Sl2z {
        Sl2z::raw(
            &self.a * &o.a + &self.b * &o.c,
            &self.a * &o.b + &self.b * &o.d,
            &self.c * &o.a + &self.d * &o.c,
            &self.c * &o.b + &self.d * &o.d,
        )
    }
}

impl Mul for Sl2z {
    type Output = Sl2z;
    fn mul(self, o: Sl2z) -> Sl2z {
        &self * &o
    }
}

impl Neg for Sl2z {
    type Output = Sl2z;
    fn neg(self) -> Sl2z {
        Sl2z::raw(-self.a, -self.b, -self.c, -self.d)
    }
}

impl fmt::Display for Sl2z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}
