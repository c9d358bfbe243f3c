use super::Sl2z;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// How partial quotients are chosen when expanding `p/q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum CfStyle {
    /// `a = ⌊x⌋`; entries may have any sign.
    Euclidean,
    /// `a = ⌈x⌉`; every entry but the last satisfies `a ≥ 2`.
    #[default]
    Minus,
}

impl fmt::Display for CfStyle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CfStyle::Euclidean => "euclidean",
            CfStyle::Minus => "minus",
        })
    }
}

impl FromStr for CfStyle {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euclidean" => Ok(CfStyle::Euclidean),
            "minus" => Ok(CfStyle::Minus),
            other => Err(Error::Parse(format!("unknown continued fraction style '{other}'"))),
        }
    }
}

/// A tuple `(a_1, …, a_n)` read as `a_n − 1/(a_{n−1} − 1/(… − 1/a_1))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    entries: Vec<BigInt>,
}

impl ContinuedFraction {
    pub fn new(entries: Vec<BigInt>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::ShapeError("continued fraction needs at least one entry".into()));
        }
        Ok(ContinuedFraction { entries })
    }

    pub fn from_i64(entries: &[i64]) -> Result<Self> {
        Self::new(entries.iter().map(|&a| BigInt::from(a)).collect())
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entry_sum(&self) -> BigInt {
        self.entries.iter().sum()
    }

    /// Appends an entry, e.g. the trailing 0 of a lens-space chain.
    pub fn push(&mut self, a: BigInt) {
        self.entries.push(a);
    }

    /// `B^C = Θ^{a_n} Ξ ⋯ Θ^{a_1} Ξ`.
    pub fn matrix(&self) -> Sl2z {
        let xi = Sl2z::xi();
        self.entries
            .iter()
            .fold(Sl2z::identity(), |acc, a| &Sl2z::theta_pow(a.clone()) * &(&xi * &acc))
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Continued fraction of `p/q` whose convergent matrix has first column `±(p, q)`.
pub fn cf_expand(
    p: impl Into<BigInt>,
    q: impl Into<BigInt>,
    style: CfStyle,
) -> Result<ContinuedFraction> {
    let (mut p, mut q) = (p.into(), q.into());
    if q.is_zero() || !p.gcd(&q).is_one() {
        return Err(Error::InvalidFraction { p: p.to_string(), q: q.to_string() });
    }
    if q.is_negative() {
        p = -p;
        q = -q;
    }
    // outermost entry first; reversed at the end
    let mut out = Vec::new();
    loop {
        let a = match style {
            CfStyle::Minus => -((-&p).div_floor(&q)),
            CfStyle::Euclidean => p.div_floor(&q),
        };
        let rem = &a * &q - &p;
        out.push(a);
        if rem.is_zero() {
            break;
        }
        // p/q = a − q/rem; continue with q/rem, keeping the denominator positive
        let (np, nq) = if rem.is_negative() { (-q, -rem) } else { (q, rem) };
        p = np;
        q = nq;
    }
    out.reverse();
    ContinuedFraction::new(out)
}

/// The convergent matrices `B_k^C`, `k = 1..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentTable {
    matrices: Vec<Sl2z>,
}

impl ConvergentTable {
    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    /// `B_k^C` with `k` counted from 1.
    pub fn matrix(&self, k: usize) -> &Sl2z {
        &self.matrices[k - 1]
    }

    pub fn alpha(&self, k: usize) -> &BigInt {
        self.matrix(k).a()
    }

    pub fn beta(&self, k: usize) -> &BigInt {
        self.matrix(k).c()
    }

    pub fn last(&self) -> &Sl2z {
        self.matrices.last().expect("tables are never empty")
    }

    /// `Σ_{l=1}^{upto} sign(α_l β_l)`.
    pub fn sign_sum(&self, upto: usize) -> i64 {
        self.matrices[..upto]
            .iter()
            .map(|m| crate::phase::sign(&(m.a() * m.c())))
            .sum()
    }
}

pub fn convergents(cf: &ContinuedFraction) -> ConvergentTable {
    let xi = Sl2z::xi();
    let mut acc = Sl2z::identity();
    let mut matrices = Vec::with_capacity(cf.len());
    for a in cf.entries() {
        acc = &Sl2z::theta_pow(a.clone()) * &(&xi * &acc);
        matrices.push(acc.clone());
    }
    ConvergentTable { matrices }
}
