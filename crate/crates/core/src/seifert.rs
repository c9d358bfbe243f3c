//! Seifert invariants `(ε; g | b; (α_1, β_1), …, (α_n, β_n))` and lens spaces.
//!
//! Two presentations are supported. The normalized one carries the integer
//! `b` and satisfies `0 < β_j < α_j`; the non-normalized one has no `b` and
//! arbitrary coprime pairs with `α_j ≥ 1`.

use crate::error::{Error, Result};
use crate::phase::sign;
use crate::sl2z::{cf_expand, convergents, sigma_closed_form, CfStyle, ContinuedFraction};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Base {
    #[serde(rename = "o")]
    Orientable,
    #[serde(rename = "n")]
    NonOrientable,
}

impl Base {
    /// 2 for an orientable base, 1 otherwise.
    pub fn weight(self) -> u32 {
        match self {
            Base::Orientable => 2,
            Base::NonOrientable => 1,
        }
    }

    pub fn letter(self) -> &'static str {
        match self {
            Base::Orientable => "o",
            Base::NonOrientable => "n",
        }
    }
}

/// An exceptional fibre `(α, β)`: `α ≥ 1`, `gcd(α, β) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fiber {
    pub alpha: i64,
    pub beta: i64,
}

impl Fiber {
    pub fn new(alpha: i64, beta: i64) -> Result<Self> {
        if alpha == 0 && beta.abs() == 1 {
            return Err(Error::UnsupportedGeneralizedFibration(alpha, beta));
        }
        if alpha < 1 {
            return Err(Error::InvalidSeifert(format!("pair ({alpha}, {beta}) needs alpha >= 1")));
        }
        if alpha.gcd(&beta) != 1 {
            return Err(Error::InvalidSeifert(format!("pair ({alpha}, {beta}) is not coprime")));
        }
        Ok(Fiber { alpha, beta })
    }

    pub fn ratio(&self) -> BigRational {
        BigRational::new(self.beta.into(), self.alpha.into())
    }

    /// `β*` with `β β* ≡ 1 (mod α)` in `[0, α)`; 0 when `α = 1`.
    pub fn beta_inverse(&self) -> i64 {
        if self.alpha == 1 {
            return 0;
        }
        let e = (self.beta as i128).extended_gcd(&(self.alpha as i128));
        e.x.rem_euclid(self.alpha as i128) as i64
    }

    /// `(ρ, σ)` with `α σ − β ρ = 1` and `0 ≤ ρ < α`.
    pub fn completion(&self) -> (i64, i64) {
        let (a, b) = (self.alpha as i128, self.beta as i128);
        let rho = if a == 1 { 0 } else { (-(self.beta_inverse() as i128)).rem_euclid(a) };
        let sigma = (1 + b * rho) / a;
        debug_assert_eq!(a * sigma - b * rho, 1);
        (rho as i64, sigma as i64)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SeifertJson", into = "SeifertJson")]
pub struct SeifertData {
    base: Base,
    genus: u32,
    b: Option<i64>,
    pairs: Vec<Fiber>,
}

impl SeifertData {
    fn check_base(base: Base, genus: u32) -> Result<()> {
        if base == Base::NonOrientable && genus == 0 {
            return Err(Error::InvalidSeifert("non-orientable base needs genus >= 1".into()));
        }
        Ok(())
    }

    /// Normalized invariants; every pair must satisfy `0 < β < α`.
    pub fn normalized(base: Base, genus: u32, b: i64, pairs: Vec<Fiber>) -> Result<Self> {
        Self::check_base(base, genus)?;
        if let Some(f) = pairs.iter().find(|f| !(0 < f.beta && f.beta < f.alpha)) {
            return Err(Error::InvalidSeifert(format!(
                "normalized pair ({}, {}) must satisfy 0 < beta < alpha",
                f.alpha, f.beta
            )));
        }
        Ok(SeifertData { base, genus, b: Some(b), pairs })
    }

    pub fn unnormalized(base: Base, genus: u32, pairs: Vec<Fiber>) -> Result<Self> {
        Self::check_base(base, genus)?;
        Ok(SeifertData { base, genus, b: None, pairs })
    }

    /// Convenience constructor from integer tuples.
    pub fn from_pairs(base: Base, genus: u32, b: Option<i64>, pairs: &[(i64, i64)]) -> Result<Self> {
        let fibers = pairs.iter().map(|&(a, b)| Fiber::new(a, b)).collect::<Result<Vec<_>>>()?;
        match b {
            Some(b) => Self::normalized(base, genus, b, fibers),
            None => Self::unnormalized(base, genus, fibers),
        }
    }

    pub fn base(&self) -> Base {
        self.base
    }
    pub fn genus(&self) -> u32 {
        self.genus
    }
    pub fn b(&self) -> Option<i64> {
        self.b
    }
    pub fn pairs(&self) -> &[Fiber] {
        &self.pairs
    }
    pub fn is_normalized(&self) -> bool {
        self.b.is_some()
    }

    /// `e = −(b + Σ β_j/α_j)`, with `b = 0` for non-normalized data.
    pub fn euler_number(&self) -> BigRational {
        let s = self.pairs.iter().fold(BigRational::from_integer(self.b.unwrap_or(0).into()), |acc, f| {
            acc + f.ratio()
        });
        -s
    }

    pub fn euler_sign(&self) -> i64 {
        sign(&self.euler_number())
    }

    /// Moves all integer parts into `b`; pairs with `α = 1` disappear.
    pub fn normalize(&self) -> SeifertData {
        let mut b = self.b.unwrap_or(0);
        let mut pairs = Vec::with_capacity(self.pairs.len());
        for f in &self.pairs {
            b += Integer::div_floor(&f.beta, &f.alpha);
            let r = f.beta.mod_floor(&f.alpha);
            if r != 0 {
                pairs.push(Fiber { alpha: f.alpha, beta: r });
            }
        }
        SeifertData { base: self.base, genus: self.genus, b: Some(b), pairs }
    }

    /// Same manifold with the explicit `b` turned into a pair `(1, b)`.
    pub fn to_unnormalized(&self) -> SeifertData {
        let mut pairs = self.pairs.clone();
        if let Some(b) = self.b {
            if b != 0 {
                pairs.push(Fiber { alpha: 1, beta: b });
            }
        }
        SeifertData { base: self.base, genus: self.genus, b: None, pairs }
    }

    /// Same base, genus and Euler number, and the same multiset of
    /// non-integral `β/α mod 1`.
    pub fn are_equivalent(&self, other: &SeifertData) -> bool {
        let canon = |d: &SeifertData| {
            let n = d.normalize();
            let mut p = n.pairs.clone();
            p.sort();
            (n.base, n.genus, n.b, p)
        };
        canon(self) == canon(other)
    }

    /// `(ε; g | −n−b; (α_j, α_j − β_j))`.
    pub fn reverse_orientation(&self) -> Result<SeifertData> {
        let b = self.b.ok_or(Error::NormalizeFirst)?;
        let n = self.pairs.len() as i64;
        let pairs = self.pairs.iter().map(|f| Fiber { alpha: f.alpha, beta: f.alpha - f.beta }).collect();
        Ok(SeifertData { base: self.base, genus: self.genus, b: Some(-n - b), pairs })
    }

    /// `b_1 = 2g + δ_{e,0}` for an orientable base.
    pub fn first_betti(&self) -> Result<u32> {
        match self.base {
            Base::Orientable => Ok(2 * self.genus + u32::from(self.euler_number().is_zero())),
            Base::NonOrientable => {
                Err(Error::Unsupported("first Betti number for a non-orientable base".into()))
            }
        }
    }

    /// One surgery chain per pair: the expansion of `α/β`, or `(0, 0)` when `β = 0`.
    pub fn chains(&self, style: CfStyle) -> Vec<ContinuedFraction> {
        self.pairs
            .iter()
            .map(|f| {
                if f.beta == 0 {
                    ContinuedFraction::from_i64(&[0, 0]).expect("non-empty")
                } else {
                    cf_expand(f.alpha, f.beta, style).expect("pairs are coprime with beta != 0")
                }
            })
            .collect()
    }

    /// Signature of the linking matrix built from `chains(style)`.
    pub fn sigma(&self, style: CfStyle) -> i64 {
        let tables: Vec<_> = self.chains(style).iter().map(convergents).collect();
        sigma_closed_form(self.base, self.euler_sign(), &tables)
    }

    pub fn alpha_product(&self) -> f64 {
        self.pairs.iter().map(|f| f.alpha as f64).product()
    }
}

impl fmt::Display for SeifertData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self.pairs.iter().map(|p| format!("{}/{}", p.alpha, p.beta)).collect();
        match self.b {
            Some(b) => write!(f, "{};g={};b={};{}", self.base.letter(), self.genus, b, pairs.join(",")),
            None => write!(f, "nn:{};g={};{}", self.base.letter(), self.genus, pairs.join(",")),
        }
    }
}

impl FromStr for SeifertData {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (normalized, body) = match s.strip_prefix("nn:") {
            Some(rest) => (false, rest),
            None => (true, s),
        };
        let fields: Vec<&str> = body.split(';').map(str::trim).collect();
        let base = match fields.first().copied() {
            Some("o") => Base::Orientable,
            Some("n") => Base::NonOrientable,
            other => return Err(Error::Parse(format!("base must be 'o' or 'n', got {other:?}"))),
        };
        let genus = fields
            .get(1)
            .and_then(|f| f.strip_prefix("g="))
            .ok_or_else(|| Error::Parse("missing 'g=' field".into()))?
            .parse::<u32>()
            .map_err(|e| Error::Parse(format!("genus: {e}")))?;
        let (b, pair_field) = if normalized {
            let b = fields
                .get(2)
                .and_then(|f| f.strip_prefix("b="))
                .ok_or_else(|| Error::Parse("missing 'b=' field (use the 'nn:' prefix for non-normalized data)".into()))?
                .parse::<i64>()
                .map_err(|e| Error::Parse(format!("b: {e}")))?;
            (Some(b), fields.get(3).copied())
        } else {
            (None, fields.get(2).copied())
        };
        let max_fields = if normalized { 4 } else { 3 };
        if fields.len() > max_fields {
            return Err(Error::Parse(format!("too many ';'-separated fields in '{s}'")));
        }
        let mut pairs = Vec::new();
        for item in pair_field.unwrap_or("").split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (a, b) = item
                .split_once('/')
                .ok_or_else(|| Error::Parse(format!("pair '{item}' must look like alpha/beta")))?;
            let a = a.trim().parse::<i64>().map_err(|e| Error::Parse(format!("pair '{item}': {e}")))?;
            let b = b.trim().parse::<i64>().map_err(|e| Error::Parse(format!("pair '{item}': {e}")))?;
            pairs.push(Fiber::new(a, b)?);
        }
        match b {
            Some(b) => SeifertData::normalized(base, genus, b, pairs),
            None => SeifertData::unnormalized(base, genus, pairs),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SeifertJson {
    base: Base,
    genus: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<i64>,
    pairs: Vec<[i64; 2]>,
    normalized: bool,
}

impl From<SeifertData> for SeifertJson {
    fn from(d: SeifertData) -> Self {
        SeifertJson {
            base: d.base,
            genus: d.genus,
            b: d.b,
            pairs: d.pairs.iter().map(|f| [f.alpha, f.beta]).collect(),
            normalized: d.b.is_some(),
        }
    }
}

impl TryFrom<SeifertJson> for SeifertData {
    type Error = Error;
    fn try_from(j: SeifertJson) -> Result<Self> {
        let pairs: Vec<(i64, i64)> = j.pairs.iter().map(|p| (p[0], p[1])).collect();
        if j.normalized != j.b.is_some() {
            return Err(Error::Parse("'normalized' must be true exactly when 'b' is present".into()));
        }
        SeifertData::from_pairs(j.base, j.genus, j.b, &pairs)
    }
}

/// The lens space `L(p, q)`, `gcd(p, q) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LensSpace {
    pub p: i64,
    pub q: i64,
}

impl LensSpace {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p.gcd(&q) != 1 {
            return Err(Error::InvalidFraction { p: p.to_string(), q: q.to_string() });
        }
        Ok(LensSpace { p, q })
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{})", self.p, self.q)
    }
}

/// `{o; 0; (α_1, β_1), (α_2, β_2)}` as `L(p, q)` with
/// `p = α_1β_2 + α_2β_1`, `q = α_1β_2′ + α_2′β_1`, `α_2β_2′ − β_2α_2′ = 1`
/// and the smallest `α_2′ ≥ 0`.
pub fn lens_from_seifert(f1: Fiber, f2: Fiber) -> Result<LensSpace> {
    let (a1, b1, a2, b2) = (f1.alpha as i128, f1.beta as i128, f2.alpha as i128, f2.beta as i128);
    let a2p = if a2 == 1 { 0 } else { (-(f2.beta_inverse() as i128)).rem_euclid(a2) };
    let b2p = (1 + b2 * a2p) / a2;
    debug_assert_eq!(a2 * b2p - b2 * a2p, 1);
    let p = a1 * b2 + a2 * b1;
    let q = a1 * b2p + a2p * b1;
    let narrow = |x: i128| i64::try_from(x).map_err(|_| Error::Unsupported("lens parameters overflow".into()));
    LensSpace::new(narrow(p)?, narrow(q)?)
}

/// `L(p, q) = {o; 0; (|q|, sign(q) p)}`; `L(±1, 0)` is the 3-sphere `{o; 0; (1, 1)}`.
pub fn seifert_from_lens(l: LensSpace) -> Result<SeifertData> {
    let pair = if l.q == 0 { Fiber::new(1, 1)? } else { Fiber::new(l.q.abs(), l.q.signum() * l.p)? };
    SeifertData::unnormalized(Base::Orientable, 0, vec![pair])
}

/// Random normalized data: `g ≤ 2`, `n ≤ 3`, `α ≤ 7`, `|b| ≤ 3`, both bases.
pub fn random_seifert<R: Rng + ?Sized>(rng: &mut R) -> SeifertData {
    let base = if rng.gen_bool(0.5) { Base::Orientable } else { Base::NonOrientable };
    let genus = match base {
        Base::Orientable => rng.gen_range(0..=2),
        Base::NonOrientable => rng.gen_range(1..=2),
    };
    let n = rng.gen_range(0..=3);
    let pairs = (0..n)
        .map(|_| {
            let alpha = rng.gen_range(2..=7i64);
            let choices: Vec<i64> = (1..alpha).filter(|x| x.gcd(&alpha) == 1).collect();
            Fiber { alpha, beta: *choices.choose(rng).expect("alpha >= 2") }
        })
        .collect();
    let b = rng.gen_range(-3..=3);
    SeifertData { base, genus, b: Some(b), pairs }
}

/// `count` random manifolds from a fixed seed.
pub fn random_batch(seed: u64, count: usize) -> Vec<SeifertData> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_seifert(&mut rng)).collect()
}

/// A random non-normalized presentation of the same manifold, produced by
/// shifting integers between pairs, inserting `(1, k)` pairs and permuting.
pub fn jankins_neumann_move<R: Rng + ?Sized>(d: &SeifertData, rng: &mut R) -> SeifertData {
    let mut pairs = d.to_unnormalized().pairs;
    for _ in 0..rng.gen_range(1..=3) {
        match rng.gen_range(0..3) {
            0 if !pairs.is_empty() => {
                // β_i ↦ β_i + kα_i balanced by a new pair (1, −k)
                let i = rng.gen_range(0..pairs.len());
                let k = rng.gen_range(-2..=2i64);
                pairs[i].beta += k * pairs[i].alpha;
                pairs.push(Fiber { alpha: 1, beta: -k });
            }
            1 if pairs.len() >= 2 => {
                let i = rng.gen_range(0..pairs.len());
                let j = (i + rng.gen_range(1..pairs.len())) % pairs.len();
                let k = rng.gen_range(-2..=2i64);
                pairs[i].beta += k * pairs[i].alpha;
                pairs[j].beta -= k * pairs[j].alpha;
            }
            _ => {
                let k = rng.gen_range(-2..=2i64);
                pairs.push(Fiber { alpha: 1, beta: k });
                pairs.push(Fiber { alpha: 1, beta: -k });
            }
        }
    }
    pairs.shuffle(rng);
    SeifertData { base: d.base, genus: d.genus, b: None, pairs }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poincare() -> SeifertData {
        SeifertData::from_pairs(Base::Orientable, 0, Some(-1), &[(2, 1), (3, 1), (5, 1)]).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn fiber_validation() {
        assert_eq!(Fiber::new(0, 1), Err(Error::UnsupportedGeneralizedFibration(0, 1)));
        assert_eq!(Fiber::new(0, -1), Err(Error::UnsupportedGeneralizedFibration(0, -1)));
        assert!(matches!(Fiber::new(4, 2), Err(Error::InvalidSeifert(_))));
        assert!(matches!(Fiber::new(-3, 1), Err(Error::InvalidSeifert(_))));
        assert!(Fiber::new(1, 0).is_ok());
    }

    #[test]
    fn normalize_examples() {
        let d = SeifertData::from_pairs(Base::Orientable, 3, None, &[(1, 5)]).unwrap();
        assert_eq!(d.normalize(), SeifertData::from_pairs(Base::Orientable, 3, Some(5), &[]).unwrap());
        let d = SeifertData::from_pairs(Base::Orientable, 0, None, &[(3, 4)]).unwrap();
        assert_eq!(d.normalize(), SeifertData::from_pairs(Base::Orientable, 0, Some(1), &[(3, 1)]).unwrap());
        assert_eq!(poincare().normalize(), poincare());
    }

    #[test]
    fn equivalence() {
        let a = SeifertData::from_pairs(Base::Orientable, 0, None, &[(2, 1), (1, 1)]).unwrap();
        let b = SeifertData::from_pairs(Base::Orientable, 0, None, &[(2, 3)]).unwrap();
        assert!(a.are_equivalent(&b));
        let c = SeifertData::from_pairs(Base::Orientable, 0, None, &[(2, 1)]).unwrap();
        assert!(!a.are_equivalent(&c));
        let p = SeifertData::from_pairs(Base::Orientable, 0, Some(-1), &[(5, 1), (2, 1), (3, 1)]).unwrap();
        assert!(p.are_equivalent(&poincare()));
    }

    #[test]
    fn orientation_reversal() {
        let r = poincare().reverse_orientation().unwrap();
        assert_eq!(r, SeifertData::from_pairs(Base::Orientable, 0, Some(-2), &[(2, 1), (3, 2), (5, 4)]).unwrap());
        assert_eq!(r.reverse_orientation().unwrap(), poincare());
        assert_eq!(r.euler_number(), -poincare().euler_number());
        let nn = poincare().to_unnormalized();
        assert_eq!(nn.reverse_orientation(), Err(Error::NormalizeFirst));
    }

    #[test]
    fn euler_numbers() {
        assert_eq!(poincare().euler_number(), q(-1, 30));
        let d = SeifertData::from_pairs(Base::Orientable, 1, Some(4), &[]).unwrap();
        assert_eq!(d.euler_number(), q(-4, 1));
        let d = SeifertData::from_pairs(Base::NonOrientable, 1, None, &[(3, 5), (2, -1)]).unwrap();
        assert_eq!(d.euler_number(), q(-7, 6));
    }

    #[test]
    fn betti_numbers() {
        let d = SeifertData::from_pairs(Base::Orientable, 2, Some(0), &[]).unwrap();
        assert_eq!(d.first_betti().unwrap(), 5);
        let d = SeifertData::from_pairs(Base::Orientable, 2, Some(1), &[]).unwrap();
        assert_eq!(d.first_betti().unwrap(), 4);
        assert_eq!(poincare().first_betti().unwrap(), 0);
        let d = SeifertData::from_pairs(Base::NonOrientable, 1, Some(0), &[]).unwrap();
        assert!(matches!(d.first_betti(), Err(Error::Unsupported(_))));
    }

    #[test]
    fn lens_conversions() {
        let l = lens_from_seifert(Fiber::new(2, 1).unwrap(), Fiber::new(3, 1).unwrap()).unwrap();
        assert_eq!(l, LensSpace { p: 5, q: 4 });
        let d = seifert_from_lens(LensSpace::new(7, 1).unwrap()).unwrap();
        assert_eq!(d.normalize(), SeifertData::from_pairs(Base::Orientable, 0, Some(7), &[]).unwrap());
        let s3 = seifert_from_lens(LensSpace::new(1, 0).unwrap()).unwrap();
        assert_eq!(s3.euler_number(), q(-1, 1));
    }

    #[test]
    fn text_round_trip() {
        for s in ["o;g=2;b=-1;3/1,5/2", "n;g=1;b=0;", "nn:o;g=0;2/1,1/1", "nn:n;g=2;"] {
            let d: SeifertData = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
        assert!(matches!("o;g=0;b=0;3/0".parse::<SeifertData>(), Err(Error::InvalidSeifert(_))));
        assert!(matches!("o;g=0;b=0;0/1".parse::<SeifertData>(), Err(Error::UnsupportedGeneralizedFibration(0, 1))));
        assert!(matches!("n;g=0;b=0;".parse::<SeifertData>(), Err(Error::InvalidSeifert(_))));
        assert!(matches!("x;g=0;b=0;".parse::<SeifertData>(), Err(Error::Parse(_))));
        assert!(matches!("o;g=0;b=0;3/4".parse::<SeifertData>(), Err(Error::InvalidSeifert(_))));
    }

    #[test]
    fn json_round_trip() {
        let d = poincare();
        let j = serde_json::to_string(&d).unwrap();
        assert_eq!(j, r#"{"base":"o","genus":0,"b":-1,"pairs":[[2,1],[3,1],[5,1]],"normalized":true}"#);
        assert_eq!(serde_json::from_str::<SeifertData>(&j).unwrap(), d);
        let nn = d.to_unnormalized();
        let j = serde_json::to_string(&nn).unwrap();
        assert_eq!(serde_json::from_str::<SeifertData>(&j).unwrap(), nn);
    }

    #[test]
    fn completions() {
        for (a, b) in [(1, 0), (1, 5), (2, 1), (7, 3), (5, -2), (4, 9)] {
            let f = Fiber::new(a, b).unwrap();
            let (rho, sigma) = f.completion();
            assert_eq!(a * sigma - b * rho, 1);
            assert_eq!((b * f.beta_inverse()).rem_euclid(a), if a == 1 { 0 } else { 1 });
        }
    }

    #[test]
    fn moves_preserve_class() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in random_batch(5, 40) {
            let m = jankins_neumann_move(&d, &mut rng);
            assert!(m.are_equivalent(&d), "{d} vs {m}");
            assert_eq!(m.euler_number(), d.euler_number());
        }
    }
}
