use super::{anomaly_pow, chain_column, effective_level, result, InvariantResult, Method};
use crate::error::{Error, Result};
use crate::modular::ModularDatum;
use crate::phase::sign;
use crate::seifert::{Base, SeifertData};
use crate::sl2z::{convergents, rademacher_phi, CfStyle, ContinuedFraction};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

/// Sign correction `(Σ_l a_l − Φ(B^C))/3` of one chain.
fn chain_correction(c: &ContinuedFraction) -> Result<i64> {
    let t = convergents(c);
    let x = (BigRational::from_integer(c.entry_sum()) - rademacher_phi(t.last()))
        / BigRational::from_integer(BigInt::from(3));
    if !x.is_integer() {
        return Err(Error::NonIntegralPhi(c.to_string()));
    }
    i64::try_from(x.to_integer()).map_err(|_| Error::Unsupported("correction out of range".into()))
}

/// τ through the rational surgery formula on `Σ_g × S¹`.
///
/// Each fibre contributes a chain with correction `c_i`. For `b ≠ 0` an extra
/// chain `(−b, 0)` with `c = −sign(b)` is appended and
/// `μ = n − 1 − sign(b) sign(e)`; for `b = 0`, `μ = n − 1`. Then
/// `τ = (ΔD⁻¹)^{μ + Σc} D^{2g−2−Σm} Σ_j dim(j)^{2−2g−N} Π (S G^{C_i})_{j,0}`
/// over the `N` chains. Without chains this is the Verlinde formula.
pub fn tau_section5(d: &ModularDatum, m: &SeifertData) -> Result<InvariantResult> {
    if m.base() != Base::Orientable {
        return Err(Error::Unsupported("the rational surgery route needs an orientable base".into()));
    }
    let m = &m.normalize();
    let b = m.b().expect("normalized");
    let g = m.genus() as i32;
    let n = m.pairs().len() as i64;
    let mut chains = m.chains(CfStyle::Minus);
    let mut corrections = chains.iter().map(chain_correction).collect::<Result<Vec<_>>>()?;
    let mu = if b != 0 {
        chains.push(ContinuedFraction::from_i64(&[-b, 0])?);
        corrections.push(-b.signum());
        n - 1 - b.signum() * sign(&m.euler_number())
    } else {
        n - 1
    };
    let exponent = if chains.is_empty() { 0 } else { mu + corrections.iter().sum::<i64>() };
    let total_len: i32 = chains.iter().map(|c| c.len() as i32).sum();
    let count = chains.len() as i32;

    let mut prod = vec![Complex64::new(1.0, 0.0); d.n_labels];
    for c in &chains {
        let col = chain_column(d, c)?;
        for (p, x) in prod.iter_mut().zip(col.iter()) {
            *p *= x;
        }
    }
    let sum: Complex64 =
        prod.iter().zip(&d.dims).map(|(p, x)| p * x.powi(2 - 2 * g - count)).sum();
    let value = anomaly_pow(d, exponent) * d.rank.powi(2 * g - 2 - total_len) * sum;
    Ok(result(value, d.level, effective_level(d), Method::Section5, exponent, CfStyle::Minus, m))
}
