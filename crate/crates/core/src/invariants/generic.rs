use super::{anomaly_pow, chain_column, effective_level, result, InvariantResult, Method};
use crate::error::Result;
use crate::modular::{kappa, ModularDatum};
use crate::seifert::{Base, SeifertData};
use crate::sl2z::CfStyle;
use num_bigint::BigInt;
use num_complex::Complex64;

/// The surgery formula for an arbitrary modular datum.
///
/// Orientable base:
/// `(ΔD⁻¹)^σ D^{2g−2−Σm} Σ_j v_j^{−b} dim(j)^{2−n−2g} Π_i (S G^{C_i})_{j,0}`.
/// Non-orientable base, with the cross-cap factor written through κ:
/// `(ΔD⁻¹)^σ D^{−g−2−Σm} Σ_j v_j^{−b−2g} dim(j)^{2−n} κ(j)^g Π_i (S G^{C_i})_{j,0}`.
/// For non-normalized data `b = 0`.
pub fn tau_generic(d: &ModularDatum, m: &SeifertData, style: CfStyle) -> Result<InvariantResult> {
    let chains = m.chains(style);
    let sigma = m.sigma(style);
    let g = m.genus() as i32;
    let n = m.pairs().len() as i32;
    let total_len: i32 = chains.iter().map(|c| c.len() as i32).sum();
    let b = m.b().unwrap_or(0);

    let mut prod = vec![Complex64::new(1.0, 0.0); d.n_labels];
    for c in &chains {
        let col = chain_column(d, c)?;
        for (p, x) in prod.iter_mut().zip(col.iter()) {
            *p *= x;
        }
    }

    let mut sum = Complex64::new(0.0, 0.0);
    let value = match m.base() {
        Base::Orientable => {
            let twist = BigInt::from(-b);
            for (j, p) in prod.iter().enumerate() {
                sum += d.twist_pow(j, &twist)? * d.dims[j].powi(2 - n - 2 * g) * p;
            }
            anomaly_pow(d, sigma) * d.rank.powi(2 * g - 2 - total_len) * sum
        }
        Base::NonOrientable => {
            let twist = BigInt::from(-b - 2 * g as i64);
            for (j, p) in prod.iter().enumerate() {
                let k = kappa(d, j)?;
                if k == Complex64::new(0.0, 0.0) {
                    continue;
                }
                sum += d.twist_pow(j, &twist)? * d.dims[j].powi(2 - n) * k.powi(g) * p;
            }
            anomaly_pow(d, sigma) * d.rank.powi(-g - 2 - total_len) * sum
        }
    };
    Ok(result(value, d.level, effective_level(d), Method::Generic, sigma, style, m))
}
