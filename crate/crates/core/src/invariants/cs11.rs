//! Closed formulas specific to sl₂: the triple Gauss sum and the compact
//! formula through the representation matrices `Ñ_i`.

use super::{result, InvariantResult, Method};
use crate::error::{Error, Result};
use crate::modular::r_rep_gauss;
use crate::phase::{cis_pi, cis_pi_rational, sign};
use crate::seifert::SeifertData;
use crate::sl2z::{dedekind_sum, rademacher_phi_integer, CfStyle, Sl2z};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

fn check_level(r: u32) -> Result<()> {
    if r < 2 {
        return Err(Error::InvalidLevel(r));
    }
    Ok(())
}

/// `e·L` with `L = lcm(α_j)`, so that `e = E/L` exactly.
fn scaled_euler(m: &SeifertData) -> Result<(i128, i128)> {
    let e = m.euler_number();
    let l = m.pairs().iter().fold(1i128, |acc, f| acc.lcm(&(f.alpha as i128)));
    let scaled = e * BigRational::from_integer(BigInt::from(l));
    debug_assert!(scaled.is_integer());
    let num = scaled
        .to_integer()
        .to_i128()
        .ok_or_else(|| Error::Unsupported("Euler number out of range".into()))?;
    Ok((num, l))
}

/// Inner sum over `μ = ±1` and `m ∈ ℤ/α` for one fibre at colour `γ`.
fn fiber_factor(r: i128, gamma: i128, alpha: i128, beta_star: i128) -> Complex64 {
    let mut acc = Complex64::zero();
    for mu in [1i128, -1] {
        for k in 0..alpha {
            // −πγ(2rk + μ)/(rα) − 2πβ*(rk² + μk)/α over the common denominator rα
            let num = -gamma * (2 * r * k + mu) - 2 * r * beta_star * (r * k * k + mu * k);
            acc += cis_pi(num, r * alpha) * mu as f64;
        }
    }
    acc
}

/// The triple Gauss-sum formula.
///
/// With `a = 2` (orientable) or `a = 1` (non-orientable), `A = Π α_j` and
/// `β_j β_j* ≡ 1 (mod α_j)`, the invariant is a prefactor carrying
/// `exp(iπ/(2r)[3(a−1)sign(e) − e − 12 Σ s(β_j, α_j)])` times
/// `Σ_γ (−1)^{γag} e^{iπeγ²/(2r)} sin(πγ/r)^{2−n−ag} Π_j f_j(γ)`.
pub fn tau_cs11(r: u32, m: &SeifertData) -> Result<InvariantResult> {
    check_level(r)?;
    let rr = r as i128;
    let a = m.base().weight() as i128;
    let g = m.genus() as i128;
    let n = m.pairs().len() as i32;
    let ag = a * g;
    let e = m.euler_number();
    let es = sign(&e) as i128;

    let mut dsum = BigRational::zero();
    for f in m.pairs() {
        dsum += dedekind_sum(f.beta, f.alpha)?;
    }
    let three_a1_es = BigRational::from_integer(BigInt::from(3 * (a - 1) * es));
    let twelve = BigRational::from_integer(BigInt::from(12));
    let phase = (three_a1_es - &e - twelve * dsum) / BigRational::from_integer(BigInt::from(2 * rr));
    let a_prod: f64 = m.alpha_product();
    let magnitude = (rr as f64).powf(ag as f64 / 2.0 - 1.0)
        / 2f64.powf(n as f64 + ag as f64 / 2.0 - 1.0)
        / a_prod.sqrt();
    let sign_g = if ag % 2 == 0 { 1.0 } else { -1.0 };
    let prefactor = cis_pi_rational(&phase)
        * cis_pi(n as i128, 2)
        * cis_pi(3 * (1 - a) * es, 4)
        * (sign_g * magnitude);

    let (e_num, l) = scaled_euler(m)?;
    let stars: Vec<(i128, i128)> =
        m.pairs().iter().map(|f| (f.alpha as i128, f.beta_inverse() as i128)).collect();
    let mut z = Complex64::zero();
    for gamma in 1..rr {
        let parity = if (gamma * ag) % 2 == 0 { 1.0 } else { -1.0 };
        let sin = cis_pi(gamma, rr).im;
        let mut term = cis_pi(e_num * gamma * gamma, 2 * rr * l) * (parity * sin.powi(2 - n - ag as i32));
        for &(alpha, bs) in &stars {
            term *= fiber_factor(rr, gamma, alpha, bs);
        }
        z += term;
    }
    let value = prefactor * z;
    Ok(result(value, Some(r), r, Method::Cs11, m.sigma(CfStyle::Minus), CfStyle::Minus, m))
}

/// The compact formula with the default completions of every fibre.
pub fn tau_compact(r: u32, m: &SeifertData) -> Result<InvariantResult> {
    tau_compact_shifted(r, m, &vec![0; m.pairs().len()])
}

/// The compact formula with `(ρ_i, σ_i)` moved by `shifts[i]·(α_i, β_i)`.
///
/// `τ = α(r) Σ_j (−1)^{jag} t^{−bj²} Π_i (Ñ_i)_{j,1} / Ξ̃_{j,1}^{n+ag−2}` with
/// `N_i = [[−β_i, −σ_i], [α_i, ρ_i]]`, `t = e^{iπ/(2r)}` and
/// `α(r) = (−1)^{ag} w^{ΣΦ(N_i) − 3(a−1)sign(e)} t^{b}`.
pub fn tau_compact_shifted(r: u32, m: &SeifertData, shifts: &[i64]) -> Result<InvariantResult> {
    check_level(r)?;
    if shifts.len() != m.pairs().len() {
        return Err(Error::ShapeError("one shift per pair is required".into()));
    }
    let rr = r as i128;
    let a = m.base().weight() as i64;
    let ag = a * m.genus() as i64;
    let n = m.pairs().len() as i32;
    let b = m.b().unwrap_or(0) as i128;
    let es = m.euler_sign();
    let nlab = (r - 1) as usize;

    let mut prod = vec![Complex64::new(1.0, 0.0); nlab];
    let mut phi_sum = BigInt::zero();
    for (f, &k) in m.pairs().iter().zip(shifts) {
        let (rho, sigma) = f.completion();
        let (rho, sigma) = (rho + k * f.alpha, sigma + k * f.beta);
        let nm = Sl2z::new(-f.beta, -sigma, f.alpha, rho)?;
        phi_sum += rademacher_phi_integer(&nm)?;
        let rep = r_rep_gauss(&nm, r)?;
        for (j, p) in prod.iter_mut().enumerate() {
            *p *= rep[(j, 0)];
        }
    }
    let w_exp = phi_sum - BigInt::from(3 * (a - 1) * es);
    let w_exp = w_exp.mod_floor(&BigInt::from(8 * rr)).to_i128().expect("reduced");
    let sign_g = if ag % 2 == 0 { 1.0 } else { -1.0 };
    let alpha_r = cis_pi(w_exp * (rr - 2), 4 * rr) * cis_pi(b, 2 * rr) * sign_g;

    let xi_scale = (2.0 / r as f64).sqrt();
    let mut sum = Complex64::zero();
    for (idx, p) in prod.iter().enumerate() {
        let j = idx as i128 + 1;
        let parity = if (j * ag as i128) % 2 == 0 { 1.0 } else { -1.0 };
        let xi_j1 = xi_scale * cis_pi(j, rr).im;
        sum += cis_pi(-b * j * j, 2 * rr) * p * (parity * xi_j1.powi(2 - n - ag as i32));
    }
    let value = alpha_r * sum;
    Ok(result(value, Some(r), r, Method::Compact, m.sigma(CfStyle::Minus), CfStyle::Minus, m))
}
