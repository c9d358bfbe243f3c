use super::{anomaly_pow, result, InvariantResult, Method};
use crate::error::{Error, Result};
use crate::modular::{g_matrix, r_rep_gauss, r_rep_word, sl2_datum};
use crate::phase::cis_pi;
use crate::seifert::{lens_from_seifert, seifert_from_lens, Base, Fiber, LensSpace, SeifertData};
use crate::sl2z::{cf_expand, convergents, rademacher_phi_integer, CfStyle, ContinuedFraction, Sl2z};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

/// Both lens-space routes at one level.
#[derive(Clone, Debug, PartialEq)]
pub struct LensEvaluation {
    pub lens: LensSpace,
    /// `w^{Φ(U)} Ũ_{1,1}` for `U = [[q, b], [p, d]]`.
    pub direct: InvariantResult,
    /// The surgery formula on the chain `(CF(−p/q), 0)`.
    pub corollary: InvariantResult,
}

impl LensEvaluation {
    pub fn discrepancy(&self) -> f64 {
        (self.direct.value - self.corollary.value).norm()
    }
}

/// `[[q, b], [p, d]] ∈ SL(2,ℤ)`.
fn completion_matrix(l: LensSpace) -> Result<Sl2z> {
    let e = (l.q as i128).extended_gcd(&(-(l.p as i128)));
    // q·x − p·y = ±1
    let s = e.gcd.signum();
    Sl2z::new(l.q, e.y * s, l.p, e.x * s)
}

pub fn tau_lens(r: u32, l: LensSpace) -> Result<LensEvaluation> {
    let d = sl2_datum(r)?;
    let as_seifert = seifert_from_lens(l)?;

    let u = completion_matrix(l)?;
    let rep = if u.c().is_zero() { r_rep_word(&u, r)? } else { r_rep_gauss(&u, r)? };
    let phi = rademacher_phi_integer(&u)?;
    let phi = phi.mod_floor(&BigInt::from(8 * r as i64)).to_i128().expect("reduced");
    let direct_value = cis_pi(phi * (r as i128 - 2), 4 * r as i128) * rep[(0, 0)];

    let mut chain = if l.q != 0 {
        cf_expand(-l.p, l.q, CfStyle::Minus)?
    } else {
        ContinuedFraction::from_i64(&[0, 0])?
    };
    chain.push(BigInt::zero());
    let t = convergents(&chain);
    let sigma = t.sign_sum(t.len() - 1);
    let g = g_matrix(&d, &chain)?;
    let corollary_value = anomaly_pow(&d, sigma) * d.rank.powi(-(chain.len() as i32)) * g[(0, 0)];

    Ok(LensEvaluation {
        lens: l,
        direct: result(direct_value, Some(r), r, Method::LensDirect, 0, CfStyle::Minus, &as_seifert),
        corollary: result(corollary_value, Some(r), r, Method::LensDirect, sigma, CfStyle::Minus, &as_seifert),
    })
}

/// The lens space presented by `m`, if any: orientable base of genus 0 with
/// at most two exceptional fibres.
pub fn lens_of_seifert(m: &SeifertData) -> Result<LensSpace> {
    let not_lens = || Error::Unsupported(format!("{m} is not presented as a lens space"));
    if m.base() != Base::Orientable || m.genus() != 0 {
        return Err(not_lens());
    }
    let n = m.normalize();
    let b = n.b().expect("normalized");
    match n.pairs() {
        [] => LensSpace::new(b, 1),
        [f] => LensSpace::new(f.beta + b * f.alpha, f.alpha),
        [f1, f2] => lens_from_seifert(Fiber::new(f1.alpha, f1.beta + b * f1.alpha)?, *f2),
        _ => Err(not_lens()),
    }
}
