//! Evaluation routes for the invariant τ_r of Seifert manifolds.
//!
//! Every route is an independent closed formula; agreement between them is the
//! main correctness check of the crate.

mod cs11;
mod generic;
mod graph;
mod lens;
mod section5;

pub use cs11::{tau_compact, tau_compact_shifted, tau_cs11};
pub use generic::tau_generic;
pub use graph::{graph_manifold_invariant, tau_graph_sum, ComplexityCap};
pub use lens::{lens_of_seifert, tau_lens, LensEvaluation};
pub use section5::tau_section5;

use crate::error::{Error, Result};
use crate::modular::{sl2_datum, ModularDatum};
use crate::phase::cis_pi;
use crate::seifert::SeifertData;
use crate::sl2z::{CfStyle, ContinuedFraction};
use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Generic,
    Cs11,
    Compact,
    GraphSum,
    Section5,
    LensDirect,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Generic,
        Method::Cs11,
        Method::Compact,
        Method::GraphSum,
        Method::Section5,
        Method::LensDirect,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Generic => "generic",
            Method::Cs11 => "cs11",
            Method::Compact => "compact",
            Method::GraphSum => "graph_sum",
            Method::Section5 => "section5",
            Method::LensDirect => "lens_direct",
        }
    }

    /// Whether the route needs the level-`r` sl₂ datum rather than any datum.
    pub fn sl2_only(self) -> bool {
        matches!(self, Method::Cs11 | Method::Compact | Method::LensDirect)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown method '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantResult {
    pub value: Complex64,
    /// Level of the sl₂ datum; `None` for loaded data.
    pub r: Option<u32>,
    pub method: Method,
    /// Exponent of `Δ D^{-1}` used by the route.
    pub sigma_used: i64,
    pub cf_style: CfStyle,
    pub tolerance_estimate: f64,
}

/// 1e−9 up to `r = 50` and `Π α_j = 10⁴`, growing linearly beyond.
pub fn tolerance_estimate(r: u32, alpha_product: f64) -> f64 {
    1e-9 * (r as f64 / 50.0).max(1.0) * (alpha_product / 1e4).max(1.0)
}

fn effective_level(d: &ModularDatum) -> u32 {
    d.level.unwrap_or(d.n_labels as u32 + 1)
}

fn result(
    value: Complex64,
    d_level: Option<u32>,
    r_eff: u32,
    method: Method,
    sigma_used: i64,
    cf_style: CfStyle,
    m: &SeifertData,
) -> InvariantResult {
    InvariantResult {
        value,
        r: d_level,
        method,
        sigma_used,
        cf_style,
        tolerance_estimate: tolerance_estimate(r_eff, m.alpha_product()),
    }
}

/// `(Δ D^{-1})^k`, exact phase for sl₂.
pub(crate) fn anomaly_pow(d: &ModularDatum, k: i64) -> Complex64 {
    match d.level {
        Some(r) => {
            let k = if d.mirrored { -(k as i128) } else { k as i128 };
            cis_pi(3 * (2 - r as i128) * k, 4 * r as i128)
        }
        None => d.anomaly().powi(k as i32),
    }
}

/// The column `(S G^C)_{·, unit}`.
pub(crate) fn chain_column(d: &ModularDatum, c: &ContinuedFraction) -> Result<DVector<Complex64>> {
    let n = d.n_labels;
    let mut x = DVector::<Complex64>::zeros(n);
    x[d.unit] = Complex64::new(1.0, 0.0);
    for a in c.entries() {
        x = &d.s * x;
        for i in 0..n {
            x[i] *= d.twist_pow(i, a)?;
        }
    }
    Ok(&d.s * x)
}

/// Verlinde dimension `D^{2g−2} Σ_j dim(j)^{2−2g−m} Π_k S_{i_k, j}`.
pub fn verlinde_dim(d: &ModularDatum, g: u32, colors: &[usize]) -> Result<f64> {
    if let Some(&c) = colors.iter().find(|&&c| c >= d.n_labels) {
        return Err(Error::Datum(format!("colour {c} is not a label")));
    }
    let e = 2 - 2 * g as i32 - colors.len() as i32;
    let total: Complex64 = (0..d.n_labels)
        .map(|j| colors.iter().fold(Complex64::new(d.dims[j].powi(e), 0.0), |acc, &c| acc * d.s[(c, j)]))
        .sum();
    let value = total * d.rank.powi(2 * g as i32 - 2);
    if value.im.abs() > 1e-9 {
        return Err(Error::NotReal(value.im));
    }
    Ok(value.re)
}

/// Target conventions for [`convert_normalization`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// The value computed here: `τ(S³) = D^{-1}`, `τ(S¹×S²) = 1`.
    Turaev,
    /// `F = (Δ D^{-1})^{b_1} D τ`.
    Rt2F,
    /// `τ_A = D τ`.
    TwTauA,
    /// `D^{b_1 + 1} τ`.
    Le,
}

pub fn convert_normalization(
    value: &InvariantResult,
    b1: Option<u32>,
    d: &ModularDatum,
    target: Normalization,
) -> Result<Complex64> {
    let tau = value.value;
    Ok(match target {
        Normalization::Turaev => tau,
        Normalization::TwTauA => tau * d.rank,
        Normalization::Rt2F => {
            let b1 = b1.ok_or(Error::MissingBetti)?;
            anomaly_pow(d, b1 as i64) * d.rank * tau
        }
        Normalization::Le => {
            let b1 = b1.ok_or(Error::MissingBetti)?;
            tau * d.rank.powi(b1 as i32 + 1)
        }
    })
}

/// Options shared by the dispatching entry point [`tau`].
#[derive(Clone, Debug, Default)]
pub struct EvalOptions {
    pub cf_style: CfStyle,
    /// A loaded datum replacing the sl₂ datum for the datum-generic routes.
    pub datum: Option<ModularDatum>,
    pub cap: Option<ComplexityCap>,
}

/// Evaluates `τ_r(m)` by the requested route.
pub fn tau(method: Method, r: u32, m: &SeifertData, opts: &EvalOptions) -> Result<InvariantResult> {
    let owned;
    let d = match (&opts.datum, method.sl2_only()) {
        (Some(d), false) => d,
        _ => {
            owned = sl2_datum(r)?;
            &owned
        }
    };
    match method {
        Method::Generic => tau_generic(d, m, opts.cf_style),
        Method::Cs11 => tau_cs11(r, m),
        Method::Compact => tau_compact(r, m),
        Method::GraphSum => tau_graph_sum(d, m, opts.cap.unwrap_or_else(ComplexityCap::from_env)),
        Method::Section5 => tau_section5(d, m),
        Method::LensDirect => {
            let l = lens_of_seifert(m)?;
            Ok(tau_lens(r, l)?.direct)
        }
    }
}

/// Routes that can evaluate `m`: the Seifert routes always, the
/// orientable-only ones for orientable bases, the lens route for lens spaces.
pub fn applicable_methods(m: &SeifertData) -> Vec<Method> {
    let mut out = vec![Method::Generic, Method::Cs11, Method::Compact];
    if m.base() == crate::seifert::Base::Orientable {
        out.push(Method::GraphSum);
        out.push(Method::Section5);
    }
    if lens_of_seifert(m).is_ok() {
        out.push(Method::LensDirect);
    }
    out
}
