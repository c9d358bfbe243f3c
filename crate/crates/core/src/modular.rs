//! Numeric modular data and the PSL(2,ℤ) representation of sl₂ at level r − 2.
//!
//! Labels are indices `0..n_labels`. For [`sl2_datum`] index `i` stands for
//! the colour `j = i + 1 ∈ {1, …, r − 1}`, so index 0 is the unit object.

use crate::error::{Error, Result};
use crate::phase::{cis_pi, sign};
use crate::sl2z::{cf_expand, rademacher_phi_integer, CfStyle, ContinuedFraction, Sl2z};
use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq)]
pub struct ModularDatum {
    pub n_labels: usize,
    pub s: DMatrix<Complex64>,
    pub v: Vec<Complex64>,
    pub dims: Vec<f64>,
    pub rank: f64,
    pub delta: Complex64,
    pub dual: Vec<usize>,
    pub eps: Vec<Option<i8>>,
    pub unit: usize,
    /// `Some(r)` for the sl₂ datum at level `r − 2`.
    pub level: Option<u32>,
    /// Set on the mirror of a level datum, whose twists are `v_j^{-1}`.
    pub mirrored: bool,
}

impl ModularDatum {
    /// Assembles a datum; `Δ = Σ v_i^{-1} dim_i²` is derived.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        s: DMatrix<Complex64>,
        v: Vec<Complex64>,
        dims: Vec<f64>,
        rank: f64,
        dual: Vec<usize>,
        eps: Vec<Option<i8>>,
    ) -> Result<Self> {
        let n = v.len();
        if n == 0 {
            return Err(Error::Datum("at least one label is required".into()));
        }
        if s.nrows() != n || s.ncols() != n || dims.len() != n || dual.len() != n || eps.len() != n {
            return Err(Error::Datum(format!("inconsistent sizes for {n} labels")));
        }
        if dual.iter().any(|&j| j >= n) || (0..n).any(|i| dual[dual[i]] != i) {
            return Err(Error::Datum("dual must be an involution on the labels".into()));
        }
        if eps.iter().flatten().any(|&e| e != 1 && e != -1) {
            return Err(Error::Datum("eps entries must be +1, -1 or null".into()));
        }
        if !(rank > 0.0) {
            return Err(Error::Datum("rank must be positive".into()));
        }
        let delta = delta_of(&v, &dims);
        Ok(ModularDatum { n_labels: n, s, v, dims, rank, delta, dual, eps, unit: 0, level: None, mirrored: false })
    }

    /// `Δ D^{-1}`.
    pub fn anomaly(&self) -> Complex64 {
        self.delta / self.rank
    }

    /// The mirror datum: `v ↦ v^{-1}`, `S_{ij} ↦ S_{i*j}`, `Δ ↦ Σ v_i dim_i²`.
    pub fn mirror(&self) -> ModularDatum {
        let v: Vec<Complex64> = self.v.iter().map(|x| x.inv()).collect();
        let s = DMatrix::from_fn(self.n_labels, self.n_labels, |i, j| self.s[(self.dual[i], j)]);
        let delta = delta_of(&v, &self.dims);
        ModularDatum { s, v, delta, mirrored: !self.mirrored, ..self.clone() }
    }

    /// `v_i^k` for an integer exponent.
    pub fn twist_pow(&self, i: usize, k: &BigInt) -> Result<Complex64> {
        if let Some(r) = self.level {
            // v_j = exp(iπ(j² − 1)/(2r)) has order dividing 4r
            let j = (i + 1) as i128;
            let k = k.mod_floor(&BigInt::from(4 * r as i64)).to_i128().expect("reduced");
            let k = if self.mirrored { -k } else { k };
            return Ok(cis_pi(k * (j * j - 1), 2 * r as i128));
        }
        let k = k.to_i32().ok_or_else(|| Error::Unsupported(format!("twist exponent {k}")))?;
        Ok(self.v[i].powi(k))
    }
}

fn delta_of(v: &[Complex64], dims: &[f64]) -> Complex64 {
    v.iter().zip(dims).map(|(v, d)| v.inv() * (d * d)).sum()
}

/// `sin(π·num/den)` with the argument reduced exactly.
fn sin_pi(num: i128, den: i128) -> f64 {
    cis_pi(num, den).im
}

/// The sl₂ datum at level `r − 2`.
pub fn sl2_datum(r: u32) -> Result<ModularDatum> {
    if r < 2 {
        return Err(Error::InvalidLevel(r));
    }
    let n = (r - 1) as usize;
    let rr = r as i128;
    let s1 = sin_pi(1, rr);
    let s = DMatrix::from_fn(n, n, |i, l| {
        Complex64::new(sin_pi(((i + 1) * (l + 1)) as i128, rr) / s1, 0.0)
    });
    let v: Vec<Complex64> = (1..=rr).take(n).map(|j| cis_pi(j * j - 1, 2 * rr)).collect();
    let dims: Vec<f64> = (1..=rr).take(n).map(|j| sin_pi(j, rr) / s1).collect();
    let rank = (r as f64 / 2.0).sqrt() / s1;
    let eps = (0..n).map(|i| Some(if i % 2 == 0 { 1 } else { -1 })).collect();
    let delta = delta_of(&v, &dims);
    Ok(ModularDatum {
        n_labels: n,
        s,
        v,
        dims,
        rank,
        delta,
        dual: (0..n).collect(),
        eps,
        unit: 0,
        level: Some(r),
        mirrored: false,
    })
}

/// `exp(iπ·3(2 − r)/(4r))`, the expected value of `Δ D^{-1}` for sl₂.
pub fn sl2_anomaly(r: u32) -> Complex64 {
    cis_pi(3 * (2 - r as i128), 4 * r as i128)
}

/// `w = e^{iπ/4} e^{−iπ/(2r)}`, the scalar relating `T` and `Θ̃`.
pub fn framing_constant(r: u32) -> Complex64 {
    cis_pi(r as i128 - 2, 4 * r as i128)
}

/// Maximal residual of every axiom of a datum.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomReport {
    /// `|S − Sᵀ|`
    pub s_symmetric: f64,
    /// `|S_{ij} − S_{i*j*}|`
    pub s_dual_invariant: f64,
    /// `|S² − D² J|`, `J_{ij} = δ_{i*,j}`
    pub s_squared: f64,
    /// `|v_{i*} − v_i|`
    pub twist_dual: f64,
    /// `|dim_unit − 1| + |v_unit − 1|`
    pub unit: f64,
    /// `|S_{i,unit} − dim_i|`
    pub dims_from_s: f64,
    /// `|D² − Σ dim²|`
    pub rank: f64,
    /// `|Δ_V Δ_V̄ − D²|`
    pub delta_product: f64,
    /// `|Δ D^{-1} − exp(iπ·3(2 − r)/(4r))|` for sl₂
    pub anomaly: Option<f64>,
    pub tolerance: f64,
}

impl AxiomReport {
    pub fn residuals(&self) -> Vec<(&'static str, f64)> {
        let mut out = vec![
            ("s_symmetric", self.s_symmetric),
            ("s_dual_invariant", self.s_dual_invariant),
            ("s_squared", self.s_squared),
            ("twist_dual", self.twist_dual),
            ("unit", self.unit),
            ("dims_from_s", self.dims_from_s),
            ("rank", self.rank),
            ("delta_product", self.delta_product),
        ];
        if let Some(a) = self.anomaly {
            out.push(("anomaly", a));
        }
        out
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals().into_iter().map(|(_, x)| x).fold(0.0, f64::max)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.residuals().into_iter().filter(|(_, x)| !(*x < self.tolerance)).map(|(n, _)| n).collect()
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }
}

pub fn check_axioms(d: &ModularDatum, tol: f64) -> AxiomReport {
    let n = d.n_labels;
    let s = &d.s;
    let d2 = d.rank * d.rank;
    let mut sym = 0.0f64;
    let mut dual_inv = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            sym = sym.max((s[(i, j)] - s[(j, i)]).norm());
            dual_inv = dual_inv.max((s[(i, j)] - s[(d.dual[i], d.dual[j])]).norm());
        }
    }
    let sq = s * s;
    let mut s_squared = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let target = if d.dual[i] == j { d2 } else { 0.0 };
            s_squared = s_squared.max((sq[(i, j)] - target).norm());
        }
    }
    let twist_dual = (0..n).map(|i| (d.v[d.dual[i]] - d.v[i]).norm()).fold(0.0, f64::max);
    let unit = (d.dims[d.unit] - 1.0).abs() + (d.v[d.unit] - 1.0).norm();
    let dims_from_s =
        (0..n).map(|i| (s[(i, d.unit)] - d.dims[i]).norm()).fold(0.0, f64::max);
    let rank = (d2 - d.dims.iter().map(|x| x * x).sum::<f64>()).abs();
    let mirror_delta: Complex64 = d.v.iter().zip(&d.dims).map(|(v, x)| v * (x * x)).sum();
    let delta_product = (d.delta * mirror_delta - d2).norm();
    let anomaly = d.level.map(|r| {
        let expected = if d.mirrored { sl2_anomaly(r).conj() } else { sl2_anomaly(r) };
        (d.anomaly() - expected).norm()
    });
    AxiomReport {
        s_symmetric: sym,
        s_dual_invariant: dual_inv,
        s_squared,
        twist_dual,
        unit,
        dims_from_s,
        rank,
        delta_product,
        anomaly,
        tolerance: tol,
    }
}

/// `G^C = T^{a_n} S T^{a_{n−1}} S ⋯ T^{a_1} S` with `T = diag(v)`.
pub fn g_matrix(d: &ModularDatum, c: &ContinuedFraction) -> Result<DMatrix<Complex64>> {
    let n = d.n_labels;
    let mut m = DMatrix::<Complex64>::identity(n, n);
    for a in c.entries() {
        let mut next = &d.s * &m;
        for i in 0..n {
            let t = d.twist_pow(i, a)?;
            for x in next.row_mut(i).iter_mut() {
                *x *= t;
            }
        }
        m = next;
    }
    Ok(m)
}

/// `κ(j) = ε_j D² v_j² δ_{j,j*} / dim(j)`.
pub fn kappa(d: &ModularDatum, j: usize) -> Result<Complex64> {
    if d.dual[j] != j {
        return Ok(Complex64::zero());
    }
    let e = d.eps[j].ok_or(Error::MissingEpsilon(j))?;
    Ok(d.v[j] * d.v[j] * (e as f64 * d.rank * d.rank / d.dims[j]))
}

/// Images of Ξ and Θ under the unitary representation at level `r − 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct RRepMatrices {
    pub r: u32,
    /// `Ξ̃_{jl} = √(2/r) sin(jlπ/r)`
    pub xi: DMatrix<Complex64>,
    /// `Θ̃ = e^{−iπ/4} diag(e^{iπ j²/(2r)})`
    pub theta: DMatrix<Complex64>,
}

impl RRepMatrices {
    pub fn new(r: u32) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidLevel(r));
        }
        let n = (r - 1) as usize;
        let rr = r as i128;
        let c = (2.0 / r as f64).sqrt();
        let xi = DMatrix::from_fn(n, n, |i, l| {
            Complex64::new(c * sin_pi(((i + 1) * (l + 1)) as i128, rr), 0.0)
        });
        let theta = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            n,
            (0..n).map(|i| theta_phase(r, i, &BigInt::from(1))),
        ));
        Ok(RRepMatrices { r, xi, theta })
    }

    /// `Θ̃^k` as a diagonal matrix with exactly reduced phases.
    pub fn theta_pow(&self, k: &BigInt) -> DMatrix<Complex64> {
        let n = (self.r - 1) as usize;
        DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            n,
            (0..n).map(|i| theta_phase(self.r, i, k)),
        ))
    }
}

/// `(Θ̃^k)_{jj} = exp(iπ k (2j² − r)/(4r))` for `j = i + 1`.
fn theta_phase(r: u32, i: usize, k: &BigInt) -> Complex64 {
    let j = (i + 1) as i128;
    let rr = r as i128;
    let k = k.mod_floor(&BigInt::from(8 * r as i64)).to_i128().expect("reduced");
    cis_pi(k * (2 * j * j - rr), 4 * rr)
}

/// `±A = B^C Θ^k` where `C` expands the first column of `A`.
pub fn generator_word(a: &Sl2z) -> (Option<ContinuedFraction>, BigInt) {
    let (p, q) = a.first_column();
    if q.is_zero() {
        // A = ±Θ^k with a = ±1
        return (None, a.b() * p);
    }
    let cf = cf_expand(p.clone(), q.clone(), CfStyle::Euclidean).expect("first column is coprime");
    let k_mat = &cf.matrix().inverse() * a;
    let k = k_mat.b() * k_mat.a();
    (Some(cf), k)
}

/// `Ã` via the generator word of `A`.
pub fn r_rep_word(a: &Sl2z, r: u32) -> Result<DMatrix<Complex64>> {
    let gens = RRepMatrices::new(r)?;
    let (cf, k) = generator_word(a);
    let mut m = gens.theta_pow(&k);
    if let Some(cf) = cf {
        for x in cf.entries() {
            m = gens.theta_pow(x) * (&gens.xi * m);
        }
    }
    Ok(m)
}

/// `Ã` entrywise from its Gauss-sum closed form; needs `c ≠ 0`.
pub fn r_rep_gauss(a: &Sl2z, r: u32) -> Result<DMatrix<Complex64>> {
    if r < 2 {
        return Err(Error::InvalidLevel(r));
    }
    if a.c().is_zero() {
        return Err(Error::DiagonalCase);
    }
    let phi = rademacher_phi_integer(a)?;
    let big = |x: &BigInt| x.to_i128().ok_or_else(|| Error::Unsupported(format!("entry {x} too large")));
    let (aa, cc, dd) = (big(a.a())?, big(a.c())?, big(a.d())?);
    let rr = r as i128;
    let phi = phi.mod_floor(&BigInt::from(8)).to_i128().expect("reduced");
    let pref = Complex64::i() * (sign(&cc) as f64) / ((2 * rr * cc.abs()) as f64).sqrt() * cis_pi(-phi, 4);
    // phases π N/(2rc); flip signs so the denominator is positive
    let (s, den) = if cc > 0 { (1, 2 * rr * cc) } else { (-1, -2 * rr * cc) };
    let n = (r - 1) as usize;
    let mut out = DMatrix::<Complex64>::zeros(n, n);
    for j in 1..=rr - 1 {
        for k in 1..=rr - 1 {
            let mut acc = Complex64::zero();
            for mu in [1i128, -1] {
                for t in 0..cc.abs() {
                    let x = j + 2 * rr * t * mu;
                    let num = aa * x * x - 2 * mu * k * x + dd * k * k;
                    acc += cis_pi(s * num, den) * mu as f64;
                }
            }
            out[((j - 1) as usize, (k - 1) as usize)] = pref * acc;
        }
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct DatumJson {
    n_labels: usize,
    #[serde(rename = "S")]
    s: Vec<[f64; 2]>,
    v: Vec<[f64; 2]>,
    dims: Vec<f64>,
    #[serde(rename = "D")]
    rank: f64,
    dual: Vec<usize>,
    eps: Vec<Option<i8>>,
}

impl ModularDatum {
    /// Parses `{n_labels, S, v, dims, D, dual, eps}`; `S` is row-major `[re, im]` pairs.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let j: DatumJson = serde_json::from_str(text).map_err(|e| Error::Datum(e.to_string()))?;
        let n = j.n_labels;
        if j.s.len() != n * n || j.v.len() != n {
            return Err(Error::Datum(format!("S needs {} entries and v needs {n}", n * n)));
        }
        let s = DMatrix::from_row_iterator(n, n, j.s.iter().map(|p| Complex64::new(p[0], p[1])));
        let v = j.v.iter().map(|p| Complex64::new(p[0], p[1])).collect();
        ModularDatum::new(s, v, j.dims, j.rank, j.dual, j.eps)
    }

    pub fn to_json_string(&self) -> String {
        let n = self.n_labels;
        let j = DatumJson {
            n_labels: n,
            s: (0..n).flat_map(|i| (0..n).map(move |k| (i, k))).map(|ik| [self.s[ik].re, self.s[ik].im]).collect(),
            v: self.v.iter().map(|z| [z.re, z.im]).collect(),
            dims: self.dims.clone(),
            rank: self.rank,
            dual: self.dual.clone(),
            eps: self.eps.clone(),
        };
        serde_json::to_string(&j).expect("plain data serializes")
    }
}

/// Largest entrywise modulus of `a − b`.
pub fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
