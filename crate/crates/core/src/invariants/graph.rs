use super::{effective_level, result, InvariantResult, Method};
use crate::error::{Error, Result};
use crate::modular::ModularDatum;
use crate::seifert::{Base, SeifertData};
use crate::sl2z::{linking_matrix, signature_exact, CfStyle, LinkingMatrix};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rayon::prelude::*;

/// Limits of the brute-force colouring sum, whose cost is `(r − 1)^{1 + Σ m_j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComplexityCap {
    /// Largest admissible total chain length `Σ m_j`.
    pub max_chain_total: usize,
    /// Largest admissible level (`n_labels + 1` for loaded data).
    pub max_level: u32,
}

impl Default for ComplexityCap {
    fn default() -> Self {
        ComplexityCap { max_chain_total: 8, max_level: 10 }
    }
}

impl ComplexityCap {
    pub const ENV_VAR: &'static str = "RT_COMPLEXITY_CAP";

    /// Parses `"N"` (chain total) or `"N,R"` (chain total and level).
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("complexity cap '{s}' must look like N or N,R"));
        let mut cap = ComplexityCap::default();
        let mut parts = s.split(',').map(str::trim);
        cap.max_chain_total = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        if let Some(r) = parts.next() {
            cap.max_level = r.parse().map_err(|_| bad())?;
        }
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(cap)
    }

    /// The default, overridden by `RT_COMPLEXITY_CAP` when set and valid.
    pub fn from_env() -> Self {
        std::env::var(Self::ENV_VAR).ok().and_then(|s| Self::parse(&s).ok()).unwrap_or_default()
    }

    pub fn admits(&self, chain_total: usize, level: u32) -> bool {
        chain_total <= self.max_chain_total && level <= self.max_level
    }
}

/// Invariant of the plumbed graph manifold with framing matrix `b` and vertex
/// genera `genera`, evaluated with datum `d` as a brute-force sum over all
/// colourings `φ ∈ I^m`:
///
/// `Δ^{σ(B)} D^{b_1 − 1 − m − null(B) − σ(B)} Σ_φ Π_p v_{φ_p}^{B_pp} dim(φ_p)^{2 − 2g_p − a_p} Π_{p<q} S_{φ_p φ_q}^{|B_pq|}`,
///
/// where `a_p` is the weighted degree of vertex `p`.
pub fn graph_manifold_invariant(
    d: &ModularDatum,
    b: &LinkingMatrix,
    genera: &[u32],
    b1: u32,
) -> Result<Complex64> {
    let m = b.dim();
    if genera.len() != m {
        return Err(Error::ShapeError("one genus per vertex is required".into()));
    }
    let (sig, null) = signature_exact(b)?;
    let small = |x: &BigInt| x.to_i64().ok_or_else(|| Error::Unsupported(format!("entry {x}")));
    let n = d.n_labels;

    // per-vertex weights w_p(i) = v_i^{B_pp} dim(i)^{2−2g_p−a_p}
    let mut weights = vec![vec![Complex64::new(0.0, 0.0); n]; m];
    for p in 0..m {
        let mut degree = 0i64;
        for q in 0..m {
            if q != p {
                degree += small(b.entry(p, q))?.abs();
            }
        }
        let e = 2 - 2 * genera[p] as i64 - degree;
        for i in 0..n {
            weights[p][i] = d.twist_pow(i, b.entry(p, p))? * d.dims[i].powi(e as i32);
        }
    }
    // earlier neighbours of each vertex with their multiplicities
    let mut back: Vec<Vec<(usize, i32)>> = vec![Vec::new(); m];
    for p in 0..m {
        for q in 0..p {
            let k = small(b.entry(p, q))?.abs() as i32;
            if k != 0 {
                back[p].push((q, k));
            }
        }
    }

    let partial = |first: usize| -> Complex64 {
        let mut colours = vec![0usize; m];
        colours[0] = first;
        dfs(d, &weights, &back, &mut colours, 1, weights[0][first])
    };
    let total: Complex64 = if m == 0 {
        Complex64::new(1.0, 0.0)
    } else {
        // fixed-order reduction keeps the value independent of the thread count
        let parts: Vec<Complex64> = (0..n).into_par_iter().map(partial).collect();
        parts.into_iter().sum()
    };
    let exponent = b1 as i64 - 1 - m as i64 - null as i64 - sig;
    Ok(d.delta.powi(sig as i32) * d.rank.powi(exponent as i32) * total)
}

fn dfs(
    d: &ModularDatum,
    weights: &[Vec<Complex64>],
    back: &[Vec<(usize, i32)>],
    colours: &mut [usize],
    p: usize,
    acc: Complex64,
) -> Complex64 {
    if p == weights.len() {
        return acc;
    }
    let mut total = Complex64::new(0.0, 0.0);
    for i in 0..d.n_labels {
        let mut t = acc * weights[p][i];
        for &(q, k) in &back[p] {
            t *= d.s[(colours[q], i)].powi(k);
        }
        colours[p] = i;
        total += dfs(d, weights, back, colours, p + 1, t);
    }
    total
}

/// τ through the plumbing graph of `−M`.
///
/// The star-shaped framing matrix `−A` (genus block removed, central vertex
/// of genus `g`) is summed with the mirror datum, which computes the
/// invariant of `M` for `d`. Requires an orientable base and respects `cap`.
pub fn tau_graph_sum(d: &ModularDatum, m: &SeifertData, cap: ComplexityCap) -> Result<InvariantResult> {
    if m.base() != Base::Orientable {
        return Err(Error::Unsupported("the graph route needs an orientable base".into()));
    }
    let m = &m.normalize();
    let chains = m.chains(CfStyle::Minus);
    let chain_total: usize = chains.iter().map(|c| c.len()).sum();
    let level = effective_level(d);
    if !cap.admits(chain_total, level) {
        return Err(Error::ComplexityCap(format!(
            "chain total {chain_total} and level {level} exceed the cap ({}, {})",
            cap.max_chain_total, cap.max_level
        )));
    }
    let star = linking_matrix(m, &chains)?.without_genus_block().negated();
    let mut genera = vec![0u32; star.dim()];
    genera[0] = m.genus();
    let b1 = m.first_betti()?;
    let value = graph_manifold_invariant(&d.mirror(), &star, &genera, b1)?;
    let (sig, _) = signature_exact(&star)?;
    Ok(result(value, d.level, level, Method::GraphSum, sig, CfStyle::Minus, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::tau_generic;
    use crate::modular::sl2_datum;

    #[test]
    fn matches_generic() {
        for r in [3, 4, 5, 6] {
            let d = sl2_datum(r).unwrap();
            for s in ["o;g=0;b=-1;2/1", "o;g=1;b=1;", "o;g=0;b=-1;2/1,3/1,5/1", "o;g=1;b=0;3/2", "o;g=0;b=0;", "nn:o;g=0;3/5,1/-1"] {
                let m: SeifertData = s.parse().unwrap();
                let g = tau_generic(&d, &m, CfStyle::Minus).unwrap().value;
                let t = tau_graph_sum(&d, &m, ComplexityCap::default()).unwrap().value;
                assert!((g - t).norm() < 1e-9, "r={r} {s}: {g} vs {t}");
            }
        }
    }

    #[test]
    fn star_signature_and_nullity() {
        let m: SeifertData = "o;g=0;b=-1;2/1,3/1,5/1".parse().unwrap();
        let chains = m.chains(CfStyle::Minus);
        let star = linking_matrix(&m, &chains).unwrap().without_genus_block().negated();
        assert_eq!(signature_exact(&star).unwrap(), (-m.sigma(CfStyle::Minus), 0));
        let flat: SeifertData = "o;g=2;b=0;".parse().unwrap();
        let star = linking_matrix(&flat, &[]).unwrap().without_genus_block().negated();
        assert_eq!(signature_exact(&star).unwrap(), (0, 1));
    }

    #[test]
    fn cap_is_enforced() {
        let d = sl2_datum(5).unwrap();
        let m: SeifertData = "o;g=0;b=0;7/6,7/6".parse().unwrap();
        assert!(matches!(tau_graph_sum(&d, &m, ComplexityCap::default()), Err(Error::ComplexityCap(_))));
        let big = sl2_datum(11).unwrap();
        let m: SeifertData = "o;g=0;b=1;".parse().unwrap();
        assert!(matches!(tau_graph_sum(&big, &m, ComplexityCap::default()), Err(Error::ComplexityCap(_))));
        assert_eq!(ComplexityCap::parse("12,14").unwrap(), ComplexityCap { max_chain_total: 12, max_level: 14 });
        assert!(ComplexityCap::parse("x").is_err());
    }

    #[test]
    fn non_orientable_rejected() {
        let d = sl2_datum(4).unwrap();
        let m: SeifertData = "n;g=1;b=0;".parse().unwrap();
        assert!(matches!(tau_graph_sum(&d, &m, ComplexityCap::default()), Err(Error::Unsupported(_))));
    }
}
