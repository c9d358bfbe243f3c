use super::{convergents, rademacher_phi, ContinuedFraction, ConvergentTable};
use crate::error::{Error, Result};
use crate::phase::sign;
use crate::seifert::{Base, SeifertData};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Symmetric integer surgery matrix of a Seifert manifold.
///
/// Row order: genus block, central vertex, then one block per chain in the
/// order of the pairs. Inside a chain the entry next to the centre is `a_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkingMatrix {
    rows: Vec<Vec<BigInt>>,
    genus_block: usize,
    chain_lengths: Vec<usize>,
}

impl LinkingMatrix {
    /// An arbitrary square matrix; symmetry is checked where it matters.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeError("linking matrix must be square".into()));
        }
        Ok(LinkingMatrix { rows, genus_block: 0, chain_lengths: Vec::new() })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn genus_block(&self) -> usize {
        self.genus_block
    }

    pub fn center(&self) -> usize {
        self.genus_block
    }

    pub fn chain_lengths(&self) -> &[usize] {
        &self.chain_lengths
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..i).all(|j| self.rows[i][j] == self.rows[j][i]))
    }

    pub fn negated(&self) -> LinkingMatrix {
        LinkingMatrix {
            rows: self.rows.iter().map(|r| r.iter().map(|x| -x).collect()).collect(),
            genus_block: self.genus_block,
            chain_lengths: self.chain_lengths.clone(),
        }
    }

    /// The principal submatrix with the genus block removed.
    pub fn without_genus_block(&self) -> LinkingMatrix {
        let g = self.genus_block;
        LinkingMatrix {
            rows: self.rows[g..].iter().map(|r| r[g..].to_vec()).collect(),
            genus_block: 0,
            chain_lengths: self.chain_lengths.clone(),
        }
    }
}

/// Builds the linking matrix of the standard surgery link: `cfs[j]` is the
/// chain replacing the `j`-th exceptional fibre.
pub fn linking_matrix(data: &SeifertData, cfs: &[ContinuedFraction]) -> Result<LinkingMatrix> {
    if cfs.len() != data.pairs().len() {
        return Err(Error::ShapeError(format!(
            "{} continued fractions for {} pairs",
            cfs.len(),
            data.pairs().len()
        )));
    }
    let g = data.genus() as usize;
    let b = BigInt::from(data.b().unwrap_or(0));
    let gb = match data.base() {
        Base::Orientable => 2 * g,
        Base::NonOrientable => g,
    };
    let m = gb + 1 + cfs.iter().map(|c| c.len()).sum::<usize>();
    let mut rows = vec![vec![BigInt::zero(); m]; m];
    let c = gb;
    match data.base() {
        Base::Orientable => rows[c][c] = -b,
        Base::NonOrientable => {
            rows[c][c] = -b - BigInt::from(2 * g);
            for i in 0..g {
                rows[i][c] = BigInt::from(-2);
                rows[c][i] = BigInt::from(-2);
            }
        }
    }
    let mut pos = c + 1;
    for cf in cfs {
        for (i, a) in cf.entries().iter().rev().enumerate() {
            rows[pos + i][pos + i] = a.clone();
            if i > 0 {
                rows[pos + i][pos + i - 1] = BigInt::from(1);
                rows[pos + i - 1][pos + i] = BigInt::from(1);
            }
        }
        rows[c][pos] = BigInt::from(1);
        rows[pos][c] = BigInt::from(1);
        pos += cf.len();
    }
    Ok(LinkingMatrix { rows, genus_block: gb, chain_lengths: cfs.iter().map(|c| c.len()).collect() })
}

/// `σ = sign(e) + Σ_j Σ_l sign(α_l β_l)`; the `sign(e)` term is present only
/// for an orientable base.
pub fn sigma_closed_form(base: Base, euler_sign: i64, tables: &[ConvergentTable]) -> i64 {
    let chains: i64 = tables.iter().map(|t| t.sign_sum(t.len())).sum();
    match base {
        Base::Orientable => euler_sign + chains,
        Base::NonOrientable => chains,
    }
}

/// The same signature through Φ:
/// `σ = sign(e) + Σ_j [sign(α_j β_j) + (Σ_l a_l − Φ(B^{C_j}))/3]`.
pub fn sigma_phi_form(base: Base, euler_sign: i64, cfs: &[ContinuedFraction]) -> Result<i64> {
    let mut total = BigRational::zero();
    for cf in cfs {
        let t = convergents(cf);
        let last = t.last();
        total += BigRational::from_integer(BigInt::from(sign(&(last.a() * last.c()))));
        total += (BigRational::from_integer(cf.entry_sum()) - rademacher_phi(last))
            / BigRational::from_integer(BigInt::from(3));
    }
    if !total.is_integer() {
        return Err(Error::NonIntegralPhi(format!("signature sum {total}")));
    }
    let chains = i64::try_from(total.to_integer())
        .map_err(|_| Error::Unsupported("signature out of range".into()))?;
    Ok(match base {
        Base::Orientable => euler_sign + chains,
        Base::NonOrientable => chains,
    })
}

/// Signature and nullity by exact rational congruence reduction.
///
/// A non-zero diagonal entry is eliminated as a 1×1 pivot. When the diagonal
/// vanishes, a non-zero `x = A_ij` spans a hyperbolic plane `[[0,x],[x,0]]`
/// (signature 0, rank 2) which is split off by its Schur complement.
pub fn signature_exact(m: &LinkingMatrix) -> Result<(i64, usize)> {
    if !m.is_symmetric() {
        return Err(Error::ShapeError("signature needs a symmetric matrix".into()));
    }
    let mut a: Vec<Vec<BigRational>> = m
        .rows()
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut sig = 0i64;
    loop {
        let n = a.len();
        if n == 0 {
            return Ok((sig, 0));
        }
        if let Some(i) = (0..n).find(|&i| !a[i][i].is_zero()) {
            let p = a[i][i].clone();
            sig += if p.is_positive() { 1 } else { -1 };
            let idx: Vec<usize> = (0..n).filter(|&k| k != i).collect();
            a = idx
                .iter()
                .map(|&x| idx.iter().map(|&y| &a[x][y] - &a[x][i] * &a[i][y] / &p).collect())
                .collect();
            continue;
        }
        let Some((i, j)) =
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero())
        else {
            return Ok((sig, n));
        };
        let x = a[i][j].clone();
        let idx: Vec<usize> = (0..n).filter(|&k| k != i && k != j).collect();
        a = idx
            .iter()
            .map(|&u| {
                idx.iter()
                    .map(|&v| &a[u][v] - (&a[u][i] * &a[j][v] + &a[u][j] * &a[i][v]) / &x)
                    .collect()
            })
            .collect();
    }
}
