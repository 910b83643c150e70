use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{quotient, IntegerLattice, LatticeVector, Signature, Sublattice};
use crate::linalg::{invariant_factors, kernel, rank, row_echelon, IntMatrix, Kernel};

use super::config::KulikovConfig;
use super::validate::validate;

/// `Λ̃ = ker(⊕ H²(V_i) → ⊕ H²(D_ij))` with the restricted intersection form.
#[derive(Clone, Debug)]
pub struct NumericallyCartier {
    pub lattice: IntegerLattice,
    /// Basis of `Λ̃` as rows in `⊕ H²(V_i)` coordinates.
    pub embedding: IntMatrix,
    /// Start of each component's block in `⊕ H²(V_i)`.
    pub offsets: Vec<usize>,
    /// Block-diagonal form on `⊕ H²(V_i)`.
    pub ambient: IntegerLattice,
    /// Signed restriction map, one row per edge.
    pub restriction: IntMatrix,
    kernel: Kernel,
}

impl NumericallyCartier {
    /// Coordinates in the `Λ̃` basis of an element of `⊕ H²(V_i)`.
    pub fn coordinates(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        self.kernel.coordinates(x)
    }
}

/// Block offsets of the components in `⊕ H²(V_i)`, plus the total rank.
pub fn block_offsets(cfg: &KulikovConfig) -> (Vec<usize>, usize) {
    let mut offsets = Vec::with_capacity(cfg.components.len());
    let mut total = 0;
    for p in &cfg.components {
        offsets.push(total);
        total += p.h2.rank();
    }
    (offsets, total)
}

/// The map `(α_i) ↦ (α_src·D_src − α_tgt·D_tgt)` over oriented edges.
pub fn restriction_matrix(cfg: &KulikovConfig) -> Result<IntMatrix> {
    cfg.check_incidence()?;
    let (offsets, total) = block_offsets(cfg);
    let mut r = IntMatrix::zeros(cfg.edges.len(), total);
    for (k, e) in cfg.edges.iter().enumerate() {
        let (src, tgt) = e.oriented();
        for ((c, b), sign) in [(src, 1i64), (tgt, -1i64)] {
            let p = &cfg.components[c];
            let row = p.h2.pairings(&p.boundary[b])?;
            for (t, x) in row.into_iter().enumerate() {
                if !x.is_zero() {
                    r[(k, offsets[c] + t)] += x * sign;
                }
            }
        }
    }
    Ok(r)
}

fn ambient_lattice(cfg: &KulikovConfig) -> IntegerLattice {
    IntegerLattice::direct_sum_all(cfg.components.iter().map(|p| &p.h2))
}

/// Builds `Λ̃` without running validation first.
pub fn numerically_cartier_unchecked(cfg: &KulikovConfig) -> Result<NumericallyCartier> {
    let restriction = restriction_matrix(cfg)?;
    let (offsets, _) = block_offsets(cfg);
    let ambient = ambient_lattice(cfg);
    let kernel = kernel(&restriction, true);
    let embedding = kernel.basis.clone();
    let gram = embedding.mul(ambient.gram())?.mul(&embedding.transpose())?;
    Ok(NumericallyCartier { lattice: IntegerLattice::new(gram)?, embedding, offsets, ambient, restriction, kernel })
}

pub fn numerically_cartier_lattice(cfg: &KulikovConfig) -> Result<NumericallyCartier> {
    require_valid(cfg)?;
    numerically_cartier_unchecked(cfg)
}

fn require_valid(cfg: &KulikovConfig) -> Result<()> {
    let rep = validate(cfg)?;
    if let Some(f) = rep.failures.first() {
        return Err(Error::Validation(format!(
            "{}: {} ({} failed checks)",
            f.location,
            f.message,
            rep.failures.len()
        )));
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct LambdaReport {
    pub tilde: NumericallyCartier,
    /// `ξ_i` in `Λ̃` coordinates (`None` if `ξ_i` is not numerically Cartier).
    pub xi: Vec<Option<LatticeVector>>,
    pub xi_sum_zero: bool,
    pub radical_rank: usize,
    pub xi_rank: usize,
    /// `Ξ` equals the radical of the form on `Λ̃`.
    pub xi_is_radical: bool,
    /// `Λ̃ / Ξ` has no torsion.
    pub torsion_free: bool,
    pub torsion: Vec<BigInt>,
    /// `Λ = Λ̃ / Ξ`, when `Ξ` lies in the radical with full rank.
    pub lambda: Option<IntegerLattice>,
    pub failures: Vec<String>,
}

impl LambdaReport {
    pub fn signature(&self) -> Option<Signature> {
        self.lambda.as_ref().map(IntegerLattice::signature)
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `ξ_i = Σ_j (D_ji − D_ij)` as vectors of `⊕ H²(V_i)`.
pub fn xi_vectors(cfg: &KulikovConfig) -> Vec<Vec<BigInt>> {
    let (offsets, total) = block_offsets(cfg);
    let mut xi = vec![vec![BigInt::zero(); total]; cfg.components.len()];
    for e in &cfg.edges {
        for (near, far) in [(e.end(0), e.end(1)), (e.end(1), e.end(0))] {
            let v = &mut xi[near.0];
            for (t, x) in cfg.components[far.0].boundary[far.1].iter().enumerate() {
                v[offsets[far.0] + t] += x;
            }
            for (t, x) in cfg.components[near.0].boundary[near.1].iter().enumerate() {
                v[offsets[near.0] + t] -= x;
            }
        }
    }
    xi
}

pub fn lambda_lattice(cfg: &KulikovConfig) -> Result<LambdaReport> {
    require_valid(cfg)?;
    lambda_lattice_unchecked(cfg)
}

pub fn lambda_lattice_unchecked(cfg: &KulikovConfig) -> Result<LambdaReport> {
    let tilde = numerically_cartier_unchecked(cfg)?;
    let mut failures = Vec::new();
    let raw = xi_vectors(cfg);
    let xi_sum_zero = raw.iter().fold(vec![BigInt::zero(); tilde.ambient.rank()], |acc, v| {
        acc.iter().zip(v).map(|(a, b)| a + b).collect()
    })
    .iter()
    .all(Zero::is_zero);
    if !xi_sum_zero {
        failures.push("the ξ_i do not sum to zero".to_string());
    }
    let xi: Vec<Option<LatticeVector>> = raw.iter().map(|v| tilde.coordinates(v).map(LatticeVector::new)).collect();
    for (i, x) in xi.iter().enumerate() {
        if x.is_none() {
            failures.push(format!("ξ_{i} is not numerically Cartier"));
        }
    }

    let g = tilde.lattice.gram();
    let radical = kernel(g, false);
    let radical_rank = radical.dim();
    let r = tilde.lattice.rank();
    let xi_rows: Vec<Vec<BigInt>> = xi.iter().flatten().map(|v| v.coords.clone()).collect();
    let xi_mat = IntMatrix::from_rows(xi_rows, r)?;
    let xi_rank = rank(&xi_mat);
    let in_radical = g.mul(&xi_mat.transpose())?.is_zero();
    let factors = invariant_factors(&xi_mat);
    let saturated = factors.iter().all(One::is_one);
    let torsion: Vec<BigInt> = factors.into_iter().filter(|d| !d.is_one()).collect();
    let xi_is_radical = xi.iter().all(Option::is_some) && in_radical && xi_rank == radical_rank && saturated;
    if !in_radical {
        failures.push("some ξ_i pairs nontrivially with Λ̃".into());
    }
    if xi_rank != radical_rank {
        failures.push(format!("Ξ has rank {xi_rank} but the radical of Λ̃ has rank {radical_rank}"));
    }
    if !saturated {
        failures.push(format!("Λ̃/Ξ has torsion {torsion:?}"));
    }

    let lambda = if in_radical && xi_rank == radical_rank && xi.iter().all(Option::is_some) {
        // A basis of the row span of the ξ_i keeps any torsion visible.
        let ech = row_echelon(&xi_mat, false);
        let basis = ech.echelon.select_rows(0..ech.rank);
        let sub = Sublattice::from_matrix(&tilde.lattice, basis)?;
        let q = quotient(&tilde.lattice, &sub)?;
        if !q.lattice.is_nondegenerate() {
            failures.push("the form on Λ̃/Ξ is degenerate".into());
        }
        Some(q.lattice)
    } else {
        None
    };

    Ok(LambdaReport {
        tilde,
        xi,
        xi_sum_zero,
        radical_rank,
        xi_rank,
        xi_is_radical,
        torsion_free: saturated,
        torsion,
        lambda,
        failures,
    })
}
