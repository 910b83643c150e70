use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{IntegerLattice, LatticeVector};
use crate::error::{Error, Result};
use crate::linalg::{content, kernel, rank, saturate_rows, smith_normal_form, solve_left_full_rank, IntMatrix};

/// A sublattice given by a basis in ambient coordinates (one vector per row).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublattice {
    ambient: IntegerLattice,
    basis: IntMatrix,
    saturated: bool,
}

impl Sublattice {
    pub fn new(ambient: &IntegerLattice, basis: Vec<LatticeVector>) -> Result<Self> {
        let rows: Vec<Vec<BigInt>> = basis.into_iter().map(|v| v.coords).collect();
        let m = IntMatrix::from_rows(rows, ambient.rank())?;
        Self::from_matrix(ambient, m)
    }

    pub fn from_matrix(ambient: &IntegerLattice, basis: IntMatrix) -> Result<Self> {
        if basis.ncols() != ambient.rank() {
            return Err(Error::Dimension(format!(
                "basis vectors of length {} in a rank {} lattice",
                basis.ncols(),
                ambient.rank()
            )));
        }
        if rank(&basis) != basis.nrows() {
            return Err(Error::LinearlyDependent);
        }
        let saturated = index_of(&basis).is_one();
        Ok(Sublattice { ambient: ambient.clone(), basis, saturated })
    }

    pub fn ambient(&self) -> &IntegerLattice {
        &self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.nrows()
    }

    /// Basis vectors as rows.
    pub fn basis_matrix(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis(&self) -> Vec<LatticeVector> {
        self.basis.rows_iter().map(|r| LatticeVector::new(r.to_vec())).collect()
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    /// Index of this sublattice in its saturation.
    pub fn index_in_saturation(&self) -> BigInt {
        index_of(&self.basis)
    }

    /// Induced form `B G Bᵀ` on the sublattice basis (possibly degenerate).
    pub fn induced(&self) -> IntegerLattice {
        let g = self.basis.mul(self.ambient.gram()).unwrap().mul(&self.basis.transpose()).unwrap();
        IntegerLattice::new(g).expect("induced Gram matrix is symmetric")
    }

    /// Coordinates of `v` in the sublattice basis, if `v` lies in it.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        if self.rank() == 0 {
            return v.iter().all(Zero::is_zero).then(Vec::new);
        }
        solve_left_full_rank(&self.basis, v)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }
}

fn index_of(basis: &IntMatrix) -> BigInt {
    smith_normal_form(basis).diagonal().iter().product()
}

/// `S⊥ = {v : v·s = 0 for all s ∈ S}`, always primitive.
pub fn orthogonal_complement(lattice: &IntegerLattice, s: &Sublattice) -> Sublattice {
    let a = s.basis.mul(lattice.gram()).unwrap();
    let k = kernel(&a, false);
    Sublattice { ambient: lattice.clone(), basis: k.basis, saturated: true }
}

/// Smallest primitive sublattice containing `s`.
pub fn saturate(lattice: &IntegerLattice, s: &Sublattice) -> Sublattice {
    if s.rank() == 0 {
        return Sublattice { ambient: lattice.clone(), basis: s.basis.clone(), saturated: true };
    }
    Sublattice { ambient: lattice.clone(), basis: saturate_rows(&s.basis), saturated: true }
}

pub fn is_primitive(v: &[BigInt]) -> bool {
    content(v).is_one()
}

/// Largest `k` with `v / k ∈ L*`: the gcd of the pairings of `v` with a basis.
pub fn imprimitivity_in_dual(lattice: &IntegerLattice, v: &[BigInt]) -> Result<BigInt> {
    if v.iter().all(Zero::is_zero) {
        return Err(Error::InvalidArgument("imprimitivity of the zero vector".into()));
    }
    let g = content(&lattice.pairings(v)?);
    if g.is_zero() {
        return Err(Error::InvalidArgument("vector lies in the radical".into()));
    }
    Ok(g)
}

/// `L / S` for a sublattice `S` contained in the radical of `L`.
#[derive(Clone, Debug)]
pub struct Quotient {
    /// Induced form on the free part of the quotient.
    pub lattice: IntegerLattice,
    /// Rows: lifts to `L` of the quotient basis.
    pub lift: IntMatrix,
    /// `rank(L) x rank(quotient)`: `xᵀ · projection` are the quotient
    /// coordinates of the class of `x`.
    pub projection: IntMatrix,
    /// Torsion of `L / S`; empty exactly when `S` is saturated.
    pub torsion: Vec<BigInt>,
}

pub fn quotient(lattice: &IntegerLattice, s: &Sublattice) -> Result<Quotient> {
    let r = lattice.rank();
    let gs = s.basis.mul(lattice.gram())?;
    if !gs.is_zero() {
        return Err(Error::InvalidArgument("quotient by a sublattice outside the radical".into()));
    }
    let k = s.rank();
    let (v, v_inv, torsion) = if k == 0 {
        (IntMatrix::identity(r), IntMatrix::identity(r), Vec::new())
    } else {
        let snf = smith_normal_form(&s.basis);
        let torsion = snf.diagonal().into_iter().filter(|d| !d.is_one()).collect();
        (snf.v, snf.v_inv, torsion)
    };
    // Rows of v_inv form a basis of Z^r whose first k rows span S ⊗ Q ∩ Z^r.
    let lift = v_inv.select_rows(k..r);
    let gram = lift.mul(lattice.gram())?.mul(&lift.transpose())?;
    let projection = v.select_cols(k..r);
    Ok(Quotient { lattice: IntegerLattice::new(gram)?, lift, projection, torsion })
}

impl Quotient {
    pub fn project(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.projection.vec_mul(x).expect("vector length matches ambient rank")
    }
}
