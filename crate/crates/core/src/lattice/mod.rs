//! Integral lattices given by Gram matrices, and the standard operations on
//! them: sums, twists, signatures, sublattices, discriminant groups, roots.

mod discriminant;
mod named;
mod roots;
mod sublattice;

use std::fmt;
use std::ops::Deref;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{dot, inertia, IntMatrix};

pub use crate::linalg::Inertia as Signature;
pub use discriminant::{discriminant_group, DiscriminantGroup};
pub use named::{a2, diagonal, e8, hyperbolic, hyperbolic_twisted, k3_lattice, l2d, parse_lattice_name, rank_one};
pub use roots::{reflect, roots, vectors_of_norm};
pub use sublattice::{imprimitivity_in_dual, is_primitive, orthogonal_complement, quotient, saturate, Quotient, Sublattice};

/// A free module `Z^rank` with a symmetric integral bilinear form.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerLattice {
    gram: IntMatrix,
    label: Option<String>,
    det: BigInt,
    even: bool,
}

impl IntegerLattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::Dimension(format!("Gram matrix is {}x{}", gram.nrows(), gram.ncols())));
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let det = gram.determinant()?;
        let even = (0..gram.nrows()).all(|i| gram[(i, i)].is_even());
        Ok(IntegerLattice { gram, label: None, det, even })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(IntMatrix::from_i64(rows))
    }

    /// The rank-0 lattice, the neutral element of `⊕`.
    pub fn zero() -> Self {
        Self::new(IntMatrix::zeros(0, 0)).expect("empty Gram matrix")
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.gram.nrows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn determinant(&self) -> &BigInt {
        &self.det
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.det.is_zero()
    }

    pub fn is_unimodular(&self) -> bool {
        self.det.abs() == BigInt::from(1)
    }

    pub fn signature(&self) -> Signature {
        inertia(&self.gram)
    }

    pub fn is_negative_definite(&self) -> bool {
        self.signature().negative == self.rank()
    }

    fn check_len(&self, v: &[BigInt]) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::Dimension(format!("vector of length {} in a rank {} lattice", v.len(), self.rank())));
        }
        Ok(())
    }

    pub fn pair(&self, u: &[BigInt], v: &[BigInt]) -> Result<BigInt> {
        self.check_len(u)?;
        self.check_len(v)?;
        Ok(dot(u, &self.gram.mul_vec(v)?))
    }

    pub fn norm(&self, v: &[BigInt]) -> Result<BigInt> {
        self.pair(v, v)
    }

    /// `v ↦ G v`: the pairings of `v` with the basis vectors.
    pub fn pairings(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        self.check_len(v)?;
        self.gram.mul_vec(v)
    }

    pub fn direct_sum(&self, other: &IntegerLattice) -> IntegerLattice {
        let gram = IntMatrix::block_diag(&[&self.gram, &other.gram]);
        let label = match (&self.label, &other.label) {
            (Some(a), Some(b)) => Some(format!("{a}+{b}")),
            (Some(a), None) if other.rank() == 0 => Some(a.clone()),
            (None, Some(b)) if self.rank() == 0 => Some(b.clone()),
            _ => None,
        };
        IntegerLattice { gram, label, det: &self.det * &other.det, even: self.even && other.even }
    }

    pub fn direct_sum_all<'a>(parts: impl IntoIterator<Item = &'a IntegerLattice>) -> IntegerLattice {
        let parts: Vec<&IntegerLattice> = parts.into_iter().collect();
        let grams: Vec<&IntMatrix> = parts.iter().map(|p| &p.gram).collect();
        let labels: Option<Vec<&str>> = parts.iter().map(|p| p.label.as_deref()).collect();
        IntegerLattice {
            gram: IntMatrix::block_diag(&grams),
            label: labels.filter(|l| !l.is_empty()).map(|l| l.join("+")),
            det: parts.iter().fold(BigInt::one(), |acc, p| acc * &p.det),
            even: parts.iter().all(|p| p.even),
        }
    }

    /// `L(n)`: the same module with the form multiplied by `n`.
    pub fn twist(&self, n: &BigInt) -> Result<IntegerLattice> {
        if !n.is_positive() {
            return Err(Error::InvalidArgument(format!("twist factor must be positive, got {n}")));
        }
        let label = self.label.as_ref().map(|l| format!("{l}({n})"));
        let mut out = IntegerLattice::new(self.gram.scale(n))?;
        out.label = label;
        Ok(out)
    }
}

impl fmt::Debug for IntegerLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IntegerLattice")
            .field("label", &self.label)
            .field("rank", &self.rank())
            .field("det", &self.det.to_string())
            .field("gram", &self.gram)
            .finish()
    }
}

/// Coordinates of a lattice element in the lattice basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    pub coords: Vec<BigInt>,
}

impl LatticeVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatticeVector { coords }
    }

    pub fn from_i64(v: &[i64]) -> Self {
        LatticeVector { coords: v.iter().map(|&x| BigInt::from(x)).collect() }
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector { coords: vec![BigInt::zero(); rank] }
    }

    pub fn basis(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.coords[i] = BigInt::from(1);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> Self {
        LatticeVector { coords: self.coords.iter().map(|x| -x).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        LatticeVector { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        LatticeVector { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        LatticeVector { coords: self.coords.iter().map(|x| x * c).collect() }
    }
}

impl Deref for LatticeVector {
    type Target = [BigInt];
    fn deref(&self) -> &[BigInt] {
        &self.coords
    }
}

impl From<Vec<BigInt>> for LatticeVector {
    fn from(coords: Vec<BigInt>) -> Self {
        LatticeVector { coords }
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}
