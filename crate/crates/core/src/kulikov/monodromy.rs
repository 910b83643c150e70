use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{is_primitive, orthogonal_complement, quotient, IntegerLattice, LatticeVector, Sublattice};
use crate::linalg::{content, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DegenerationType {
    I,
    II,
    III,
}

/// A primitive isotropic `δ` and a `λ ⊥ δ` in an even lattice.
#[derive(Clone, Debug)]
pub struct MonodromyData {
    pub ambient: IntegerLattice,
    pub delta: LatticeVector,
    pub lambda: LatticeVector,
}

impl MonodromyData {
    pub fn new(ambient: IntegerLattice, delta: LatticeVector, lambda: LatticeVector) -> Result<Self> {
        if ambient.norm(&delta)? != BigInt::zero() {
            return Err(Error::InvalidArgument("δ is not isotropic".into()));
        }
        if !is_primitive(&delta) {
            return Err(Error::InvalidArgument("δ is not primitive".into()));
        }
        if !ambient.pair(&delta, &lambda)?.is_zero() {
            return Err(Error::InvalidArgument("λ is not orthogonal to δ".into()));
        }
        Ok(MonodromyData { ambient, delta, lambda })
    }

    /// `t = λ²`.
    pub fn t(&self) -> BigInt {
        self.ambient.norm(&self.lambda).unwrap()
    }

    /// Class of `λ` in `δ⊥/δ`, in a basis of that quotient.
    pub fn lambda_class(&self) -> Result<Vec<BigInt>> {
        let l = &self.ambient;
        let zd = Sublattice::new(l, vec![self.delta.clone()])?;
        let perp = orthogonal_complement(l, &zd);
        let coords = perp.coordinates(&self.lambda).ok_or_else(|| Error::InvalidArgument("λ is not in δ⊥".into()))?;
        let perp_lattice = perp.induced();
        let delta_coords = perp.coordinates(&self.delta).expect("δ is isotropic");
        let sub = Sublattice::new(&perp_lattice, vec![LatticeVector::new(delta_coords)])?;
        Ok(quotient(&perp_lattice, &sub)?.project(&coords))
    }

    /// `k`: imprimitivity of `λ` in `δ⊥/δ`; `None` when `λ ∈ Zδ`.
    pub fn k(&self) -> Result<Option<BigInt>> {
        let c = content(&self.lambda_class()?);
        Ok((!c.is_zero()).then_some(c))
    }
}

/// `N x = (x·λ) δ − (x·δ) λ`, as a matrix acting on column vectors.
pub fn monodromy_operator(m: &MonodromyData) -> IntMatrix {
    let gl = m.ambient.pairings(&m.lambda).unwrap();
    let gd = m.ambient.pairings(&m.delta).unwrap();
    let n = m.ambient.rank();
    IntMatrix::from_fn(n, n, |i, j| &m.delta[i] * &gl[j] - &m.lambda[i] * &gd[j])
}

/// `T = I + N + N²/2`. Requires `λ²` even, which holds in even lattices.
pub fn picard_lefschetz_t(m: &MonodromyData) -> Result<IntMatrix> {
    let n = monodromy_operator(m);
    let n2 = n.mul(&n)?;
    let two = BigInt::from(2);
    if n2.rows_iter().flatten().any(|x| !x.is_multiple_of(&two)) {
        return Err(Error::InvalidArgument("N²/2 is not integral (λ² is odd)".into()));
    }
    let half = IntMatrix::from_fn(n2.nrows(), n2.ncols(), |i, j| &n2[(i, j)] / &two);
    IntMatrix::identity(n.nrows()).add(&n)?.add(&half)
}

pub fn classify_type(m: &MonodromyData) -> Result<DegenerationType> {
    if m.lambda_class()?.iter().all(Zero::is_zero) {
        return Ok(DegenerationType::I);
    }
    let t = m.t();
    if t.is_zero() {
        Ok(DegenerationType::II)
    } else if t.is_positive() {
        Ok(DegenerationType::III)
    } else {
        Err(Error::InvalidArgument(format!("λ² = {t} is negative")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::hyperbolic;

    fn hh() -> IntegerLattice {
        hyperbolic().direct_sum(&hyperbolic())
    }

    fn data(l: &[i64]) -> MonodromyData {
        MonodromyData::new(hh(), LatticeVector::from_i64(&[1, 0, 0, 0]), LatticeVector::from_i64(l)).unwrap()
    }

    #[test]
    fn trivial_lambda() {
        let m = data(&[0, 0, 0, 0]);
        assert!(monodromy_operator(&m).is_zero());
        assert_eq!(classify_type(&m).unwrap(), DegenerationType::I);
        assert_eq!(m.k().unwrap(), None);
    }

    #[test]
    fn type_three_in_h_plus_h() {
        let m = data(&[0, 0, 1, 1]);
        let n = monodromy_operator(&m);
        let n2 = n.mul(&n).unwrap();
        assert!(!n2.is_zero());
        assert!(n2.mul(&n).unwrap().is_zero());
        assert_eq!(classify_type(&m).unwrap(), DegenerationType::III);
        assert_eq!(m.t(), BigInt::from(2));
    }

    #[test]
    fn type_two_in_h_plus_h() {
        let m = data(&[0, 0, 1, 0]);
        let n = monodromy_operator(&m);
        assert!(!n.is_zero());
        assert!(n.mul(&n).unwrap().is_zero());
        assert_eq!(classify_type(&m).unwrap(), DegenerationType::II);
        assert_eq!(m.k().unwrap(), Some(BigInt::from(1)));
        assert_eq!(data(&[0, 0, 3, 0]).k().unwrap(), Some(BigInt::from(3)));
        // λ = δ is trivial modulo δ
        assert_eq!(classify_type(&data(&[2, 0, 0, 0])).unwrap(), DegenerationType::I);
    }

    #[test]
    fn rejects_bad_data() {
        let l = hh();
        let e = LatticeVector::from_i64;
        assert!(MonodromyData::new(l.clone(), e(&[1, 1, 0, 0]), e(&[0, 0, 0, 0])).is_err());
        assert!(MonodromyData::new(l.clone(), e(&[2, 0, 0, 0]), e(&[0, 0, 0, 0])).is_err());
        assert!(MonodromyData::new(l, e(&[1, 0, 0, 0]), e(&[0, 1, 0, 0])).is_err());
    }
}
