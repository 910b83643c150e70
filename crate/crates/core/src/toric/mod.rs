//! Smooth complete toric surfaces given by fans, toric blow-ups, ordered
//! toric models, and the gluing and period complexes of a Type III
//! configuration built from them.

mod gluing;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::kulikov::{BoundaryKind, PairData};
use crate::lattice::{quotient, IntegerLattice, LatticeVector, Sublattice};
use crate::linalg::{kernel, rank, IntMatrix};

pub use gluing::{
    gluing_complex, intermediate_complex, independent_h0_form, period_complex, GluingComplexData, IntermediateComplex,
};

pub type Ray = [i64; 2];

fn det(a: Ray, b: Ray) -> i128 {
    a[0] as i128 * b[1] as i128 - a[1] as i128 * b[0] as i128
}

/// Cyclically ordered (counterclockwise) rays of a smooth complete fan.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ToricPairFan {
    rays: Vec<Ray>,
    pub label: Option<String>,
}

impl ToricPairFan {
    pub fn new(rays: Vec<Ray>) -> Result<Self> {
        let n = rays.len();
        if n < 3 {
            return Err(Error::InvalidArgument(format!("a complete fan needs at least 3 rays, got {n}")));
        }
        for (j, r) in rays.iter().enumerate() {
            if r[0].gcd(&r[1]) != 1 {
                return Err(Error::InvalidArgument(format!("ray {j} = {r:?} is not primitive")));
            }
        }
        for j in 0..n {
            let d = det(rays[j], rays[(j + 1) % n]);
            if d != 1 {
                return Err(Error::InvalidArgument(format!(
                    "rays {j} and {} span a cone of determinant {d}, expected 1",
                    (j + 1) % n
                )));
            }
        }
        // Each step turns by less than π, so the number of entries into the
        // half-plane {y > 0} ∪ {y = 0, x > 0} is the winding number.
        let upper = |r: Ray| r[1] > 0 || (r[1] == 0 && r[0] > 0);
        let winding = (0..n).filter(|&j| !upper(rays[j]) && upper(rays[(j + 1) % n])).count();
        if winding != 1 {
            return Err(Error::InvalidArgument(format!("rays wind {winding} times around the origin")));
        }
        Ok(ToricPairFan { rays, label: None })
    }

    /// The fan whose boundary curves have the given self-intersections,
    /// starting from rays `(1,0), (0,1)`.
    pub fn from_self_intersections(self_ints: &[i64]) -> Result<Self> {
        let n = self_ints.len();
        if n < 3 {
            return Err(Error::InvalidArgument(format!("a complete fan needs at least 3 rays, got {n}")));
        }
        let mut rays: Vec<Ray> = vec![[1, 0], [0, 1]];
        let overflow = || Error::Overflow("fan reconstruction");
        // v_{j+1} = −D_j² v_j − v_{j−1}
        for j in 1..=n {
            let a = -self_ints[j % n];
            let (p, c) = (rays[j - 1], rays[j]);
            let next = [
                a.checked_mul(c[0]).and_then(|x| x.checked_sub(p[0])).ok_or_else(overflow)?,
                a.checked_mul(c[1]).and_then(|x| x.checked_sub(p[1])).ok_or_else(overflow)?,
            ];
            rays.push(next);
        }
        if rays[n] != rays[0] || rays[n + 1] != rays[1] {
            return Err(Error::InvalidArgument(format!("self-intersections {self_ints:?} do not close up to a fan")));
        }
        rays.truncate(n);
        Self::new(rays)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    /// `a_j` with `v_{j−1} + v_{j+1} = a_j v_j`; the boundary curve `D_j` has
    /// self-intersection `−a_j`.
    pub fn a_coefficients(&self) -> Vec<i64> {
        let n = self.rays.len();
        (0..n)
            .map(|j| {
                let (p, c, q) = (self.rays[(j + n - 1) % n], self.rays[j], self.rays[(j + 1) % n]);
                let w = [p[0] as i128 + q[0] as i128, p[1] as i128 + q[1] as i128];
                let a = if c[0] != 0 { w[0] / c[0] as i128 } else { w[1] / c[1] as i128 };
                a as i64
            })
            .collect()
    }

    pub fn self_intersections(&self) -> Vec<i64> {
        self.a_coefficients().into_iter().map(|a| -a).collect()
    }

    /// Inserts the ray `v_j + v_{j+1}` (the blow-up of the corner `D_j ∩ D_{j+1}`).
    pub fn corner_blowup(&self, j: usize) -> Result<ToricPairFan> {
        let n = self.rays.len();
        if j >= n {
            return Err(Error::InvalidArgument(format!("corner {j} out of range for {n} rays")));
        }
        let (a, b) = (self.rays[j], self.rays[(j + 1) % n]);
        let sum = [
            a[0].checked_add(b[0]).ok_or(Error::Overflow("corner blow-up"))?,
            a[1].checked_add(b[1]).ok_or(Error::Overflow("corner blow-up"))?,
        ];
        let mut rays = self.rays.clone();
        rays.insert(j + 1, sum);
        Ok(ToricPairFan { rays, label: self.label.as_ref().map(|l| format!("{l}+corner{j}")) })
    }
}

/// Toric intersection data: `Pic` as the quotient of `⊕ Z D_j` by the
/// radical of the divisor pairing, together with the classes of the `D_j`.
pub struct ToricPic {
    pub lattice: IntegerLattice,
    pub boundary: Vec<LatticeVector>,
}

pub fn toric_pic(fan: &ToricPairFan) -> Result<ToricPic> {
    let n = fan.len();
    let s = fan.self_intersections();
    let mut g = IntMatrix::zeros(n, n);
    for j in 0..n {
        g[(j, j)] = BigInt::from(s[j]);
        let k = (j + 1) % n;
        g[(j, k)] = BigInt::from(1);
        g[(k, j)] = BigInt::from(1);
    }
    let divisors = IntegerLattice::new(g.clone())?;
    // The linear relations Σ ⟨m, v_j⟩ D_j = 0 span the radical.
    let radical = kernel(&g, false);
    if radical.dim() != 2 {
        return Err(Error::Validation(format!("divisor pairing has a radical of rank {}", radical.dim())));
    }
    let rel = IntMatrix::from_fn(2, n, |i, j| BigInt::from(fan.rays[j][i]));
    if !g.mul(&rel.transpose())?.is_zero() {
        return Err(Error::Validation("linear relations of the fan are not numerically trivial".into()));
    }
    let sub = Sublattice::from_matrix(&divisors, radical.basis)?;
    let q = quotient(&divisors, &sub)?;
    let boundary: Vec<LatticeVector> =
        (0..n).map(|j| LatticeVector::new(q.project(&LatticeVector::basis(n, j)))).collect();

    // Cross-check: the degrees L ↦ (L·D_j) of Pic land exactly in ker(D_j ↦ v_j).
    let degrees = IntMatrix::from_rows(
        boundary.iter().map(|b| q.lattice.pairings(b)).collect::<Result<Vec<_>>>()?,
        q.lattice.rank(),
    )?;
    let to_n = IntMatrix::from_fn(2, n, |i, j| BigInt::from(fan.rays[j][i]));
    if !to_n.mul(&degrees)?.is_zero() || rank(&degrees) != n - 2 {
        return Err(Error::Validation("toric degree map does not match the fan".into()));
    }
    Ok(ToricPic { lattice: q.lattice, boundary })
}

/// `(V̄, D̄)` for a smooth complete fan. The charge is always 0.
pub fn pair_from_fan(fan: &ToricPairFan) -> Result<PairData> {
    let pic = toric_pic(fan)?;
    let mut p = PairData::new(pic.lattice, pic.boundary, BoundaryKind::CycleOfRationals, 1)?;
    p.label = fan.label.clone();
    Ok(p)
}

/// A toric pair followed by an ordered sequence of internal blow-ups, each
/// recorded by the index of the boundary curve it lies on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderedToricModel {
    pub base: ToricPairFan,
    pub blowups: Vec<usize>,
}

impl OrderedToricModel {
    pub fn new(base: ToricPairFan, blowups: Vec<usize>) -> Result<Self> {
        if let Some(&j) = blowups.iter().find(|&&j| j >= base.len()) {
            return Err(Error::InvalidArgument(format!("blow-up on edge {j} of a fan with {} rays", base.len())));
        }
        Ok(OrderedToricModel { base, blowups })
    }

    pub fn internal_blowup(&self, j: usize) -> Result<OrderedToricModel> {
        let mut blowups = self.blowups.clone();
        blowups.push(j);
        Self::new(self.base.clone(), blowups)
    }

    /// Number of internal blow-ups, which is the charge of the resulting pair.
    pub fn charge(&self) -> usize {
        self.blowups.len()
    }

    /// `H² = Pic(V̄) ⊕ ⟨−1⟩^Q` with `D_j = π*D̄_j − Σ_{k on j} E_k`.
    pub fn pair_data(&self) -> Result<PairData> {
        let pic = toric_pic(&self.base)?;
        let q = self.blowups.len();
        let r = pic.lattice.rank();
        let minus_ones = IntMatrix::diagonal(&vec![BigInt::from(-1); q]);
        let h2 = IntegerLattice::new(IntMatrix::block_diag(&[pic.lattice.gram(), &minus_ones]))?;
        let boundary = pic
            .boundary
            .iter()
            .enumerate()
            .map(|(j, b)| {
                let mut c = b.coords.clone();
                c.extend((0..q).map(|k| if self.blowups[k] == j { BigInt::from(-1) } else { BigInt::zero() }));
                LatticeVector::new(c)
            })
            .collect();
        let mut p = PairData::new(h2, boundary, BoundaryKind::CycleOfRationals, 1)?;
        debug_assert_eq!(p.h2.rank(), r + q);
        p.label = self.base.label.clone();
        p.toric_model = Some(self.clone());
        Ok(p)
    }

    /// Index of the first exceptional class in the `H²` basis of `pair_data`.
    pub fn exceptional_offset(&self) -> usize {
        self.base.len() - 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kulikov::charge;
    use crate::lattice::Signature;
    use proptest::prelude::*;

    fn p2() -> ToricPairFan {
        ToricPairFan::new(vec![[1, 0], [0, 1], [-1, -1]]).unwrap()
    }

    fn p1p1() -> ToricPairFan {
        ToricPairFan::new(vec![[1, 0], [0, 1], [-1, 0], [0, -1]]).unwrap()
    }

    #[test]
    fn projective_plane() {
        let p = pair_from_fan(&p2()).unwrap();
        assert_eq!(p.self_ints, vec![1, 1, 1]);
        assert_eq!(charge(&p).unwrap(), 0);
        assert!(p.check().is_empty(), "{:?}", p.check());
    }

    #[test]
    fn quadric() {
        let p = pair_from_fan(&p1p1()).unwrap();
        assert_eq!(p.self_ints, vec![0; 4]);
        assert_eq!(charge(&p).unwrap(), 0);
        assert_eq!(p.h2.signature(), Signature { positive: 1, negative: 1, zero: 0 });
    }

    #[test]
    fn blown_up_plane() {
        let f = p2().corner_blowup(0).unwrap();
        assert_eq!(f.len(), 4);
        let mut s = f.self_intersections();
        // rotate so the pattern can be compared
        let pos = s.iter().position(|&x| x == -1).unwrap();
        s.rotate_left(pos);
        assert_eq!(s, vec![-1, 0, 1, 0]);
        assert_eq!(charge(&pair_from_fan(&f).unwrap()).unwrap(), 0);
        let f5 = f.corner_blowup(1).unwrap();
        assert_eq!(f5.len(), 5);
        assert_eq!(charge(&pair_from_fan(&f5).unwrap()).unwrap(), 0);
    }

    #[test]
    fn rejects_bad_fans() {
        assert!(ToricPairFan::new(vec![[1, 0], [0, 1]]).is_err());
        assert!(ToricPairFan::new(vec![[2, 0], [0, 1], [-1, -1]]).is_err());
        assert!(ToricPairFan::new(vec![[1, 0], [1, 1], [0, 1], [-1, -1]]).is_ok());
        assert!(ToricPairFan::new(vec![[1, 0], [-1, -1], [0, 1]]).is_err());
        // winds twice
        let twice: Vec<Ray> = [[1, 0], [0, 1], [-1, -1]].iter().cycle().take(6).copied().collect();
        assert!(ToricPairFan::new(twice).is_err());
    }

    #[test]
    fn internal_blowups_raise_charge() {
        let m = OrderedToricModel::new(p1p1(), vec![]).unwrap();
        let m1 = m.internal_blowup(0).unwrap();
        let p = m1.pair_data().unwrap();
        assert_eq!(charge(&p).unwrap(), 1);
        assert_eq!(p.self_ints[0], -1);
        let e = LatticeVector::basis(p.h2.rank(), m1.exceptional_offset());
        assert_eq!(p.h2.norm(&e).unwrap(), BigInt::from(-1));
        assert_eq!(p.h2.pair(&e, &p.boundary[0]).unwrap(), BigInt::from(1));
        let m4 = OrderedToricModel::new(p1p1(), vec![0, 1, 2, 3]).unwrap();
        let p4 = m4.pair_data().unwrap();
        assert_eq!(charge(&p4).unwrap(), 4);
        assert_eq!(p4.self_ints, vec![-1; 4]);
        assert!(p4.check().is_empty());
        assert!(m.internal_blowup(4).is_err());
    }

    #[test]
    fn fan_from_self_intersections_round_trips() {
        let s = vec![0, -1, -1, -2, -1, -1, 0];
        let f = ToricPairFan::from_self_intersections(&s);
        // 7 rays must satisfy Σa = 3·7 − 12 = 9; these sum to 6 so fail
        assert!(f.is_err());
        let f = ToricPairFan::from_self_intersections(&[-1, -1, -1, -1, -1, -1]).unwrap();
        assert_eq!(f.self_intersections(), vec![-1; 6]);
        assert!(ToricPairFan::from_self_intersections(&[1, 1]).is_err());
    }

    fn random_fan() -> impl Strategy<Value = ToricPairFan> {
        proptest::collection::vec(0usize..16, 0..8).prop_map(|corners| {
            let mut f = ToricPairFan::new(vec![[1, 0], [0, 1], [-1, 0], [0, -1]]).unwrap();
            for c in corners {
                f = f.corner_blowup(c % f.len()).unwrap();
            }
            f
        })
    }

    proptest! {
        #[test]
        fn toric_identities(f in random_fan(), edge in 0usize..16) {
            let a: i64 = f.a_coefficients().iter().sum();
            prop_assert_eq!(a, 3 * f.len() as i64 - 12);
            let p = pair_from_fan(&f).unwrap();
            prop_assert_eq!(charge(&p).unwrap(), 0);
            prop_assert!(p.h2.is_unimodular());
            prop_assert_eq!(p.h2.signature(), Signature { positive: 1, negative: f.len() - 3, zero: 0 });
            let back = ToricPairFan::from_self_intersections(&f.self_intersections()).unwrap();
            prop_assert_eq!(back.self_intersections(), f.self_intersections());
            let c = f.corner_blowup(edge % f.len()).unwrap();
            prop_assert_eq!(charge(&pair_from_fan(&c).unwrap()).unwrap(), 0);
            let m = OrderedToricModel::new(f.clone(), vec![]).unwrap().internal_blowup(edge % f.len()).unwrap();
            let pm = m.pair_data().unwrap();
            prop_assert_eq!(charge(&pm).unwrap(), 1);
            prop_assert_eq!(pm.self_ints[edge % f.len()], p.self_ints[edge % f.len()] - 1);
            prop_assert!(pm.check().is_empty());
        }
    }
}
