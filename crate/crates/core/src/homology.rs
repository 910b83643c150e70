//! Two-term complexes of free abelian groups `C0 → C1`, their homology and
//! chain maps between them.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::lattice::IntegerLattice;
use crate::linalg::{cokernel, invariant_factors, kernel, Cokernel, IntMatrix, Kernel};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoTermComplex {
    /// `c1 x c0` matrix of `∂: C0 → C1`.
    pub boundary: IntMatrix,
    /// Optional symmetric pairing on `C0`.
    pub form0: Option<IntMatrix>,
}

impl TwoTermComplex {
    pub fn new(boundary: IntMatrix, form0: Option<IntMatrix>) -> Result<Self> {
        if let Some(f) = &form0 {
            if f.nrows() != boundary.ncols() || f.ncols() != boundary.ncols() {
                return Err(Error::Dimension(format!(
                    "form on C0 is {}x{} but C0 has rank {}",
                    f.nrows(),
                    f.ncols(),
                    boundary.ncols()
                )));
            }
            if !f.is_symmetric() {
                return Err(Error::NotSymmetric);
            }
        }
        Ok(TwoTermComplex { boundary, form0 })
    }

    pub fn c0(&self) -> usize {
        self.boundary.ncols()
    }

    pub fn c1(&self) -> usize {
        self.boundary.nrows()
    }
}

#[derive(Clone, Debug)]
pub struct HomologyReport {
    kernel: Kernel,
    /// `H0` with the restriction of `form0`, when the complex carries one.
    pub h0_form: Option<IntegerLattice>,
    pub h1: Cokernel,
}

impl HomologyReport {
    /// Saturated basis of `H0 = ker ∂`, one vector per row.
    pub fn h0_basis(&self) -> &IntMatrix {
        &self.kernel.basis
    }

    pub fn h0_rank(&self) -> usize {
        self.kernel.dim()
    }

    pub fn h1_rank(&self) -> usize {
        self.h1.free_rank
    }

    pub fn h1_torsion(&self) -> &[BigInt] {
        &self.h1.torsion
    }

    /// Coordinates of a cycle in `h0_basis`.
    pub fn h0_coordinates(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        self.kernel.coordinates(x)
    }

    pub fn rank_of_boundary(&self) -> usize {
        self.kernel.rank_of_map
    }
}

pub fn homology(c: &TwoTermComplex) -> HomologyReport {
    let kernel = kernel(&c.boundary, true);
    let h0_form = c.form0.as_ref().map(|f| {
        let b = &kernel.basis;
        let g = b.mul(f).unwrap().mul(&b.transpose()).unwrap();
        IntegerLattice::new(g).expect("restricted form is symmetric")
    });
    HomologyReport { kernel, h0_form, h1: cokernel(&c.boundary) }
}

/// A pair `(f0, f1)` commuting with the boundaries: `f1 ∂ = ∂' f0`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: TwoTermComplex,
    pub target: TwoTermComplex,
    pub f0: IntMatrix,
    pub f1: IntMatrix,
}

impl ChainMap {
    pub fn new(source: TwoTermComplex, target: TwoTermComplex, f0: IntMatrix, f1: IntMatrix) -> Result<Self> {
        let shapes = [
            (f0.nrows(), target.c0()),
            (f0.ncols(), source.c0()),
            (f1.nrows(), target.c1()),
            (f1.ncols(), source.c1()),
        ];
        if shapes.iter().any(|(a, b)| a != b) {
            return Err(Error::Dimension("chain map components do not match the complexes".into()));
        }
        let lhs = f1.mul(&source.boundary)?;
        let rhs = target.boundary.mul(&f0)?;
        if lhs != rhs {
            return Err(Error::NotAChainMap);
        }
        Ok(ChainMap { source, target, f0, f1 })
    }

    pub fn identity(c: &TwoTermComplex) -> Self {
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            f0: IntMatrix::identity(c.c0()),
            f1: IntMatrix::identity(c.c1()),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ChainMap) -> Result<ChainMap> {
        ChainMap::new(self.source.clone(), other.target.clone(), other.f0.mul(&self.f0)?, other.f1.mul(&self.f1)?)
    }
}

#[derive(Clone, Debug)]
pub struct InducedMaps {
    /// Matrix of `H0(f)` in the saturated bases (`target rank x source rank`).
    pub h0: IntMatrix,
    pub source: HomologyReport,
    pub target: HomologyReport,
    /// `H1(f)` is onto.
    pub h1_surjective: bool,
}

impl InducedMaps {
    pub fn h0_bijective(&self) -> bool {
        self.h0.is_square() && self.h0.determinant().map(|d| d.abs().is_one()).unwrap_or(false)
    }

    pub fn h1_groups_isomorphic(&self) -> bool {
        self.source.h1 == self.target.h1
    }

    /// A surjection between isomorphic finitely generated abelian groups is
    /// an isomorphism, so these three checks decide quasi-isomorphism.
    pub fn is_quasi_iso(&self) -> bool {
        self.h0_bijective() && self.h1_groups_isomorphic() && self.h1_surjective
    }
}

pub fn induced_on_homology(f: &ChainMap) -> InducedMaps {
    let source = homology(&f.source);
    let target = homology(&f.target);
    let mut cols = Vec::with_capacity(source.h0_rank());
    for b in source.h0_basis().rows_iter() {
        let img = f.f0.mul_vec(b).expect("chain map shapes were checked");
        cols.push(target.h0_coordinates(&img).expect("chain maps send cycles to cycles"));
    }
    let h0 = IntMatrix::from_rows(cols, target.h0_rank()).expect("coordinate length").transpose();
    let h1_surjective = {
        let combined = f.f1.hstack(&f.target.boundary).expect("row counts agree");
        let fac = invariant_factors(&combined);
        fac.len() == f.target.c1() && fac.iter().all(One::is_one)
    };
    InducedMaps { h0, source, target, h1_surjective }
}

pub fn is_quasi_iso(f: &ChainMap) -> bool {
    induced_on_homology(f).is_quasi_iso()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rank, to_bigints};
    use num_traits::Zero;
    use proptest::prelude::*;

    fn cx(rows: &[&[i64]], c0: usize) -> TwoTermComplex {
        let m = if rows.is_empty() { IntMatrix::zeros(0, c0) } else { IntMatrix::from_i64(rows) };
        TwoTermComplex::new(m, None).unwrap()
    }

    #[test]
    fn zero_boundary() {
        let c = TwoTermComplex::new(IntMatrix::zeros(2, 3), None).unwrap();
        let h = homology(&c);
        assert_eq!(h.h0_rank(), 3);
        assert_eq!(h.h1_rank(), 2);
        assert!(h.h1_torsion().is_empty());
    }

    #[test]
    fn multiplication_by_two() {
        let h = homology(&cx(&[&[2]], 1));
        assert_eq!(h.h0_rank(), 0);
        assert_eq!((h.h1_rank(), h.h1_torsion().to_vec()), (0, to_bigints(&[2])));
    }

    #[test]
    fn diagonal_one_three() {
        let h = homology(&cx(&[&[1, 0], &[0, 3]], 2));
        assert_eq!((h.h0_rank(), h.h1_rank(), h.h1_torsion().to_vec()), (0, 0, to_bigints(&[3])));
    }

    #[test]
    fn identity_is_quasi_iso() {
        let c = cx(&[&[1, 2, 0], &[0, 0, 4]], 3);
        assert!(is_quasi_iso(&ChainMap::identity(&c)));
    }

    #[test]
    fn doubling_is_not_quasi_iso() {
        let c = cx(&[], 1);
        let f = ChainMap::new(c.clone(), c, IntMatrix::from_i64(&[&[2]]), IntMatrix::zeros(0, 0)).unwrap();
        let ind = induced_on_homology(&f);
        assert!(!ind.h0_bijective());
        assert!(!is_quasi_iso(&f));
    }

    #[test]
    fn non_commuting_maps_rejected() {
        let c = cx(&[&[1]], 1);
        let r = ChainMap::new(c.clone(), c, IntMatrix::from_i64(&[&[1]]), IntMatrix::from_i64(&[&[2]]));
        assert!(matches!(r, Err(Error::NotAChainMap)));
    }

    #[test]
    fn h1_map_that_is_not_onto() {
        // Z --0--> Z, and f1 = 2 on C1: H1 = Z in both but the map is doubling.
        let c = cx(&[&[0]], 1);
        let f = ChainMap::new(c.clone(), c, IntMatrix::from_i64(&[&[1]]), IntMatrix::from_i64(&[&[2]])).unwrap();
        let ind = induced_on_homology(&f);
        assert!(ind.h0_bijective() && ind.h1_groups_isomorphic());
        assert!(!ind.h1_surjective);
    }

    #[test]
    fn form_restricts_to_cycles() {
        let c = TwoTermComplex::new(
            IntMatrix::from_i64(&[&[1, 1, 0]]),
            Some(IntMatrix::from_i64(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, -1]])),
        )
        .unwrap();
        let h = homology(&c);
        let f = h.h0_form.unwrap();
        assert_eq!(f.rank(), 2);
        assert_eq!(f.determinant().abs(), BigInt::from(4));
    }

    fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
        proptest::collection::vec(-3i64..=3, rows * cols)
            .prop_map(move |v| IntMatrix::from_fn(rows, cols, |i, j| BigInt::from(v[i * cols + j])))
    }

    fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
        proptest::collection::vec((0..n, 0..n, -2i64..=2), 0..8).prop_map(move |ops| {
            let mut m = IntMatrix::identity(n);
            for (a, b, c) in ops {
                if a != b {
                    m.add_row_multiple(a, b, &BigInt::from(c));
                }
            }
            m
        })
    }

    proptest! {
        #[test]
        fn rank_identities(d in (0usize..4, 0usize..4).prop_flat_map(|(r, c)| small_matrix(r, c))) {
            let c = TwoTermComplex::new(d.clone(), None).unwrap();
            let h = homology(&c);
            let rk = rank(&d);
            prop_assert_eq!(h.h0_rank() + rk, c.c0());
            prop_assert_eq!(h.h1_rank() + rk, c.c1());
            for b in h.h0_basis().rows_iter() {
                prop_assert!(d.mul_vec(b).unwrap().iter().all(Zero::is_zero));
            }
        }

        /// Conjugating a complex by unimodular changes of basis gives
        /// isomorphisms, and composing two of them is again a quasi-isomorphism.
        #[test]
        fn composed_isomorphisms(
            d in small_matrix(3, 3),
            p0 in unimodular(3), p1 in unimodular(3), q0 in unimodular(3), q1 in unimodular(3),
        ) {
            let inv = |m: &IntMatrix| crate::linalg::smith_normal_form(m);
            let c = TwoTermComplex::new(d.clone(), None).unwrap();
            // c' has boundary p1 d p0⁻¹, and (p0, p1): c → c' is a chain isomorphism
            let p0i = { let s = inv(&p0); s.v.mul(&s.u).unwrap() };
            let q0i = { let s = inv(&q0); s.v.mul(&s.u).unwrap() };
            let c2 = TwoTermComplex::new(p1.mul(&d).unwrap().mul(&p0i).unwrap(), None).unwrap();
            let f = ChainMap::new(c.clone(), c2.clone(), p0.clone(), p1.clone()).unwrap();
            let c3 = TwoTermComplex::new(q1.mul(&c2.boundary).unwrap().mul(&q0i).unwrap(), None).unwrap();
            let g = ChainMap::new(c2, c3, q0.clone(), q1.clone()).unwrap();
            prop_assert!(is_quasi_iso(&f));
            prop_assert!(is_quasi_iso(&g));
            prop_assert!(is_quasi_iso(&f.then(&g).unwrap()));
        }

        #[test]
        fn isometric_f0_preserves_h0_form(d in small_matrix(2, 3), p in unimodular(3)) {
            // f0 = p is an isometry onto C0 with the form p⁻ᵀ F p⁻¹
            let form = IntMatrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -2]]);
            let s = crate::linalg::smith_normal_form(&p);
            let pi = s.v.mul(&s.u).unwrap();
            let moved = pi.transpose().mul(&form).unwrap().mul(&pi).unwrap();
            let c = TwoTermComplex::new(d.clone(), Some(form)).unwrap();
            let c2 = TwoTermComplex::new(d.mul(&pi).unwrap(), Some(moved)).unwrap();
            let f = ChainMap::new(c, c2, p, IntMatrix::identity(2)).unwrap();
            let ind = induced_on_homology(&f);
            let src = ind.source.h0_form.clone().unwrap();
            let tgt = ind.target.h0_form.clone().unwrap();
            let pulled = ind.h0.transpose().mul(tgt.gram()).unwrap().mul(&ind.h0).unwrap();
            prop_assert_eq!(&pulled, src.gram());
        }
    }
}
