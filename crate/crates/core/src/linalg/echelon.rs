//! Integer row echelon forms with unimodular transforms, and the saturated
//! kernels built from them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// Result of row-reducing a matrix `B` over the integers: `transform * B = echelon`.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    pub echelon: IntMatrix,
    pub transform: IntMatrix,
    /// Inverse of `transform`, present when requested.
    pub inverse: Option<IntMatrix>,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

/// Hermite-style row reduction. Pivots are made positive; entries above
/// pivots are not reduced (callers only need the rank profile).
pub fn row_echelon(b: &IntMatrix, track_inverse: bool) -> RowEchelon {
    let n = b.nrows();
    let m = b.ncols();
    let mut a = b.clone();
    let mut q = IntMatrix::identity(n);
    let mut qinv = track_inverse.then(|| IntMatrix::identity(n));
    let mut prow = 0;
    let mut pivot_cols = Vec::new();

    for col in 0..m {
        if prow == n {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for r in prow..n {
                let x = &a[(r, col)];
                if !x.is_zero() && best.is_none_or(|b| x.abs() < a[(b, col)].abs()) {
                    best = Some(r);
                }
            }
            let Some(bst) = best else { break };
            if bst != prow {
                a.swap_rows(bst, prow);
                q.swap_rows(bst, prow);
                if let Some(qi) = qinv.as_mut() {
                    qi.swap_cols(bst, prow);
                }
            }
            let mut clean = true;
            for r in prow + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].div_floor(&a[(prow, col)]);
                let neg = -&f;
                a.add_row_multiple(r, prow, &neg);
                q.add_row_multiple(r, prow, &neg);
                if let Some(qi) = qinv.as_mut() {
                    qi.add_col_multiple(prow, r, &f);
                }
                if !a[(r, col)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                if a[(prow, col)].is_negative() {
                    a.negate_row(prow);
                    q.negate_row(prow);
                    if let Some(qi) = qinv.as_mut() {
                        qi.negate_col(prow);
                    }
                }
                pivot_cols.push(col);
                prow += 1;
                break;
            }
        }
    }
    RowEchelon { echelon: a, transform: q, inverse: qinv, rank: prow, pivot_cols }
}

pub fn rank(a: &IntMatrix) -> usize {
    if a.nrows() <= a.ncols() {
        row_echelon(a, false).rank
    } else {
        row_echelon(&a.transpose(), false).rank
    }
}

/// Right kernel `{x : A x = 0}` of an integer matrix, with a saturated basis.
#[derive(Clone, Debug)]
pub struct Kernel {
    /// Basis vectors as rows (`dim x ncols(A)`).
    pub basis: IntMatrix,
    /// `ncols(A) x dim`: `x^T * coord_map` gives the coordinates of a kernel
    /// element `x` in `basis`. Only present when coordinates were requested.
    coord_map: Option<IntMatrix>,
    /// `ncols(A) x rank(A)`: `x^T * residual_map` vanishes exactly on the kernel.
    residual_map: Option<IntMatrix>,
    pub rank_of_map: usize,
}

impl Kernel {
    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    /// Coordinates of `x` in the kernel basis, or `None` when `x` is not in
    /// the kernel. Panics if the kernel was built without coordinates.
    pub fn coordinates(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let coord = self.coord_map.as_ref().expect("kernel built without coordinate map");
        let resid = self.residual_map.as_ref().expect("kernel built without coordinate map");
        if resid.ncols() > 0 && !resid.vec_mul(x).ok()?.iter().all(Zero::is_zero) {
            return None;
        }
        coord.vec_mul(x).ok()
    }
}

/// Saturated basis of the right kernel of `a`. The basis vectors are rows of
/// a unimodular matrix, so the span is automatically primitive.
pub fn kernel(a: &IntMatrix, with_coordinates: bool) -> Kernel {
    let n = a.ncols();
    let red = row_echelon(&a.transpose(), with_coordinates);
    let r = red.rank;
    let basis = red.transform.select_rows(r..n);
    let (coord_map, residual_map) = match red.inverse {
        Some(inv) => (Some(inv.select_cols(r..n)), Some(inv.select_cols(0..r))),
        None => (None, None),
    };
    Kernel { basis, coord_map, residual_map, rank_of_map: r }
}

/// Saturation of the row span of `rows` inside `Z^n`, as a basis (rows).
/// Computed as the kernel of the kernel, which is saturated by construction.
pub fn saturate_rows(rows: &IntMatrix) -> IntMatrix {
    let k = kernel(rows, false);
    kernel(&k.basis, false).basis
}

/// Solve `x^T * a = b^T` over the integers when `a` has full row rank, using
/// a fresh echelon of `a`. Returns `None` if no integral solution exists.
pub fn solve_left_full_rank(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    // x^T a = b^T  <=>  a^T x = b.
    let at = a.transpose();
    let red = row_echelon(a, false);
    if red.rank != a.nrows() {
        return None;
    }
    // Q a = E with E echelon, so a = Q^{-1} E and x^T Q^{-1} E = b^T.
    // Solve y^T E = b^T by forward substitution on pivot columns, then x^T = y^T Q.
    let e = &red.echelon;
    let mut y = vec![BigInt::zero(); a.nrows()];
    let mut resid = b.to_vec();
    for (i, &pc) in red.pivot_cols.iter().enumerate() {
        let p = &e[(i, pc)];
        let (quo, rem) = resid[pc].div_rem(p);
        if !rem.is_zero() {
            return None;
        }
        for (j, rj) in resid.iter_mut().enumerate() {
            let eij = &e[(i, j)];
            if !eij.is_zero() {
                *rj -= &quo * eij;
            }
        }
        y[i] = quo;
    }
    if !resid.iter().all(Zero::is_zero) {
        return None;
    }
    let x = red.transform.vec_mul(&y).ok()?;
    debug_assert_eq!(at.mul_vec(&x).ok()?, b.to_vec());
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::to_bigints;

    #[test]
    fn kernel_of_simple_map() {
        let a = IntMatrix::from_i64(&[&[1, 1, 0], &[0, 2, 2]]);
        let k = kernel(&a, true);
        assert_eq!(k.dim(), 1);
        let v = k.basis.row(0).to_vec();
        assert!(a.mul_vec(&v).unwrap().iter().all(Zero::is_zero));
        let c = k.coordinates(&v).unwrap();
        assert_eq!(c.len(), 1);
        assert!(k.coordinates(&to_bigints(&[1, 0, 0])).is_none());
    }

    #[test]
    fn kernel_basis_is_saturated() {
        // x + 2y + 4z = 0 has a saturated kernel of rank 2.
        let a = IntMatrix::from_i64(&[&[2, 4, 8]]);
        let k = kernel(&a, false);
        assert_eq!(k.dim(), 2);
        let sat = saturate_rows(&k.basis);
        assert_eq!(rank(&sat.vstack(&k.basis).unwrap()), 2);
        // (−2, 1, 0) must be an integer combination.
        let target = to_bigints(&[-2, 1, 0]);
        assert!(solve_left_full_rank(&k.basis, &target).is_some());
    }

    #[test]
    fn saturation_of_index_two_span() {
        let s = IntMatrix::from_i64(&[&[1, 1], &[1, -1]]);
        let sat = saturate_rows(&s);
        assert_eq!(sat.nrows(), 2);
        assert_eq!(sat.determinant().unwrap().abs(), BigInt::from(1));
    }

    #[test]
    fn solve_rejects_non_integral() {
        let a = IntMatrix::from_i64(&[&[2, 0]]);
        assert!(solve_left_full_rank(&a, &to_bigints(&[1, 0])).is_none());
        assert_eq!(solve_left_full_rank(&a, &to_bigints(&[4, 0])).unwrap(), to_bigints(&[2]));
    }

    #[test]
    fn empty_shapes() {
        let a = IntMatrix::zeros(0, 3);
        let k = kernel(&a, true);
        assert_eq!(k.dim(), 3);
        let b = IntMatrix::zeros(2, 0);
        assert_eq!(kernel(&b, true).dim(), 0);
    }
}
