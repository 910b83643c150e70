use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// Inertia of a symmetric matrix: counts of positive, negative and zero
/// eigenvalues, computed by exact symmetric elimination over the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

pub fn inertia(gram: &IntMatrix) -> Inertia {
    assert!(gram.is_symmetric(), "inertia of a non-symmetric matrix");
    let n = gram.nrows();
    let mut a: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..n).map(|j| BigRational::from_integer(gram[(i, j)].clone())).collect()).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg) = (0, 0);

    while !active.is_empty() {
        let pivot = match active.iter().copied().find(|&i| !a[i][i].is_zero()) {
            Some(p) => p,
            None => {
                let pair = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[i][j].is_zero());
                let Some((i, j)) = pair else { break };
                // e_i += e_j: a_ii becomes 2 a_ij since both diagonals vanish
                for k in 0..n {
                    let v = a[j][k].clone();
                    a[i][k] += v;
                }
                for k in 0..n {
                    let v = a[k][j].clone();
                    a[k][i] += v;
                }
                i
            }
        };
        let d = a[pivot][pivot].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&x| x != pivot);
        let prow = a[pivot].clone();
        for &r in &active {
            if a[r][pivot].is_zero() {
                continue;
            }
            let f = &a[r][pivot] / &d;
            for &s in &active {
                if !prow[s].is_zero() {
                    let delta = &f * &prow[s];
                    a[r][s] -= delta;
                }
            }
            a[r][pivot] = BigRational::zero();
        }
        for &r in &active {
            a[pivot][r] = BigRational::zero();
        }
    }
    Inertia { positive: pos, negative: neg, zero: n - pos - neg }
}

/// Solve `a x = b` over the rationals, returning one solution if any exists.
pub fn solve_rational(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigRational>> {
    let (rows, cols) = (a.nrows(), a.ncols());
    assert_eq!(rows, b.len());
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            let mut r: Vec<BigRational> = a.row(i).iter().cloned().map(BigRational::from_integer).collect();
            r.push(BigRational::from_integer(b[i].clone()));
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut prow = 0;
    for col in 0..cols {
        let Some(p) = (prow..rows).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(p, prow);
        let inv = m[prow][col].recip();
        for x in m[prow].iter_mut() {
            *x *= &inv;
        }
        let pr = m[prow].clone();
        for r in 0..rows {
            if r != prow && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for (x, y) in m[r].iter_mut().zip(&pr) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(col);
        prow += 1;
        if prow == rows {
            break;
        }
    }
    if m[prow..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}
