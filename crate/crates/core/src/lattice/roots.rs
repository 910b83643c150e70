use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{IntegerLattice, LatticeVector};
use crate::error::{Error, Result};

/// All `x` with `x² = −m` in a negative definite lattice (`m > 0`), by
/// Fincke–Pohst enumeration on the positive definite form `−G`.
///
/// Output is deterministic: vectors whose first nonzero coordinate is
/// positive, in lexicographic order, each followed by its negative.
pub fn vectors_of_norm(lattice: &IntegerLattice, m: &BigInt) -> Result<Vec<LatticeVector>> {
    if !m.is_positive() {
        return Err(Error::InvalidArgument(format!("norm bound must be positive, got {m}")));
    }
    if !lattice.is_negative_definite() {
        return Err(Error::NotNegativeDefinite);
    }
    let n = lattice.rank();
    let g = lattice.gram();
    let mut q: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..n).map(|j| BigRational::from_integer(-&g[(i, j)])).collect()).collect();
    // x·Ax = Σ q_ii (x_i + Σ_{j>i} q_ij x_j)²
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let t = &q[k][i] * &q[i][l];
                q[k][l] -= t;
            }
        }
    }

    let mut found = Vec::new();
    let mut x = vec![BigInt::zero(); n];
    let target = BigRational::from_integer(m.clone());
    if n > 0 {
        search(&q, n - 1, &target, &mut x, &mut found);
    }
    let mut half: Vec<LatticeVector> = found
        .into_iter()
        .filter(|v: &Vec<BigInt>| v.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_positive()))
        .map(LatticeVector::new)
        .collect();
    half.sort();
    Ok(half.into_iter().flat_map(|v| [v.neg(), v].into_iter().rev()).collect())
}

fn search(q: &[Vec<BigRational>], i: usize, remaining: &BigRational, x: &mut [BigInt], out: &mut Vec<Vec<BigInt>>) {
    let n = x.len();
    let mut center = BigRational::zero();
    for j in i + 1..n {
        if !x[j].is_zero() {
            center -= &q[i][j] * BigRational::from_integer(x[j].clone());
        }
    }
    let qii = &q[i][i];
    let radius: BigInt = Roots::sqrt(&(remaining / qii).floor().to_integer()) + 1;
    let lo = center.floor().to_integer() - &radius;
    let hi = center.ceil().to_integer() + &radius;
    let mut xi = lo;
    while xi <= hi {
        let diff = BigRational::from_integer(xi.clone()) - &center;
        let used = qii * &diff * &diff;
        if used <= *remaining {
            x[i] = xi.clone();
            let rest = remaining - &used;
            if i == 0 {
                if rest.is_zero() {
                    out.push(x.to_vec());
                }
            } else {
                search(q, i - 1, &rest, x, out);
            }
        }
        xi += 1;
    }
    x[i] = BigInt::zero();
}

/// Vectors of norm −2 in a negative definite lattice.
pub fn roots(lattice: &IntegerLattice) -> Result<Vec<LatticeVector>> {
    vectors_of_norm(lattice, &BigInt::from(2))
}

/// `r_β(v) = v + (v·β) β` for a root `β`.
pub fn reflect(lattice: &IntegerLattice, beta: &[BigInt], v: &[BigInt]) -> Result<LatticeVector> {
    if lattice.norm(beta)? != BigInt::from(-2) {
        return Err(Error::InvalidArgument("reflection vector must have norm -2".into()));
    }
    let c = lattice.pair(v, beta)?;
    Ok(LatticeVector::new(v.iter().zip(beta).map(|(a, b)| a + &c * b).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{a2, diagonal, e8, hyperbolic, rank_one};
    use crate::linalg::{to_bigints, IntMatrix};
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    /// Exhaustive box search oracle.
    fn brute_force(l: &IntegerLattice, m: i64, bound: i64) -> BTreeSet<Vec<BigInt>> {
        let n = l.rank();
        let mut out = BTreeSet::new();
        let width = (2 * bound + 1) as usize;
        for idx in 0..width.pow(n as u32) {
            let mut k = idx;
            let v: Vec<BigInt> = (0..n)
                .map(|_| {
                    let c = (k % width) as i64 - bound;
                    k /= width;
                    BigInt::from(c)
                })
                .collect();
            if l.norm(&v).unwrap() == BigInt::from(-m) {
                out.insert(v);
            }
        }
        out
    }

    fn as_set(v: Vec<LatticeVector>) -> BTreeSet<Vec<BigInt>> {
        v.into_iter().map(|x| x.coords).collect()
    }

    #[test]
    fn small_root_systems() {
        assert_eq!(roots(&rank_one(-2)).unwrap().len(), 2);
        let a = roots(&a2()).unwrap();
        assert_eq!(a.len(), 6);
        assert_eq!(as_set(a), brute_force(&a2(), 2, 2));
    }

    #[test]
    fn e8_has_240_roots() {
        let r = roots(&e8()).unwrap();
        assert_eq!(r.len(), 240);
        assert!(r.iter().all(|v| e8().norm(v).unwrap() == BigInt::from(-2)));
        let set = as_set(r.clone());
        assert_eq!(set.len(), 240);
        assert!(r.iter().all(|v| set.contains(&v.neg().coords)));
    }

    #[test]
    fn refuses_indefinite() {
        assert_eq!(roots(&hyperbolic()), Err(Error::NotNegativeDefinite));
    }

    #[test]
    fn reflection_examples() {
        let l = diagonal(&to_bigints(&[-2, -2]));
        let b = to_bigints(&[1, 0]);
        assert_eq!(reflect(&l, &b, &b).unwrap().coords, to_bigints(&[-1, 0]));
        assert_eq!(reflect(&l, &b, &to_bigints(&[0, 5])).unwrap().coords, to_bigints(&[0, 5]));
        assert_eq!(reflect(&l, &b, &to_bigints(&[1, 1])).unwrap().coords, to_bigints(&[-1, 1]));
        assert!(reflect(&l, &to_bigints(&[1, 1]), &b).is_err());
    }

    proptest! {
        #[test]
        fn enumeration_matches_box_search(a in -3i64..=-1, b in -3i64..=-1, c in -3i64..=-1, o1 in -1i64..=1, o2 in -1i64..=1, m in 1i64..=4) {
            let g = IntMatrix::from_i64(&[&[2 * a, o1, 0], &[o1, 2 * b, o2], &[0, o2, 2 * c]]);
            let l = IntegerLattice::new(g).unwrap();
            prop_assume!(l.is_negative_definite());
            // |x_i|² ≤ m·(A⁻¹)_ii and (A⁻¹)_ii ≤ 4 for these forms, so the box is large enough
            let found = as_set(vectors_of_norm(&l, &BigInt::from(m)).unwrap());
            prop_assert_eq!(found, brute_force(&l, m, 2 * m));
        }
    }
}
