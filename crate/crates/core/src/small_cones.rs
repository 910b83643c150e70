//! Walls of the small-cone decomposition of the positive cone of a rank-2
//! hyperbolic lattice `M`.
//!
//! A wall is `β⊥ ∩ M_R` for a class `β` whose projection `β_M ∈ M*` has
//! `−2 ≤ β_M² < 0` and with `⟨M, β⟩` hyperbolic. In rank 2 each wall is a
//! ray, recorded as a primitive integer vector in `M` coordinates.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{hyperbolic_twisted, IntegerLattice, Signature};
use crate::linalg::{inertia, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "origin", rename_all = "kebab-case")]
pub enum WallOrigin {
    /// `H(n)`: `β·e = a`, `β·f = −b` with `ab < n`.
    Hn { a: u64, b: u64 },
    /// A root `β ∈ M`, given in `M` coordinates.
    Root {
        #[serde(serialize_with = "crate::io::ser_ints")]
        beta: [BigInt; 2],
    },
    /// A dual vector with the given pairings `(β·m₁, β·m₂)` and `β_M²`.
    Dual {
        pairing: [i64; 2],
        #[serde(serialize_with = "crate::io::ser_rational")]
        norm: BigRational,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Wall {
    #[serde(serialize_with = "crate::io::ser_ints")]
    pub ray: [BigInt; 2],
    pub origins: Vec<WallOrigin>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WallSet {
    #[serde(skip)]
    pub lattice: IntegerLattice,
    /// Walls in counterclockwise order across the positive cone.
    pub walls: Vec<Wall>,
    pub chamber_count: usize,
    /// Realizability of each candidate in the K3 lattice is assumed, not checked.
    pub assumption: Option<&'static str>,
}

pub const REALIZABILITY: &str = "assuming ambient realizability";

fn require_hyperbolic_plane(m: &IntegerLattice) -> Result<()> {
    if m.rank() != 2 || m.signature() != (Signature { positive: 1, negative: 1, zero: 0 }) {
        return Err(Error::InvalidArgument(format!(
            "small cones need a rank-2 lattice of signature (1,1), got rank {} and {:?}",
            m.rank(),
            m.signature()
        )));
    }
    Ok(())
}

fn cross(a: &[BigInt; 2], b: &[BigInt; 2]) -> BigInt {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn norm2(m: &IntegerLattice, v: &[BigInt; 2]) -> BigInt {
    let g = m.gram();
    &g[(0, 0)] * &v[0] * &v[0] + BigInt::from(2) * &g[(0, 1)] * &v[0] * &v[1] + &g[(1, 1)] * &v[1] * &v[1]
}

fn pair2(m: &IntegerLattice, v: &[BigInt; 2], w: &[BigInt; 2]) -> BigInt {
    let g = m.gram();
    &g[(0, 0)] * &v[0] * &w[0] + &g[(0, 1)] * (&v[0] * &w[1] + &v[1] * &w[0]) + &g[(1, 1)] * &v[1] * &w[1]
}

/// A vector of positive norm; it selects the component of the positive cone.
pub fn positive_reference(m: &IntegerLattice) -> Result<[BigInt; 2]> {
    require_hyperbolic_plane(m)?;
    let g = m.gram();
    let (a, b, c) = (&g[(0, 0)], &g[(0, 1)], &g[(1, 1)]);
    let one = BigInt::from(1);
    let v = if a.is_positive() {
        [one, BigInt::zero()]
    } else if a.is_negative() {
        [-b, a.clone()]
    } else if c.is_positive() {
        [BigInt::zero(), one]
    } else if c.is_negative() {
        [c.clone(), -b]
    } else {
        [one, b.signum()]
    };
    debug_assert!(norm2(m, &v).is_positive());
    Ok(v)
}

fn primitive(mut v: [BigInt; 2]) -> [BigInt; 2] {
    let g = num_integer::Integer::gcd(&v[0], &v[1]);
    if !g.is_zero() {
        v[0] /= &g;
        v[1] /= &g;
    }
    v
}

struct Builder {
    lattice: IntegerLattice,
    reference: [BigInt; 2],
    walls: BTreeMap<[BigInt; 2], Vec<WallOrigin>>,
}

impl Builder {
    fn new(lattice: IntegerLattice) -> Result<Self> {
        let reference = positive_reference(&lattice)?;
        Ok(Builder { lattice, reference, walls: BTreeMap::new() })
    }

    /// Adds the ray through `v` if it meets the interior of the positive cone.
    fn add(&mut self, v: [BigInt; 2], origin: WallOrigin) {
        if v[0].is_zero() && v[1].is_zero() {
            return;
        }
        let mut r = primitive(v);
        if !norm2(&self.lattice, &r).is_positive() {
            return;
        }
        if pair2(&self.lattice, &r, &self.reference).is_negative() {
            r = [-&r[0], -&r[1]];
        }
        let entry = self.walls.entry(r).or_default();
        if !entry.contains(&origin) {
            entry.push(origin);
        }
    }

    fn finish(self, assumption: Option<&'static str>) -> WallSet {
        let mut walls: Vec<Wall> = self.walls.into_iter().map(|(ray, origins)| Wall { ray, origins }).collect();
        // All rays lie in one open cone of angle < π.
        walls.sort_by(|x, y| BigInt::zero().cmp(&cross(&x.ray, &y.ray)));
        let chamber_count = walls.len() + 1;
        WallSet { lattice: self.lattice, walls, chamber_count, assumption }
    }
}

/// Walls of `H(n)` in `(e, f)` coordinates: rays `(b, a)` for `a, b ≥ 1`
/// with `ab < n`, and for `n = 1` the wall `(1, 1)` of the root `e − f`.
pub fn h_n_walls(n: u64) -> Result<WallSet> {
    if n < 1 {
        return Err(Error::InvalidArgument("H(n) needs n >= 1".into()));
    }
    let mut b = Builder::new(hyperbolic_twisted(&BigInt::from(n))?)?;
    for a in 1..n {
        for bb in 1..n {
            if a * bb < n {
                b.add([BigInt::from(bb), BigInt::from(a)], WallOrigin::Hn { a, b: bb });
            }
        }
    }
    if n == 1 {
        b.add([BigInt::from(1), BigInt::from(1)], WallOrigin::Root { beta: [BigInt::from(1), BigInt::from(-1)] });
    }
    Ok(b.finish(None))
}

/// Walls of a rank-2 hyperbolic lattice from dual vectors `β_M` whose
/// pairings with the basis are bounded by `bound` in absolute value.
pub fn rank2_walls(m: &IntegerLattice, bound: u64) -> Result<WallSet> {
    require_hyperbolic_plane(m)?;
    if bound < 1 {
        return Err(Error::InvalidArgument("height bound must be at least 1".into()));
    }
    let bound = i64::try_from(bound).map_err(|_| Error::InvalidArgument("height bound too large".into()))?;
    let g = m.gram();
    let det = m.determinant();
    // G⁻¹ = adj(G) / det
    let adj = [[g[(1, 1)].clone(), -&g[(0, 1)]], [-&g[(1, 0)], g[(0, 0)].clone()]];
    let minus_two = BigRational::from_integer(BigInt::from(-2));
    let mut b = Builder::new(m.clone())?;
    for p0 in -bound..=bound {
        for p1 in -bound..=bound {
            // β and −β give the same wall.
            if (p0, p1) <= (0, 0) && !(p0 == 0 && p1 > 0) {
                continue;
            }
            let p = [BigInt::from(p0), BigInt::from(p1)];
            let num = [&adj[0][0] * &p[0] + &adj[0][1] * &p[1], &adj[1][0] * &p[0] + &adj[1][1] * &p[1]];
            let norm = BigRational::new(&p[0] * &num[0] + &p[1] * &num[1], det.clone());
            if !(norm >= minus_two && norm.is_negative()) {
                continue;
            }
            let ext = IntMatrix::from_fn(3, 3, |i, j| match (i, j) {
                (2, 2) => BigInt::from(-2),
                (2, k) | (k, 2) => p[k].clone(),
                (i, j) => g[(i, j)].clone(),
            });
            let hyperbolic = inertia(&ext) == Signature { positive: 1, negative: 2, zero: 0 };
            let in_m = num.iter().all(|x| (x % det).is_zero()) && norm == minus_two;
            let ray = [p[1].clone(), -&p[0]];
            if in_m {
                let beta = [&num[0] / det, &num[1] / det];
                b.add(ray, WallOrigin::Root { beta });
            } else if hyperbolic {
                b.add(ray, WallOrigin::Dual { pairing: [p0, p1], norm });
            }
        }
    }
    Ok(b.finish(Some(REALIZABILITY)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "location", rename_all = "kebab-case")]
pub enum ChamberLocation {
    /// `signs[w]` is the sign of `det(ray_w, v)`; the id counts the walls
    /// counterclockwise-before `v`.
    Chamber { id: usize, signs: Vec<i8> },
    OnWalls { walls: Vec<usize> },
}

pub fn locate_chamber(w: &WallSet, v: &[BigRational; 2]) -> Result<ChamberLocation> {
    // Clear denominators; the location only depends on the ray.
    let den = num_integer::Integer::lcm(v[0].denom(), v[1].denom());
    let iv = [(&v[0] * BigRational::from_integer(den.clone())).to_integer(), (&v[1] * BigRational::from_integer(den)).to_integer()];
    let reference = positive_reference(&w.lattice)?;
    if !norm2(&w.lattice, &iv).is_positive() || !pair2(&w.lattice, &iv, &reference).is_positive() {
        return Err(Error::InvalidArgument("vector is not in the positive cone".into()));
    }
    let signs: Vec<i8> = w
        .walls
        .iter()
        .map(|wall| {
            let c = cross(&wall.ray, &iv);
            if c.is_positive() {
                1
            } else if c.is_negative() {
                -1
            } else {
                0
            }
        })
        .collect();
    let on: Vec<usize> = (0..signs.len()).filter(|&i| signs[i] == 0).collect();
    if !on.is_empty() {
        return Ok(ChamberLocation::OnWalls { walls: on });
    }
    let id = signs.iter().filter(|&&s| s > 0).count();
    Ok(ChamberLocation::Chamber { id, signs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::diagonal;

    fn rays(w: &WallSet) -> Vec<[i64; 2]> {
        w.walls.iter().map(|x| [i64::try_from(&x.ray[0]).unwrap(), i64::try_from(&x.ray[1]).unwrap()]).collect()
    }

    fn q(a: i64, b: i64) -> [BigRational; 2] {
        [BigRational::from_integer(a.into()), BigRational::from_integer(b.into())]
    }

    #[test]
    fn h_one_is_the_weyl_decomposition() {
        let w = h_n_walls(1).unwrap();
        assert_eq!(rays(&w), vec![[1, 1]]);
        assert_eq!(w.chamber_count, 2);
        let a = locate_chamber(&w, &q(2, 1)).unwrap();
        let b = locate_chamber(&w, &q(1, 2)).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn h_three() {
        let w = h_n_walls(3).unwrap();
        let mut r = rays(&w);
        r.sort();
        assert_eq!(r, vec![[1, 1], [1, 2], [2, 1]]);
        assert_eq!(w.chamber_count, 4);
        assert_eq!(h_n_walls(2).unwrap().walls.len(), 1);
        assert!(matches!(locate_chamber(&w, &q(1, 1)).unwrap(), ChamberLocation::OnWalls { .. }));
        assert!(matches!(locate_chamber(&w, &q(3, 1)).unwrap(), ChamberLocation::Chamber { .. }));
        assert!(locate_chamber(&w, &q(-1, -1)).is_err());
        assert!(locate_chamber(&w, &q(1, 0)).is_err());
    }

    #[test]
    fn chambers_are_ordered() {
        let w = h_n_walls(7).unwrap();
        let ids: Vec<usize> = [[10, 1], [5, 1], [3, 2], [1, 1], [2, 3], [1, 5], [1, 10]]
            .iter()
            .filter_map(|v| match locate_chamber(&w, &q(v[0], v[1])).unwrap() {
                ChamberLocation::Chamber { id, .. } => Some(id),
                ChamberLocation::OnWalls { .. } => None,
            })
            .collect();
        assert!(ids.windows(2).all(|p| p[0] <= p[1]) || ids.windows(2).all(|p| p[0] >= p[1]));
    }

    #[test]
    fn rank_two_agrees_with_h_n() {
        for n in [1u64, 2, 3, 6] {
            let a = h_n_walls(n).unwrap();
            let b = rank2_walls(&hyperbolic_twisted(&BigInt::from(n)).unwrap(), n.max(2) * 2).unwrap();
            assert_eq!(rays(&a), rays(&b), "n = {n}");
            assert_eq!(b.assumption, Some(REALIZABILITY));
        }
    }

    #[test]
    fn root_of_a_diagonal_lattice() {
        let m = diagonal(&[BigInt::from(2), BigInt::from(-2)]);
        let w = rank2_walls(&m, 5).unwrap();
        let root = w.walls.iter().find(|x| x.origins.iter().any(|o| matches!(o, WallOrigin::Root { beta } if beta[0].is_zero() && beta[1].abs() == BigInt::from(1))));
        assert!(root.is_some());
        assert!(rank2_walls(&diagonal(&[BigInt::from(2), BigInt::from(2)]), 3).is_err());
    }
}
