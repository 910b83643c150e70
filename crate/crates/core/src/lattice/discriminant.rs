use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::IntegerLattice;
use crate::error::{Error, Result};
use crate::linalg::{dot, smith_normal_form};

/// `L* / L` as a product of cyclic groups, with the discriminant quadratic
/// form evaluated on a generator of each factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantGroup {
    /// Orders of the cyclic factors, each ≥ 2 and dividing the next.
    pub invariant_factors: Vec<BigInt>,
    /// Generators of `L*` as `(numerator, denominator)`: the element is
    /// `numerator / denominator` in lattice coordinates.
    pub generators: Vec<(Vec<BigInt>, BigInt)>,
    /// `q(g) = g·g`, reduced into `[0, modulus)`.
    pub qform_values: Vec<BigRational>,
    /// 2 for even lattices, 1 for odd ones (where only `q mod 1` is defined).
    pub modulus: BigInt,
    gram: crate::linalg::IntMatrix,
}

impl DiscriminantGroup {
    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// `q(v/den)` reduced modulo the form's modulus. Meaningful for `v/den ∈ L*`.
    pub fn qform(&self, v: &[BigInt], den: &BigInt) -> BigRational {
        let n = dot(v, &self.gram.mul_vec(v).expect("vector length matches rank"));
        reduce(BigRational::new(n, den * den), &self.modulus)
    }

    /// `b(g_i, g_j)` modulo 1.
    pub fn bilinear(&self, i: usize, j: usize) -> BigRational {
        let (vi, di) = &self.generators[i];
        let (vj, dj) = &self.generators[j];
        let n = dot(vi, &self.gram.mul_vec(vj).expect("vector length matches rank"));
        reduce(BigRational::new(n, di * dj), &BigInt::one())
    }
}

fn reduce(x: BigRational, m: &BigInt) -> BigRational {
    let m = BigRational::from_integer(m.clone());
    let k = (&x / &m).floor();
    x - k * m
}

pub fn discriminant_group(lattice: &IntegerLattice) -> Result<DiscriminantGroup> {
    if !lattice.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    let g = lattice.gram();
    let modulus = if lattice.is_even() { BigInt::from(2) } else { BigInt::one() };
    let snf = smith_normal_form(g);
    let diag = snf.diagonal();
    let mut out = DiscriminantGroup {
        invariant_factors: Vec::new(),
        generators: Vec::new(),
        qform_values: Vec::new(),
        modulus,
        gram: g.clone(),
    };
    // U G V = D, so G⁻¹ U⁻¹ e_i = V e_i / d_i generates the i-th factor.
    for (i, d) in diag.iter().enumerate() {
        if d.is_one() {
            continue;
        }
        let col = snf.v.column(i);
        let q = out.qform(&col, d);
        out.invariant_factors.push(d.clone());
        out.generators.push((col, d.clone()));
        out.qform_values.push(q);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{diagonal, e8, hyperbolic, l2d, rank_one};
    use crate::linalg::to_bigints;
    use num_traits::{Signed, Zero};

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rank_one_minus_two() {
        let dg = discriminant_group(&rank_one(-2)).unwrap();
        assert_eq!(dg.invariant_factors, vec![BigInt::from(2)]);
        // −1/2 mod 2
        assert_eq!(dg.qform_values, vec![rat(3, 2)]);
    }

    #[test]
    fn l2d_is_cyclic_with_form_minus_x_squared_over_2d() {
        for d in 1..8i64 {
            let dg = discriminant_group(&l2d(&d.into()).unwrap()).unwrap();
            assert_eq!(dg.invariant_factors, vec![BigInt::from(2 * d)]);
            // a generator has q = −u²/2d for a unit u mod 2d
            let q = &dg.qform_values[0];
            let found = (1..2 * d).any(|u| reduce(rat(-u * u, 2 * d), &2.into()) == *q);
            assert!(found, "d={d}: q={q}");
        }
    }

    #[test]
    fn e8_trivial() {
        assert!(discriminant_group(&e8()).unwrap().is_trivial());
        assert!(discriminant_group(&hyperbolic()).unwrap().is_trivial());
    }

    #[test]
    fn order_is_abs_det_and_form_is_well_defined() {
        let l = diagonal(&to_bigints(&[-2, -6, 4])).direct_sum(&hyperbolic());
        let dg = discriminant_group(&l).unwrap();
        assert_eq!(dg.order(), l.determinant().abs());
        for w in dg.invariant_factors.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
        // shifting a generator by any lattice vector leaves q unchanged
        for (i, (v, d)) in dg.generators.iter().enumerate() {
            for shift in [[1, 0, 0, 0, 0], [0, 1, 1, 0, 0], [3, -1, 2, 1, 5]] {
                let moved: Vec<BigInt> = v.iter().zip(shift).map(|(x, s)| x + d * BigInt::from(s)).collect();
                assert_eq!(dg.qform(&moved, d), dg.qform_values[i]);
            }
        }
    }

    #[test]
    fn degenerate_rejected() {
        assert_eq!(discriminant_group(&rank_one(0)), Err(Error::Degenerate));
    }
}
