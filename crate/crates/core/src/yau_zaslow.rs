//! Yau–Zaslow counts of rational curves on K3 surfaces.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

/// A power series in `q` truncated after `q^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    pub coefficients: Vec<BigInt>,
}

impl QSeries {
    pub fn truncation_order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficient(&self, k: usize) -> Option<&BigInt> {
        self.coefficients.get(k)
    }

    /// `∏_{k≥1} (1 − q^k)^{−c}` up to `q^order`, from the recurrence
    /// `n·a_n = c·Σ_{k=1}^{n} σ(k)·a_{n−k}`.
    pub fn inverse_euler_power(c: u32, order: usize) -> QSeries {
        let sigma = divisor_sums(order);
        let mut a = Vec::with_capacity(order + 1);
        a.push(BigInt::one());
        for n in 1..=order {
            let mut s = BigInt::zero();
            for k in 1..=n {
                s += &a[n - k] * sigma[k];
            }
            s *= c;
            let (q, r) = s.div_rem(&BigInt::from(n));
            debug_assert!(r.is_zero());
            a.push(q);
        }
        QSeries { coefficients: a }
    }
}

/// `σ(k)` for `0 ≤ k ≤ n` (with `σ(0) = 0`).
fn divisor_sums(n: usize) -> Vec<u64> {
    let mut s = vec![0u64; n + 1];
    for d in 1..=n {
        for m in (d..=n).step_by(d) {
            s[m] += d as u64;
        }
    }
    s
}

/// `n_0, …, n_dmax` where `n_d = [q^d] q^{−1} ∏ (1 − q^k)^{−24}`.
pub fn yz_counts(dmax: usize) -> Vec<BigInt> {
    let series = QSeries::inverse_euler_power(24, dmax + 1);
    series.coefficients[1..].to_vec()
}

pub fn yz_count(d: usize) -> BigInt {
    yz_counts(d).pop().expect("nonempty")
}

/// Multisets of `(part, colour)` pairs whose parts sum to `n`, by dynamic
/// programming over the parts and colours.
pub fn colored_partitions(n: usize, colors: usize) -> BigInt {
    colored_partitions_table(n, colors).swap_remove(n)
}

/// `colored_partitions(m, colors)` for `0 ≤ m ≤ n`.
pub fn colored_partitions_table(n: usize, colors: usize) -> Vec<BigInt> {
    let mut dp = vec![BigInt::zero(); n + 1];
    dp[0] = BigInt::one();
    for part in 1..=n {
        for _ in 0..colors {
            for m in part..=n {
                let add = dp[m - part].clone();
                dp[m] += add;
            }
        }
    }
    dp
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnigonalCoefficients {
    pub d: usize,
    /// `n_d`, the coefficient of the section class.
    #[serde(serialize_with = "crate::io::ser_int")]
    pub section: BigInt,
    /// `n_d (d + 1) / 24`, the coefficient of each fibre class.
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub fiber: BigRational,
    pub fiber_integral: bool,
}

pub fn unigonal_rc_coefficients(d: usize) -> UnigonalCoefficients {
    let section = yz_count(d);
    let fiber = BigRational::new(&section * BigInt::from(d + 1), BigInt::from(24));
    UnigonalCoefficients { d, fiber_integral: fiber.is_integer(), section, fiber }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_counts() {
        let n = yz_counts(2);
        assert_eq!(n, vec![BigInt::from(24), BigInt::from(324), BigInt::from(3200)]);
    }

    #[test]
    fn small_colored_partitions() {
        assert_eq!(colored_partitions(0, 24), BigInt::one());
        assert_eq!(colored_partitions(1, 1), BigInt::one());
        assert_eq!(colored_partitions(2, 24), BigInt::from(324));
        // ordinary partitions
        assert_eq!(colored_partitions(10, 1), BigInt::from(42));
    }

    #[test]
    fn truncations_agree() {
        let a = QSeries::inverse_euler_power(24, 30);
        let b = QSeries::inverse_euler_power(24, 60);
        assert_eq!(a.coefficients[..], b.coefficients[..31]);
        assert_eq!(b.truncation_order(), 60);
        let p = QSeries::inverse_euler_power(1, 10);
        assert_eq!(p.coefficient(10), Some(&BigInt::from(42)));
    }

    #[test]
    fn unigonal() {
        let u = unigonal_rc_coefficients(1);
        assert_eq!(u.section, BigInt::from(324));
        assert_eq!(u.fiber, BigRational::from_integer(BigInt::from(27)));
        let u2 = unigonal_rc_coefficients(2);
        assert_eq!(u2.fiber, BigRational::from_integer(BigInt::from(400)));
        let u23 = unigonal_rc_coefficients(23);
        assert!(u23.fiber_integral);
        assert_eq!(u23.fiber.to_integer(), u23.section);
    }
}
