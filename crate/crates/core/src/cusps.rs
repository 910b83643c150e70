//! Arithmetic of the 0-cusps of the Baily–Borel compactification of the
//! moduli of degree `2d` polarized K3 surfaces.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{diagonal, e8, hyperbolic, IntegerLattice};

/// `d = N²·d0` with `d0` squarefree.
pub fn squarefree_split(d: u64) -> Result<(u64, u64)> {
    if d < 1 {
        return Err(Error::InvalidArgument("d must be positive".into()));
    }
    let (mut n, mut rest) = (1u64, d);
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        while rest % (p * p) == 0 {
            rest /= p * p;
            n *= p;
        }
        while rest % p == 0 {
            rest /= p;
        }
        p += 1;
    }
    Ok((n, d / (n * n)))
}

pub fn zero_cusp_count(d: u64) -> Result<u64> {
    let (n, _) = squarefree_split(d)?;
    Ok((n + 2) / 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CuspDescriptor {
    pub d: u64,
    pub n: u64,
    pub d0: u64,
    /// Representative of `{±q}` in `Z/N`.
    pub q: u64,
    /// `2qNd0 mod 2d`.
    pub delta_star: u64,
    pub p_star: Option<u64>,
}

/// `x² ≡ 0 (mod 4d)`: `x ∈ Z/2d` is isotropic for the form `x ↦ x²` valued in `Z/4d`.
pub fn is_isotropic(d: u64, x: u64) -> bool {
    let x = x as u128 % (2 * d as u128);
    (x * x).is_multiple_of(4 * d as u128)
}

pub fn zero_cusp_invariants(d: u64) -> Result<Vec<CuspDescriptor>> {
    let (n, d0) = squarefree_split(d)?;
    let modulus = 2 * d as u128;
    let mut out = Vec::with_capacity((n / 2 + 1) as usize);
    for q in 0..=n / 2 {
        let delta_star = ((2 * q as u128 * n as u128 * d0 as u128) % modulus) as u64;
        if !is_isotropic(d, delta_star) {
            return Err(Error::Validation(format!("δ* = {delta_star} is not isotropic in Z/{}", 2 * d)));
        }
        out.push(CuspDescriptor { d, n, d0, q, delta_star, p_star: None });
    }
    Ok(out)
}

/// `δ⊥/δ = ⟨−2d/p*⟩ ⊕ H ⊕ E8²`. Requires `p* | d`, which keeps the first
/// summand even.
pub fn cusp_quotient_lattice(d: u64, p_star: u64) -> Result<IntegerLattice> {
    if d < 1 || p_star < 1 || !d.is_multiple_of(p_star) {
        return Err(Error::InvalidArgument(format!("p* = {p_star} does not divide d = {d}")));
    }
    let m = -BigInt::from(2 * (d / p_star) as u128);
    let e = e8();
    let parts = [diagonal(std::slice::from_ref(&m)), hyperbolic(), e.clone(), e];
    Ok(IntegerLattice::direct_sum_all(&parts).with_label(format!("<{m}>+H+E8^2")))
}
