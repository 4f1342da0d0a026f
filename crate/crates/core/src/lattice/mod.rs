//! Exact integer linear algebra.
//!
//! Everything here is arbitrary precision and deterministic; no floating point
//! is used anywhere in the crate.

mod matrix;
mod smith;
pub mod sparse;

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub use matrix::{dot, IntegerMatrix};
pub use smith::{kernel_basis, rank, saturation_and_complement, smith_normal_form, unimodular_inverse, SmithDecomposition};
pub use sparse::{invariant_factors, rank_mod_p, SparseMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("matrix of shape {rows}x{cols} cannot hold {len} entries")]
    Shape { rows: usize, cols: usize, len: usize },
}

/// Integer vector in `ℤ^n`.
pub type IntVector = Vec<BigInt>;

pub fn int_vector(v: &[i64]) -> IntVector {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// gcd of the coordinates (0 for the zero vector).
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

pub fn is_primitive(v: &[BigInt]) -> bool {
    content(v) == BigInt::from(1)
}

/// Divides out the content; the zero vector is returned unchanged.
pub fn primitive_part(v: &[BigInt]) -> IntVector {
    let g = content(v);
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub fn add_vectors(a: &[BigInt], b: &[BigInt]) -> IntVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale_vector(a: &[BigInt], k: &BigInt) -> IntVector {
    a.iter().map(|x| x * k).collect()
}

pub fn is_zero_vector(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Extended gcd over a list: returns `(g, coeffs)` with `Σ coeffs_i · xs_i = g`
/// and `g ≥ 0`.
pub fn extended_gcd(xs: &[BigInt]) -> (BigInt, Vec<BigInt>) {
    let mut g = BigInt::zero();
    let mut coeffs: Vec<BigInt> = Vec::with_capacity(xs.len());
    for x in xs {
        let e = g.extended_gcd(x);
        for c in &mut coeffs {
            *c *= &e.x;
        }
        coeffs.push(e.y);
        g = e.gcd;
    }
    if g.is_negative() {
        g = -g;
        for c in &mut coeffs {
            *c = -&*c;
        }
    }
    (g, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extended_gcd_combination() {
        let xs = int_vector(&[6, 10, 15]);
        let (g, c) = extended_gcd(&xs);
        assert_eq!(g, BigInt::from(1));
        assert_eq!(dot(&c, &xs), g);
        let (g, c) = extended_gcd(&int_vector(&[-4, 0]));
        assert_eq!(g, BigInt::from(4));
        assert_eq!(dot(&c, &int_vector(&[-4, 0])), g);
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive(&int_vector(&[2, -3])));
        assert!(!is_primitive(&int_vector(&[2, 0])));
        assert!(!is_primitive(&int_vector(&[0, 0])));
        assert_eq!(primitive_part(&int_vector(&[4, -6])), int_vector(&[2, -3]));
    }
}
