//! Analysis of finite weighted shift matrices.
//!
//! A weighted shift matrix of order `n` carries complex weights
//! `a_1, ..., a_{n-1}` on its superdiagonal and `a_n` in the lower-left
//! corner; indices are cyclic, so `a_{n+j}` means `a_j`. This crate decides
//! unitary equivalence and reducibility of such matrices from the weight
//! list alone, computes the Kippenhahn polynomial whose zero set determines
//! the numerical range, and samples the boundary of the numerical range
//! through its support function.
//!
//! Every closed-form route is backed by an independent dense-matrix oracle:
//! determinants via LU factorization with scaled partial pivoting and
//! Hermitian eigenvalues via cyclic complex Jacobi rotations, both in
//! [`linalg`].
//!
//! The scalar type is generic over [`Scalar`] (`f32` or `f64`); the `*64`
//! aliases below are the usual entry points.

// Index loops mirror the subscript formulas they implement.
#![allow(clippy::needless_range_loop)]

pub mod circsym;
pub mod equivalence;
pub mod error;
pub mod kippenhahn;
pub mod linalg;
pub mod matrix;
pub mod numrange;
pub mod reducibility;
mod scalar;
mod serde_pairs;
pub mod shift;

pub use error::{Error, Result};
pub use matrix::ComplexMatrix;
pub use scalar::Scalar;
pub use shift::{ModulusProfile, WeightedShift};

pub use equivalence::{
    check_equivalent, check_equivalent_with_witness, cyclic_modulus_shift, split_at_zeros,
    EquivalenceReport, Regime, ZeroBlock, ZeroBlockDecomposition,
};
pub use kippenhahn::{kippenhahn_oracle, kippenhahn_poly, KippenhahnPoly};
pub use numrange::{
    boundary_samples, disc_radius, ranges_equal, support_function, BoundarySamples, DiscRadius,
};
pub use reducibility::{
    decompose, fourier_block_unitary, is_reducible, minimal_period, DecompositionReport, Reason,
};

/// Weighted shift over `f64`, the default precision.
pub type WeightedShift64 = WeightedShift<f64>;
/// Weighted shift over `f32`.
pub type WeightedShift32 = WeightedShift<f32>;
/// Dense complex matrix over `f64`.
pub type ComplexMatrix64 = ComplexMatrix<f64>;
/// Dense complex matrix over `f32`.
pub type ComplexMatrix32 = ComplexMatrix<f32>;
