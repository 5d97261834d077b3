use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point scalar the library is generic over.
///
/// The three tolerance constants are relative thresholds calibrated per
/// precision. The `f64` values are the library defaults quoted throughout
/// the documentation: comparisons of weight moduli default to `1e-10`, the
/// Jacobi eigensolver drives the off-diagonal Frobenius norm below `1e-12`
/// relative to the input norm, and inputs to the eigensolver may deviate
/// from exact Hermitian symmetry by at most `1e-10` relative.
pub trait Scalar:
    Float
    + FloatConst
    + NumAssign
    + FromPrimitive
    + ToPrimitive
    + Sum<Self>
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Default tolerance for modulus comparisons and zero tests.
    fn default_tol() -> Self;
    /// Relative off-diagonal target of the Hermitian eigensolver.
    fn eigen_tol() -> Self;
    /// Relative defect accepted by the Hermitian input check.
    fn hermitian_tol() -> Self;
}

impl Scalar for f64 {
    fn default_tol() -> Self {
        1e-10
    }
    fn eigen_tol() -> Self {
        1e-12
    }
    fn hermitian_tol() -> Self {
        1e-10
    }
}

impl Scalar for f32 {
    fn default_tol() -> Self {
        1e-4
    }
    fn eigen_tol() -> Self {
        1e-6
    }
    fn hermitian_tol() -> Self {
        1e-5
    }
}

/// Pulls an `f64` constant into the generic scalar type.
pub(crate) fn real<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("constant representable in scalar type")
}
