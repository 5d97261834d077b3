//! Kippenhahn polynomial of a weighted shift in closed form.
//!
//! For an order-n shift (n at least 3) with weights `a_1..a_n`,
//!
//! ```text
//! p(x, y, z) = det(x Re A + y Im A + z I)
//!            = z^n + sum_r S_r(|a_1|^2, ..., |a_n|^2) (x^2+y^2)^r (-1/4)^r z^{n-2r}
//!              + (-1)^{n+1} 2^{-n} ((x-iy)^n w + (x+iy)^n conj w),   w = a_1 ... a_n,
//! ```
//!
//! where `S_r` sums products over r pairwise nonadjacent positions on the
//! cycle. Everything the polynomial depends on is therefore the squared
//! modulus table and the weight product, which is what [`KippenhahnPoly`]
//! stores. [`kippenhahn_oracle`] evaluates the determinant definition
//! directly so the closed form can be checked against it.

use num_complex::Complex;

use crate::circsym::circ_sym_table;
use crate::error::{Error, Result};
use crate::linalg::det;
use crate::scalar::{real, Scalar};
use crate::shift::WeightedShift;

/// Structured coefficients of the polynomial.
///
/// `radial[r - 1]` is the coefficient `c_r = S_r * (-1/4)^r` multiplying
/// `(x^2+y^2)^r z^{n-2r}`, for `r = 1 ..= n/2`; `product_term` is the
/// weight product `w` entering the angular term.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(bound(
    serialize = "T: Scalar + serde::Serialize",
    deserialize = "T: Scalar + serde::de::DeserializeOwned"
))]
pub struct KippenhahnPoly<T> {
    pub n: usize,
    pub radial: Vec<T>,
    #[serde(with = "crate::serde_pairs::pair")]
    pub product_term: Complex<T>,
}

impl<T: Scalar> KippenhahnPoly<T> {
    /// Recovers the nonnegative `S_r` values, `r = 1 ..= n/2`.
    pub fn s_values(&self) -> Vec<T> {
        self.radial
            .iter()
            .enumerate()
            .map(|(i, c)| *c * real::<T>(-4.0).powi(i as i32 + 1))
            .collect()
    }

    /// Evaluates the polynomial at a real point.
    pub fn eval(&self, x: T, y: T, z: T) -> T {
        let rho = x * x + y * y;
        let mut val = z.powi(self.n as i32);
        let mut rpow = rho;
        for (i, c) in self.radial.iter().enumerate() {
            let zdeg = self.n as i32 - 2 * (i as i32 + 1);
            val += *c * rpow * z.powi(zdeg);
            rpow *= rho;
        }
        // angular term: (-1)^{n+1} 2^{-n} * 2 Re((x - iy)^n w)
        let sign = if self.n.is_multiple_of(2) {
            -T::one()
        } else {
            T::one()
        };
        let half_pow = real::<T>(2.0).powi(-(self.n as i32));
        let ang = (Complex::new(x, -y).powu(self.n as u32) * self.product_term).re;
        val + sign * half_pow * (ang + ang)
    }
}

/// Closed-form polynomial for a shift of order at least 3.
pub fn kippenhahn_poly<T: Scalar>(ws: &WeightedShift<T>) -> Result<KippenhahnPoly<T>> {
    let n = ws.n();
    if n < 3 {
        return Err(Error::DimensionTooSmall { n, min: 3 });
    }
    let squared: Vec<T> = ws.moduli().iter().map(|m| *m * *m).collect();
    let table = circ_sym_table(&squared);
    let quarter = real::<T>(-0.25);
    let radial = (1..=n / 2)
        .map(|r| table.get(r) * quarter.powi(r as i32))
        .collect();
    Ok(KippenhahnPoly {
        n,
        radial,
        product_term: ws.product(),
    })
}

/// Determinant definition, evaluated densely: `det(x Re A + y Im A + z I)`.
///
/// The matrix is Hermitian plus a real multiple of the identity, so the
/// determinant is real; the imaginary part is asserted to vanish at the
/// working scale.
pub fn kippenhahn_oracle<T: Scalar>(ws: &WeightedShift<T>, x: T, y: T, z: T) -> T {
    let a = ws.to_matrix();
    let m = a
        .re_part()
        .scale(Complex::new(x, T::zero()))
        .add(&a.im_part().scale(Complex::new(y, T::zero())))
        .expect("same dim")
        .add_scalar_diag(Complex::new(z, T::zero()));
    let d = det(&m);
    debug_assert!(
        d.im.abs() <= real::<T>(1e-10) * T::one().max(d.norm()),
        "determinant of a Hermitian pencil must be real"
    );
    d.re
}
