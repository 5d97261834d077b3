//! Dense square complex matrices with row-major storage.

use num_complex::Complex;
use serde::de;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::serde_pairs::{PairOwned, PairRef};

/// Dense `dim x dim` complex matrix.
///
/// Entries are kept finite; constructors taking raw data validate this.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    dim: usize,
    entries: Vec<Complex<T>>,
}

impl<T: Scalar> ComplexMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix {
            dim,
            entries: vec![Complex::new(T::zero(), T::zero()); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex::new(T::one(), T::zero()));
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut m = Self::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    pub fn diagonal(diag: &[Complex<T>]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, *d);
        }
        m
    }

    /// Builds a matrix from rows, validating shape and finiteness.
    pub fn from_rows(rows: Vec<Vec<Complex<T>>>) -> Result<Self> {
        let dim = rows.len();
        for (r, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::NotSquare {
                    rows: dim,
                    row: r,
                    cols: row.len(),
                });
            }
            for (c, z) in row.iter().enumerate() {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFiniteEntry { row: r, col: c });
                }
            }
        }
        Ok(ComplexMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex<T> {
        self.entries[r * self.dim + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex<T>) {
        self.entries[r * self.dim + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Complex<T>] {
        &self.entries[r * self.dim..(r + 1) * self.dim]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r).conj())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.re.is_zero() && a.im.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let v = out.get(r, c) + a * rhs.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: v.len(),
            });
        }
        Ok((0..self.dim)
            .map(|r| {
                let mut acc = Complex::new(T::zero(), T::zero());
                for c in 0..self.dim {
                    acc += self.get(r, c) * v[c];
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        Ok(Self::from_fn(self.dim, |r, c| {
            self.get(r, c) + rhs.get(r, c)
        }))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        Ok(Self::from_fn(self.dim, |r, c| {
            self.get(r, c) - rhs.get(r, c)
        }))
    }

    pub fn scale(&self, factor: Complex<T>) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(r, c) * factor)
    }

    /// `self + z I`.
    pub fn add_scalar_diag(&self, z: Complex<T>) -> Self {
        let mut m = self.clone();
        for i in 0..self.dim {
            m.set(i, i, m.get(i, i) + z);
        }
        m
    }

    /// Hermitian part `(M + M*) / 2`.
    pub fn re_part(&self) -> Self {
        let half = T::from_f64(0.5).unwrap();
        Self::from_fn(self.dim, |r, c| {
            (self.get(r, c) + self.get(c, r).conj()).scale(half)
        })
    }

    /// Skew part `(M - M*) / (2i)`, itself Hermitian.
    pub fn im_part(&self) -> Self {
        let factor = Complex::new(T::zero(), T::from_f64(-0.5).unwrap());
        Self::from_fn(self.dim, |r, c| {
            (self.get(r, c) - self.get(c, r).conj()) * factor
        })
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.entries
            .iter()
            .map(|z| z.norm())
            .fold(T::zero(), T::max)
    }

    pub fn frobenius_norm(&self) -> T {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt()
    }

    /// Largest entry modulus of `self - rhs`.
    pub fn max_abs_diff(&self, rhs: &Self) -> Result<T> {
        Ok(self.sub(rhs)?.max_abs())
    }

    /// Block-diagonal matrix with the given blocks in order.
    pub fn direct_sum(blocks: &[ComplexMatrix<T>]) -> Self {
        let dim = blocks.iter().map(|b| b.dim).sum();
        let mut m = Self::zeros(dim);
        let mut off = 0;
        for b in blocks {
            for r in 0..b.dim {
                for c in 0..b.dim {
                    m.set(off + r, off + c, b.get(r, c));
                }
            }
            off += b.dim;
        }
        m
    }
}

impl<T: Serialize> Serialize for ComplexMatrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct RowRef<'a, T>(&'a [Complex<T>]);
        impl<T: Serialize> Serialize for RowRef<'_, T> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.collect_seq(self.0.iter().map(PairRef))
            }
        }
        s.collect_seq(
            (0..self.dim).map(|r| RowRef(&self.entries[r * self.dim..(r + 1) * self.dim])),
        )
    }
}

impl<'de, T: Scalar + Deserialize<'de>> Deserialize<'de> for ComplexMatrix<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<PairOwned<T>>>::deserialize(d)?;
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|p| p.0).collect())
            .collect();
        ComplexMatrix::from_rows(rows).map_err(de::Error::custom)
    }
}
