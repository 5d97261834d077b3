//! Weighted shift matrices and their cyclic weight lists.

use num_complex::Complex;
use serde::de;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::Scalar;
use crate::serde_pairs::{PairOwned, PairRef};

/// Weight list `a_1, ..., a_n` of a weighted shift matrix, `n >= 2`.
///
/// The associated matrix has `a_j` at entry `(j, j+1)` for `j < n` and
/// `a_n` at entry `(n, 1)`. Weight indices are 1-based and cyclic:
/// `a_{n+j} = a_j` and `a_{j-n} = a_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedShift<T> {
    weights: Vec<Complex<T>>,
}

/// Moduli, extracted mean phase and weight product of a shift.
///
/// When every weight is nonzero the shift with weights `|a_1|, ..., |a_n|`
/// is unitarily equivalent to `e^{-i phase}` times the original shift.
/// The phase is the mean of the weight arguments taken in `[0, 2pi)`, and
/// is defined as `0` as soon as any weight is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulusProfile<T> {
    pub moduli: Vec<T>,
    pub phase: T,
    pub product: Complex<T>,
}

impl<T: Scalar> WeightedShift<T> {
    /// Validates the weight list: at least two entries, all finite.
    pub fn new(weights: Vec<Complex<T>>) -> Result<Self> {
        if weights.len() < 2 {
            return Err(Error::TooFewWeights {
                got: weights.len(),
                min: 2,
            });
        }
        for (i, w) in weights.iter().enumerate() {
            if !w.re.is_finite() || !w.im.is_finite() {
                return Err(Error::NonFiniteWeight { index: i + 1 });
            }
        }
        Ok(WeightedShift { weights })
    }

    /// Shift with real weights.
    pub fn from_reals(weights: &[T]) -> Result<Self> {
        Self::new(
            weights
                .iter()
                .map(|&w| Complex::new(w, T::zero()))
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Complex<T>] {
        &self.weights
    }

    /// Cyclic 1-based access: `weight(j)` is `a_j` for any integer `j`.
    pub fn weight(&self, j: i64) -> Complex<T> {
        let n = self.weights.len() as i64;
        let idx = (j - 1).rem_euclid(n) as usize;
        self.weights[idx]
    }

    /// Rotated weight list `b_j = a_{k+j}`; `k` may be any integer.
    pub fn rotate(&self, k: i64) -> Self {
        let n = self.weights.len();
        let off = k.rem_euclid(n as i64) as usize;
        let weights = (0..n).map(|j| self.weights[(j + off) % n]).collect();
        WeightedShift { weights }
    }

    /// Reversed weight list `b_j = a_{n+1-j}`.
    pub fn reversed(&self) -> Self {
        let mut weights = self.weights.clone();
        weights.reverse();
        WeightedShift { weights }
    }

    pub fn moduli(&self) -> Vec<T> {
        self.weights.iter().map(|w| w.norm()).collect()
    }

    /// Product `a_1 a_2 ... a_n` computed left to right.
    pub fn product(&self) -> Complex<T> {
        self.weights
            .iter()
            .fold(Complex::new(T::one(), T::zero()), |acc, w| acc * w)
    }

    pub fn modulus_profile(&self) -> ModulusProfile<T> {
        let moduli = self.moduli();
        let any_zero = moduli.iter().any(|m| m.is_zero());
        let phase = if any_zero {
            T::zero()
        } else {
            let total: T = self.weights.iter().map(|w| arg_principal(*w)).sum();
            total / T::from_usize(self.n()).unwrap()
        };
        ModulusProfile {
            moduli,
            phase,
            product: self.product(),
        }
    }

    pub fn to_matrix(&self) -> ComplexMatrix<T> {
        shift_matrix(&self.weights)
    }

    /// 1-based positions `j` with `|a_j| <= tol`, ascending.
    pub fn zero_positions(&self, tol: T) -> Vec<usize> {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, w)| w.norm() <= tol)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn zero_count(&self, tol: T) -> usize {
        self.weights.iter().filter(|w| w.norm() <= tol).count()
    }
}

/// Argument of `z` in `[0, 2pi)`.
pub(crate) fn arg_principal<T: Scalar>(z: Complex<T>) -> T {
    let a = z.arg();
    if a < T::zero() {
        a + T::TAU()
    } else {
        a
    }
}

/// Shift matrix for an arbitrary weight slice, including single-weight
/// blocks (a lone weight lands at entry `(1, 1)`).
pub(crate) fn shift_matrix<T: Scalar>(weights: &[Complex<T>]) -> ComplexMatrix<T> {
    let n = weights.len();
    let mut m = ComplexMatrix::zeros(n);
    if n == 0 {
        return m;
    }
    for j in 0..n - 1 {
        m.set(j, j + 1, weights[j]);
    }
    m.set(n - 1, 0, weights[n - 1]);
    m
}

impl<T: Serialize> Serialize for WeightedShift<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.weights.iter().map(PairRef))
    }
}

impl<'de, T: Scalar + Deserialize<'de>> Deserialize<'de> for WeightedShift<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<PairOwned<T>>::deserialize(d)?;
        WeightedShift::new(v.into_iter().map(|p| p.0).collect()).map_err(de::Error::custom)
    }
}
