//! Reducibility of weighted shifts and the explicit block diagonalization.
//!
//! A weighted shift is reducible exactly when it has at least two zero
//! weights or its modulus sequence is periodic with some proper period
//! dividing the order. A single zero weight never helps: such a shift is
//! irreducible.
//!
//! In the periodic case, with minimal period `k` and `m = n / k`, the shift
//! is unitarily equivalent to
//!
//! ```text
//! e^{i theta} (B + wB + ... + w^{m-1}B),   w = e^{2 pi i / n},
//! ```
//!
//! a direct sum of scaled copies of the k-by-k cyclic shift `B` carrying
//! the moduli of the first period. The conjugating unitary is a diagonal
//! phase correction followed by a block Fourier matrix; `decompose` builds
//! it and reports the achieved residual. With two or more zeros the
//! certificate is instead the zero-block split, conjugated by a plain
//! cyclic permutation.

use num_complex::Complex;

use crate::equivalence::{rotation_witness, split_at_zeros, ZeroBlockDecomposition};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::Scalar;
use crate::shift::{arg_principal, shift_matrix, WeightedShift};

/// Why the shift is or is not reducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Reason {
    TwoOrMoreZeros,
    PeriodicWeights,
    Irreducible,
}

/// Decision and, when produced by [`decompose`], an explicit certificate.
///
/// `period_k` and `theta` belong to the periodic regime; `base_block` holds
/// the k-by-k summand for `k >= 2` while `scalar_base` replaces it when
/// `k = 1` (the summands are then the scalars `scalar_base * w^j`).
/// `zero_blocks` is the direct-sum certificate of the zero regime.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(bound(
    serialize = "T: Scalar + serde::Serialize",
    deserialize = "T: Scalar + serde::de::DeserializeOwned"
))]
pub struct DecompositionReport<T> {
    pub reducible: bool,
    pub reason: Reason,
    pub period_k: Option<usize>,
    pub theta: Option<T>,
    pub base_block: Option<WeightedShift<T>>,
    #[serde(with = "crate::serde_pairs::pair_opt")]
    pub scalar_base: Option<Complex<T>>,
    pub zero_blocks: Option<ZeroBlockDecomposition<T>>,
    pub unitary: Option<ComplexMatrix<T>>,
    pub block_residual: Option<T>,
}

impl<T: Scalar> DecompositionReport<T> {
    fn bare(reducible: bool, reason: Reason) -> Self {
        DecompositionReport {
            reducible,
            reason,
            period_k: None,
            theta: None,
            base_block: None,
            scalar_base: None,
            zero_blocks: None,
            unitary: None,
            block_residual: None,
        }
    }
}

/// Smallest proper period of the modulus sequence: the least `k` with
/// `k | n`, `k <= n/2`, and `|a_j| = |a_{k+j}|` for all `j` within `tol`.
pub fn minimal_period<T: Scalar>(ws: &WeightedShift<T>, tol: T) -> Option<usize> {
    let n = ws.n();
    let m = ws.moduli();
    'periods: for k in 1..=n / 2 {
        if !n.is_multiple_of(k) {
            continue;
        }
        for j in 0..n - k {
            if (m[j] - m[j + k]).abs() > tol {
                continue 'periods;
            }
        }
        return Some(k);
    }
    None
}

/// Classifies the shift. Two or more zero weights win over periodicity;
/// the returned report carries no certificate.
pub fn is_reducible<T: Scalar>(ws: &WeightedShift<T>, tol: T) -> DecompositionReport<T> {
    if ws.zero_count(tol) >= 2 {
        return DecompositionReport::bare(true, Reason::TwoOrMoreZeros);
    }
    match minimal_period(ws, tol) {
        Some(k) => {
            let mut r = DecompositionReport::bare(true, Reason::PeriodicWeights);
            r.period_k = Some(k);
            r
        }
        None => DecompositionReport::bare(false, Reason::Irreducible),
    }
}

/// Block Fourier unitary for order `n` and period `k`: writing `m = n/k`
/// and `w = e^{2 pi i / n}`, block `(s, t)` (1-based) is
/// `w^{(s-1)(t-1)k} V_{t-1} / sqrt(m)` with `V_j = diag(1, w^j, ..., w^{(k-1)j})`.
pub fn fourier_block_unitary<T: Scalar>(n: usize, k: usize) -> Result<ComplexMatrix<T>> {
    if k == 0 || !n.is_multiple_of(k) || k > n / 2 {
        return Err(Error::NotADivisor { k, n });
    }
    let m = n / k;
    let scale = T::from_usize(m).unwrap().sqrt().recip();
    let base = T::TAU() / T::from_usize(n).unwrap();
    Ok(ComplexMatrix::from_fn(n, |r, c| {
        if r % k == c % k {
            let t = c / k;
            let e = T::from_usize(t * r).unwrap() * base;
            Complex::from_polar(scale, e)
        } else {
            Complex::new(T::zero(), T::zero())
        }
    }))
}

/// Builds the explicit decomposition certificate for a reducible shift.
///
/// Periodic regime: `U = D F` with `D` the phase-normalizing diagonal and
/// `F` the block Fourier matrix; `U* A U` is compared against
/// `e^{i theta} (B + wB + ... + w^{m-1}B)` entrywise and the largest
/// deviation is reported. Zero regime: `U` is the cyclic permutation
/// rotating the last zero into the final slot and the target is the direct
/// sum of the truncated blocks. Irreducible shifts are rejected.
pub fn decompose<T: Scalar>(ws: &WeightedShift<T>, tol: T) -> Result<DecompositionReport<T>> {
    let n = ws.n();
    let decision = is_reducible(ws, tol);
    match decision.reason {
        Reason::Irreducible => Err(Error::WrongRegime {
            required: "reducible",
            actual: "irreducible",
        }),
        Reason::TwoOrMoreZeros => {
            let split = split_at_zeros(ws, tol)?;
            let p = rotation_witness::<T>(n, split.rotation)?;
            let conj = p.adjoint().mul(&ws.to_matrix())?.mul(&p)?;
            let residual = conj.max_abs_diff(&split.to_matrix())?;
            let mut r = DecompositionReport::bare(true, Reason::TwoOrMoreZeros);
            r.zero_blocks = Some(split);
            r.unitary = Some(p);
            r.block_residual = Some(residual);
            Ok(r)
        }
        Reason::PeriodicWeights => {
            let k = decision.period_k.unwrap();
            if let Some(j) = ws.weights().iter().position(|w| w.norm() <= tol) {
                return Err(Error::UnexpectedZeroWeight { index: j + 1 });
            }
            let m = n / k;
            let theta = ws.weights().iter().map(|w| arg_principal(*w)).sum::<T>()
                / T::from_usize(n).unwrap();
            let rotor = Complex::from_polar(T::one(), theta);
            // d_{j+1} = d_j e^{i theta} |a_j| / a_j closes exactly around
            // the cycle because the phases sum to n theta.
            let mut diag = Vec::with_capacity(n);
            let mut cur = Complex::new(T::one(), T::zero());
            diag.push(cur);
            for j in 0..n - 1 {
                let w = ws.weights()[j];
                let step = rotor.scale(w.norm()) / w;
                cur *= step.scale(step.norm().recip());
                cur = cur.scale(cur.norm().recip());
                diag.push(cur);
            }
            let d = ComplexMatrix::diagonal(&diag);
            let f = fourier_block_unitary::<T>(n, k)?;
            let u = d.mul(&f)?;
            let moduli = ws.moduli();
            let b_mat = shift_matrix(
                &moduli[..k]
                    .iter()
                    .map(|x| Complex::new(*x, T::zero()))
                    .collect::<Vec<_>>(),
            );
            let omega = T::TAU() / T::from_usize(n).unwrap();
            let summands: Vec<ComplexMatrix<T>> = (0..m)
                .map(|j| {
                    b_mat.scale(Complex::from_polar(
                        T::one(),
                        T::from_usize(j).unwrap() * omega,
                    ))
                })
                .collect();
            let target = ComplexMatrix::direct_sum(&summands).scale(rotor);
            let conj = u.adjoint().mul(&ws.to_matrix())?.mul(&u)?;
            let residual = conj.max_abs_diff(&target)?;
            let mut r = DecompositionReport::bare(true, Reason::PeriodicWeights);
            r.period_k = Some(k);
            r.theta = Some(theta);
            if k >= 2 {
                r.base_block = Some(WeightedShift::new(
                    moduli[..k]
                        .iter()
                        .map(|x| Complex::new(*x, T::zero()))
                        .collect(),
                )?);
            } else {
                r.scalar_base = Some(Complex::from_polar(moduli[0], theta));
            }
            r.unitary = Some(u);
            r.block_residual = Some(residual);
            Ok(r)
        }
    }
}
