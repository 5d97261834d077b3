//! Dense complex linear algebra: determinants via LU factorization with
//! scaled partial pivoting and Hermitian eigenvalues via cyclic complex
//! Jacobi rotations.
//!
//! These routines serve as numerical oracles for the closed-form results
//! elsewhere in the crate, so they are deliberately self-contained. The
//! matrices involved are small, which keeps the Jacobi sweep count low and
//! its accuracy high.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::Scalar;

/// Eigenvalues of a Hermitian matrix in ascending order.
///
/// `residual` is the off-diagonal Frobenius norm at termination when no
/// eigenvectors were requested, and `max_j ||H v_j - w_j v_j||` otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult<T> {
    pub values: Vec<T>,
    pub residual: T,
}

/// Eigenvalues in ascending order with matching eigenvector columns.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPairs<T> {
    pub values: Vec<T>,
    pub vectors: ComplexMatrix<T>,
    pub residual: T,
}

const MAX_SWEEPS: usize = 100;

/// Determinant by LU factorization with scaled partial pivoting.
///
/// A singular matrix yields zero; there is no error path.
pub fn det<T: Scalar>(m: &ComplexMatrix<T>) -> Complex<T> {
    let n = m.dim();
    let zero = Complex::new(T::zero(), T::zero());
    if n == 0 {
        return Complex::new(T::one(), T::zero());
    }
    let mut rows: Vec<Vec<Complex<T>>> = (0..n).map(|r| m.row(r).to_vec()).collect();
    let mut scales = Vec::with_capacity(n);
    for row in &rows {
        let s = row.iter().map(|z| z.norm()).fold(T::zero(), T::max);
        if s.is_zero() {
            return zero;
        }
        scales.push(s);
    }
    let mut negate = false;
    let mut out = Complex::new(T::one(), T::zero());
    for k in 0..n {
        let mut best = k;
        let mut best_ratio = rows[k][k].norm() / scales[k];
        for r in k + 1..n {
            let ratio = rows[r][k].norm() / scales[r];
            if ratio > best_ratio {
                best = r;
                best_ratio = ratio;
            }
        }
        if rows[best][k].norm().is_zero() {
            return zero;
        }
        if best != k {
            rows.swap(best, k);
            scales.swap(best, k);
            negate = !negate;
        }
        let pivot = rows[k][k];
        out *= pivot;
        for r in k + 1..n {
            let factor = rows[r][k] / pivot;
            if factor.re.is_zero() && factor.im.is_zero() {
                continue;
            }
            for c in k + 1..n {
                let v = rows[r][c] - factor * rows[k][c];
                rows[r][c] = v;
            }
        }
    }
    if negate {
        -out
    } else {
        out
    }
}

/// Eigenvalues of a Hermitian matrix, ascending.
///
/// The input may deviate from exact Hermitian symmetry by at most the
/// scalar type's `hermitian_tol` relative to its Frobenius norm.
pub fn hermitian_eigenvalues<T: Scalar>(h: &ComplexMatrix<T>) -> Result<EigenResult<T>> {
    let (values, _, off) = jacobi(h, false)?;
    Ok(EigenResult {
        values,
        residual: off,
    })
}

/// Eigenvalues with eigenvectors, accumulated from the Jacobi rotations.
pub fn hermitian_eigen<T: Scalar>(h: &ComplexMatrix<T>) -> Result<EigenPairs<T>> {
    let (values, vectors, _) = jacobi(h, true)?;
    let vectors = vectors.expect("vectors requested");
    let n = h.dim();
    let mut residual = T::zero();
    for (j, w) in values.iter().enumerate() {
        let v: Vec<Complex<T>> = (0..n).map(|r| vectors.get(r, j)).collect();
        let hv = h.mul_vec(&v)?;
        let err = hv
            .iter()
            .zip(&v)
            .map(|(x, y)| (*x - y.scale(*w)).norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt();
        residual = residual.max(err);
    }
    Ok(EigenPairs {
        values,
        vectors,
        residual,
    })
}

/// Checks `||U* U - I||_max <= tol`.
pub fn is_unitary<T: Scalar>(u: &ComplexMatrix<T>, tol: T) -> bool {
    let p = match u.adjoint().mul(u) {
        Ok(p) => p,
        Err(_) => return false,
    };
    let n = u.dim();
    let mut worst = T::zero();
    for r in 0..n {
        for c in 0..n {
            let expected = if r == c { T::one() } else { T::zero() };
            let d = (p.get(r, c) - Complex::new(expected, T::zero())).norm();
            worst = worst.max(d);
        }
    }
    worst <= tol
}

fn off_diagonal_norm<T: Scalar>(a: &ComplexMatrix<T>) -> T {
    let n = a.dim();
    let mut acc = T::zero();
    for r in 0..n {
        for c in 0..n {
            if r != c {
                acc += a.get(r, c).norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn jacobi<T: Scalar>(
    h: &ComplexMatrix<T>,
    want_vectors: bool,
) -> Result<(Vec<T>, Option<ComplexMatrix<T>>, T)> {
    let n = h.dim();
    let norm = h.frobenius_norm();
    let defect = h.sub(&h.adjoint())?.frobenius_norm();
    if defect > T::hermitian_tol() * norm {
        return Err(Error::NotHermitian {
            defect: (defect / norm.max(T::min_positive_value()))
                .to_f64()
                .unwrap_or(f64::NAN),
        });
    }
    // Work on the exactly Hermitian average; the defect is within tolerance.
    let half = Complex::new(T::from_f64(0.5).unwrap(), T::zero());
    let mut a = h.add(&h.adjoint())?.scale(half);
    let mut v = if want_vectors {
        Some(ComplexMatrix::identity(n))
    } else {
        None
    };
    let target = T::eigen_tol() * norm;
    let mut off = off_diagonal_norm(&a);
    let mut sweeps = 0;
    while off > target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                residual: off.to_f64().unwrap_or(f64::NAN),
            });
        }
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                rotate_pair(&mut a, v.as_mut(), p, q);
            }
        }
        sweeps += 1;
        off = off_diagonal_norm(&a);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a.get(i, i)
            .re
            .partial_cmp(&a.get(j, j).re)
            .expect("finite eigenvalues")
    });
    let values = order.iter().map(|&i| a.get(i, i).re).collect();
    let vectors = v.map(|v| ComplexMatrix::from_fn(n, |r, c| v.get(r, order[c])));
    Ok((values, vectors, off))
}

/// One two-sided Jacobi rotation annihilating the `(p, q)` entry.
fn rotate_pair<T: Scalar>(
    a: &mut ComplexMatrix<T>,
    v: Option<&mut ComplexMatrix<T>>,
    p: usize,
    q: usize,
) {
    let beta = a.get(p, q);
    let babs = beta.norm();
    if babs.is_zero() {
        return;
    }
    let n = a.dim();
    let alpha = a.get(p, p).re;
    let gamma = a.get(q, q).re;
    let two = T::from_f64(2.0).unwrap();
    let tau = (alpha - gamma) / (two * babs);
    // Smaller root of t^2 + 2 tau t - 1 = 0 keeps the rotation angle small.
    let t = if tau.abs() > T::one() / T::epsilon() {
        (two * tau).recip()
    } else {
        let s = if tau >= T::zero() {
            T::one()
        } else {
            -T::one()
        };
        s / (tau.abs() + (tau * tau + T::one()).sqrt())
    };
    let c = (T::one() + t * t).sqrt().recip();
    let s = t * c;
    let phase = beta / Complex::new(babs, T::zero());
    let sp = phase.scale(s);
    let spc = phase.conj().scale(s);
    // columns: col_p <- c col_p + s e^{-i phi} col_q, col_q <- c col_q - s e^{i phi} col_p
    for r in 0..n {
        let x = a.get(r, p);
        let y = a.get(r, q);
        a.set(r, p, x.scale(c) + y * spc);
        a.set(r, q, y.scale(c) - x * sp);
    }
    // rows: row_p <- c row_p + s e^{i phi} row_q, row_q <- c row_q - s e^{-i phi} row_p
    for col in 0..n {
        let x = a.get(p, col);
        let y = a.get(q, col);
        a.set(p, col, x.scale(c) + y * sp);
        a.set(q, col, y.scale(c) - x * spc);
    }
    // The rotation zeroes the pair exactly in exact arithmetic; clamp the
    // roundoff and keep the diagonal real.
    let z = Complex::new(T::zero(), T::zero());
    a.set(p, q, z);
    a.set(q, p, z);
    let dp = a.get(p, p).re;
    let dq = a.get(q, q).re;
    a.set(p, p, Complex::new(dp, T::zero()));
    a.set(q, q, Complex::new(dq, T::zero()));
    if let Some(v) = v {
        for r in 0..n {
            let x = v.get(r, p);
            let y = v.get(r, q);
            v.set(r, p, x.scale(c) + y * spc);
            v.set(r, q, y.scale(c) - x * sp);
        }
    }
}
