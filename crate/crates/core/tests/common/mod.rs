//! Shared helpers for the integration suites.

use num_complex::Complex;
use wshift::ComplexMatrix64;

type C = Complex<f64>;

/// Complex dimension of the commutant of the *-algebra generated by `a`:
/// the nullity of the stacked linear system `XA - AX = 0`, `XA* - A*X = 0`
/// in the `n^2` unknowns `X`. The matrix is reducible exactly when this
/// dimension is at least 2, i.e. when some non-scalar `X` (and hence a
/// nontrivial orthogonal projection) commutes with both `A` and `A*`.
pub fn commutant_nullity(a: &ComplexMatrix64) -> usize {
    let n = a.dim();
    let n2 = n * n;
    let adj = a.adjoint();
    let mut rows: Vec<Vec<C>> = Vec::with_capacity(2 * n2);
    for m in [a, &adj] {
        for i in 0..n {
            for j in 0..n {
                // (X M - M X)[i][j] as a linear form in the entries of X
                let mut row = vec![C::new(0.0, 0.0); n2];
                for k in 0..n {
                    row[i * n + k] += m.get(k, j);
                    row[k * n + j] -= m.get(i, k);
                }
                rows.push(row);
            }
        }
    }
    let largest = rows
        .iter()
        .flatten()
        .map(|z| z.norm())
        .fold(0.0f64, f64::max);
    let tol = 1e-8 * largest.max(1.0);
    let mut rank = 0usize;
    for col in 0..n2 {
        let (best, best_v) = (rank..rows.len())
            .map(|r| (r, rows[r][col].norm()))
            .fold((rank, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best_v <= tol {
            continue;
        }
        rows.swap(rank, best);
        let (top, rest) = rows.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = pivot_row[col];
        for row in rest.iter_mut() {
            let factor = row[col] / pivot;
            if factor.norm() == 0.0 {
                continue;
            }
            for (dst, src) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *dst -= factor * *src;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    n2 - rank
}
