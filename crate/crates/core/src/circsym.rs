//! Elementary symmetric functions restricted to index sets with no two
//! cyclically adjacent members.
//!
//! For values `v_1, ..., v_n` arranged on a cycle, `circ_sym(v, r)` sums the
//! products `v_{j_1} ... v_{j_r}` over all size-`r` subsets in which no two
//! chosen indices are neighbours on the cycle (with `1` and `n` counting as
//! neighbours). The path-graph analogue `linear_sym` drops the wrap-around
//! adjacency. These quantities drive the rotation-invariant coefficients of
//! the characteristic surface.
//!
//! The fast path is a two-term recurrence; `circ_sym_brute` and
//! `linear_sym_brute` enumerate subsets directly and exist to cross-check it.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Full table of the cyclic functions for one value list.
#[derive(Debug, Clone, PartialEq)]
pub struct CircSymTable<T> {
    /// `values[r]` holds the order-`r` function; indices run `0..=n/2`.
    pub values: Vec<T>,
}

impl<T: Scalar> CircSymTable<T> {
    /// Highest order with a nonvanishing subset count, `floor(n / 2)`.
    pub fn max_order(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, r: usize) -> T {
        if r < self.values.len() {
            self.values[r]
        } else {
            T::zero()
        }
    }
}

/// `linear_sym` for every prefix length, as a table `l[m][r]`.
///
/// The recurrence splits on whether position `m` is chosen:
/// `l[m][r] = l[m-1][r] + v_m * l[m-2][r-1]`.
fn linear_table<T: Scalar>(v: &[T], max_r: usize) -> Vec<Vec<T>> {
    let n = v.len();
    let mut l = vec![vec![T::zero(); max_r + 1]; n + 1];
    for row in l.iter_mut() {
        row[0] = T::one();
    }
    for m in 1..=n {
        for r in 1..=max_r {
            let skip = l[m - 1][r];
            let take = if m >= 2 {
                v[m - 1] * l[m - 2][r - 1]
            } else if r == 1 {
                v[m - 1]
            } else {
                T::zero()
            };
            l[m][r] = skip + take;
        }
    }
    l
}

/// Sum of products over size-`r` subsets of a path with no two adjacent.
pub fn linear_sym<T: Scalar>(v: &[T], r: usize) -> T {
    if r == 0 {
        return T::one();
    }
    if 2 * r > v.len() + 1 {
        return T::zero();
    }
    linear_table(v, r)[v.len()][r]
}

/// Sum of products over size-`r` cyclically non-adjacent subsets.
///
/// On the cycle, a subset either avoids the pair `{1, n}` entirely (a path
/// subset) or contains both endpoints of some chord; conditioning on whether
/// `1` and `n` are picked together reduces to the path case:
/// the subsets picking both `1` and `n` contribute
/// `v_1 v_n * linear_sym(v_3 .. v_{n-2}, r - 2)`, and these are exactly the
/// subsets counted by the path formula but forbidden on the cycle.
pub fn circ_sym<T: Scalar>(v: &[T], r: usize) -> T {
    let n = v.len();
    if r == 0 {
        return T::one();
    }
    if 2 * r > n {
        return T::zero();
    }
    let all = linear_sym(v, r);
    if r >= 2 && n >= 4 {
        let inner = &v[2..n - 2];
        all - v[0] * v[n - 1] * linear_sym(inner, r - 2)
    } else {
        all
    }
}

/// Every order at once, sharing one prefix table.
pub fn circ_sym_table<T: Scalar>(v: &[T]) -> CircSymTable<T> {
    let n = v.len();
    let top = n / 2;
    let mut values = Vec::with_capacity(top + 1);
    if top == 0 {
        values.push(T::one());
        return CircSymTable { values };
    }
    let full = linear_table(v, top);
    let inner: Vec<T> = if n >= 4 {
        v[2..n - 2].to_vec()
    } else {
        Vec::new()
    };
    let inner_table = linear_table(&inner, top.saturating_sub(2).max(1));
    values.push(T::one());
    for r in 1..=top {
        let mut s = full[n][r];
        if r >= 2 && n >= 4 {
            let correction = if 2 * (r - 2) > inner.len() + 1 {
                T::zero()
            } else {
                inner_table[inner.len()][r - 2]
            };
            s -= v[0] * v[n - 1] * correction;
        }
        values.push(s);
    }
    CircSymTable { values }
}

const BRUTE_MAX: usize = 24;

fn subset_products<T: Scalar>(v: &[T], r: usize, cyclic: bool) -> Result<T> {
    let n = v.len();
    if n > BRUTE_MAX {
        return Err(Error::BruteForceLimit {
            got: n,
            max: BRUTE_MAX,
        });
    }
    if r == 0 {
        return Ok(T::one());
    }
    if r > n {
        return Ok(T::zero());
    }
    let mut total = T::zero();
    // Gosper's hack walks the r-subsets of {0, .., n-1} in mask order.
    let limit: u32 = 1 << n;
    let mut mask: u32 = (1 << r) - 1;
    while mask < limit {
        if admissible(mask, n as u32, cyclic) {
            let mut prod = T::one();
            let mut bits = mask;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                prod *= v[j];
                bits &= bits - 1;
            }
            total += prod;
        }
        let c = mask & mask.wrapping_neg();
        let rpl = mask + c;
        if rpl >= limit || c == 0 {
            break;
        }
        mask = rpl | (((mask ^ rpl) >> 2) / c);
    }
    Ok(total)
}

fn admissible(mask: u32, n: u32, cyclic: bool) -> bool {
    if mask & (mask << 1) != 0 {
        return false;
    }
    if cyclic {
        // wrap-around neighbours; for n = 1 the single vertex is its own
        // neighbour, so any pick of it is inadmissible beyond r = 0.
        let first = mask & 1 != 0;
        let last = mask >> (n - 1) & 1 != 0;
        if first && last {
            return false;
        }
    }
    true
}

/// Direct enumeration of `circ_sym`; limited to `n <= 24`.
pub fn circ_sym_brute<T: Scalar>(v: &[T], r: usize) -> Result<T> {
    subset_products(v, r, true)
}

/// Direct enumeration of `linear_sym`; limited to `n <= 24`.
pub fn linear_sym_brute<T: Scalar>(v: &[T], r: usize) -> Result<T> {
    subset_products(v, r, false)
}
