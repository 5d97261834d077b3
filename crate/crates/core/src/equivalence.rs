//! Unitary equivalence of weighted shifts.
//!
//! Two shifts of the same order are unitarily equivalent exactly when
//!
//! * with at most two zero weights: the weight products agree and the
//!   modulus sequences match up to a cyclic offset;
//! * with three or more zero weights: after rotating a zero into the last
//!   slot, both matrices split into truncated blocks at their zeros, and the
//!   two block families agree as multisets of modulus sequences.
//!
//! The second regime is genuinely different: permuting blocks preserves
//! equivalence but generally destroys any cyclic offset between the weight
//! lists. Every positive decision can be certified by an explicit unitary
//! built from cyclic permutations, block permutations, and diagonal phase
//! corrections; `check_equivalent_with_witness` returns it.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::Scalar;
use crate::shift::{arg_principal, shift_matrix, WeightedShift};

/// Zero-count regime the decision ran in, derived from the first shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Regime {
    NoZeros,
    OneZero,
    TwoZeros,
    ManyZeros,
}

impl Regime {
    fn from_zero_count(count: usize) -> Self {
        match count {
            0 => Regime::NoZeros,
            1 => Regime::OneZero,
            2 => Regime::TwoZeros,
            _ => Regime::ManyZeros,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Regime::NoZeros => "no zeros",
            Regime::OneZero => "one zero",
            Regime::TwoZeros => "two zeros",
            Regime::ManyZeros => "many zeros",
        }
    }
}

/// Outcome of an equivalence decision.
///
/// `shift_k` uses the 1-based convention with `k = n` meaning the identity
/// offset. `block_matching[i]` is the 1-based index of the first shift's
/// block matching block `i + 1` of the second. `small_n` flags order-2
/// inputs, which the main criteria cover only degenerately.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(bound(
    serialize = "T: Scalar + serde::Serialize",
    deserialize = "T: Scalar + serde::de::DeserializeOwned"
))]
pub struct EquivalenceReport<T> {
    pub equivalent: bool,
    pub regime: Regime,
    pub small_n: bool,
    pub shift_k: Option<usize>,
    pub block_matching: Option<Vec<usize>>,
    pub witness: Option<ComplexMatrix<T>>,
    pub witness_residual: Option<T>,
}

/// One truncated block cut out of a zero-ended shift.
///
/// The stored weights are the source weights of the block's positions; the
/// last one is the (within-tolerance) zero that severs the block from its
/// successor. As a matrix the block is `size x size` with the interior
/// weights on the superdiagonal and nothing in the corner.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroBlock<T> {
    weights: Vec<Complex<T>>,
}

impl<T: Scalar> ZeroBlock<T> {
    fn new(weights: Vec<Complex<T>>) -> Self {
        debug_assert!(!weights.is_empty());
        ZeroBlock { weights }
    }

    pub fn size(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Complex<T>] {
        &self.weights
    }

    pub fn moduli(&self) -> Vec<T> {
        self.weights.iter().map(|w| w.norm()).collect()
    }

    /// Matrix form: the severed zero link is dropped, so a size-1 block is
    /// the 1x1 zero matrix.
    pub fn to_matrix(&self) -> ComplexMatrix<T> {
        let k = self.size();
        let mut interior = self.weights[..k - 1].to_vec();
        interior.push(Complex::new(T::zero(), T::zero()));
        shift_matrix(&interior)
    }
}

impl<T: Scalar + serde::Serialize> serde::Serialize for ZeroBlock<T> {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.weights.len()))?;
        for w in &self.weights {
            seq.serialize_element(&crate::serde_pairs::PairRef(w))?;
        }
        seq.end()
    }
}

impl<'de, T: Scalar + serde::Deserialize<'de>> serde::Deserialize<'de> for ZeroBlock<T> {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<crate::serde_pairs::PairOwned<T>>::deserialize(deserializer)?;
        if pairs.is_empty() {
            return Err(serde::de::Error::custom(
                "zero block needs at least one weight",
            ));
        }
        Ok(ZeroBlock {
            weights: pairs.into_iter().map(|p| p.0).collect(),
        })
    }
}

/// Zero-ended rotation of a shift cut into blocks at every zero weight.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(bound(
    serialize = "T: Scalar + serde::Serialize",
    deserialize = "T: Scalar + serde::de::DeserializeOwned"
))]
pub struct ZeroBlockDecomposition<T> {
    /// Cyclic offset applied first so the final weight is a zero (`1..=n`,
    /// `n` meaning the input already ended in one).
    pub rotation: usize,
    pub blocks: Vec<ZeroBlock<T>>,
}

impl<T: Scalar> ZeroBlockDecomposition<T> {
    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(ZeroBlock::size).collect()
    }

    /// Direct sum of the block matrices, in block order.
    pub fn to_matrix(&self) -> ComplexMatrix<T> {
        let mats: Vec<ComplexMatrix<T>> = self.blocks.iter().map(ZeroBlock::to_matrix).collect();
        ComplexMatrix::direct_sum(&mats)
    }
}

/// Diagonal unitary relating two shifts with equal modulus sequences,
/// together with the global phase it extracts: `A D = D (e^{i phase} B)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalWitness<T> {
    pub unitary: ComplexMatrix<T>,
    pub phase: T,
}

/// Smallest `k` in `1..=n` with `|b_j| = |a_{k+j}|` for every `j`, if any.
///
/// `k = n` reports the identity offset.
pub fn cyclic_modulus_shift<T: Scalar>(
    a: &WeightedShift<T>,
    b: &WeightedShift<T>,
    tol: T,
) -> Result<Option<usize>> {
    let n = a.n();
    if b.n() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: b.n(),
        });
    }
    let am = a.moduli();
    let bm = b.moduli();
    'offsets: for k in 1..=n {
        for j in 0..n {
            if (bm[j] - am[(k + j) % n]).abs() > tol {
                continue 'offsets;
            }
        }
        return Ok(Some(k));
    }
    Ok(None)
}

/// Rotates the last zero weight into the final slot and cuts after every
/// zero.
pub fn split_at_zeros<T: Scalar>(
    ws: &WeightedShift<T>,
    tol: T,
) -> Result<ZeroBlockDecomposition<T>> {
    let zeros = ws.zero_positions(tol);
    let last = *zeros.last().ok_or(Error::NoZeroWeight)?;
    let rotated = ws.rotate(last as i64);
    let mut blocks = Vec::new();
    let mut current = Vec::new();
    for w in rotated.weights() {
        current.push(*w);
        if w.norm() <= tol {
            blocks.push(ZeroBlock::new(std::mem::take(&mut current)));
        }
    }
    debug_assert!(current.is_empty());
    Ok(ZeroBlockDecomposition {
        rotation: last,
        blocks,
    })
}

/// Cyclic permutation witness for the offset `k`: the unitary `P` with
/// `P* A P` equal to the `k`-rotation of `A`, entrywise exactly.
pub fn rotation_witness<T: Scalar>(n: usize, k: usize) -> Result<ComplexMatrix<T>> {
    if k < 1 || k > n {
        return Err(Error::OffsetOutOfRange { got: k, n });
    }
    Ok(ComplexMatrix::from_fn(n, |r, c| {
        if r == (c + k) % n {
            Complex::new(T::one(), T::zero())
        } else {
            Complex::new(T::zero(), T::zero())
        }
    }))
}

/// Diagonal phase witness for shifts with pointwise equal moduli and no
/// zero weights.
///
/// Returns `D` and the phase `psi` with `A D = D (e^{i psi} B)`; the chain
/// `d_{j+1} = d_j e^{i psi} b_j / a_j` closes around the cycle because
/// `n psi` matches the argument gap between the two weight products.
pub fn diagonal_witness<T: Scalar>(
    a: &WeightedShift<T>,
    b: &WeightedShift<T>,
) -> Result<DiagonalWitness<T>> {
    let n = a.n();
    if b.n() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: b.n(),
        });
    }
    let tol = T::default_tol();
    let mut phase_sum = T::zero();
    for j in 0..n {
        let (aj, bj) = (a.weights()[j], b.weights()[j]);
        if aj.norm() <= tol || bj.norm() <= tol {
            return Err(Error::UnexpectedZeroWeight { index: j + 1 });
        }
        if (aj.norm() - bj.norm()).abs() > tol {
            return Err(Error::ModulusMismatch { index: j + 1 });
        }
        phase_sum += arg_principal(aj) - arg_principal(bj);
    }
    let psi = phase_sum / T::from_usize(n).unwrap();
    let rotor = Complex::from_polar(T::one(), psi);
    let mut d = Vec::with_capacity(n);
    let mut cur = Complex::new(T::one(), T::zero());
    d.push(cur);
    for j in 0..n - 1 {
        let step = rotor * b.weights()[j] / a.weights()[j];
        cur *= step.scale(step.norm().recip());
        cur = cur.scale(cur.norm().recip());
        d.push(cur);
    }
    Ok(DiagonalWitness {
        unitary: ComplexMatrix::diagonal(&d),
        phase: psi,
    })
}

/// Decides equivalence; the report omits the witness.
pub fn check_equivalent<T: Scalar>(
    a: &WeightedShift<T>,
    b: &WeightedShift<T>,
    tol: T,
) -> Result<EquivalenceReport<T>> {
    decide(a, b, tol, false)
}

/// Decides equivalence and, on a positive answer, attaches a composed
/// unitary witness `U` with `U* A U = B` and its residual `max |AU - UB|`.
pub fn check_equivalent_with_witness<T: Scalar>(
    a: &WeightedShift<T>,
    b: &WeightedShift<T>,
    tol: T,
) -> Result<EquivalenceReport<T>> {
    decide(a, b, tol, true)
}

fn decide<T: Scalar>(
    a: &WeightedShift<T>,
    b: &WeightedShift<T>,
    tol: T,
    want_witness: bool,
) -> Result<EquivalenceReport<T>> {
    let n = a.n();
    if b.n() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: b.n(),
        });
    }
    let zeros_a = a.zero_positions(tol).len();
    let zeros_b = b.zero_positions(tol).len();
    let regime = Regime::from_zero_count(zeros_a);
    let mut report = EquivalenceReport {
        equivalent: false,
        regime,
        small_n: n == 2,
        shift_k: None,
        block_matching: None,
        witness: None,
        witness_residual: None,
    };
    if regime != Regime::ManyZeros {
        let k = cyclic_modulus_shift(a, b, tol)?;
        report.shift_k = k;
        let pa = a.product();
        let pb = b.product();
        let products_agree = (pa - pb).norm() <= tol * T::one().max(pa.norm());
        report.equivalent = products_agree && k.is_some();
        if report.equivalent && want_witness {
            let (u, res) = few_zero_witness(a, b, k.unwrap(), tol);
            report.witness = Some(u);
            report.witness_residual = Some(res);
        }
    } else {
        // Equal zero counts are necessary; the singular values match only
        // then. Block comparison handles the rest.
        if zeros_a == zeros_b {
            let da = split_at_zeros(a, tol)?;
            let db = split_at_zeros(b, tol)?;
            if let Some(matching) = match_blocks(&da, &db, tol) {
                report.equivalent = true;
                if want_witness {
                    let (u, res) = many_zero_witness(a, b, &da, &db, &matching, tol);
                    report.witness = Some(u);
                    report.witness_residual = Some(res);
                }
                report.block_matching = Some(matching);
            }
        }
    }
    Ok(report)
}

/// Matches blocks of equal modulus sequence; `out[i]` is the 1-based index
/// of the first decomposition's block paired with block `i + 1` of the
/// second. Lexicographic sort by (size, moduli) makes the pairing
/// deterministic.
fn match_blocks<T: Scalar>(
    da: &ZeroBlockDecomposition<T>,
    db: &ZeroBlockDecomposition<T>,
    tol: T,
) -> Option<Vec<usize>> {
    let m = da.blocks.len();
    if db.blocks.len() != m {
        return None;
    }
    let keys_a: Vec<Vec<T>> = da.blocks.iter().map(ZeroBlock::moduli).collect();
    let keys_b: Vec<Vec<T>> = db.blocks.iter().map(ZeroBlock::moduli).collect();
    fn by_key<T: Scalar>(keys: &[Vec<T>], i: usize, j: usize) -> std::cmp::Ordering {
        let (ki, kj) = (&keys[i], &keys[j]);
        ki.len()
            .cmp(&kj.len())
            .then_with(|| ki.partial_cmp(kj).expect("finite moduli"))
    }
    let mut order_a: Vec<usize> = (0..m).collect();
    let mut order_b: Vec<usize> = (0..m).collect();
    order_a.sort_by(|&i, &j| by_key(&keys_a, i, j));
    order_b.sort_by(|&i, &j| by_key(&keys_b, i, j));
    let mut matching = vec![0usize; m];
    for (ia, ib) in order_a.iter().zip(&order_b) {
        let (ka, kb) = (&keys_a[*ia], &keys_b[*ib]);
        if ka.len() != kb.len() {
            return None;
        }
        if ka.iter().zip(kb).any(|(x, y)| (*x - *y).abs() > tol) {
            return None;
        }
        matching[*ib] = ia + 1;
    }
    Some(matching)
}

/// Witness for the cyclic-offset regimes: rotate `a` by `k` to line the
/// moduli up with `b`, then fix phases with a diagonal chain. With no zero
/// link the chain starts at position 1 and its closing defect is controlled
/// by the product condition; otherwise it is anchored right after a zero
/// link, which absorbs any leftover phase exactly.
fn few_zero_witness<T: Scalar>(
    a: &WeightedShift<T>,
    b: &WeightedShift<T>,
    k: usize,
    tol: T,
) -> (ComplexMatrix<T>, T) {
    let n = a.n();
    let rotated = a.rotate(k as i64);
    let p = rotation_witness::<T>(n, k).expect("k validated");
    let d = phase_chain(rotated.weights(), b.weights(), tol);
    let u = p.mul(&ComplexMatrix::diagonal(&d)).expect("same dim");
    let res = witness_residual(a, b, &u);
    (u, res)
}

fn phase_chain<T: Scalar>(from: &[Complex<T>], to: &[Complex<T>], tol: T) -> Vec<Complex<T>> {
    let n = from.len();
    let one = Complex::new(T::one(), T::zero());
    let dead = |j: usize| from[j].norm() <= tol || to[j].norm() <= tol;
    // Walking the links from just after the last dead one leaves that dead
    // link as the only unvisited constraint, and a dead link constrains
    // nothing. Without dead links the walk starts at position 1 and the
    // wraparound defect is what the product condition bounds.
    let start = (0..n).rev().find(|&j| dead(j)).map_or(0, |z| (z + 1) % n);
    let mut d = vec![one; n];
    let mut cur = one;
    for t in 0..n - 1 {
        let j = (start + t) % n;
        if dead(j) {
            cur = one;
        } else {
            let step = to[j] / from[j];
            cur *= step.scale(step.norm().recip());
            cur = cur.scale(cur.norm().recip());
        }
        d[(j + 1) % n] = cur;
    }
    d
}

/// Witness for the block regime: rotate both shifts into zero-ended form,
/// permute whole blocks to pair matched ones, then fix phases inside each
/// block. No chain wraps around, so every link is satisfied exactly.
fn many_zero_witness<T: Scalar>(
    a: &WeightedShift<T>,
    b: &WeightedShift<T>,
    da: &ZeroBlockDecomposition<T>,
    db: &ZeroBlockDecomposition<T>,
    matching: &[usize],
    tol: T,
) -> (ComplexMatrix<T>, T) {
    let n = a.n();
    let pa = rotation_witness::<T>(n, da.rotation).expect("valid rotation");
    let pb = rotation_witness::<T>(n, db.rotation).expect("valid rotation");
    let offsets_a: Vec<usize> = da
        .blocks
        .iter()
        .scan(0usize, |acc, blk| {
            let start = *acc;
            *acc += blk.size();
            Some(start)
        })
        .collect();
    // q maps each coordinate of the reordered direct sum to its position in
    // the zero-ended rotation of `a`.
    let mut q_map = Vec::with_capacity(n);
    for &ai in matching {
        let blk = &da.blocks[ai - 1];
        let start = offsets_a[ai - 1];
        q_map.extend(start..start + blk.size());
    }
    let q = ComplexMatrix::from_fn(n, |r, c| {
        if r == q_map[c] {
            Complex::new(T::one(), T::zero())
        } else {
            Complex::new(T::zero(), T::zero())
        }
    });
    // Per-block phase chains against b's zero-ended weight list.
    let mut d = Vec::with_capacity(n);
    let b_rot = b.rotate(db.rotation as i64);
    let mut pos = 0usize;
    for (ib, &ai) in matching.iter().enumerate() {
        let from = da.blocks[ai - 1].weights();
        let to = &b_rot.weights()[pos..pos + db.blocks[ib].size()];
        let mut cur = Complex::new(T::one(), T::zero());
        d.push(cur);
        for j in 0..from.len() - 1 {
            if from[j].norm() > tol && to[j].norm() > tol {
                let step = to[j] / from[j];
                cur *= step.scale(step.norm().recip());
                cur = cur.scale(cur.norm().recip());
            }
            d.push(cur);
        }
        pos += db.blocks[ib].size();
    }
    let u = pa
        .mul(&q)
        .and_then(|m| m.mul(&ComplexMatrix::diagonal(&d)))
        .and_then(|m| m.mul(&pb.adjoint()))
        .expect("same dim");
    let res = witness_residual(a, b, &u);
    (u, res)
}

fn witness_residual<T: Scalar>(
    a: &WeightedShift<T>,
    b: &WeightedShift<T>,
    u: &ComplexMatrix<T>,
) -> T {
    let au = a.to_matrix().mul(u).expect("same dim");
    let ub = u.mul(&b.to_matrix()).expect("same dim");
    au.max_abs_diff(&ub).expect("same dim")
}
