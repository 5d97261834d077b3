//! Numerical range of a weighted shift: support-function sampling and the
//! algebraic equality test.
//!
//! The numerical range `W(A)` is the set of values `<Ax, x>` over unit
//! vectors; for a weighted shift it is invariant under rotation by
//! `e^{2 pi i / n}`. Its support function `h(theta)` is the top eigenvalue
//! of the Hermitian part of `e^{-i theta} A`, which is what the sampling
//! here computes.
//!
//! Equality of two ranges is decided algebraically, never by sampling: for
//! order at least 3, `W(A) = W(B)` holds exactly when the weight products
//! agree and the cyclic symmetric functions of the squared moduli agree
//! order by order. Shifts with a zero weight have a circular disc as their
//! range; [`disc_radius`] reports its radius together with the observed
//! deviation from circularity.

use num_complex::Complex;

use crate::circsym::circ_sym_table;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, hermitian_eigenvalues};
use crate::scalar::{real, Scalar};
use crate::shift::WeightedShift;

/// Eigenvalue gap below which a support point is treated as degenerate and
/// omitted: flat boundary portions need the whole top eigenspace.
const POINT_GAP: f64 = 1e-8;

/// Support-function samples at equally spaced angles.
///
/// `points[i]` is a maximizing boundary point for `angles[i]`, present only
/// when the top eigenvalue was simple.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(bound(
    serialize = "T: Scalar + serde::Serialize",
    deserialize = "T: Scalar + serde::de::DeserializeOwned"
))]
pub struct BoundarySamples<T> {
    pub angles: Vec<T>,
    pub support: Vec<T>,
    #[serde(with = "crate::serde_pairs::point_vec")]
    pub points: Vec<Option<Complex<T>>>,
}

/// Radius of the circular numerical range of a shift with a zero weight,
/// plus the largest deviation of the support function from it over a
/// cross-check sweep.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct DiscRadius<T> {
    pub radius: T,
    pub max_deviation: T,
}

/// `h(theta)`: the largest eigenvalue of `(e^{-i theta} A + e^{i theta} A*) / 2`.
pub fn support_function<T: Scalar>(ws: &WeightedShift<T>, theta: T) -> Result<T> {
    let rotated = ws.to_matrix().scale(Complex::from_polar(T::one(), -theta));
    let half = Complex::new(T::from_f64(0.5).unwrap(), T::zero());
    let herm = rotated.add(&rotated.adjoint())?.scale(half);
    let eig = hermitian_eigenvalues(&herm)?;
    Ok(*eig.values.last().expect("order at least 2"))
}

/// Samples the boundary at the `m` angles `2 pi i / m`.
pub fn boundary_samples<T: Scalar>(ws: &WeightedShift<T>, m: usize) -> Result<BoundarySamples<T>> {
    if m < 3 {
        return Err(Error::TooFewSamples { got: m, min: 3 });
    }
    let n = ws.n();
    let a = ws.to_matrix();
    let half = Complex::new(T::from_f64(0.5).unwrap(), T::zero());
    let gap_tol = real::<T>(POINT_GAP);
    let mut angles = Vec::with_capacity(m);
    let mut support = Vec::with_capacity(m);
    let mut points = Vec::with_capacity(m);
    for i in 0..m {
        let theta = T::TAU() * T::from_usize(i).unwrap() / T::from_usize(m).unwrap();
        let rotated = a.scale(Complex::from_polar(T::one(), -theta));
        let herm = rotated.add(&rotated.adjoint())?.scale(half);
        let eig = hermitian_eigen(&herm)?;
        let top = eig.values[n - 1];
        let gap = top - eig.values[n - 2];
        let point = if gap > gap_tol {
            let v: Vec<Complex<T>> = (0..n).map(|r| eig.vectors.get(r, n - 1)).collect();
            let av = a.mul_vec(&v)?;
            let mut acc = Complex::new(T::zero(), T::zero());
            for (x, y) in av.iter().zip(&v) {
                acc += *x * y.conj();
            }
            Some(acc)
        } else {
            None
        };
        angles.push(theta);
        support.push(top);
        points.push(point);
    }
    Ok(BoundarySamples {
        angles,
        support,
        points,
    })
}

/// Algebraic range-equality test: products agree and the cyclic symmetric
/// functions of the squared moduli agree for every order up to `n/2`.
/// Comparisons are scaled by `max(1, n * wmax^2)` with `wmax` the largest
/// modulus across both shifts.
pub fn ranges_equal<T: Scalar>(a: &WeightedShift<T>, b: &WeightedShift<T>, tol: T) -> Result<bool> {
    let n = a.n();
    if b.n() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: b.n(),
        });
    }
    if n < 3 {
        return Err(Error::DimensionTooSmall { n, min: 3 });
    }
    let wmax = a
        .moduli()
        .into_iter()
        .chain(b.moduli())
        .fold(T::zero(), T::max);
    let scale = T::one().max(wmax * wmax * T::from_usize(n).unwrap());
    if (a.product() - b.product()).norm() > tol * scale {
        return Ok(false);
    }
    let sq = |ws: &WeightedShift<T>| -> Vec<T> { ws.moduli().iter().map(|m| *m * *m).collect() };
    let ta = circ_sym_table(&sq(a));
    let tb = circ_sym_table(&sq(b));
    for r in 1..=n / 2 {
        if (ta.get(r) - tb.get(r)).abs() > tol * scale {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Disc radius for a shift with at least one zero weight: `h(0)`, checked
/// against seven more angles.
pub fn disc_radius<T: Scalar>(ws: &WeightedShift<T>) -> Result<DiscRadius<T>> {
    if ws.zero_count(T::default_tol()) == 0 {
        return Err(Error::NoZeroWeight);
    }
    let radius = support_function(ws, T::zero())?;
    let mut max_deviation = T::zero();
    for i in 1..8usize {
        let theta = T::TAU() * T::from_usize(i).unwrap() / real::<T>(8.0);
        let h = support_function(ws, theta)?;
        max_deviation = max_deviation.max((h - radius).abs());
    }
    Ok(DiscRadius {
        radius,
        max_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalence::check_equivalent;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    type C = Complex<f64>;

    fn shift(ws: &[f64]) -> WeightedShift<f64> {
        WeightedShift::from_reals(ws).unwrap()
    }

    fn random_shift(rng: &mut StdRng, n: usize) -> WeightedShift<f64> {
        let ws: Vec<C> = (0..n)
            .map(|_| {
                C::from_polar(
                    rng.gen_range(0.2..2.0),
                    rng.gen_range(0.0..std::f64::consts::TAU),
                )
            })
            .collect();
        WeightedShift::new(ws).unwrap()
    }

    const TOL: f64 = 1e-10;

    #[test]
    fn support_of_the_unweighted_cycle_is_a_cosine_hull() {
        // the matrix is a cyclic permutation: normal, spectrum the cube
        // roots of unity, so h(theta) = max_j cos(theta - 2 pi j / 3)
        let a = shift(&[1.0, 1.0, 1.0]);
        assert!((support_function(&a, 0.0).unwrap() - 1.0).abs() < 1e-12);
        let mut rng = StdRng::seed_from_u64(67);
        for _ in 0..25 {
            let theta = rng.gen_range(0.0..std::f64::consts::TAU);
            let want = (0..3)
                .map(|j| (theta - std::f64::consts::TAU * j as f64 / 3.0).cos())
                .fold(f64::MIN, f64::max);
            assert!((support_function(&a, theta).unwrap() - want).abs() < 1e-10);
        }
    }

    #[test]
    fn jordan_cell_gives_a_constant_half_support() {
        let a = shift(&[1.0, 0.0, 0.0]);
        let mut rng = StdRng::seed_from_u64(71);
        for _ in 0..10 {
            let theta = rng.gen_range(0.0..std::f64::consts::TAU);
            assert!((support_function(&a, theta).unwrap() - 0.5).abs() < 1e-11);
        }
        assert_eq!(
            support_function(&shift(&[0.0, 0.0, 0.0]), 1.23).unwrap(),
            0.0
        );
    }

    #[test]
    fn boundary_sampling_of_the_triangle() {
        let s = boundary_samples(&shift(&[1.0, 1.0, 1.0]), 6).unwrap();
        for (i, h) in s.support.iter().enumerate() {
            let want = if i % 2 == 0 { 1.0 } else { 0.5 };
            assert!((h - want).abs() < 1e-10, "angle {i}");
        }
        // vertices have a simple top eigenvalue, edge midpoints do not
        assert!((s.points[0].unwrap() - C::new(1.0, 0.0)).norm() < 1e-10);
        assert!(s.points[1].is_none());
        assert!(
            (s.points[2].unwrap() - C::from_polar(1.0, std::f64::consts::TAU / 3.0)).norm() < 1e-10
        );
        assert_eq!(s.angles.len(), 6);
        assert!((s.angles[3] - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn boundary_points_lie_inside_the_disc_case() {
        let s = boundary_samples(&shift(&[1.0, 0.0, 0.0]), 8).unwrap();
        for (h, p) in s.support.iter().zip(&s.points) {
            assert!((h - 0.5).abs() < 1e-10);
            let p = p.expect("gap 1/2 is comfortably simple");
            assert!((p.norm() - 0.5).abs() < 1e-9);
        }
    }

    #[test]
    fn sample_count_is_validated() {
        assert!(matches!(
            boundary_samples(&shift(&[1.0, 1.0, 1.0]), 2),
            Err(Error::TooFewSamples { got: 2, min: 3 })
        ));
    }

    #[test]
    fn support_has_the_cycle_symmetry() {
        let mut rng = StdRng::seed_from_u64(73);
        for n in 3..=6usize {
            let a = random_shift(&mut rng, n);
            for _ in 0..5 {
                let theta = rng.gen_range(0.0..std::f64::consts::TAU);
                let h0 = support_function(&a, theta).unwrap();
                let h1 = support_function(&a, theta + std::f64::consts::TAU / n as f64).unwrap();
                assert!((h0 - h1).abs() <= 1e-8, "n={n}");
            }
        }
    }

    #[test]
    fn support_bounds_make_a_nonempty_convex_set() {
        let mut rng = StdRng::seed_from_u64(79);
        let a = random_shift(&mut rng, 5);
        for _ in 0..10 {
            let theta = rng.gen_range(0.0..std::f64::consts::TAU);
            let h = support_function(&a, theta).unwrap();
            let opposite = support_function(&a, theta + std::f64::consts::PI).unwrap();
            assert!(h >= -opposite - 1e-12);
        }
    }

    #[test]
    fn unequal_weights_with_equal_invariants_share_a_range() {
        let a = shift(&[1.0, (2.0f64).sqrt() / 2.0, (30.0f64).sqrt() / 4.0]);
        let b = shift(&[
            (2.0f64).sqrt(),
            (3.0f64).sqrt() / 2.0,
            (10.0f64).sqrt() / 4.0,
        ]);
        assert!(ranges_equal(&a, &b, TOL).unwrap());
        // but they are not unitarily equivalent
        assert!(!check_equivalent(&a, &b, TOL).unwrap().equivalent);

        // the doubled versions still share a range
        let da = shift(&[
            1.0,
            (2.0f64).sqrt() / 2.0,
            (30.0f64).sqrt() / 4.0,
            1.0,
            (2.0f64).sqrt() / 2.0,
            (30.0f64).sqrt() / 4.0,
        ]);
        let db = shift(&[
            (2.0f64).sqrt(),
            (3.0f64).sqrt() / 2.0,
            (10.0f64).sqrt() / 4.0,
            (2.0f64).sqrt(),
            (3.0f64).sqrt() / 2.0,
            (10.0f64).sqrt() / 4.0,
        ]);
        assert!(ranges_equal(&da, &db, TOL).unwrap());
        assert!(!check_equivalent(&da, &db, TOL).unwrap().equivalent);
    }

    #[test]
    fn equal_ranges_have_matching_support_samples() {
        let a = shift(&[1.0, (2.0f64).sqrt() / 2.0, (30.0f64).sqrt() / 4.0]);
        let b = shift(&[
            (2.0f64).sqrt(),
            (3.0f64).sqrt() / 2.0,
            (10.0f64).sqrt() / 4.0,
        ]);
        let sa = boundary_samples(&a, 64).unwrap();
        let sb = boundary_samples(&b, 64).unwrap();
        for (x, y) in sa.support.iter().zip(&sb.support) {
            assert!((x - y).abs() <= 1e-7);
        }
    }

    #[test]
    fn rotations_and_reversals_share_a_range() {
        let mut rng = StdRng::seed_from_u64(83);
        for n in 3..=6usize {
            let a = random_shift(&mut rng, n);
            for k in 1..=n as i64 {
                assert!(ranges_equal(&a, &a.rotate(k), TOL).unwrap());
            }
            // for complex weights, reversal preserves every modulus
            // invariant; the product only matches when it is real, so
            // compare the tables directly
            let rev = a.reversed();
            let sq: Vec<f64> = a.moduli().iter().map(|m| m * m).collect();
            let sq_rev: Vec<f64> = rev.moduli().iter().map(|m| m * m).collect();
            let ta = circ_sym_table(&sq);
            let tb = circ_sym_table(&sq_rev);
            for r in 0..=n / 2 {
                assert!((ta.get(r) - tb.get(r)).abs() <= 1e-10);
            }
        }
        // positive weights: full range equality under reversal
        let p = shift(&[0.4, 1.7, 0.9, 2.2]);
        assert!(ranges_equal(&p, &p.reversed(), TOL).unwrap());
    }

    #[test]
    fn equivalent_shifts_share_a_range() {
        let mut rng = StdRng::seed_from_u64(89);
        for _ in 0..20 {
            let n = rng.gen_range(3..=7);
            let a = random_shift(&mut rng, n);
            let mut ws = a.rotate(rng.gen_range(1..=n as i64)).weights().to_vec();
            let phi = rng.gen_range(0.0..std::f64::consts::TAU);
            ws[0] *= C::from_polar(1.0, phi);
            ws[1] *= C::from_polar(1.0, -phi);
            let b = WeightedShift::new(ws).unwrap();
            assert!(check_equivalent(&a, &b, TOL).unwrap().equivalent);
            assert!(ranges_equal(&a, &b, TOL).unwrap());
        }
    }

    #[test]
    fn range_equality_is_scale_aware() {
        let a = shift(&[100.0, 200.0, 300.0]);
        let b = shift(&[100.0, 200.0, 300.0 + 1e-7]);
        // absolute difference in the products is large, but small against
        // the working scale
        assert!(ranges_equal(&a, &b, 1e-6).unwrap());
        assert!(!ranges_equal(&a, &shift(&[100.0, 200.0, 301.0]), 1e-6).unwrap());
    }

    #[test]
    fn range_equality_validates_input() {
        let a = shift(&[1.0, 2.0, 3.0]);
        assert!(matches!(
            ranges_equal(&a, &shift(&[1.0, 2.0]), TOL),
            Err(Error::DimensionMismatch { left: 3, right: 2 })
        ));
        assert!(matches!(
            ranges_equal(&shift(&[1.0, 2.0]), &shift(&[2.0, 1.0]), TOL),
            Err(Error::DimensionTooSmall { n: 2, min: 3 })
        ));
    }

    #[test]
    fn disc_radius_of_truncated_blocks() {
        let r = disc_radius(&shift(&[1.0, 0.0, 0.0])).unwrap();
        assert!((r.radius - 0.5).abs() < 1e-11);
        assert!(r.max_deviation <= 1e-9);

        let r = disc_radius(&shift(&[1.0, 0.0, 2.0, 0.0, 3.0, 0.0])).unwrap();
        assert!((r.radius - 1.5).abs() < 1e-10);
        assert!(r.max_deviation <= 1e-9);

        let r = disc_radius(&shift(&[0.0, 0.0, 0.0])).unwrap();
        assert_eq!(r.radius, 0.0);

        assert!(matches!(
            disc_radius(&shift(&[1.0, 2.0, 3.0])),
            Err(Error::NoZeroWeight)
        ));
    }

    #[test]
    fn zero_weight_ranges_are_circular() {
        let mut rng = StdRng::seed_from_u64(97);
        for n in 3..=6usize {
            let mut ws: Vec<f64> = (0..n).map(|_| rng.gen_range(0.3..2.0)).collect();
            ws[rng.gen_range(0..n)] = 0.0;
            let a = shift(&ws);
            let s = boundary_samples(&a, 128).unwrap();
            let top = s.support.iter().fold(f64::MIN, |x, y| x.max(*y));
            let bot = s.support.iter().fold(f64::MAX, |x, y| x.min(*y));
            let scale = ws.iter().fold(0.0f64, |x, y| x.max(*y)).powi(2) * n as f64;
            assert!(top - bot <= 1e-8 * scale.max(1.0), "n={n}");
        }
    }

    #[test]
    fn samples_serde_round_trip() {
        let s = boundary_samples(&shift(&[1.0, 1.0, 1.0]), 6).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        let back: BoundarySamples<f64> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }

    fn polar_list() -> impl Strategy<Value = Vec<(f64, f64)>> {
        proptest::collection::vec((0.2f64..2.0, 0.0f64..std::f64::consts::TAU), 3..=6)
    }

    fn polar_shift(polar: &[(f64, f64)], c: f64) -> WeightedShift<f64> {
        WeightedShift::new(
            polar
                .iter()
                .map(|&(m, t)| C::from_polar(c * m, t))
                .collect(),
        )
        .unwrap()
    }

    proptest! {
        #[test]
        fn support_is_sandwiched_by_the_extreme_weight(
            polar in polar_list(),
            theta in 0.0f64..std::f64::consts::TAU,
        ) {
            // each adjacent pair compresses to a 2-by-2 cell whose range is a
            // disc of half the link modulus; the operator norm caps the rest
            let a = polar_shift(&polar, 1.0);
            let top = polar.iter().fold(0.0f64, |m, &(r, _)| m.max(r));
            let h = support_function(&a, theta).unwrap();
            prop_assert!(h >= top / 2.0 - 1e-9);
            prop_assert!(h <= top + 1e-9);
        }

        #[test]
        fn support_scales_linearly_with_the_weights(
            polar in polar_list(),
            c in 0.25f64..4.0,
            theta in 0.0f64..std::f64::consts::TAU,
        ) {
            let ha = support_function(&polar_shift(&polar, 1.0), theta).unwrap();
            let hb = support_function(&polar_shift(&polar, c), theta).unwrap();
            prop_assert!((hb - c * ha).abs() <= 1e-9 * (c * ha).abs().max(1.0));
        }
    }
}
