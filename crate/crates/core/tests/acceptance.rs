//! Acceptance suite: one test per criterion, each ending in a single
//! pass line. Tolerances are pinned next to the assertions they govern.

mod common;

use std::f64::consts::{FRAC_PI_3, PI, TAU};
use std::time::{Duration, Instant};

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wshift::circsym::{circ_sym, circ_sym_brute, linear_sym, linear_sym_brute};
use wshift::linalg::is_unitary;
use wshift::{
    boundary_samples, check_equivalent, check_equivalent_with_witness, cyclic_modulus_shift,
    decompose, is_reducible, kippenhahn_oracle, kippenhahn_poly, ranges_equal, support_function,
    ComplexMatrix64, Reason, WeightedShift64,
};

type C = Complex<f64>;

fn unit(phase: f64) -> C {
    C::from_polar(1.0, phase)
}

/// The twin three-cycles with distinct moduli: every invariant matches, the
/// ranges agree, yet no unitary equivalence exists in either orientation.
///
/// The shared weight product is sqrt(15)/4 (equivalently sqrt(60)/8); the
/// first squared-modulus sum is 27/8 on both sides.
#[test]
fn criterion_01_twin_three_cycles() {
    let a = WeightedShift64::from_reals(&[1.0, 2f64.sqrt() / 2.0, 30f64.sqrt() / 4.0]).unwrap();
    let b =
        WeightedShift64::from_reals(&[2f64.sqrt(), 3f64.sqrt() / 2.0, 10f64.sqrt() / 4.0]).unwrap();

    let clock = Instant::now();
    let pa = a.product();
    let pb = b.product();
    let sq = |ws: &WeightedShift64| -> Vec<f64> { ws.moduli().iter().map(|m| m * m).collect() };
    let sa = circ_sym(&sq(&a), 1);
    let sb = circ_sym(&sq(&b), 1);
    let same_range = ranges_equal(&a, &b, 1e-10).unwrap();
    let direct = check_equivalent(&a, &b, 1e-10).unwrap();
    let reversed = check_equivalent(&a, &b.reversed(), 1e-10).unwrap();
    let self_reversed = check_equivalent(&a, &a.reversed(), 1e-10).unwrap();
    let elapsed = clock.elapsed();

    let expected = 15f64.sqrt() / 4.0;
    assert!((pa - pb).norm() <= 1e-12, "products differ: {pa} vs {pb}");
    assert!(
        (pa.re - expected).abs() <= 1e-12 && pa.im.abs() <= 1e-12,
        "product {pa} is not sqrt(15)/4"
    );
    assert!((sa - 27.0 / 8.0).abs() <= 1e-12, "first sum {sa}");
    assert!((sb - 27.0 / 8.0).abs() <= 1e-12, "first sum {sb}");
    assert!(same_range, "numerical ranges must coincide");
    assert!(!direct.equivalent, "must not be equivalent");
    assert!(
        !reversed.equivalent,
        "must not be equivalent to the reversal"
    );
    assert!(
        !self_reversed.equivalent,
        "reversal changes the cyclic order"
    );
    assert!(elapsed < Duration::from_millis(1), "took {elapsed:?}");
    println!(
        "criterion 01 pass: twin three-cycles share product and sums, equal ranges, \
         no equivalence ({elapsed:?})"
    );
}

/// Doubling the twin weight lists gives six-cycles that still share their
/// range without being equivalent, and both decompose with period 3 into
/// a block and its sixth-root-of-unity twist.
#[test]
fn criterion_02_doubled_six_cycles() {
    let doubled = |w: &[f64]| {
        let mut v = w.to_vec();
        v.extend_from_slice(w);
        WeightedShift64::from_reals(&v).unwrap()
    };
    let base_a = [1.0, 2f64.sqrt() / 2.0, 30f64.sqrt() / 4.0];
    let base_b = [2f64.sqrt(), 3f64.sqrt() / 2.0, 10f64.sqrt() / 4.0];
    let a = doubled(&base_a);
    let b = doubled(&base_b);

    assert!(ranges_equal(&a, &b, 1e-10).unwrap());
    assert!(!check_equivalent(&a, &b, 1e-10).unwrap().equivalent);

    for (ws, base) in [(&a, &base_a), (&b, &base_b)] {
        let report = decompose(ws, 1e-10).unwrap();
        assert_eq!(report.reason, Reason::PeriodicWeights);
        assert_eq!(report.period_k, Some(3));
        assert!(report.block_residual.unwrap() <= 1e-8);

        let block_ws = report.base_block.as_ref().unwrap();
        for (got, want) in block_ws.moduli().iter().zip(base) {
            assert!((got - want).abs() <= 1e-12);
        }

        let u = report.unitary.as_ref().unwrap();
        let conj = u.adjoint().mul(&ws.to_matrix()).unwrap().mul(u).unwrap();
        let block = block_ws.to_matrix();
        let target = ComplexMatrix64::direct_sum(&[block.clone(), block.scale(unit(FRAC_PI_3))]);
        assert!(conj.max_abs_diff(&target).unwrap() <= 1e-8);
    }
    println!("criterion 02 pass: doubled six-cycles share a range, split as B and e^(i pi/3) B");
}

/// The alternating (1,2) six-cycle diagonalizes into three twisted copies
/// of the 2x2 block [[0,1],[2,0]] under an explicitly unitary conjugation.
#[test]
fn criterion_03_alternating_six_cycle() {
    let ws = WeightedShift64::from_reals(&[1.0, 2.0, 1.0, 2.0, 1.0, 2.0]).unwrap();
    let report = decompose(&ws, 1e-10).unwrap();
    assert_eq!(report.period_k, Some(2));

    let u = report.unitary.as_ref().unwrap();
    assert!(is_unitary(u, 1e-12), "conjugation must be unitary to 1e-12");

    let conj = u.adjoint().mul(&ws.to_matrix()).unwrap().mul(u).unwrap();
    let zero = C::new(0.0, 0.0);
    let block = ComplexMatrix64::from_rows(vec![
        vec![zero, C::new(1.0, 0.0)],
        vec![C::new(2.0, 0.0), zero],
    ])
    .unwrap();
    let w = unit(TAU / 6.0);
    let target = ComplexMatrix64::direct_sum(&[block.clone(), block.scale(w), block.scale(w * w)]);
    assert!(conj.max_abs_diff(&target).unwrap() <= 1e-10);
    println!("criterion 03 pass: alternating six-cycle matches its displayed block sum");
}

/// Two zero-broken shifts whose blocks match only after a non-cyclic
/// permutation: equivalent via block matching even though no cyclic
/// modulus offset exists.
#[test]
fn criterion_04_block_matching_without_cyclic_offset() {
    let a = WeightedShift64::from_reals(&[1.0, 0.0, 2.0, 0.0, 3.0, 0.0]).unwrap();
    let b = WeightedShift64::from_reals(&[1.0, 0.0, 3.0, 0.0, 2.0, 0.0]).unwrap();

    assert_eq!(cyclic_modulus_shift(&a, &b, 1e-10).unwrap(), None);

    let report = check_equivalent_with_witness(&a, &b, 1e-10).unwrap();
    assert!(report.equivalent);
    assert!(report.block_matching.is_some());
    let u = report.witness.as_ref().unwrap();
    assert!(is_unitary(u, 1e-10));
    assert!(report.witness_residual.unwrap() <= 1e-9);
    println!("criterion 04 pass: blocks match under a permutation no cyclic shift produces");
}

/// Closed form against the determinant oracle: 200 random shifts, 100
/// evaluation points each, agreement within 1e-9 relative to the oracle.
#[test]
fn criterion_05_polynomial_matches_determinant_oracle() {
    let clock = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC5);
    let mut worst = 0.0f64;
    for case in 0..200 {
        let n = rng.gen_range(3..=10);
        let ws = WeightedShift64::new(
            (0..n)
                .map(|_| {
                    let modulus = 10f64.powf(rng.gen_range(-1.0..1.0));
                    C::from_polar(modulus, rng.gen_range(-PI..PI))
                })
                .collect(),
        )
        .unwrap();
        let poly = kippenhahn_poly(&ws).unwrap();
        for _ in 0..100 {
            let x = rng.gen_range(-2.0..2.0);
            let y = rng.gen_range(-2.0..2.0);
            let z = rng.gen_range(-2.0..2.0);
            let closed = poly.eval(x, y, z);
            let oracle = kippenhahn_oracle(&ws, x, y, z);
            let err = (closed - oracle).abs() / oracle.abs().max(1.0);
            worst = worst.max(err);
            assert!(
                err <= 1e-9,
                "case {case}: {closed} vs {oracle} at ({x}, {y}, {z})"
            );
        }
    }
    let elapsed = clock.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    println!(
        "criterion 05 pass: 20000 evaluations agree with the determinant oracle \
         (worst relative error {worst:.3e}, {elapsed:?})"
    );
}

/// The structural identities of the cyclic and path sums, cross-checked by
/// brute-force subset enumeration on every one of 500 random inputs.
#[test]
fn criterion_06_symmetric_function_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC6);
    let rel = |x: f64, y: f64| (x - y).abs() <= 1e-12 * x.abs().max(y.abs()).max(1.0);
    for case in 0..500 {
        let n = rng.gen_range(2usize..=14);
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..3.0)).collect();
        let total: f64 = v.iter().sum();

        // order 1 is the plain sum
        assert!(rel(circ_sym(&v, 1), total), "case {case}");

        // everything above n/2 vanishes identically
        for r in n / 2 + 1..=n / 2 + 3 {
            assert_eq!(circ_sym(&v, r), 0.0, "case {case}, order {r}");
        }

        // rotation invariance
        let k = rng.gen_range(0..n);
        let rotated: Vec<f64> = (0..n).map(|j| v[(j + k) % n]).collect();
        for r in 0..=n / 2 {
            assert!(rel(circ_sym(&v, r), circ_sym(&rotated, r)), "case {case}");
        }

        // one appended zero cuts the cycle; a second changes nothing
        let mut once = v.clone();
        once.push(0.0);
        let mut twice = once.clone();
        twice.push(0.0);
        for r in 0..=(n + 2) / 2 {
            let cut = circ_sym(&once, r);
            assert!(rel(cut, circ_sym(&twice, r)), "case {case}");
            assert!(rel(cut, linear_sym(&v, r)), "case {case}");
        }

        // extending the path by one entry
        for r in 0..=n / 2 {
            let lhs = linear_sym(&v, r + 1);
            let rhs = linear_sym(&v[..n - 1], r + 1) + v[n - 1] * linear_sym(&v[..n - 2], r);
            assert!(rel(lhs, rhs), "case {case}");
        }

        // deleting the head of the path
        for r in 1..=n / 2 + 1 {
            let lhs = linear_sym(&v, r);
            let tail = linear_sym(&v[1..], r);
            let hop = v[0] * linear_sym(&v[2.min(n)..], r - 1);
            assert!(rel(lhs, tail + hop), "case {case}");
        }

        // cutting the cycle at the wraparound edge
        if n >= 4 {
            for r in 2..=n / 2 {
                let lhs = circ_sym(&v, r);
                let rhs = linear_sym(&v, r) - v[0] * v[n - 1] * linear_sym(&v[2..n - 2], r - 2);
                assert!(rel(lhs, rhs), "case {case}");
            }
        }

        // brute-force subset enumeration agrees on every case
        for r in 0..=n / 2 {
            assert!(
                rel(circ_sym(&v, r), circ_sym_brute(&v, r).unwrap()),
                "case {case}"
            );
            assert!(
                rel(linear_sym(&v, r), linear_sym_brute(&v, r).unwrap()),
                "case {case}"
            );
        }
    }
    println!("criterion 06 pass: 500 random inputs satisfy every identity and match brute force");
}

/// Exhaustive sweep of all weight patterns over {0, 1, 2} for orders 3
/// through 6, checked against the commutant-dimension oracle: the shift is
/// reducible exactly when some non-scalar matrix commutes with it and its
/// adjoint.
#[test]
fn criterion_07_reducibility_matches_commutant_oracle() {
    let mut cases = 0usize;
    for n in 3..=6usize {
        let mut digits = vec![0u8; n];
        'patterns: loop {
            let v: Vec<f64> = digits.iter().map(|&d| f64::from(d)).collect();
            let ws = WeightedShift64::from_reals(&v).unwrap();
            let decided = is_reducible(&ws, 1e-10).reducible;
            let nullity = common::commutant_nullity(&ws.to_matrix());
            assert_eq!(
                decided,
                nullity >= 2,
                "weights {v:?}: commutant dimension {nullity}"
            );
            cases += 1;
            let mut carry = true;
            for d in digits.iter_mut() {
                *d += 1;
                if *d < 3 {
                    carry = false;
                    break;
                }
                *d = 0;
            }
            if carry {
                break 'patterns;
            }
        }
    }
    assert_eq!(cases, 27 + 81 + 243 + 729);
    println!("criterion 07 pass: {cases} weight patterns agree with the commutant oracle");
}

/// Witness soundness on 100 constructed-equivalent pairs: the returned
/// unitary has Gram defect at most 1e-10 and intertwining residual at most
/// 1e-9 in the max-entry norm.
#[test]
fn criterion_08_witnesses_are_unitary_and_intertwine() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC8);
    for case in 0..100 {
        let n = rng.gen_range(2usize..=10);
        let mut aw: Vec<C> = (0..n)
            .map(|_| C::from_polar(rng.gen_range(0.4..2.2), rng.gen_range(-PI..PI)))
            .collect();
        if rng.gen_bool(0.25) {
            let zeros = rng.gen_range(1..=2.min(n - 1));
            for _ in 0..zeros {
                let at = rng.gen_range(0..n);
                aw[at] = C::new(0.0, 0.0);
            }
        }
        let a = WeightedShift64::new(aw).unwrap();

        let k = rng.gen_range(1..=n as i64);
        let mut bw: Vec<C> = a.rotate(k).weights().to_vec();
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        let phi = rng.gen_range(-1.0f64..1.0);
        bw[i] *= unit(phi);
        bw[j] *= unit(-phi);
        let b = WeightedShift64::new(bw).unwrap();

        let report = check_equivalent_with_witness(&a, &b, 1e-10).unwrap();
        assert!(report.equivalent, "case {case} must be equivalent");
        let u = report.witness.as_ref().unwrap();
        let gram_defect = u
            .adjoint()
            .mul(u)
            .unwrap()
            .max_abs_diff(&ComplexMatrix64::identity(n))
            .unwrap();
        assert!(
            gram_defect <= 1e-10,
            "case {case}: Gram defect {gram_defect:.3e}"
        );
        let au = a.to_matrix().mul(u).unwrap();
        let ub = u.mul(&b.to_matrix()).unwrap();
        let residual = au.max_abs_diff(&ub).unwrap();
        assert!(residual <= 1e-9, "case {case}: residual {residual:.3e}");
    }
    println!("criterion 08 pass: 100 witnesses are unitary and intertwine the pair");
}

/// A single zero weight flattens the support function: over 128 angles the
/// spread stays below 1e-8 at the invariant scale, and the n-fold rotation
/// symmetry of the range holds at sampled angles.
#[test]
fn criterion_09_single_zero_gives_a_circular_range() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC9);
    for case in 0..50 {
        let n = rng.gen_range(3usize..=8);
        let mut moduli: Vec<f64> = (0..n).map(|_| rng.gen_range(0.3..2.5)).collect();
        moduli[rng.gen_range(0..n)] = 0.0;
        let ws = WeightedShift64::new(
            moduli
                .iter()
                .map(|&m| C::from_polar(m, rng.gen_range(-PI..PI)))
                .collect(),
        )
        .unwrap();

        let samples = boundary_samples(&ws, 128).unwrap();
        let lo = samples
            .support
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        let hi = samples
            .support
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max);
        let wmax = moduli.iter().copied().fold(0.0f64, f64::max);
        let scale = (wmax * wmax * n as f64).max(1.0);
        assert!(
            hi - lo <= 1e-8 * scale,
            "case {case}: spread {:.3e}",
            hi - lo
        );

        for _ in 0..4 {
            let theta = rng.gen_range(0.0..TAU);
            let h0 = support_function(&ws, theta).unwrap();
            let h1 = support_function(&ws, theta + TAU / n as f64).unwrap();
            assert!((h0 - h1).abs() <= 1e-8, "case {case}: symmetry broken");
        }
    }
    println!("criterion 09 pass: 50 one-zero shifts have circular, n-fold symmetric ranges");
}
