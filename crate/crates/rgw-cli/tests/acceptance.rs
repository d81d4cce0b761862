//! Acceptance suite: one test per criterion, each printing a pass line with
//! the measured quantity (run with `-- --nocapture` to see them). Every
//! invariant comparison is exact; the only tolerances are the documented
//! floating-point bounds of the gluing-sign oracle.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rgw_core::gluing::{
    check_reality, jacobian_sign, max_reality_residual, sample_bubble_configuration, sample_chart,
    sample_domain_points, sample_node, SignCheckSettings,
};
use rgw_core::rng::SplitMix64;
use rgw_core::verify::{check_pivot_independence, exchange_identity_sides, VerificationReport};
use rgw_core::{
    complex_invariant, count_sign, real_bracket, real_count, real_vanishes, valid_odd_tuples,
    ComplexKey, InsertionMultiset, Involution, MemoStore, RealKey,
};

fn ims(entries: &[u32]) -> InsertionMultiset {
    InsertionMultiset::from_entries(entries.to_vec())
}

fn rkey(n: u32, d: u32, involution: Involution, insertions: InsertionMultiset) -> RealKey {
    RealKey::new(n, d, involution, insertions).unwrap()
}

/// All multisets of `k` values drawn from `1..=max_value`.
fn multisets(max_value: u32, k: usize) -> Vec<Vec<u32>> {
    fn go(max_value: u32, k: usize, lo: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == 0 {
            out.push(prefix.clone());
            return;
        }
        for value in lo..=max_value {
            prefix.push(value);
            go(max_value, k - 1, value, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(max_value, k, 1, &mut Vec::new(), &mut out);
    out
}

#[test]
fn c01_degree_one_base_case() {
    let start = Instant::now();
    let mut store = MemoStore::new();
    for n in 1..=6u32 {
        let expected = BigInt::from(if n % 2 == 1 { 1 } else { -1 });
        let key = rkey(n, 1, Involution::Tau, ims(&[2 * n - 1]));
        assert_eq!(real_bracket(&key, &mut store), expected, "n={n}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("acceptance 01 degree-one base case: PASS (n=1..6 in {elapsed:?})");
}

#[test]
fn c02_degree_one_closed_form() {
    let start = Instant::now();
    let mut store = MemoStore::new();
    let mut cases = 0;
    for n in [2u32, 3] {
        let expected = BigInt::from(if n % 2 == 1 { 1 } else { -1 });
        for k in 1..=6usize {
            // at d = 1 the dimension constraint forces every entry below 2n,
            // so this enumeration is exhaustive over all-odd valid tuples
            for tuple in valid_odd_tuples(n, 1, k) {
                let key = rkey(n, 1, Involution::Tau, tuple);
                assert_eq!(real_bracket(&key, &mut store), expected, "{key}");
                cases += 1;
            }
        }
    }
    assert!(cases >= 17);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    println!("acceptance 02 degree-one closed form: PASS ({cases} tuples in {elapsed:?})");
}

/// The vanishing grid: every key for n in {2,3}, d <= 6, k <= 5 with entries
/// up to 2n+1 (so values at and above 2n are represented).
fn vanishing_grid() -> Vec<RealKey> {
    let mut keys = Vec::new();
    for n in [2u32, 3] {
        for d in 1..=6u32 {
            for k in 1..=5usize {
                for entries in multisets(2 * n + 1, k) {
                    keys.push(rkey(n, d, Involution::Tau, ims(&entries)));
                }
            }
        }
    }
    keys
}

#[test]
fn c03_vanishing_gates() {
    let start = Instant::now();
    let mut store = MemoStore::new();
    let mut gated = 0;
    let mut live = 0;
    for key in vanishing_grid() {
        let e = key.insertions.entries();
        let violates = key.d % 2 == 0
            || e.iter().any(|&c| c % 2 == 0)
            || e.iter().any(|&c| c >= 2 * key.n)
            || e.iter().map(|&c| c as i64).sum::<i64>()
                != key.n as i64 * (key.d as i64 + 1) - 2 + key.k() as i64;
        if violates {
            assert_eq!(real_bracket(&key, &mut store), BigInt::from(0), "{key}");
            gated += 1;
        } else {
            live += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    println!(
        "acceptance 03 vanishing gates: PASS ({gated} vanishing keys, {live} live, in {elapsed:?})"
    );
}

#[test]
fn c04_involution_sign_flip() {
    let start = Instant::now();
    let mut store = MemoStore::new();
    let mut cases = 0;
    for key in vanishing_grid() {
        let eta = key.with_involution(Involution::Eta);
        assert_eq!(
            real_bracket(&key, &mut store),
            -real_bracket(&eta, &mut store),
            "{key}"
        );
        assert_eq!(
            real_count(&key, &mut store),
            -real_count(&eta, &mut store),
            "{key}"
        );
        cases += 1;
    }
    let elapsed = start.elapsed();
    println!("acceptance 04 tau/eta sign flip: PASS ({cases} keys in {elapsed:?})");
}

#[test]
fn c05_real_worked_value() {
    let start = Instant::now();
    let mut store = MemoStore::new();

    // re-perform the hand evaluation: the merged term vanishes (5 >= 4),
    // the only splitting is (d1, d2) = (1, 1) with diagonal (i, j) = (1, 1);
    // bubble set {3} gives 2*(0 - <2,3,2>_1 * <3,1>_1), the empty set gives
    // <2,3,2>_1 * <3,1>_1 - 0
    let complex_factor =
        complex_invariant(&ComplexKey::new(3, 1, ims(&[3, 2, 2])).unwrap(), &mut store);
    assert_eq!(complex_factor, BigInt::from(1));
    let degree_one = real_bracket(&rkey(2, 1, Involution::Tau, ims(&[3, 1])), &mut store);
    assert_eq!(degree_one, BigInt::from(-1));
    let by_hand =
        BigInt::from(2) * (-&complex_factor * &degree_one) + &complex_factor * &degree_one;
    assert_eq!(by_hand, BigInt::from(1));

    let key = rkey(2, 3, Involution::Tau, ims(&[3, 3, 3]));
    assert_eq!(real_bracket(&key, &mut store), by_hand);
    assert_eq!(real_count(&key, &mut store), BigInt::from(1));
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("acceptance 05 worked value <3,3,3>_3: PASS (bracket = N = 1 in {elapsed:?})");
}

/// Seeded dimension-valid odd tuples for the exchange-identity criterion:
/// `(n, d, shift, c1, c2, remainder)` with the dimension solved on `c2`.
fn exchange_samples(count: usize, seed: u64) -> Vec<(u32, u32, u32, u32, u32, Vec<u32>)> {
    let mut rng = SplitMix64::new(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = if rng.next_u64().is_multiple_of(2) {
            2
        } else {
            3
        };
        let d = [1u32, 3, 5, 7][(rng.next_u64() % 4) as usize];
        let shift = 1 + (rng.next_u64() % 2) as u32;
        let k = 2 + (rng.next_u64() % 4) as usize;
        let odd = |rng: &mut SplitMix64| 2 * (rng.next_u64() % n as u64) as u32 + 1;
        let c1 = odd(&mut rng);
        let remainder: Vec<u32> = (0..k - 2).map(|_| odd(&mut rng)).collect();
        let sum = c1 as i64 + remainder.iter().map(|&c| c as i64).sum::<i64>();
        let c2 = n as i64 * (d as i64 + 1) - 2 + k as i64 - 2 * shift as i64 - sum;
        if c2 >= 1 && c2 % 2 == 1 {
            out.push((n, d, shift, c1, c2 as u32, remainder));
        }
    }
    out
}

#[test]
fn c06_exchange_identity() {
    let start = Instant::now();
    let mut store = MemoStore::new();

    // the hand case: pair (1, 3), remainder {3}
    let (left, right) =
        exchange_identity_sides(2, 3, 1, 1, 3, &ims(&[3]), Involution::Tau, &mut store);
    assert_eq!(left, BigInt::from(-1));
    assert_eq!(right, BigInt::from(-1));

    let samples = exchange_samples(120, 0x9e3779b97f4a7c15);
    let mut cases = 1;
    for (n, d, shift, c1, c2, remainder) in &samples {
        let involution = if cases % 2 == 0 {
            Involution::Tau
        } else {
            Involution::Eta
        };
        let (left, right) = exchange_identity_sides(
            *n,
            *d,
            *shift,
            *c1,
            *c2,
            &ims(remainder),
            involution,
            &mut store,
        );
        assert_eq!(
            left, right,
            "n={n} d={d} shift={shift} pair=({c1},{c2}) remainder={remainder:?}"
        );
        cases += 1;
    }
    assert!(cases >= 100);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    println!("acceptance 06 exchange identity: PASS ({cases} cases in {elapsed:?})");
}

#[test]
fn c07_pivot_independence() {
    let start = Instant::now();
    let mut store = MemoStore::new();
    let mut report = VerificationReport::new("pivot-independence");
    let mut keys_checked = 0;
    for (n, d, shift, c1, c2, remainder) in exchange_samples(120, 0x9e3779b97f4a7c15) {
        // the two dimension-valid arrangements from the exchange samples
        for (a, b) in [(c1, c2 + 2 * shift), (c1 + 2 * shift, c2)] {
            let entries: Vec<u32> = remainder.iter().copied().chain([a, b]).collect();
            let key = rkey(n, d, Involution::Tau, ims(&entries));
            if !real_vanishes(&key) && key.k() >= 2 {
                check_pivot_independence(&mut report, &key, &mut store);
                keys_checked += 1;
            }
        }
    }
    assert!(keys_checked > 20);
    assert!(
        report.passed(),
        "{} pivot mismatches, first: {:?}",
        report.failures.len(),
        report.failures.first().map(|f| &f.case)
    );
    let elapsed = start.elapsed();
    println!(
        "acceptance 07 pivot independence: PASS ({} pivot pairs over {keys_checked} keys in {elapsed:?})",
        report.cases
    );
}

#[test]
fn c08_complex_classical_values() {
    let start = Instant::now();
    let mut store = MemoStore::new();
    let mut eval = |m: u32, d: u32, entries: &[u32]| {
        complex_invariant(&ComplexKey::new(m, d, ims(entries)).unwrap(), &mut store)
    };
    // plane point counts
    for (d, expected) in [(1u32, 1i64), (2, 1), (3, 12), (4, 620), (5, 87304)] {
        let k = (3 * d - 1) as usize;
        assert_eq!(eval(2, d, &vec![2; k]), BigInt::from(expected), "P2 d={d}");
    }
    // lines in P^3
    assert_eq!(eval(3, 1, &[3, 3]), BigInt::from(1));
    assert_eq!(eval(3, 1, &[2, 2, 2, 2]), BigInt::from(2));
    assert_eq!(eval(3, 1, &[3, 2, 2]), BigInt::from(1));
    // conics in P^3
    assert_eq!(eval(3, 2, &[2; 8]), BigInt::from(92));
    assert_eq!(eval(3, 2, &[3, 2, 2, 2, 2, 2, 2]), BigInt::from(18));
    assert_eq!(eval(3, 2, &[3, 3, 2, 2, 2, 2]), BigInt::from(4));
    assert_eq!(eval(3, 2, &[3, 3, 3, 2, 2]), BigInt::from(1));
    assert_eq!(eval(3, 2, &[3, 3, 3, 3]), BigInt::from(0));
    // twisted cubics through six points
    assert_eq!(eval(3, 3, &[3; 6]), BigInt::from(1));
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    println!("acceptance 08 classical complex values: PASS (14 values in {elapsed:?})");
}

#[test]
fn c09_complex_divisor_relation() {
    let start = Instant::now();
    let mut store = MemoStore::new();
    let mut rng = SplitMix64::new(51);
    for case in 0..50 {
        let m = 2 + (rng.next_u64() % 4) as u32;
        let d = 1 + (rng.next_u64() % 3) as u32;
        let k = (rng.next_u64() % 6) as usize + 1;
        let entries: Vec<u32> = (0..k)
            .map(|_| 2 + (rng.next_u64() % (m as u64 - 1)) as u32)
            .collect();
        let rest = ims(&entries);
        let with_one = ComplexKey::new(m, d, rest.with_extra(&[1])).unwrap();
        let plain = ComplexKey::new(m, d, rest).unwrap();
        let left = complex_invariant(&with_one, &mut store);
        let right = BigInt::from(d) * complex_invariant(&plain, &mut store);
        assert_eq!(left, right, "case {case}: m={m} d={d} rest={entries:?}");
    }
    let elapsed = start.elapsed();
    println!("acceptance 09 complex divisor relation: PASS (50 seeded keys in {elapsed:?})");
}

#[test]
fn c10_gluing_sign_grid() {
    let start = Instant::now();
    let settings = SignCheckSettings::default();
    let mut cells = 0;
    for n in 1..=3usize {
        for d1 in 1..=2usize {
            for d2 in 1..=3usize {
                let cell = jacobian_sign(n, d1, d2, 6, 0, settings).unwrap();
                assert!(cell.accepted >= 5, "cell n={n} d1={d1} d2={d2}: {cell:?}");
                assert!(
                    cell.stable,
                    "sign disagreement in cell n={n} d1={d1} d2={d2}"
                );
                assert_eq!(cell.computed, cell.expected, "cell n={n} d1={d1} d2={d2}");
                cells += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!("acceptance 10 gluing sign grid: PASS ({cells} cells x >=5 samples in {elapsed:?})");
}

#[test]
fn c11_reality_condition() {
    let start = Instant::now();
    let mut rng = SplitMix64::new(0xbeef);
    let mut worst = 0.0f64;

    for index in 0..20 {
        let n = 1 + index % 3;
        let d2 = [1usize, 3, 5][index % 3];
        let chart = sample_chart(&mut rng, n, d2);
        let points = sample_domain_points(&mut rng, 10);
        let residual = max_reality_residual(|p| chart.eval(p), &points);
        assert!(residual < 1e-9, "chart {index}: residual {residual}");
        worst = worst.max(residual);
    }

    for index in 0..20 {
        let n = 1 + index % 3;
        let d1 = 1 + index % 2;
        let d2 = [1usize, 3][index % 2];
        let v_scale = (index as f64) / 20.0;
        let node_angle = sample_node(&mut rng);
        let v = node_angle / node_angle.norm_sqr().sqrt() * 0.6 * v_scale;
        let config = sample_bubble_configuration(&mut rng, n, d1, d2, v);
        let points = sample_domain_points(&mut rng, 10);
        let residual = max_reality_residual(|p| config.eval(p), &points);
        assert!(residual < 1e-9, "glued {index}: residual {residual}");
        worst = worst.max(residual);
        assert!(check_reality(|p| config.eval(p), &points, 1e-9));
    }

    let elapsed = start.elapsed();
    println!(
        "acceptance 11 reality condition: PASS (40 maps x 10 points, max residual {worst:.3e}, in {elapsed:?})"
    );
}

#[test]
fn c12_performance_and_persistence() {
    // cold: full tau table for n = 2, odd d <= 7, k <= 6 from an empty store
    let cold_start = Instant::now();
    let mut store = MemoStore::new();
    let mut table: Vec<(RealKey, BigInt, BigInt)> = Vec::new();
    for d in [1u32, 3, 5, 7] {
        for k in 1..=6usize {
            for tuple in valid_odd_tuples(2, d, k) {
                let key = rkey(2, d, Involution::Tau, tuple);
                let bracket = real_bracket(&key, &mut store);
                let count = BigInt::from(count_sign(2, d)) * &bracket;
                table.push((key, bracket, count));
            }
        }
    }
    let cold = cold_start.elapsed();
    assert!(cold < Duration::from_secs(60), "cold run took {cold:?}");
    assert_eq!(table.len(), 12);

    // byte-faithful persistence round trip
    let exported = store.export_string();
    let imported = MemoStore::import_string(&exported).unwrap();
    assert_eq!(store, imported);
    assert_eq!(exported, imported.export_string());

    // warm rerun against the imported store: best of five repetitions
    let mut warm = Duration::MAX;
    let mut warm_store = imported;
    for _ in 0..5 {
        let warm_start = Instant::now();
        for (key, bracket, _) in &table {
            assert_eq!(&real_bracket(key, &mut warm_store), bracket);
        }
        warm = warm.min(warm_start.elapsed());
    }
    assert!(
        cold >= 10 * warm,
        "warm rerun not 10x faster: cold {cold:?}, warm {warm:?}"
    );
    println!(
        "acceptance 12 performance/persistence: PASS (cold {cold:?}, warm {warm:?}, {}x, byte-faithful cache)",
        (cold.as_nanos() / warm.as_nanos().max(1))
    );
}
