use area_harness::stats::{mean, rank_sum_test, sem, std_dev, Summary, Verdict};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Two-sided exact p-value by enumerating every split of the pooled ranks.
fn exact_oracle(xs: &[f64], ys: &[f64]) -> f64 {
    let pooled: Vec<f64> = xs.iter().chain(ys).copied().collect();
    let n = pooled.len();
    let rank = |v: f64| pooled.iter().filter(|&&w| w < v).count() as f64 + 1.0;
    let observed: f64 = xs.iter().map(|&v| rank(v)).sum();
    let ranks: Vec<f64> = (1..=n).map(|r| r as f64).collect();
    let (mut total, mut low, mut high) = (0.0f64, 0.0f64, 0.0f64);
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != xs.len() {
            continue;
        }
        let s: f64 = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| ranks[i])
            .sum();
        total += 1.0;
        if s <= observed + 1e-9 {
            low += 1.0;
        }
        if s >= observed - 1e-9 {
            high += 1.0;
        }
    }
    (2.0 * (low / total).min(high / total)).min(1.0)
}

/// Standard normal upper tail by Simpson integration of the density.
fn upper_tail(z: f64) -> f64 {
    let (a, b, steps) = (z, z + 12.0, 20_000);
    let h = (b - a) / steps as f64;
    let phi = |t: f64| (-0.5 * t * t).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let mut s = phi(a) + phi(b);
    for i in 1..steps {
        s += phi(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

/// Normal approximation written out from the count of pairs `x > y`.
fn normal_oracle(xs: &[f64], ys: &[f64]) -> f64 {
    let mut u = 0.0;
    for x in xs {
        for y in ys {
            u += if x > y {
                1.0
            } else if x == y {
                0.5
            } else {
                0.0
            };
        }
    }
    let (n1, n2) = (xs.len() as f64, ys.len() as f64);
    let n = n1 + n2;
    let pooled: Vec<f64> = xs.iter().chain(ys).copied().collect();
    let mut seen: Vec<f64> = Vec::new();
    let mut tie_sum = 0.0;
    for &v in &pooled {
        if seen.contains(&v) {
            continue;
        }
        seen.push(v);
        let t = pooled.iter().filter(|&&w| w == v).count() as f64;
        tie_sum += t * t * t - t;
    }
    let var = n1 * n2 / 12.0 * (n + 1.0 - tie_sum / (n * (n - 1.0)));
    let z = ((u - n1 * n2 / 2.0).abs() - 0.5).max(0.0) / var.sqrt();
    (2.0 * upper_tail(z)).min(1.0)
}

#[test]
fn identical_samples_are_similar() {
    let xs = [0.3, 0.1, 0.7, 0.2];
    let t = rank_sum_test(&xs, &xs).unwrap();
    assert_eq!(t.p_value, 1.0);
    assert_eq!(t.verdict, Verdict::Similar);
    let same = [2.0; 5];
    let t = rank_sum_test(&same, &same[..3]).unwrap();
    assert_eq!((t.p_value, t.verdict), (1.0, Verdict::Similar));
}

#[test]
fn complete_separation_is_significant() {
    let xs: Vec<f64> = (1..=10).map(f64::from).collect();
    let ys: Vec<f64> = (101..=110).map(f64::from).collect();
    let t = rank_sum_test(&xs, &ys).unwrap();
    assert!(t.p_value < 0.001, "{}", t.p_value);
    assert_eq!(t.verdict, Verdict::Better);
    assert_eq!(rank_sum_test(&ys, &xs).unwrap().verdict, Verdict::Worse);
}

#[test]
fn tiny_samples_match_exact_enumeration() {
    let t = rank_sum_test(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]).unwrap();
    assert!(t.exact);
    assert!((t.p_value - exact_oracle(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0])).abs() < 1e-12);
    assert!((t.p_value - 0.1).abs() < 1e-12);

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let n1 = rng.gen_range(2..=7);
        let n2 = rng.gen_range(2..=7);
        let xs: Vec<f64> = (0..n1).map(|_| rng.gen()).collect();
        let ys: Vec<f64> = (0..n2).map(|_| rng.gen::<f64>() + 0.2).collect();
        let t = rank_sum_test(&xs, &ys).unwrap();
        assert!(t.exact);
        let want = exact_oracle(&xs, &ys);
        assert!((t.p_value - want).abs() < 1e-12, "{} vs {want}", t.p_value);
    }
}

#[test]
fn large_samples_match_normal_approximation() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let n1 = rng.gen_range(9..40);
        let n2 = rng.gen_range(9..40);
        // coarse values force ties
        let xs: Vec<f64> = (0..n1).map(|_| rng.gen_range(0..12) as f64).collect();
        let ys: Vec<f64> = (0..n2).map(|_| rng.gen_range(2..14) as f64).collect();
        let t = rank_sum_test(&xs, &ys).unwrap();
        assert!(!t.exact);
        let want = normal_oracle(&xs, &ys);
        assert!((t.p_value - want).abs() < 1e-8, "{} vs {want}", t.p_value);
    }
}

#[test]
fn tied_small_samples_use_the_approximation() {
    let t = rank_sum_test(&[1.0, 2.0, 2.0], &[2.0, 3.0, 4.0]).unwrap();
    assert!(!t.exact);
    assert!((t.p_value - normal_oracle(&[1.0, 2.0, 2.0], &[2.0, 3.0, 4.0])).abs() < 1e-8);
}

#[test]
fn rank_sum_rejects_bad_input() {
    assert!(rank_sum_test(&[1.0], &[1.0, 2.0]).is_err());
    assert!(rank_sum_test(&[1.0, 2.0], &[]).is_err());
    assert!(rank_sum_test(&[1.0, f64::NAN], &[1.0, 2.0]).is_err());
}

#[test]
fn sem_examples() {
    assert_eq!(sem(&[3.5; 7]).unwrap(), 0.0);
    assert!((sem(&[0.0, 2.0]).unwrap() - 1.0).abs() < 1e-15);
    assert!((std_dev(&[0.0, 2.0]).unwrap() - 2f64.sqrt()).abs() < 1e-15);
    assert!(sem(&[1.0]).is_err());
    assert!(sem(&[]).is_err());
}

#[test]
fn sem_shrinks_with_sample_size() {
    // resample IGD-like values and average the SEM at 30 and 100 samples
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let draw = |rng: &mut ChaCha8Rng, n: usize| -> Vec<f64> {
        (0..n)
            .map(|_| 0.05 + 0.01 * (rng.gen::<f64>() - 0.5) + 0.002 * rng.gen::<f64>().powi(3))
            .collect()
    };
    let trials = 200;
    let at = |rng: &mut ChaCha8Rng, n| {
        (0..trials)
            .map(|_| sem(&draw(rng, n)).unwrap())
            .sum::<f64>()
            / trials as f64
    };
    let s30 = at(&mut rng, 30);
    let s100 = at(&mut rng, 100);
    assert!(s100 < s30, "{s100} >= {s30}");
    let ratio = s30 / s100;
    assert!((ratio - (100.0f64 / 30.0).sqrt()).abs() < 0.15, "{ratio}");
}

#[test]
fn summary_of_single_value_has_no_spread() {
    let s = Summary::of(&[0.25]).unwrap();
    assert_eq!((s.mean, s.median, s.min, s.max), (0.25, 0.25, 0.25, 0.25));
    assert_eq!((s.std, s.sem), (None, None));
    assert!(Summary::of(&[]).is_err());
    let s = Summary::of(&[1.0, 3.0, 2.0, 10.0]).unwrap();
    assert_eq!((s.mean, s.median, s.min, s.max), (4.0, 2.5, 1.0, 10.0));
    assert_eq!(mean(&[1.0, 3.0, 2.0, 10.0]), 4.0);
}

proptest! {
    #[test]
    fn verdicts_are_antisymmetric(
        xs in prop::collection::vec(0u8..20, 2..25),
        ys in prop::collection::vec(0u8..20, 2..25),
        shift in 0u8..10,
    ) {
        let xs: Vec<f64> = xs.into_iter().map(f64::from).collect();
        let ys: Vec<f64> = ys.into_iter().map(|v| f64::from(v + shift)).collect();
        let a = rank_sum_test(&xs, &ys).unwrap();
        let b = rank_sum_test(&ys, &xs).unwrap();
        prop_assert!((a.p_value - b.p_value).abs() < 1e-12);
        prop_assert_eq!(a.verdict, b.verdict.flipped());
        prop_assert!((0.0..=1.0).contains(&a.p_value));
        prop_assert_eq!(a.verdict == Verdict::Similar, a.p_value >= 0.05);
    }
}
