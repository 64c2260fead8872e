use super::*;
use crate::testutil::dist;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn igd_oracle(a: &[Vec<f64>], r: &[Vec<f64>]) -> f64 {
    let mut total = 0.0;
    for p in r {
        let mut best = f64::INFINITY;
        for q in a {
            best = best.min(dist(p, q));
        }
        total += best;
    }
    total / r.len() as f64
}

fn spacing_oracle(a: &[Vec<f64>]) -> f64 {
    let mut d = Vec::new();
    for i in 0..a.len() {
        let mut best = f64::INFINITY;
        for j in 0..a.len() {
            if i != j {
                best = best.min(dist(&a[i], &a[j]));
            }
        }
        d.push(best);
    }
    let mean: f64 = d.iter().sum::<f64>() / d.len() as f64;
    (d.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / d.len() as f64).sqrt()
}

fn random_set(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| (0..m).map(|_| rng.gen()).collect())
        .collect()
}

#[test]
fn igd_examples() {
    let r = vec![vec![0.0, 1.0], vec![0.5, 0.5], vec![1.0, 0.0]];
    assert_eq!(igd(&r, &r).unwrap(), 0.0);
    let a = vec![vec![0.0, 1.0], vec![1.0, 0.0]];
    assert!((igd(&a, &r).unwrap() - 0.5f64.sqrt() / 3.0).abs() < 1e-12);
    assert!((igd(&a, &r).unwrap() - 0.23570).abs() < 1e-5);
    let empty: Vec<Vec<f64>> = Vec::new();
    assert!(igd(&empty, &r).is_err());
    assert!(igd(&r, &empty).is_err());
}

#[test]
fn igd_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        let a = random_set(&mut rng, 30, 3);
        let r = random_set(&mut rng, 50, 3);
        assert!((igd(&a, &r).unwrap() - igd_oracle(&a, &r)).abs() < 1e-12);
    }
}

#[test]
fn spacing_examples() {
    let line: Vec<Vec<f64>> = (0..6).map(|i| vec![i as f64 * 0.5, 0.0]).collect();
    assert!(spacing(&line).unwrap().abs() < 1e-12);
    let s = spacing(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![3.0, 0.0]]).unwrap();
    assert!((s - (2.0f64 / 9.0).sqrt()).abs() < 1e-12);
    assert!(spacing(&[vec![0.0, 0.0]]).is_err());
}

#[test]
fn spacing_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..20 {
        let a = random_set(&mut rng, 40, 3);
        assert!((spacing(&a).unwrap() - spacing_oracle(&a)).abs() < 1e-12);
    }
}

#[test]
fn nadir_examples() {
    let n = nadir_plus(&[vec![1.0, 2.0]], 0.1);
    assert!((n[0] - 1.1).abs() < 1e-12 && (n[1] - 2.1).abs() < 1e-12);
    assert_eq!(
        nadir_plus(&[vec![1.0, 2.0], vec![3.0, 0.0]], 0.0),
        vec![3.0, 2.0]
    );
}

#[test]
fn hv_examples() {
    let v = hv(&[vec![0.5, 0.5]], &[1.1, 1.1]).unwrap();
    assert!((v - 0.36 / 1.21).abs() < 1e-12);
    assert!((v - 0.29752).abs() < 1e-5);
    assert_eq!(hv(&[vec![1.2, 0.5]], &[1.1, 1.1]).unwrap(), 0.0);
    assert!(hv(&[vec![0.5, 0.5]], &[1.1, 0.0]).is_err());
    assert!(hv(&[vec![0.5, 0.5]], &[1.1, -1.0]).is_err());
    // a unit cube corner in three objectives
    let v = hv(&[vec![0.0, 0.0, 0.0]], &[1.0, 2.0, 1.0]).unwrap();
    assert!((v - 1.0).abs() < 1e-12);
}

/// Inclusion-exclusion over all subsets of the boxes.
fn hv_oracle(points: &[Vec<f64>], r: &[f64]) -> f64 {
    let n = points.len();
    let mut total = 0.0;
    for mask in 1u32..(1 << n) {
        let mut corner = vec![f64::NEG_INFINITY; r.len()];
        for (i, p) in points.iter().enumerate() {
            if mask & (1 << i) != 0 {
                for j in 0..r.len() {
                    corner[j] = corner[j].max(p[j]);
                }
            }
        }
        let vol: f64 = corner
            .iter()
            .zip(r)
            .map(|(c, rr)| (rr - c).max(0.0))
            .product();
        let sign = if mask.count_ones() % 2 == 1 {
            1.0
        } else {
            -1.0
        };
        total += sign * vol;
    }
    total / r.iter().product::<f64>()
}

#[test]
fn hv_exact_matches_inclusion_exclusion() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for m in [2, 3] {
        for _ in 0..20 {
            let pts = random_set(&mut rng, 8, m);
            let r = vec![1.1; m];
            assert!((hv(&pts, &r).unwrap() - hv_oracle(&pts, &r)).abs() < 1e-12);
        }
    }
}

#[test]
fn hv_exact_and_monte_carlo_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let pts = random_set(&mut rng, 20, 3);
    let r = [1.1, 1.1, 1.1];
    let exact = hv_exact(&pts, &r).unwrap();
    let mc = hv_monte_carlo(&pts, &r, 200_000, 17).unwrap();
    assert!(
        (exact - mc.value).abs() <= 3.0 * mc.std_error,
        "{exact} vs {mc:?}"
    );
    let four = random_set(&mut rng, 10, 4);
    let est = hv_estimate(&four, &[1.1; 4]).unwrap();
    assert!(!est.exact);
    assert!((est.value - hv_oracle(&four, &[1.1; 4])).abs() <= 3.0 * est.std_error);
}

proptest! {
    #[test]
    fn hv_monotone_under_additions(
        pts in prop::collection::vec(prop::collection::vec(0.0f64..1.0, 3), 1..12),
        extra in prop::collection::vec(0.0f64..1.0, 3),
    ) {
        let r = [1.1, 1.1, 1.1];
        let base = hv(&pts, &r).unwrap();
        let mut more = pts.clone();
        more.push(extra);
        prop_assert!(hv(&more, &r).unwrap() >= base - 1e-12);
        let fewer = &pts[..pts.len() - 1];
        prop_assert!(hv(fewer, &r).unwrap() <= base + 1e-12);
    }

    #[test]
    fn indicators_are_permutation_invariant(
        pts in prop::collection::vec(prop::collection::vec(0.0f64..1.0, 2), 2..15),
        seed in 0u64..1000,
    ) {
        let mut shuffled = pts.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in (1..shuffled.len()).rev() {
            shuffled.swap(i, rng.gen_range(0..=i));
        }
        let r = [1.1, 1.1];
        let refs = vec![vec![0.0, 1.0], vec![0.5, 0.5], vec![1.0, 0.0]];
        prop_assert!((hv(&pts, &r).unwrap() - hv(&shuffled, &r).unwrap()).abs() < 1e-12);
        prop_assert!((igd(&pts, &refs).unwrap() - igd(&shuffled, &refs).unwrap()).abs() < 1e-12);
        prop_assert!((spacing(&pts).unwrap() - spacing(&shuffled).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn spacing_translation_and_scaling(
        pts in prop::collection::vec(prop::collection::vec(0.0f64..1.0, 3), 2..15),
        shift in -5.0f64..5.0,
        scale in 0.1f64..10.0,
    ) {
        let s = spacing(&pts).unwrap();
        let moved: Vec<Vec<f64>> = pts.iter().map(|p| p.iter().map(|v| v + shift).collect()).collect();
        let scaled: Vec<Vec<f64>> = pts.iter().map(|p| p.iter().map(|v| v * scale).collect()).collect();
        prop_assert!((spacing(&moved).unwrap() - s).abs() < 1e-9);
        prop_assert!((spacing(&scaled).unwrap() - scale * s).abs() < 1e-9 * (1.0 + scale));
    }

    #[test]
    fn igd_zero_iff_reference_covered(
        pts in prop::collection::vec(prop::collection::vec(0.0f64..1.0, 2), 1..10),
    ) {
        prop_assert_eq!(igd(&pts, &pts).unwrap(), 0.0);
        let shifted: Vec<Vec<f64>> = pts.iter().map(|p| vec![p[0] + 2.0, p[1]]).collect();
        prop_assert!(igd(&shifted, &pts).unwrap() > 0.0);
    }
}
