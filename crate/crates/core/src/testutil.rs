//! Straight-line oracles shared by unit tests.

pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub(crate) fn cheb(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Removes, one at a time, the point with the lexicographically smallest
/// sorted distance list (recomputed from scratch), lowest index on ties.
pub(crate) fn naive_truncate(points: &[Vec<f64>], target: usize) -> Vec<usize> {
    let mut alive: Vec<usize> = (0..points.len()).collect();
    while alive.len() > target {
        let lists: Vec<Vec<f64>> = alive
            .iter()
            .map(|&i| {
                let mut d: Vec<f64> = alive
                    .iter()
                    .filter(|&&j| j != i)
                    .map(|&j| dist(&points[i], &points[j]))
                    .collect();
                d.sort_by(f64::total_cmp);
                d
            })
            .collect();
        let mut worst = 0;
        for k in 1..alive.len() {
            if lists[k] < lists[worst] {
                worst = k;
            }
        }
        alive.remove(worst);
    }
    alive
}

/// Rescales each coordinate by the set's own min/max range.
pub(crate) fn rescale(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let m = points[0].len();
    let lo: Vec<f64> = (0..m)
        .map(|j| points.iter().map(|p| p[j]).fold(f64::INFINITY, f64::min))
        .collect();
    let hi: Vec<f64> = (0..m)
        .map(|j| {
            points
                .iter()
                .map(|p| p[j])
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    points
        .iter()
        .map(|p| {
            (0..m)
                .map(|j| {
                    let w = hi[j] - lo[j];
                    (p[j] - lo[j]) / if w < 1e-12 { 1.0 } else { w }
                })
                .collect()
        })
        .collect()
}
