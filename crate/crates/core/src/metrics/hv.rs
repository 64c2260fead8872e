use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{usage, Result};

/// Samples drawn by the Monte Carlo estimator used for more than three objectives.
pub const MONTE_CARLO_SAMPLES: usize = 1_000_000;
const MONTE_CARLO_SEED: u64 = 0x4856_4d43;

/// A hypervolume value with its Monte Carlo standard error (0 when exact).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HvEstimate {
    pub value: f64,
    pub std_error: f64,
    pub exact: bool,
}

fn check(points: &[Vec<f64>], r: &[f64]) -> Result<()> {
    if r.iter().any(|&v| v <= 0.0 || !v.is_finite()) {
        return usage(format!(
            "hypervolume reference point {r:?} must be positive in every objective"
        ));
    }
    if points.iter().any(|p| p.len() != r.len()) {
        return usage("hypervolume inputs have inconsistent objective counts");
    }
    Ok(())
}

/// Points strictly better than `r` in every objective.
fn inside<A: AsRef<[f64]>>(approx: &[A], r: &[f64]) -> Vec<Vec<f64>> {
    approx
        .iter()
        .map(|p| p.as_ref().to_vec())
        .filter(|p| p.iter().zip(r).all(|(a, b)| a < b))
        .collect()
}

/// Hypervolume of `approx` with respect to `ref_point`, divided by the
/// product of the reference coordinates. Exact for up to three objectives,
/// seeded Monte Carlo beyond.
pub fn hv<A: AsRef<[f64]>>(approx: &[A], ref_point: &[f64]) -> Result<f64> {
    hv_estimate(approx, ref_point).map(|e| e.value)
}

pub fn hv_estimate<A: AsRef<[f64]>>(approx: &[A], ref_point: &[f64]) -> Result<HvEstimate> {
    if ref_point.len() <= 3 {
        let value = hv_exact(approx, ref_point)?;
        Ok(HvEstimate {
            value,
            std_error: 0.0,
            exact: true,
        })
    } else {
        hv_monte_carlo(approx, ref_point, MONTE_CARLO_SAMPLES, MONTE_CARLO_SEED)
    }
}

fn area_2d(points: &mut [Vec<f64>], r: &[f64]) -> f64 {
    points.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let mut best = r[1];
    let mut area = 0.0;
    for p in points.iter() {
        if p[1] < best {
            area += (r[0] - p[0]) * (best - p[1]);
            best = p[1];
        }
    }
    area
}

fn volume_3d(points: &[Vec<f64>], r: &[f64]) -> f64 {
    let mut sorted = points.to_vec();
    sorted.sort_by(|a, b| a[2].total_cmp(&b[2]));
    let mut volume = 0.0;
    let mut slab: Vec<Vec<f64>> = Vec::with_capacity(sorted.len());
    for k in 0..sorted.len() {
        slab.push(sorted[k][..2].to_vec());
        let top = if k + 1 < sorted.len() {
            sorted[k + 1][2]
        } else {
            r[2]
        };
        let height = top - sorted[k][2];
        if height > 0.0 {
            volume += area_2d(&mut slab, r) * height;
        }
    }
    volume
}

/// Exact normalised hypervolume for two or three objectives.
pub fn hv_exact<A: AsRef<[f64]>>(approx: &[A], ref_point: &[f64]) -> Result<f64> {
    let mut pts = inside(approx, ref_point);
    check(&pts, ref_point)?;
    let denom: f64 = ref_point.iter().product();
    let raw = match ref_point.len() {
        1 => pts.iter().map(|p| ref_point[0] - p[0]).fold(0.0, f64::max),
        2 => area_2d(&mut pts, ref_point),
        3 => volume_3d(&pts, ref_point),
        m => {
            return usage(format!(
                "exact hypervolume supports at most 3 objectives, got {m}"
            ))
        }
    };
    Ok(raw / denom)
}

/// Monte Carlo normalised hypervolume: uniform samples in the box spanned
/// by the best coordinates of `approx` and `ref_point`.
pub fn hv_monte_carlo<A: AsRef<[f64]>>(
    approx: &[A],
    ref_point: &[f64],
    samples: usize,
    seed: u64,
) -> Result<HvEstimate> {
    let pts = inside(approx, ref_point);
    check(&pts, ref_point)?;
    let denom: f64 = ref_point.iter().product();
    if pts.is_empty() || samples == 0 {
        return Ok(HvEstimate {
            value: 0.0,
            std_error: 0.0,
            exact: false,
        });
    }
    let m = ref_point.len();
    let lower: Vec<f64> = (0..m)
        .map(|j| pts.iter().map(|p| p[j]).fold(f64::INFINITY, f64::min))
        .collect();
    let box_volume: f64 = (0..m).map(|j| ref_point[j] - lower[j]).product();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sample = vec![0.0; m];
    let mut hits = 0usize;
    for _ in 0..samples {
        for j in 0..m {
            sample[j] = rng.gen_range(lower[j]..ref_point[j]);
        }
        if pts
            .iter()
            .any(|p| p.iter().zip(&sample).all(|(a, s)| a <= s))
        {
            hits += 1;
        }
    }
    let frac = hits as f64 / samples as f64;
    let scale = box_volume / denom;
    Ok(HvEstimate {
        value: frac * scale,
        std_error: (frac * (1.0 - frac) / samples as f64).sqrt() * scale,
        exact: false,
    })
}
