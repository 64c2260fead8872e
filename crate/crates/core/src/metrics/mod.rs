//! Quality indicators: inverted generational distance, normalised
//! hypervolume and Schott's spacing.

mod hv;

pub use hv::{hv, hv_estimate, hv_exact, hv_monte_carlo, HvEstimate, MONTE_CARLO_SAMPLES};

use crate::error::{usage, Result};
use crate::pareto::{euclidean, squared_euclidean, ObjectiveVector};

/// Mean distance from each reference-front point to its nearest
/// approximation point.
pub fn igd<A: AsRef<[f64]>, R: AsRef<[f64]>>(approx: &[A], reference: &[R]) -> Result<f64> {
    if approx.is_empty() || reference.is_empty() {
        return usage("IGD needs non-empty approximation and reference sets");
    }
    let m = reference[0].as_ref().len();
    if approx.iter().any(|a| a.as_ref().len() != m)
        || reference.iter().any(|r| r.as_ref().len() != m)
    {
        return usage("IGD inputs have inconsistent objective counts");
    }
    let total: f64 = reference
        .iter()
        .map(|r| {
            approx
                .iter()
                .map(|a| squared_euclidean(r.as_ref(), a.as_ref()))
                .fold(f64::INFINITY, f64::min)
                .sqrt()
        })
        .sum();
    Ok(total / reference.len() as f64)
}

/// Population standard deviation of each point's distance to its nearest
/// other point in the set.
pub fn spacing<A: AsRef<[f64]>>(approx: &[A]) -> Result<f64> {
    if approx.len() < 2 {
        return usage("spacing needs at least two points");
    }
    let d: Vec<f64> = approx
        .iter()
        .enumerate()
        .map(|(i, p)| {
            approx
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, q)| euclidean(p.as_ref(), q.as_ref()))
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let mean = d.iter().sum::<f64>() / d.len() as f64;
    let var = d.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / d.len() as f64;
    Ok(var.sqrt())
}

/// Componentwise maximum of `front` plus `delta`.
pub fn nadir_plus<A: AsRef<[f64]>>(front: &[A], delta: f64) -> ObjectiveVector {
    let Some(first) = front.first() else {
        return Vec::new();
    };
    let mut nadir = first.as_ref().to_vec();
    for p in front {
        for (n, v) in nadir.iter_mut().zip(p.as_ref()) {
            *n = n.max(*v);
        }
    }
    nadir.iter().map(|v| v + delta).collect()
}

#[cfg(test)]
mod tests;
