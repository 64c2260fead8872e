//! Variation operators (SBX, polynomial mutation, DE/rand/1) and the
//! archive-driven local mating probabilities.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::pareto::euclidean;

/// Which recombination pipeline produces offspring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    /// Simulated binary crossover followed by polynomial mutation.
    SbxPm,
    /// DE/rand/1 with binomial crossover followed by polynomial mutation.
    DePm,
    /// Line recombination and uniform mutation whose step sizes shrink as
    /// the budget is spent.
    Adaptive,
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OperatorKind::SbxPm => "sbx",
            OperatorKind::DePm => "de",
            OperatorKind::Adaptive => "adaptive",
        })
    }
}

impl FromStr for OperatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sbx" | "sbx+pm" | "ga" => Ok(OperatorKind::SbxPm),
            "de" | "de+pm" => Ok(OperatorKind::DePm),
            "adaptive" => Ok(OperatorKind::Adaptive),
            other => Err(Error::Config(format!(
                "unknown operator '{other}' (expected sbx, de or adaptive)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorParams {
    pub kind: OperatorKind,
    pub eta_c: f64,
    pub p_c: f64,
    pub eta_m: f64,
    /// Per-variable mutation probability; `None` means `1/n`.
    pub p_m: Option<f64>,
    pub f: f64,
    pub cr: f64,
    /// Fraction of the evaluation budget already spent, in `[0, 1]`; read
    /// only by [`OperatorKind::Adaptive`].
    pub progress: f64,
}

impl OperatorParams {
    pub fn new(kind: OperatorKind) -> Self {
        Self {
            kind,
            eta_c: 20.0,
            p_c: 1.0,
            eta_m: 20.0,
            p_m: None,
            f: 0.5,
            cr: 1.0,
            progress: 0.0,
        }
    }

    pub fn sbx() -> Self {
        Self::new(OperatorKind::SbxPm)
    }

    pub fn de() -> Self {
        Self::new(OperatorKind::DePm)
    }

    pub fn validate(&self) -> Result<()> {
        let unit = |v: f64| (0.0..=1.0).contains(&v);
        if !(self.eta_c > 0.0 && self.eta_m > 0.0 && self.f > 0.0) {
            return Err(Error::Config(
                "distribution indices and DE scale must be positive".into(),
            ));
        }
        if !(unit(self.p_c) && unit(self.cr) && unit(self.progress) && self.p_m.is_none_or(unit)) {
            return Err(Error::Config(
                "operator probabilities must lie in [0, 1]".into(),
            ));
        }
        Ok(())
    }

    fn mutation_rate(&self, n: usize) -> f64 {
        self.p_m.unwrap_or(1.0 / n as f64)
    }
}

impl Default for OperatorParams {
    fn default() -> Self {
        Self::sbx()
    }
}

/// One SBX child of `p1` and `p2`, clamped to `bounds`.
pub fn sbx_crossover<R: Rng + ?Sized>(
    p1: &[f64],
    p2: &[f64],
    params: &OperatorParams,
    bounds: &[(f64, f64)],
    rng: &mut R,
) -> Vec<f64> {
    let mut c1 = p1.to_vec();
    let mut c2 = p2.to_vec();
    if rng.gen::<f64>() <= params.p_c {
        let eta = params.eta_c;
        for i in 0..p1.len() {
            if rng.gen::<f64>() > 0.5 || (p1[i] - p2[i]).abs() <= 1e-14 {
                continue;
            }
            let (lo, hi) = bounds[i];
            let (y1, y2) = if p1[i] < p2[i] {
                (p1[i], p2[i])
            } else {
                (p2[i], p1[i])
            };
            let u: f64 = rng.gen();
            let spread = |beta: f64| {
                let alpha = 2.0 - beta.powf(-(eta + 1.0));
                if u <= 1.0 / alpha {
                    (u * alpha).powf(1.0 / (eta + 1.0))
                } else {
                    (1.0 / (2.0 - u * alpha)).powf(1.0 / (eta + 1.0))
                }
            };
            let bq1 = spread(1.0 + 2.0 * (y1 - lo) / (y2 - y1));
            let bq2 = spread(1.0 + 2.0 * (hi - y2) / (y2 - y1));
            let a = (0.5 * ((y1 + y2) - bq1 * (y2 - y1))).clamp(lo, hi);
            let b = (0.5 * ((y1 + y2) + bq2 * (y2 - y1))).clamp(lo, hi);
            if rng.gen::<f64>() < 0.5 {
                c1[i] = b;
                c2[i] = a;
            } else {
                c1[i] = a;
                c2[i] = b;
            }
        }
    }
    if rng.gen::<f64>() < 0.5 {
        c1
    } else {
        c2
    }
}

/// Bounded polynomial mutation.
pub fn polynomial_mutation<R: Rng + ?Sized>(
    x: &[f64],
    params: &OperatorParams,
    bounds: &[(f64, f64)],
    rng: &mut R,
) -> Vec<f64> {
    let rate = params.mutation_rate(x.len());
    let eta = params.eta_m;
    let pow = 1.0 / (eta + 1.0);
    x.iter()
        .zip(bounds)
        .map(|(&y, &(lo, hi))| {
            if rng.gen::<f64>() >= rate || hi <= lo {
                return y;
            }
            let width = hi - lo;
            let d1 = (y - lo) / width;
            let d2 = (hi - y) / width;
            let u: f64 = rng.gen();
            let dq = if u < 0.5 {
                let v = 2.0 * u + (1.0 - 2.0 * u) * (1.0 - d1).powf(eta + 1.0);
                v.powf(pow) - 1.0
            } else {
                let v = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - d2).powf(eta + 1.0);
                1.0 - v.powf(pow)
            };
            (y + dq * width).clamp(lo, hi)
        })
        .collect()
}

/// DE/rand/1 trial vector `target + F (a - b)` with binomial crossover.
/// Components leaving the box are placed halfway between the target and
/// the violated bound.
pub fn de_trial<R: Rng + ?Sized>(
    target: &[f64],
    a: &[f64],
    b: &[f64],
    params: &OperatorParams,
    bounds: &[(f64, f64)],
    rng: &mut R,
) -> Vec<f64> {
    let n = target.len();
    let jrand = rng.gen_range(0..n);
    (0..n)
        .map(|j| {
            let gate = rng.gen::<f64>() < params.cr;
            if !(gate || j == jrand) {
                return target[j];
            }
            let (lo, hi) = bounds[j];
            let v = target[j] + params.f * (a[j] - b[j]);
            if v < lo {
                0.5 * (target[j] + lo)
            } else if v > hi {
                0.5 * (target[j] + hi)
            } else {
                v
            }
        })
        .collect()
}

/// DE trial followed by polynomial mutation.
pub fn de_offspring<R: Rng + ?Sized>(
    target: &[f64],
    a: &[f64],
    b: &[f64],
    params: &OperatorParams,
    bounds: &[(f64, f64)],
    rng: &mut R,
) -> Vec<f64> {
    let trial = de_trial(target, a, b, params, bounds, rng);
    polynomial_mutation(&trial, params, bounds, rng)
}

/// `1 - v^{-(1 - t)^0.7}` for `v` uniform in `(0, 1]`: zero at `t = 1`,
/// heavy-tailed towards minus infinity at `t = 0`.
fn decay<R: Rng + ?Sized>(t: f64, rng: &mut R) -> f64 {
    let v = 1.0 - rng.gen::<f64>();
    1.0 - v.powf(-(1.0 - t).powf(0.7))
}

/// Time-decaying operator: the child `parent + r (parent - mate)` with
/// `r = (2u - 1) decay(t)`, then each variable with probability `p_m`
/// shifted by `0.25 (2u - 1) decay(t)` times its range, where `t` is
/// `params.progress`. A component leaving the box is placed at a uniform
/// fraction of the way from the violated bound to halfway towards the parent.
pub fn adaptive_offspring<R: Rng + ?Sized>(
    parent: &[f64],
    mate: &[f64],
    params: &OperatorParams,
    bounds: &[(f64, f64)],
    rng: &mut R,
) -> Vec<f64> {
    let t = params.progress.clamp(0.0, 1.0);
    let rate = params.mutation_rate(parent.len());
    let r = (2.0 * rng.gen::<f64>() - 1.0) * decay(t, rng);
    (0..parent.len())
        .map(|j| {
            let (lo, hi) = bounds[j];
            let mut y = parent[j] + r * (parent[j] - mate[j]);
            if rng.gen::<f64>() < rate {
                y += 0.25 * (2.0 * rng.gen::<f64>() - 1.0) * decay(t, rng) * (hi - lo);
            }
            if y < lo {
                lo + 0.5 * rng.gen::<f64>() * (parent[j] - lo)
            } else if y > hi {
                hi - 0.5 * rng.gen::<f64>() * (hi - parent[j])
            } else {
                y
            }
        })
        .collect()
}

/// Offspring of `parent` with mates `a` (and `b` for DE) under `params`.
pub fn make_offspring<R: Rng + ?Sized>(
    parent: &[f64],
    a: &[f64],
    b: &[f64],
    params: &OperatorParams,
    bounds: &[(f64, f64)],
    rng: &mut R,
) -> Vec<f64> {
    match params.kind {
        OperatorKind::SbxPm => {
            let child = sbx_crossover(parent, a, params, bounds, rng);
            polynomial_mutation(&child, params, bounds, rng)
        }
        OperatorKind::DePm => de_offspring(parent, a, b, params, bounds, rng),
        OperatorKind::Adaptive => adaptive_offspring(parent, a, params, bounds, rng),
    }
}

/// Draws a mate for member `i`: with probability `prob` from `neighbourhood`,
/// otherwise from the whole population of `pop_size`. Member `i` itself is
/// never drawn unless it is the only member; a neighbourhood holding only
/// `i` falls back to the whole population.
pub fn select_mate<R: Rng + ?Sized>(
    i: usize,
    neighbourhood: &[usize],
    pop_size: usize,
    prob: f64,
    rng: &mut R,
) -> usize {
    let local = rng.gen::<f64>() < prob;
    draw(i, None, neighbourhood, pop_size, local, rng)
}

/// Like [`select_mate`], drawing also from the same pool a second mate
/// distinct from the first where possible (for DE).
pub fn select_mate_pair<R: Rng + ?Sized>(
    i: usize,
    neighbourhood: &[usize],
    pop_size: usize,
    prob: f64,
    rng: &mut R,
) -> (usize, usize) {
    let local = rng.gen::<f64>() < prob;
    let a = draw(i, None, neighbourhood, pop_size, local, rng);
    let b = draw(i, Some(a), neighbourhood, pop_size, local, rng);
    (a, b)
}

fn draw<R: Rng + ?Sized>(
    i: usize,
    also: Option<usize>,
    neighbourhood: &[usize],
    pop_size: usize,
    local: bool,
    rng: &mut R,
) -> usize {
    let allowed = |k: &usize| *k != i && Some(*k) != also;
    if local {
        let pool: Vec<usize> = neighbourhood.iter().copied().filter(allowed).collect();
        if !pool.is_empty() {
            return pool[rng.gen_range(0..pool.len())];
        }
    }
    let count = (0..pop_size).filter(allowed).count();
    if count == 0 {
        return (0..pop_size).find(|&k| k != i).unwrap_or(i);
    }
    let k = rng.gen_range(0..count);
    (0..pop_size).filter(allowed).nth(k).unwrap_or(i)
}

/// Per-member probability of mating locally.
///
/// For member `p` with nearest archive member `a`, `d = |p - a| + prod of
/// the M smallest distances from a to other archive members` (missing
/// neighbours count as 1). Probabilities are `d / max d` raised by 0.2 and
/// capped at 1. An empty archive or an all-zero `d` gives probability 1.
/// Inputs are normalised objective vectors.
pub fn local_mating_probabilities(
    population: &[Vec<f64>],
    archive: &[Vec<f64>],
    m: usize,
) -> Vec<f64> {
    if archive.is_empty() {
        log::debug!("local mating probabilities default to 1: archive is empty");
        return vec![1.0; population.len()];
    }
    let spread: Vec<f64> = archive
        .iter()
        .enumerate()
        .map(|(j, a)| {
            let mut d: Vec<f64> = archive
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .map(|(_, b)| euclidean(a, b))
                .collect();
            d.sort_by(f64::total_cmp);
            d.iter().take(m).product()
        })
        .collect();
    let d: Vec<f64> = population
        .iter()
        .map(|p| {
            let (j, near) = archive
                .iter()
                .enumerate()
                .map(|(j, a)| (j, euclidean(p, a)))
                .fold(
                    (0, f64::INFINITY),
                    |best, cur| if cur.1 < best.1 { cur } else { best },
                );
            near + spread[j]
        })
        .collect();
    let max = d.iter().copied().fold(0.0, f64::max);
    if max <= 0.0 || !max.is_finite() {
        return vec![1.0; population.len()];
    }
    d.iter().map(|v| (v / max + 0.2).min(1.0)).collect()
}
