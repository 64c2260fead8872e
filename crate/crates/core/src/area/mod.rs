//! The AREA main loop: alternation between the fixed initial reference set
//! and an evolving one, archive-guided mating, Chebyshev-distance
//! replacement and bounded archive maintenance.

pub mod archive;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use archive::{assess, spea2_truncate, update_archive, Archive};

use crate::error::{config, Error, Result};
use crate::metrics::igd;
use crate::pareto::{chebyshev, IdealPoints, Individual, ObjectiveVector, Solution};
use crate::problems::Problem;
use crate::reference::{
    initial_reference_set, match_population, update_reference_set, KRule, ReferenceSet,
};
use crate::variation::{
    local_mating_probabilities, make_offspring, select_mate, select_mate_pair, OperatorKind,
    OperatorParams,
};

/// Which incumbents an offspring may replace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReplacementRule {
    /// Every member whose target lies in the neighbourhood of the
    /// offspring's nearest reference.
    Neighbourhood,
    /// Only the member targeting the offspring's nearest reference.
    Single,
}

impl fmt::Display for ReplacementRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReplacementRule::Neighbourhood => "neighbourhood",
            ReplacementRule::Single => "single",
        })
    }
}

impl FromStr for ReplacementRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "neighbourhood" | "neighborhood" => Ok(ReplacementRule::Neighbourhood),
            "single" => Ok(ReplacementRule::Single),
            other => Err(Error::Config(format!("unknown replacement rule '{other}'"))),
        }
    }
}

/// Reference-set schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReferenceSchedule {
    /// Toggle between fixed and evolving every `ceil(f_r * max_fe)` evaluations.
    Alternating,
    /// Never leave the initial reference set.
    FixedOnly,
    /// Never return to the initial reference set.
    EvolvingOnly,
}

/// The reference set in use during a generation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Fixed,
    Evolving,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Fixed => "fixed",
            Mode::Evolving => "evolving",
        })
    }
}

/// IGD sampling against a true-front sample during a run.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    /// Sampling period in evaluations.
    pub every: usize,
    pub reference: Vec<ObjectiveVector>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AreaConfig {
    pub problem: Problem,
    pub n: usize,
    pub t: usize,
    pub max_fe: usize,
    /// Alternation interval as a fraction of `max_fe`.
    pub f_r: f64,
    /// Archive capacity as a multiple of `n`.
    pub archive_factor: f64,
    pub k_rule: KRule,
    pub operator: OperatorParams,
    pub replacement: ReplacementRule,
    pub schedule: ReferenceSchedule,
    pub seed: u64,
    pub trajectory: Option<Trajectory>,
}

impl AreaConfig {
    /// Defaults: `T = 20`, `f_r = 0.05`, archive of `1.5 N`, `K = ceil(sqrt N)`,
    /// SBX with polynomial mutation, single-member replacement.
    pub fn new(problem: Problem, n: usize, max_fe: usize, seed: u64) -> Self {
        Self {
            problem,
            n,
            t: 20,
            max_fe,
            f_r: 0.05,
            archive_factor: 1.5,
            k_rule: KRule::Sqrt,
            operator: OperatorParams::sbx(),
            replacement: ReplacementRule::Single,
            schedule: ReferenceSchedule::Alternating,
            seed,
            trajectory: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return config(format!(
                "population size must be at least 2, got {}",
                self.n
            ));
        }
        if self.t == 0 {
            return config("neighbourhood size must be positive");
        }
        if self.max_fe < 2 * self.n {
            return config(format!(
                "budget of {} evaluations is smaller than initialisation plus one generation ({})",
                self.max_fe,
                2 * self.n
            ));
        }
        if !(self.f_r > 0.0 && self.f_r.is_finite()) {
            return config(format!(
                "alternation interval f_r must be positive, got {}",
                self.f_r
            ));
        }
        if !(self.archive_factor >= 1.0 && self.archive_factor.is_finite()) {
            return config(format!(
                "archive factor must be at least 1, got {}",
                self.archive_factor
            ));
        }
        if let KRule::Fraction(f) = self.k_rule {
            if !(0.0..=1.0).contains(&f) {
                return config(format!("K fraction must lie in [0, 1], got {f}"));
            }
        }
        self.operator.validate()
    }

    pub fn archive_capacity(&self) -> usize {
        (self.archive_factor * self.n as f64).ceil() as usize
    }

    /// Evaluations between reference-mode toggles.
    pub fn interval(&self) -> usize {
        ((self.f_r * self.max_fe as f64).ceil() as usize).max(1)
    }
}

/// Outcome of one optimisation run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub final_population: Vec<Solution>,
    /// Assessed front: the archive truncated to `N` (or the final population
    /// for algorithms without an archive).
    pub final_archive: Vec<ObjectiveVector>,
    pub igd_trajectory: Vec<(usize, f64)>,
    pub fe_used: usize,
    pub generations: usize,
    pub wall_time: Duration,
}

/// Snapshot handed to a run observer after every generation.
pub struct GenerationState<'a> {
    pub generation: usize,
    pub fe: usize,
    pub mode: Mode,
    pub population: &'a [Individual],
    pub references: &'a ReferenceSet,
    pub archive: &'a Archive,
    pub ideal: &'a IdealPoints,
}

pub fn run_area(cfg: &AreaConfig) -> Result<RunResult> {
    run_area_observed(cfg, |_| {})
}

/// Replaces incumbents with offspring `y` and returns how many were replaced.
pub fn replace_in_neighbourhood(
    y: &Solution,
    refs: &ReferenceSet,
    population: &mut [Individual],
    z: &IdealPoints,
    rule: ReplacementRule,
) -> usize {
    let yn = z.normalize(&y.f);
    let mut nearest = 0;
    let mut best = f64::INFINITY;
    for (j, r) in refs.points.iter().enumerate() {
        let d = chebyshev(&yn, r);
        if d < best {
            best = d;
            nearest = j;
        }
    }
    let target = &refs.points[nearest];
    let candidates: &[usize] = match rule {
        ReplacementRule::Neighbourhood => &refs.neighbours[nearest],
        ReplacementRule::Single => std::slice::from_ref(&nearest),
    };
    let mut replaced = 0;
    for &s in candidates {
        if best < chebyshev(&z.normalize(&population[s].f), target) {
            population[s].x.clone_from(&y.x);
            population[s].f.clone_from(&y.f);
            replaced += 1;
        }
    }
    replaced
}

fn random_solution<R: Rng + ?Sized>(problem: &Problem, rng: &mut R) -> Solution {
    let x: Vec<f64> = problem
        .bounds()
        .iter()
        .map(|&(lo, hi)| rng.gen_range(lo..=hi))
        .collect();
    let f = problem.evaluate_unchecked(&x);
    Solution::new(x, f)
}

/// Uniform random initial population, `n` evaluations.
pub(crate) fn initial_population<R: Rng + ?Sized>(
    problem: &Problem,
    n: usize,
    rng: &mut R,
) -> Vec<Solution> {
    (0..n).map(|_| random_solution(problem, rng)).collect()
}

pub(crate) fn record_trajectory(
    trajectory: &Option<Trajectory>,
    samples: &mut Vec<(usize, f64)>,
    last_bucket: &mut usize,
    fe: usize,
    front: &[ObjectiveVector],
) -> Result<()> {
    if let Some(tr) = trajectory {
        let bucket = fe / tr.every.max(1);
        if bucket > *last_bucket || samples.is_empty() {
            *last_bucket = bucket;
            samples.push((fe, igd(front, &tr.reference)?));
        }
    }
    Ok(())
}

/// Runs AREA, calling `observe` after every generation.
pub fn run_area_observed<F>(cfg: &AreaConfig, mut observe: F) -> Result<RunResult>
where
    F: FnMut(&GenerationState<'_>),
{
    cfg.validate()?;
    let start = Instant::now();
    let problem = &cfg.problem;
    let (n, m) = (cfg.n, problem.objectives());
    let t = cfg.t.min(n);
    let k = cfg.k_rule.count(n);
    let bounds = problem.bounds();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let r0 = initial_reference_set(m, n, t);
    let initial = initial_population(problem, n, &mut rng);
    let mut fe = n;
    let mut archive = Archive::from_solutions(cfg.archive_capacity(), &initial);
    let mut z =
        IdealPoints::from_points(&initial.iter().map(|s| s.f.as_slice()).collect::<Vec<_>>())?;
    let mut population: Vec<Individual> = initial
        .into_iter()
        .enumerate()
        .map(|(i, s)| Individual::new(s, i))
        .collect();
    let mut refs = r0.clone();

    let interval = cfg.interval();
    let mut mode = match cfg.schedule {
        ReferenceSchedule::EvolvingOnly => Mode::Evolving,
        _ => Mode::Fixed,
    };
    let mut next_toggle = interval;
    let mut generation = 0;
    let mut samples = Vec::new();
    let mut last_bucket = 0;
    record_trajectory(
        &cfg.trajectory,
        &mut samples,
        &mut last_bucket,
        fe,
        &archive.objectives(),
    )?;

    while fe < cfg.max_fe {
        if cfg.schedule == ReferenceSchedule::Alternating {
            while fe >= next_toggle {
                mode = match mode {
                    Mode::Fixed => Mode::Evolving,
                    Mode::Evolving => Mode::Fixed,
                };
                next_toggle += interval;
                log::debug!("fe={fe} switching to {mode} reference set");
            }
        }
        match mode {
            Mode::Evolving => {
                let (r, p) = update_reference_set(
                    &population,
                    archive.members(),
                    &refs,
                    n,
                    t,
                    k,
                    &z,
                    &mut rng,
                )?;
                refs = r;
                population = p;
            }
            Mode::Fixed => {
                if refs != r0 {
                    refs = r0.clone();
                }
                population = match_population(&population, archive.members(), &refs, &z)?;
            }
        }

        let pop_norm: Vec<Vec<f64>> = population.iter().map(|p| z.normalize(&p.f)).collect();
        let arc_norm: Vec<Vec<f64>> = archive
            .members()
            .iter()
            .map(|s| z.normalize(&s.f))
            .collect();
        let probs = local_mating_probabilities(&pop_norm, &arc_norm, m);

        let mut offspring: Vec<Solution> = Vec::with_capacity(n);
        for i in 0..n {
            if fe >= cfg.max_fe {
                break;
            }
            let hood = &refs.neighbours[i];
            let (a, b) = match cfg.operator.kind {
                OperatorKind::DePm => select_mate_pair(i, hood, n, probs[i], &mut rng),
                OperatorKind::SbxPm | OperatorKind::Adaptive => {
                    let a = select_mate(i, hood, n, probs[i], &mut rng);
                    (a, a)
                }
            };
            let x = make_offspring(
                &population[i].x,
                &population[a].x,
                &population[b].x,
                &OperatorParams {
                    progress: fe as f64 / cfg.max_fe as f64,
                    ..cfg.operator
                },
                bounds,
                &mut rng,
            );
            let f = problem.evaluate_unchecked(&x);
            fe += 1;
            let y = Solution::new(x, f);
            z.update_lower(&y.f);
            replace_in_neighbourhood(&y, &refs, &mut population, &z, cfg.replacement);
            offspring.push(y);
        }

        let merged: Vec<Solution> = population
            .iter()
            .map(|p| p.solution())
            .chain(offspring.iter().cloned())
            .collect();
        z.reset_upper(merged.iter().map(|s| s.f.as_slice()));
        archive.update(merged.iter());
        generation += 1;
        log::debug!(
            "gen={generation} fe={fe} mode={mode} archive={}",
            archive.len()
        );
        record_trajectory(
            &cfg.trajectory,
            &mut samples,
            &mut last_bucket,
            fe,
            &archive.objectives(),
        )?;
        observe(&GenerationState {
            generation,
            fe,
            mode,
            population: &population,
            references: &refs,
            archive: &archive,
            ideal: &z,
        });
    }

    Ok(RunResult {
        final_population: population.iter().map(|p| p.solution()).collect(),
        final_archive: archive.assess(n),
        igd_trajectory: samples,
        fe_used: fe,
        generations: generation,
        wall_time: start.elapsed(),
    })
}

#[cfg(test)]
mod tests;
