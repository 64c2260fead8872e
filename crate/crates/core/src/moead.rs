//! MOEA/D with Tchebycheff decomposition: neighbourhood mating and
//! unbounded neighbourhood replacement. The final population is assessed.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::area::{initial_population, record_trajectory, RunResult, Trajectory};
use crate::error::{config, Result};
use crate::pareto::{IdealPoints, ObjectiveVector, Solution};
use crate::problems::Problem;
use crate::reference::{build_neighbourhood, lattice_weights};
use crate::variation::{
    make_offspring, select_mate, select_mate_pair, OperatorKind, OperatorParams,
};

/// Weights of exactly zero are replaced by this value.
const MIN_WEIGHT: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct MoeadConfig {
    pub problem: Problem,
    pub n: usize,
    pub t: usize,
    pub max_fe: usize,
    pub operator: OperatorParams,
    pub seed: u64,
    pub trajectory: Option<Trajectory>,
}

impl MoeadConfig {
    pub fn new(problem: Problem, n: usize, max_fe: usize, seed: u64) -> Self {
        Self {
            problem,
            n,
            t: 20,
            max_fe,
            operator: OperatorParams::sbx(),
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
        self.operator.validate()
    }
}

/// Weighted Tchebycheff distance to the ideal point, `max_j |f_j - z_j| / w_j`.
/// Dividing by the weight puts the optimum of each subproblem on the ray
/// through its weight vector.
pub fn tchebycheff(f: &[f64], weight: &[f64], ideal: &[f64]) -> f64 {
    f.iter()
        .zip(weight)
        .zip(ideal)
        .map(|((v, w), z)| (v - z).abs() / w)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// The decomposition weights for `m` objectives and `n` subproblems.
pub fn weights(m: usize, n: usize) -> Vec<Vec<f64>> {
    lattice_weights(m, n)
        .into_iter()
        .map(|w| {
            w.into_iter()
                .map(|v| if v == 0.0 { MIN_WEIGHT } else { v })
                .collect()
        })
        .collect()
}

pub fn run_moead(cfg: &MoeadConfig) -> Result<RunResult> {
    cfg.validate()?;
    let start = Instant::now();
    let problem = &cfg.problem;
    let (n, m) = (cfg.n, problem.objectives());
    let t = cfg.t.min(n);
    let bounds = problem.bounds();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let lambda = weights(m, n);
    let hood = build_neighbourhood(&lattice_weights(m, n), t);
    let mut population = initial_population(problem, n, &mut rng);
    let mut fe = n;
    let mut ideal = IdealPoints::from_points(
        &population
            .iter()
            .map(|s| s.f.as_slice())
            .collect::<Vec<_>>(),
    )?;
    let mut generation = 0;
    let mut samples = Vec::new();
    let mut last_bucket = 0;
    let objectives =
        |p: &[Solution]| -> Vec<ObjectiveVector> { p.iter().map(|s| s.f.clone()).collect() };
    record_trajectory(
        &cfg.trajectory,
        &mut samples,
        &mut last_bucket,
        fe,
        &objectives(&population),
    )?;

    while fe < cfg.max_fe {
        for i in 0..n {
            if fe >= cfg.max_fe {
                break;
            }
            let (a, b) = match cfg.operator.kind {
                OperatorKind::DePm => select_mate_pair(i, &hood[i], n, 1.0, &mut rng),
                OperatorKind::SbxPm | OperatorKind::Adaptive => {
                    let a = select_mate(i, &hood[i], n, 1.0, &mut rng);
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
            ideal.update_lower(&f);
            for &j in &hood[i] {
                let z = &ideal.lower;
                if tchebycheff(&f, &lambda[j], z) <= tchebycheff(&population[j].f, &lambda[j], z) {
                    population[j] = Solution::new(x.clone(), f.clone());
                }
            }
        }
        generation += 1;
        log::debug!("gen={generation} fe={fe}");
        record_trajectory(
            &cfg.trajectory,
            &mut samples,
            &mut last_bucket,
            fe,
            &objectives(&population),
        )?;
    }

    Ok(RunResult {
        final_archive: objectives(&population),
        final_population: population,
        igd_trajectory: samples,
        fe_used: fe,
        generations: generation,
        wall_time: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::make_problem;

    #[test]
    fn tchebycheff_example() {
        assert_eq!(tchebycheff(&[1.0, 3.0], &[0.5, 0.5], &[0.0, 0.0]), 6.0);
        assert_eq!(tchebycheff(&[1.0, 3.0], &[0.25, 0.75], &[1.0, 0.0]), 4.0);
        assert_eq!(
            tchebycheff(&[2.0, 1.0], &[1.0, MIN_WEIGHT], &[0.0, 1.0]),
            2.0
        );
    }

    #[test]
    fn weights_cover_n_without_zeros() {
        let w = weights(3, 105);
        assert_eq!(w.len(), 105);
        assert!(w.iter().flatten().all(|&v| v > 0.0));
    }

    #[test]
    fn deterministic_and_budgeted() {
        let p = make_problem("DTLZ2", 3).unwrap();
        let cfg = MoeadConfig::new(p, 15, 600, 3);
        let a = run_moead(&cfg).unwrap();
        let b = run_moead(&cfg).unwrap();
        assert_eq!(a.final_population, b.final_population);
        assert_eq!(a.fe_used, 600);
        assert_eq!(a.final_population.len(), 15);
    }

    #[test]
    fn rejects_tiny_budget() {
        let p = make_problem("DTLZ2", 3).unwrap();
        assert!(run_moead(&MoeadConfig::new(p, 15, 20, 0)).is_err());
    }
}
