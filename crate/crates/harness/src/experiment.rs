//! Experiment specification, replications and result persistence.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use area_core::area::{
    run_area, AreaConfig, ReferenceSchedule, ReplacementRule, RunResult, Trajectory,
};
use area_core::metrics::{hv, igd, nadir_plus, spacing};
use area_core::moead::{run_moead, MoeadConfig};
use area_core::pareto::ObjectiveVector;
use area_core::problems::{make_problem, write_front_file, Family, Problem};
use area_core::variation::{OperatorKind, OperatorParams};
use log::info;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};
use crate::stats::{StatsReport, Summary};

/// Version of the metrics document layout.
pub const SCHEMA_VERSION: u32 = 1;

/// Points in the true-front sample used by the indicators.
pub const FRONT_POINTS: usize = 1000;

/// Default IGD sampling period in evaluations.
pub const TRAJECTORY_EVERY: usize = 100;

/// HV reference point offset beyond the nadir of the true front.
pub const HV_DELTA: f64 = 0.1;

pub const METRICS_FILE: &str = "metrics.json";
pub const FRONTS_DIR: &str = "fronts";
pub const TRAJECTORIES_DIR: &str = "trajectories";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Area,
    Moead,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Area => "area",
            Algorithm::Moead => "moead",
        })
    }
}

impl FromStr for Algorithm {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "area" => Ok(Algorithm::Area),
            "moead" | "moea/d" => Ok(Algorithm::Moead),
            other => Err(HarnessError::Config(format!(
                "unknown algorithm '{other}' (expected area or moead)"
            ))),
        }
    }
}

/// Parses `alternating`, `fixed` or `evolving`.
pub fn parse_schedule(s: &str) -> Result<ReferenceSchedule> {
    match s.trim().to_ascii_lowercase().as_str() {
        "alternating" => Ok(ReferenceSchedule::Alternating),
        "fixed" | "fixed-only" => Ok(ReferenceSchedule::FixedOnly),
        "evolving" | "evolving-only" => Ok(ReferenceSchedule::EvolvingOnly),
        other => Err(HarnessError::Config(format!(
            "unknown schedule '{other}' (expected alternating, fixed or evolving)"
        ))),
    }
}

pub fn schedule_name(s: ReferenceSchedule) -> &'static str {
    match s {
        ReferenceSchedule::Alternating => "alternating",
        ReferenceSchedule::FixedOnly => "fixed",
        ReferenceSchedule::EvolvingOnly => "evolving",
    }
}

/// Default population size: 100 for two objectives, 105 for three, 156 and
/// 135 for eight and fifteen; UF instances use 600 and 595.
pub fn default_population(family: Family, m: usize) -> usize {
    match (family, m) {
        (Family::Uf(_), 2) => 600,
        (Family::Uf(_), _) => 595,
        (_, 2) => 100,
        (_, 3) => 105,
        (_, 8) => 156,
        (_, 15) => 135,
        (_, m) => 35 * m,
    }
}

/// Default budget: 200000 evaluations for MOP1-5, 300000 for MOP6-7 and UF,
/// 20000 otherwise.
pub fn default_budget(family: Family) -> usize {
    match family {
        Family::Mop(1..=5) => 200_000,
        Family::Mop(_) | Family::Uf(_) => 300_000,
        _ => 20_000,
    }
}

/// Default variation: DE for the MOP and UF suites, SBX otherwise.
pub fn default_operator(family: Family) -> OperatorKind {
    match family {
        Family::Mop(_) | Family::Uf(_) => OperatorKind::DePm,
        _ => OperatorKind::SbxPm,
    }
}

/// Full parameterisation of a batch of replications.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub algorithm: Algorithm,
    pub problem: String,
    pub objectives: usize,
    pub pop: usize,
    pub max_fe: usize,
    pub runs: usize,
    /// Run `k` uses seed `seed + k`.
    pub seed: u64,
    pub operator: String,
    pub f_r: f64,
    pub archive_factor: f64,
    pub replacement: String,
    pub schedule: String,
    /// IGD sampling period; `None` disables trajectories.
    pub trajectory_every: Option<usize>,
}

impl ExperimentSpec {
    /// Specification with the default settings for `problem` with `m` objectives.
    pub fn new(algorithm: Algorithm, problem: &str, m: usize) -> Result<Self> {
        let p = make_problem(problem, m)?;
        let family = p.family();
        Ok(Self {
            algorithm,
            problem: p.name(),
            objectives: m,
            pop: default_population(family, m),
            max_fe: default_budget(family),
            runs: 30,
            seed: 1,
            operator: default_operator(family).to_string(),
            f_r: 0.05,
            archive_factor: 1.5,
            replacement: ReplacementRule::Single.to_string(),
            schedule: schedule_name(ReferenceSchedule::Alternating).to_string(),
            trajectory_every: Some(TRAJECTORY_EVERY),
        })
    }

    pub fn problem(&self) -> Result<Problem> {
        Ok(make_problem(&self.problem, self.objectives)?)
    }

    pub fn operator_kind(&self) -> Result<OperatorKind> {
        Ok(self.operator.parse()?)
    }

    pub fn seed_of(&self, run: usize) -> u64 {
        self.seed.wrapping_add(run as u64)
    }

    /// The AREA configuration of run `run`.
    pub fn area_config(&self, run: usize) -> Result<AreaConfig> {
        let mut cfg = AreaConfig::new(self.problem()?, self.pop, self.max_fe, self.seed_of(run));
        cfg.f_r = self.f_r;
        cfg.archive_factor = self.archive_factor;
        cfg.operator = OperatorParams::new(self.operator_kind()?);
        cfg.replacement = self.replacement.parse()?;
        cfg.schedule = parse_schedule(&self.schedule)?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// The MOEA/D configuration of run `run`.
    pub fn moead_config(&self, run: usize) -> Result<MoeadConfig> {
        let mut cfg = MoeadConfig::new(self.problem()?, self.pop, self.max_fe, self.seed_of(run));
        cfg.operator = OperatorParams::new(self.operator_kind()?);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(HarnessError::Config("at least one run is required".into()));
        }
        if self.trajectory_every == Some(0) {
            return Err(HarnessError::Config(
                "trajectory period must be positive".into(),
            ));
        }
        match self.algorithm {
            Algorithm::Area => self.area_config(0).map(|_| ()),
            Algorithm::Moead => self.moead_config(0).map(|_| ()),
        }
    }
}

/// Indicator values and bookkeeping of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub run: usize,
    pub seed: u64,
    pub igd: f64,
    pub hv: f64,
    pub spacing: f64,
    pub front_size: usize,
    pub fe_used: usize,
    pub generations: usize,
}

/// One finished run: its record, assessed front and IGD trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub record: RunRecord,
    pub front: Vec<ObjectiveVector>,
    pub trajectory: Vec<(usize, f64)>,
}

/// The persisted metrics document of an experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsDocument {
    pub schema_version: u32,
    pub spec: ExperimentSpec,
    pub runs: Vec<RunRecord>,
    pub stats: StatsReport,
}

impl MetricsDocument {
    pub fn values(&self, metric: &str) -> Result<Vec<f64>> {
        metric_values(&self.runs, metric)
    }
}

/// Values of `igd`, `hv` or `spacing` over the runs.
pub fn metric_values(runs: &[RunRecord], metric: &str) -> Result<Vec<f64>> {
    let pick: fn(&RunRecord) -> f64 = match metric {
        "igd" => |r| r.igd,
        "hv" => |r| r.hv,
        "spacing" => |r| r.spacing,
        other => {
            return Err(HarnessError::Usage(format!(
                "unknown metric '{other}' (expected igd, hv or spacing)"
            )))
        }
    };
    Ok(runs.iter().map(pick).collect())
}

/// True-front sample and HV reference point shared by all runs.
pub struct Assessment {
    pub front: Vec<ObjectiveVector>,
    pub hv_reference: ObjectiveVector,
}

impl Assessment {
    pub fn for_problem(problem: &Problem) -> Result<Self> {
        let front = problem.pf_sample(FRONT_POINTS)?;
        let hv_reference = nadir_plus(&front, HV_DELTA);
        Ok(Self {
            front,
            hv_reference,
        })
    }
}

/// Runs replication `run` of `spec`.
pub fn run_replication(
    spec: &ExperimentSpec,
    run: usize,
    assessment: &Assessment,
) -> Result<RunOutcome> {
    let trajectory = spec.trajectory_every.map(|every| Trajectory {
        every,
        reference: assessment.front.clone(),
    });
    let result: RunResult = match spec.algorithm {
        Algorithm::Area => {
            let mut cfg = spec.area_config(run)?;
            cfg.trajectory = trajectory;
            run_area(&cfg)?
        }
        Algorithm::Moead => {
            let mut cfg = spec.moead_config(run)?;
            cfg.trajectory = trajectory;
            run_moead(&cfg)?
        }
    };
    let front = result.final_archive;
    let record = RunRecord {
        run,
        seed: spec.seed_of(run),
        igd: igd(&front, &assessment.front)?,
        hv: hv(&front, &assessment.hv_reference)?,
        spacing: spacing(&front)?,
        front_size: front.len(),
        fe_used: result.fe_used,
        generations: result.generations,
    };
    info!(
        "{} {} run {} (seed {}): IGD {:.4e} in {:.1?}",
        spec.algorithm, spec.problem, run, record.seed, record.igd, result.wall_time
    );
    Ok(RunOutcome {
        record,
        front,
        trajectory: result.igd_trajectory,
    })
}

/// Runs every replication of `spec` in parallel and returns them in run order.
pub fn run_replications(spec: &ExperimentSpec) -> Result<Vec<RunOutcome>> {
    spec.validate()?;
    let assessment = Assessment::for_problem(&spec.problem()?)?;
    (0..spec.runs)
        .into_par_iter()
        .map(|k| run_replication(spec, k, &assessment))
        .collect()
}

pub fn summarise(runs: &[RunRecord]) -> Result<StatsReport> {
    Ok(StatsReport {
        runs: runs.len(),
        igd: Summary::of(&metric_values(runs, "igd")?)?,
        hv: Summary::of(&metric_values(runs, "hv")?)?,
        spacing: Summary::of(&metric_values(runs, "spacing")?)?,
        comparisons: Vec::new(),
    })
}

pub fn front_path(dir: &Path, run: usize) -> PathBuf {
    dir.join(FRONTS_DIR).join(format!("run_{run:03}.pf"))
}

pub fn trajectory_path(dir: &Path, run: usize) -> PathBuf {
    dir.join(TRAJECTORIES_DIR).join(format!("run_{run:03}.dat"))
}

fn create_dir(path: &Path) -> Result<()> {
    fs::create_dir_all(path).map_err(|e| HarnessError::io(path, e))
}

pub(crate) fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| HarnessError::io(path, e))
}

/// Runs `spec` and writes `metrics.json`, one front file per run and one
/// trajectory file per run under `out`.
pub fn run_experiment(spec: &ExperimentSpec, out: &Path) -> Result<MetricsDocument> {
    spec.validate()?;
    create_dir(&out.join(FRONTS_DIR))?;
    if spec.trajectory_every.is_some() {
        create_dir(&out.join(TRAJECTORIES_DIR))?;
    }
    let outcomes = run_replications(spec)?;
    for o in &outcomes {
        write_front_file(&front_path(out, o.record.run), &o.front)?;
        if spec.trajectory_every.is_some() {
            let text: String = o
                .trajectory
                .iter()
                .map(|(fe, v)| format!("{fe} {v}\n"))
                .collect();
            write_text(&trajectory_path(out, o.record.run), &text)?;
        }
    }
    let runs: Vec<RunRecord> = outcomes.into_iter().map(|o| o.record).collect();
    let doc = MetricsDocument {
        schema_version: SCHEMA_VERSION,
        spec: spec.clone(),
        stats: summarise(&runs)?,
        runs,
    };
    save_metrics(&doc, &out.join(METRICS_FILE))?;
    Ok(doc)
}

pub fn save_metrics(doc: &MetricsDocument, path: &Path) -> Result<()> {
    let mut text = serde_json::to_string_pretty(doc).map_err(|e| HarnessError::Json {
        path: path.to_path_buf(),
        source: e,
    })?;
    text.push('\n');
    write_text(path, &text)
}

/// Reads a metrics document from a file or from the `metrics.json` of an
/// experiment directory.
pub fn load_metrics(path: &Path) -> Result<MetricsDocument> {
    let file = if path.is_dir() {
        path.join(METRICS_FILE)
    } else {
        path.to_path_buf()
    };
    let text = fs::read_to_string(&file).map_err(|e| HarnessError::io(&file, e))?;
    let doc: MetricsDocument = serde_json::from_str(&text).map_err(|e| HarnessError::Json {
        path: file.clone(),
        source: e,
    })?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(HarnessError::Config(format!(
            "{} has schema version {}, expected {SCHEMA_VERSION}",
            file.display(),
            doc.schema_version
        )));
    }
    Ok(doc)
}
