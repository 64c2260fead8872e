use std::path::{Path, PathBuf};
use std::process::ExitCode;

use area_core::problems::{
    data_dir, front_file_name, generate_reference_front, make_problem, write_front_file, Family,
};
use area_harness::bands::band_for;
use area_harness::experiment::{load_metrics, run_experiment, Algorithm, ExperimentSpec};
use area_harness::export::export_plot_data;
use area_harness::stats::{rank_sum_test, Comparison};
use area_harness::{HarnessError, Result};
use clap::{Args, Parser, Subcommand};
use log::{error, info};

/// Exit status when `run --check` finds the mean IGD outside its band.
const EXIT_BAND: u8 = 3;

#[derive(Parser)]
#[command(
    name = "area",
    version,
    about = "Adaptive reference-set multiobjective optimisation experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run seeded replications and write fronts, trajectories and metrics.
    Run(RunArgs),
    /// Summarise one experiment or compare two with the rank-sum test.
    Stats {
        /// Experiment directory or metrics file.
        experiment: PathBuf,
        /// Second experiment to compare against.
        other: Option<PathBuf>,
    },
    /// Write plot-ready scatter, trajectory and parallel-coordinates files.
    Export {
        experiment: PathBuf,
        /// Output directory (default: `<experiment>/plot`).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regenerate reference-front files for problems without a closed form.
    Fronts {
        /// Restrict to one problem.
        #[arg(long)]
        problem: Option<String>,
        #[arg(long)]
        objectives: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        /// Output directory (default: the data directory).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value = "area")]
    alg: String,
    #[arg(long)]
    problem: String,
    /// Number of objectives (default: the problem's usual count).
    #[arg(long)]
    objectives: Option<usize>,
    /// Population size.
    #[arg(long)]
    pop: Option<usize>,
    /// Evaluation budget per run.
    #[arg(long)]
    fe: Option<usize>,
    #[arg(long, default_value_t = 30)]
    runs: usize,
    /// Base seed; run k uses seed + k.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Alternation interval as a fraction of the budget.
    #[arg(long)]
    fr: Option<f64>,
    #[arg(long)]
    archive_factor: Option<f64>,
    /// sbx, de or adaptive.
    #[arg(long)]
    operator: Option<String>,
    /// single or neighbourhood.
    #[arg(long)]
    replacement: Option<String>,
    /// alternating, fixed or evolving.
    #[arg(long)]
    schedule: Option<String>,
    /// IGD sampling period in evaluations; 0 disables trajectories.
    #[arg(long, default_value_t = 100)]
    trajectory_every: usize,
    #[arg(long)]
    out: PathBuf,
    /// Exit with status 3 if the mean IGD misses its known band.
    #[arg(long)]
    check: bool,
}

fn build_spec(a: &RunArgs) -> Result<ExperimentSpec> {
    let alg: Algorithm = a.alg.parse()?;
    let m = match a.objectives {
        Some(m) => m,
        None => a.problem.parse::<Family>()?.default_objectives(),
    };
    let mut spec = ExperimentSpec::new(alg, &a.problem, m)?;
    spec.runs = a.runs;
    spec.seed = a.seed;
    spec.trajectory_every = (a.trajectory_every > 0).then_some(a.trajectory_every);
    if let Some(v) = a.pop {
        spec.pop = v;
    }
    if let Some(v) = a.fe {
        spec.max_fe = v;
    }
    if let Some(v) = a.fr {
        spec.f_r = v;
    }
    if let Some(v) = a.archive_factor {
        spec.archive_factor = v;
    }
    if let Some(v) = &a.operator {
        spec.operator = v.parse::<area_core::variation::OperatorKind>()?.to_string();
    }
    if let Some(v) = &a.replacement {
        spec.replacement = v.parse::<area_core::area::ReplacementRule>()?.to_string();
    }
    if let Some(v) = &a.schedule {
        spec.schedule = v.clone();
    }
    spec.validate()?;
    Ok(spec)
}

fn run(a: &RunArgs) -> Result<ExitCode> {
    let spec = build_spec(a)?;
    let band = if a.check {
        let band = band_for(
            spec.algorithm,
            &spec.problem,
            spec.objectives,
            spec.operator_kind()?,
        );
        Some(band.ok_or_else(|| {
            HarnessError::Config(format!(
                "no reference band for {} on {} with M = {} and {}",
                spec.algorithm, spec.problem, spec.objectives, spec.operator
            ))
        })?)
    } else {
        None
    };
    let doc = run_experiment(&spec, &a.out)?;
    let s = &doc.stats;
    println!(
        "{} {}-{} runs={} IGD mean {:.4e} std {:.2e} | HV mean {:.4} | spacing mean {:.4e}",
        spec.algorithm,
        spec.problem,
        spec.objectives,
        s.runs,
        s.igd.mean,
        s.igd.std.unwrap_or(0.0),
        s.hv.mean,
        s.spacing.mean
    );
    if let Some(band) = band {
        if band.contains(s.igd.mean) {
            println!("check passed: mean IGD {:.4e} in {band}", s.igd.mean);
        } else {
            println!("check FAILED: mean IGD {:.4e} outside {band}", s.igd.mean);
            return Ok(ExitCode::from(EXIT_BAND));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn stats(experiment: &Path, other: Option<&Path>) -> Result<()> {
    let mut doc = load_metrics(experiment)?;
    if let Some(other) = other {
        let rhs = load_metrics(other)?;
        for metric in ["igd", "hv", "spacing"] {
            let (mut xs, mut ys) = (doc.values(metric)?, rhs.values(metric)?);
            if metric == "hv" {
                xs.iter_mut().for_each(|v| *v = -*v);
                ys.iter_mut().for_each(|v| *v = -*v);
            }
            let t = rank_sum_test(&xs, &ys)?;
            doc.stats.comparisons.push(Comparison {
                metric: metric.to_string(),
                against: other.display().to_string(),
                p_value: t.p_value,
                verdict: t.verdict,
            });
        }
    }
    let text = serde_json::to_string_pretty(&doc.stats).map_err(|e| HarnessError::Json {
        path: experiment.to_path_buf(),
        source: e,
    })?;
    println!("{text}");
    Ok(())
}

fn fronts(
    problem: Option<&str>,
    objectives: Option<usize>,
    count: usize,
    out: Option<&Path>,
) -> Result<()> {
    let dir = out.map(Path::to_path_buf).unwrap_or_else(data_dir);
    std::fs::create_dir_all(&dir)
        .map_err(|e| HarnessError::Usage(format!("cannot create {}: {e}", dir.display())))?;
    let families: Vec<Family> = match problem {
        Some(name) => vec![name.parse()?],
        None => Family::ALL
            .iter()
            .copied()
            .filter(|f| !f.has_analytic_front())
            .collect(),
    };
    for family in families {
        let ms: Vec<usize> = match (objectives, family.supported_objectives()) {
            (Some(m), _) => vec![m],
            (None, Some(ms)) => ms.to_vec(),
            (None, None) => vec![family.default_objectives()],
        };
        for m in ms {
            let p = make_problem(&family.to_string(), m)?;
            let points = generate_reference_front(&p, count);
            let path = dir.join(front_file_name(&p));
            write_front_file(&path, &points)?;
            info!("wrote {} ({} points)", path.display(), points.len());
        }
    }
    Ok(())
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Run(a) => run(&a),
        Command::Stats { experiment, other } => {
            stats(&experiment, other.as_deref()).map(|_| ExitCode::SUCCESS)
        }
        Command::Export { experiment, out } => {
            let out = out.unwrap_or_else(|| experiment.join("plot"));
            for p in export_plot_data(&experiment, &out)? {
                println!("{}", p.display());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Fronts {
            problem,
            objectives,
            count,
            out,
        } => {
            fronts(problem.as_deref(), objectives, count, out.as_deref()).map(|_| ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    match dispatch(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            error!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
