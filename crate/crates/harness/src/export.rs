//! Plot-ready text files derived from a finished experiment.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use area_core::pareto::ObjectiveVector;
use area_core::problems::read_front_file;

use crate::error::{HarnessError, Result};
use crate::experiment::{front_path, load_metrics, trajectory_path, write_text};

/// Scatter file of a front: one whitespace-separated row per point.
pub fn scatter_text(front: &[ObjectiveVector]) -> String {
    front
        .iter()
        .map(|p| {
            p.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ")
                + "\n"
        })
        .collect()
}

/// Parallel-coordinates table: a header naming the objectives, then each
/// point rescaled to `[0, 1]` per objective over the front.
pub fn parallel_text(front: &[ObjectiveVector]) -> String {
    let Some(first) = front.first() else {
        return String::new();
    };
    let m = first.len();
    let lo: Vec<f64> = (0..m)
        .map(|j| front.iter().map(|p| p[j]).fold(f64::INFINITY, f64::min))
        .collect();
    let hi: Vec<f64> = (0..m)
        .map(|j| front.iter().map(|p| p[j]).fold(f64::NEG_INFINITY, f64::max))
        .collect();
    let mut out = (1..=m)
        .map(|j| format!("f{j}"))
        .collect::<Vec<_>>()
        .join(" ")
        + "\n";
    for p in front {
        let row: Vec<String> = (0..m)
            .map(|j| {
                let span = hi[j] - lo[j];
                let v = if span > 0.0 {
                    (p[j] - lo[j]) / span
                } else {
                    0.0
                };
                v.to_string()
            })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Mean IGD at every sampled evaluation count, over the runs that reached it.
pub fn mean_trajectory(trajectories: &[Vec<(usize, f64)>]) -> Vec<(usize, f64)> {
    let mut acc: BTreeMap<usize, (f64, usize)> = BTreeMap::new();
    for t in trajectories {
        for &(fe, v) in t {
            let e = acc.entry(fe).or_insert((0.0, 0));
            e.0 += v;
            e.1 += 1;
        }
    }
    acc.into_iter()
        .map(|(fe, (s, n))| (fe, s / n as f64))
        .collect()
}

fn read_trajectory(path: &Path) -> Result<Vec<(usize, f64)>> {
    let text = fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let mut it = l.split_whitespace();
            let fe = it.next().and_then(|v| v.parse().ok());
            let igd = it.next().and_then(|v| v.parse().ok());
            match (fe, igd) {
                (Some(fe), Some(igd)) => Ok((fe, igd)),
                _ => Err(HarnessError::Usage(format!(
                    "malformed trajectory line '{l}' in {}",
                    path.display()
                ))),
            }
        })
        .collect()
}

/// Writes scatter files of every final front, the mean IGD trajectory and,
/// for more than three objectives, parallel-coordinates tables into `out`.
/// Returns the written paths.
pub fn export_plot_data(experiment: &Path, out: &Path) -> Result<Vec<PathBuf>> {
    let doc = load_metrics(experiment)?;
    fs::create_dir_all(out).map_err(|e| HarnessError::io(out, e))?;
    let mut written = Vec::new();
    let mut trajectories = Vec::new();
    for r in &doc.runs {
        let front = read_front_file(&front_path(experiment, r.run))?;
        let path = out.join(format!("scatter_run_{:03}.dat", r.run));
        write_text(&path, &scatter_text(&front))?;
        written.push(path);
        if doc.spec.objectives > 3 {
            let path = out.join(format!("parallel_run_{:03}.dat", r.run));
            write_text(&path, &parallel_text(&front))?;
            written.push(path);
        }
        let tp = trajectory_path(experiment, r.run);
        if tp.exists() {
            trajectories.push(read_trajectory(&tp)?);
        }
    }
    if !trajectories.is_empty() {
        let text: String = mean_trajectory(&trajectories)
            .iter()
            .map(|(fe, v)| format!("{fe} {v}\n"))
            .collect();
        let path = out.join("trajectory_mean.dat");
        write_text(&path, &text)?;
        written.push(path);
    }
    Ok(written)
}
