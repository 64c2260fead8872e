//! True-front sampling: analytic constructions for the DTLZ family and
//! bundled reference-front files for everything else.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{wfg, Family, Problem};
use crate::error::{Error, Result};
use crate::pareto::{nondominated_indices, squared_euclidean, ObjectiveVector};
use crate::reference::{lattice_size, simplex_lattice};

/// Environment variable overriding the reference-front directory.
pub const DATA_DIR_ENV: &str = "AREA_DATA_DIR";

/// Directory holding the `<problem>_<M>d.pf` files.
pub fn data_dir() -> PathBuf {
    match std::env::var_os(DATA_DIR_ENV) {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir),
        _ => Path::new(env!("CARGO_MANIFEST_DIR")).join("data"),
    }
}

pub fn front_file_name(p: &Problem) -> String {
    format!("{}_{}d.pf", p.name(), p.objectives())
}

/// Reads a whitespace-separated front file, one vector per line.
pub fn read_front_file(path: &Path) -> Result<Vec<ObjectiveVector>> {
    let text = fs::read_to_string(path).map_err(|e| {
        Error::Data(format!(
            "cannot read reference front {}: {e}",
            path.display()
        ))
    })?;
    let mut points = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row: std::result::Result<Vec<f64>, _> =
            line.split_whitespace().map(str::parse).collect();
        let row = row.map_err(|e| {
            Error::Data(format!(
                "{}:{}: malformed value ({e})",
                path.display(),
                lineno + 1
            ))
        })?;
        if let Some(first) = points.first() {
            let first: &Vec<f64> = first;
            if first.len() != row.len() {
                return Err(Error::Data(format!(
                    "{}:{}: expected {} columns, found {}",
                    path.display(),
                    lineno + 1,
                    first.len(),
                    row.len()
                )));
            }
        }
        points.push(row);
    }
    if points.is_empty() {
        return Err(Error::Data(format!(
            "reference front {} is empty",
            path.display()
        )));
    }
    Ok(points)
}

/// Writes vectors in the front-file format.
pub fn write_front_file(path: &Path, points: &[ObjectiveVector]) -> Result<()> {
    let mut out = String::new();
    for p in points {
        let row: Vec<String> = p.iter().map(|v| format!("{v}")).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    let mut file = fs::File::create(path)
        .map_err(|e| Error::Data(format!("cannot create {}: {e}", path.display())))?;
    file.write_all(out.as_bytes())
        .map_err(|e| Error::Data(format!("cannot write {}: {e}", path.display())))
}

/// Largest lattice resolution with at most `count` points (at least 1).
fn resolution(m: usize, count: usize) -> usize {
    let mut h = 1;
    while lattice_size(m, h + 1) <= count {
        h += 1;
    }
    h
}

fn unit_sphere(m: usize, count: usize) -> Vec<Vec<f64>> {
    simplex_lattice(m, resolution(m, count))
        .into_iter()
        .map(|w| {
            let norm = w.iter().map(|v| v * v).sum::<f64>().sqrt();
            w.iter().map(|v| v / norm).collect()
        })
        .collect()
}

fn lexicographic(points: &mut [ObjectiveVector]) {
    points.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
}

fn dedup(mut points: Vec<ObjectiveVector>) -> Vec<ObjectiveVector> {
    lexicographic(&mut points);
    points.dedup_by(|a, b| squared_euclidean(a, b) < 1e-24);
    points
}

/// Greedy farthest-point subsample of `count` points, seeded by the point
/// with the smallest first objective.
fn thin(points: Vec<ObjectiveVector>, count: usize) -> Vec<ObjectiveVector> {
    if points.len() <= count {
        return points;
    }
    let mut start = 0;
    for (i, p) in points.iter().enumerate() {
        if p[0] < points[start][0] {
            start = i;
        }
    }
    let mut chosen = vec![start];
    let mut gap: Vec<f64> = points
        .iter()
        .map(|p| squared_euclidean(p, &points[start]))
        .collect();
    while chosen.len() < count {
        let mut far = 0;
        for i in 1..gap.len() {
            if gap[i] > gap[far] {
                far = i;
            }
        }
        chosen.push(far);
        for (g, p) in gap.iter_mut().zip(&points) {
            *g = g.min(squared_euclidean(p, &points[far]));
        }
    }
    let mut out: Vec<ObjectiveVector> = chosen.into_iter().map(|i| points[i].clone()).collect();
    lexicographic(&mut out);
    out
}

fn front_of(points: Vec<ObjectiveVector>) -> Vec<ObjectiveVector> {
    let keep = nondominated_indices(&points);
    dedup(keep.into_iter().map(|i| points[i].clone()).collect())
}

/// Regular grid over `[0,1]^dims` with `per_axis` points per axis.
fn grid(dims: usize, per_axis: usize) -> Vec<Vec<f64>> {
    let step = 1.0 / (per_axis - 1) as f64;
    let mut out = vec![Vec::new()];
    for _ in 0..dims {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..per_axis).map(move |k| {
                    let mut p = prefix.clone();
                    p.push(k as f64 * step);
                    p
                })
            })
            .collect();
    }
    out
}

/// Position samples: a grid when it stays small, seeded uniform draws otherwise.
fn positions(dims: usize, budget: usize) -> Vec<Vec<f64>> {
    let per_axis = (budget as f64).powf(1.0 / dims as f64).floor() as usize;
    if per_axis >= 10 {
        // an even interval count keeps 0.5 on the grid
        let per_axis = if per_axis.is_multiple_of(2) {
            per_axis + 1
        } else {
            per_axis
        };
        grid(dims, per_axis)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        (0..budget)
            .map(|_| (0..dims).map(|_| rng.gen()).collect())
            .collect()
    }
}

pub(super) fn analytic_front(p: &Problem, count: usize) -> Vec<ObjectiveVector> {
    let m = p.objectives();
    let count = count.max(2);
    match p.family() {
        Family::Dtlz1 | Family::Idtlz1 => {
            let inverted = p.family() == Family::Idtlz1;
            simplex_lattice(m, resolution(m, count))
                .into_iter()
                .map(|w| {
                    w.iter()
                        .map(|v| if inverted { 0.5 - 0.5 * v } else { 0.5 * v })
                        .collect()
                })
                .collect()
        }
        Family::Dtlz2 => unit_sphere(m, count),
        Family::Idtlz2 => unit_sphere(m, count)
            .into_iter()
            .map(|s| s.iter().map(|v| 1.0 - v).collect())
            .collect(),
        Family::Sdtlz2 => unit_sphere(m, count)
            .into_iter()
            .map(|s| {
                s.iter()
                    .enumerate()
                    .map(|(i, v)| v * 2f64.powi(i as i32))
                    .collect()
            })
            .collect(),
        Family::Cdtlz2 => unit_sphere(m, count)
            .into_iter()
            .map(|s| {
                let mut f: Vec<f64> = s[..m - 1].iter().map(|v| v.powi(4)).collect();
                f.push(s[m - 1].powi(2));
                f
            })
            .collect(),
        Family::Dtlz5 => dedup(
            (0..count)
                .map(|k| {
                    p.evaluate_unchecked(&p.optimal_decision(&[k as f64 / (count - 1) as f64]))
                })
                .collect(),
        ),
        Family::Dtlz7 => {
            let candidates: Vec<ObjectiveVector> = positions(m - 1, 40 * count)
                .iter()
                .map(|pos| p.evaluate_unchecked(&p.optimal_decision(pos)))
                .collect();
            thin(front_of(candidates), count)
        }
        other => unreachable!("{other} has no analytic front"),
    }
}

/// Builds the reference front of a file-backed problem by evaluating a dense
/// sample of its optimal manifold, keeping the nondominated points and
/// thinning them to roughly `count` well-spread points.
pub fn generate_reference_front(p: &Problem, count: usize) -> Vec<ObjectiveVector> {
    let m = p.objectives();
    let count = count.max(2);
    if p.family().has_analytic_front() {
        return analytic_front(p, count);
    }
    if let Family::Wfg(i) = p.family() {
        if i != 2 {
            // concave: the octant of the unit sphere, objective i scaled by 2i
            return unit_sphere(m, count)
                .into_iter()
                .map(|s| {
                    s.iter()
                        .enumerate()
                        .map(|(k, v)| 2.0 * (k + 1) as f64 * v)
                        .collect()
                })
                .collect();
        }
        let candidates: Vec<ObjectiveVector> = positions(m - 1, 40 * count)
            .iter()
            .map(|pos| {
                let mut t = pos.clone();
                t.push(0.0);
                wfg::shape(2, &t, m)
            })
            .collect();
        return thin(front_of(candidates), count);
    }
    let dims = match p.family() {
        Family::Mop(6 | 7) | Family::Uf(8 | 9) => 2,
        Family::F(5..=8) => m - 1,
        _ => 1,
    };
    let budget = if dims == 1 { 40 * count } else { 20 * count };
    let candidates: Vec<ObjectiveVector> = positions(dims, budget)
        .iter()
        .map(|pos| p.evaluate_unchecked(&p.optimal_decision(pos)))
        .collect();
    thin(front_of(candidates), count)
}
