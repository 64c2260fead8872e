//! WFG2, WFG4 and WFG6 with `k = 2(M-1)` position and `l = 20` distance
//! parameters.

use std::f64::consts::PI;

use crate::pareto::ObjectiveVector;

const L: usize = 20;

fn position_count(m: usize) -> usize {
    2 * (m - 1)
}

pub(super) fn bounds(m: usize) -> Vec<(f64, f64)> {
    let n = position_count(m) + L;
    (1..=n).map(|i| (0.0, 2.0 * i as f64)).collect()
}

fn correct_to_01(v: f64) -> f64 {
    const EPS: f64 = 1e-10;
    if (-EPS..0.0).contains(&v) {
        0.0
    } else if v > 1.0 && v <= 1.0 + EPS {
        1.0
    } else {
        v
    }
}

fn s_linear(y: f64, a: f64) -> f64 {
    correct_to_01((y - a).abs() / ((a - y).floor() + a).abs())
}

fn s_multi(y: f64, a: f64, b: f64, c: f64) -> f64 {
    let tmp1 = (y - c).abs() / (2.0 * ((c - y).floor() + c));
    let tmp2 = (4.0 * a + 2.0) * PI * (0.5 - tmp1);
    correct_to_01((1.0 + tmp2.cos() + 4.0 * b * tmp1 * tmp1) / (b + 2.0))
}

fn r_sum(y: &[f64]) -> f64 {
    correct_to_01(y.iter().sum::<f64>() / y.len() as f64)
}

fn r_nonsep(y: &[f64], a: usize) -> f64 {
    let n = y.len();
    let mut num = 0.0;
    for j in 0..n {
        num += y[j];
        for k in 0..a.saturating_sub(1) {
            num += (y[j] - y[(1 + j + k) % n]).abs();
        }
    }
    let half = (a as f64 / 2.0).ceil();
    let den = (n as f64 / a as f64) * half * (1.0 + 2.0 * a as f64 - 2.0 * half);
    correct_to_01(num / den)
}

/// Reduces the transformed vector to `M` values, one per position group
/// plus one for the distance parameters.
fn reduce(
    t: &[f64],
    m: usize,
    k: usize,
    group: impl Fn(&[f64]) -> f64,
    tail: impl Fn(&[f64]) -> f64,
) -> Vec<f64> {
    let size = k / (m - 1);
    let mut out: Vec<f64> = (0..m - 1)
        .map(|i| group(&t[i * size..(i + 1) * size]))
        .collect();
    out.push(tail(&t[k..]));
    out
}

/// The reduced parameter vector `t` (length `M`) for instance `which`.
fn reduced(which: u8, z: &[f64], m: usize) -> Vec<f64> {
    let k = position_count(m);
    let y: Vec<f64> = z
        .iter()
        .enumerate()
        .map(|(i, v)| v / (2.0 * (i + 1) as f64))
        .collect();
    match which {
        2 => {
            let mut t1 = y;
            for v in t1[k..].iter_mut() {
                *v = s_linear(*v, 0.35);
            }
            let mut t2: Vec<f64> = t1[..k].to_vec();
            for pair in t1[k..].chunks(2) {
                t2.push(r_nonsep(pair, 2));
            }
            reduce(&t2, m, k, r_sum, r_sum)
        }
        4 => {
            let t1: Vec<f64> = y.iter().map(|&v| s_multi(v, 30.0, 10.0, 0.35)).collect();
            reduce(&t1, m, k, r_sum, r_sum)
        }
        6 => {
            let mut t1 = y;
            for v in t1[k..].iter_mut() {
                *v = s_linear(*v, 0.35);
            }
            let size = k / (m - 1);
            reduce(&t1, m, k, |g| r_nonsep(g, size), |g| r_nonsep(g, L))
        }
        _ => unreachable!("WFG{which} is not registered"),
    }
}

fn convex(x: &[f64], m: usize, i: usize) -> f64 {
    let mut r: f64 = x[..m - 1 - i]
        .iter()
        .map(|v| 1.0 - (0.5 * PI * v).cos())
        .product();
    if i > 0 {
        r *= 1.0 - (0.5 * PI * x[m - 1 - i]).sin();
    }
    r
}

fn concave(x: &[f64], m: usize, i: usize) -> f64 {
    let mut r: f64 = x[..m - 1 - i]
        .iter()
        .map(|v| (0.5 * PI * v).sin())
        .product();
    if i > 0 {
        r *= (0.5 * PI * x[m - 1 - i]).cos();
    }
    r
}

fn disc(x0: f64) -> f64 {
    let c = (5.0 * PI * x0).cos();
    1.0 - x0 * c * c
}

/// Objective values from a reduced vector `t` (last entry is the distance).
pub(super) fn shape(which: u8, t: &[f64], m: usize) -> ObjectiveVector {
    let dist = t[m - 1];
    // With unit degeneracy constants the underlying position equals `t`.
    let x = &t[..m - 1];
    (0..m)
        .map(|i| {
            let h = match which {
                2 if i == m - 1 => disc(x[0]),
                2 => convex(x, m, i),
                _ => concave(x, m, i),
            };
            dist + 2.0 * (i + 1) as f64 * h
        })
        .collect()
}

pub(super) fn wfg(which: u8, z: &[f64], m: usize) -> ObjectiveVector {
    shape(which, &reduced(which, z, m), m)
}

/// Optimal decision vector: every position variable of group `i` takes the
/// value `position[i]`, distance variables sit at 0.35.
pub(super) fn optimal_decision(m: usize, position: &[f64]) -> Vec<f64> {
    let k = position_count(m);
    let size = k / (m - 1);
    (0..k + L)
        .map(|i| {
            let scale = 2.0 * (i + 1) as f64;
            let y = if i < k {
                position
                    .get(i / size)
                    .copied()
                    .unwrap_or(0.5)
                    .clamp(0.0, 1.0)
            } else {
                0.35
            };
            y * scale
        })
        .collect()
}
