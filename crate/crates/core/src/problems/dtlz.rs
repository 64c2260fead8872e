//! DTLZ1/2/5/7, the inverted, scaled and convex DTLZ variants, and F5–F8.

use std::f64::consts::PI;

use crate::pareto::ObjectiveVector;

/// Sum of squared deviations of the distance variables from 0.5.
fn g_sphere(tail: &[f64]) -> f64 {
    tail.iter().map(|v| (v - 0.5) * (v - 0.5)).sum()
}

fn g_rastrigin(tail: &[f64]) -> f64 {
    let k = tail.len() as f64;
    let s: f64 = tail
        .iter()
        .map(|v| (v - 0.5) * (v - 0.5) - (20.0 * PI * (v - 0.5)).cos())
        .sum();
    100.0 * (k + s)
}

/// Spherical objective map with the given angles (already in radians).
pub(super) fn sphere(theta: &[f64], g: f64, m: usize) -> ObjectiveVector {
    let mut f = vec![1.0 + g; m];
    for (i, fi) in f.iter_mut().enumerate() {
        for t in &theta[..m - 1 - i] {
            *fi *= t.cos();
        }
        if i > 0 {
            *fi *= theta[m - 1 - i].sin();
        }
    }
    f
}

fn linear(x: &[f64], g: f64, m: usize) -> ObjectiveVector {
    let mut f = vec![0.5 * (1.0 + g); m];
    for (i, fi) in f.iter_mut().enumerate() {
        for v in &x[..m - 1 - i] {
            *fi *= v;
        }
        if i > 0 {
            *fi *= 1.0 - x[m - 1 - i];
        }
    }
    f
}

fn angles(x: &[f64], m: usize) -> Vec<f64> {
    x[..m - 1].iter().map(|v| 0.5 * PI * v).collect()
}

pub(super) fn dtlz1(x: &[f64], m: usize) -> ObjectiveVector {
    linear(x, g_rastrigin(&x[m - 1..]), m)
}

pub(super) fn dtlz2(x: &[f64], m: usize) -> ObjectiveVector {
    sphere(&angles(x, m), g_sphere(&x[m - 1..]), m)
}

pub(super) fn dtlz5(x: &[f64], m: usize) -> ObjectiveVector {
    let g = g_sphere(&x[m - 1..]);
    let mut theta = Vec::with_capacity(m - 1);
    theta.push(0.5 * PI * x[0]);
    for v in &x[1..m - 1] {
        theta.push(PI / (4.0 * (1.0 + g)) * (1.0 + 2.0 * g * v));
    }
    sphere(&theta, g, m)
}

pub(super) fn dtlz7(x: &[f64], m: usize) -> ObjectiveVector {
    let tail = &x[m - 1..];
    let g = 1.0 + 9.0 * tail.iter().sum::<f64>() / tail.len() as f64;
    let mut f: Vec<f64> = x[..m - 1].to_vec();
    let h = m as f64
        - f.iter()
            .map(|fi| fi / (1.0 + g) * (1.0 + (3.0 * PI * fi).sin()))
            .sum::<f64>();
    f.push((1.0 + g) * h);
    f
}

pub(super) fn idtlz1(x: &[f64], m: usize) -> ObjectiveVector {
    let g = g_rastrigin(&x[m - 1..]);
    linear(x, g, m)
        .into_iter()
        .map(|fi| 0.5 * (1.0 + g) - fi)
        .collect()
}

pub(super) fn idtlz2(x: &[f64], m: usize) -> ObjectiveVector {
    let g = g_sphere(&x[m - 1..]);
    sphere(&angles(x, m), g, m)
        .into_iter()
        .map(|fi| (1.0 + g) - fi)
        .collect()
}

pub(super) fn sdtlz2(x: &[f64], m: usize) -> ObjectiveVector {
    let mut f = dtlz2(x, m);
    let mut scale = 1.0;
    for fi in f.iter_mut() {
        *fi *= scale;
        scale *= 2.0;
    }
    f
}

pub(super) fn cdtlz2(x: &[f64], m: usize) -> ObjectiveVector {
    let mut f = dtlz2(x, m);
    for fi in f[..m - 1].iter_mut() {
        *fi = fi.powi(4);
    }
    f[m - 1] = f[m - 1].powi(2);
    f
}

/// `|sin(pi/2 * k)|` for an integer `k`, evaluated exactly.
fn abs_sin_half_pi(k: f64) -> f64 {
    if k.rem_euclid(2.0) == 0.0 {
        0.0
    } else {
        1.0
    }
}

/// F5–F8.
pub(super) fn f_new(which: u8, x: &[f64], m: usize) -> ObjectiveVector {
    let head = &x[..m - 1];
    let tail = &x[m - 1..];
    match which {
        5 => {
            let gate: f64 = head
                .iter()
                .map(|v| abs_sin_half_pi((4.0 * v + 1.6).floor()))
                .product();
            sphere(&angles(x, m), g_sphere(tail) + gate, m)
        }
        6 => {
            let prod: f64 = head.iter().product();
            let gate: f64 = head.iter().map(|v| (2.0 * PI * v).sin().abs()).product();
            let g = prod.powf(0.1) * g_sphere(tail) + gate;
            sphere(&angles(x, m), g, m)
        }
        7 => {
            let prod: f64 = head.iter().product();
            let shifted: f64 = head.iter().map(|v| v - 2.0).product();
            let g = tail.iter().map(|v| (v - prod) * (v - prod)).sum::<f64>()
                + abs_sin_half_pi((4.0 * shifted).floor());
            sphere(&angles(x, m), g, m)
        }
        8 => {
            let n = x.len() as f64;
            let g: f64 = tail.iter().map(|v| ((v - x[0]) / n).powi(2)).sum();
            let s: f64 = x[..m].iter().sum();
            let mut f: Vec<f64> = head
                .iter()
                .map(|xi| 1.0 + g * ((1.0 + s) / xi - 1.0))
                .collect();
            f.push(s);
            f
        }
        _ => unreachable!("F{which} is not a DTLZ-style instance"),
    }
}
