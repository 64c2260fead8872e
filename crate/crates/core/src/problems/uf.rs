//! The UF1–UF9 unconstrained instances (30 variables).

use std::f64::consts::PI;

use crate::pareto::ObjectiveVector;

pub(super) const N: usize = 30;

pub(super) fn bounds(which: u8) -> Vec<(f64, f64)> {
    let (lead, rest) = match which {
        3 => (1, (0.0, 1.0)),
        4 => (1, (-2.0, 2.0)),
        8 | 9 => (2, (-2.0, 2.0)),
        _ => (1, (-1.0, 1.0)),
    };
    (0..N)
        .map(|i| if i < lead { (0.0, 1.0) } else { rest })
        .collect()
}

/// Position of the optimal value of variable `j` (1-based) given `x1`, `x2`.
fn optimal_value(which: u8, j: usize, x1: f64, x2: f64) -> f64 {
    let n = N as f64;
    let jf = j as f64;
    match which {
        1 | 4 | 5 | 6 | 7 => (6.0 * PI * x1 + jf * PI / n).sin(),
        2 => {
            let amp = 0.3 * x1 * x1 * (24.0 * PI * x1 + 4.0 * jf * PI / n).cos() + 0.6 * x1;
            let phase = 6.0 * PI * x1 + jf * PI / n;
            if j % 2 == 1 {
                amp * phase.cos()
            } else {
                amp * phase.sin()
            }
        }
        3 => x1.powf(0.5 * (1.0 + 3.0 * (jf - 2.0) / (n - 2.0))),
        8 | 9 => 2.0 * x2 * (2.0 * PI * x1 + jf * PI / n).sin(),
        _ => unreachable!("UF{which} is not registered"),
    }
}

/// Per-group accumulators over the linkage residuals `y_j`.
struct Groups {
    sum: [f64; 3],
    prod: [f64; 3],
    count: [f64; 3],
}

fn residuals(which: u8, x: &[f64], groups: usize, transform: impl Fn(f64) -> f64) -> Groups {
    let lead = if groups == 3 { 2 } else { 1 };
    let (x1, x2) = (x[0], if lead == 2 { x[1] } else { 0.0 });
    let mut acc = Groups {
        sum: [0.0; 3],
        prod: [1.0; 3],
        count: [0.0; 3],
    };
    for j in lead + 1..=N {
        let y = x[j - 1] - optimal_value(which, j, x1, x2);
        let k = if groups == 3 {
            (j + 2) % 3
        } else {
            (j + 1) % 2
        };
        acc.sum[k] += transform(y);
        acc.prod[k] *= (20.0 * y * PI / (j as f64).sqrt()).cos();
        acc.count[k] += 1.0;
    }
    acc
}

pub(super) fn uf(which: u8, x: &[f64]) -> ObjectiveVector {
    let x1 = x[0];
    match which {
        1 | 2 => {
            let r = residuals(which, x, 2, |y| y * y);
            vec![
                x1 + 2.0 * r.sum[0] / r.count[0],
                1.0 - x1.sqrt() + 2.0 * r.sum[1] / r.count[1],
            ]
        }
        3 => {
            let r = residuals(which, x, 2, |y| y * y);
            let term = |k: usize| 2.0 / r.count[k] * (4.0 * r.sum[k] - 2.0 * r.prod[k] + 2.0);
            vec![x1 + term(0), 1.0 - x1.sqrt() + term(1)]
        }
        4 => {
            let r = residuals(which, x, 2, |y| y.abs() / (1.0 + (2.0 * y.abs()).exp()));
            vec![
                x1 + 2.0 * r.sum[0] / r.count[0],
                1.0 - x1 * x1 + 2.0 * r.sum[1] / r.count[1],
            ]
        }
        5 => {
            let (nn, eps) = (10.0, 0.1);
            let r = residuals(which, x, 2, |y| 2.0 * y * y - (4.0 * PI * y).cos() + 1.0);
            let hh = (0.5 / nn + eps) * (2.0 * nn * PI * x1).sin().abs();
            vec![
                x1 + hh + 2.0 * r.sum[0] / r.count[0],
                1.0 - x1 + hh + 2.0 * r.sum[1] / r.count[1],
            ]
        }
        6 => {
            let (nn, eps) = (2.0, 0.1);
            let r = residuals(which, x, 2, |y| y * y);
            let hh = (2.0 * (0.5 / nn + eps) * (2.0 * nn * PI * x1).sin()).max(0.0);
            let term = |k: usize| 2.0 / r.count[k] * (4.0 * r.sum[k] - 2.0 * r.prod[k] + 2.0);
            vec![x1 + hh + term(0), 1.0 - x1 + hh + term(1)]
        }
        7 => {
            let r = residuals(which, x, 2, |y| y * y);
            let a = x1.powf(0.2);
            vec![
                a + 2.0 * r.sum[0] / r.count[0],
                1.0 - a + 2.0 * r.sum[1] / r.count[1],
            ]
        }
        8 => {
            let r = residuals(which, x, 3, |y| y * y);
            let (a, b) = (0.5 * PI * x1, 0.5 * PI * x[1]);
            vec![
                a.cos() * b.cos() + 2.0 * r.sum[0] / r.count[0],
                a.cos() * b.sin() + 2.0 * r.sum[1] / r.count[1],
                a.sin() + 2.0 * r.sum[2] / r.count[2],
            ]
        }
        9 => {
            let eps = 0.1;
            let r = residuals(which, x, 3, |y| y * y);
            let x2 = x[1];
            let bump = ((1.0 + eps) * (1.0 - 4.0 * (2.0 * x1 - 1.0).powi(2))).max(0.0);
            vec![
                0.5 * (bump + 2.0 * x1) * x2 + 2.0 * r.sum[0] / r.count[0],
                0.5 * (bump - 2.0 * x1 + 2.0) * x2 + 2.0 * r.sum[1] / r.count[1],
                1.0 - x2 + 2.0 * r.sum[2] / r.count[2],
            ]
        }
        _ => unreachable!("UF{which} is not registered"),
    }
}

pub(super) fn optimal_decision(which: u8, position: &[f64]) -> Vec<f64> {
    let p = |i: usize| position.get(i).copied().unwrap_or(0.5).clamp(0.0, 1.0);
    let (x1, x2) = (p(0), p(1));
    let lead = if which >= 8 { 2 } else { 1 };
    let mut x = vec![0.0; N];
    x[0] = x1;
    if lead == 2 {
        x[1] = x2;
    }
    for j in lead + 1..=N {
        x[j - 1] = optimal_value(which, j, x1, x2);
    }
    x
}
