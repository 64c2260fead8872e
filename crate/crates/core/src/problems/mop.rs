//! MOP1–MOP7 and the irregular-front instances F1–F4.

use std::f64::consts::PI;

use crate::pareto::ObjectiveVector;

fn offsets(x: &[f64], start: usize, target: f64) -> impl Iterator<Item = f64> + '_ {
    x[start..].iter().map(move |v| v - target)
}

fn rugged(t: impl Iterator<Item = f64>) -> f64 {
    t.map(|t| -0.9 * t * t + t.abs().powf(0.6)).sum()
}

fn plateau(t: impl Iterator<Item = f64>) -> f64 {
    t.map(|t| t.abs() / (1.0 + (5.0 * t.abs()).exp())).sum()
}

pub(super) fn mop(which: u8, x: &[f64]) -> ObjectiveVector {
    let x1 = x[0];
    let link = (0.5 * PI * x1).sin();
    match which {
        1 => {
            let g = 2.0 * (PI * x1).sin() * rugged(offsets(x, 1, link));
            vec![(1.0 + g) * x1, (1.0 + g) * (1.0 - x1.sqrt())]
        }
        2 => {
            let g = 10.0 * (PI * x1).sin() * plateau(offsets(x, 1, link));
            vec![(1.0 + g) * x1, (1.0 + g) * (1.0 - x1 * x1)]
        }
        3 => {
            let g = 10.0 * (0.5 * PI * x1).sin() * plateau(offsets(x, 1, link));
            vec![
                (1.0 + g) * (0.5 * PI * x1).cos(),
                (1.0 + g) * (0.5 * PI * x1).sin(),
            ]
        }
        4 => {
            let g = 10.0 * (PI * x1).sin() * plateau(offsets(x, 1, link));
            let c = (2.0 * PI * x1).cos();
            vec![(1.0 + g) * x1, (1.0 + g) * (1.0 - x1.sqrt() * c * c)]
        }
        5 => {
            let g = 2.0 * (PI * x1).cos().abs() * rugged(offsets(x, 1, link));
            vec![(1.0 + g) * x1, (1.0 + g) * (1.0 - x1.sqrt())]
        }
        6 | 7 => {
            let x2 = x[1];
            let g = 2.0 * (PI * x1).sin() * rugged(offsets(x, 2, x1 * x2));
            if which == 6 {
                vec![
                    (1.0 + g) * x1 * x2,
                    (1.0 + g) * x1 * (1.0 - x2),
                    (1.0 + g) * (1.0 - x1),
                ]
            } else {
                let (a, b) = (0.5 * PI * x1, 0.5 * PI * x2);
                vec![
                    (1.0 + g) * a.cos() * b.cos(),
                    (1.0 + g) * a.cos() * b.sin(),
                    (1.0 + g) * a.sin(),
                ]
            }
        }
        _ => unreachable!("MOP{which} is not registered"),
    }
}

/// F1–F4: bi-objective instances with irregular fronts sharing the distance
/// function `g = sum_{i>=2} (x_i - 0.5)^2`.
pub(super) fn f_irregular(which: u8, x: &[f64]) -> ObjectiveVector {
    let x1 = x[0];
    let g: f64 = offsets(x, 1, 0.5).map(|t| t * t).sum();
    let theta = 0.5 * PI * x1;
    let (f1, f2) = match which {
        1 => (theta.cos().powi(4), theta.sin().powi(4)),
        2 => {
            let c = (3.0 * PI * x1).cos();
            (x1, 1.0 - x1.sqrt() * c * c)
        }
        3 => (
            theta.cos().powi(4),
            theta.sin().powi(4) * (1.0 + (4.0 * theta).sin().abs()),
        ),
        4 => (x1, 1.0 - x1 - 0.1 * (3.0 * PI * x1).sin()),
        _ => unreachable!("F{which} is not an irregular-front instance"),
    };
    vec![(1.0 + g) * f1, (1.0 + g) * f2]
}
