//! Benchmark problem definitions: evaluation, box bounds and true-front
//! sampling for every instance of the experimental study.
//!
//! DTLZ-derived problems (including the F5–F8 instances) use `n = M + 9`
//! variables, MOP and F1–F4 use `n = 10`, UF uses `n = 30` and WFG uses
//! `k = 2(M-1)` position and `l = 20` distance parameters.

mod dtlz;
mod fronts;
mod mop;
mod uf;
mod wfg;

use std::fmt;
use std::str::FromStr;

use crate::error::{config, usage, Error, Result};
use crate::pareto::ObjectiveVector;

pub use fronts::{
    data_dir, front_file_name, generate_reference_front, read_front_file, write_front_file,
    DATA_DIR_ENV,
};

/// The benchmark families in the registry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Dtlz1,
    Dtlz2,
    Dtlz5,
    Dtlz7,
    Idtlz1,
    Idtlz2,
    Sdtlz2,
    Cdtlz2,
    /// MOP1..MOP7.
    Mop(u8),
    /// UF1..UF9.
    Uf(u8),
    /// WFG2, WFG4 and WFG6.
    Wfg(u8),
    /// F1..F8.
    F(u8),
}

impl Family {
    pub const ALL: [Family; 35] = [
        Family::Dtlz1,
        Family::Dtlz2,
        Family::Dtlz5,
        Family::Dtlz7,
        Family::Idtlz1,
        Family::Idtlz2,
        Family::Sdtlz2,
        Family::Cdtlz2,
        Family::Mop(1),
        Family::Mop(2),
        Family::Mop(3),
        Family::Mop(4),
        Family::Mop(5),
        Family::Mop(6),
        Family::Mop(7),
        Family::Uf(1),
        Family::Uf(2),
        Family::Uf(3),
        Family::Uf(4),
        Family::Uf(5),
        Family::Uf(6),
        Family::Uf(7),
        Family::Uf(8),
        Family::Uf(9),
        Family::Wfg(2),
        Family::Wfg(4),
        Family::Wfg(6),
        Family::F(1),
        Family::F(2),
        Family::F(3),
        Family::F(4),
        Family::F(5),
        Family::F(6),
        Family::F(7),
        Family::F(8),
    ];

    /// Objective counts accepted for this family. `None` means any `M >= 2`.
    pub fn supported_objectives(self) -> Option<&'static [usize]> {
        match self {
            Family::Dtlz1
            | Family::Dtlz2
            | Family::Dtlz5
            | Family::Dtlz7
            | Family::Idtlz1
            | Family::Idtlz2
            | Family::Sdtlz2
            | Family::Cdtlz2 => None,
            Family::Mop(1..=5) | Family::Uf(1..=7) | Family::F(1..=4) => Some(&[2]),
            Family::Mop(_) | Family::Uf(_) | Family::F(_) => Some(&[3]),
            Family::Wfg(_) => Some(&[3, 8, 15]),
        }
    }

    /// The usual objective count for this family in the experimental study.
    pub fn default_objectives(self) -> usize {
        match self.supported_objectives() {
            Some(ms) => ms[0],
            None => 3,
        }
    }

    /// Whether the true front is sampled analytically (otherwise a bundled
    /// reference-front file is read).
    pub fn has_analytic_front(self) -> bool {
        self.supported_objectives().is_none()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Dtlz1 => write!(f, "DTLZ1"),
            Family::Dtlz2 => write!(f, "DTLZ2"),
            Family::Dtlz5 => write!(f, "DTLZ5"),
            Family::Dtlz7 => write!(f, "DTLZ7"),
            Family::Idtlz1 => write!(f, "IDTLZ1"),
            Family::Idtlz2 => write!(f, "IDTLZ2"),
            Family::Sdtlz2 => write!(f, "SDTLZ2"),
            Family::Cdtlz2 => write!(f, "CDTLZ2"),
            Family::Mop(i) => write!(f, "MOP{i}"),
            Family::Uf(i) => write!(f, "UF{i}"),
            Family::Wfg(i) => write!(f, "WFG{i}"),
            Family::F(i) => write!(f, "F{i}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        let fixed = match upper.as_str() {
            "DTLZ1" => Some(Family::Dtlz1),
            "DTLZ2" => Some(Family::Dtlz2),
            "DTLZ5" => Some(Family::Dtlz5),
            "DTLZ7" => Some(Family::Dtlz7),
            "IDTLZ1" => Some(Family::Idtlz1),
            "IDTLZ2" => Some(Family::Idtlz2),
            "SDTLZ2" => Some(Family::Sdtlz2),
            "CDTLZ2" => Some(Family::Cdtlz2),
            _ => None,
        };
        if let Some(family) = fixed {
            return Ok(family);
        }
        let numbered = |prefix: &str| -> Option<u8> {
            upper
                .strip_prefix(prefix)
                .and_then(|d| d.parse::<u8>().ok())
        };
        let family = if let Some(i) = numbered("MOP") {
            (1..=7).contains(&i).then_some(Family::Mop(i))
        } else if let Some(i) = numbered("UF") {
            (1..=9).contains(&i).then_some(Family::Uf(i))
        } else if let Some(i) = numbered("WFG") {
            matches!(i, 2 | 4 | 6).then_some(Family::Wfg(i))
        } else if let Some(i) = numbered("F") {
            (1..=8).contains(&i).then_some(Family::F(i))
        } else {
            None
        };
        family.ok_or_else(|| Error::Config(format!("unknown problem '{s}'")))
    }
}

/// A fully configured benchmark instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    family: Family,
    objectives: usize,
    bounds: Vec<(f64, f64)>,
}

/// Builds a problem from its registry name and objective count.
pub fn make_problem(name: &str, objectives: usize) -> Result<Problem> {
    Problem::new(name.parse()?, objectives)
}

impl Problem {
    pub fn new(family: Family, objectives: usize) -> Result<Self> {
        let valid = match family.supported_objectives() {
            Some(ms) => ms.contains(&objectives),
            None => objectives >= 2,
        };
        if !valid {
            return config(format!(
                "{family} does not support M = {objectives} (supported: {})",
                match family.supported_objectives() {
                    Some(ms) => format!("{ms:?}"),
                    None => "M >= 2".to_string(),
                }
            ));
        }
        let m = objectives;
        let bounds = match family {
            Family::Mop(_) | Family::F(1..=4) => vec![(0.0, 1.0); 10],
            Family::F(8) => vec![(1.0, 4.0); m + 9],
            Family::Uf(i) => uf::bounds(i),
            Family::Wfg(_) => wfg::bounds(m),
            _ => vec![(0.0, 1.0); m + 9],
        };
        Ok(Self {
            family,
            objectives,
            bounds,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn name(&self) -> String {
        self.family.to_string()
    }

    /// Number of objectives `M`.
    pub fn objectives(&self) -> usize {
        self.objectives
    }

    /// Number of decision variables `n`.
    pub fn variables(&self) -> usize {
        self.bounds.len()
    }

    /// Per-variable `[low, high]` box.
    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    /// Evaluates `x`, rejecting vectors of the wrong length or outside the box.
    pub fn evaluate(&self, x: &[f64]) -> Result<ObjectiveVector> {
        if x.len() != self.variables() {
            return usage(format!(
                "{} expects {} variables, got {}",
                self.name(),
                self.variables(),
                x.len()
            ));
        }
        for (i, (v, (lo, hi))) in x.iter().zip(&self.bounds).enumerate() {
            if !(lo <= v && v <= hi) {
                return usage(format!(
                    "{}: x[{i}] = {v} lies outside [{lo}, {hi}]",
                    self.name()
                ));
            }
        }
        Ok(self.evaluate_unchecked(x))
    }

    /// Evaluation without the bounds check, for operator output that is
    /// already repaired into the box.
    pub(crate) fn evaluate_unchecked(&self, x: &[f64]) -> ObjectiveVector {
        let m = self.objectives;
        match self.family {
            Family::Dtlz1 => dtlz::dtlz1(x, m),
            Family::Dtlz2 => dtlz::dtlz2(x, m),
            Family::Dtlz5 => dtlz::dtlz5(x, m),
            Family::Dtlz7 => dtlz::dtlz7(x, m),
            Family::Idtlz1 => dtlz::idtlz1(x, m),
            Family::Idtlz2 => dtlz::idtlz2(x, m),
            Family::Sdtlz2 => dtlz::sdtlz2(x, m),
            Family::Cdtlz2 => dtlz::cdtlz2(x, m),
            Family::F(i @ 5..=8) => dtlz::f_new(i, x, m),
            Family::F(i) => mop::f_irregular(i, x),
            Family::Mop(i) => mop::mop(i, x),
            Family::Uf(i) => uf::uf(i, x),
            Family::Wfg(i) => wfg::wfg(i, x, m),
        }
    }

    /// A decision vector on the Pareto-optimal manifold for the given
    /// position parameters (each in `[0, 1]`). Some families only map part
    /// of the position space onto the front (the rest is dominated); the
    /// caller filters with [`nondominated_filter`](crate::pareto::nondominated_filter).
    pub fn optimal_decision(&self, position: &[f64]) -> Vec<f64> {
        let m = self.objectives;
        let n = self.variables();
        let mut x = vec![0.0; n];
        let pos = |i: usize| position.get(i).copied().unwrap_or(0.5).clamp(0.0, 1.0);
        match self.family {
            Family::F(1..=4) => {
                x[0] = pos(0);
                x[1..].fill(0.5);
            }
            Family::Mop(1..=5) => {
                x[0] = pos(0);
                let target = (0.5 * std::f64::consts::PI * x[0]).sin();
                x[1..].fill(target);
            }
            Family::Mop(_) => {
                x[0] = pos(0);
                x[1] = pos(1);
                let p = x[0] * x[1];
                for v in x.iter_mut().skip(2) {
                    *v = p;
                }
            }
            Family::Uf(i) => return uf::optimal_decision(i, position),
            Family::Wfg(_) => return wfg::optimal_decision(m, position),
            Family::F(8) => {
                for (i, v) in x.iter_mut().enumerate().take(m - 1) {
                    *v = 1.0 + 3.0 * pos(i);
                }
                let x1 = x[0];
                for v in x.iter_mut().skip(m - 1) {
                    *v = x1;
                }
            }
            Family::F(7) => {
                let mut p = 1.0;
                for (i, v) in x.iter_mut().enumerate().take(m - 1) {
                    *v = pos(i);
                    p *= *v;
                }
                for v in x.iter_mut().skip(m - 1) {
                    *v = p;
                }
            }
            Family::Dtlz7 => {
                for (i, v) in x.iter_mut().enumerate().take(m - 1) {
                    *v = pos(i);
                }
            }
            _ => {
                for (i, v) in x.iter_mut().enumerate() {
                    *v = if i < m - 1 { pos(i) } else { 0.5 };
                }
            }
        }
        x
    }

    /// Roughly `count` points on the true Pareto front.
    ///
    /// Analytic for the DTLZ family and its inverted, scaled and convex
    /// variants; read from the bundled `<problem>_<M>d.pf` file otherwise.
    pub fn pf_sample(&self, count: usize) -> Result<Vec<ObjectiveVector>> {
        if self.family.has_analytic_front() {
            Ok(fronts::analytic_front(self, count))
        } else {
            let path = data_dir().join(front_file_name(self));
            read_front_file(&path)
        }
    }
}

/// Box bounds of a problem.
pub fn bounds(p: &Problem) -> &[(f64, f64)] {
    p.bounds()
}

/// Evaluates `x` on `p`.
pub fn evaluate(p: &Problem, x: &[f64]) -> Result<ObjectiveVector> {
    p.evaluate(x)
}
