//! Mean-IGD bands checked by `run --check`.

use area_core::variation::OperatorKind;
use serde::Serialize;

use crate::experiment::Algorithm;

/// Closed interval on the mean IGD; a missing side is unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Band {
    pub lo: Option<f64>,
    pub hi: Option<f64>,
}

impl Band {
    pub fn contains(&self, v: f64) -> bool {
        self.lo.is_none_or(|lo| v >= lo) && self.hi.is_none_or(|hi| v <= hi)
    }
}

impl std::fmt::Display for Band {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.lo, self.hi) {
            (Some(lo), Some(hi)) => write!(f, "[{lo}, {hi}]"),
            (None, Some(hi)) => write!(f, "<= {hi}"),
            (Some(lo), None) => write!(f, ">= {lo}"),
            (None, None) => f.write_str("unbounded"),
        }
    }
}

const fn within(lo: f64, hi: f64) -> Band {
    Band {
        lo: Some(lo),
        hi: Some(hi),
    }
}

const fn at_most(hi: f64) -> Band {
    Band {
        lo: None,
        hi: Some(hi),
    }
}

const fn at_least(lo: f64) -> Band {
    Band {
        lo: Some(lo),
        hi: None,
    }
}

/// The expected mean IGD over 30 default runs, where one is known.
pub fn band_for(
    algorithm: Algorithm,
    problem: &str,
    m: usize,
    operator: OperatorKind,
) -> Option<Band> {
    use Algorithm::*;
    use OperatorKind::*;
    let name = problem.to_ascii_uppercase();
    match (algorithm, name.as_str(), m, operator) {
        (Area, "DTLZ2", 3, SbxPm) => Some(within(0.042, 0.066)),
        (Area, "DTLZ5", 3, SbxPm) => Some(at_most(1.0e-2)),
        (Area, "DTLZ7", 3, SbxPm) => Some(at_most(0.12)),
        (Area, "F1", 2, SbxPm) => Some(at_most(1.0e-2)),
        (Area, "MOP1", 2, DePm) => Some(at_most(5.0e-2)),
        (Moead, "DTLZ2", 3, SbxPm) => Some(within(0.045, 0.060)),
        (Moead, "MOP1", 2, DePm) => Some(at_least(0.2)),
        _ => None,
    }
}
