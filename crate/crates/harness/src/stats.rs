//! Summary statistics and the two-sided Wilcoxon rank-sum test.

use std::fmt;

use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use crate::error::{HarnessError, Result};

/// Significance level of the rank-sum verdicts.
pub const ALPHA: f64 = 0.05;

/// Largest sample size for which tie-free samples use the exact null
/// distribution instead of the normal approximation.
pub const EXACT_LIMIT: usize = 8;

/// Outcome of comparing `xs` against `ys` on an indicator to be minimised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    /// `xs` is significantly smaller.
    #[serde(rename = "+")]
    Better,
    /// `xs` is significantly larger.
    #[serde(rename = "-")]
    Worse,
    /// No significant difference.
    #[serde(rename = "≈")]
    Similar,
}

impl Verdict {
    pub fn flipped(self) -> Self {
        match self {
            Verdict::Better => Verdict::Worse,
            Verdict::Worse => Verdict::Better,
            Verdict::Similar => Verdict::Similar,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Better => "+",
            Verdict::Worse => "-",
            Verdict::Similar => "≈",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankSum {
    /// Mann-Whitney statistic of `xs`.
    pub u: f64,
    pub p_value: f64,
    pub exact: bool,
    pub verdict: Verdict,
}

fn check_sample(name: &str, v: &[f64]) -> Result<()> {
    if v.len() < 2 {
        return Err(HarnessError::Usage(format!(
            "{name} needs at least 2 values, got {}",
            v.len()
        )));
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(HarnessError::Usage(format!(
            "{name} contains a non-finite value"
        )));
    }
    Ok(())
}

/// Midranks (1-based) of `values` and the tie sizes.
fn midranks(values: &[f64]) -> (Vec<f64>, Vec<usize>) {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut ties = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && values[order[j]] == values[order[i]] {
            j += 1;
        }
        let rank = (i + j + 1) as f64 / 2.0;
        for &k in &order[i..j] {
            ranks[k] = rank;
        }
        if j - i > 1 {
            ties.push(j - i);
        }
        i = j;
    }
    (ranks, ties)
}

/// Number of rank assignments giving each value of `U` for sample sizes
/// `n1`, `n2` without ties.
fn u_counts(n1: usize, n2: usize) -> Vec<f64> {
    // f(a, b, u) = f(a - 1, b, u - b) + f(a, b - 1, u)
    let max_u = n1 * n2;
    let mut prev: Vec<Vec<f64>> = (0..=n2)
        .map(|_| {
            let mut v = vec![0.0; max_u + 1];
            v[0] = 1.0;
            v
        })
        .collect();
    for _ in 0..n1 {
        let mut cur: Vec<Vec<f64>> = vec![vec![0.0; max_u + 1]; n2 + 1];
        cur[0][0] = 1.0;
        for b in 1..=n2 {
            for u in 0..=max_u {
                let from_a = if u >= b { prev[b][u - b] } else { 0.0 };
                cur[b][u] = from_a + cur[b - 1][u];
            }
        }
        prev = cur;
    }
    prev.swap_remove(n2)
}

fn median(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len();
    if n % 2 == 1 {
        s[n / 2]
    } else {
        0.5 * (s[n / 2 - 1] + s[n / 2])
    }
}

/// Two-sided Wilcoxon rank-sum (Mann-Whitney U) test.
///
/// Tie-free samples of at most [`EXACT_LIMIT`] values use the exact null
/// distribution; otherwise the normal approximation with tie and continuity
/// corrections. The verdict follows the sign of the median difference,
/// falling back to the rank-sum direction when the medians coincide.
pub fn rank_sum_test(xs: &[f64], ys: &[f64]) -> Result<RankSum> {
    check_sample("xs", xs)?;
    check_sample("ys", ys)?;
    let (n1, n2) = (xs.len(), ys.len());
    let pooled: Vec<f64> = xs.iter().chain(ys).copied().collect();
    let (ranks, ties) = midranks(&pooled);
    let r1: f64 = ranks[..n1].iter().sum();
    let u = r1 - (n1 * (n1 + 1)) as f64 / 2.0;
    let mu = (n1 * n2) as f64 / 2.0;

    if pooled.iter().all(|&v| v == pooled[0]) {
        return Ok(RankSum {
            u,
            p_value: 1.0,
            exact: false,
            verdict: Verdict::Similar,
        });
    }

    let exact = ties.is_empty() && n1.max(n2) <= EXACT_LIMIT;
    let p_value = if exact {
        let counts = u_counts(n1, n2);
        let total: f64 = counts.iter().sum();
        let k = u.round() as usize;
        let lower: f64 = counts[..=k].iter().sum::<f64>() / total;
        let upper: f64 = counts[k..].iter().sum::<f64>() / total;
        (2.0 * lower.min(upper)).min(1.0)
    } else {
        let n = (n1 + n2) as f64;
        let tie_term: f64 =
            ties.iter().map(|&t| (t * t * t - t) as f64).sum::<f64>() / (n * (n - 1.0));
        let var = (n1 * n2) as f64 / 12.0 * ((n + 1.0) - tie_term);
        let z = ((u - mu).abs() - 0.5).max(0.0) / var.sqrt();
        erfc(z / std::f64::consts::SQRT_2).min(1.0)
    };

    let verdict = if p_value >= ALPHA {
        Verdict::Similar
    } else {
        let diff = median(xs) - median(ys);
        let lower = if diff != 0.0 { diff < 0.0 } else { u < mu };
        if lower {
            Verdict::Better
        } else {
            Verdict::Worse
        }
    };
    Ok(RankSum {
        u,
        p_value,
        exact,
        verdict,
    })
}

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Sample standard deviation with the `n - 1` denominator.
pub fn std_dev(values: &[f64]) -> Result<f64> {
    if values.len() < 2 {
        return Err(HarnessError::Usage(format!(
            "standard deviation needs at least 2 values, got {}",
            values.len()
        )));
    }
    let m = mean(values);
    let ss: f64 = values.iter().map(|v| (v - m) * (v - m)).sum();
    Ok((ss / (values.len() - 1) as f64).sqrt())
}

/// Standard error of the mean: sample standard deviation over `sqrt(n)`.
pub fn sem(values: &[f64]) -> Result<f64> {
    Ok(std_dev(values)? / (values.len() as f64).sqrt())
}

/// Mean, spread and range of one indicator over the runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub mean: f64,
    /// `None` for a single run.
    pub std: Option<f64>,
    pub sem: Option<f64>,
    pub median: f64,
    pub min: f64,
    pub max: f64,
}

impl Summary {
    pub fn of(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(HarnessError::Usage(
                "cannot summarise an empty sample".into(),
            ));
        }
        Ok(Self {
            mean: mean(values),
            std: std_dev(values).ok(),
            sem: sem(values).ok(),
            median: median(values),
            min: values.iter().copied().fold(f64::INFINITY, f64::min),
            max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        })
    }
}

/// Rank-sum comparison of one indicator between two experiments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub metric: String,
    pub against: String,
    pub p_value: f64,
    pub verdict: Verdict,
}

/// Aggregate statistics of one experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsReport {
    pub runs: usize,
    pub igd: Summary,
    pub hv: Summary,
    pub spacing: Summary,
    #[serde(default)]
    pub comparisons: Vec<Comparison>,
}
