//! Reference-plane geometry: simplex lattices shifted onto the plane
//! `sum f = 0`, neighbourhood tables, the ζ promise score, and the two
//! reference-set maintenance procedures (evolving update and matching to
//! the fixed initial set).

use rand::Rng;

use crate::area::archive::truncate_normalized;
use crate::error::{Error, Result};
use crate::pareto::{
    chebyshev, squared_euclidean, IdealPoints, Individual, ObjectiveVector, Solution,
};

/// All weight vectors with components in `{0, 1/H, ..., 1}` summing to one.
pub fn simplex_lattice(m: usize, h: usize) -> Vec<Vec<f64>> {
    fn recurse(m: usize, h: usize, left: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<f64>>) {
        if prefix.len() == m - 1 {
            prefix.push(left);
            out.push(prefix.iter().map(|&c| c as f64 / h as f64).collect());
            prefix.pop();
            return;
        }
        for c in 0..=left {
            prefix.push(c);
            recurse(m, h, left - c, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if m == 0 || h == 0 {
        return out;
    }
    recurse(m, h, h, &mut Vec::with_capacity(m), &mut out);
    out
}

/// `C(h + m - 1, m - 1)`, saturating.
pub fn lattice_size(m: usize, h: usize) -> usize {
    let k = m - 1;
    let mut c: u128 = 1;
    for i in 1..=k as u128 {
        c = c * (h as u128 + i) / i;
        if c > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    c as usize
}

/// Exactly `n` weight vectors: the largest lattice with at most `n` points,
/// topped up from an inner lattice shrunk halfway towards the centroid.
pub fn lattice_weights(m: usize, n: usize) -> Vec<Vec<f64>> {
    if n == 0 {
        return Vec::new();
    }
    let mut h = 1;
    while lattice_size(m, h + 1) <= n {
        h += 1;
    }
    let mut weights = if lattice_size(m, h) <= n {
        simplex_lattice(m, h)
    } else {
        Vec::new()
    };
    let need = n - weights.len();
    if need > 0 {
        let mut h2 = 1;
        while lattice_size(m, h2) < need {
            h2 += 1;
        }
        let inner = simplex_lattice(m, h2);
        let centre = 1.0 / m as f64;
        let stride = inner.len() as f64 / need as f64;
        for k in 0..need {
            let w = &inner[(k as f64 * stride).floor() as usize];
            weights.push(w.iter().map(|v| 0.5 * v + 0.5 * centre).collect());
        }
    }
    weights
}

/// Shifts a unit-simplex weight vector onto the plane: `w_j - 1/M`.
pub fn shift_to_plane(w: &[f64]) -> Vec<f64> {
    let c = 1.0 / w.len() as f64;
    w.iter().map(|v| v - c).collect()
}

/// Orthogonal projection onto the plane `sum f = 0`.
pub fn project_to_plane(f: &[f64]) -> Vec<f64> {
    let mean = f.iter().sum::<f64>() / f.len() as f64;
    f.iter().map(|v| v - mean).collect()
}

/// For each point, the `t` Euclidean-nearest point indices, nearest first.
/// A point is its own first neighbour; equal distances break by index.
pub fn build_neighbourhood(points: &[Vec<f64>], t: usize) -> Vec<Vec<usize>> {
    let n = points.len();
    let t = t.min(n);
    (0..n)
        .map(|i| {
            let d: Vec<f64> = points
                .iter()
                .map(|p| squared_euclidean(&points[i], p))
                .collect();
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| {
                d[a].total_cmp(&d[b])
                    .then_with(|| (b == i).cmp(&(a == i)))
                    .then(a.cmp(&b))
            });
            order.truncate(t);
            order
        })
        .collect()
}

/// Reference points on the plane together with their neighbourhood table.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceSet {
    pub points: Vec<Vec<f64>>,
    pub neighbours: Vec<Vec<usize>>,
}

impl ReferenceSet {
    pub fn from_points(points: Vec<Vec<f64>>, t: usize) -> Self {
        let neighbours = build_neighbourhood(&points, t);
        Self { points, neighbours }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// The shifted lattice of `n` points for `m` objectives with `t`-neighbourhoods.
pub fn initial_reference_set(m: usize, n: usize, t: usize) -> ReferenceSet {
    let points = lattice_weights(m, n)
        .iter()
        .map(|w| shift_to_plane(w))
        .collect();
    ReferenceSet::from_points(points, t)
}

/// Checks that targets form a bijection onto `0..refs`.
fn check_bijection(population: &[Individual], refs: usize) -> Result<()> {
    if population.len() != refs {
        return Err(Error::Internal(format!(
            "{} individuals for {refs} reference points",
            population.len()
        )));
    }
    let mut seen = vec![false; refs];
    for ind in population {
        if ind.target >= refs || std::mem::replace(&mut seen[ind.target], true) {
            return Err(Error::Internal(format!(
                "reference target {} is out of range or shared",
                ind.target
            )));
        }
    }
    Ok(())
}

/// `ζ(r_i)`: how many references are Chebyshev-closer to the (normalised)
/// solution targeting `r_i` than `r_i` itself.
pub fn zeta_scores(
    refs: &ReferenceSet,
    population: &[Individual],
    z: &IdealPoints,
) -> Result<Vec<usize>> {
    check_bijection(population, refs.len())?;
    let mut owner = vec![0; refs.len()];
    for (k, ind) in population.iter().enumerate() {
        owner[ind.target] = k;
    }
    let normalised: Vec<ObjectiveVector> = population.iter().map(|p| z.normalize(&p.f)).collect();
    Ok((0..refs.len())
        .map(|i| zeta_of(&normalised[owner[i]], i, &refs.points))
        .collect())
}

fn zeta_of(x: &[f64], own: usize, refs: &[Vec<f64>]) -> usize {
    let d_own = chebyshev(x, &refs[own]);
    refs.iter().filter(|r| chebyshev(x, r) < d_own).count()
}

/// Number of references exchanged per evolving update.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KRule {
    /// `ceil(sqrt(N))`.
    Sqrt,
    /// `ceil(fraction * N)`.
    Fraction(f64),
}

impl KRule {
    pub fn count(self, n: usize) -> usize {
        match self {
            KRule::Sqrt => (n as f64).sqrt().ceil() as usize,
            KRule::Fraction(f) => (f * n as f64).ceil().max(0.0) as usize,
        }
    }
}

/// Evolving update of the reference set.
///
/// Adds the `k` archive members furthest (max-min Euclidean distance) from
/// the population, together with their plane projections; then removes
/// references with the highest positive ζ score; then, if still too many,
/// truncates the population by nearest-neighbour density. The result holds
/// exactly `n` pairs, individual `i` targeting reference `i`.
///
/// `population` must be in target order (individual `i` targets `refs[i]`).
#[allow(clippy::too_many_arguments)]
pub fn update_reference_set<R: Rng + ?Sized>(
    population: &[Individual],
    archive: &[Solution],
    refs: &ReferenceSet,
    n: usize,
    t: usize,
    k: usize,
    z: &IdealPoints,
    rng: &mut R,
) -> Result<(ReferenceSet, Vec<Individual>)> {
    check_bijection(population, refs.len())?;
    if archive.is_empty() {
        log::debug!("reference update skipped: archive is empty");
        return Ok((refs.clone(), population.to_vec()));
    }
    let mut sols: Vec<Solution> = vec![Solution::new(Vec::new(), Vec::new()); refs.len()];
    for ind in population {
        sols[ind.target] = ind.solution();
    }
    let mut points = refs.points.clone();
    let mut normalised: Vec<ObjectiveVector> = sols.iter().map(|s| z.normalize(&s.f)).collect();
    let archive_norm: Vec<ObjectiveVector> = archive.iter().map(|s| z.normalize(&s.f)).collect();

    // addition: max-min distance to the (growing) population
    let mut nearest: Vec<f64> = archive_norm
        .iter()
        .map(|a| {
            normalised
                .iter()
                .map(|p| squared_euclidean(a, p))
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    for _ in 0..k.min(archive.len()) {
        let mut best = 0;
        for i in 1..nearest.len() {
            if nearest[i] > nearest[best] {
                best = i;
            }
        }
        let chosen = archive_norm[best].clone();
        for (d, a) in nearest.iter_mut().zip(&archive_norm) {
            *d = d.min(squared_euclidean(a, &chosen));
        }
        points.push(project_to_plane(&chosen));
        sols.push(archive[best].clone());
        normalised.push(chosen);
    }

    // removal by ζ score
    let total = points.len();
    let mut alive = vec![true; total];
    let mut zeta: Vec<usize> = (0..total)
        .map(|i| zeta_of(&normalised[i], i, &points))
        .collect();
    let mut count = total;
    while count > n {
        let top = (0..total)
            .filter(|&i| alive[i])
            .map(|i| zeta[i])
            .max()
            .unwrap_or(0);
        if top == 0 {
            break;
        }
        let ties: Vec<usize> = (0..total).filter(|&i| alive[i] && zeta[i] == top).collect();
        let gone = ties[rng.gen_range(0..ties.len())];
        alive[gone] = false;
        count -= 1;
        for i in (0..total).filter(|&i| alive[i]) {
            if chebyshev(&normalised[i], &points[gone]) < chebyshev(&normalised[i], &points[i]) {
                zeta[i] -= 1;
            }
        }
    }
    let mut survivors: Vec<usize> = (0..total).filter(|&i| alive[i]).collect();

    // density truncation of what is left
    if survivors.len() > n {
        let objs: Vec<&[f64]> = survivors
            .iter()
            .map(|&i| normalised[i].as_slice())
            .collect();
        let kept = truncate_normalized(&objs, n);
        survivors = kept.into_iter().map(|j| survivors[j]).collect();
    }

    let new_points: Vec<Vec<f64>> = survivors.iter().map(|&i| points[i].clone()).collect();
    let new_pop: Vec<Individual> = survivors
        .iter()
        .enumerate()
        .map(|(target, &i)| Individual::new(sols[i].clone(), target))
        .collect();
    Ok((ReferenceSet::from_points(new_points, t), new_pop))
}

/// Re-associates the union of population and archive with the fixed
/// reference set.
///
/// In rounds, every unassigned solution nominates its nearest free
/// reference; each nominated reference then takes its nearest nominator.
/// Runs until every reference is bound. Candidates with identical
/// objectives are pooled once and only duplicated to make up a shortfall. The result
/// is in target order.
pub fn match_population(
    population: &[Individual],
    archive: &[Solution],
    refs: &ReferenceSet,
    z: &IdealPoints,
) -> Result<Vec<Individual>> {
    let n = refs.len();
    let mut pool: Vec<Solution> = Vec::with_capacity(population.len() + archive.len());
    let mut spare: Vec<Solution> = Vec::new();
    for s in population
        .iter()
        .map(|p| p.solution())
        .chain(archive.iter().cloned())
    {
        if pool.iter().any(|q| q.f == s.f) {
            spare.push(s);
        } else {
            pool.push(s);
        }
    }
    // duplicates only make up a shortfall
    let short = n.saturating_sub(pool.len());
    pool.extend(spare.into_iter().take(short));
    if pool.len() < n {
        return Err(Error::Internal(format!(
            "cannot match {} candidates to {n} reference points",
            pool.len()
        )));
    }
    let s = pool.len();
    let normalised: Vec<ObjectiveVector> = pool.iter().map(|p| z.normalize(&p.f)).collect();
    let mut dist = vec![0.0; n * s];
    for i in 0..n {
        for j in 0..s {
            dist[i * s + j] = squared_euclidean(&refs.points[i], &normalised[j]);
        }
    }
    let mut ref_free = vec![true; n];
    let mut sol_free = vec![true; s];
    let mut bound: Vec<Option<usize>> = vec![None; n];
    let mut assigned = 0;
    while assigned < n {
        // each nominated reference takes its closest nominator
        let mut pick: Vec<Option<usize>> = vec![None; n];
        for j in (0..s).filter(|&j| sol_free[j]) {
            let mut best: Option<usize> = None;
            for i in (0..n).filter(|&i| ref_free[i]) {
                if best.is_none_or(|b| dist[i * s + j] < dist[b * s + j]) {
                    best = Some(i);
                }
            }
            if let Some(i) = best {
                if pick[i].is_none_or(|k| dist[i * s + j] < dist[i * s + k]) {
                    pick[i] = Some(j);
                }
            }
        }
        for (i, j) in pick.into_iter().enumerate() {
            let Some(j) = j else { continue };
            bound[i] = Some(j);
            ref_free[i] = false;
            sol_free[j] = false;
            assigned += 1;
        }
    }
    Ok(bound
        .into_iter()
        .enumerate()
        .map(|(i, j)| Individual::new(pool[j.expect("every reference is bound")].clone(), i))
        .collect())
}
