//! Bounded nondominated archive with nearest-neighbour density truncation.

use std::cmp::Ordering;

use crate::pareto::{euclidean, nondominated_indices, ObjectiveVector, Solution, DEGENERATE_WIDTH};

/// Iteratively deletes the point whose ascending list of distances to the
/// remaining points is lexicographically smallest, until `target` points
/// are left. Returns the kept indices in ascending order. Full ties remove
/// the lowest index first.
pub fn spea2_truncate<P: AsRef<[f64]>>(points: &[P], target: usize) -> Vec<usize> {
    let n = points.len();
    if target >= n {
        return (0..n).collect();
    }
    let mut dist = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let d = euclidean(points[i].as_ref(), points[j].as_ref());
            dist[i * n + j] = d;
            dist[j * n + i] = d;
        }
    }
    let neighbours: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let mut order: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            order.sort_by(|&a, &b| dist[i * n + a].total_cmp(&dist[i * n + b]).then(a.cmp(&b)));
            order
        })
        .collect();
    let mut alive = vec![true; n];
    let mut head = vec![0usize; n];

    // Lexicographic comparison of the alive-neighbour distance lists of a and b.
    let compare = |a: usize, b: usize, alive: &[bool], head: &[usize]| -> Ordering {
        let (la, lb) = (&neighbours[a], &neighbours[b]);
        let (mut ia, mut ib) = (head[a], head[b]);
        loop {
            while ia < la.len() && !alive[la[ia]] {
                ia += 1;
            }
            while ib < lb.len() && !alive[lb[ib]] {
                ib += 1;
            }
            if ia >= la.len() || ib >= lb.len() {
                return Ordering::Equal;
            }
            let o = dist[a * n + la[ia]].total_cmp(&dist[b * n + lb[ib]]);
            if o.is_ne() {
                return o;
            }
            ia += 1;
            ib += 1;
        }
    };

    for _ in 0..n - target {
        for i in 0..n {
            if alive[i] {
                let list = &neighbours[i];
                while head[i] < list.len() && !alive[list[head[i]]] {
                    head[i] += 1;
                }
            }
        }
        let mut worst: Option<usize> = None;
        for i in (0..n).filter(|&i| alive[i]) {
            worst = match worst {
                Some(w) if compare(i, w, &alive, &head) != Ordering::Less => Some(w),
                _ => Some(i),
            };
        }
        if let Some(w) = worst {
            alive[w] = false;
        }
    }
    (0..n).filter(|&i| alive[i]).collect()
}

/// Rescales every objective to `[0, 1]` by the range of `points` itself.
pub(crate) fn range_normalized<P: AsRef<[f64]>>(points: &[P]) -> Vec<ObjectiveVector> {
    let Some(first) = points.first() else {
        return Vec::new();
    };
    let m = first.as_ref().len();
    let mut lo = vec![f64::INFINITY; m];
    let mut hi = vec![f64::NEG_INFINITY; m];
    for p in points {
        for (j, v) in p.as_ref().iter().enumerate() {
            lo[j] = lo[j].min(*v);
            hi[j] = hi[j].max(*v);
        }
    }
    points
        .iter()
        .map(|p| {
            p.as_ref()
                .iter()
                .enumerate()
                .map(|(j, v)| {
                    let w = hi[j] - lo[j];
                    (v - lo[j]) / if w < DEGENERATE_WIDTH { 1.0 } else { w }
                })
                .collect()
        })
        .collect()
}

/// Truncation on objectives rescaled by the set's own range, so that
/// differently scaled objectives weigh equally in the density estimate.
pub(crate) fn truncate_normalized<P: AsRef<[f64]>>(points: &[P], target: usize) -> Vec<usize> {
    if target >= points.len() {
        return (0..points.len()).collect();
    }
    spea2_truncate(&range_normalized(points), target)
}

/// A mutually nondominated set of solutions bounded by `capacity`.
#[derive(Debug, Clone, PartialEq)]
pub struct Archive {
    members: Vec<Solution>,
    capacity: usize,
}

impl Archive {
    pub fn new(capacity: usize) -> Self {
        Self {
            members: Vec::new(),
            capacity: capacity.max(1),
        }
    }

    /// An archive holding the nondominated members of `candidates`.
    pub fn from_solutions(capacity: usize, candidates: &[Solution]) -> Self {
        let mut archive = Self::new(capacity);
        archive.update(candidates.iter());
        archive
    }

    pub fn members(&self) -> &[Solution] {
        &self.members
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn objectives(&self) -> Vec<ObjectiveVector> {
        self.members.iter().map(|s| s.f.clone()).collect()
    }

    /// Merges `incoming` into the archive: keeps the nondominated members
    /// of the union (one copy per objective vector), then truncates to
    /// capacity.
    pub fn update<'a, I>(&mut self, incoming: I)
    where
        I: IntoIterator<Item = &'a Solution>,
    {
        let mut pool: Vec<Solution> = std::mem::take(&mut self.members);
        for s in incoming {
            if !pool.iter().any(|p| p.f == s.f) {
                pool.push(s.clone());
            }
        }
        let keep = nondominated_indices(&pool.iter().map(|s| s.f.as_slice()).collect::<Vec<_>>());
        let mut front: Vec<Solution> = Vec::with_capacity(keep.len());
        let mut slots: Vec<Option<Solution>> = pool.into_iter().map(Some).collect();
        for i in keep {
            if let Some(s) = slots[i].take() {
                front.push(s);
            }
        }
        if front.len() > self.capacity {
            let fs: Vec<&[f64]> = front.iter().map(|s| s.f.as_slice()).collect();
            let kept = truncate_normalized(&fs, self.capacity);
            let mut slots: Vec<Option<Solution>> = front.into_iter().map(Some).collect();
            front = kept.into_iter().filter_map(|i| slots[i].take()).collect();
        }
        self.members = front;
    }

    /// Objective vectors used for performance assessment: the archive,
    /// truncated to `n` members when larger.
    pub fn assess(&self, n: usize) -> Vec<ObjectiveVector> {
        assess(&self.objectives(), n)
    }
}

/// `A <- nondominated(A ∪ P ∪ Q)`, truncated to capacity.
pub fn update_archive(archive: &mut Archive, population: &[Solution], offspring: &[Solution]) {
    archive.update(population.iter().chain(offspring));
}

/// Truncates `front` to at most `n` points for metric computation.
pub fn assess(front: &[ObjectiveVector], n: usize) -> Vec<ObjectiveVector> {
    truncate_normalized(front, n)
        .into_iter()
        .map(|i| front[i].clone())
        .collect()
}
