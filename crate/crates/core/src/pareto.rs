//! Shared objective-space vocabulary: Pareto dominance, distances and
//! objective normalisation. Every objective is minimised.

use crate::error::{usage, Result};

/// A point in objective space (minimisation).
pub type ObjectiveVector = Vec<f64>;

/// A point in decision space.
pub type DecisionVector = Vec<f64>;

/// Denominators below this width are replaced by 1 during normalisation.
pub const DEGENERATE_WIDTH: f64 = 1e-12;

/// An evaluated candidate: decision vector together with its objectives.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub x: DecisionVector,
    pub f: ObjectiveVector,
}

impl Solution {
    pub fn new(x: DecisionVector, f: ObjectiveVector) -> Self {
        Self { x, f }
    }
}

/// A population member: an evaluated solution bound to a reference target.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub x: DecisionVector,
    pub f: ObjectiveVector,
    pub target: usize,
}

impl Individual {
    pub fn new(solution: Solution, target: usize) -> Self {
        Self {
            x: solution.x,
            f: solution.f,
            target,
        }
    }

    pub fn solution(&self) -> Solution {
        Solution::new(self.x.clone(), self.f.clone())
    }
}

fn check_len(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() != b.len() {
        return usage(format!(
            "objective vectors differ in length ({} vs {})",
            a.len(),
            b.len()
        ));
    }
    Ok(())
}

/// Returns `true` iff `a` is no worse than `b` everywhere and strictly
/// better somewhere.
pub fn dominates(a: &[f64], b: &[f64]) -> Result<bool> {
    check_len(a, b)?;
    Ok(dominates_unchecked(a, b))
}

#[inline]
pub(crate) fn dominates_unchecked(a: &[f64], b: &[f64]) -> bool {
    let mut strictly = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strictly = true;
        }
    }
    strictly
}

/// Indices of every point not dominated by any other point. Equal vectors
/// do not dominate each other, so duplicates are all kept.
pub fn nondominated_filter<P: AsRef<[f64]>>(points: &[P]) -> Result<Vec<usize>> {
    if points.is_empty() {
        return usage("nondominated_filter needs at least one point");
    }
    let m = points[0].as_ref().len();
    if points.iter().any(|p| p.as_ref().len() != m) {
        return usage("nondominated_filter: points differ in length");
    }
    Ok(nondominated_indices(points))
}

pub(crate) fn nondominated_indices<P: AsRef<[f64]>>(points: &[P]) -> Vec<usize> {
    // A dominator always precedes its victim lexicographically, and
    // dominance is transitive, so only kept points need to be checked.
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        let (a, b) = (points[a].as_ref(), points[b].as_ref());
        a.iter()
            .zip(b)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut kept: Vec<usize> = Vec::new();
    for i in order {
        let p = points[i].as_ref();
        if !kept
            .iter()
            .any(|&k| dominates_unchecked(points[k].as_ref(), p))
        {
            kept.push(i);
        }
    }
    kept.sort_unstable();
    kept
}

/// `max_j |a_j - b_j|`.
pub fn chebyshev_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    check_len(a, b)?;
    Ok(chebyshev(a, b))
}

/// `sqrt(sum_j (a_j - b_j)^2)`.
pub fn euclidean_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    check_len(a, b)?;
    Ok(euclidean(a, b))
}

#[inline]
pub(crate) fn chebyshev(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .fold(0.0_f64, |acc, (x, y)| acc.max((x - y).abs()))
}

#[inline]
pub(crate) fn squared_euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[inline]
pub(crate) fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    squared_euclidean(a, b).sqrt()
}

/// Ideal (componentwise best seen) and anti-ideal (componentwise worst of
/// the current population and offspring) points used for normalisation.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealPoints {
    pub lower: ObjectiveVector,
    pub upper: ObjectiveVector,
}

impl IdealPoints {
    /// Componentwise minimum and maximum of a non-empty set of vectors.
    pub fn from_points<P: AsRef<[f64]>>(points: &[P]) -> Result<Self> {
        let first = match points.first() {
            Some(p) => p.as_ref(),
            None => return usage("cannot derive ideal points from an empty set"),
        };
        let mut lower = first.to_vec();
        let mut upper = first.to_vec();
        for p in points {
            let p = p.as_ref();
            check_len(p, &lower)?;
            for j in 0..lower.len() {
                lower[j] = lower[j].min(p[j]);
                upper[j] = upper[j].max(p[j]);
            }
        }
        Ok(Self { lower, upper })
    }

    /// Lowers the ideal point wherever `f` improves on it.
    pub fn update_lower(&mut self, f: &[f64]) {
        for (z, v) in self.lower.iter_mut().zip(f) {
            if *v < *z {
                *z = *v;
            }
        }
    }

    /// Replaces the anti-ideal point by the componentwise maximum of `points`.
    pub fn reset_upper<'a, I>(&mut self, points: I)
    where
        I: IntoIterator<Item = &'a [f64]>,
    {
        let mut upper = vec![f64::NEG_INFINITY; self.lower.len()];
        for p in points {
            for (u, v) in upper.iter_mut().zip(p) {
                *u = u.max(*v);
            }
        }
        // keep z_l <= z_u even if the ideal came from a since-replaced member
        for (u, l) in upper.iter_mut().zip(&self.lower) {
            if *u < *l {
                *u = *l;
            }
        }
        self.upper = upper;
    }

    #[inline]
    fn width(&self, j: usize) -> f64 {
        let w = self.upper[j] - self.lower[j];
        if w < DEGENERATE_WIDTH {
            1.0
        } else {
            w
        }
    }

    /// `(f_j - z_l_j) / (z_u_j - z_l_j)` per component.
    pub fn normalize(&self, f: &[f64]) -> ObjectiveVector {
        f.iter()
            .enumerate()
            .map(|(j, v)| (v - self.lower[j]) / self.width(j))
            .collect()
    }

    /// Inverse of [`IdealPoints::normalize`].
    pub fn denormalize(&self, g: &[f64]) -> ObjectiveVector {
        g.iter()
            .enumerate()
            .map(|(j, v)| v * self.width(j) + self.lower[j])
            .collect()
    }
}

/// Free-function form of [`IdealPoints::normalize`].
pub fn normalize(f: &[f64], z: &IdealPoints) -> ObjectiveVector {
    z.normalize(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn dominance_examples() {
        assert!(dominates(&[1.0, 2.0], &[2.0, 3.0]).unwrap());
        assert!(!dominates(&[1.0, 2.0], &[2.0, 1.0]).unwrap());
        assert!(!dominates(&[1.0, 2.0], &[1.0, 2.0]).unwrap());
        assert!(matches!(
            dominates(&[1.0], &[1.0, 2.0]),
            Err(crate::Error::Usage(_))
        ));
    }

    #[test]
    fn filter_examples() {
        let pts = vec![vec![1.0, 2.0], vec![2.0, 1.0], vec![2.0, 2.0]];
        assert_eq!(nondominated_filter(&pts).unwrap(), vec![0, 1]);
        assert_eq!(nondominated_filter(&[vec![3.0, 3.0]]).unwrap(), vec![0]);
        let empty: Vec<Vec<f64>> = vec![];
        assert!(nondominated_filter(&empty).is_err());
        // duplicates are mutually nondominated
        let dup = vec![vec![1.0, 1.0], vec![1.0, 1.0], vec![2.0, 2.0]];
        assert_eq!(nondominated_filter(&dup).unwrap(), vec![0, 1]);
    }

    fn brute_force_front(pts: &[Vec<f64>]) -> Vec<usize> {
        (0..pts.len())
            .filter(|&i| {
                !(0..pts.len()).any(|j| {
                    let le = pts[j].iter().zip(&pts[i]).all(|(a, b)| a <= b);
                    let lt = pts[j].iter().zip(&pts[i]).any(|(a, b)| a < b);
                    le && lt
                })
            })
            .collect()
    }

    #[test]
    fn filter_matches_pairwise_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let pts: Vec<Vec<f64>> = (0..50)
                .map(|_| (0..3).map(|_| rng.gen::<f64>()).collect())
                .collect();
            assert_eq!(nondominated_filter(&pts).unwrap(), brute_force_front(&pts));
        }
    }

    #[test]
    fn normalize_examples() {
        let z = IdealPoints {
            lower: vec![0.0, 2.0],
            upper: vec![2.0, 4.0],
        };
        assert_eq!(z.normalize(&[1.0, 3.0]), vec![0.5, 0.5]);
        assert_eq!(z.normalize(&z.lower.clone()), vec![0.0, 0.0]);
        assert_eq!(z.normalize(&z.upper.clone()), vec![1.0, 1.0]);
    }

    #[test]
    fn degenerate_width_uses_unit_denominator() {
        let z = IdealPoints {
            lower: vec![1.0, 0.0],
            upper: vec![1.0, 2.0],
        };
        assert_eq!(z.normalize(&[3.0, 1.0]), vec![2.0, 0.5]);
    }

    #[test]
    fn distance_examples() {
        assert_eq!(chebyshev_distance(&[0.0, 0.0], &[3.0, 4.0]).unwrap(), 4.0);
        assert_eq!(euclidean_distance(&[0.0, 0.0], &[3.0, 4.0]).unwrap(), 5.0);
        assert_eq!(chebyshev_distance(&[1.5, 2.0], &[1.5, 2.0]).unwrap(), 0.0);
        assert_eq!(euclidean_distance(&[1.5, 2.0], &[1.5, 2.0]).unwrap(), 0.0);
        assert!(euclidean_distance(&[1.0], &[1.0, 2.0]).is_err());
        assert!(chebyshev_distance(&[1.0], &[1.0, 2.0]).is_err());
    }

    fn vec_pair() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
        (2usize..8).prop_flat_map(|m| {
            (
                prop::collection::vec(-10.0f64..10.0, m),
                prop::collection::vec(-10.0f64..10.0, m),
            )
        })
    }

    proptest! {
        #[test]
        fn norm_inequality((a, b) in vec_pair()) {
            let c = chebyshev(&a, &b);
            let e = euclidean(&a, &b);
            let m = a.len() as f64;
            prop_assert!(c <= e + 1e-12);
            prop_assert!(e <= m.sqrt() * c + 1e-12);
            prop_assert_eq!(euclidean(&a, &b), euclidean(&b, &a));
        }

        #[test]
        fn dominance_irreflexive_and_transitive(
            pts in prop::collection::vec(prop::collection::vec(0u8..4, 3), 3..12)
        ) {
            let pts: Vec<Vec<f64>> = pts.into_iter()
                .map(|p| p.into_iter().map(f64::from).collect()).collect();
            for a in &pts {
                prop_assert!(!dominates_unchecked(a, a));
                for b in &pts {
                    for c in &pts {
                        if dominates_unchecked(a, b) && dominates_unchecked(b, c) {
                            prop_assert!(dominates_unchecked(a, c));
                        }
                    }
                }
            }
        }

        #[test]
        fn filter_output_is_a_front(
            pts in prop::collection::vec(prop::collection::vec(0.0f64..1.0, 3), 1..40)
        ) {
            let keep = nondominated_filter(&pts).unwrap();
            for &i in &keep {
                for &j in &keep {
                    prop_assert!(!dominates_unchecked(&pts[i], &pts[j]));
                }
            }
            for i in 0..pts.len() {
                if !keep.contains(&i) {
                    prop_assert!(keep.iter().any(|&k| dominates_unchecked(&pts[k], &pts[i])));
                }
            }
        }

        #[test]
        fn normalize_round_trip(
            (lo, f) in vec_pair(),
            widths in prop::collection::vec(0.1f64..5.0, 8)
        ) {
            let upper: Vec<f64> = lo.iter().zip(&widths).map(|(l, w)| l + w).collect();
            let z = IdealPoints { lower: lo.clone(), upper };
            let back = z.denormalize(&z.normalize(&f));
            for (a, b) in back.iter().zip(&f) {
                prop_assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0));
            }
        }
    }
}
