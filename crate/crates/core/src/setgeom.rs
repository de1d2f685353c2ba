//! Compact subsets of the real line given as finite unions of disjoint
//! closed intervals, plus the nested prefractal approximants of Cantor-type
//! sets.

use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance used when merging endpoints during normalization.
pub const MERGE_TOL: f64 = 1e-12;

/// A compact set E = [a_1,b_1] u ... u [a_m,b_m] with
/// a_1 <= b_1 < a_2 <= b_2 < ... and every b_j - a_j > 0.
///
/// Immutable after construction; cheap to clone and safe to share.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntervalUnion {
    intervals: Vec<(f64, f64)>,
}

impl IntervalUnion {
    /// Sort, merge overlapping or touching intervals, and validate.
    ///
    /// Touching intervals ([0,1], [1,2]) merge: a shared endpoint of closed
    /// intervals is not a gap. Endpoint comparisons absorb construction
    /// noise up to [`MERGE_TOL`]. Degenerate single points are rejected.
    pub fn normalize(raw: &[(f64, f64)]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptySet);
        }
        for &(a, b) in raw {
            if !(a.is_finite() && b.is_finite()) || a > b {
                return Err(Error::MalformedInterval { a, b });
            }
        }
        let mut sorted = raw.to_vec();
        sorted.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(sorted.len());
        for (a, b) in sorted {
            match merged.last_mut() {
                Some(last) if a <= last.1 + MERGE_TOL => {
                    last.1 = last.1.max(b);
                }
                _ => merged.push((a, b)),
            }
        }
        for &(a, b) in &merged {
            if b - a <= MERGE_TOL {
                return Err(Error::MalformedInterval { a, b });
            }
        }
        Ok(IntervalUnion { intervals: merged })
    }

    /// A single interval [a, b].
    pub fn interval(a: f64, b: f64) -> Result<Self> {
        Self::normalize(&[(a, b)])
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn num_intervals(&self) -> usize {
        self.intervals.len()
    }

    /// The open gaps (b_j, a_{j+1}) between consecutive intervals.
    pub fn gaps(&self) -> Vec<(f64, f64)> {
        self.intervals
            .windows(2)
            .map(|w| (w[0].1, w[1].0))
            .collect()
    }

    /// Convex hull [a_1, b_m].
    pub fn hull(&self) -> (f64, f64) {
        (self.intervals[0].0, self.intervals[self.intervals.len() - 1].1)
    }

    /// Total length: sum of b_j - a_j.
    pub fn lebesgue(&self) -> f64 {
        self.intervals.iter().map(|&(a, b)| b - a).sum()
    }

    /// Affine image x -> lambda * x + t with lambda > 0.
    pub fn scale_translate(&self, lambda: f64, t: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() || !t.is_finite() {
            return Err(Error::BadScale(lambda));
        }
        Ok(IntervalUnion {
            intervals: self
                .intervals
                .iter()
                .map(|&(a, b)| (lambda * a + t, lambda * b + t))
                .collect(),
        })
    }

    /// Whether x lies in the set, with absolute tolerance `tol`.
    pub fn contains(&self, x: f64, tol: f64) -> bool {
        self.intervals.iter().any(|&(a, b)| x >= a - tol && x <= b + tol)
    }

    /// Whether every interval of self is contained in an interval of other
    /// (tolerance [`MERGE_TOL`] on the endpoints).
    pub fn is_subset_of(&self, other: &IntervalUnion) -> bool {
        self.intervals.iter().all(|&(a, b)| {
            other
                .intervals
                .iter()
                .any(|&(c, d)| a >= c - MERGE_TOL && b <= d + MERGE_TOL)
        })
    }

    /// Distance from a real point to the set (0 when inside).
    pub fn distance(&self, x: f64) -> f64 {
        self.intervals
            .iter()
            .map(|&(a, b)| {
                if x < a {
                    a - x
                } else if x > b {
                    x - b
                } else {
                    0.0
                }
            })
            .fold(f64::INFINITY, f64::min)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("interval union serializes")
    }
}

impl<'de> Deserialize<'de> for IntervalUnion {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            intervals: Vec<(f64, f64)>,
        }
        let raw = Raw::deserialize(deserializer)?;
        IntervalUnion::normalize(&raw.intervals).map_err(serde::de::Error::custom)
    }
}

/// Level-n prefractal of the two-branch Cantor construction on [0,1]:
/// 2^n intervals of length ratio^n, each level nested inside the previous.
/// ratio = 1/3 gives the middle-thirds set.
pub fn cantor_approximant(level: u32, ratio: f64) -> Result<IntervalUnion> {
    if !(ratio > 0.0 && ratio < 0.5) {
        return Err(Error::BadRatio(ratio));
    }
    if level > 20 {
        return Err(Error::Unsupported(format!(
            "cantor level {level} exceeds the 2^20 interval cap"
        )));
    }
    let mut intervals = vec![(0.0f64, 1.0f64)];
    for _ in 0..level {
        let mut next = Vec::with_capacity(intervals.len() * 2);
        for (a, b) in intervals {
            let len = b - a;
            next.push((a, a + ratio * len));
            next.push((b - ratio * len, b));
        }
        intervals = next;
    }
    Ok(IntervalUnion { intervals })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn normalize_identity() {
        let e = IntervalUnion::normalize(&[(0.0, 1.0)]).unwrap();
        assert_eq!(e.intervals(), &[(0.0, 1.0)]);
    }

    #[test]
    fn normalize_merges_overlaps() {
        let e = IntervalUnion::normalize(&[(2.0, 3.0), (0.0, 1.0), (0.5, 2.2)]).unwrap();
        assert_eq!(e.intervals(), &[(0.0, 3.0)]);
    }

    #[test]
    fn normalize_merges_touching() {
        let e = IntervalUnion::normalize(&[(-2.0, 0.0), (0.0, 2.0)]).unwrap();
        assert_eq!(e.intervals(), &[(-2.0, 2.0)]);
    }

    #[test]
    fn normalize_rejects_empty_and_malformed() {
        assert!(matches!(
            IntervalUnion::normalize(&[]),
            Err(Error::EmptySet)
        ));
        assert!(matches!(
            IntervalUnion::normalize(&[(1.0, 0.0)]),
            Err(Error::MalformedInterval { .. })
        ));
        // degenerate point
        assert!(IntervalUnion::normalize(&[(1.0, 1.0)]).is_err());
    }

    #[test]
    fn lebesgue_values() {
        assert_abs_diff_eq!(
            IntervalUnion::interval(0.0, 1.0).unwrap().lebesgue(),
            1.0
        );
        assert_abs_diff_eq!(
            IntervalUnion::interval(-2.0, 2.0).unwrap().lebesgue(),
            4.0
        );
        let e = IntervalUnion::normalize(&[(0.0, 1.0 / 3.0), (2.0 / 3.0, 1.0)]).unwrap();
        assert_abs_diff_eq!(e.lebesgue(), 2.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn scale_translate_examples() {
        let e = IntervalUnion::interval(0.0, 1.0).unwrap();
        let f = e.scale_translate(4.0, -2.0).unwrap();
        assert_eq!(f.intervals(), &[(-2.0, 2.0)]);
        let g = IntervalUnion::interval(-1.0, 1.0).unwrap();
        assert_eq!(g.scale_translate(1.0, 0.0).unwrap(), g);
        let h = IntervalUnion::normalize(&[(0.0, 1.0), (2.0, 3.0)]).unwrap();
        let hi = h.scale_translate(2.0, 1.0).unwrap();
        assert_eq!(hi.intervals(), &[(1.0, 3.0), (5.0, 7.0)]);
        assert!(matches!(h.scale_translate(0.0, 0.0), Err(Error::BadScale(_))));
    }

    #[test]
    fn cantor_levels() {
        assert_eq!(
            cantor_approximant(0, 1.0 / 3.0).unwrap().intervals(),
            &[(0.0, 1.0)]
        );
        let l1 = cantor_approximant(1, 1.0 / 3.0).unwrap();
        assert_eq!(l1.num_intervals(), 2);
        assert_abs_diff_eq!(l1.intervals()[0].1, 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(l1.intervals()[1].0, 2.0 / 3.0, epsilon = 1e-15);
        let l2 = cantor_approximant(2, 1.0 / 3.0).unwrap();
        let expect = [
            (0.0, 1.0 / 9.0),
            (2.0 / 9.0, 1.0 / 3.0),
            (2.0 / 3.0, 7.0 / 9.0),
            (8.0 / 9.0, 1.0),
        ];
        for (got, want) in l2.intervals().iter().zip(expect.iter()) {
            assert_abs_diff_eq!(got.0, want.0, epsilon = 1e-15);
            assert_abs_diff_eq!(got.1, want.1, epsilon = 1e-15);
        }
        assert!(matches!(
            cantor_approximant(1, 0.5),
            Err(Error::BadRatio(_))
        ));
    }

    #[test]
    fn cantor_nesting_and_length() {
        for level in 0..8u32 {
            let coarse = cantor_approximant(level, 1.0 / 3.0).unwrap();
            let fine = cantor_approximant(level + 1, 1.0 / 3.0).unwrap();
            assert!(fine.is_subset_of(&coarse));
            assert_abs_diff_eq!(
                fine.lebesgue(),
                (2.0f64 / 3.0).powi(level as i32 + 1),
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn json_round_trip() {
        let e = IntervalUnion::normalize(&[(0.0, 1.0), (2.0, 3.5)]).unwrap();
        let s = e.to_json();
        assert_eq!(s, r#"{"intervals":[[0.0,1.0],[2.0,3.5]]}"#);
        let back: IntervalUnion = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
    }
}
