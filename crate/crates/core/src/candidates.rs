//! Candidate radii and canonical disk centers.
//!
//! In an optimal clustering some disk has three points on its boundary or
//! two points at opposite ends of a diameter, so the optimal radius is a
//! circumradius or a half pair distance. For a fixed radius, each disk can be
//! slid to a canonical position (two points on the boundary, or one point at
//! its top) without losing any covered point. Both sets are polynomial in n.

use std::collections::HashSet;

use thiserror::Error;

use crate::geometry::{center_below_point, centers_through_pair, circumdisk, Disk, Point, Tolerance};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CandidateError {
    #[error("cannot enumerate candidates of an empty point set")]
    Empty,
}

/// Sorted, deduplicated candidate radii.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiusList(Vec<f64>);

impl RadiusList {
    /// Sorts `radii` and merges values within `eps * max(1, r)` of the
    /// previous kept value.
    pub fn from_unsorted(mut radii: Vec<f64>, tol: Tolerance) -> Self {
        radii.sort_by(f64::total_cmp);
        let mut kept: Vec<f64> = Vec::with_capacity(radii.len());
        for r in radii {
            match kept.last() {
                Some(&last) if (r - last).abs() <= tol.eps * last.max(1.0) => {}
                _ => kept.push(r),
            }
        }
        RadiusList(kept)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        self.0.iter().copied()
    }

    /// Whether some member is within `eps * max(1, r)` of `r`.
    pub fn contains(&self, r: f64, tol: Tolerance) -> bool {
        let slack = tol.eps * r.abs().max(1.0);
        let i = self.0.partition_point(|&x| x < r - slack);
        self.0.get(i).is_some_and(|&x| (x - r).abs() <= slack)
    }
}

/// `k` disk centers sharing one radius.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateSolution {
    pub centers: Vec<Point>,
    pub radius: f64,
}

impl CandidateSolution {
    pub fn disks(&self) -> Vec<Disk> {
        self.centers.iter().map(|&c| Disk::new(c, self.radius)).collect()
    }

    /// True when every point lies in at least one disk.
    pub fn covers_all(&self, points: &[Point], tol: Tolerance) -> bool {
        points.iter().all(|&p| self.centers.iter().any(|&c| tol.le(c.dist(p), self.radius)))
    }
}

/// Circumradii of all non-collinear triples and half-distances of all pairs.
/// A single point yields `[0]`.
pub fn candidate_radii(points: &[Point], tol: Tolerance) -> Result<RadiusList, CandidateError> {
    if points.is_empty() {
        return Err(CandidateError::Empty);
    }
    let n = points.len();
    let mut radii = Vec::new();
    if n == 1 {
        radii.push(0.0);
    }
    for i in 0..n {
        for j in i + 1..n {
            radii.push(points[i].dist(points[j]) / 2.0);
            for l in j + 1..n {
                if let Ok(d) = circumdisk(points[i], points[j], points[l], tol) {
                    radii.push(d.radius);
                }
            }
        }
    }
    Ok(RadiusList::from_unsorted(radii, tol))
}

/// Canonical centers for radius `r`: every center of a radius-`r` circle
/// through two points, and the center below each point. Duplicates are
/// removed by snapping to an `eps` grid; first occurrence wins.
pub fn candidate_centers(points: &[Point], r: f64, tol: Tolerance) -> Vec<Point> {
    let n = points.len();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut push = |c: Point| {
        if seen.insert(grid_key(c, tol)) {
            out.push(c);
        }
    };
    for i in 0..n {
        for j in i + 1..n {
            for c in centers_through_pair(points[i], points[j], r, tol) {
                push(c);
            }
        }
    }
    for &p in points {
        push(center_below_point(p, r));
    }
    out
}

fn grid_key(p: Point, tol: Tolerance) -> (i64, i64) {
    let cell = if tol.eps > 0.0 { tol.eps } else { f64::EPSILON };
    // `as` saturates, which is fine for coordinates far beyond any sane scale.
    ((p.x / cell).round() as i64, (p.y / cell).round() as i64)
}

/// Lexicographic stream of index combinations, optionally with repetition
/// (non-decreasing instead of strictly increasing index vectors).
#[derive(Debug, Clone)]
pub struct IndexCombinations {
    m: usize,
    idx: Vec<usize>,
    repeat: bool,
    done: bool,
}

impl IndexCombinations {
    pub fn new(m: usize, k: usize, repeat: bool) -> Self {
        let done = if repeat { m == 0 && k > 0 } else { k > m };
        let idx = if repeat { vec![0; k] } else { (0..k).collect() };
        IndexCombinations { m, idx, repeat, done }
    }

    /// Current combination; valid until the next call to `advance`.
    pub fn current(&self) -> Option<&[usize]> {
        (!self.done).then_some(self.idx.as_slice())
    }

    pub fn advance(&mut self) {
        if self.done {
            return;
        }
        let k = self.idx.len();
        for pos in (0..k).rev() {
            let limit = if self.repeat { self.m - 1 } else { self.m - k + pos };
            if self.idx[pos] < limit {
                self.idx[pos] += 1;
                for q in pos + 1..k {
                    self.idx[q] = if self.repeat { self.idx[pos] } else { self.idx[q - 1] + 1 };
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for IndexCombinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current()?.to_vec();
        self.advance();
        Some(out)
    }
}

/// Every size-`k` subset of `items` exactly once, in lexicographic index
/// order. Empty when `items.len() < k`.
pub fn k_subsets<T: Copy>(items: &[T], k: usize) -> impl Iterator<Item = Vec<T>> + '_ {
    IndexCombinations::new(items.len(), k, false).map(move |ix| ix.iter().map(|&i| items[i]).collect())
}

/// Every size-`k` multiset over `items`, in lexicographic index order.
pub fn k_multisets<T: Copy>(items: &[T], k: usize) -> impl Iterator<Item = Vec<T>> + '_ {
    IndexCombinations::new(items.len(), k, true).map(move |ix| ix.iter().map(|&i| items[i]).collect())
}

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) is exact at every step.
        match acc.checked_mul(n - i) {
            Some(v) => acc = v / (i + 1),
            None => return u128::MAX,
        }
    }
    acc
}

/// Number of size-`k` multisets over `m` items.
pub fn multiset_count(m: usize, k: usize) -> u128 {
    if m == 0 {
        return u128::from(k == 0);
    }
    binomial((m + k - 1) as u128, k as u128)
}

/// The `rank`-th multiset (0-based, lexicographic) of size `k` over `m`
/// items; the inverse of the enumeration order of [`IndexCombinations`].
pub fn unrank_multiset(m: usize, k: usize, mut rank: u128) -> Vec<usize> {
    assert!(rank < multiset_count(m, k), "rank out of range");
    let mut out = Vec::with_capacity(k);
    let mut lo = 0;
    for pos in 0..k {
        let left = k - pos - 1;
        let mut v = lo;
        loop {
            // Multisets with this position fixed at v: remaining `left`
            // slots drawn from [v, m).
            let block = multiset_count(m - v, left);
            if rank < block {
                break;
            }
            rank -= block;
            v += 1;
        }
        out.push(v);
        lo = v;
    }
    out
}
