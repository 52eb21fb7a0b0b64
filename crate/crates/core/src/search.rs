//! Radius-level search over candidate disk sets.
//!
//! A level is one candidate radius together with every size-`k` multiset of
//! its canonical centers. Feasibility is monotone in the radius (growing the
//! disks at fixed centers only adds coverage and flow arcs), so the smallest
//! feasible level can be found by binary search as well as by a linear scan.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use thiserror::Error;

use crate::candidates::{candidate_centers, candidate_radii, CandidateSolution, IndexCombinations, RadiusList};
use crate::geometry::{Point, Tolerance};
use crate::instance::{Clustering, InstanceError};

/// How radius levels are visited.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScanMode {
    /// Ascending scan over every level until the first feasible one.
    Full,
    /// Binary search for the smallest feasible level.
    #[default]
    Binary,
}

/// Which feasible candidate is reported at the optimal level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Witness {
    /// The first feasible candidate in enumeration order, also when parallel.
    #[default]
    Deterministic,
    /// Whichever feasible candidate a worker finds first. Only differs from
    /// `Deterministic` when running in parallel; the radius is the same.
    Any,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SolverConfig {
    pub tol: Tolerance,
    pub scan: ScanMode,
    pub parallel: bool,
    pub witness: Witness,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Number of distinct radius levels.
    pub radius_levels: usize,
    /// Levels whose candidate sets were enumerated.
    pub levels_probed: usize,
    /// Candidate disk sets examined.
    pub candidates_evaluated: u64,
    /// Examined candidates whose disks covered every point.
    pub covering_candidates: u64,
}

/// Result of a solver run. `clustering` is `None` for an infeasible verdict;
/// `exact` is false for heuristic runs, whose verdicts prove nothing.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub clustering: Option<Clustering>,
    pub exact: bool,
    pub stats: SearchStats,
}

impl SolveReport {
    pub fn radius(&self) -> Option<f64> {
        self.clustering.as_ref().map(|c| c.radius)
    }

    pub fn is_feasible(&self) -> bool {
        self.clustering.is_some()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("oracle budget exceeded: {k}^{n} assignments exceeds {budget}")]
    BudgetExceeded { k: usize, n: usize, budget: u64 },
}

/// Verdict of checking one candidate disk set.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum CheckOutcome {
    Uncovered,
    Infeasible,
    Feasible(Vec<usize>),
}

pub(crate) trait CandidateCheck: Sync {
    fn check(&self, sol: &CandidateSolution) -> CheckOutcome;
}

/// Candidate radii plus zero.
///
/// Zero is needed when every cluster is a single point or a group of
/// coincident points that no pair of distinct points can witness, e.g. when
/// `n <= k`.
pub fn radius_levels(points: &[Point], tol: Tolerance) -> RadiusList {
    let mut radii = candidate_radii(points, tol).map(|r| r.as_slice().to_vec()).unwrap_or_default();
    radii.push(0.0);
    RadiusList::from_unsorted(radii, tol)
}

const PARALLEL_CHUNK: usize = 4096;

#[derive(Default)]
struct Counters {
    evaluated: AtomicU64,
    covering: AtomicU64,
}

pub(crate) struct Search<'a, C> {
    points: &'a [Point],
    k: usize,
    cfg: SolverConfig,
    checker: &'a C,
    levels: RadiusList,
    counters: Counters,
    probed: usize,
}

impl<'a, C: CandidateCheck> Search<'a, C> {
    pub(crate) fn new(points: &'a [Point], k: usize, cfg: SolverConfig, checker: &'a C) -> Self {
        Search {
            points,
            k,
            cfg,
            checker,
            levels: radius_levels(points, cfg.tol),
            counters: Counters::default(),
            probed: 0,
        }
    }

    pub(crate) fn run(mut self) -> (Option<(CandidateSolution, Vec<usize>)>, SearchStats) {
        let best = match self.cfg.scan {
            ScanMode::Full => self.linear(),
            ScanMode::Binary => self.binary(),
        };
        let stats = SearchStats {
            radius_levels: self.levels.len(),
            levels_probed: self.probed,
            candidates_evaluated: self.counters.evaluated.load(Ordering::Relaxed),
            covering_candidates: self.counters.covering.load(Ordering::Relaxed),
        };
        (best, stats)
    }

    fn linear(&mut self) -> Option<(CandidateSolution, Vec<usize>)> {
        // Levels ascend, so the first feasible level holds the minimum and no
        // later set can have a strictly smaller radius.
        (0..self.levels.len()).find_map(|i| self.level(i))
    }

    fn binary(&mut self) -> Option<(CandidateSolution, Vec<usize>)> {
        let (mut lo, mut hi) = (0, self.levels.len());
        let mut best = None;
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            match self.level(mid) {
                Some(found) => {
                    best = Some(found);
                    hi = mid;
                }
                None => lo = mid + 1,
            }
        }
        best
    }

    /// First feasible candidate at level `i`, in enumeration order.
    fn level(&mut self, i: usize) -> Option<(CandidateSolution, Vec<usize>)> {
        self.probed += 1;
        let radius = self.levels.as_slice()[i];
        let centers = candidate_centers(self.points, radius, self.cfg.tol);
        let mut combos = IndexCombinations::new(centers.len(), self.k, true);

        let eval = |ix: &[usize]| {
            let sol = CandidateSolution { centers: ix.iter().map(|&j| centers[j]).collect(), radius };
            self.counters.evaluated.fetch_add(1, Ordering::Relaxed);
            match self.checker.check(&sol) {
                CheckOutcome::Feasible(assignment) => {
                    self.counters.covering.fetch_add(1, Ordering::Relaxed);
                    Some((sol, assignment))
                }
                CheckOutcome::Infeasible => {
                    self.counters.covering.fetch_add(1, Ordering::Relaxed);
                    None
                }
                CheckOutcome::Uncovered => None,
            }
        };

        if !self.cfg.parallel {
            while let Some(ix) = combos.current() {
                if let Some(found) = eval(ix) {
                    return Some(found);
                }
                combos.advance();
            }
            return None;
        }

        loop {
            let chunk: Vec<Vec<usize>> = combos.by_ref().take(PARALLEL_CHUNK).collect();
            if chunk.is_empty() {
                return None;
            }
            let found = match self.cfg.witness {
                Witness::Deterministic => chunk.par_iter().find_map_first(|ix| eval(ix)),
                Witness::Any => chunk.par_iter().find_map_any(|ix| eval(ix)),
            };
            if found.is_some() {
                return found;
            }
        }
    }
}
