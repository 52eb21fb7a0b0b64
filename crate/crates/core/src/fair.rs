//! Exact fair k-center clustering.
//!
//! A candidate disk set is accepted when it covers every point and, for each
//! color separately, the points of that color can be assigned to covering
//! disks with per-cluster counts inside the color's bounds. Each point has
//! exactly one color, so the per-color assignments are disjoint and their
//! union is a valid global assignment.

use std::collections::HashSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::assignment::{feasible_partition, AssignmentProblem, Partition};
use crate::candidates::{candidate_centers, multiset_count, unrank_multiset, CandidateSolution, IndexCombinations};
use crate::geometry::{Point, Tolerance};
use crate::instance::{Clustering, Instance};
use crate::search::{
    radius_levels, CandidateCheck, CheckOutcome, Search, SearchStats, SolveReport, SolverConfig,
};

/// Per-instance state reused across candidate checks.
pub(crate) struct FairCheck<'a> {
    inst: &'a Instance,
    groups: Vec<(Vec<usize>, Vec<Point>)>,
    tol: Tolerance,
}

impl<'a> FairCheck<'a> {
    pub(crate) fn new(inst: &'a Instance, tol: Tolerance) -> Self {
        let groups = inst
            .points_by_color()
            .into_iter()
            .map(|idx| {
                let pts = idx.iter().map(|&i| inst.points()[i]).collect();
                (idx, pts)
            })
            .collect();
        FairCheck { inst, groups, tol }
    }
}

impl CandidateCheck for FairCheck<'_> {
    fn check(&self, sol: &CandidateSolution) -> CheckOutcome {
        if !sol.covers_all(self.inst.points(), self.tol) {
            return CheckOutcome::Uncovered;
        }
        let disks = sol.disks();
        let mut assignment = vec![0; self.inst.len()];
        for ((_, spec), (idx, pts)) in self.inst.color_bounds().iter().zip(&self.groups) {
            let prob = AssignmentProblem { points: pts, disks: &disks, bounds: spec.bounds };
            match feasible_partition(&prob, self.tol) {
                Ok(Some(Partition(local))) => {
                    for (&global, cluster) in idx.iter().zip(local) {
                        assignment[global] = cluster;
                    }
                }
                // Remaining colors cannot rescue this set.
                _ => return CheckOutcome::Infeasible,
            }
        }
        CheckOutcome::Feasible(assignment)
    }
}

/// Checks one candidate disk set against an instance.
pub fn check_fair(sol: &CandidateSolution, inst: &Instance, tol: Tolerance) -> Option<Clustering> {
    match FairCheck::new(inst, tol).check(sol) {
        CheckOutcome::Feasible(assignment) => {
            Some(Clustering { centers: sol.centers.clone(), radius: sol.radius, assignment })
        }
        _ => None,
    }
}

/// Minimum-radius fair clustering, or an infeasible verdict.
pub fn solve(inst: &Instance, cfg: &SolverConfig) -> SolveReport {
    if !inst.counts_admissible() {
        return SolveReport { clustering: None, exact: true, stats: SearchStats::default() };
    }
    let check = FairCheck::new(inst, cfg.tol);
    let (best, stats) = Search::new(inst.points(), inst.k(), *cfg, &check).run();
    let clustering = best.map(|(sol, assignment)| Clustering {
        centers: sol.centers,
        radius: sol.radius,
        assignment,
    });
    SolveReport { clustering, exact: true, stats }
}

/// How the heuristic draws candidate disk sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Sampling {
    /// Independent draws: a uniform radius level, then `k` centers drawn
    /// uniformly with replacement from that level's canonical centers.
    #[default]
    Random,
    /// Distinct draws, uniform over the whole candidate space. With at least
    /// as many samples as candidates this enumerates everything and matches
    /// the exact solver.
    Exhaustive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeuristicOptions {
    pub samples: u64,
    pub seed: u64,
    pub sampling: Sampling,
}

/// Best clustering among sampled candidate disk sets. Never better than the
/// exact optimum; an infeasible verdict only means nothing sampled worked.
pub fn solve_heuristic_random(inst: &Instance, opts: &HeuristicOptions, cfg: &SolverConfig) -> SolveReport {
    let infeasible = |stats| SolveReport { clustering: None, exact: false, stats };
    if opts.samples == 0 || !inst.counts_admissible() {
        return infeasible(SearchStats::default());
    }
    let k = inst.k();
    let levels = radius_levels(inst.points(), cfg.tol);
    let centers: Vec<Vec<Point>> =
        levels.iter().map(|r| candidate_centers(inst.points(), r, cfg.tol)).collect();
    let check = FairCheck::new(inst, cfg.tol);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    let mut stats = SearchStats { radius_levels: levels.len(), ..Default::default() };
    let mut best: Option<Clustering> = None;
    let mut consider = |level: usize, ix: &[usize], stats: &mut SearchStats| {
        let radius = levels.as_slice()[level];
        if best.as_ref().is_some_and(|b| b.radius <= radius) {
            return;
        }
        let sol = CandidateSolution { centers: ix.iter().map(|&j| centers[level][j]).collect(), radius };
        stats.candidates_evaluated += 1;
        match check.check(&sol) {
            CheckOutcome::Feasible(assignment) => {
                stats.covering_candidates += 1;
                best = Some(Clustering { centers: sol.centers, radius, assignment });
            }
            CheckOutcome::Infeasible => stats.covering_candidates += 1,
            CheckOutcome::Uncovered => {}
        }
    };

    match opts.sampling {
        Sampling::Random => {
            for _ in 0..opts.samples {
                let level = rng.gen_range(0..levels.len());
                let m = centers[level].len();
                let ix: Vec<usize> = (0..k).map(|_| rng.gen_range(0..m)).collect();
                consider(level, &ix, &mut stats);
            }
            stats.levels_probed = levels.len();
        }
        Sampling::Exhaustive => {
            let sizes: Vec<u128> = centers.iter().map(|c| multiset_count(c.len(), k)).collect();
            let total = sizes.iter().fold(0u128, |a, &s| a.saturating_add(s));
            if u128::from(opts.samples) >= total {
                for (level, c) in centers.iter().enumerate() {
                    for ix in IndexCombinations::new(c.len(), k, true) {
                        consider(level, &ix, &mut stats);
                    }
                }
                stats.levels_probed = levels.len();
            } else {
                let mut picks = distinct_ranks(&mut rng, total, opts.samples);
                picks.sort_unstable();
                let mut probed = HashSet::new();
                for rank in picks {
                    let (level, local) = locate(&sizes, rank);
                    probed.insert(level);
                    consider(level, &unrank_multiset(centers[level].len(), k, local), &mut stats);
                }
                stats.levels_probed = probed.len();
            }
        }
    }
    SolveReport { clustering: best, exact: false, stats }
}

/// `count` distinct values from `0..total` (Floyd's algorithm).
fn distinct_ranks(rng: &mut ChaCha8Rng, total: u128, count: u64) -> Vec<u128> {
    let count = u128::from(count);
    let mut chosen = HashSet::new();
    for j in total - count..total {
        let t = rng.gen_range(0..=j);
        if !chosen.insert(t) {
            chosen.insert(j);
        }
    }
    chosen.into_iter().collect()
}

/// Maps a global rank to (level, rank within level).
fn locate(sizes: &[u128], mut rank: u128) -> (usize, u128) {
    for (level, &s) in sizes.iter().enumerate() {
        if rank < s {
            return (level, rank);
        }
        rank -= s;
    }
    unreachable!("rank beyond candidate space")
}

/// Total number of candidate disk sets the exact search ranges over.
pub fn candidate_space_size(inst: &Instance, tol: Tolerance) -> u128 {
    radius_levels(inst.points(), tol)
        .iter()
        .map(|r| multiset_count(candidate_centers(inst.points(), r, tol).len(), inst.k()))
        .fold(0u128, |a, s| a.saturating_add(s))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    AssignmentLength { expected: usize, found: usize },
    CenterCount { expected: usize, found: usize },
    InvalidRadius { radius: f64 },
    ClusterOutOfRange { point: usize, cluster: usize },
    Uncovered { point: usize, cluster: usize, distance: f64, radius: f64 },
    ColorCount { cluster: usize, color: String, count: usize, lower: usize, upper: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::AssignmentLength { expected, found } => {
                write!(f, "assignment has {found} entries, expected {expected}")
            }
            Violation::CenterCount { expected, found } => write!(f, "{found} centers, expected {expected}"),
            Violation::InvalidRadius { radius } => write!(f, "radius {radius} is not a finite non-negative number"),
            Violation::ClusterOutOfRange { point, cluster } => {
                write!(f, "point {point} assigned to nonexistent cluster {cluster}")
            }
            Violation::Uncovered { point, cluster, distance, radius } => write!(
                f,
                "point {point} is {distance} from the center of cluster {cluster}, beyond radius {radius}"
            ),
            Violation::ColorCount { cluster, color, count, lower, upper } => write!(
                f,
                "cluster {cluster} holds {count} points of color {color:?}, outside [{lower}, {upper}]"
            ),
        }
    }
}

/// Every way `c` fails to be a valid clustering of `inst`; empty when valid.
pub fn validate(inst: &Instance, c: &Clustering, tol: Tolerance) -> Vec<Violation> {
    let k = inst.k();
    let mut out = Vec::new();
    if c.assignment.len() != inst.len() {
        out.push(Violation::AssignmentLength { expected: inst.len(), found: c.assignment.len() });
    }
    if c.centers.len() != k {
        out.push(Violation::CenterCount { expected: k, found: c.centers.len() });
    }
    if !(c.radius.is_finite() && c.radius >= 0.0) {
        out.push(Violation::InvalidRadius { radius: c.radius });
    }
    if !out.is_empty() {
        return out;
    }

    let colors = inst.color_bounds();
    let mut counts = vec![vec![0usize; colors.len()]; k];
    for (point, (&cluster, (&p, color))) in
        c.assignment.iter().zip(inst.points().iter().zip(inst.colors())).enumerate()
    {
        if cluster >= k {
            out.push(Violation::ClusterOutOfRange { point, cluster });
            continue;
        }
        let center = c.centers[cluster];
        let distance = center.dist(p);
        // Coordinates are compared magnitudes too: a rounded center is off by
        // a relative amount of its coordinates, not of the radius.
        let scale = center.x.abs().max(center.y.abs()).max(p.x.abs()).max(p.y.abs());
        if !tol.le(distance, c.radius + tol.eps * scale) {
            out.push(Violation::Uncovered { point, cluster, distance, radius: c.radius });
        }
        counts[cluster][color.0] += 1;
    }
    for (cluster, row) in counts.iter().enumerate() {
        for (id, spec) in colors.iter() {
            let count = row[id.0];
            if !spec.bounds.contains(count) {
                out.push(Violation::ColorCount {
                    cluster,
                    color: spec.name.clone(),
                    count,
                    lower: spec.bounds.lower,
                    upper: spec.bounds.upper,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{Bounds, ColorBounds};
    use crate::search::ScanMode;

    const TOL: Tolerance = Tolerance { eps: 1e-9 };

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    /// red (0,0), blue (1,0), red (10,0), blue (11,0).
    fn red_blue(red: Bounds, blue: Bounds) -> Instance {
        let mut cb = ColorBounds::new();
        let r = cb.push("red", red).unwrap();
        let b = cb.push("blue", blue).unwrap();
        Instance::new(
            vec![p(0.0, 0.0), p(1.0, 0.0), p(10.0, 0.0), p(11.0, 0.0)],
            vec![r, b, r, b],
            cb,
            2,
        )
        .unwrap()
    }

    fn near_pairs() -> CandidateSolution {
        CandidateSolution { centers: vec![p(0.5, 0.0), p(10.5, 0.0)], radius: 0.5 }
    }

    #[test]
    fn check_pairs_each_red_with_nearby_blue() {
        let inst = red_blue(Bounds::new(1, 1), Bounds::new(1, 1));
        let c = check_fair(&near_pairs(), &inst, TOL).unwrap();
        assert_eq!(c.assignment, vec![0, 0, 1, 1]);
        assert!(validate(&inst, &c, TOL).is_empty());
    }

    #[test]
    fn check_rejects_unmeetable_color_bound() {
        let inst = red_blue(Bounds::new(2, 2), Bounds::new(1, 1));
        assert!(check_fair(&near_pairs(), &inst, TOL).is_none());
    }

    #[test]
    fn check_rejects_uncovering_set() {
        let inst = red_blue(Bounds::new(0, 2), Bounds::new(0, 2));
        let sol = CandidateSolution { centers: vec![p(0.5, 0.0), p(20.0, 0.0)], radius: 0.5 };
        assert!(check_fair(&sol, &inst, TOL).is_none());
    }

    #[test]
    fn solve_examples() {
        let cfg = SolverConfig::default();
        let inst = red_blue(Bounds::new(1, 1), Bounds::new(1, 1));
        let r = solve(&inst, &cfg);
        let c = r.clustering.unwrap();
        assert!((c.radius - 0.5).abs() < 1e-9);
        assert!(validate(&inst, &c, TOL).is_empty());

        let tri = vec![p(0.0, 0.0), p(2.0, 0.0), p(1.0, 5.0)];
        let inst = Instance::single_color(tri, 1, Bounds::new(0, 3)).unwrap();
        assert!((solve(&inst, &cfg).radius().unwrap() - 2.6).abs() < 1e-9);

        let inst = Instance::single_color(vec![p(0.0, 0.0), p(1.0, 0.0), p(2.0, 0.0)], 2, Bounds::new(2, 2))
            .unwrap();
        let r = solve(&inst, &cfg);
        assert!(!r.is_feasible());
        assert!(r.exact);
    }

    #[test]
    fn color_bounds_force_larger_radius() {
        // Geometrically {0,1} and {10,11} pair up, but each cluster needs
        // exactly one of each color, with reds at 0 and 1.
        let mut cb = ColorBounds::new();
        let r = cb.push("red", Bounds::new(1, 1)).unwrap();
        let b = cb.push("blue", Bounds::new(1, 1)).unwrap();
        let inst = Instance::new(
            vec![p(0.0, 0.0), p(1.0, 0.0), p(10.0, 0.0), p(11.0, 0.0)],
            vec![r, r, b, b],
            cb,
            2,
        )
        .unwrap();
        let c = solve(&inst, &SolverConfig::default()).clustering.unwrap();
        assert!((c.radius - 5.0).abs() < 1e-9, "radius {}", c.radius);
        assert!(validate(&inst, &c, TOL).is_empty());
    }

    #[test]
    fn scan_modes_and_parallel_agree() {
        let inst = red_blue(Bounds::new(1, 1), Bounds::new(1, 1));
        let base = solve(&inst, &SolverConfig::default());
        for scan in [ScanMode::Full, ScanMode::Binary] {
            for parallel in [false, true] {
                let cfg = SolverConfig { scan, parallel, ..Default::default() };
                assert_eq!(solve(&inst, &cfg).clustering, base.clustering);
            }
        }
    }

    #[test]
    fn heuristic_exhaustion_matches_exact() {
        let inst = red_blue(Bounds::new(1, 1), Bounds::new(1, 1));
        let cfg = SolverConfig::default();
        let total = candidate_space_size(&inst, TOL);
        let opts = HeuristicOptions { samples: total as u64, seed: 3, sampling: Sampling::Exhaustive };
        let h = solve_heuristic_random(&inst, &opts, &cfg);
        assert!(!h.exact);
        assert_eq!(h.clustering, solve(&inst, &cfg).clustering);
    }

    #[test]
    fn heuristic_single_sample_never_beats_exact() {
        let inst = red_blue(Bounds::new(1, 1), Bounds::new(1, 1));
        let cfg = SolverConfig::default();
        for seed in 0..20 {
            for sampling in [Sampling::Random, Sampling::Exhaustive] {
                let opts = HeuristicOptions { samples: 1, seed, sampling };
                if let Some(r) = solve_heuristic_random(&inst, &opts, &cfg).radius() {
                    assert!(r >= 0.5 - 1e-12);
                }
            }
        }
    }

    #[test]
    fn heuristic_is_reproducible() {
        let inst = red_blue(Bounds::new(0, 2), Bounds::new(0, 2));
        let cfg = SolverConfig::default();
        let opts = HeuristicOptions { samples: 50, seed: 11, sampling: Sampling::Random };
        assert_eq!(solve_heuristic_random(&inst, &opts, &cfg), solve_heuristic_random(&inst, &opts, &cfg));
        let opts = HeuristicOptions { samples: 50, seed: 11, sampling: Sampling::Exhaustive };
        assert_eq!(solve_heuristic_random(&inst, &opts, &cfg), solve_heuristic_random(&inst, &opts, &cfg));
    }

    #[test]
    fn validate_reports_bound_violation() {
        let mut cb = ColorBounds::new();
        let r = cb.push("red", Bounds::new(0, 1)).unwrap();
        let b = cb.push("blue", Bounds::new(0, 2)).unwrap();
        let inst = Instance::new(
            vec![p(0.0, 0.0), p(1.0, 0.0), p(2.0, 0.0), p(3.0, 0.0)],
            vec![r, b, r, b],
            cb,
            2,
        )
        .unwrap();
        let mut c = Clustering { centers: vec![p(1.5, 0.0), p(1.5, 0.0)], radius: 2.0, assignment: vec![0, 0, 1, 1] };
        assert!(validate(&inst, &c, TOL).is_empty());
        // Move the red point at index 2 into cluster 0, which already has one red.
        c.assignment[2] = 0;
        let v = validate(&inst, &c, TOL);
        assert_eq!(v.len(), 1, "{v:?}");
        assert!(matches!(&v[0], Violation::ColorCount { cluster: 0, color, count: 2, .. } if color == "red"));
    }

    #[test]
    fn validate_reports_coverage_violation() {
        let inst = red_blue(Bounds::new(1, 1), Bounds::new(1, 1));
        let mut c = check_fair(&near_pairs(), &inst, TOL).unwrap();
        // (10,0) stays within 0.5; (11,0) ends up at radius + 1.
        c.centers[1] = p(9.5, 0.0);
        let v = validate(&inst, &c, TOL);
        assert_eq!(v.len(), 1, "{v:?}");
        assert!(matches!(v[0], Violation::Uncovered { point: 3, cluster: 1, .. }));
    }

    #[test]
    fn validate_structural() {
        let inst = red_blue(Bounds::new(1, 1), Bounds::new(1, 1));
        let c = Clustering { centers: vec![p(0.0, 0.0)], radius: 1.0, assignment: vec![0; 3] };
        let v = validate(&inst, &c, TOL);
        assert!(v.contains(&Violation::AssignmentLength { expected: 4, found: 3 }));
        assert!(v.contains(&Violation::CenterCount { expected: 2, found: 1 }));
        let c = Clustering { centers: vec![p(0.0, 0.0); 2], radius: 20.0, assignment: vec![0, 0, 1, 7] };
        assert!(validate(&inst, &c, TOL).contains(&Violation::ClusterOutOfRange { point: 3, cluster: 7 }));
    }

    #[test]
    fn empty_color_with_positive_lower_bound_is_infeasible() {
        let mut cb = ColorBounds::new();
        let r = cb.push("red", Bounds::new(0, 2)).unwrap();
        cb.push("green", Bounds::new(1, 1)).unwrap();
        let inst = Instance::new(vec![p(0.0, 0.0), p(1.0, 0.0)], vec![r, r], cb, 1).unwrap();
        assert!(!solve(&inst, &SolverConfig::default()).is_feasible());
    }
}
