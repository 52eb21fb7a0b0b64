//! Point-to-disk assignment under per-cluster size bounds.
//!
//! For a fixed set of disks the question "can every point be assigned to a
//! covering disk so that each disk receives between `lower` and `upper`
//! points" is a bounded flow problem on the network
//!
//! ```text
//! s --[1,1]--> point --[0,1]--> center (if covered) --[lower,upper]--> t
//! ```
//!
//! and any feasible integral flow reads back as a partition.

use thiserror::Error;

use crate::candidates::CandidateSolution;
use crate::flow::{max_flow_with_lower_bounds, BoundedNetwork};
use crate::geometry::{Disk, Point, Tolerance};
use crate::instance::{Bounds, Clustering, InstanceError};
use crate::search::{CandidateCheck, CheckOutcome, Search, SolveError, SolveReport, SolverConfig};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AssignmentError {
    #[error("point {0} is not covered by any disk")]
    Uncovered(usize),
    #[error("disks do not share a common radius")]
    MixedRadii,
    #[error("lower bound {lower} exceeds upper bound {upper}")]
    InvertedBounds { lower: usize, upper: usize },
}

#[derive(Debug, Clone, Copy)]
pub struct AssignmentProblem<'a> {
    pub points: &'a [Point],
    pub disks: &'a [Disk],
    pub bounds: Bounds,
}

impl<'a> AssignmentProblem<'a> {
    pub fn new(
        points: &'a [Point],
        disks: &'a [Disk],
        bounds: Bounds,
        tol: Tolerance,
    ) -> Result<Self, AssignmentError> {
        if bounds.lower > bounds.upper {
            return Err(AssignmentError::InvertedBounds { lower: bounds.lower, upper: bounds.upper });
        }
        if let Some(first) = disks.first() {
            if disks.iter().any(|d| !tol.eq(d.radius, first.radius)) {
                return Err(AssignmentError::MixedRadii);
            }
        }
        Ok(AssignmentProblem { points, disks, bounds })
    }
}

/// Cluster index of every point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition(pub Vec<usize>);

impl Partition {
    pub fn cluster_sizes(&self, k: usize) -> Vec<usize> {
        let mut sizes = vec![0; k];
        for &c in &self.0 {
            sizes[c] += 1;
        }
        sizes
    }
}

fn point_node(i: usize) -> usize {
    1 + i
}

fn center_node(n: usize, j: usize) -> usize {
    1 + n + j
}

/// Network with nodes `s = 0`, points `1..=n`, centers `n+1..=n+k` and
/// `t = n+k+1`. Arcs are laid out as all `s -> p`, then `p -> c` in
/// point-major order, then all `c -> t`.
pub fn build_network(prob: &AssignmentProblem<'_>, tol: Tolerance) -> Result<BoundedNetwork, AssignmentError> {
    let (n, k) = (prob.points.len(), prob.disks.len());
    let sink = n + k + 1;
    let mut net = BoundedNetwork::new(n + k + 2, 0, sink).expect("source and sink are distinct");
    let arc = |net: &mut BoundedNetwork, from, to, lower: usize, upper: usize| {
        net.add_arc(from, to, lower as u64, upper as u64).expect("well-formed arc");
    };

    for i in 0..n {
        arc(&mut net, 0, point_node(i), 1, 1);
    }
    for (i, &p) in prob.points.iter().enumerate() {
        let mut covered = false;
        for (j, d) in prob.disks.iter().enumerate() {
            if d.covers(p, tol) {
                arc(&mut net, point_node(i), center_node(n, j), 0, 1);
                covered = true;
            }
        }
        if !covered {
            return Err(AssignmentError::Uncovered(i));
        }
    }
    for j in 0..k {
        arc(&mut net, center_node(n, j), sink, prob.bounds.lower, prob.bounds.upper);
    }
    Ok(net)
}

/// A partition honoring coverage and the size bounds, or `None` if the
/// bounded network has no feasible flow.
pub fn feasible_partition(
    prob: &AssignmentProblem<'_>,
    tol: Tolerance,
) -> Result<Option<Partition>, AssignmentError> {
    let n = prob.points.len();
    let net = build_network(prob, tol)?;
    let flow = max_flow_with_lower_bounds(&net);
    if !flow.feasible {
        return Ok(None);
    }
    let mut cluster = vec![usize::MAX; n];
    for (a, &f) in net.arcs().iter().zip(&flow.flows) {
        if f == 1 && a.from != 0 && a.to != net.sink() {
            cluster[a.from - 1] = a.to - 1 - n;
        }
    }
    debug_assert!(cluster.iter().all(|&c| c != usize::MAX));
    Ok(Some(Partition(cluster)))
}

struct LuCheck<'a> {
    points: &'a [Point],
    bounds: Bounds,
    tol: Tolerance,
}

impl CandidateCheck for LuCheck<'_> {
    fn check(&self, sol: &CandidateSolution) -> CheckOutcome {
        if !sol.covers_all(self.points, self.tol) {
            return CheckOutcome::Uncovered;
        }
        let disks = sol.disks();
        let prob = AssignmentProblem { points: self.points, disks: &disks, bounds: self.bounds };
        match feasible_partition(&prob, self.tol) {
            Ok(Some(Partition(a))) => CheckOutcome::Feasible(a),
            _ => CheckOutcome::Infeasible,
        }
    }
}

/// Minimum common radius for which `k` disks cover `points` and admit an
/// assignment giving every cluster between `bounds.lower` and
/// `bounds.upper` points.
pub fn solve_lu_kcenter(
    points: &[Point],
    k: usize,
    bounds: Bounds,
    cfg: &SolverConfig,
) -> Result<SolveReport, SolveError> {
    if k == 0 {
        return Err(InstanceError::ZeroK.into());
    }
    if bounds.lower > bounds.upper {
        return Err(InstanceError::InvertedBounds {
            color: "default".into(),
            lower: bounds.lower,
            upper: bounds.upper,
        }
        .into());
    }
    if let Some(index) = points.iter().position(|p| !p.is_finite()) {
        return Err(InstanceError::NonFinite { index }.into());
    }
    if points.is_empty() {
        if bounds.lower > 0 {
            return Err(InstanceError::NoPoints.into());
        }
        let clustering = Clustering { centers: vec![Point::default(); k], radius: 0.0, assignment: vec![] };
        return Ok(SolveReport { clustering: Some(clustering), exact: true, stats: Default::default() });
    }
    if !bounds.admits_total(points.len(), k) {
        return Ok(SolveReport { clustering: None, exact: true, stats: Default::default() });
    }

    let check = LuCheck { points, bounds, tol: cfg.tol };
    let (best, stats) = Search::new(points, k, *cfg, &check).run();
    let clustering = best.map(|(sol, assignment)| Clustering {
        centers: sol.centers,
        radius: sol.radius,
        assignment,
    });
    Ok(SolveReport { clustering, exact: true, stats })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: Tolerance = Tolerance { eps: 1e-9 };

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn four() -> Vec<Point> {
        vec![p(0.0, 0.0), p(1.0, 0.0), p(10.0, 0.0), p(11.0, 0.0)]
    }

    fn two_disks() -> Vec<Disk> {
        vec![Disk::new(p(0.5, 0.0), 0.5), Disk::new(p(10.5, 0.0), 0.5)]
    }

    #[test]
    fn network_shape() {
        let pts = [p(0.0, 0.0), p(1.0, 0.0)];
        let disks = [Disk::new(p(0.5, 0.0), 1.0)];
        let prob = AssignmentProblem::new(&pts, &disks, Bounds::new(2, 2), TOL).unwrap();
        let net = build_network(&prob, TOL).unwrap();
        assert_eq!(net.node_count(), 5);
        let arcs: Vec<_> = net.arcs().iter().map(|a| (a.from, a.to, a.lower, a.upper)).collect();
        assert_eq!(arcs, vec![(0, 1, 1, 1), (0, 2, 1, 1), (1, 3, 0, 1), (2, 3, 0, 1), (3, 4, 2, 2)]);

        let pts = [p(0.0, 0.0)];
        let disks = [Disk::new(p(0.0, 0.0), 1.0)];
        let prob = AssignmentProblem::new(&pts, &disks, Bounds::new(0, 1), TOL).unwrap();
        let net = build_network(&prob, TOL).unwrap();
        assert_eq!(net.node_count(), 4);
        assert_eq!(net.arcs().len(), 3);
    }

    #[test]
    fn arc_count_is_points_plus_coverage_plus_disks() {
        let pts = four();
        let disks = [Disk::new(p(0.5, 0.0), 6.0), Disk::new(p(5.5, 0.0), 6.0)];
        let prob = AssignmentProblem::new(&pts, &disks, Bounds::new(0, 4), TOL).unwrap();
        let net = build_network(&prob, TOL).unwrap();
        let coverage: usize =
            pts.iter().map(|&q| disks.iter().filter(|d| d.covers(q, TOL)).count()).sum();
        assert_eq!(coverage, 6);
        assert_eq!(net.arcs().len(), 4 + coverage + 2);
    }

    #[test]
    fn uncovered_point_is_rejected() {
        let pts = four();
        let disks = [Disk::new(p(0.5, 0.0), 0.5)];
        let prob = AssignmentProblem::new(&pts, &disks, Bounds::new(0, 4), TOL).unwrap();
        assert_eq!(build_network(&prob, TOL), Err(AssignmentError::Uncovered(2)));
    }

    #[test]
    fn problem_validation() {
        let pts = four();
        let mixed = [Disk::new(p(0.0, 0.0), 1.0), Disk::new(p(0.0, 0.0), 2.0)];
        assert_eq!(
            AssignmentProblem::new(&pts, &mixed, Bounds::new(0, 1), TOL).err(),
            Some(AssignmentError::MixedRadii)
        );
        assert!(matches!(
            AssignmentProblem::new(&pts, &two_disks(), Bounds::new(2, 1), TOL),
            Err(AssignmentError::InvertedBounds { .. })
        ));
    }

    #[test]
    fn partition_examples() {
        let pts = four();
        let disks = two_disks();
        let prob = AssignmentProblem::new(&pts, &disks, Bounds::new(2, 2), TOL).unwrap();
        assert_eq!(feasible_partition(&prob, TOL).unwrap(), Some(Partition(vec![0, 0, 1, 1])));

        let prob = AssignmentProblem::new(&pts, &disks, Bounds::new(3, 4), TOL).unwrap();
        assert_eq!(feasible_partition(&prob, TOL).unwrap(), None);

        let one = [p(0.0, 0.0)];
        let disk = [Disk::new(p(0.0, 0.0), 0.0)];
        let prob = AssignmentProblem::new(&one, &disk, Bounds::new(1, 1), TOL).unwrap();
        assert_eq!(feasible_partition(&prob, TOL).unwrap(), Some(Partition(vec![0])));
    }

    #[test]
    fn partition_agrees_with_enumeration() {
        // Overlapping disks: the middle point can go either way.
        let pts = [p(0.0, 0.0), p(1.0, 0.0), p(2.0, 0.0)];
        let disks = [Disk::new(p(0.5, 0.0), 1.0), Disk::new(p(1.5, 0.0), 1.0)];
        for lower in 0..=3 {
            for upper in lower..=3 {
                let prob = AssignmentProblem::new(&pts, &disks, Bounds::new(lower, upper), TOL).unwrap();
                let got = feasible_partition(&prob, TOL).unwrap();
                let brute = (0..8u32).any(|mask| {
                    let a: Vec<usize> = (0..3).map(|i| ((mask >> i) & 1) as usize).collect();
                    let ok_cover = a.iter().enumerate().all(|(i, &c)| disks[c].covers(pts[i], TOL));
                    let sizes = Partition(a).cluster_sizes(2);
                    ok_cover && sizes.iter().all(|&s| lower <= s && s <= upper)
                });
                assert_eq!(got.is_some(), brute, "bounds [{lower},{upper}]");
                if let Some(part) = got {
                    assert!(part.0.iter().enumerate().all(|(i, &c)| disks[c].covers(pts[i], TOL)));
                }
            }
        }
    }

    #[test]
    fn lu_examples() {
        let cfg = SolverConfig::default();
        let r = solve_lu_kcenter(&four(), 2, Bounds::new(2, 2), &cfg).unwrap();
        let c = r.clustering.unwrap();
        assert!((c.radius - 0.5).abs() < 1e-9);
        assert_eq!(c.assignment[0], c.assignment[1]);
        assert_eq!(c.assignment[2], c.assignment[3]);
        assert_ne!(c.assignment[0], c.assignment[2]);

        let tri = [p(0.0, 0.0), p(2.0, 0.0), p(0.0, 2.0)];
        let r = solve_lu_kcenter(&tri, 1, Bounds::new(0, 3), &cfg).unwrap();
        assert!((r.radius().unwrap() - 2f64.sqrt()).abs() < 1e-9);

        let line = [p(0.0, 0.0), p(1.0, 0.0), p(2.0, 0.0)];
        let r = solve_lu_kcenter(&line, 2, Bounds::new(2, 2), &cfg).unwrap();
        assert!(!r.is_feasible());
    }

    #[test]
    fn lu_degenerate_inputs() {
        let cfg = SolverConfig::default();
        assert!(solve_lu_kcenter(&[], 1, Bounds::new(1, 1), &cfg).is_err());
        assert!(solve_lu_kcenter(&[p(0.0, 0.0)], 0, Bounds::new(0, 1), &cfg).is_err());
        let r = solve_lu_kcenter(&[], 2, Bounds::new(0, 1), &cfg).unwrap();
        assert_eq!(r.radius(), Some(0.0));

        // Fewer points than clusters: every cluster is a singleton or empty.
        let r = solve_lu_kcenter(&[p(0.0, 0.0), p(3.0, 0.0)], 3, Bounds::new(0, 1), &cfg).unwrap();
        assert_eq!(r.radius(), Some(0.0));

        // Coincident points forced into separate clusters share a center.
        let twin = [p(1.0, 1.0), p(1.0, 1.0)];
        let r = solve_lu_kcenter(&twin, 2, Bounds::new(1, 1), &cfg).unwrap();
        let c = r.clustering.unwrap();
        assert_eq!(c.radius, 0.0);
        assert_ne!(c.assignment[0], c.assignment[1]);
    }

    #[test]
    fn monotone_in_radius() {
        let pts = [p(0.0, 0.0), p(1.0, 0.5), p(2.0, 0.0), p(3.0, 1.0)];
        let centers = [p(0.5, 0.0), p(2.5, 0.5)];
        let mut was_feasible = false;
        for step in 0..40 {
            let r = step as f64 * 0.1;
            let disks: Vec<Disk> = centers.iter().map(|&c| Disk::new(c, r)).collect();
            let sol = CandidateSolution { centers: centers.to_vec(), radius: r };
            let feasible = sol.covers_all(&pts, TOL) && {
                let prob = AssignmentProblem::new(&pts, &disks, Bounds::new(2, 2), TOL).unwrap();
                feasible_partition(&prob, TOL).unwrap().is_some()
            };
            assert!(feasible || !was_feasible, "lost feasibility at r = {r}");
            was_feasible |= feasible;
        }
        assert!(was_feasible);
    }
}
