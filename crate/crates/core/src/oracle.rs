//! Exhaustive ground truth for tiny instances.
//!
//! Tries all `k^n` labelings, keeps those meeting every per-cluster color
//! bound, and scores each by the largest minimum-enclosing-disk radius among
//! its nonempty clusters. Deliberately free of any cleverness.

use crate::geometry::{min_enclosing_disk, Point, Tolerance};
use crate::instance::{Bounds, Clustering, Instance, InstanceError};
use crate::search::SolveError;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Optimal fair clustering by enumeration, or `None` when no labeling
/// satisfies the bounds.
pub fn oracle_solve(inst: &Instance, budget: u64, tol: Tolerance) -> Result<Option<Clustering>, SolveError> {
    let (n, k) = (inst.len(), inst.k());
    let within_budget = u32::try_from(n).ok().and_then(|e| (k as u64).checked_pow(e)).is_some_and(|c| c <= budget);
    if !within_budget {
        return Err(SolveError::BudgetExceeded { k, n, budget });
    }

    let colors = inst.color_bounds();
    let points = inst.points();
    let mut labels = vec![0usize; n];
    let mut counts = vec![vec![0usize; colors.len()]; k];
    let mut best: Option<Clustering> = None;

    loop {
        counts.iter_mut().for_each(|row| row.iter_mut().for_each(|c| *c = 0));
        for (&label, color) in labels.iter().zip(inst.colors()) {
            counts[label][color.0] += 1;
        }
        let fair = counts
            .iter()
            .all(|row| colors.iter().all(|(id, spec)| spec.bounds.contains(row[id.0])));
        if fair {
            let mut centers = vec![Point::default(); k];
            let mut radius = 0.0f64;
            for (cluster, center) in centers.iter_mut().enumerate() {
                let members: Vec<Point> =
                    labels.iter().zip(points).filter(|(&l, _)| l == cluster).map(|(_, &p)| p).collect();
                if let Ok(disk) = min_enclosing_disk(&members, tol) {
                    *center = disk.center;
                    radius = radius.max(disk.radius);
                }
            }
            if best.as_ref().is_none_or(|b| radius < b.radius) {
                best = Some(Clustering { centers, radius, assignment: labels.clone() });
            }
        }

        // Odometer increment.
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(best);
            }
            labels[pos] += 1;
            if labels[pos] < k {
                break;
            }
            labels[pos] = 0;
            pos += 1;
        }
    }
}

/// Single-color variant: every cluster holds between `bounds.lower` and
/// `bounds.upper` points.
pub fn oracle_lu(
    points: &[Point],
    k: usize,
    bounds: Bounds,
    budget: u64,
    tol: Tolerance,
) -> Result<Option<Clustering>, SolveError> {
    if points.is_empty() {
        if k == 0 {
            return Err(InstanceError::ZeroK.into());
        }
        if bounds.lower > 0 {
            return Err(InstanceError::NoPoints.into());
        }
        return Ok(Some(Clustering { centers: vec![Point::default(); k], radius: 0.0, assignment: vec![] }));
    }
    let inst = Instance::single_color(points.to_vec(), k, bounds)?;
    oracle_solve(&inst, budget, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::ColorBounds;

    const TOL: Tolerance = Tolerance { eps: 1e-9 };

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn red_blue_pairs() {
        let mut cb = ColorBounds::new();
        let r = cb.push("red", Bounds::new(1, 1)).unwrap();
        let b = cb.push("blue", Bounds::new(1, 1)).unwrap();
        let inst = Instance::new(
            vec![p(0.0, 0.0), p(1.0, 0.0), p(10.0, 0.0), p(11.0, 0.0)],
            vec![r, b, r, b],
            cb,
            2,
        )
        .unwrap();
        let c = oracle_solve(&inst, DEFAULT_BUDGET, TOL).unwrap().unwrap();
        assert!((c.radius - 0.5).abs() < 1e-12);
    }

    #[test]
    fn single_point() {
        let inst = Instance::single_color(vec![p(3.0, 4.0)], 1, Bounds::new(0, 1)).unwrap();
        let c = oracle_solve(&inst, DEFAULT_BUDGET, TOL).unwrap().unwrap();
        assert_eq!(c.radius, 0.0);
        assert_eq!(c.centers, vec![p(3.0, 4.0)]);
    }

    #[test]
    fn counting_infeasible() {
        let pts = vec![p(0.0, 0.0), p(1.0, 0.0), p(2.0, 0.0)];
        let inst = Instance::single_color(pts, 2, Bounds::new(2, 2)).unwrap();
        assert_eq!(oracle_solve(&inst, DEFAULT_BUDGET, TOL).unwrap(), None);
        assert_eq!(oracle_lu(&[p(0.0, 0.0)], 2, Bounds::new(1, 1), DEFAULT_BUDGET, TOL).unwrap(), None);
    }

    #[test]
    fn lu_examples() {
        let pts = [p(0.0, 0.0), p(1.0, 0.0), p(10.0, 0.0), p(11.0, 0.0)];
        let c = oracle_lu(&pts, 2, Bounds::new(2, 2), DEFAULT_BUDGET, TOL).unwrap().unwrap();
        assert!((c.radius - 0.5).abs() < 1e-12);

        let pts = [p(0.0, 0.0), p(2.0, 0.0), p(1.0, 5.0), p(1.0, 1.0)];
        let c = oracle_lu(&pts, 1, Bounds::new(0, 4), DEFAULT_BUDGET, TOL).unwrap().unwrap();
        let mec = min_enclosing_disk(&pts, TOL).unwrap();
        assert_eq!(c.radius, mec.radius);
    }

    #[test]
    fn budget_is_enforced() {
        let pts: Vec<Point> = (0..12).map(|i| p(i as f64, 0.0)).collect();
        let inst = Instance::single_color(pts, 4, Bounds::new(0, 12)).unwrap();
        assert_eq!(
            oracle_solve(&inst, 1000, TOL),
            Err(SolveError::BudgetExceeded { k: 4, n: 12, budget: 1000 })
        );
    }

    #[test]
    fn invariant_under_relabeling() {
        // Relabeling clusters is a bijection on labelings, so permuting the
        // input order of points (which reorders the odometer) cannot change
        // the optimum.
        let pts = vec![p(0.0, 0.0), p(1.0, 2.0), p(4.0, 1.0), p(5.0, 5.0), p(2.0, 3.0)];
        let inst = Instance::single_color(pts.clone(), 2, Bounds::new(2, 3)).unwrap();
        let a = oracle_solve(&inst, DEFAULT_BUDGET, TOL).unwrap().unwrap();
        let mut swapped = a.clone();
        swapped.assignment.iter_mut().for_each(|l| *l = 1 - *l);
        swapped.centers.swap(0, 1);
        assert!(crate::fair::validate(&inst, &swapped, TOL).is_empty());
        let rev: Vec<Point> = pts.into_iter().rev().collect();
        let inst = Instance::single_color(rev, 2, Bounds::new(2, 3)).unwrap();
        let b = oracle_solve(&inst, DEFAULT_BUDGET, TOL).unwrap().unwrap();
        assert!((a.radius - b.radius).abs() < 1e-12);
    }
}
