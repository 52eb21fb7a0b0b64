//! Exact fair k-center clustering on the plane.
//!
//! Given colored points, per-color bounds `[lower, upper]` and a cluster
//! count `k`, find `k` equal disks and an assignment of points to covering
//! disks such that every cluster holds an admissible number of points of
//! each color, minimizing the common radius.
//!
//! The solver enumerates candidate radii and canonical disk centers, and
//! decides each candidate disk set with one bounded max-flow per color.
//!
//! ```
//! use fairdisk::{solve, Bounds, ColorBounds, Instance, Point, SolverConfig};
//!
//! let mut colors = ColorBounds::new();
//! let red = colors.push("red", Bounds::new(1, 1)).unwrap();
//! let blue = colors.push("blue", Bounds::new(1, 1)).unwrap();
//! let points = vec![
//!     Point::new(0.0, 0.0),
//!     Point::new(1.0, 0.0),
//!     Point::new(10.0, 0.0),
//!     Point::new(11.0, 0.0),
//! ];
//! let inst = Instance::new(points, vec![red, blue, red, blue], colors, 2).unwrap();
//! let report = solve(&inst, &SolverConfig::default());
//! assert!((report.radius().unwrap() - 0.5).abs() < 1e-9);
//! ```

pub mod assignment;
pub mod candidates;
pub mod fair;
pub mod flow;
pub mod geometry;
pub mod instance;
pub mod oracle;
pub mod search;

pub use assignment::{feasible_partition, solve_lu_kcenter, AssignmentProblem, Partition};
pub use candidates::{candidate_centers, candidate_radii, CandidateSolution, RadiusList};
pub use fair::{
    candidate_space_size, check_fair, solve, solve_heuristic_random, validate, HeuristicOptions, Sampling,
    Violation,
};
pub use geometry::{Disk, Point, Tolerance};
pub use instance::{Bounds, ColorBounds, ColorId, ColorSpec, Clustering, Instance, InstanceError};
pub use oracle::{oracle_lu, oracle_solve};
pub use search::{radius_levels, ScanMode, SearchStats, SolveError, SolveReport, SolverConfig, Witness};
