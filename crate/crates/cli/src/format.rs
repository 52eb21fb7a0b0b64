//! Instance files (TOML) and result documents (JSON).
//!
//! An instance file looks like
//!
//! ```toml
//! k = 2
//!
//! [[colors]]
//! name = "red"
//! lower = 1
//! upper = 1
//!
//! [[points]]
//! x = 0.0
//! y = 0.0
//! color = "red"
//! ```
//!
//! Unknown keys are rejected, as are duplicate color names.

use fairdisk::{
    Bounds, ColorBounds, Clustering, Instance, InstanceError, Point, SearchStats, SolveReport,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum FormatError {
    #[error("{0}")]
    Syntax(String),
    #[error("k must be at least 1")]
    ZeroK,
    #[error("instance has no points")]
    NoPoints,
    #[error("color {0:?} is declared more than once")]
    DuplicateColor(String),
    #[error("color {color:?}: lower bound {lower} exceeds upper bound {upper}")]
    InvertedBounds { color: String, lower: usize, upper: usize },
    #[error("point {point}: undeclared color {color:?}")]
    UndeclaredColor { point: usize, color: String },
    #[error("point {point}: coordinates must be finite")]
    NonFinite { point: usize },
    #[error("result document: {0}")]
    Result(String),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    k: usize,
    colors: Vec<ColorEntry>,
    points: Vec<PointEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ColorEntry {
    name: String,
    lower: usize,
    upper: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointEntry {
    x: f64,
    y: f64,
    color: String,
}

pub fn parse_instance(text: &str) -> Result<Instance, FormatError> {
    let file: InstanceFile = toml::from_str(text).map_err(|e| FormatError::Syntax(e.to_string()))?;
    if file.k == 0 {
        return Err(FormatError::ZeroK);
    }
    let mut bounds = ColorBounds::new();
    for c in &file.colors {
        bounds.push(c.name.clone(), Bounds::new(c.lower, c.upper)).map_err(|e| match e {
            InstanceError::DuplicateColor(name) => FormatError::DuplicateColor(name),
            _ => FormatError::InvertedBounds { color: c.name.clone(), lower: c.lower, upper: c.upper },
        })?;
    }
    let mut points = Vec::with_capacity(file.points.len());
    let mut colors = Vec::with_capacity(file.points.len());
    for (i, p) in file.points.iter().enumerate() {
        let id = bounds
            .lookup(&p.color)
            .ok_or_else(|| FormatError::UndeclaredColor { point: i, color: p.color.clone() })?;
        let pt = Point::new(p.x, p.y);
        if !pt.is_finite() {
            return Err(FormatError::NonFinite { point: i });
        }
        points.push(pt);
        colors.push(id);
    }
    Instance::new(points, colors, bounds, file.k).map_err(|e| match e {
        InstanceError::NoPoints => FormatError::NoPoints,
        other => FormatError::Syntax(other.to_string()),
    })
}

pub fn emit_instance(inst: &Instance) -> String {
    let cb = inst.color_bounds();
    let file = InstanceFile {
        k: inst.k(),
        colors: cb
            .iter()
            .map(|(_, c)| ColorEntry { name: c.name.clone(), lower: c.bounds.lower, upper: c.bounds.upper })
            .collect(),
        points: inst
            .points()
            .iter()
            .zip(inst.colors())
            .map(|(p, &c)| PointEntry { x: p.x, y: p.y, color: cb.get(c).expect("validated color").name.clone() })
            .collect(),
    };
    toml::to_string(&file).expect("instance serializes")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Optimal,
    Heuristic,
    Infeasible,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Xy {
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverMeta {
    pub mode: String,
    pub elapsed_ms: f64,
    pub radius_levels: usize,
    pub levels_probed: usize,
    pub candidates_evaluated: u64,
    pub covering_candidates: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultDocument {
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub centers: Option<Vec<Xy>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assignment: Option<Vec<usize>>,
    pub solver: SolverMeta,
}

/// Rounds to 12 significant digits.
pub fn sig12(v: f64) -> f64 {
    format!("{v:.11e}").parse().expect("formatted float parses")
}

impl ResultDocument {
    pub fn from_report(report: &SolveReport, mode: &str, elapsed_ms: f64) -> Self {
        Self::from_parts(report.clustering.as_ref(), report.exact, &report.stats, mode, elapsed_ms)
    }

    pub fn from_parts(
        clustering: Option<&Clustering>,
        exact: bool,
        stats: &SearchStats,
        mode: &str,
        elapsed_ms: f64,
    ) -> Self {
        let status = match (clustering, exact) {
            (None, _) => Status::Infeasible,
            (Some(_), true) => Status::Optimal,
            (Some(_), false) => Status::Heuristic,
        };
        ResultDocument {
            status,
            radius: clustering.map(|c| sig12(c.radius)),
            centers: clustering.map(|c| c.centers.iter().map(|p| Xy { x: sig12(p.x), y: sig12(p.y) }).collect()),
            assignment: clustering.map(|c| c.assignment.clone()),
            solver: SolverMeta {
                mode: mode.to_string(),
                elapsed_ms,
                radius_levels: stats.radius_levels,
                levels_probed: stats.levels_probed,
                candidates_evaluated: stats.candidates_evaluated,
                covering_candidates: stats.covering_candidates,
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        let doc: ResultDocument = serde_json::from_str(text).map_err(|e| FormatError::Result(e.to_string()))?;
        let present = [doc.radius.is_some(), doc.centers.is_some(), doc.assignment.is_some()];
        let expect = doc.status != Status::Infeasible;
        if present.iter().any(|&p| p != expect) {
            return Err(FormatError::Result(format!(
                "radius, centers and assignment must be {} for status {:?}",
                if expect { "present" } else { "absent" },
                doc.status
            )));
        }
        Ok(doc)
    }

    /// The clustering carried by a non-infeasible document.
    pub fn clustering(&self) -> Option<Clustering> {
        Some(Clustering {
            centers: self.centers.as_ref()?.iter().map(|c| Point::new(c.x, c.y)).collect(),
            radius: self.radius?,
            assignment: self.assignment.clone()?,
        })
    }
}
