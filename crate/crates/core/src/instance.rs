//! Problem instances and clusterings.

use thiserror::Error;

use crate::geometry::Point;

/// Inclusive `[lower, upper]` bound on a per-cluster count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bounds {
    pub lower: usize,
    pub upper: usize,
}

impl Bounds {
    pub const fn new(lower: usize, upper: usize) -> Self {
        Bounds { lower, upper }
    }

    pub fn contains(&self, count: usize) -> bool {
        self.lower <= count && count <= self.upper
    }

    /// Whether `total` items can be split into `k` groups each within bounds.
    pub fn admits_total(&self, total: usize, k: usize) -> bool {
        self.lower.saturating_mul(k) <= total && total <= self.upper.saturating_mul(k)
    }
}

/// Index of a color in an instance's [`ColorBounds`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorSpec {
    pub name: String,
    pub bounds: Bounds,
}

/// Per-color, per-cluster count bounds, in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ColorBounds {
    colors: Vec<ColorSpec>,
}

impl ColorBounds {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: impl Into<String>, bounds: Bounds) -> Result<ColorId, InstanceError> {
        let name = name.into();
        if self.lookup(&name).is_some() {
            return Err(InstanceError::DuplicateColor(name));
        }
        if bounds.lower > bounds.upper {
            return Err(InstanceError::InvertedBounds { color: name, lower: bounds.lower, upper: bounds.upper });
        }
        self.colors.push(ColorSpec { name, bounds });
        Ok(ColorId(self.colors.len() - 1))
    }

    pub fn lookup(&self, name: &str) -> Option<ColorId> {
        self.colors.iter().position(|c| c.name == name).map(ColorId)
    }

    pub fn get(&self, id: ColorId) -> Option<&ColorSpec> {
        self.colors.get(id.0)
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (ColorId, &ColorSpec)> {
        self.colors.iter().enumerate().map(|(i, c)| (ColorId(i), c))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("instance has no points")]
    NoPoints,
    #[error("color {0:?} declared twice")]
    DuplicateColor(String),
    #[error("color {color:?}: lower bound {lower} exceeds upper bound {upper}")]
    InvertedBounds { color: String, lower: usize, upper: usize },
    #[error("point {index} has color id {color} but only {declared} colors are declared")]
    UnknownColor { index: usize, color: usize, declared: usize },
    #[error("point {index} has a non-finite coordinate")]
    NonFinite { index: usize },
    #[error("{points} points but {colors} color labels")]
    LengthMismatch { points: usize, colors: usize },
}

/// Colored points, per-color bounds and the number of clusters.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    points: Vec<Point>,
    colors: Vec<ColorId>,
    bounds: ColorBounds,
    k: usize,
}

impl Instance {
    pub fn new(
        points: Vec<Point>,
        colors: Vec<ColorId>,
        bounds: ColorBounds,
        k: usize,
    ) -> Result<Self, InstanceError> {
        if k == 0 {
            return Err(InstanceError::ZeroK);
        }
        if points.is_empty() {
            return Err(InstanceError::NoPoints);
        }
        if points.len() != colors.len() {
            return Err(InstanceError::LengthMismatch { points: points.len(), colors: colors.len() });
        }
        if let Some(index) = points.iter().position(|p| !p.is_finite()) {
            return Err(InstanceError::NonFinite { index });
        }
        if let Some((index, c)) = colors.iter().enumerate().find(|(_, c)| c.0 >= bounds.len()) {
            return Err(InstanceError::UnknownColor { index, color: c.0, declared: bounds.len() });
        }
        Ok(Instance { points, colors, bounds, k })
    }

    /// All points share one color named `"default"` with bounds `bounds`.
    pub fn single_color(points: Vec<Point>, k: usize, bounds: Bounds) -> Result<Self, InstanceError> {
        let mut cb = ColorBounds::new();
        let id = cb.push("default", bounds)?;
        let colors = vec![id; points.len()];
        Instance::new(points, colors, cb, k)
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn colors(&self) -> &[ColorId] {
        &self.colors
    }

    pub fn color_bounds(&self) -> &ColorBounds {
        &self.bounds
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Indices of the points of each color, by color id.
    pub fn points_by_color(&self) -> Vec<Vec<usize>> {
        let mut groups = vec![Vec::new(); self.bounds.len()];
        for (i, c) in self.colors.iter().enumerate() {
            groups[c.0].push(i);
        }
        groups
    }

    /// Necessary counting condition: each color's total fits `k` clusters.
    pub fn counts_admissible(&self) -> bool {
        self.points_by_color()
            .iter()
            .zip(self.bounds.iter())
            .all(|(group, (_, spec))| spec.bounds.admits_total(group.len(), self.k))
    }

    /// Same instance with every point mapped through `f`.
    pub fn map_points(&self, f: impl Fn(Point) -> Point) -> Instance {
        Instance { points: self.points.iter().map(|&p| f(p)).collect(), ..self.clone() }
    }
}

/// Centers, common radius and the cluster index of every point.
#[derive(Debug, Clone, PartialEq)]
pub struct Clustering {
    pub centers: Vec<Point>,
    pub radius: f64,
    pub assignment: Vec<usize>,
}
