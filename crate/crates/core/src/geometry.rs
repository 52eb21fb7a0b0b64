//! Planar primitives: points, disks, circumcircles, circle intersections and
//! the minimum enclosing disk.
//!
//! Every comparison that can be affected by rounding goes through a
//! [`Tolerance`], so coverage, tangency and collinearity decisions are made
//! consistently across the crate.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("points are collinear or coincident; no finite circumcircle")]
    Degenerate,
    #[error("point set is empty")]
    Empty,
}

/// Absolute-plus-relative slack used for all geometric comparisons.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub eps: f64,
}

impl Tolerance {
    pub const DEFAULT_EPS: f64 = 1e-9;

    pub fn new(eps: f64) -> Self {
        assert!(eps.is_finite() && eps >= 0.0, "tolerance must be finite and non-negative");
        Tolerance { eps }
    }

    /// Allowed discrepancy when comparing magnitudes `a` and `b`.
    #[inline]
    pub fn slack(&self, a: f64, b: f64) -> f64 {
        self.eps + self.eps * a.abs().max(b.abs())
    }

    /// `a <= b` up to slack.
    #[inline]
    pub fn le(&self, a: f64, b: f64) -> bool {
        a <= b + self.slack(a, b)
    }

    #[inline]
    pub fn eq(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.slack(a, b)
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { eps: Self::DEFAULT_EPS }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dist(&self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn translate(&self, dx: f64, dy: f64) -> Point {
        Point::new(self.x + dx, self.y + dy)
    }

    /// Rotation about the origin by `angle` radians.
    pub fn rotate(&self, angle: f64) -> Point {
        let (s, c) = angle.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    fn midpoint(&self, other: Point) -> Point {
        Point::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub center: Point,
    pub radius: f64,
}

impl Disk {
    pub fn new(center: Point, radius: f64) -> Self {
        debug_assert!(radius >= 0.0 && radius.is_finite());
        Disk { center, radius }
    }

    pub fn covers(&self, p: Point, tol: Tolerance) -> bool {
        tol.le(self.center.dist(p), self.radius)
    }
}

pub fn dist(a: Point, b: Point) -> f64 {
    a.dist(b)
}

pub fn covers(d: &Disk, p: Point, tol: Tolerance) -> bool {
    d.covers(p, tol)
}

/// Disk whose boundary passes through `a`, `b` and `c`.
///
/// The collinearity test compares twice the signed triangle area against
/// `eps * scale^2`, where `scale` is the larger side of the bounding box.
pub fn circumdisk(a: Point, b: Point, c: Point, tol: Tolerance) -> Result<Disk, GeometryError> {
    let min_x = a.x.min(b.x).min(c.x);
    let max_x = a.x.max(b.x).max(c.x);
    let min_y = a.y.min(b.y).min(c.y);
    let max_y = a.y.max(b.y).max(c.y);
    let scale = (max_x - min_x).max(max_y - min_y);

    // Work relative to `a` to limit cancellation.
    let (bx, by) = (b.x - a.x, b.y - a.y);
    let (cx, cy) = (c.x - a.x, c.y - a.y);
    let cross = bx * cy - by * cx;
    if scale == 0.0 || cross.abs() <= tol.eps * scale * scale {
        return Err(GeometryError::Degenerate);
    }

    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    let d = 2.0 * cross;
    let ux = (cy * b2 - by * c2) / d;
    let uy = (bx * c2 - cx * b2) / d;
    let center = Point::new(a.x + ux, a.y + uy);
    // Average the three distances; they agree up to rounding.
    let radius = (center.dist(a) + center.dist(b) + center.dist(c)) / 3.0;
    Ok(Disk::new(center, radius))
}

pub fn diametral_disk(a: Point, b: Point) -> Disk {
    Disk::new(a.midpoint(b), a.dist(b) / 2.0)
}

/// Centers of the radius-`r` circles passing through both `a` and `b`.
///
/// Returns two centers when the points are closer than `2r`, one (the
/// midpoint) at tangency, and none when they are farther apart. Coincident
/// points with `r > 0` admit a whole circle of centers; none is returned
/// since the below-point center already represents that case.
pub fn centers_through_pair(a: Point, b: Point, r: f64, tol: Tolerance) -> Vec<Point> {
    let d = a.dist(b);
    if tol.eq(d, 2.0 * r) {
        return vec![a.midpoint(b)];
    }
    if d > 2.0 * r || tol.eq(d, 0.0) {
        return Vec::new();
    }
    let half = d / 2.0;
    let h = (r * r - half * half).max(0.0).sqrt();
    let mid = a.midpoint(b);
    // Unit normal to ab.
    let nx = -(b.y - a.y) / d;
    let ny = (b.x - a.x) / d;
    vec![
        Point::new(mid.x + h * nx, mid.y + h * ny),
        Point::new(mid.x - h * nx, mid.y - h * ny),
    ]
}

/// Center of the radius-`r` disk that has `p` as its topmost boundary point.
pub fn center_below_point(p: Point, r: f64) -> Point {
    Point::new(p.x, p.y - r)
}

/// Smallest disk covering `points` (Welzl's incremental construction).
pub fn min_enclosing_disk(points: &[Point], tol: Tolerance) -> Result<Disk, GeometryError> {
    let (&first, _) = points.split_first().ok_or(GeometryError::Empty)?;
    let mut disk = Disk::new(first, 0.0);
    for i in 1..points.len() {
        if disk.covers(points[i], tol) {
            continue;
        }
        disk = Disk::new(points[i], 0.0);
        for j in 0..i {
            if disk.covers(points[j], tol) {
                continue;
            }
            disk = diametral_disk(points[i], points[j]);
            for l in 0..j {
                if disk.covers(points[l], tol) {
                    continue;
                }
                disk = circumdisk(points[i], points[j], points[l], tol)
                    .unwrap_or_else(|_| widest_pair(points[i], points[j], points[l]));
            }
        }
    }
    Ok(disk)
}

fn widest_pair(a: Point, b: Point, c: Point) -> Disk {
    [diametral_disk(a, b), diametral_disk(a, c), diametral_disk(b, c)]
        .into_iter()
        .max_by(|p, q| p.radius.total_cmp(&q.radius))
        .unwrap()
}
