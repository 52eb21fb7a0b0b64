//! Static SVG rendering of an instance and (optionally) its clustering.

use std::fmt::Write;

use fairdisk::{Clustering, Instance, Point};

const PALETTE: [&str; 8] = ["#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"];
const SIZE: f64 = 600.0;
const MARGIN: f64 = 30.0;
const LEGEND: f64 = 24.0;

/// Maps plane coordinates to SVG pixels (y flipped, aspect preserved).
struct Frame {
    min_x: f64,
    max_y: f64,
    scale: f64,
    width: f64,
    height: f64,
}

impl Frame {
    fn fit(points: &[Point], disks: &[(Point, f64)]) -> Frame {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        let extents = points.iter().map(|&p| (p, 0.0)).chain(disks.iter().copied());
        for (c, r) in extents {
            lo = Point::new(lo.x.min(c.x - r), lo.y.min(c.y - r));
            hi = Point::new(hi.x.max(c.x + r), hi.y.max(c.y + r));
        }
        let span = (hi.x - lo.x).max(hi.y - lo.y).max(1e-9);
        let scale = (SIZE - 2.0 * MARGIN) / span;
        Frame {
            min_x: lo.x,
            max_y: hi.y,
            scale,
            width: (hi.x - lo.x) * scale + 2.0 * MARGIN,
            height: (hi.y - lo.y) * scale + 2.0 * MARGIN + LEGEND,
        }
    }

    fn map(&self, p: Point) -> (f64, f64) {
        (MARGIN + (p.x - self.min_x) * self.scale, MARGIN + (self.max_y - p.y) * self.scale)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// One `circle.cluster` outline per cluster and one `circle.point` dot per
/// point, colored by the point's color. Without a clustering only the points
/// are drawn, captioned "infeasible".
pub fn render_svg(inst: &Instance, clustering: Option<&Clustering>) -> String {
    let disks: Vec<(Point, f64)> =
        clustering.map(|c| c.centers.iter().map(|&p| (p, c.radius)).collect()).unwrap_or_default();
    let frame = Frame::fit(inst.points(), &disks);
    let mut svg = String::new();
    let (w, h) = (frame.width, frame.height);
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.2}" height="{h:.2}" viewBox="0 0 {w:.2} {h:.2}">"#
    )
    .unwrap();
    writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();

    for (i, &(c, r)) in disks.iter().enumerate() {
        let (cx, cy) = frame.map(c);
        writeln!(
            svg,
            r##"<circle class="cluster" data-cluster="{i}" cx="{cx:.3}" cy="{cy:.3}" r="{:.3}" fill="none" stroke="#444444" stroke-width="1.5"/>"##,
            r * frame.scale
        )
        .unwrap();
    }

    let colors = inst.color_bounds();
    for (i, (&p, &color)) in inst.points().iter().zip(inst.colors()).enumerate() {
        let (cx, cy) = frame.map(p);
        let name = escape(&colors.get(color).expect("validated color").name);
        writeln!(
            svg,
            r#"<circle class="point" cx="{cx:.3}" cy="{cy:.3}" r="4" fill="{}"><title>point {i} ({name})</title></circle>"#,
            PALETTE[color.0 % PALETTE.len()]
        )
        .unwrap();
    }

    let mut x = MARGIN;
    let y = h - LEGEND / 2.0;
    for (id, spec) in colors.iter() {
        let name = escape(&spec.name);
        writeln!(
            svg,
            r#"<text x="{x:.2}" y="{y:.2}" font-family="sans-serif" font-size="12" fill="{}">{name} [{}, {}]</text>"#,
            PALETTE[id.0 % PALETTE.len()],
            spec.bounds.lower,
            spec.bounds.upper
        )
        .unwrap();
        x += 90.0;
    }
    let caption = match clustering {
        Some(c) => format!("k = {}, radius = {:.6}", inst.k(), c.radius),
        None => "infeasible".to_string(),
    };
    writeln!(
        svg,
        r#"<text class="caption" x="{MARGIN:.2}" y="{:.2}" font-family="sans-serif" font-size="14">{caption}</text>"#,
        MARGIN / 2.0 + 5.0
    )
    .unwrap();
    svg.push_str("</svg>\n");
    svg
}
