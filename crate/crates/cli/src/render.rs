//! Top-down SVG view of a trace.
//!
//! +z points up the page. The drawing holds the boundary rectangle, the
//! full center path reconstructed from the event log, the live window of the
//! last event, both corridor walls around the full path, the start marker and
//! the last walker position.

use std::fmt::Write as _;

use pragpal_core::{corridor_points, Point2};

use crate::trace::TraceFile;

#[derive(Debug, Clone, Copy)]
pub struct RenderOptions {
    /// Pixels per unit of length.
    pub scale: f64,
    /// Padding around the boundary, in pixels.
    pub padding: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self {
            scale: 40.0,
            padding: 20.0,
        }
    }
}

/// Center path from the first window plus each appended tip.
pub fn history(trace: &TraceFile) -> Vec<Point2> {
    let mut events = trace.events.iter();
    let Some(first) = events.next() else {
        return Vec::new();
    };
    let mut path = first.window.points.clone();
    path.extend(events.map(|e| e.window.last_point()));
    path
}

struct Canvas {
    scale: f64,
    padding: f64,
    depth: f64,
}

impl Canvas {
    fn map(&self, p: Point2) -> (f64, f64) {
        (
            self.padding + p.x * self.scale,
            self.padding + (self.depth - p.z) * self.scale,
        )
    }

    fn points_attr(&self, pts: &[Point2]) -> String {
        let mut s = String::with_capacity(pts.len() * 16);
        for (i, p) in pts.iter().enumerate() {
            let (x, y) = self.map(*p);
            if i > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{x:.3},{y:.3}");
        }
        s
    }
}

pub fn render_svg(trace: &TraceFile, options: &RenderOptions) -> pragpal_core::Result<String> {
    let area = trace.config.area;
    let canvas = Canvas {
        scale: options.scale,
        padding: options.padding,
        depth: area.depth_z(),
    };
    let width = area.width_x() * options.scale + 2.0 * options.padding;
    let height = area.depth_z() * options.scale + 2.0 * options.padding;
    let stroke = (options.scale / 40.0).max(0.5);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.3}" height="{height:.3}" viewBox="0 0 {width:.3} {height:.3}">"#
    );
    let _ = writeln!(
        svg,
        r##"<rect class="boundary" x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="none" stroke="#222" stroke-width="{:.3}"/>"##,
        options.padding,
        options.padding,
        area.width_x() * options.scale,
        area.depth_z() * options.scale,
        2.0 * stroke
    );

    let path = history(trace);
    if path.len() >= 2 {
        let strip = corridor_points(&path, trace.config.path_width)?;
        for (class, pts) in [("wall wall-left", &strip.left), ("wall wall-right", &strip.right)] {
            let _ = writeln!(
                svg,
                r##"<polyline class="{class}" points="{}" fill="none" stroke="#8a6d3b" stroke-width="{stroke:.3}"/>"##,
                canvas.points_attr(pts)
            );
        }
        let _ = writeln!(
            svg,
            r##"<polyline class="path-history" points="{}" fill="none" stroke="#9aa" stroke-width="{stroke:.3}"/>"##,
            canvas.points_attr(&path)
        );
        if let Some(last) = trace.events.last() {
            let _ = writeln!(
                svg,
                r##"<polyline class="path-window" points="{}" fill="none" stroke="#d33" stroke-width="{:.3}"/>"##,
                canvas.points_attr(&last.window.points),
                2.0 * stroke
            );
        }
    }

    let (sx, sy) = canvas.map(trace.config.start_position);
    let _ = writeln!(
        svg,
        r##"<circle class="start" cx="{sx:.3}" cy="{sy:.3}" r="{:.3}" fill="#2a2"/>"##,
        4.0 * stroke
    );
    if !trace.events.is_empty() {
        if let Some(walker) = trace.samples.last() {
            let (wx, wy) = canvas.map(walker.position);
            let _ = writeln!(
                svg,
                r##"<circle class="walker" cx="{wx:.3}" cy="{wy:.3}" r="{:.3}" fill="#24c"/>"##,
                4.0 * stroke
            );
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
