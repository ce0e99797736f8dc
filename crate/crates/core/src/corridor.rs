//! Corridor walls around the path and panel placement along them.
//!
//! Each path point is pushed sideways by half the path width along the
//! perpendicular of the averaged unit direction of its two adjacent segments.
//! This is a bisector offset, not a miter, so the walls pinch in at turns:
//! a turn of `theta` leaves `path_width * cos(theta / 2)` between them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point2;

/// Average vectors shorter than this mark a path that doubles back on itself.
const REVERSAL_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorridorStrip {
    pub center: Vec<Point2>,
    pub left: Vec<Point2>,
    pub right: Vec<Point2>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WallSegment {
    pub side: Side,
    pub start: Point2,
    pub end: Point2,
    pub length: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PanelLayout {
    pub wall_index: usize,
    /// Distances along the wall from its start.
    pub panel_centers: Vec<f64>,
    pub panel_width: f64,
    pub margin: f64,
}

fn unit(from: Point2, to: Point2) -> (f64, f64) {
    let (dx, dz) = (to.x - from.x, to.z - from.z);
    let n = dx.hypot(dz);
    (dx / n, dz / n)
}

/// Right-hand perpendicular of a heading in the x/z plane: +z maps to +x.
#[inline]
fn right_of((dx, dz): (f64, f64)) -> (f64, f64) {
    (dz, -dx)
}

pub fn corridor_points(center: &[Point2], path_width: f64) -> Result<CorridorStrip> {
    let n = center.len();
    if n < 2 {
        return Err(Error::TooFewPoints(n));
    }
    if center.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::CoincidentPoints);
    }
    let half = path_width / 2.0;
    let mut left = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    for i in 0..n {
        let dir = if i == 0 {
            unit(center[0], center[1])
        } else if i == n - 1 {
            unit(center[n - 2], center[n - 1])
        } else {
            let (ix, iz) = unit(center[i - 1], center[i]);
            let (ox, oz) = unit(center[i], center[i + 1]);
            let (ax, az) = (ix + ox, iz + oz);
            let norm = ax.hypot(az);
            if norm < REVERSAL_EPS {
                return Err(Error::Reversal(i));
            }
            (ax / norm, az / norm)
        };
        let (px, pz) = right_of(dir);
        let p = center[i];
        right.push(Point2::new(p.x + half * px, p.z + half * pz));
        left.push(Point2::new(p.x - half * px, p.z - half * pz));
    }
    Ok(CorridorStrip {
        center: center.to_vec(),
        left,
        right,
    })
}

impl CorridorStrip {
    /// Smallest wall-to-wall separation measured perpendicular to a path
    /// segment, taken at every wall vertex against each adjacent segment.
    /// Equals the path width on straight runs and shrinks at turns.
    pub fn min_clearance(&self) -> f64 {
        let n = self.center.len();
        let mut min = f64::INFINITY;
        for s in 0..n - 1 {
            let (a, b) = (self.center[s], self.center[s + 1]);
            let (px, pz) = right_of(unit(a, b));
            for i in [s, s + 1] {
                let offset = |q: Point2| (q.x - self.center[i].x) * px + (q.z - self.center[i].z) * pz;
                let sep = offset(self.right[i]) - offset(self.left[i]);
                min = min.min(sep);
            }
        }
        min
    }
}

/// Left wall segments followed by right wall segments.
pub fn wall_segments(strip: &CorridorStrip) -> Vec<WallSegment> {
    let make = |side, pts: &[Point2]| {
        pts.windows(2)
            .map(|w| WallSegment {
                side,
                start: w[0],
                end: w[1],
                length: w[0].distance(w[1]),
            })
            .collect::<Vec<_>>()
    };
    let mut out = make(Side::Left, &strip.left);
    out.extend(make(Side::Right, &strip.right));
    out
}

/// Lays out as many `panel_width` panels as fit on a wall with `margin`
/// between neighbours and at least `margin` at each end, centered as a group.
pub fn gallery_layout(wall_length: f64, panel_width: f64, margin: f64) -> PanelLayout {
    // Absorbs representation error in e.g. (0.7 - 0.1) / 0.6.
    const FIT_EPS: f64 = 1e-9;
    let fit = ((wall_length - margin) / (panel_width + margin) + FIT_EPS).floor();
    let count = if fit.is_finite() && fit > 0.0 { fit as usize } else { 0 };
    let mut panel_centers = Vec::with_capacity(count);
    if count > 0 {
        let group = count as f64 * panel_width + (count - 1) as f64 * margin;
        let start = (wall_length - group) / 2.0;
        for k in 0..count {
            panel_centers.push(start + panel_width / 2.0 + k as f64 * (panel_width + margin));
        }
    }
    PanelLayout {
        wall_index: 0,
        panel_centers,
        panel_width,
        margin,
    }
}

/// Panel layout for every wall segment of `strip`, indexed as in
/// [`wall_segments`].
pub fn layout_walls(strip: &CorridorStrip, panel_width: f64, margin: f64) -> Vec<PanelLayout> {
    wall_segments(strip)
        .iter()
        .enumerate()
        .map(|(wall_index, wall)| PanelLayout {
            wall_index,
            ..gallery_layout(wall.length, panel_width, margin)
        })
        .collect()
}
