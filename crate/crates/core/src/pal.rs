//! The sliding path window.
//!
//! The window holds `window_segments + 1` points. It is filled once from the
//! start pose, then each time the walker reaches the end of the second
//! segment the oldest point is dropped and one new point is appended.

use serde::{Deserialize, Serialize};

use crate::config::PathConfig;
use crate::error::{Error, Result};
use crate::geometry::{advance_point, direction_between, HeadYaw, Point2};
use crate::prag::{choose_beta, BetaDecision};
use crate::rng::SeededRandomSource;

/// Default distance within which the walker counts as having reached the
/// trigger vertex.
pub const DEFAULT_TRIGGER_TOLERANCE: f64 = 0.01;

/// Index of the window point whose arrival triggers an advance.
pub const TRIGGER_INDEX: usize = 2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathWindow {
    pub points: Vec<Point2>,
    /// `yaws[i]` is the yaw that produced `points[i]`; for the start point it
    /// is the start yaw.
    pub yaws: Vec<HeadYaw>,
    pub generation_index: u64,
}

impl PathWindow {
    /// Builds a window from bare points, deriving each yaw from the segment
    /// that ends at it. The first point takes the first segment's yaw.
    pub fn from_points(points: Vec<Point2>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::TooFewPoints(points.len()));
        }
        let mut yaws = Vec::with_capacity(points.len());
        yaws.push(direction_between(points[0], points[1])?);
        for pair in points.windows(2) {
            yaws.push(direction_between(pair[0], pair[1])?);
        }
        let generation_index = points.len() as u64 - 1;
        Ok(Self {
            points,
            yaws,
            generation_index,
        })
    }

    #[inline]
    pub fn last_point(&self) -> Point2 {
        *self.points.last().expect("window is never empty")
    }

    #[inline]
    pub fn last_yaw(&self) -> HeadYaw {
        *self.yaws.last().expect("window is never empty")
    }

    /// Number of segments in the window.
    #[inline]
    pub fn segment_count(&self) -> usize {
        self.points.len() - 1
    }

    /// Total polyline length.
    pub fn length(&self) -> f64 {
        self.points.windows(2).map(|w| w[0].distance(w[1])).sum()
    }

    /// Arc length from `points[0]` to `points[index]`.
    pub fn arc_to(&self, index: usize) -> f64 {
        self.points[..=index]
            .windows(2)
            .map(|w| w[0].distance(w[1]))
            .sum()
    }

    /// Distance from `p` to the nearest point of the polyline.
    pub fn distance_to(&self, p: Point2) -> f64 {
        self.points
            .windows(2)
            .map(|w| distance_to_segment(p, w[0], w[1]))
            .fold(f64::INFINITY, f64::min)
    }

    fn push(&mut self, decision: &BetaDecision, segment_length: f64) {
        let next = advance_point(self.last_point(), decision.beta_next, segment_length);
        self.points.push(next);
        self.yaws.push(decision.beta_next);
        self.generation_index += 1;
    }
}

fn distance_to_segment(p: Point2, a: Point2, b: Point2) -> f64 {
    let (ex, ez) = (b.x - a.x, b.z - a.z);
    let len2 = ex * ex + ez * ez;
    if len2 == 0.0 {
        return p.distance(a);
    }
    let t = (((p.x - a.x) * ex + (p.z - a.z) * ez) / len2).clamp(0.0, 1.0);
    p.distance(a.lerp(b, t))
}

/// Fills a fresh window from the start pose. Returns the window and the
/// decision behind each generated point, in order.
pub fn init_path(
    config: &PathConfig,
    rng: &mut SeededRandomSource,
) -> Result<(PathWindow, Vec<BetaDecision>)> {
    config.validate()?;
    let mut window = PathWindow {
        points: Vec::with_capacity(config.window_segments + 1),
        yaws: Vec::with_capacity(config.window_segments + 1),
        generation_index: 0,
    };
    window.points.push(config.start_position);
    window.yaws.push(config.start_yaw);
    let mut decisions = Vec::with_capacity(config.window_segments);
    for _ in 0..config.window_segments {
        let decision = choose_beta(window.last_point(), window.last_yaw(), config, rng)?;
        window.push(&decision, config.segment_length);
        decisions.push(decision);
    }
    Ok((window, decisions))
}

/// Drops the oldest point and appends one new point after the tip.
pub fn advance_path(
    window: &PathWindow,
    config: &PathConfig,
    rng: &mut SeededRandomSource,
) -> Result<(PathWindow, BetaDecision)> {
    let decision = choose_beta(window.last_point(), window.last_yaw(), config, rng)?;
    let mut next = PathWindow {
        points: window.points[1..].to_vec(),
        yaws: window.yaws[1..].to_vec(),
        generation_index: window.generation_index,
    };
    next.push(&decision, config.segment_length);
    Ok((next, decision))
}

/// True when the walker is within `tolerance` of the trigger vertex
/// (`points[2]`, the end of the second segment).
pub fn should_advance(walker_position: Point2, window: &PathWindow, tolerance: f64) -> Result<bool> {
    let off = window.distance_to(walker_position);
    if off > tolerance {
        return Err(Error::OffPolyline {
            position: walker_position,
            distance: off,
            tolerance,
        });
    }
    Ok(walker_position.distance(window.points[TRIGGER_INDEX]) <= tolerance)
}
