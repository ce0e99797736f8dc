use thiserror::Error;

use crate::geometry::{HeadYaw, Point2};

/// Errors raised by the path engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("angle is not a finite number: {0}")]
    NonFiniteAngle(f64),

    #[error("coordinate is not finite: ({x}, {z})")]
    NonFinitePoint { x: f64, z: f64 },

    #[error("bounded area dimensions must be finite and positive, got {width_x} x {depth_z}")]
    InvalidArea { width_x: f64, depth_z: f64 },

    #[error("ray length must be finite and positive, got {0}")]
    InvalidRayLength(f64),

    #[error("ray origin ({}, {}) is not strictly inside the area", .0.x, .0.z)]
    OriginOutside(Point2),

    #[error("direction between coincident points is undefined")]
    CoincidentPoints,

    #[error("ray fan parameter j must be at least 1, got {0}")]
    InvalidFan(u32),

    #[error("trapped at ({}, {}) facing {}: both corner-escape rays hit the boundary", .origin.x, .origin.z, .beta_prev.radians())]
    Trapped { origin: Point2, beta_prev: HeadYaw },

    #[error("invalid configuration: {0}")]
    InvalidConfig(#[from] ConfigError),

    #[error("walker at ({}, {}) is {distance} from the path polyline (tolerance {tolerance})", .position.x, .position.z)]
    OffPolyline {
        position: Point2,
        distance: f64,
        tolerance: f64,
    },

    #[error("arc position {arc} is past the end of the polyline (length {length}); the trigger should have fired")]
    PastPolylineEnd { arc: f64, length: f64 },

    #[error("polyline needs at least 2 points, got {0}")]
    TooFewPoints(usize),

    #[error("path reverses on itself at point {0}; the averaged direction vanishes")]
    Reversal(usize),

    #[error("invalid simulation options: {0}")]
    InvalidOptions(String),
}

/// A violated [`PathConfig`](crate::PathConfig) rule. The message names the rule.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("segment_length must be > 0, got {0}")]
    SegmentLength(f64),

    #[error("path_width must be > 0, got {0}")]
    PathWidth(f64),

    #[error("rays (j) must be >= 1, got {0}")]
    Rays(u32),

    #[error("window_segments must be >= 2, got {0}")]
    WindowSegments(usize),

    #[error("walker_speed must be > 0, got {0}")]
    WalkerSpeed(f64),

    #[error(
        "area too small: validity rule min(width_x, depth_z) >= 2*(segment_length + path_width/2) \
         violated ({min_side} < 2*{ray_length} = {required})"
    )]
    AreaTooSmall {
        min_side: f64,
        ray_length: f64,
        required: f64,
    },

    #[error("start position ({}, {}) is not strictly inside the area", .0.x, .0.z)]
    StartOutside(Point2),

    #[error(
        "start clearance along start_yaw must be >= segment_length + path_width/2 = {required}, \
         but the boundary is {available} away"
    )]
    StartClearance { available: f64, required: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
