use serde::{Deserialize, Serialize};

use crate::error::ConfigError;
use crate::geometry::{BoundedArea, HeadYaw, Point2};

/// Everything the path engine needs to run. Lengths share one unit, which
/// the engine treats as meters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathConfig {
    pub area: BoundedArea,
    pub segment_length: f64,
    pub path_width: f64,
    /// Fan resolution: `rays + 1` rays span the half-plane ahead.
    pub rays: u32,
    pub window_segments: usize,
    pub start_position: Point2,
    pub start_yaw: HeadYaw,
    pub walker_speed: f64,
    pub seed: u64,
}

impl PathConfig {
    pub const DEFAULT_SEGMENT_LENGTH: f64 = 1.3;
    pub const DEFAULT_PATH_WIDTH: f64 = 1.2;
    pub const DEFAULT_RAYS: u32 = 4;
    pub const DEFAULT_WINDOW_SEGMENTS: usize = 3;
    pub const DEFAULT_WALKER_SPEED: f64 = 1.4;

    /// The 24 x 17 room with a 1.3 segment and 1.2 wide path, starting at
    /// the center facing +z.
    pub fn prototype(seed: u64) -> Self {
        let area = BoundedArea::new(24.0, 17.0).expect("static area is valid");
        Self::with_area(area, seed)
    }

    /// Prototype defaults in `area`, starting at its center facing +z.
    pub fn with_area(area: BoundedArea, seed: u64) -> Self {
        Self {
            area,
            segment_length: Self::DEFAULT_SEGMENT_LENGTH,
            path_width: Self::DEFAULT_PATH_WIDTH,
            rays: Self::DEFAULT_RAYS,
            window_segments: Self::DEFAULT_WINDOW_SEGMENTS,
            start_position: area.center(),
            start_yaw: HeadYaw::ZERO,
            walker_speed: Self::DEFAULT_WALKER_SPEED,
            seed,
        }
    }

    /// Length of every boundary-probe ray: `segment_length + path_width / 2`.
    #[inline]
    pub fn ray_length(&self) -> f64 {
        self.segment_length + self.path_width / 2.0
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.segment_length) {
            return Err(ConfigError::SegmentLength(self.segment_length));
        }
        if !positive(self.path_width) {
            return Err(ConfigError::PathWidth(self.path_width));
        }
        if self.rays < 1 {
            return Err(ConfigError::Rays(self.rays));
        }
        if self.window_segments < 2 {
            return Err(ConfigError::WindowSegments(self.window_segments));
        }
        if !positive(self.walker_speed) {
            return Err(ConfigError::WalkerSpeed(self.walker_speed));
        }
        let ray_length = self.ray_length();
        let required = 2.0 * ray_length;
        if self.area.min_side() < required {
            return Err(ConfigError::AreaTooSmall {
                min_side: self.area.min_side(),
                ray_length,
                required,
            });
        }
        if !self.area.contains(self.start_position) {
            return Err(ConfigError::StartOutside(self.start_position));
        }
        let available = self
            .area
            .distance_to_boundary(self.start_position, self.start_yaw)
            .expect("start position checked above");
        if available < ray_length {
            return Err(ConfigError::StartClearance {
                available,
                required: ray_length,
            });
        }
        Ok(())
    }
}
