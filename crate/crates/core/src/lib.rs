//! Limitless walking paths inside a bounded rectangle.
//!
//! A short polyline of fixed-length segments is kept ahead of the walker.
//! Each new segment direction is picked by casting a fan of probe rays from
//! the path tip and steering away from any boundary they reach
//! ([`prag`]). The window slides forward as the walker progresses ([`pal`]),
//! corridor walls are offset around it ([`corridor`]), and [`sim`] drives a
//! constant-speed virtual walker through the whole loop.
//!
//! ```
//! use pragpal_core::{run_simulation, PathConfig, SimOptions, StopCondition};
//!
//! let config = PathConfig::prototype(42);
//! let options = SimOptions {
//!     stop: StopCondition::Advances { count: 100 },
//!     ..SimOptions::default()
//! };
//! let trace = run_simulation(&config, &options).unwrap();
//! assert_eq!(trace.totals.advance_count, 100);
//! assert!(trace.samples.iter().all(|s| config.area.contains(s.position)));
//! ```

pub mod config;
pub mod corridor;
pub mod error;
pub mod geometry;
pub mod pal;
pub mod prag;
pub mod rng;
pub mod sim;

pub use config::PathConfig;
pub use corridor::{
    corridor_points, gallery_layout, layout_walls, wall_segments, CorridorStrip, PanelLayout, Side,
    WallSegment,
};
pub use error::{ConfigError, Error, Result};
pub use geometry::{
    advance_point, direction_between, ray_boundary_hit, wrap_angle, BoundedArea, HeadYaw, Point2, Ray,
};
pub use pal::{advance_path, init_path, should_advance, PathWindow, DEFAULT_TRIGGER_TOLERANCE};
pub use prag::{choose_beta, ray_fan, BetaDecision, CaseTag, EscapeSide, RayFanResult};
pub use rng::SeededRandomSource;
pub use sim::{
    run_simulation, step_walker, EventKind, SimOptions, StopCondition, Totals, TraceEvent, WalkTrace,
    WalkerState,
};
