//! On-disk JSON trace format.
//!
//! A trace file is a single JSON object:
//!
//! | field            | content                                                  |
//! |------------------|----------------------------------------------------------|
//! | `schema_version` | semver string, currently `1.0.0`                         |
//! | `config`         | the [`PathConfig`] the run used                          |
//! | `options`        | the [`SimOptions`] (stop condition, dt, sampling)        |
//! | `events`         | every start / advance / corner-escape event, in order    |
//! | `samples`        | walker states, every `options.sample_every`-th step      |
//! | `totals`         | pal / prag totals, counts, minimum corridor clearance    |
//!
//! Numbers are written in their shortest round-trip form, so reading a trace
//! back yields bit-identical values.

use std::fs;
use std::path::{Path, PathBuf};

use pragpal_core::{
    corridor_points, EventKind, PathConfig, PathWindow, Point2, SimOptions, Totals, TraceEvent,
    WalkTrace, WalkerState,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const SCHEMA_VERSION: &str = "1.0.0";

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: malformed trace: {source}")]
    Parse {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("{path}: unsupported schema_version {found:?} (expected {SCHEMA_VERSION})")]
    Version { path: PathBuf, found: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceFile {
    pub schema_version: String,
    pub config: PathConfig,
    pub options: SimOptions,
    pub events: Vec<TraceEvent>,
    pub samples: Vec<WalkerState>,
    pub totals: Totals,
}

impl From<WalkTrace> for TraceFile {
    fn from(trace: WalkTrace) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            config: trace.config,
            options: trace.options,
            events: trace.events,
            samples: trace.samples,
            totals: trace.totals,
        }
    }
}

/// `major.minor.patch` with numeric parts.
pub fn is_semver(v: &str) -> bool {
    let parts: Vec<&str> = v.split('.').collect();
    parts.len() == 3
        && parts
            .iter()
            .all(|p| !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit()))
}

fn supported(v: &str) -> bool {
    is_semver(v) && v.split('.').next() == SCHEMA_VERSION.split('.').next()
}

impl TraceFile {
    /// Builds a walker-free trace whose windows slide one point at a time
    /// along `path`. Decisions are left empty; useful for replaying a
    /// recorded or hand-drawn center line.
    pub fn from_center_path(config: PathConfig, path: &[Point2]) -> pragpal_core::Result<Self> {
        let span = config.window_segments + 1;
        if path.len() < span {
            return Err(pragpal_core::Error::TooFewPoints(path.len()));
        }
        let mut events = Vec::with_capacity(path.len() - span + 1);
        let mut min_clearance = f64::INFINITY;
        for (k, pts) in path.windows(span).enumerate() {
            let mut window = PathWindow::from_points(pts.to_vec())?;
            window.generation_index = (k + config.window_segments) as u64;
            let clearance = corridor_points(pts, config.path_width)?.min_clearance();
            min_clearance = min_clearance.min(clearance);
            events.push(TraceEvent {
                kind: if k == 0 { EventKind::Start } else { EventKind::Advance },
                time: 0.0,
                distance_walked: 0.0,
                window,
                decisions: Vec::new(),
                prag_units: 0,
                min_clearance: clearance,
            });
        }
        Ok(Self {
            schema_version: SCHEMA_VERSION.to_string(),
            options: SimOptions::default(),
            samples: Vec::new(),
            totals: Totals {
                pal_units: 0.0,
                prag_units: 0,
                advance_count: events.len() as u64 - 1,
                corner_escape_count: 0,
                min_corridor_clearance: min_clearance,
                steps: 0,
                elapsed: 0.0,
            },
            events,
            config,
        })
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("trace values are finite");
        out.push('\n');
        out
    }

    /// Parses a trace; `origin` is only used in error messages.
    pub fn from_json(text: &str, origin: &Path) -> Result<Self, TraceError> {
        let trace: TraceFile = serde_json::from_str(text).map_err(|source| TraceError::Parse {
            path: origin.to_path_buf(),
            source,
        })?;
        if !supported(&trace.schema_version) {
            return Err(TraceError::Version {
                path: origin.to_path_buf(),
                found: trace.schema_version,
            });
        }
        Ok(trace)
    }

    pub fn read(path: &Path) -> Result<Self, TraceError> {
        let text = fs::read_to_string(path).map_err(|source| TraceError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text, path)
    }

    pub fn write(&self, path: &Path) -> Result<(), TraceError> {
        fs::write(path, self.to_json()).map_err(|source| TraceError::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}
