//! Headless walker: a virtual participant walks the window polyline at a
//! constant speed and the window slides whenever the trigger vertex is
//! reached.

use serde::{Deserialize, Serialize};

use crate::config::PathConfig;
use crate::corridor::corridor_points;
use crate::error::{Error, Result};
use crate::geometry::{HeadYaw, Point2};
use crate::pal::{advance_path, init_path, PathWindow, DEFAULT_TRIGGER_TOLERANCE, TRIGGER_INDEX};
use crate::prag::{BetaDecision, CaseTag};
use crate::rng::SeededRandomSource;

/// One frame at 72 Hz.
pub const DEFAULT_DT: f64 = 1.0 / 72.0;

/// Five minutes.
pub const DEFAULT_DURATION: f64 = 300.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WalkerState {
    pub position: Point2,
    pub heading: HeadYaw,
    /// Distance from the first point of the current window.
    pub arc_position: f64,
    pub time: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StopCondition {
    Duration { seconds: f64 },
    Advances { count: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimOptions {
    pub stop: StopCondition,
    pub dt: f64,
    pub trigger_tolerance: f64,
    /// Keep every n-th walker sample (the initial state is always kept).
    pub sample_every: u64,
}

impl Default for SimOptions {
    fn default() -> Self {
        Self {
            stop: StopCondition::Duration {
                seconds: DEFAULT_DURATION,
            },
            dt: DEFAULT_DT,
            trigger_tolerance: DEFAULT_TRIGGER_TOLERANCE,
            sample_every: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    Start,
    Advance,
    CornerEscape,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub kind: EventKind,
    pub time: f64,
    /// Pal units walked when the event fired.
    pub distance_walked: f64,
    /// Window after the event.
    pub window: PathWindow,
    /// One decision per point generated by this event.
    pub decisions: Vec<BetaDecision>,
    pub prag_units: u32,
    pub min_clearance: f64,
}

impl TraceEvent {
    pub fn generation_index(&self) -> u64 {
        self.window.generation_index
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Totals {
    pub pal_units: f64,
    pub prag_units: u64,
    pub advance_count: u64,
    pub corner_escape_count: u64,
    pub min_corridor_clearance: f64,
    pub steps: u64,
    pub elapsed: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WalkTrace {
    pub config: PathConfig,
    pub options: SimOptions,
    pub events: Vec<TraceEvent>,
    pub samples: Vec<WalkerState>,
    pub totals: Totals,
}

/// Moves the walker `speed * dt` further along `window`.
pub fn step_walker(state: &WalkerState, window: &PathWindow, dt: f64, speed: f64) -> Result<WalkerState> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::InvalidOptions(format!("dt must be > 0, got {dt}")));
    }
    if !(speed.is_finite() && speed > 0.0) {
        return Err(Error::InvalidOptions(format!("speed must be > 0, got {speed}")));
    }
    let arc = state.arc_position + speed * dt;
    let (position, heading) = locate(window, arc)?;
    Ok(WalkerState {
        position,
        heading,
        arc_position: arc,
        time: state.time + dt,
    })
}

/// Point and segment heading at arc length `arc` along the window.
fn locate(window: &PathWindow, arc: f64) -> Result<(Point2, HeadYaw)> {
    let segments = window.segment_count();
    let mut start = 0.0;
    for i in 0..segments {
        let (a, b) = (window.points[i], window.points[i + 1]);
        let len = a.distance(b);
        let end = start + len;
        if arc < end || (i == segments - 1 && arc <= end) {
            let t = ((arc - start) / len).max(0.0);
            return Ok((a.lerp(b, t), window.yaws[i + 1]));
        }
        start = end;
    }
    Err(Error::PastPolylineEnd { arc, length: start })
}

fn window_clearance(window: &PathWindow, path_width: f64) -> Result<f64> {
    Ok(corridor_points(&window.points, path_width)?.min_clearance())
}

fn validate_options(config: &PathConfig, options: &SimOptions) -> Result<()> {
    let segment_time = config.segment_length / config.walker_speed;
    if !(options.dt.is_finite() && options.dt > 0.0) {
        return Err(Error::InvalidOptions(format!("dt must be > 0, got {}", options.dt)));
    }
    if options.dt >= segment_time {
        return Err(Error::InvalidOptions(format!(
            "dt = {} must be below segment_length / walker_speed = {segment_time}, or triggers would be skipped",
            options.dt
        )));
    }
    let tol = options.trigger_tolerance;
    if !(tol.is_finite() && tol >= 0.0 && tol < config.segment_length / 2.0) {
        return Err(Error::InvalidOptions(format!(
            "trigger_tolerance must be in [0, segment_length/2), got {tol}"
        )));
    }
    if options.sample_every == 0 {
        return Err(Error::InvalidOptions("sample_every must be >= 1".into()));
    }
    if let StopCondition::Duration { seconds } = options.stop {
        if !(seconds.is_finite() && seconds >= 0.0) {
            return Err(Error::InvalidOptions(format!("duration must be >= 0, got {seconds}")));
        }
    }
    Ok(())
}

/// Runs one walker from the configured start pose until the stop condition.
pub fn run_simulation(config: &PathConfig, options: &SimOptions) -> Result<WalkTrace> {
    config.validate()?;
    validate_options(config, options)?;

    let speed = config.walker_speed;
    let dt = options.dt;
    let tol = options.trigger_tolerance;
    let step_len = speed * dt;
    let max_steps = match options.stop {
        StopCondition::Duration { seconds } => Some((seconds / dt + 1e-9).floor() as u64),
        StopCondition::Advances { .. } => None,
    };
    let max_advances = match options.stop {
        StopCondition::Advances { count } => Some(count),
        StopCondition::Duration { .. } => None,
    };

    let mut rng = SeededRandomSource::new(config.seed);
    let (mut window, decisions) = init_path(config, &mut rng)?;
    let start_clearance = window_clearance(&window, config.path_width)?;
    let mut totals = Totals {
        pal_units: 0.0,
        prag_units: decisions.iter().map(|d| d.prag_units as u64).sum(),
        advance_count: 0,
        corner_escape_count: decisions
            .iter()
            .filter(|d| d.case_tag == CaseTag::CornerEscape)
            .count() as u64,
        min_corridor_clearance: start_clearance,
        steps: 0,
        elapsed: 0.0,
    };
    let mut events = vec![TraceEvent {
        kind: EventKind::Start,
        time: 0.0,
        distance_walked: 0.0,
        window: window.clone(),
        prag_units: decisions.iter().map(|d| d.prag_units).sum(),
        decisions,
        min_clearance: start_clearance,
    }];

    let mut state = WalkerState {
        position: config.start_position,
        heading: window.yaws[1],
        arc_position: 0.0,
        time: 0.0,
    };
    let mut samples = vec![state];
    let mut trigger_arc = window.arc_to(TRIGGER_INDEX);

    let mut step: u64 = 0;
    loop {
        if max_steps.is_some_and(|m| step >= m) || max_advances.is_some_and(|m| totals.advance_count >= m) {
            break;
        }
        step += 1;
        state = step_walker(&state, &window, dt, speed)?;
        state.time = step as f64 * dt;
        let walked = step as f64 * step_len;

        if state.arc_position >= trigger_arc - tol {
            let removed = window.points[0].distance(window.points[1]);
            let (next, decision) = advance_path(&window, config, &mut rng)?;
            window = next;
            state.arc_position -= removed;
            trigger_arc = window.arc_to(TRIGGER_INDEX);

            let kind = if decision.case_tag == CaseTag::CornerEscape {
                totals.corner_escape_count += 1;
                EventKind::CornerEscape
            } else {
                EventKind::Advance
            };
            let clearance = window_clearance(&window, config.path_width)?;
            totals.advance_count += 1;
            totals.prag_units += decision.prag_units as u64;
            totals.min_corridor_clearance = totals.min_corridor_clearance.min(clearance);
            events.push(TraceEvent {
                kind,
                time: state.time,
                distance_walked: walked,
                window: window.clone(),
                prag_units: decision.prag_units,
                decisions: vec![decision],
                min_clearance: clearance,
            });
        }

        if step.is_multiple_of(options.sample_every) {
            samples.push(state);
        }
    }

    if samples.last().map(|s| s.time) != Some(state.time) {
        samples.push(state);
    }
    totals.steps = step;
    totals.elapsed = step as f64 * dt;
    totals.pal_units = step as f64 * step_len;

    Ok(WalkTrace {
        config: config.clone(),
        options: *options,
        events,
        samples,
        totals,
    })
}
