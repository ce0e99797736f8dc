//! Summary statistics recomputed from a trace's event log.

use std::f64::consts::PI;
use std::fmt::Write as _;

use pragpal_core::{corridor_points, CaseTag, EventKind};

use crate::trace::TraceFile;

pub const TURN_BINS: usize = 18;
pub const TURN_BIN_WIDTH: f64 = PI / TURN_BINS as f64;

#[derive(Debug, Clone, PartialEq)]
pub struct Stats {
    pub pal_units: f64,
    pub prag_units: u64,
    pub prag_per_100_pal: f64,
    pub advance_count: u64,
    pub corner_escape_count: u64,
    pub min_corridor_clearance: f64,
    /// Counts of `|turn|` per advance, bins of width pi/18 over `[0, pi]`.
    pub turn_histogram: [u64; TURN_BINS],
    pub max_turn: f64,
}

pub fn turn_bin(turn: f64) -> usize {
    ((turn.abs() / TURN_BIN_WIDTH) as usize).min(TURN_BINS - 1)
}

/// Recomputes everything but `pal_units` from the events; pal units come
/// from the stored totals since only the walker knows its distance.
pub fn compute(trace: &TraceFile) -> Stats {
    let mut prag_units = 0u64;
    let mut advance_count = 0u64;
    let mut corner_escape_count = 0u64;
    let mut turn_histogram = [0u64; TURN_BINS];
    let mut max_turn = 0.0f64;
    let mut min_corridor_clearance = f64::INFINITY;

    for event in &trace.events {
        prag_units += event.decisions.iter().map(|d| d.prag_units as u64).sum::<u64>();
        corner_escape_count += event
            .decisions
            .iter()
            .filter(|d| d.case_tag == CaseTag::CornerEscape)
            .count() as u64;
        if event.kind != EventKind::Start {
            advance_count += 1;
            for d in &event.decisions {
                let turn = d.turn().abs();
                turn_histogram[turn_bin(turn)] += 1;
                max_turn = max_turn.max(turn);
            }
        }
        if let Ok(strip) = corridor_points(&event.window.points, trace.config.path_width) {
            min_corridor_clearance = min_corridor_clearance.min(strip.min_clearance());
        }
    }
    if !min_corridor_clearance.is_finite() {
        min_corridor_clearance = trace.config.path_width;
    }

    let pal_units = trace.totals.pal_units;
    let prag_per_100_pal = if pal_units > 0.0 {
        100.0 * prag_units as f64 / pal_units
    } else {
        0.0
    };
    Stats {
        pal_units,
        prag_units,
        prag_per_100_pal,
        advance_count,
        corner_escape_count,
        min_corridor_clearance,
        turn_histogram,
        max_turn,
    }
}

/// Fields where the recomputed statistics disagree with the stored totals.
pub fn mismatches(trace: &TraceFile, stats: &Stats) -> Vec<&'static str> {
    let t = &trace.totals;
    let mut out = Vec::new();
    if stats.prag_units != t.prag_units {
        out.push("prag_units");
    }
    if stats.advance_count != t.advance_count {
        out.push("advance_count");
    }
    if stats.corner_escape_count != t.corner_escape_count {
        out.push("corner_escape_count");
    }
    if (stats.min_corridor_clearance - t.min_corridor_clearance).abs() > 1e-9 {
        out.push("min_corridor_clearance");
    }
    out
}

pub fn to_text(stats: &Stats) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "pal_units: {:.6}", stats.pal_units);
    let _ = writeln!(s, "prag_units: {}", stats.prag_units);
    let _ = writeln!(s, "prag_per_100_pal: {:.6}", stats.prag_per_100_pal);
    let _ = writeln!(s, "advances: {}", stats.advance_count);
    let _ = writeln!(s, "corner_escapes: {}", stats.corner_escape_count);
    let _ = writeln!(s, "min_corridor_clearance: {:.6}", stats.min_corridor_clearance);
    let _ = writeln!(s, "max_turn: {:.6}", stats.max_turn);
    let _ = writeln!(s, "turn_histogram (|turn| in radians, bin width pi/18):");
    for (i, count) in stats.turn_histogram.iter().enumerate() {
        let lo = i as f64 * TURN_BIN_WIDTH;
        let _ = writeln!(s, "  [{:.4}, {:.4}) {}", lo, lo + TURN_BIN_WIDTH, count);
    }
    s
}

pub fn to_csv(stats: &Stats) -> String {
    let mut s = String::from("metric,value\n");
    let _ = writeln!(s, "pal_units,{}", stats.pal_units);
    let _ = writeln!(s, "prag_units,{}", stats.prag_units);
    let _ = writeln!(s, "prag_per_100_pal,{}", stats.prag_per_100_pal);
    let _ = writeln!(s, "advances,{}", stats.advance_count);
    let _ = writeln!(s, "corner_escapes,{}", stats.corner_escape_count);
    let _ = writeln!(s, "min_corridor_clearance,{}", stats.min_corridor_clearance);
    let _ = writeln!(s, "max_turn,{}", stats.max_turn);
    s.push_str("\nbin_start,bin_end,count\n");
    for (i, count) in stats.turn_histogram.iter().enumerate() {
        let lo = i as f64 * TURN_BIN_WIDTH;
        let _ = writeln!(s, "{},{},{}", lo, lo + TURN_BIN_WIDTH, count);
    }
    s
}
