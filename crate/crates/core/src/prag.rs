//! Boundary detection with a fan of probe rays.
//!
//! From the tip of the path, `j + 1` rays of length
//! `segment_length + path_width / 2` are cast across the half-plane ahead
//! (`beta_prev - pi/2 ..= beta_prev + pi/2`, spacing `pi / j`). Every ray that
//! reaches the boundary is one prag unit. The number of hits selects how the
//! next yaw is chosen:
//!
//! * no hit: uniform draw from the open range `(beta_prev - pi/2, beta_prev + pi/2)`,
//!   re-checked with a probe ray;
//! * some hits: uniform pick among the fan angles that missed;
//! * all hit: two escape rays at `beta_prev -/+ 3pi/4`; the one that misses
//!   wins, a coin flip decides when both miss.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::config::PathConfig;
use crate::error::{Error, Result};
use crate::geometry::{ray_boundary_hit, BoundedArea, HeadYaw, Point2, Ray};
use crate::rng::SeededRandomSource;

/// Continuous draws attempted in the no-hit case before falling back to the
/// fan angles.
pub const FREE_DRAW_RETRIES: usize = 8;

/// Rotation of the two corner-escape rays relative to `beta_prev`.
pub const ESCAPE_TURN: f64 = 3.0 * PI / 4.0;

#[derive(Debug, Clone, PartialEq)]
pub struct RayFanResult {
    pub angles: Vec<HeadYaw>,
    pub hits: Vec<Option<f64>>,
    pub prag_units: u32,
}

impl RayFanResult {
    /// Fan angles whose rays stayed inside the area.
    pub fn clear_angles(&self) -> impl Iterator<Item = HeadYaw> + '_ {
        self.angles
            .iter()
            .zip(&self.hits)
            .filter(|(_, hit)| hit.is_none())
            .map(|(angle, _)| *angle)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    Free,
    Partial,
    CornerEscape,
}

/// Which escape ray was taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EscapeSide {
    /// `beta_prev - 3pi/4`
    Minus,
    /// `beta_prev + 3pi/4`
    Plus,
}

impl EscapeSide {
    pub fn turn(self) -> f64 {
        match self {
            EscapeSide::Minus => -ESCAPE_TURN,
            EscapeSide::Plus => ESCAPE_TURN,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaDecision {
    pub beta_prev: HeadYaw,
    pub beta_next: HeadYaw,
    pub case_tag: CaseTag,
    /// Fan hits, plus escape-ray hits on a corner escape.
    pub prag_units: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chosen_escape: Option<EscapeSide>,
}

impl BetaDecision {
    /// Signed turn `beta_next - beta_prev`, wrapped.
    pub fn turn(&self) -> f64 {
        self.beta_next.delta_from(self.beta_prev)
    }
}

/// Angle of ray `k` in a fan of `j + 1` rays around `beta_prev`.
#[inline]
pub fn fan_angle(beta_prev: HeadYaw, j: u32, k: u32) -> HeadYaw {
    beta_prev.rotated(-FRAC_PI_2 + (PI / j as f64) * k as f64)
}

pub fn ray_fan(
    beta_prev: HeadYaw,
    j: u32,
    origin: Point2,
    ray_length: f64,
    area: &BoundedArea,
) -> Result<RayFanResult> {
    if j < 1 {
        return Err(Error::InvalidFan(j));
    }
    let mut angles = Vec::with_capacity(j as usize + 1);
    let mut hits = Vec::with_capacity(j as usize + 1);
    for k in 0..=j {
        let angle = fan_angle(beta_prev, j, k);
        let ray = Ray::new(origin, angle, ray_length)?;
        angles.push(angle);
        hits.push(ray_boundary_hit(&ray, area)?);
    }
    let prag_units = hits.iter().filter(|h| h.is_some()).count() as u32;
    Ok(RayFanResult {
        angles,
        hits,
        prag_units,
    })
}

/// Picks the yaw of the next segment starting at `origin`.
pub fn choose_beta(
    origin: Point2,
    beta_prev: HeadYaw,
    config: &PathConfig,
    rng: &mut SeededRandomSource,
) -> Result<BetaDecision> {
    let j = config.rays;
    let length = config.ray_length();
    let area = &config.area;
    let fan = ray_fan(beta_prev, j, origin, length, area)?;

    let decision = |beta_next, case_tag, prag_units, chosen_escape| BetaDecision {
        beta_prev,
        beta_next,
        case_tag,
        prag_units,
        chosen_escape,
    };

    if fan.prag_units == 0 {
        for _ in 0..FREE_DRAW_RETRIES {
            let raw = rng.uniform_open(-FRAC_PI_2, FRAC_PI_2);
            let candidate = beta_prev.rotated(raw);
            if ray_boundary_hit(&Ray::new(origin, candidate, length)?, area)?.is_none() {
                return Ok(decision(candidate, CaseTag::Free, 0, None));
            }
        }
        let clear: Vec<HeadYaw> = fan.clear_angles().collect();
        let beta_next = clear[rng.pick_index(clear.len())];
        return Ok(decision(beta_next, CaseTag::Free, 0, None));
    }

    if fan.prag_units <= j {
        let clear: Vec<HeadYaw> = fan.clear_angles().collect();
        let beta_next = clear[rng.pick_index(clear.len())];
        return Ok(decision(beta_next, CaseTag::Partial, fan.prag_units, None));
    }

    let mut clear = Vec::with_capacity(2);
    let mut escape_hits = 0;
    for side in [EscapeSide::Minus, EscapeSide::Plus] {
        let angle = beta_prev.rotated(side.turn());
        if ray_boundary_hit(&Ray::new(origin, angle, length)?, area)?.is_some() {
            escape_hits += 1;
        } else {
            clear.push((side, angle));
        }
    }
    let (side, beta_next) = match clear.len() {
        0 => return Err(Error::Trapped { origin, beta_prev }),
        1 => clear[0],
        n => clear[rng.pick_index(n)],
    };
    Ok(decision(
        beta_next,
        CaseTag::CornerEscape,
        fan.prag_units + escape_hits,
        Some(side),
    ))
}
