//! Planar primitives shared by the whole engine.
//!
//! Coordinates live in the floor plane: `x` to the side, `z` forward. Yaw is
//! measured from the +z axis and grows toward +x, so a step of length `l`
//! along yaw `b` moves by `(l sin b, l cos b)`.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A position in the bounded plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub z: f64,
}

impl Point2 {
    #[inline]
    pub const fn new(x: f64, z: f64) -> Self {
        Self { x, z }
    }

    pub fn try_new(x: f64, z: f64) -> Result<Self> {
        if x.is_finite() && z.is_finite() {
            Ok(Self { x, z })
        } else {
            Err(Error::NonFinitePoint { x, z })
        }
    }

    #[inline]
    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.z.is_finite()
    }

    #[inline]
    pub fn distance(&self, other: Point2) -> f64 {
        (other.x - self.x).hypot(other.z - self.z)
    }

    #[inline]
    pub fn lerp(&self, other: Point2, t: f64) -> Point2 {
        Point2::new(
            self.x + (other.x - self.x) * t,
            self.z + (other.z - self.z) * t,
        )
    }
}

/// Walker orientation, normalized to `(-pi, pi]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct HeadYaw(f64);

impl HeadYaw {
    pub const ZERO: HeadYaw = HeadYaw(0.0);

    /// Wraps `raw` into `(-pi, pi]`. Fails only on NaN or infinity.
    pub fn new(raw: f64) -> Result<Self> {
        wrap_angle(raw)
    }

    #[inline]
    pub fn radians(self) -> f64 {
        self.0
    }

    /// Unit direction vector `(sin, cos)`.
    #[inline]
    pub fn direction(self) -> (f64, f64) {
        self.0.sin_cos()
    }

    /// `self + delta`, re-wrapped.
    #[inline]
    pub fn rotated(self, delta: f64) -> HeadYaw {
        HeadYaw(wrap_finite(self.0 + delta))
    }

    /// Signed difference `self - other` wrapped into `(-pi, pi]`.
    #[inline]
    pub fn delta_from(self, other: HeadYaw) -> f64 {
        wrap_finite(self.0 - other.0)
    }
}

impl TryFrom<f64> for HeadYaw {
    type Error = Error;

    fn try_from(raw: f64) -> Result<Self> {
        wrap_angle(raw)
    }
}

impl From<HeadYaw> for f64 {
    fn from(yaw: HeadYaw) -> f64 {
        yaw.0
    }
}

/// Reduces a finite angle into `(-pi, pi]`. Values already in range are
/// returned bit-for-bit unchanged.
#[inline]
fn wrap_finite(raw: f64) -> f64 {
    if raw > -PI && raw <= PI {
        return raw;
    }
    let r = raw.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

pub fn wrap_angle(raw: f64) -> Result<HeadYaw> {
    if !raw.is_finite() {
        return Err(Error::NonFiniteAngle(raw));
    }
    Ok(HeadYaw(wrap_finite(raw)))
}

/// Axis-aligned rectangle from `(0, 0)` to `(width_x, depth_z)`.
///
/// Only the open interior counts as inside; a point on an edge is outside.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "AreaDims")]
pub struct BoundedArea {
    width_x: f64,
    depth_z: f64,
}

#[derive(Deserialize)]
struct AreaDims {
    width_x: f64,
    depth_z: f64,
}

impl TryFrom<AreaDims> for BoundedArea {
    type Error = Error;

    fn try_from(d: AreaDims) -> Result<Self> {
        BoundedArea::new(d.width_x, d.depth_z)
    }
}

impl BoundedArea {
    pub fn new(width_x: f64, depth_z: f64) -> Result<Self> {
        if width_x.is_finite() && depth_z.is_finite() && width_x > 0.0 && depth_z > 0.0 {
            Ok(Self { width_x, depth_z })
        } else {
            Err(Error::InvalidArea { width_x, depth_z })
        }
    }

    #[inline]
    pub fn width_x(&self) -> f64 {
        self.width_x
    }

    #[inline]
    pub fn depth_z(&self) -> f64 {
        self.depth_z
    }

    #[inline]
    pub fn min_side(&self) -> f64 {
        self.width_x.min(self.depth_z)
    }

    #[inline]
    pub fn center(&self) -> Point2 {
        Point2::new(self.width_x / 2.0, self.depth_z / 2.0)
    }

    #[inline]
    pub fn contains(&self, p: Point2) -> bool {
        p.x > 0.0 && p.x < self.width_x && p.z > 0.0 && p.z < self.depth_z
    }

    /// Distance from an interior `origin` to the boundary along `direction`.
    pub fn distance_to_boundary(&self, origin: Point2, direction: HeadYaw) -> Result<f64> {
        if !self.contains(origin) {
            return Err(Error::OriginOutside(origin));
        }
        let (dx, dz) = direction.direction();
        let along = |pos: f64, d: f64, limit: f64| {
            if d > 0.0 {
                (limit - pos) / d
            } else if d < 0.0 {
                -pos / d
            } else {
                f64::INFINITY
            }
        };
        Ok(along(origin.x, dx, self.width_x).min(along(origin.z, dz, self.depth_z)))
    }
}

/// A finite ray cast from a point inside the area.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ray {
    pub origin: Point2,
    pub direction: HeadYaw,
    length: f64,
}

impl Ray {
    pub fn new(origin: Point2, direction: HeadYaw, length: f64) -> Result<Self> {
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::InvalidRayLength(length));
        }
        Ok(Self {
            origin,
            direction,
            length,
        })
    }

    #[inline]
    pub fn length(&self) -> f64 {
        self.length
    }
}

/// Moves `p` by `l` along `beta`.
#[inline]
pub fn advance_point(p: Point2, beta: HeadYaw, l: f64) -> Point2 {
    let (sin, cos) = beta.direction();
    Point2::new(l * sin + p.x, l * cos + p.z)
}

/// Distance along `ray` at which it first reaches the boundary, or `None` if
/// the whole ray stays strictly inside. Reaching an edge exactly at the ray's
/// tip counts as a hit.
pub fn ray_boundary_hit(ray: &Ray, area: &BoundedArea) -> Result<Option<f64>> {
    let t = area.distance_to_boundary(ray.origin, ray.direction)?;
    Ok((t <= ray.length).then_some(t))
}

/// Yaw pointing from `a` to `b`.
pub fn direction_between(a: Point2, b: Point2) -> Result<HeadYaw> {
    let dx = b.x - a.x;
    let dz = b.z - a.z;
    if dx == 0.0 && dz == 0.0 {
        return Err(Error::CoincidentPoints);
    }
    wrap_angle(dx.atan2(dz))
}
