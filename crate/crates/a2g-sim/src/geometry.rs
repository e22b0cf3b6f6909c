//! Positions and the geometric primitives everything else consumes: 3D
//! slant distance, 2D ground distance, elevation angle, and the horizontal
//! projection of a ground-to-air link.
//!
//! Ground devices sit at altitude zero; only the UAV carries a z
//! coordinate. Angles cross module boundaries in degrees.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Location of a ground node, meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroundPosition {
    pub x: f64,
    pub y: f64,
}

impl GroundPosition {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_valid(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// UAV location, meters; `z` is altitude above ground and must be positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AirPosition {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl AirPosition {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn is_valid(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite() && self.z > 0.0
    }

    /// Ground point directly underneath the UAV.
    pub fn nadir(&self) -> GroundPosition {
        GroundPosition::new(self.x, self.y)
    }
}

/// Slant distance between a ground node and the UAV, meters.
pub fn distance_3d(g: GroundPosition, u: AirPosition) -> f64 {
    let dx = g.x - u.x;
    let dy = g.y - u.y;
    (dx * dx + dy * dy + u.z * u.z).sqrt()
}

/// Ground distance between two ground nodes, meters.
pub fn distance_2d(a: GroundPosition, b: GroundPosition) -> f64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    (dx * dx + dy * dy).sqrt()
}

/// Horizontal projection of the slant path, meters.
pub fn ground_range(g: GroundPosition, u: AirPosition) -> f64 {
    distance_2d(g, u.nadir())
}

/// Elevation angle from a ground node toward the UAV, degrees in (0, 90].
///
/// `slant_m` is the 3D distance, which can never fall below the altitude;
/// such inputs describe an impossible geometry and are rejected.
pub fn elevation_angle_deg(altitude_m: f64, slant_m: f64) -> Result<f64> {
    if altitude_m <= 0.0 || !altitude_m.is_finite() {
        return Err(Error::Domain(format!(
            "altitude must be positive, got {altitude_m} m"
        )));
    }
    if slant_m < altitude_m || slant_m.is_nan() {
        return Err(Error::Domain(format!(
            "slant distance {slant_m} m is below the altitude {altitude_m} m"
        )));
    }
    // The quotient can round to just above 1 when slant == altitude.
    let ratio = (altitude_m / slant_m).min(1.0);
    Ok(ratio.asin().to_degrees())
}
