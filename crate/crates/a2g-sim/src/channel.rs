//! Ground-to-air channel and link-budget math: the sigmoid LoS probability
//! model and its inverse, coverage feasibility bounds, received power over a
//! power-law path loss, the minimum cluster-head transmit power for a target
//! QPSK bit-error rate, and the BER itself.
//!
//! Power unit convention: dBm in the logarithmic domain, watts (and W/Hz for
//! noise density) in the linear domain, with dBm = 10*log10(W) + 30. This is
//! the only reading under which the received-power, minimum-power, and BER
//! expressions chain into each other, and the round-trip identity
//! `ber(rx_power(min_tx_power(d), d)) == ber_target` holds for every path
//! loss exponent.

use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use crate::erf::erfc;
use crate::error::{Error, Result};

/// Exact SI speed of light, m/s.
pub const SPEED_OF_LIGHT_M_S: f64 = 299_792_458.0;

/// S-curve parameters of a propagation environment.
///
/// Only the urban preset ships with named constants; other environment
/// classes are user-supplied `(a, b)` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Environment {
    pub name: String,
    /// Dimensionless S-curve parameter (also the angle, in degrees, at which
    /// the LoS probability equals 1/(1+a)).
    pub a: f64,
    /// Dimensionless S-curve steepness parameter.
    pub b: f64,
}

impl Environment {
    pub fn new(name: impl Into<String>, a: f64, b: f64) -> Result<Self> {
        if a <= 0.0 || !a.is_finite() {
            return Err(Error::Config(format!(
                "environment parameter a must be > 0, got {a}"
            )));
        }
        if b <= 0.0 || !b.is_finite() {
            return Err(Error::Config(format!(
                "environment parameter b must be > 0, got {b}"
            )));
        }
        Ok(Self {
            name: name.into(),
            a,
            b,
        })
    }

    /// Urban preset: a = 9.6, b = 0.16.
    pub fn urban() -> Self {
        Self {
            name: "urban".to_string(),
            a: 9.6,
            b: 0.16,
        }
    }
}

/// Radio parameters of one simulation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkBudget {
    /// Cluster-head transmit power, dBm.
    pub tx_power_dbm: f64,
    /// Carrier frequency, Hz.
    pub carrier_freq_hz: f64,
    /// Path loss exponent (2 = free space LoS).
    pub path_loss_exponent: f64,
    /// Excess loss added on top of free-space propagation, dB.
    pub excess_loss_db: f64,
    /// Noise power spectral density, dBm/Hz.
    pub noise_psd_dbm_hz: f64,
    /// Transmission bit rate, bits/s.
    pub bit_rate_bps: f64,
    /// Transmission bandwidth per device, Hz. Carried for configuration
    /// fidelity; no expression consumes it.
    pub bandwidth_hz: f64,
    /// Target bit-error rate for the minimum-power calculation.
    pub ber_target: f64,
    /// Required LoS probability for a feasible link.
    pub los_threshold: f64,
}

impl Default for LinkBudget {
    fn default() -> Self {
        Self {
            tx_power_dbm: 13.0,
            carrier_freq_hz: 3.5e9,
            path_loss_exponent: 2.0,
            excess_loss_db: 5.0,
            noise_psd_dbm_hz: -170.0,
            bit_rate_bps: 200e3,
            bandwidth_hz: 200e3,
            ber_target: 1e-8,
            los_threshold: 0.95,
        }
    }
}

impl LinkBudget {
    pub fn validate(&self) -> Result<()> {
        if self.carrier_freq_hz <= 0.0 || self.carrier_freq_hz.is_nan() {
            return Err(Error::Config(format!(
                "carrier_freq_hz must be > 0, got {}",
                self.carrier_freq_hz
            )));
        }
        if self.bit_rate_bps <= 0.0 || self.bit_rate_bps.is_nan() {
            return Err(Error::Config(format!(
                "bit_rate_bps must be > 0, got {}",
                self.bit_rate_bps
            )));
        }
        if self.path_loss_exponent < 1.0 || self.path_loss_exponent.is_nan() {
            return Err(Error::Config(format!(
                "path_loss_exponent must be >= 1, got {}",
                self.path_loss_exponent
            )));
        }
        if self.ber_target <= 0.0 || self.ber_target >= 0.5 || self.ber_target.is_nan() {
            return Err(Error::Config(format!(
                "ber_target must be in (0, 0.5), got {}",
                self.ber_target
            )));
        }
        if self.los_threshold <= 0.0 || self.los_threshold >= 1.0 || self.los_threshold.is_nan() {
            return Err(Error::Config(format!(
                "los_threshold must be in (0, 1), got {}",
                self.los_threshold
            )));
        }
        Ok(())
    }

    /// Noise power spectral density in W/Hz.
    pub fn noise_psd_w_hz(&self) -> f64 {
        dbm_to_watts(self.noise_psd_dbm_hz)
    }
}

pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

pub fn watts_to_dbm(watts: f64) -> f64 {
    10.0 * watts.log10() + 30.0
}

/// Gaussian tail probability Q(x) = P(N(0,1) > x) = erfc(x/sqrt(2))/2.
///
/// Strictly decreasing; results below roughly 1e-320 flush to 0.0.
pub fn q_function(x: f64) -> f64 {
    0.5 * erfc(x / SQRT_2)
}

/// Inverse of [`q_function`] for p in (0, 1).
///
/// Monotone bisection on [0, 45] (reflected for p > 0.5) down to interval
/// width 1e-13. Both the strict and non-strict crossing are located and the
/// midpoint returned, so the answer sits mid-plateau where the f64 rounding
/// of q leaves a flat stretch in the deep tail.
pub fn inv_q_function(p: f64) -> Result<f64> {
    if p <= 0.0 || p >= 1.0 || p.is_nan() {
        return Err(Error::Domain(format!(
            "inverse Q-function requires p in (0, 1), got {p}"
        )));
    }
    if p > 0.5 {
        // Exact for p in [0.5, 1] (Sterbenz), so no extra digits are lost.
        return Ok(-inv_q_core(1.0 - p));
    }
    Ok(inv_q_core(p))
}

// p in (0, 0.5]; q is decreasing, q(0) = 0.5 >= p > q(45) = 0.
fn inv_q_core(p: f64) -> f64 {
    let left = bisect_crossing(p, true);
    let right = bisect_crossing(p, false);
    0.5 * (left + right)
}

// Largest x where q(x) > p (strict) or q(x) >= p (non-strict), to width 1e-13.
fn bisect_crossing(p: f64, strict: bool) -> f64 {
    let mut lo = 0.0f64;
    let mut hi = 45.0f64;
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        let qm = q_function(mid);
        let above = if strict { qm > p } else { qm >= p };
        if above {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// LoS probability of the ground-to-air uplink at elevation angle
/// `theta_deg` in [0, 90]: 1 / (1 + a*exp(-b*(theta - a))).
pub fn los_probability(theta_deg: f64, env: &Environment) -> Result<f64> {
    if !(0.0..=90.0).contains(&theta_deg) {
        return Err(Error::Domain(format!(
            "elevation angle must be in [0, 90] degrees, got {theta_deg}"
        )));
    }
    Ok(1.0 / (1.0 + env.a * (-env.b * (theta_deg - env.a)).exp()))
}

/// Smallest elevation angle whose LoS probability reaches `epsilon`:
/// theta_min = a - ln((1 - eps) / (a*eps)) / b, degrees.
///
/// Angles up to 1e-9 deg past 90 are clamped to 90 so that boundary
/// constructions (epsilon exactly at the 90-degree probability) stay stable;
/// beyond that the requirement is infeasible in this environment. A
/// non-positive result means epsilon is met at every angle and no positive
/// threshold exists, which is rejected as a domain error.
pub fn los_threshold_angle(epsilon: f64, env: &Environment) -> Result<f64> {
    if epsilon <= 0.0 || epsilon >= 1.0 || epsilon.is_nan() {
        return Err(Error::Domain(format!(
            "epsilon must be in (0, 1), got {epsilon}"
        )));
    }
    let raw = env.a - ((1.0 - epsilon) / (env.a * epsilon)).ln() / env.b;
    if raw > 90.0 + 1e-9 {
        return Err(Error::Infeasible(format!(
            "no elevation angle reaches LoS probability {epsilon} in environment '{}' \
             (threshold angle {raw:.3} deg exceeds 90)",
            env.name
        )));
    }
    if raw <= 0.0 {
        return Err(Error::Domain(format!(
            "epsilon {epsilon} is met at every elevation angle in environment '{}'; \
             no positive threshold angle exists",
            env.name
        )));
    }
    Ok(raw.min(90.0))
}

/// Largest slant distance at which a node still sees LoS probability
/// `epsilon` from a UAV at `altitude_m`: H / sin(theta_min).
pub fn max_slant_distance(altitude_m: f64, epsilon: f64, env: &Environment) -> Result<f64> {
    if altitude_m <= 0.0 || altitude_m.is_nan() {
        return Err(Error::Domain(format!(
            "altitude must be positive, got {altitude_m} m"
        )));
    }
    let theta_min = los_threshold_angle(epsilon, env)?;
    Ok(altitude_m / theta_min.to_radians().sin())
}

/// Ground projection of [`max_slant_distance`]: H / tan(theta_min).
pub fn coverage_ground_radius(altitude_m: f64, epsilon: f64, env: &Environment) -> Result<f64> {
    if altitude_m <= 0.0 || altitude_m.is_nan() {
        return Err(Error::Domain(format!(
            "altitude must be positive, got {altitude_m} m"
        )));
    }
    let theta_min = los_threshold_angle(epsilon, env)?;
    Ok(altitude_m / theta_min.to_radians().tan())
}

/// Received power at the UAV, dBm:
/// p_t - 10*alpha*log10(4*pi*f_c*d/c) - eta.
pub fn received_power_dbm(lb: &LinkBudget, distance_m: f64) -> Result<f64> {
    if distance_m <= 0.0 || distance_m.is_nan() {
        return Err(Error::Domain(format!(
            "distance must be positive, got {distance_m} m"
        )));
    }
    let spreading =
        4.0 * std::f64::consts::PI * lb.carrier_freq_hz * distance_m / SPEED_OF_LIGHT_M_S;
    Ok(lb.tx_power_dbm - 10.0 * lb.path_loss_exponent * spreading.log10() - lb.excess_loss_db)
}

/// Minimum cluster-head transmit power (watts) that still meets the BER
/// target at slant distance `distance_m`:
///
/// [Q^-1(delta)]^2 * (R_b * sigma^2 / 2) * 10^(eta/10) * (4*pi*f_c*d/c)^alpha
///
/// with sigma^2 in W/Hz. The distance term carries the configured path loss
/// exponent, which reduces to the squared law at alpha = 2 and keeps the
/// round trip through the received-power and BER expressions exact for
/// every exponent.
pub fn min_tx_power_watts(lb: &LinkBudget, distance_m: f64) -> Result<f64> {
    if distance_m <= 0.0 || distance_m.is_nan() {
        return Err(Error::Domain(format!(
            "distance must be positive, got {distance_m} m"
        )));
    }
    let q_inv = inv_q_function(lb.ber_target)?;
    let spreading =
        4.0 * std::f64::consts::PI * lb.carrier_freq_hz * distance_m / SPEED_OF_LIGHT_M_S;
    Ok(q_inv
        * q_inv
        * (lb.bit_rate_bps * lb.noise_psd_w_hz() / 2.0)
        * 10f64.powf(lb.excess_loss_db / 10.0)
        * spreading.powf(lb.path_loss_exponent))
}

/// QPSK bit-error rate for a received power given in dBm:
/// Q(sqrt(2*p_r / (R_b * sigma^2))), with p_r and sigma^2 linear.
///
/// Strictly decreasing in received power. Arguments deep in the Gaussian
/// tail underflow to 0.0, flagged in rendered reports as below the
/// numeric floor.
pub fn bit_error_rate(lb: &LinkBudget, received_power_dbm: f64) -> f64 {
    let p_r_watts = dbm_to_watts(received_power_dbm);
    let snr = 2.0 * p_r_watts / (lb.bit_rate_bps * lb.noise_psd_w_hz());
    q_function(snr.sqrt())
}
