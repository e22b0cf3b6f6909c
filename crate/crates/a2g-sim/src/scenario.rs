//! Scenario composition: per-head link evaluation, the five figure sweeps,
//! minimum-altitude coverage planning, and the end-to-end run that strings
//! placement, election, assignment, and link evaluation together.
//!
//! Sweeps and per-head evaluation are embarrassingly parallel; the helpers
//! here fan work out over scoped threads (capped by the `A2G_SIM_THREADS`
//! environment variable) while keeping output strictly in input order.

use serde::{Deserialize, Serialize};

use crate::channel::{
    bit_error_rate, los_probability, los_threshold_angle, max_slant_distance, min_tx_power_watts,
    received_power_dbm, Environment, LinkBudget,
};
use crate::clustering::{
    apply_roles, assign_members, clustering_report, elect_cluster_heads, generate_devices_ppp,
    Cluster, ClusteringParams, ClusteringReport, Device, Role,
};
use crate::error::{Error, Result};
use crate::geometry::{distance_2d, distance_3d, elevation_angle_deg, AirPosition, GroundPosition};

/// A device injected at an explicit position, alongside the random
/// population. Keeps minimal deterministic scenarios expressible.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManualDevice {
    pub position: GroundPosition,
    pub residual_energy: f64,
}

/// Everything one run needs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub uav: AirPosition,
    pub environment: Environment,
    pub link_budget: LinkBudget,
    pub clustering: ClusteringParams,
    pub manual_devices: Vec<ManualDevice>,
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        if !self.uav.is_valid() {
            return Err(Error::Config(format!(
                "uav position must be finite with altitude > 0, got ({}, {}, {})",
                self.uav.x, self.uav.y, self.uav.z
            )));
        }
        self.link_budget.validate()?;
        self.clustering.validate()?;
        for (i, d) in self.manual_devices.iter().enumerate() {
            if !d.position.is_valid() {
                return Err(Error::Config(format!(
                    "manual device {i} has a non-finite position"
                )));
            }
            if !(0.0..=1.0).contains(&d.residual_energy) {
                return Err(Error::Config(format!(
                    "manual device {i} energy must be in [0, 1], got {}",
                    d.residual_energy
                )));
            }
        }
        Ok(())
    }
}

/// One evaluated cluster-head-to-UAV link.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkReport {
    pub ch_id: usize,
    pub slant_distance_m: f64,
    pub elevation_deg: f64,
    pub p_los: f64,
    pub los_feasible: bool,
    pub rx_power_dbm: f64,
    pub min_tx_power_w: f64,
    pub ber: f64,
}

/// One sweep's tabulated output. `x` values are strictly increasing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSeries {
    pub label: String,
    pub x_name: String,
    pub y_name: String,
    pub points: Vec<(f64, f64)>,
}

impl CurveSeries {
    pub fn new(
        label: impl Into<String>,
        x_name: impl Into<String>,
        y_name: impl Into<String>,
        points: Vec<(f64, f64)>,
    ) -> Result<Self> {
        for w in points.windows(2) {
            let strictly_increasing = w[1].0 > w[0].0;
            if !strictly_increasing {
                return Err(Error::Domain(format!(
                    "series x values must be strictly increasing, got {} then {}",
                    w[0].0, w[1].0
                )));
            }
        }
        Ok(Self {
            label: label.into(),
            x_name: x_name.into(),
            y_name: y_name.into(),
            points,
        })
    }
}

/// Restriction of the elevation sweep to the angles each altitude can reach
/// within a maximum ground range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AltitudeCaps {
    pub altitudes_m: Vec<f64>,
    pub max_ground_range_m: f64,
}

/// Full output of [`run_scenario`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub clustering: ClusteringReport,
    pub links: Vec<LinkReport>,
    pub min_coverage_altitude_m: f64,
    pub infeasible_head_ids: Vec<usize>,
}

/// Devices, clusters, and the report of one deterministic run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioOutcome {
    pub devices: Vec<Device>,
    pub clusters: Vec<Cluster>,
    pub uncovered: Vec<usize>,
    pub report: ScenarioReport,
}

fn thread_budget() -> usize {
    match std::env::var("A2G_SIM_THREADS") {
        Ok(v) => v.trim().parse::<usize>().unwrap_or(1).max(1),
        Err(_) => std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
            .min(8),
    }
}

// Parallel map that preserves input order: item i of the result is f(i).
fn par_map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let threads = thread_budget().min(n.max(1));
    if threads <= 1 || n < 2 {
        return (0..n).map(f).collect();
    }
    let chunk = n.div_ceil(threads);
    let mut chunks: Vec<Vec<T>> = Vec::new();
    std::thread::scope(|scope| {
        let f = &f;
        let handles: Vec<_> = (0..threads)
            .filter_map(|t| {
                let lo = t * chunk;
                let hi = ((t + 1) * chunk).min(n);
                (lo < hi).then(|| scope.spawn(move || (lo..hi).map(f).collect::<Vec<T>>()))
            })
            .collect();
        chunks = handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect();
    });
    chunks.into_iter().flatten().collect()
}

// start, start+step, ..., up to end (inclusive within fp slack).
fn grid(start: f64, end: f64, step: f64) -> Result<Vec<f64>> {
    if step <= 0.0 || !step.is_finite() {
        return Err(Error::Config(format!("grid step must be > 0, got {step}")));
    }
    if !start.is_finite() || !end.is_finite() {
        return Err(Error::Config("grid bounds must be finite".to_string()));
    }
    if end < start {
        return Ok(Vec::new());
    }
    let n = ((end - start) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| start + i as f64 * step).collect())
}

/// Evaluates one cluster-head-to-UAV link from the uplink chain: slant
/// distance, elevation angle, LoS probability, feasibility against the
/// configured threshold, received power, minimum transmit power, and BER.
pub fn evaluate_link(scenario: &Scenario, ch_id: usize, ch: GroundPosition) -> Result<LinkReport> {
    let slant = distance_3d(ch, scenario.uav);
    let elevation = elevation_angle_deg(scenario.uav.z, slant)?;
    let p_los = los_probability(elevation, &scenario.environment)?;
    let feasible = p_los >= scenario.link_budget.los_threshold;
    let rx_power = received_power_dbm(&scenario.link_budget, slant)?;
    let min_tx = min_tx_power_watts(&scenario.link_budget, slant)?;
    let ber = bit_error_rate(&scenario.link_budget, rx_power);
    Ok(LinkReport {
        ch_id,
        slant_distance_m: slant,
        elevation_deg: elevation,
        p_los,
        los_feasible: feasible,
        rx_power_dbm: rx_power,
        min_tx_power_w: min_tx,
        ber,
    })
}

/// LoS probability against slant distance, one series per altitude, each
/// swept from the vertical link (d = H) out to `d_max_m`.
pub fn sweep_plos_vs_distance(
    altitudes_m: &[f64],
    d_max_m: f64,
    step_m: f64,
    env: &Environment,
) -> Result<Vec<CurveSeries>> {
    validate_altitudes(altitudes_m)?;
    let min_alt = altitudes_m.iter().cloned().fold(f64::INFINITY, f64::min);
    if d_max_m < min_alt {
        return Err(Error::Config(format!(
            "d_max {d_max_m} m is below the lowest altitude {min_alt} m"
        )));
    }
    altitudes_m
        .iter()
        .map(|&h| {
            let xs = grid(h, d_max_m, step_m)?;
            let ys = par_map(xs.len(), |i| {
                let theta = elevation_angle_deg(h, xs[i]).expect("d >= H by grid construction");
                los_probability(theta, env).expect("angle in (0, 90] by construction")
            });
            CurveSeries::new(
                format!("H={h}"),
                "distance_m",
                "p_los",
                xs.into_iter().zip(ys).collect(),
            )
        })
        .collect()
}

/// LoS probability against elevation angle. Without caps this is the single
/// analytic S-curve; with caps, one series per altitude restricted to the
/// angles reachable within the configured maximum ground range
/// (theta >= arctan(H/G)).
pub fn sweep_plos_vs_elevation(
    theta_min_deg: f64,
    theta_max_deg: f64,
    step_deg: f64,
    env: &Environment,
    altitude_caps: Option<&AltitudeCaps>,
) -> Result<Vec<CurveSeries>> {
    if !(0.0..=90.0).contains(&theta_min_deg)
        || !(0.0..=90.0).contains(&theta_max_deg)
        || theta_max_deg < theta_min_deg
    {
        return Err(Error::Config(format!(
            "elevation range [{theta_min_deg}, {theta_max_deg}] must lie inside [0, 90]"
        )));
    }
    let xs = grid(theta_min_deg, theta_max_deg, step_deg)?;
    let curve = |xs: Vec<f64>, label: String| -> Result<CurveSeries> {
        let ys = par_map(xs.len(), |i| {
            los_probability(xs[i], env).expect("angle in range by construction")
        });
        CurveSeries::new(
            label,
            "elevation_deg",
            "p_los",
            xs.into_iter().zip(ys).collect(),
        )
    };
    match altitude_caps {
        None => Ok(vec![curve(xs, "analytic".to_string())?]),
        Some(caps) => {
            validate_altitudes(&caps.altitudes_m)?;
            if caps.max_ground_range_m <= 0.0 || caps.max_ground_range_m.is_nan() {
                return Err(Error::Config(format!(
                    "max_ground_range_m must be > 0, got {}",
                    caps.max_ground_range_m
                )));
            }
            caps.altitudes_m
                .iter()
                .map(|&h| {
                    let floor = (h / caps.max_ground_range_m).atan().to_degrees();
                    let reachable: Vec<f64> =
                        xs.iter().cloned().filter(|&t| t >= floor - 1e-12).collect();
                    curve(reachable, format!("H={h}"))
                })
                .collect()
        }
    }
}

/// Elevation angle against slant distance, one series per altitude; grid
/// points below an altitude are omitted from that series.
pub fn sweep_elevation_vs_distance(
    altitudes_m: &[f64],
    d_start_m: f64,
    d_max_m: f64,
    step_m: f64,
) -> Result<Vec<CurveSeries>> {
    validate_altitudes(altitudes_m)?;
    let xs = grid(d_start_m, d_max_m, step_m)?;
    altitudes_m
        .iter()
        .map(|&h| {
            let reachable: Vec<f64> = xs.iter().cloned().filter(|&d| d >= h).collect();
            let ys = par_map(reachable.len(), |i| {
                elevation_angle_deg(h, reachable[i]).expect("d >= H by filter")
            });
            CurveSeries::new(
                format!("H={h}"),
                "distance_m",
                "elevation_deg",
                reachable.into_iter().zip(ys).collect(),
            )
        })
        .collect()
}

/// Received power against elevation angle at a fixed altitude, one series
/// per path loss exponent. The angle maps to distance through d = H/sin(theta).
pub fn sweep_rx_power_vs_elevation(
    alphas: &[f64],
    altitude_m: f64,
    theta_min_deg: f64,
    theta_max_deg: f64,
    step_deg: f64,
    lb: &LinkBudget,
) -> Result<Vec<CurveSeries>> {
    if alphas.is_empty() {
        return Err(Error::Config(
            "at least one path loss exponent is required".to_string(),
        ));
    }
    if altitude_m <= 0.0 || altitude_m.is_nan() {
        return Err(Error::Config(format!(
            "altitude must be > 0, got {altitude_m}"
        )));
    }
    if theta_min_deg <= 0.0
        || theta_min_deg.is_nan()
        || theta_max_deg > 90.0
        || theta_max_deg < theta_min_deg
    {
        return Err(Error::Config(format!(
            "elevation range [{theta_min_deg}, {theta_max_deg}] must lie inside (0, 90] \
             (theta = 0 puts the UAV at infinite distance)"
        )));
    }
    let xs = grid(theta_min_deg, theta_max_deg, step_deg)?;
    alphas
        .iter()
        .map(|&alpha| {
            let budget = LinkBudget {
                path_loss_exponent: alpha,
                ..lb.clone()
            };
            let ys = par_map(xs.len(), |i| {
                let d = altitude_m / xs[i].to_radians().sin();
                received_power_dbm(&budget, d).expect("distance > 0 for theta > 0")
            });
            CurveSeries::new(
                format!("alpha={alpha}"),
                "elevation_deg",
                "rx_power_dbm",
                xs.iter().cloned().zip(ys).collect(),
            )
        })
        .collect()
}

/// Bit-error rate against received power.
pub fn sweep_ber_vs_rx_power(
    p_min_dbm: f64,
    p_max_dbm: f64,
    step_db: f64,
    lb: &LinkBudget,
) -> Result<CurveSeries> {
    if p_max_dbm < p_min_dbm {
        return Err(Error::Config(format!(
            "received power range [{p_min_dbm}, {p_max_dbm}] is empty"
        )));
    }
    let xs = grid(p_min_dbm, p_max_dbm, step_db)?;
    let ys = par_map(xs.len(), |i| bit_error_rate(lb, xs[i]));
    CurveSeries::new(
        "qpsk",
        "rx_power_dbm",
        "ber",
        xs.into_iter().zip(ys).collect(),
    )
}

/// Lowest UAV altitude at which every cluster head meets the LoS
/// probability threshold: max over heads of r_i * tan(theta_min), where r_i
/// is the head's ground range from the hover point. All heads directly
/// underneath yield 0 (any positive altitude works).
pub fn min_altitude_for_coverage(
    ch_positions: &[GroundPosition],
    uav_xy: GroundPosition,
    epsilon: f64,
    env: &Environment,
) -> Result<f64> {
    if ch_positions.is_empty() {
        return Err(Error::Domain(
            "at least one cluster head is required".to_string(),
        ));
    }
    let theta_min = los_threshold_angle(epsilon, env)?;
    let max_range = ch_positions
        .iter()
        .map(|&p| distance_2d(p, uav_xy))
        .fold(0.0f64, f64::max);
    if max_range == 0.0 {
        return Ok(0.0);
    }
    if theta_min >= 90.0 {
        return Err(Error::Infeasible(format!(
            "threshold angle is 90 degrees; only vertical links reach epsilon {epsilon}, \
             no finite altitude covers a head {max_range} m out"
        )));
    }
    Ok(max_range * theta_min.to_radians().tan())
}

/// Builds the device population of a run: the manual devices first (ids
/// from 0), then the Poisson population re-numbered after them.
pub fn assemble_devices(manual: &[ManualDevice], params: &ClusteringParams) -> Result<Vec<Device>> {
    let mut devices: Vec<Device> = manual
        .iter()
        .enumerate()
        .map(|(id, m)| Device {
            id,
            position: m.position,
            residual_energy: m.residual_energy,
            role: Role::Uncovered,
        })
        .collect();
    let offset = devices.len();
    for d in generate_devices_ppp(params)? {
        devices.push(Device {
            id: offset + d.id,
            ..d
        });
    }
    Ok(devices)
}

/// Runs a scenario end to end: place devices (manual first, then the
/// Poisson population), elect heads, assign members, evaluate every head's
/// uplink, and plan the minimum coverage altitude.
pub fn run_scenario(scenario: &Scenario) -> Result<ScenarioOutcome> {
    scenario.validate()?;
    let mut devices = assemble_devices(&scenario.manual_devices, &scenario.clustering)?;

    let head_ids = elect_cluster_heads(&devices, scenario.clustering.energy_threshold);
    if head_ids.is_empty() {
        return Err(Error::Scenario(format!(
            "no cluster heads elected ({} devices, energy threshold {})",
            devices.len(),
            scenario.clustering.energy_threshold
        )));
    }
    let (clusters, uncovered) =
        assign_members(&devices, &head_ids, scenario.clustering.d2d_range_m);
    apply_roles(&mut devices, &clusters, &uncovered);

    let links: Vec<LinkReport> = par_map(head_ids.len(), |i| {
        evaluate_link(scenario, head_ids[i], devices[head_ids[i]].position)
    })
    .into_iter()
    .collect::<Result<_>>()?;

    let head_positions: Vec<GroundPosition> =
        head_ids.iter().map(|&id| devices[id].position).collect();
    let min_coverage_altitude_m = min_altitude_for_coverage(
        &head_positions,
        scenario.uav.nadir(),
        scenario.link_budget.los_threshold,
        &scenario.environment,
    )?;
    let infeasible_head_ids = links
        .iter()
        .filter(|l| !l.los_feasible)
        .map(|l| l.ch_id)
        .collect();

    let report = ScenarioReport {
        clustering: clustering_report(&clusters, &uncovered, &devices),
        links,
        min_coverage_altitude_m,
        infeasible_head_ids,
    };
    Ok(ScenarioOutcome {
        devices,
        clusters,
        uncovered,
        report,
    })
}

fn validate_altitudes(altitudes_m: &[f64]) -> Result<()> {
    if altitudes_m.is_empty() {
        return Err(Error::Config(
            "at least one altitude is required".to_string(),
        ));
    }
    for &h in altitudes_m {
        if h <= 0.0 || !h.is_finite() {
            return Err(Error::Config(format!(
                "altitudes must be positive, got {h}"
            )));
        }
    }
    Ok(())
}

/// Consistency check every evaluated link must satisfy: the feasibility
/// flag, the probability threshold, and the distance bound agree.
pub fn link_report_is_consistent(report: &LinkReport, scenario: &Scenario) -> bool {
    let by_probability = report.p_los >= scenario.link_budget.los_threshold;
    let by_distance = match max_slant_distance(
        scenario.uav.z,
        scenario.link_budget.los_threshold,
        &scenario.environment,
    ) {
        // 1e-9 m slack: the bound is reconstructed through sin/asin.
        Ok(d_max) => report.slant_distance_m <= d_max + 1e-9,
        Err(_) => false,
    };
    report.los_feasible == by_probability && report.los_feasible == by_distance
}
