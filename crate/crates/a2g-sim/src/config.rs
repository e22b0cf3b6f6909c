//! Run configuration: strict JSON ingestion (unknown keys rejected), radio
//! defaults for every omitted field, and serialization of the fully
//! resolved values so each run can echo exactly what it used.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::channel::{Environment, LinkBudget};
use crate::clustering::ClusteringParams;
use crate::error::{Error, Result};
use crate::geometry::{AirPosition, GroundPosition};
use crate::scenario::{AltitudeCaps, ManualDevice, Scenario};

/// Fully resolved configuration of one run. Serializes to the
/// `resolved-config.json` echo with stable key order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub environment: Environment,
    pub link_budget: LinkBudget,
    pub clustering: ClusteringParams,
    pub uav: UavConfig,
    pub sweeps: SweepGrids,
    pub manual_devices: Vec<ManualDeviceConfig>,
    pub output: OutputConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UavConfig {
    pub x_m: f64,
    pub y_m: f64,
    /// Hover altitude used by link evaluation and scenario runs.
    pub altitude_m: f64,
    /// Altitude set swept by the multi-altitude figures.
    pub altitudes_m: Vec<f64>,
}

impl Default for UavConfig {
    fn default() -> Self {
        Self {
            x_m: 0.0,
            y_m: 0.0,
            altitude_m: 100.0,
            altitudes_m: vec![100.0, 150.0, 200.0],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepGrids {
    pub plos_vs_distance: DistanceGrid,
    pub plos_vs_elevation: ElevationGrid,
    pub elevation_vs_distance: DistanceGrid,
    pub rx_power_vs_elevation: RxPowerGrid,
    pub ber_vs_rx_power: BerGrid,
}

impl Default for SweepGrids {
    fn default() -> Self {
        Self {
            plos_vs_distance: DistanceGrid {
                d_max_m: 1000.0,
                step_m: 5.0,
            },
            plos_vs_elevation: ElevationGrid {
                theta_min_deg: 0.0,
                theta_max_deg: 90.0,
                step_deg: 0.5,
                max_ground_range_m: Some(1000.0),
            },
            elevation_vs_distance: DistanceGrid {
                d_max_m: 1000.0,
                step_m: 5.0,
            },
            rx_power_vs_elevation: RxPowerGrid {
                theta_min_deg: 5.0,
                theta_max_deg: 90.0,
                step_deg: 1.0,
                alphas: vec![2.0, 2.5, 3.0],
                altitude_m: 100.0,
            },
            ber_vs_rx_power: BerGrid {
                p_min_dbm: -150.0,
                p_max_dbm: -90.0,
                step_db: 0.5,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceGrid {
    pub d_max_m: f64,
    pub step_m: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ElevationGrid {
    pub theta_min_deg: f64,
    pub theta_max_deg: f64,
    pub step_deg: f64,
    /// When set, the elevation sweep emits one series per configured
    /// altitude, clipped to the angles reachable within this ground range;
    /// `null` selects the single analytic curve.
    pub max_ground_range_m: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RxPowerGrid {
    pub theta_min_deg: f64,
    pub theta_max_deg: f64,
    pub step_deg: f64,
    pub alphas: Vec<f64>,
    pub altitude_m: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BerGrid {
    pub p_min_dbm: f64,
    pub p_max_dbm: f64,
    pub step_db: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManualDeviceConfig {
    pub x_m: f64,
    pub y_m: f64,
    pub energy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputConfig {
    pub directory: String,
    pub formats: Vec<String>,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            directory: "out".to_string(),
            formats: vec!["csv".to_string(), "json".to_string(), "svg".to_string()],
        }
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            environment: Environment::urban(),
            link_budget: LinkBudget::default(),
            clustering: ClusteringParams::default(),
            uav: UavConfig::default(),
            sweeps: SweepGrids::default(),
            manual_devices: Vec::new(),
            output: OutputConfig::default(),
        }
    }
}

impl RunConfig {
    /// Builds the scenario this configuration describes; `seed_override`
    /// replaces the configured generator seed when given.
    pub fn to_scenario(&self, seed_override: Option<u64>) -> Scenario {
        let mut clustering = self.clustering.clone();
        if let Some(seed) = seed_override {
            clustering.seed = seed;
        }
        Scenario {
            uav: AirPosition::new(self.uav.x_m, self.uav.y_m, self.uav.altitude_m),
            environment: self.environment.clone(),
            link_budget: self.link_budget.clone(),
            clustering,
            manual_devices: self
                .manual_devices
                .iter()
                .map(|m| ManualDevice {
                    position: GroundPosition::new(m.x_m, m.y_m),
                    residual_energy: m.energy,
                })
                .collect(),
        }
    }

    /// Elevation-sweep altitude restriction implied by the configuration.
    pub fn elevation_caps(&self) -> Option<AltitudeCaps> {
        self.sweeps
            .plos_vs_elevation
            .max_ground_range_m
            .map(|g| AltitudeCaps {
                altitudes_m: self.uav.altitudes_m.clone(),
                max_ground_range_m: g,
            })
    }

    /// The resolved-config echo, pretty-printed with stable key order.
    pub fn resolved_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("config serializes");
        text.push('\n');
        text
    }

    fn validate(&self) -> Result<()> {
        self.link_budget.validate()?;
        self.clustering.validate()?;
        if self.uav.altitude_m <= 0.0 || self.uav.altitude_m.is_nan() {
            return Err(Error::Config(format!(
                "uav.altitude_m must be > 0, got {}",
                self.uav.altitude_m
            )));
        }
        if self.uav.altitudes_m.is_empty() {
            return Err(Error::Config(
                "uav.altitudes_m must not be empty".to_string(),
            ));
        }
        for &h in &self.uav.altitudes_m {
            if h <= 0.0 || h.is_nan() {
                return Err(Error::Config(format!(
                    "uav.altitudes_m entries must be > 0, got {h}"
                )));
            }
        }
        for (i, m) in self.manual_devices.iter().enumerate() {
            if !(0.0..=1.0).contains(&m.energy) {
                return Err(Error::Config(format!(
                    "manual_devices[{i}].energy must be in [0, 1], got {}",
                    m.energy
                )));
            }
            if !m.x_m.is_finite() || !m.y_m.is_finite() {
                return Err(Error::Config(format!(
                    "manual_devices[{i}] position must be finite"
                )));
            }
        }
        for f in &self.output.formats {
            if !matches!(f.as_str(), "csv" | "json" | "svg") {
                return Err(Error::Config(format!(
                    "output.formats entries must be csv, json, or svg, got '{f}'"
                )));
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Raw layer: everything optional, unknown keys rejected.
// ---------------------------------------------------------------------------

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    environment: Option<RawEnvironment>,
    link_budget: Option<RawLinkBudget>,
    clustering: Option<RawClustering>,
    uav: Option<RawUav>,
    sweeps: Option<RawSweeps>,
    manual_devices: Option<Vec<ManualDeviceConfig>>,
    output: Option<RawOutput>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEnvironment {
    name: Option<String>,
    a: Option<f64>,
    b: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLinkBudget {
    tx_power_dbm: Option<f64>,
    carrier_freq_hz: Option<f64>,
    path_loss_exponent: Option<f64>,
    excess_loss_db: Option<f64>,
    noise_psd_dbm_hz: Option<f64>,
    bit_rate_bps: Option<f64>,
    bandwidth_hz: Option<f64>,
    ber_target: Option<f64>,
    los_threshold: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClustering {
    region_radius_m: Option<f64>,
    density_per_m2: Option<f64>,
    energy_threshold: Option<f64>,
    d2d_range_m: Option<f64>,
    seed: Option<u64>,
    max_devices: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawUav {
    x_m: Option<f64>,
    y_m: Option<f64>,
    altitude_m: Option<f64>,
    altitudes_m: Option<Vec<f64>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweeps {
    plos_vs_distance: Option<RawDistanceGrid>,
    plos_vs_elevation: Option<RawElevationGrid>,
    elevation_vs_distance: Option<RawDistanceGrid>,
    rx_power_vs_elevation: Option<RawRxPowerGrid>,
    ber_vs_rx_power: Option<RawBerGrid>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDistanceGrid {
    d_max_m: Option<f64>,
    step_m: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawElevationGrid {
    theta_min_deg: Option<f64>,
    theta_max_deg: Option<f64>,
    step_deg: Option<f64>,
    // Option<Option<..>> so an explicit null can switch the analytic curve on.
    #[serde(default, with = "double_option")]
    max_ground_range_m: Option<Option<f64>>,
}

mod double_option {
    use serde::{Deserialize, Deserializer};

    pub fn deserialize<'de, D>(d: D) -> Result<Option<Option<f64>>, D::Error>
    where
        D: Deserializer<'de>,
    {
        Ok(Some(Option::<f64>::deserialize(d)?))
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRxPowerGrid {
    theta_min_deg: Option<f64>,
    theta_max_deg: Option<f64>,
    step_deg: Option<f64>,
    alphas: Option<Vec<f64>>,
    altitude_m: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBerGrid {
    p_min_dbm: Option<f64>,
    p_max_dbm: Option<f64>,
    step_db: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    directory: Option<String>,
    formats: Option<Vec<String>>,
}

impl RawConfig {
    fn resolve(self) -> Result<RunConfig> {
        let environment = match self.environment {
            None => Environment::urban(),
            Some(raw) => match (raw.a, raw.b) {
                (Some(a), Some(b)) => {
                    Environment::new(raw.name.unwrap_or_else(|| "custom".to_string()), a, b)?
                }
                (None, None) => {
                    let name = raw.name.unwrap_or_else(|| "urban".to_string());
                    match name.as_str() {
                        "urban" => Environment::urban(),
                        other => {
                            return Err(Error::Config(format!(
                                "unknown environment preset '{other}' (available: urban); \
                                 supply explicit a and b instead"
                            )))
                        }
                    }
                }
                _ => {
                    return Err(Error::Config(
                        "environment.a and environment.b must be given together".to_string(),
                    ))
                }
            },
        };

        let defaults = LinkBudget::default();
        let raw_lb = self.link_budget.unwrap_or_default();
        let link_budget = LinkBudget {
            tx_power_dbm: raw_lb.tx_power_dbm.unwrap_or(defaults.tx_power_dbm),
            carrier_freq_hz: raw_lb.carrier_freq_hz.unwrap_or(defaults.carrier_freq_hz),
            path_loss_exponent: raw_lb
                .path_loss_exponent
                .unwrap_or(defaults.path_loss_exponent),
            excess_loss_db: raw_lb.excess_loss_db.unwrap_or(defaults.excess_loss_db),
            noise_psd_dbm_hz: raw_lb.noise_psd_dbm_hz.unwrap_or(defaults.noise_psd_dbm_hz),
            bit_rate_bps: raw_lb.bit_rate_bps.unwrap_or(defaults.bit_rate_bps),
            bandwidth_hz: raw_lb.bandwidth_hz.unwrap_or(defaults.bandwidth_hz),
            ber_target: raw_lb.ber_target.unwrap_or(defaults.ber_target),
            los_threshold: raw_lb.los_threshold.unwrap_or(defaults.los_threshold),
        };

        let cdefaults = ClusteringParams::default();
        let raw_cl = self.clustering.unwrap_or_default();
        let clustering = ClusteringParams {
            region_radius_m: raw_cl.region_radius_m.unwrap_or(cdefaults.region_radius_m),
            density_per_m2: raw_cl.density_per_m2.unwrap_or(cdefaults.density_per_m2),
            energy_threshold: raw_cl
                .energy_threshold
                .unwrap_or(cdefaults.energy_threshold),
            d2d_range_m: raw_cl.d2d_range_m.unwrap_or(cdefaults.d2d_range_m),
            seed: raw_cl.seed.unwrap_or(cdefaults.seed),
            max_devices: raw_cl.max_devices.unwrap_or(cdefaults.max_devices),
        };

        let udefaults = UavConfig::default();
        let raw_uav = self.uav.unwrap_or_default();
        let uav = UavConfig {
            x_m: raw_uav.x_m.unwrap_or(udefaults.x_m),
            y_m: raw_uav.y_m.unwrap_or(udefaults.y_m),
            altitude_m: raw_uav.altitude_m.unwrap_or(udefaults.altitude_m),
            altitudes_m: raw_uav.altitudes_m.unwrap_or(udefaults.altitudes_m),
        };

        let sdefaults = SweepGrids::default();
        let raw_sweeps = self.sweeps.unwrap_or_default();
        let fig3 = raw_sweeps.plos_vs_distance.unwrap_or_default();
        let fig4 = raw_sweeps.plos_vs_elevation.unwrap_or_default();
        let fig5 = raw_sweeps.elevation_vs_distance.unwrap_or_default();
        let fig6 = raw_sweeps.rx_power_vs_elevation.unwrap_or_default();
        let fig7 = raw_sweeps.ber_vs_rx_power.unwrap_or_default();
        let sweeps = SweepGrids {
            plos_vs_distance: DistanceGrid {
                d_max_m: fig3.d_max_m.unwrap_or(sdefaults.plos_vs_distance.d_max_m),
                step_m: fig3.step_m.unwrap_or(sdefaults.plos_vs_distance.step_m),
            },
            plos_vs_elevation: ElevationGrid {
                theta_min_deg: fig4
                    .theta_min_deg
                    .unwrap_or(sdefaults.plos_vs_elevation.theta_min_deg),
                theta_max_deg: fig4
                    .theta_max_deg
                    .unwrap_or(sdefaults.plos_vs_elevation.theta_max_deg),
                step_deg: fig4
                    .step_deg
                    .unwrap_or(sdefaults.plos_vs_elevation.step_deg),
                max_ground_range_m: fig4
                    .max_ground_range_m
                    .unwrap_or(sdefaults.plos_vs_elevation.max_ground_range_m),
            },
            elevation_vs_distance: DistanceGrid {
                d_max_m: fig5
                    .d_max_m
                    .unwrap_or(sdefaults.elevation_vs_distance.d_max_m),
                step_m: fig5
                    .step_m
                    .unwrap_or(sdefaults.elevation_vs_distance.step_m),
            },
            rx_power_vs_elevation: RxPowerGrid {
                theta_min_deg: fig6
                    .theta_min_deg
                    .unwrap_or(sdefaults.rx_power_vs_elevation.theta_min_deg),
                theta_max_deg: fig6
                    .theta_max_deg
                    .unwrap_or(sdefaults.rx_power_vs_elevation.theta_max_deg),
                step_deg: fig6
                    .step_deg
                    .unwrap_or(sdefaults.rx_power_vs_elevation.step_deg),
                alphas: fig6
                    .alphas
                    .unwrap_or(sdefaults.rx_power_vs_elevation.alphas),
                altitude_m: fig6
                    .altitude_m
                    .unwrap_or(sdefaults.rx_power_vs_elevation.altitude_m),
            },
            ber_vs_rx_power: BerGrid {
                p_min_dbm: fig7
                    .p_min_dbm
                    .unwrap_or(sdefaults.ber_vs_rx_power.p_min_dbm),
                p_max_dbm: fig7
                    .p_max_dbm
                    .unwrap_or(sdefaults.ber_vs_rx_power.p_max_dbm),
                step_db: fig7.step_db.unwrap_or(sdefaults.ber_vs_rx_power.step_db),
            },
        };

        let odefaults = OutputConfig::default();
        let raw_out = self.output.unwrap_or_default();
        let output = OutputConfig {
            directory: raw_out.directory.unwrap_or(odefaults.directory),
            formats: raw_out.formats.unwrap_or(odefaults.formats),
        };

        let config = RunConfig {
            environment,
            link_budget,
            clustering,
            uav,
            sweeps,
            manual_devices: self.manual_devices.unwrap_or_default(),
            output,
        };
        config.validate()?;
        Ok(config)
    }
}

/// Parses and validates a configuration file. A missing or malformed file,
/// an unknown key, or a value outside its invariant all come back as config
/// errors (exit code 1).
pub fn parse_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read config file {}: {e}", path.display())))?;
    parse_config_str(&text)
}

/// [`parse_config`] on an in-memory JSON document.
pub fn parse_config_str(text: &str) -> Result<RunConfig> {
    let raw: RawConfig = serde_json::from_str(text)
        .map_err(|e| Error::Config(format!("invalid config JSON: {e}")))?;
    raw.resolve()
}
