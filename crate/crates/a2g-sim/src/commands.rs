//! Library-level implementations of the CLI commands. The binary only
//! parses arguments, calls these, and maps errors to exit codes.

use std::path::{Path, PathBuf};

use crate::clustering::{
    apply_roles, assign_members, clustering_report, devices_to_csv, elect_cluster_heads,
};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::fmt::fmt_sig;
use crate::geometry::GroundPosition;
use crate::plot::write_svg_plot;
use crate::report::{
    clusters_json, figure_csv, link_report_json, link_report_text, scenario_report_json,
    series_csv, series_json,
};
use crate::scenario::{
    assemble_devices, evaluate_link, run_scenario, sweep_ber_vs_rx_power,
    sweep_elevation_vs_distance, sweep_plos_vs_distance, sweep_plos_vs_elevation,
    sweep_rx_power_vs_elevation, CurveSeries,
};

/// The five figure sweeps exposed individually by the `sweep` subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepKind {
    PlosDistance,
    PlosElevation,
    ElevationDistance,
    RxPowerElevation,
    BerRxPower,
}

impl SweepKind {
    pub fn file_stem(self) -> &'static str {
        match self {
            SweepKind::PlosDistance => "plos_vs_distance",
            SweepKind::PlosElevation => "plos_vs_elevation",
            SweepKind::ElevationDistance => "elevation_vs_distance",
            SweepKind::RxPowerElevation => "rx_power_vs_elevation",
            SweepKind::BerRxPower => "ber_vs_rx_power",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            SweepKind::PlosDistance => "LoS probability vs CH-UAV distance",
            SweepKind::PlosElevation => "LoS probability vs elevation angle",
            SweepKind::ElevationDistance => "Elevation angle vs CH-UAV distance",
            SweepKind::RxPowerElevation => "UAV received power vs elevation angle",
            SweepKind::BerRxPower => "Uplink BER vs UAV received power",
        }
    }
}

/// Optional axis overrides for one sweep invocation. `min` applies to the
/// swept axis start where the sweep has one (angle and power sweeps, and
/// the distance-axis start of the elevation sweep); distance sweeps that
/// start at each altitude ignore it.
#[derive(Debug, Clone, Copy, Default)]
pub struct GridOverride {
    pub min: Option<f64>,
    pub max: Option<f64>,
    pub step: Option<f64>,
}

/// Computes the series of one sweep from the configured grids plus overrides.
pub fn compute_sweep(
    config: &RunConfig,
    kind: SweepKind,
    ov: GridOverride,
) -> Result<Vec<CurveSeries>> {
    let altitudes = &config.uav.altitudes_m;
    match kind {
        SweepKind::PlosDistance => {
            let g = &config.sweeps.plos_vs_distance;
            sweep_plos_vs_distance(
                altitudes,
                ov.max.unwrap_or(g.d_max_m),
                ov.step.unwrap_or(g.step_m),
                &config.environment,
            )
        }
        SweepKind::PlosElevation => {
            let g = &config.sweeps.plos_vs_elevation;
            sweep_plos_vs_elevation(
                ov.min.unwrap_or(g.theta_min_deg),
                ov.max.unwrap_or(g.theta_max_deg),
                ov.step.unwrap_or(g.step_deg),
                &config.environment,
                config.elevation_caps().as_ref(),
            )
        }
        SweepKind::ElevationDistance => {
            let g = &config.sweeps.elevation_vs_distance;
            let min_alt = altitudes.iter().cloned().fold(f64::INFINITY, f64::min);
            sweep_elevation_vs_distance(
                altitudes,
                ov.min.unwrap_or(min_alt),
                ov.max.unwrap_or(g.d_max_m),
                ov.step.unwrap_or(g.step_m),
            )
        }
        SweepKind::RxPowerElevation => {
            let g = &config.sweeps.rx_power_vs_elevation;
            sweep_rx_power_vs_elevation(
                &g.alphas,
                g.altitude_m,
                ov.min.unwrap_or(g.theta_min_deg),
                ov.max.unwrap_or(g.theta_max_deg),
                ov.step.unwrap_or(g.step_deg),
                &config.link_budget,
            )
        }
        SweepKind::BerRxPower => {
            let g = &config.sweeps.ber_vs_rx_power;
            Ok(vec![sweep_ber_vs_rx_power(
                ov.min.unwrap_or(g.p_min_dbm),
                ov.max.unwrap_or(g.p_max_dbm),
                ov.step.unwrap_or(g.step_db),
                &config.link_budget,
            )?])
        }
    }
}

/// Evaluates one CH-to-UAV link against the configured UAV and renders it
/// as a human-readable table or JSON.
pub fn cmd_link(config: &RunConfig, x: f64, y: f64, json: bool) -> Result<String> {
    let scenario = config.to_scenario(None);
    scenario.validate()?;
    let report = evaluate_link(&scenario, 0, GroundPosition::new(x, y))?;
    Ok(if json {
        link_report_json(&report)
    } else {
        link_report_text(&report, &config.link_budget)
    })
}

/// Runs one sweep and writes one CSV per series (or one JSON document),
/// plus an SVG chart when requested. Returns the written paths.
pub fn cmd_sweep(
    config: &RunConfig,
    kind: SweepKind,
    ov: GridOverride,
    out_dir: &Path,
    svg: bool,
    json: bool,
) -> Result<Vec<PathBuf>> {
    let series = compute_sweep(config, kind, ov)?;
    create_out_dir(out_dir)?;
    let mut written = vec![write_resolved_config(config, out_dir)?];
    if json {
        let path = out_dir.join(format!("{}.json", kind.file_stem()));
        std::fs::write(&path, series_json(&series))?;
        written.push(path);
    } else {
        for s in &series {
            let path = out_dir.join(format!("{}_{}.csv", kind.file_stem(), sanitize(&s.label)));
            std::fs::write(&path, series_csv(s))?;
            written.push(path);
        }
    }
    if svg {
        let path = out_dir.join(format!("{}.svg", kind.file_stem()));
        write_svg_plot(&series, kind.title(), &path)?;
        written.push(path);
    }
    Ok(written)
}

/// Regenerates all five figure data files and charts: fig3 through fig7 as
/// CSV plus SVG, with the resolved configuration echoed alongside.
pub fn cmd_figures(config: &RunConfig, out_dir: &Path) -> Result<Vec<PathBuf>> {
    create_out_dir(out_dir)?;
    let mut written = vec![write_resolved_config(config, out_dir)?];
    let figures = [
        (3, SweepKind::PlosDistance),
        (4, SweepKind::PlosElevation),
        (5, SweepKind::ElevationDistance),
        (6, SweepKind::RxPowerElevation),
        (7, SweepKind::BerRxPower),
    ];
    for (number, kind) in figures {
        let series = compute_sweep(config, kind, GridOverride::default())?;
        let csv_path = out_dir.join(format!("fig{number}.csv"));
        std::fs::write(&csv_path, figure_csv(&series))?;
        written.push(csv_path);
        let svg_path = out_dir.join(format!("fig{number}.svg"));
        write_svg_plot(&series, kind.title(), &svg_path)?;
        written.push(svg_path);
    }
    Ok(written)
}

/// Places the ground population, elects heads, assigns members, and writes
/// `devices.csv` plus `clusters.json`. Returns the stdout summary.
pub fn cmd_cluster(config: &RunConfig, out_dir: &Path, seed: Option<u64>) -> Result<String> {
    let scenario = config.to_scenario(seed);
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
    let report = clustering_report(&clusters, &uncovered, &devices);

    create_out_dir(out_dir)?;
    write_resolved_config(config, out_dir)?;
    std::fs::write(out_dir.join("devices.csv"), devices_to_csv(&devices))?;
    std::fs::write(
        out_dir.join("clusters.json"),
        clusters_json(&clusters, &uncovered, &report),
    )?;

    Ok(format!(
        "devices={} heads={} members={} uncovered={} coverage={} mean_cluster_size={}\n",
        devices.len(),
        report.heads,
        report.members,
        report.uncovered,
        fmt_sig(report.coverage_fraction),
        fmt_sig(report.mean_cluster_size),
    ))
}

/// Runs the full scenario and writes `report.json` and `devices.csv`.
/// Returns the stdout summary.
pub fn cmd_scenario(config: &RunConfig, out_dir: &Path, seed: Option<u64>) -> Result<String> {
    let scenario = config.to_scenario(seed);
    let outcome = run_scenario(&scenario)?;
    create_out_dir(out_dir)?;
    write_resolved_config(config, out_dir)?;
    std::fs::write(
        out_dir.join("report.json"),
        scenario_report_json(&outcome.report),
    )?;
    std::fs::write(
        out_dir.join("devices.csv"),
        devices_to_csv(&outcome.devices),
    )?;
    Ok(format!(
        "devices={} heads={} members={} uncovered={} feasible_heads={} \
         min_coverage_altitude_m={}\n",
        outcome.devices.len(),
        outcome.report.clustering.heads,
        outcome.report.clustering.members,
        outcome.report.clustering.uncovered,
        outcome
            .report
            .links
            .iter()
            .filter(|l| l.los_feasible)
            .count(),
        fmt_sig(outcome.report.min_coverage_altitude_m),
    ))
}

fn create_out_dir(out_dir: &Path) -> Result<()> {
    std::fs::create_dir_all(out_dir)?;
    Ok(())
}

fn write_resolved_config(config: &RunConfig, out_dir: &Path) -> Result<PathBuf> {
    let path = out_dir.join("resolved-config.json");
    std::fs::write(&path, config.resolved_json())?;
    Ok(path)
}

fn sanitize(label: &str) -> String {
    label
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '.' || c == '-' {
                c
            } else {
                '-'
            }
        })
        .collect()
}
