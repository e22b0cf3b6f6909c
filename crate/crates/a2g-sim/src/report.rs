//! CSV and JSON emitters. All numeric text carries six significant digits
//! with a `.` separator, lines end with `\n`, and JSON keys keep their
//! declaration order so reruns are byte-identical.

use serde::Serialize;

use crate::channel::{watts_to_dbm, LinkBudget};
use crate::clustering::{Cluster, ClusteringReport};
use crate::fmt::{fmt_sig, round_sig6};
use crate::scenario::{CurveSeries, LinkReport, ScenarioReport};

/// One sweep series as CSV: header `x_<name>,y_<name>`, one row per point.
pub fn series_csv(series: &CurveSeries) -> String {
    let mut out = format!("x_{},y_{}\n", series.x_name, series.y_name);
    for &(x, y) in &series.points {
        out.push_str(&fmt_sig(x));
        out.push(',');
        out.push_str(&fmt_sig(y));
        out.push('\n');
    }
    out
}

/// A figure's series list as one CSV file. Multi-series figures get a
/// leading `series` column; a single series collapses to the plain layout.
pub fn figure_csv(series: &[CurveSeries]) -> String {
    match series {
        [single] => series_csv(single),
        _ => {
            let mut out = format!("series,x_{},y_{}\n", series[0].x_name, series[0].y_name);
            for s in series {
                for &(x, y) in &s.points {
                    out.push_str(&s.label);
                    out.push(',');
                    out.push_str(&fmt_sig(x));
                    out.push(',');
                    out.push_str(&fmt_sig(y));
                    out.push('\n');
                }
            }
            out
        }
    }
}

/// All series of one sweep as a JSON document.
pub fn series_json(series: &[CurveSeries]) -> String {
    #[derive(Serialize)]
    struct SeriesDoc<'a> {
        label: &'a str,
        x_name: &'a str,
        y_name: &'a str,
        points: Vec<(f64, f64)>,
    }
    let docs: Vec<SeriesDoc> = series
        .iter()
        .map(|s| SeriesDoc {
            label: &s.label,
            x_name: &s.x_name,
            y_name: &s.y_name,
            points: s
                .points
                .iter()
                .map(|&(x, y)| (round_sig6(x), round_sig6(y)))
                .collect(),
        })
        .collect();
    let mut text = serde_json::to_string_pretty(&docs).expect("series serialize");
    text.push('\n');
    text
}

fn rounded_link(l: &LinkReport) -> LinkReport {
    LinkReport {
        ch_id: l.ch_id,
        slant_distance_m: round_sig6(l.slant_distance_m),
        elevation_deg: round_sig6(l.elevation_deg),
        p_los: round_sig6(l.p_los),
        los_feasible: l.los_feasible,
        rx_power_dbm: round_sig6(l.rx_power_dbm),
        min_tx_power_w: round_sig6(l.min_tx_power_w),
        ber: round_sig6(l.ber),
    }
}

fn rounded_clustering(r: &ClusteringReport) -> ClusteringReport {
    ClusteringReport {
        heads: r.heads,
        members: r.members,
        uncovered: r.uncovered,
        mean_cluster_size: round_sig6(r.mean_cluster_size),
        max_member_to_head_m: round_sig6(r.max_member_to_head_m),
        coverage_fraction: round_sig6(r.coverage_fraction),
    }
}

/// One link report as JSON (all eight fields, stable order).
pub fn link_report_json(report: &LinkReport) -> String {
    let mut text = serde_json::to_string_pretty(&rounded_link(report)).expect("link serialize");
    text.push('\n');
    text
}

/// Human-readable link report. A BER of exactly zero means the Gaussian
/// tail underflowed and is flagged as such.
pub fn link_report_text(report: &LinkReport, lb: &LinkBudget) -> String {
    let ber = if report.ber == 0.0 {
        "0 (below numeric floor)".to_string()
    } else {
        fmt_sig(report.ber)
    };
    format!(
        "CH {id} -> UAV uplink\n\
         slant distance   : {slant} m\n\
         elevation angle  : {elev} deg\n\
         LoS probability  : {plos}\n\
         LoS feasible     : {feas} (threshold {eps})\n\
         received power   : {rx} dBm\n\
         min CH tx power  : {txw} W ({txdbm} dBm)\n\
         bit error rate   : {ber}\n",
        id = report.ch_id,
        slant = fmt_sig(report.slant_distance_m),
        elev = fmt_sig(report.elevation_deg),
        plos = fmt_sig(report.p_los),
        feas = if report.los_feasible { "yes" } else { "no" },
        eps = fmt_sig(lb.los_threshold),
        rx = fmt_sig(report.rx_power_dbm),
        txw = fmt_sig(report.min_tx_power_w),
        txdbm = fmt_sig(watts_to_dbm(report.min_tx_power_w)),
        ber = ber,
    )
}

/// The cluster layout document written by the cluster command.
pub fn clusters_json(
    clusters: &[Cluster],
    uncovered: &[usize],
    report: &ClusteringReport,
) -> String {
    #[derive(Serialize)]
    struct ClustersDoc<'a> {
        clusters: &'a [Cluster],
        uncovered_ids: &'a [usize],
        report: ClusteringReport,
    }
    let doc = ClustersDoc {
        clusters,
        uncovered_ids: uncovered,
        report: rounded_clustering(report),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("clusters serialize");
    text.push('\n');
    text
}

/// The full scenario report document.
pub fn scenario_report_json(report: &ScenarioReport) -> String {
    let rounded = ScenarioReport {
        clustering: rounded_clustering(&report.clustering),
        links: report.links.iter().map(rounded_link).collect(),
        min_coverage_altitude_m: round_sig6(report.min_coverage_altitude_m),
        infeasible_head_ids: report.infeasible_head_ids.clone(),
    };
    let mut text = serde_json::to_string_pretty(&rounded).expect("report serialize");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::CurveSeries;

    fn sample_series() -> CurveSeries {
        CurveSeries::new(
            "H=100",
            "distance_m",
            "p_los",
            vec![(100.0, 0.9999751402), (105.0, 0.99996)],
        )
        .unwrap()
    }

    #[test]
    fn series_csv_layout() {
        let csv = series_csv(&sample_series());
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "x_distance_m,y_p_los");
        assert_eq!(lines[1], "100.000,0.999975");
        assert!(!csv.contains('\r'));
        assert!(csv.ends_with('\n'));
    }

    #[test]
    fn figure_csv_gains_series_column_only_when_multi() {
        let a = sample_series();
        let mut b = sample_series();
        b.label = "H=150".to_string();
        let multi = figure_csv(&[a.clone(), b]);
        assert!(multi.starts_with("series,x_distance_m,y_p_los\n"));
        assert!(multi.contains("H=150,100.000,"));
        let single = figure_csv(&[a]);
        assert!(single.starts_with("x_distance_m,y_p_los\n"));
    }

    #[test]
    fn link_json_has_all_eight_fields() {
        let report = LinkReport {
            ch_id: 0,
            slant_distance_m: 100.0,
            elevation_deg: 90.0,
            p_los: 0.999975140280,
            los_feasible: true,
            rx_power_dbm: -75.32963,
            min_tx_power_w: 2.1442e-5,
            ber: 0.0,
        };
        let json = link_report_json(&report);
        for key in [
            "ch_id",
            "slant_distance_m",
            "elevation_deg",
            "p_los",
            "los_feasible",
            "rx_power_dbm",
            "min_tx_power_w",
            "ber",
        ] {
            assert!(json.contains(key), "missing {key}");
        }
        let text = link_report_text(&report, &LinkBudget::default());
        assert!(text.contains("below numeric floor"));
        assert!(text.contains("0.999975"));
    }
}
