//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (run with `-- --nocapture` to see them on success). Expected
//! values come from independent oracles computed here — Gaussian-tail
//! quadrature, bisection on the sigmoid, brute-force clustering — never
//! from the code paths under test.

use std::collections::BTreeMap;
use std::path::Path;

use sha2::{Digest, Sha256};

use a2g_sim::channel::{
    bit_error_rate, inv_q_function, los_probability, los_threshold_angle, max_slant_distance,
    min_tx_power_watts, q_function, received_power_dbm, watts_to_dbm, Environment, LinkBudget,
};
use a2g_sim::clustering::{
    assign_members, elect_cluster_heads, generate_devices_ppp, ClusteringParams,
};
use a2g_sim::commands::{cmd_cluster, cmd_figures, cmd_scenario};
use a2g_sim::config::{parse_config_str, RunConfig};
use a2g_sim::geometry::{distance_2d, elevation_angle_deg, GroundPosition};
use a2g_sim::scenario::{
    min_altitude_for_coverage, sweep_ber_vs_rx_power, sweep_plos_vs_distance,
    sweep_plos_vs_elevation, sweep_rx_power_vs_elevation,
};

fn report(criterion: &str, ok: bool, detail: &str) {
    println!(
        "acceptance {criterion}: {} - {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "{criterion} failed: {detail}");
}

#[test]
fn criterion_01_sigmoid_fixed_point() {
    let p = los_probability(9.6, &Environment::urban()).unwrap();
    let expected = 1.0 / (1.0 + 9.6);
    let ok = (p - 0.0943396).abs() <= 1e-7 && (p - expected).abs() <= 1e-12;
    report(
        "01 sigmoid fixed point",
        ok,
        &format!("P_LoS(9.6 deg) = {p:.9}"),
    );
}

#[test]
fn criterion_02_threshold_angle_and_slant_bound() {
    let env = Environment::urban();
    let theta = los_threshold_angle(0.95, &env).unwrap();
    let slant = max_slant_distance(100.0, 0.95, &env).unwrap();

    // independent bisection on the sigmoid itself
    let mut lo = 0.0f64;
    let mut hi = 90.0f64;
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if los_probability(mid, &env).unwrap() < 0.95 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let theta_oracle = 0.5 * (lo + hi);
    let slant_oracle = 100.0 / theta_oracle.to_radians().sin();

    let ok = (theta - 42.14).abs() <= 0.05
        && (slant - 149.0).abs() <= 0.5
        && (theta - theta_oracle).abs() <= 1e-9
        && ((slant - slant_oracle) / slant_oracle).abs() <= 1e-9;
    report(
        "02 threshold angle / slant bound",
        ok,
        &format!("theta_min = {theta:.4} deg (oracle {theta_oracle:.4}), d_max = {slant:.3} m"),
    );
}

#[test]
fn criterion_03_exact_elevation_angles() {
    let vertical = elevation_angle_deg(100.0, 100.0).unwrap();
    let half = elevation_angle_deg(100.0, 200.0).unwrap();
    let ok = vertical == 90.0 && (half - 30.0).abs() <= 1e-9;
    report(
        "03 exact elevation angles",
        ok,
        &format!("90 -> {vertical}, 30 -> {half:.12}"),
    );
}

#[test]
fn criterion_04_link_budget_and_alpha_spacing() {
    let lb2 = LinkBudget::default();
    let lb25 = LinkBudget {
        path_loss_exponent: 2.5,
        ..LinkBudget::default()
    };
    let rx2 = received_power_dbm(&lb2, 500.0).unwrap();
    let rx25 = received_power_dbm(&lb25, 500.0).unwrap();
    let spacing = rx2 - rx25;
    let ok = (rx2 - -89.31).abs() <= 0.02 && (spacing - 24.33).abs() <= 0.01;
    report(
        "04 received power / alpha spacing",
        ok,
        &format!("rx(alpha=2, 500 m) = {rx2:.4} dBm, spacing to alpha=2.5 = {spacing:.4} dB"),
    );
}

#[test]
fn criterion_05_min_power_round_trip() {
    let mut worst_rel = 0.0f64;
    for alpha in [2.0, 2.5, 3.0] {
        let lb = LinkBudget {
            path_loss_exponent: alpha,
            ..LinkBudget::default()
        };
        let mut d = 100.0;
        while d <= 1000.0 {
            let tx = min_tx_power_watts(&lb, d).unwrap();
            let chained = LinkBudget {
                tx_power_dbm: watts_to_dbm(tx),
                ..lb.clone()
            };
            let ber = bit_error_rate(&chained, received_power_dbm(&chained, d).unwrap());
            worst_rel = worst_rel.max(((ber - 1e-8) / 1e-8).abs());
            d += 100.0;
        }
    }
    let spot = min_tx_power_watts(&LinkBudget::default(), 500.0).unwrap();
    let ok = worst_rel <= 0.01 && ((spot - 5.36e-4) / 5.36e-4).abs() <= 0.01;
    report(
        "05 min-power round trip",
        ok,
        &format!("worst BER deviation {worst_rel:.2e}, min_tx(500 m) = {spot:.4e} W"),
    );
}

// Simpson quadrature of the standard normal tail on [x, x+40].
fn q_oracle(x: f64) -> f64 {
    if x < 0.0 {
        return 1.0 - q_oracle(-x);
    }
    let n = 100_000;
    let h = 40.0 / n as f64;
    let phi = |t: f64| (-0.5 * t * t).exp();
    let mut sum = phi(x) + phi(x + 40.0);
    for i in 1..n {
        let t = x + i as f64 * h;
        sum += if i % 2 == 1 {
            4.0 * phi(t)
        } else {
            2.0 * phi(t)
        };
    }
    sum * h / 3.0 / (2.0 * std::f64::consts::PI).sqrt()
}

#[test]
fn criterion_06_q_function_numerics() {
    let q2 = q_function(2.0);
    let oracle = q_oracle(2.0);
    let q_ok = ((q2 - oracle) / oracle).abs() <= 1e-6;
    println!(
        "acceptance 06a Q(2) vs quadrature oracle: {} - Q(2) = {q2:.10}, oracle {oracle:.10}",
        if q_ok { "PASS" } else { "FAIL" }
    );

    // Round trip x -> Q(x) -> Q^-1 on [-6, 6] step 0.25 at 1e-9 absolute.
    // Near x = -6 the f64 rounding of Q(x) ~ 1 destroys the information the
    // inverse would need: the best possible recovery is off by up to
    // ulp(1)/2 / phi(x), about 9e-9 at x = -6, so this clause fails there
    // by construction of f64 rather than by implementation choice.
    let mut failures = Vec::new();
    let mut i = 0;
    while i <= 48 {
        let x = -6.0 + i as f64 * 0.25;
        let back = inv_q_function(q_function(x)).unwrap();
        let err = (back - x).abs();
        if err > 1e-9 {
            let p = q_function(x);
            let ulp = if p >= 0.5 {
                2f64.powi(-53)
            } else {
                p * 2f64.powi(-52)
            };
            let phi = (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt();
            failures.push(format!(
                "x = {x}: |inv_q(q(x)) - x| = {err:.3e} (f64 resolution bound {:.3e})",
                0.5 * ulp / phi
            ));
        }
        i += 1;
    }
    let rt_ok = failures.is_empty();
    println!(
        "acceptance 06b inverse-Q round trip on [-6, 6]: {}",
        if rt_ok { "PASS" } else { "FAIL" }
    );
    for f in &failures {
        println!("    {f}");
    }
    assert!(q_ok, "Q(2) disagrees with the quadrature oracle");
    assert!(
        rt_ok,
        "round trip exceeded 1e-9 at {} grid points:\n{}",
        failures.len(),
        failures.join("\n")
    );
}

#[test]
fn criterion_07_plos_distance_curves() {
    let env = Environment::urban();
    let series = sweep_plos_vs_distance(&[100.0, 150.0, 200.0], 1000.0, 50.0, &env).unwrap();
    let mut ok = true;
    for s in &series {
        for w in s.points.windows(2) {
            ok &= w[1].1 <= w[0].1;
        }
    }
    // ordering at shared distances: higher altitude sees higher probability
    for d in [200.0, 300.0, 500.0, 1000.0] {
        let at = |idx: usize| series[idx].points.iter().find(|p| p.0 == d).map(|p| p.1);
        if let (Some(p100), Some(p150), Some(p200)) = (at(0), at(1), at(2)) {
            ok &= p200 > p150 && p150 > p100;
        }
    }
    report(
        "07 LoS-vs-distance curve shape",
        ok,
        "non-increasing, ordered by altitude",
    );
}

#[test]
fn criterion_08_plos_elevation_curve() {
    let env = Environment::urban();
    let series = sweep_plos_vs_elevation(0.0, 90.0, 0.5, &env, None).unwrap();
    let points = &series[0].points;
    let mut monotone = true;
    for w in points.windows(2) {
        monotone &= w[1].1 > w[0].1;
    }
    let at_70 = points.iter().find(|p| p.0 == 70.0).unwrap().1;
    let ok = monotone && (at_70 - 0.99939).abs() <= 1e-4;
    report(
        "08 LoS-vs-elevation curve",
        ok,
        &format!("monotone increasing, P_LoS(70 deg) = {at_70:.6}"),
    );
}

#[test]
fn criterion_09_power_and_ber_curve_shapes() {
    let lb = LinkBudget::default();
    let rx = sweep_rx_power_vs_elevation(&[2.0, 2.5, 3.0], 100.0, 5.0, 90.0, 1.0, &lb).unwrap();
    let mut ok = true;
    for s in &rx {
        for w in s.points.windows(2) {
            ok &= w[1].1 > w[0].1;
        }
    }
    for i in 0..rx[0].points.len() {
        ok &= rx[0].points[i].1 > rx[1].points[i].1 && rx[1].points[i].1 > rx[2].points[i].1;
    }
    let ber = sweep_ber_vs_rx_power(-150.0, -90.0, 0.5, &lb).unwrap();
    for w in ber.points.windows(2) {
        ok &= w[1].1 <= w[0].1;
    }
    report(
        "09 power / BER curve shapes",
        ok,
        "rx power rising in elevation, alpha-ordered; BER non-increasing",
    );
}

#[test]
fn criterion_10_clustering_oracle_and_poisson_mean() {
    // brute-force assignment oracle over 100 small populations
    let mut oracle_ok = true;
    for seed in 0..100u64 {
        let params = ClusteringParams {
            region_radius_m: 50.0,
            density_per_m2: 1e-3,
            d2d_range_m: 30.0,
            seed,
            ..ClusteringParams::default()
        };
        let devices = generate_devices_ppp(&params).unwrap();
        let heads = elect_cluster_heads(&devices, params.energy_threshold);
        let (clusters, uncovered) = assign_members(&devices, &heads, params.d2d_range_m);

        let mut membership: BTreeMap<usize, Option<usize>> = BTreeMap::new();
        for c in &clusters {
            for &m in &c.member_ids {
                membership.insert(m, Some(c.head_id));
            }
        }
        for &u in &uncovered {
            membership.insert(u, None);
        }
        let mut seen = vec![0u8; devices.len()];
        for c in &clusters {
            seen[c.head_id] += 1;
            for &m in &c.member_ids {
                seen[m] += 1;
                oracle_ok &= distance_2d(devices[m].position, devices[c.head_id].position)
                    <= params.d2d_range_m;
            }
            oracle_ok &= devices[c.head_id].residual_energy >= params.energy_threshold;
        }
        for &u in &uncovered {
            seen[u] += 1;
        }
        oracle_ok &= seen.iter().all(|&c| c == 1);

        // exhaustive nearest-feasible-head scan, fully independent
        for d in &devices {
            if heads.contains(&d.id) {
                continue;
            }
            let mut best: Option<(f64, usize)> = None;
            for &h in &heads {
                let dist = distance_2d(d.position, devices[h].position);
                if dist <= params.d2d_range_m
                    && best.is_none_or(|(bd, bh)| dist < bd || (dist == bd && h < bh))
                {
                    best = Some((dist, h));
                }
            }
            oracle_ok &= membership.get(&d.id) == Some(&best.map(|(_, h)| h));
        }
    }

    // Poisson mean over 1000 seeds at density*pi*R^2 = 785.398
    let params = ClusteringParams::default();
    let mean_target = params.mean_count();
    let total: u64 = (0..1000u64)
        .map(|seed| {
            generate_devices_ppp(&ClusteringParams {
                seed,
                ..params.clone()
            })
            .unwrap()
            .len() as u64
        })
        .sum();
    let mean = total as f64 / 1000.0;
    let band = 3.0 * (mean_target / 1000.0).sqrt();
    let mean_ok = (mean - mean_target).abs() <= band;

    report(
        "10 clustering oracle / Poisson mean",
        oracle_ok && mean_ok,
        &format!(
            "assignments exact on 100 seeds; mean {mean:.2} vs {mean_target:.2} +/- {band:.2}"
        ),
    );
}

fn sha256_files(dir: &Path) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.is_file() {
            let bytes = std::fs::read(&path).unwrap();
            let hex: String = Sha256::digest(&bytes)
                .iter()
                .map(|b| format!("{b:02x}"))
                .collect();
            out.insert(
                path.file_name().unwrap().to_string_lossy().into_owned(),
                hex,
            );
        }
    }
    out
}

#[test]
fn criterion_11_byte_identical_reruns() {
    let config = parse_config_str(r#"{"clustering": {"seed": 42}}"#).unwrap();
    let mut ok = true;
    let mut detail = String::new();

    let fig_a = tempfile::tempdir().unwrap();
    let fig_b = tempfile::tempdir().unwrap();
    cmd_figures(&config, fig_a.path()).unwrap();
    cmd_figures(&config, fig_b.path()).unwrap();
    let ha = sha256_files(fig_a.path());
    ok &= ha == sha256_files(fig_b.path()) && ha.len() == 11;
    detail.push_str(&format!("figures: {} files; ", ha.len()));

    let cl_a = tempfile::tempdir().unwrap();
    let cl_b = tempfile::tempdir().unwrap();
    cmd_cluster(&config, cl_a.path(), None).unwrap();
    cmd_cluster(&config, cl_b.path(), None).unwrap();
    let ha = sha256_files(cl_a.path());
    ok &= ha == sha256_files(cl_b.path());
    detail.push_str(&format!("cluster: {} files; ", ha.len()));

    let sc_a = tempfile::tempdir().unwrap();
    let sc_b = tempfile::tempdir().unwrap();
    cmd_scenario(&config, sc_a.path(), Some(7)).unwrap();
    cmd_scenario(&config, sc_b.path(), Some(7)).unwrap();
    let ha = sha256_files(sc_a.path());
    ok &= ha == sha256_files(sc_b.path());
    detail.push_str(&format!("scenario: {} files", ha.len()));

    report("11 byte-identical reruns (sha256)", ok, &detail);
}

#[test]
fn criterion_12_altitude_planning() {
    let env = Environment::urban();
    let origin = GroundPosition::new(0.0, 0.0);
    let ch = GroundPosition::new(110.45, 0.0);
    let h_star = min_altitude_for_coverage(&[ch], origin, 0.95, &env).unwrap();

    let slant = (110.45f64 * 110.45 + h_star * h_star).sqrt();
    let p_at = los_probability(elevation_angle_deg(h_star, slant).unwrap(), &env).unwrap();

    let h_low = 0.99 * h_star;
    let slant_low = (110.45f64 * 110.45 + h_low * h_low).sqrt();
    let p_low = los_probability(elevation_angle_deg(h_low, slant_low).unwrap(), &env).unwrap();

    let ok = (h_star - 100.0).abs() <= 0.5 && (p_at - 0.95).abs() <= 1e-6 && p_low < 0.95;
    report(
        "12 altitude planning",
        ok,
        &format!("H* = {h_star:.3} m, P_LoS(H*) = {p_at:.8}, P_LoS(0.99 H*) = {p_low:.6}"),
    );
}

// RunConfig is exercised above through parse_config_str; the default
// construction must agree with the empty config object.
#[test]
fn defaults_equal_empty_config() {
    assert_eq!(parse_config_str("{}").unwrap(), RunConfig::default());
}
