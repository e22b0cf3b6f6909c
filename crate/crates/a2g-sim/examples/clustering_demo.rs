//! Ground population lifecycle: Poisson placement on the disc, residual
//! energy election, nearest-head assignment, and the summary counters.

use a2g_sim::clustering::{
    apply_roles, assign_members, clustering_report, devices_to_csv, elect_cluster_heads,
    generate_devices_ppp, ClusteringParams,
};

fn main() -> a2g_sim::Result<()> {
    let params = ClusteringParams {
        region_radius_m: 200.0,
        density_per_m2: 5e-4,
        seed: 42,
        ..ClusteringParams::default()
    };

    let mut devices = generate_devices_ppp(&params)?;
    println!(
        "placed {} devices on a {} m disc (expected {:.1})",
        devices.len(),
        params.region_radius_m,
        params.mean_count()
    );

    let heads = elect_cluster_heads(&devices, params.energy_threshold);
    println!(
        "elected {} heads at energy threshold {}",
        heads.len(),
        params.energy_threshold
    );

    let (clusters, uncovered) = assign_members(&devices, &heads, params.d2d_range_m);
    apply_roles(&mut devices, &clusters, &uncovered);

    let report = clustering_report(&clusters, &uncovered, &devices);
    println!(
        "members {} / uncovered {} -> coverage {:.3}, mean cluster size {:.2}, \
         longest member link {:.1} m",
        report.members,
        report.uncovered,
        report.coverage_fraction,
        report.mean_cluster_size,
        report.max_member_to_head_m
    );

    println!("\nfirst rows of devices.csv:");
    for line in devices_to_csv(&devices).lines().take(8) {
        println!("  {line}");
    }
    Ok(())
}
