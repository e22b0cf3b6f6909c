//! One full end-to-end run: place the population, elect cluster heads,
//! attach members, evaluate every head's uplink, and plan the minimum
//! coverage altitude.

use a2g_sim::channel::{Environment, LinkBudget};
use a2g_sim::clustering::ClusteringParams;
use a2g_sim::geometry::AirPosition;
use a2g_sim::scenario::{run_scenario, Scenario};

fn main() -> a2g_sim::Result<()> {
    let scenario = Scenario {
        uav: AirPosition::new(0.0, 0.0, 100.0),
        environment: Environment::urban(),
        link_budget: LinkBudget::default(),
        clustering: ClusteringParams {
            seed: 7,
            ..ClusteringParams::default()
        },
        manual_devices: Vec::new(),
    };

    let outcome = run_scenario(&scenario)?;
    let c = &outcome.report.clustering;
    println!(
        "{} devices -> {} heads, {} members, {} uncovered (coverage {:.3})",
        outcome.devices.len(),
        c.heads,
        c.members,
        c.uncovered,
        c.coverage_fraction
    );
    println!(
        "min altitude for full head coverage: {:.1} m (currently {} m)",
        outcome.report.min_coverage_altitude_m, scenario.uav.z
    );
    println!(
        "{} of {} heads meet the LoS threshold at the current altitude",
        outcome
            .report
            .links
            .iter()
            .filter(|l| l.los_feasible)
            .count(),
        outcome.report.links.len()
    );

    println!("\nfive sample head links:");
    for link in outcome.report.links.iter().take(5) {
        println!(
            "  head {:>4}: slant {:7.1} m, elevation {:5.2} deg, P_LoS {:.4}, feasible {}",
            link.ch_id, link.slant_distance_m, link.elevation_deg, link.p_los, link.los_feasible
        );
    }
    Ok(())
}
