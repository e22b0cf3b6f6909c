//! Evaluate single cluster-head-to-UAV uplinks at a few ground ranges and
//! print the full link report for each.

use a2g_sim::channel::{Environment, LinkBudget};
use a2g_sim::clustering::ClusteringParams;
use a2g_sim::geometry::{AirPosition, GroundPosition};
use a2g_sim::report::link_report_text;
use a2g_sim::scenario::{evaluate_link, Scenario};

fn main() -> a2g_sim::Result<()> {
    let scenario = Scenario {
        uav: AirPosition::new(0.0, 0.0, 100.0),
        environment: Environment::urban(),
        link_budget: LinkBudget::default(),
        clustering: ClusteringParams::default(),
        manual_devices: Vec::new(),
    };

    for (id, range) in [0.0, 110.45, 400.0].into_iter().enumerate() {
        let report = evaluate_link(&scenario, id, GroundPosition::new(range, 0.0))?;
        println!("--- cluster head at ground range {range} m ---");
        print!("{}", link_report_text(&report, &scenario.link_budget));
        println!();
    }
    Ok(())
}
