//! Plan the lowest hover altitude that keeps every cluster head inside the
//! LoS-probability requirement, and show how the plan tracks the farthest
//! head.

use a2g_sim::channel::{los_probability, Environment};
use a2g_sim::geometry::{distance_3d, elevation_angle_deg, AirPosition, GroundPosition};
use a2g_sim::scenario::min_altitude_for_coverage;

fn main() -> a2g_sim::Result<()> {
    let env = Environment::urban();
    let hover = GroundPosition::new(0.0, 0.0);
    let heads = vec![
        GroundPosition::new(45.0, 10.0),
        GroundPosition::new(-80.0, 60.0),
        GroundPosition::new(110.45, 0.0),
        GroundPosition::new(20.0, -95.0),
    ];

    for epsilon in [0.9, 0.95, 0.99] {
        let altitude = min_altitude_for_coverage(&heads, hover, epsilon, &env)?;
        println!("P_LoS >= {epsilon}: hover at {altitude:.2} m");
        for head in &heads {
            let uav = AirPosition::new(hover.x, hover.y, altitude);
            let theta = elevation_angle_deg(altitude, distance_3d(*head, uav))?;
            let p = los_probability(theta, &env)?;
            println!(
                "  head ({:>7.2}, {:>7.2}): elevation {theta:6.2} deg, P_LoS {p:.6}",
                head.x, head.y
            );
        }
        println!();
    }
    Ok(())
}
