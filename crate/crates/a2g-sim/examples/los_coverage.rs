//! Coverage geometry of the sigmoid LoS model: the minimum elevation angle
//! for a LoS-probability target, and the slant and ground reach it allows
//! at several hover altitudes.

use a2g_sim::channel::{
    coverage_ground_radius, los_probability, los_threshold_angle, max_slant_distance, Environment,
};

fn main() -> a2g_sim::Result<()> {
    let env = Environment::urban();

    println!("environment: {} (a = {}, b = {})\n", env.name, env.a, env.b);
    println!("LoS probability along the elevation sweep:");
    for theta in [0.0, 9.6, 30.0, 42.14, 70.0, 90.0] {
        println!(
            "  theta = {theta:5.2} deg -> P_LoS = {:.6}",
            los_probability(theta, &env)?
        );
    }

    for epsilon in [0.9, 0.95, 0.99] {
        let theta_min = los_threshold_angle(epsilon, &env)?;
        println!("\ntarget P_LoS >= {epsilon}: minimum elevation {theta_min:.3} deg");
        for altitude in [100.0, 150.0, 200.0] {
            let slant = max_slant_distance(altitude, epsilon, &env)?;
            let radius = coverage_ground_radius(altitude, epsilon, &env)?;
            println!(
                "  H = {altitude:>5} m: slant reach {slant:8.2} m, ground radius {radius:8.2} m"
            );
        }
    }
    Ok(())
}
