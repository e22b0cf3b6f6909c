//! Link-budget arithmetic: received power over distance and path loss
//! exponent, the minimum transmit power for the BER target, and the round
//! trip that recovers the target through the BER expression.

use a2g_sim::channel::{
    bit_error_rate, min_tx_power_watts, received_power_dbm, watts_to_dbm, LinkBudget,
};

fn main() -> a2g_sim::Result<()> {
    let lb = LinkBudget::default();
    println!(
        "defaults: tx {} dBm, f_c {} GHz, eta {} dB, R_b {} kbps, BER target {:e}\n",
        lb.tx_power_dbm,
        lb.carrier_freq_hz / 1e9,
        lb.excess_loss_db,
        lb.bit_rate_bps / 1e3,
        lb.ber_target,
    );

    println!("received power at the UAV (dBm):");
    println!(
        "{:>10} {:>12} {:>12} {:>12}",
        "d (m)", "alpha=2", "alpha=2.5", "alpha=3"
    );
    for d in [100.0, 250.0, 500.0, 1000.0] {
        let row: Vec<f64> = [2.0, 2.5, 3.0]
            .iter()
            .map(|&alpha| {
                let budget = LinkBudget {
                    path_loss_exponent: alpha,
                    ..lb.clone()
                };
                received_power_dbm(&budget, d).unwrap()
            })
            .collect();
        println!("{d:>10} {:>12.2} {:>12.2} {:>12.2}", row[0], row[1], row[2]);
    }

    println!("\nminimum CH transmit power meeting the BER target, then the round trip:");
    for d in [200.0, 500.0, 1000.0] {
        let tx_w = min_tx_power_watts(&lb, d)?;
        let chained = LinkBudget {
            tx_power_dbm: watts_to_dbm(tx_w),
            ..lb.clone()
        };
        let rx = received_power_dbm(&chained, d)?;
        let ber = bit_error_rate(&chained, rx);
        println!(
            "  d = {d:>6} m: min tx {tx_w:.4e} W ({:.2} dBm) -> rx {rx:.2} dBm -> BER {ber:.3e}",
            watts_to_dbm(tx_w)
        );
    }
    Ok(())
}
