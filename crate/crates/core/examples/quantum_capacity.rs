//! Quantum capacity upper bounds for the amplitude damping channel.

use georenyi::bounds::{holevo_werner, max_rains, rains_theta_geometric};
use georenyi::channels::Channel;
use georenyi::conic::SolverSettings;

fn main() -> georenyi::Result<()> {
    let s = SolverSettings::default();
    let level = 6;
    println!("{:>6} {:>14} {:>12} {:>16}", "gamma", "Holevo-Werner", "max-Rains", "Theta (level 6)");
    for i in 0..=5 {
        let gamma = i as f64 * 0.1;
        let ch = Channel::amplitude_damping(gamma)?;
        println!(
            "{gamma:>6.2} {:>14.6} {:>12.6} {:>16.6}",
            holevo_werner(&ch, &s)?.bits,
            max_rains(&ch, &s)?.bits,
            rains_theta_geometric(&ch, level, &s)?.bits,
        );
    }
    Ok(())
}
