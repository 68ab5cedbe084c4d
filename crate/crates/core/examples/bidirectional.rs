//! Bounds for a two-qubit bidirectional channel: a partial swap followed by
//! dephasing on both outputs.

use georenyi::bounds::{bi_holevo_werner, bi_max_rains, bi_theta_geometric};
use georenyi::channels::BipartiteChannel;
use georenyi::conic::SolverSettings;
use std::f64::consts::PI;

fn main() -> georenyi::Result<()> {
    let s = SolverSettings::default();
    for phi in [PI, PI / 2.0, PI / 3.0] {
        for p in [0.1, 0.4] {
            let ch = BipartiteChannel::swap_dephase(p, phi)?;
            println!(
                "phi={phi:.4} p={p}: Holevo-Werner {:.6}  max-Rains {:.6}  Theta(l=4) {:.6}",
                bi_holevo_werner(&ch, &s)?.bits,
                bi_max_rains(&ch, &s)?.bits,
                bi_theta_geometric(&ch, 4, &s)?.bits,
            );
        }
    }
    Ok(())
}
