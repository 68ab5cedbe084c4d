//! Private capacity bounds from the squashed-entanglement relaxations.

use georenyi::bounds::{e_alpha, e_alpha_sigma, e_max, e_max_sigma};
use georenyi::channels::Channel;
use georenyi::conic::SolverSettings;

fn main() -> georenyi::Result<()> {
    let s = SolverSettings::default();
    for p in [0.0, 0.1, 0.25] {
        let ch = Channel::depolarizing(2, p)?;
        println!(
            "depolarizing({p}): E_max {:.6}  E_max,Sigma {:.6}  E_alpha(l=3) {:.6}  E_alpha,Sigma(l=3) {:.6}",
            e_max(&ch, &s)?.bits,
            e_max_sigma(&ch, &s)?.bits,
            e_alpha(&ch, 3, &s)?.bits,
            e_alpha_sigma(&ch, 3, &s)?.bits,
        );
    }
    Ok(())
}
