//! Distinguishing two thermal amplitude damping channels: the geometric channel
//! divergence in closed form across α, its semidefinite program at α = 2,
//! and the max-relative limit.

use georenyi::bounds::{channel_geometric_program, discrimination_bound};
use georenyi::channels::Channel;
use georenyi::conic::SolverSettings;
use georenyi::divergences::channel_max_relative;

fn main() -> georenyi::Result<()> {
    let n = Channel::generalized_amplitude_damping(0.2, 0.2)?;
    let m = Channel::generalized_amplitude_damping(0.6, 0.4)?;
    for alpha in [1.05, 1.25, 1.5, 2.0] {
        println!("alpha {alpha:<5} D_hat {}", discrimination_bound(&n, &m, alpha)?);
    }
    let program = channel_geometric_program(&n, &m, 0, &SolverSettings::default())?;
    println!("alpha 2 program {:.9}  [{}]", program.bits, program.status());
    println!("max-relative    {}", channel_max_relative(&n, &m)?);

    // A channel that leaves the support of the other is perfectly distinguishable.
    let id = Channel::identity(2);
    println!("identity vs full damping: {}", discrimination_bound(&id, &Channel::amplitude_damping(1.0)?, 1.5)?);
    Ok(())
}
