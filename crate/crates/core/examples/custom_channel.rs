//! Channels from Kraus operators, composition and tensor products.

use georenyi::bounds::{max_rains, rains_theta_geometric};
use georenyi::channels::Channel;
use georenyi::conic::SolverSettings;
use georenyi::divergences::channel_geometric;
use georenyi::linalg::{c, CMatrix};

fn main() -> georenyi::Result<()> {
    let s = SolverSettings::default();
    // Bit flip with probability 0.1.
    let p: f64 = 0.1;
    let k0 = CMatrix::identity(2, 2).map(|z| z * c((1.0 - p).sqrt(), 0.0));
    let k1 = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(p.sqrt(), 0.0), c(p.sqrt(), 0.0), c(0.0, 0.0)]);
    let flip = Channel::from_kraus(&[k0, k1])?;
    let damp = Channel::amplitude_damping(0.2)?;

    let both = damp.after(&flip)?;
    println!("bit flip then damping: max-Rains {:.6}, Theta(l=4) {:.6}", max_rains(&both, &s)?.bits, rains_theta_geometric(&both, 4, &s)?.bits);

    let pair = flip.tensor(&damp)?;
    println!("tensor product: input dimension {}, output dimension {}", pair.d_in(), pair.d_out());
    let reference = Channel::depolarizing(2, 0.5)?;
    let joint = channel_geometric(&pair, &reference.tensor(&reference)?, 1.5)?.to_f64();
    let split = channel_geometric(&flip, &reference, 1.5)?.to_f64() + channel_geometric(&damp, &reference, 1.5)?.to_f64();
    println!("D_hat_1.5 additivity: joint {joint:.9}, sum {split:.9}");
    Ok(())
}
