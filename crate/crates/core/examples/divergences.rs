//! Compare the Rényi divergence family on a pair of qubit states.
//!
//! Run with `cargo run --example divergences`.

use georenyi::divergences::{belavkin_staszewski, geometric, max_relative, petz, sandwiched, umegaki};
use georenyi::linalg::Hermitian;

fn main() -> georenyi::Result<()> {
    let rho = Hermitian::from_real(2, &[0.8, 0.3, 0.3, 0.2])?;
    let sigma = Hermitian::from_real(2, &[0.5, -0.1, -0.1, 0.5])?;

    println!("Umegaki            {}", umegaki(&rho, &sigma)?);
    println!("Belavkin-Staszewski {}", belavkin_staszewski(&rho, &sigma)?);
    println!("max-relative       {}", max_relative(&rho, &sigma)?);
    println!();
    println!("{:>8} {:>12} {:>12} {:>12}", "alpha", "sandwiched", "Petz", "geometric");
    for alpha in [1.01, 1.25, 1.5, 1.75, 2.0] {
        println!(
            "{alpha:>8} {:>12.6} {:>12.6} {:>12.6}",
            sandwiched(&rho, &sigma, alpha)?.to_f64(),
            petz(&rho, &sigma, alpha)?.to_f64(),
            geometric(&rho, &sigma, alpha)?.to_f64(),
        );
    }
    Ok(())
}
