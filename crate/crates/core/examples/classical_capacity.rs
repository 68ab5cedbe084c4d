//! Strong converse bounds on classical capacity.
//!
//! For generalized amplitude damping both `C_β` and `C_ζ` equal
//! `log2(1 + √(1-γ))`. The geometric `Υ̂` bound sits below `Υ_max` and
//! decreases with the level.

use georenyi::bounds::{c_beta, c_zeta, upsilon_geometric, upsilon_max};
use georenyi::channels::Channel;
use georenyi::conic::SolverSettings;

fn main() -> georenyi::Result<()> {
    let s = SolverSettings::default();
    let ch = Channel::generalized_amplitude_damping(0.75, 0.2)?;
    println!("closed form   {:.6}", (1.0 + 0.25f64.sqrt()).log2());
    println!("C_beta        {:.6}", c_beta(&ch, &s)?.bits);
    println!("C_zeta        {:.6}", c_zeta(&ch, &s)?.bits);
    println!("Upsilon_max   {:.6}", upsilon_max(&ch, &s)?.bits);
    for level in [1, 3, 5, 7] {
        let r = upsilon_geometric(&ch, level, &s)?;
        println!("Upsilon level {level}  {:.6}  [{}]", r.bits, r.status());
    }

    let erasure = Channel::erasure(2, 0.3)?;
    println!("erasure(0.3) Upsilon level 5 {:.6}", upsilon_geometric(&erasure, 5, &s)?.bits);
    Ok(())
}
