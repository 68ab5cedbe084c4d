//! Magic resources of qutrit states and channels.

use georenyi::channels::Channel;
use georenyi::conic::SolverSettings;
use georenyi::magic::{
    magic_capacity_bound, mana_channel, mana_state, qutrit_h_plus_state, qutrit_t_state, synthesis_lower_bound,
    theta_min_state, thauma_geometric, thauma_max, PhaseSpace,
};
use std::f64::consts::PI;

fn main() -> georenyi::Result<()> {
    let s = SolverSettings::default();
    let t = qutrit_t_state();
    let h = qutrit_h_plus_state();

    let phase = PhaseSpace::new(3)?;
    let w = phase.wigner(t.hermitian())?;
    println!("Wigner function of |T>: {:?}", w.iter().map(|x| (x * 1e4).round() / 1e4).collect::<Vec<_>>());
    println!("mana |T> {:.6}   |H+> {:.6}", mana_state(t.hermitian())?, mana_state(h.hermitian())?);
    println!(
        "min-Thauma |T> {:.6} (log2(1+2 sin(pi/18)) = {:.6})",
        theta_min_state(&t, &s)?.bits,
        (1.0 + 2.0 * (PI / 18.0).sin()).log2()
    );

    println!("{:>4} {:>10} {:>12} {:>14} {:>10}", "p", "mana", "max-Thauma", "Thauma (l=3)", "rate ≤");
    for p in [0.0, 0.1, 0.2, 0.3] {
        let ch = Channel::qutrit_t_depolarizing(p)?;
        let rate = magic_capacity_bound(&ch, &t, 3, &s).map_or(f64::NAN, |r| r);
        println!(
            "{p:>4} {:>10.6} {:>12.6} {:>14.6} {rate:>10.6}",
            mana_channel(&ch)?,
            thauma_max(&ch, &s)?.bits,
            thauma_geometric(&ch, 3, &s)?.bits,
        );
    }

    let source = Channel::qutrit_t_depolarizing(0.1)?;
    let target = Channel::qutrit_t_depolarizing(0.0)?;
    let b = synthesis_lower_bound(&source, &target, 3, &s)?;
    println!("uses of the noisy T gate per ideal one ≥ {:.4} (mana {:.4}, max {:.4}, geometric {:.4})", b.best(), b.mana, b.thauma_max, b.thauma_geometric);
    Ok(())
}
