//! Channel discrimination: the geometric Rényi channel divergence as a
//! strong converse bound on the asymmetric error exponent.

use super::{chain_program, check_level, finish, log2_scaled, BoundKind, BoundResult};
use crate::channels::Channel;
use crate::conic::{MatExpr, SolverSettings};
use crate::divergences::{channel_geometric, Divergence};
use crate::error::{Error, Result};

/// Strong converse bound `D̂_α(N‖M)` on discriminating `N` from `M`, `α ∈ (1, 2]`.
/// Returns `Infinite` when the support of `J_N` is not contained in that of `J_M`.
pub fn discrimination_bound(n: &Channel, m: &Channel, alpha: f64) -> Result<Divergence> {
    channel_geometric(n, m, alpha)
}

/// `D̂_α(N‖M)` at `α = 1 + 2^{-ℓ}` from the level-ℓ program with `N_0 = J_M` fixed.
pub fn channel_geometric_program(n: &Channel, m: &Channel, level: u32, settings: &SolverSettings) -> Result<BoundResult> {
    check_level(level)?;
    if n.dims() != m.dims() {
        return Err(Error::DimensionMismatch(format!("channels {:?} and {:?}", n.dims(), m.dims())));
    }
    let mut c = chain_program(n.choi(), &n.dims(), &[1], level);
    c.program.zero_hermitian(&c.n0.sub(&MatExpr::constant(m.choi().matrix())));
    finish(BoundKind::ChannelGeometric, &c.program, settings, Some(level), log2_scaled(level))
}
