//! Bounds on bidirectional quantum capacities of channels `A1 B1 → A2 B2`.
//!
//! Choi operators live on `A1 B1 A2 B2`; Bob's systems are `B1` and `B2`.

use super::{BoundKind, abs_dominated, below_identity, below_scalar, chain_program, check_level, choi_value, finish, finish_min_form, fixed_choi, MinForm, log2, repair_theta, BoundResult};
use crate::channels::BipartiteChannel;
use crate::conic::{Field, MatExpr, Program, Solution, SolverSettings};
use crate::error::Result;

const BOB: [usize; 2] = [1, 3];
const OUTPUTS: [usize; 2] = [2, 3];

/// `log ‖Θ_{B2} ∘ N ∘ Θ_{B1}‖◊`.
pub fn bi_holevo_werner(n: &BipartiteChannel, settings: &SolverSettings) -> Result<BoundResult> {
    let j = n.channel().choi();
    let dims = n.dims();
    let mut p = Program::new(Field::for_data([j.matrix()]));
    let y = p.scalar();
    let big = p.hermitian(j.dim());
    abs_dominated(&mut p, &big, &MatExpr::constant(j).partial_transpose(&dims, &BOB));
    below_scalar(&mut p, &y, &big.partial_trace(&dims, &OUTPUTS));
    p.minimize(&y);
    finish(BoundKind::BiHolevoWerner, &p, settings, None, log2)
}

/// `log min { ‖tr_{A2 B2}(V + Y)‖∞ : V, Y ⪰ 0, (V - Y)^{T_{B1 B2}} ⪰ J }`.
pub fn bi_max_rains(n: &BipartiteChannel, settings: &SolverSettings) -> Result<BoundResult> {
    let j = n.channel().choi();
    let dims = n.dims();
    let mut p = Program::new(Field::for_data([j.matrix()]));
    let mu = p.scalar();
    let v = p.hermitian(j.dim());
    let w = p.hermitian(j.dim());
    p.psd(&v);
    p.psd(&w);
    p.psd(&v.sub(&w).partial_transpose(&dims, &BOB).sub(&MatExpr::constant(j)));
    below_scalar(&mut p, &mu, &v.add(&w).partial_trace(&dims, &OUTPUTS));
    p.minimize(&mu);
    finish(BoundKind::BiMaxRains, &p, settings, None, log2)
}

/// Geometric Rényi channel divergence to the closest bidirectional subchannel
/// with `R ± N_0^{T_{B1 B2}} ⪰ 0` and `tr_{A2 B2} R ⪯ I`.
pub fn bi_theta_geometric(n: &BipartiteChannel, level: u32, settings: &SolverSettings) -> Result<BoundResult> {
    check_level(level)?;
    let j = fixed_choi(n.channel().choi(), settings);
    let dims = n.dims();
    let build = |l| {
        let mut c = chain_program(&j, &dims, &OUTPUTS, l);
        let r = c.program.hermitian(j.dim());
        abs_dominated(&mut c.program, &r, &c.n0.partial_transpose(&dims, &BOB));
        below_identity(&mut c.program, &r.partial_trace(&dims, &OUTPUTS));
        let n0 = c.n0;
        let repair = Box::new(move |sol: &Solution| repair_theta(sol, &n0, &r, &dims, &BOB, &OUTPUTS));
        Ok(MinForm { program: c.program, repair })
    };
    finish_min_form(BoundKind::BiThetaGeometric, settings, level, build, choi_value(&j, &dims, &OUTPUTS))
}
