//! Bounds on unassisted classical capacities.

use super::{BoundKind, 
    abs_dominated, chain_program, check_level, domination_gap, dominating, choi_value, finish, finish_min_form, fixed_choi, MinForm, log2, psd_part,
    shifted, shrink, transposed, BoundResult,
};
use crate::linalg::Hermitian;
use crate::channels::Channel;
use crate::conic::{Affine, Field, MatExpr, Program, Solution, SolverSettings};
use crate::error::Result;

/// `I_A ⊗ S ± R^{T_B} ⪰ 0`
fn bounded_by_output(p: &mut Program, s: &MatExpr, r: &MatExpr, dims: &[usize; 2]) {
    abs_dominated(p, &s.kron_identity_left(dims[0]), &r.partial_transpose(dims, &[1]));
}

/// `log min { tr S : R ± J^{T_B} ⪰ 0, I ⊗ S ± R^{T_B} ⪰ 0 }`.
pub fn c_beta(n: &Channel, settings: &SolverSettings) -> Result<BoundResult> {
    let j = n.choi();
    let dims = n.dims();
    let mut p = Program::new(Field::for_data([j.matrix()]));
    let s = p.hermitian(n.d_out());
    let r = p.hermitian(j.dim());
    abs_dominated(&mut p, &r, &MatExpr::constant(j).partial_transpose(&dims, &[1]));
    bounded_by_output(&mut p, &s, &r, &dims);
    p.minimize(&s.trace());
    finish(BoundKind::CBeta, &p, settings, None, log2)
}

/// `log min { tr S : J ⪯ K, I ⊗ S ± K^{T_B} ⪰ 0 }`.
pub fn c_zeta(n: &Channel, settings: &SolverSettings) -> Result<BoundResult> {
    let j = n.choi();
    let dims = n.dims();
    let mut p = Program::new(Field::for_data([j.matrix()]));
    let s = p.hermitian(n.d_out());
    let k = p.hermitian(j.dim());
    p.psd(&k.sub(&MatExpr::constant(j)));
    abs_dominated(&mut p, &s.kron_identity_left(dims[0]), &k.partial_transpose(&dims, &[1]));
    p.minimize(&s.trace());
    finish(BoundKind::CZeta, &p, settings, None, log2)
}

/// `log min { tr S : J ⪯ K, R ± K^{T_B} ⪰ 0, I ⊗ S ± R^{T_B} ⪰ 0 }`.
pub fn upsilon_max(n: &Channel, settings: &SolverSettings) -> Result<BoundResult> {
    let j = n.choi();
    let dims = n.dims();
    let mut p = Program::new(Field::for_data([j.matrix()]));
    let s = p.hermitian(n.d_out());
    let k = p.hermitian(j.dim());
    let r = p.hermitian(j.dim());
    p.psd(&k.sub(&MatExpr::constant(j)));
    abs_dominated(&mut p, &r, &k.partial_transpose(&dims, &[1]));
    bounded_by_output(&mut p, &s, &r, &dims);
    p.minimize(&s.trace());
    finish(BoundKind::UpsilonMax, &p, settings, None, log2)
}

/// Geometric Rényi channel divergence to the closest subchannel in the
/// classical-communication set: `R ± N_0^{T_B} ⪰ 0`, `I ⊗ S ± R^{T_B} ⪰ 0`, `tr S ≤ 1`.
pub fn upsilon_geometric(n: &Channel, level: u32, settings: &SolverSettings) -> Result<BoundResult> {
    check_level(level)?;
    let j = fixed_choi(n.choi(), settings);
    let dims = n.dims();
    let build = |l| {
        let mut c = chain_program(&j, &dims, &[1], l);
        let p = &mut c.program;
        let s = p.hermitian(n.d_out());
        let r = p.hermitian(j.dim());
        abs_dominated(p, &r, &c.n0.partial_transpose(&dims, &[1]));
        bounded_by_output(p, &s, &r, &dims);
        p.nonneg(&Affine::real(1.0).sub(&s.trace()));
        let n0 = c.n0;
        let repair = move |sol: &Solution| {
            let n0 = psd_part(&sol.hermitian(&n0));
            let r = sol.hermitian(&r);
            let s = sol.hermitian(&s);
            let lifted = Hermitian::identity(dims[0]).kron(&s);
            let mut c = f64::INFINITY;
            for r in dominating(&r, &transposed(&n0, &dims, &[1])?) {
                let rt = transposed(&r, &dims, &[1])?;
                c = c.min(shifted(&s, domination_gap(&lifted, &rt)).trace());
            }
            Some(shrink(n0, c))
        };
        Ok(MinForm { program: c.program, repair: Box::new(repair) })
    };
    finish_min_form(BoundKind::UpsilonGeometric, settings, level, build, choi_value(&j, &dims, &[1]))
}
