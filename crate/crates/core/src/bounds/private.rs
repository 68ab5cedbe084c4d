//! Bounds on private capacities assisted by two-way classical communication.
//!
//! Separability is relaxed to positivity of the partial transpose, which is
//! exact for `|A||B| ≤ 6`; larger systems are rejected.

use super::quantum::{max_form, max_form_bits};
use super::{BoundKind, 
    below_identity, below_scalar, chain_program, check_level, choi_value, finish, finish_min_form, fixed_choi, state_value, MinForm,
    log2, psd_part, reduced, require_ppt_exact, shifted, shrink, transposed, BoundResult,
};
use crate::channels::Channel;
use crate::conic::{Affine, Field, MatExpr, Program, Solution, SolverSettings};
use crate::error::{Error, Result};
use crate::linalg::Hermitian;

/// Max-relative entropy of entanglement of a channel:
/// `log min { ‖tr_B Y‖∞ : J ⪯ Y, Y^{T_B} ⪰ 0 }`.
pub fn e_max(n: &Channel, settings: &SolverSettings) -> Result<BoundResult> {
    require_ppt_exact(n.d_in(), n.d_out())?;
    let j = n.choi();
    let dims = n.dims();
    let mut p = Program::new(Field::for_data([j.matrix()]));
    let t = p.scalar();
    let y = p.hermitian(j.dim());
    p.psd(&y.sub(&MatExpr::constant(j)));
    p.psd(&y.partial_transpose(&dims, &[1]));
    below_scalar(&mut p, &t, &y.partial_trace(&dims, &[1]));
    p.minimize(&t);
    finish(BoundKind::EMax, &p, settings, None, log2)
}

/// Max-relative entropy to the closest entanglement-breaking subchannel, in
/// its input-state form `log max { tr P J : P + Q^{T_B} = ρ ⊗ I, P, Q ⪰ 0, tr ρ = 1 }`.
pub fn e_max_sigma(n: &Channel, settings: &SolverSettings) -> Result<BoundResult> {
    require_ppt_exact(n.d_in(), n.d_out())?;
    let j = n.choi();
    let dims = n.dims();
    let mut p = Program::new(Field::for_data([j.matrix()]));
    let rho = p.hermitian(n.d_in());
    let pm = p.hermitian(j.dim());
    let q = p.hermitian(j.dim());
    p.psd(&rho);
    p.psd(&pm);
    p.psd(&q);
    let rho_i = rho.kron_identity_right(n.d_out());
    p.zero_hermitian(&pm.add(&q.partial_transpose(&dims, &[1])).sub(&rho_i));
    p.zero(&rho.trace().sub(&Affine::real(1.0)));
    p.maximize(&pm.inner(j.matrix()));
    finish(BoundKind::EMaxSigma, &p, settings, None, log2)
}

/// Geometric Rényi channel divergence to the closest entanglement-breaking subchannel.
pub fn e_alpha_sigma(n: &Channel, level: u32, settings: &SolverSettings) -> Result<BoundResult> {
    check_level(level)?;
    require_ppt_exact(n.d_in(), n.d_out())?;
    let j = fixed_choi(n.choi(), settings);
    let dims = n.dims();
    let build = |l| {
        let mut c = chain_program(&j, &dims, &[1], l);
        c.program.psd(&c.n0.partial_transpose(&dims, &[1]));
        below_identity(&mut c.program, &c.n0.partial_trace(&dims, &[1]));
        let n0 = c.n0;
        let repair = move |sol: &Solution| {
            let n0 = psd_part(&sol.hermitian(&n0));
            let n0 = shifted(&n0, (-transposed(&n0, &dims, &[1])?.min_eigenvalue()).max(0.0));
            let c = reduced(&n0, &dims, &[1])?.max_eigenvalue();
            Some(shrink(n0, c))
        };
        Ok(MinForm { program: c.program, repair: Box::new(repair) })
    };
    finish_min_form(BoundKind::EAlphaSigma, settings, level, build, choi_value(&j, &dims, &[1]))
}

/// Geometric Rényi relative entropy of entanglement of a channel, in max form
/// with `ρ ⊗ I - (Z_0 + Z_0†) = X + Y^{T_B}` for `X, Y ⪰ 0`.
pub fn e_alpha(n: &Channel, level: u32, settings: &SolverSettings) -> Result<BoundResult> {
    check_level(level)?;
    require_ppt_exact(n.d_in(), n.d_out())?;
    let (mut p, rho_i, z0, _) = max_form(n.choi(), n.d_in(), n.d_out(), level);
    let size = n.choi().dim();
    let x = p.hermitian(size);
    let y = p.hermitian(size);
    p.psd(&x);
    p.psd(&y);
    p.zero_hermitian(&rho_i.sub(&z0).sub(&x).sub(&y.partial_transpose(&n.dims(), &[1])));
    finish(BoundKind::EAlpha, &p, settings, Some(level), max_form_bits(level))
}

/// Geometric Rényi relative entropy of entanglement of a bipartite state:
/// `2^ℓ log min { tr M : M ⪰ G_{1-α}(ρ, σ), σ^{T_B} ⪰ 0, tr σ ≤ 1 }`.
pub fn state_e_alpha(rho: &Hermitian, dims: [usize; 2], level: u32, settings: &SolverSettings) -> Result<BoundResult> {
    check_level(level)?;
    require_ppt_exact(dims[0], dims[1])?;
    if rho.dim() != dims[0] * dims[1] {
        return Err(Error::DimensionMismatch(format!("state of dimension {} on subsystems {dims:?}", rho.dim())));
    }
    let fixed = fixed_choi(rho, settings);
    let build = |l| {
        let mut p = Program::new(Field::for_data([fixed.matrix()]));
        let sigma = p.hermitian(rho.dim());
        let m = p.geometric_mean_upper(&fixed, &sigma, l);
        p.psd(&sigma.partial_transpose(&dims, &[1]));
        p.nonneg(&Affine::real(1.0).sub(&sigma.trace()));
        p.minimize(&m.trace());
        let repair = move |sol: &Solution| {
            let s = psd_part(&sol.hermitian(&sigma));
            let s = shifted(&s, (-transposed(&s, &dims, &[1])?.min_eigenvalue()).max(0.0));
            let t = s.trace();
            Some(shrink(s, t))
        };
        Ok(MinForm { program: p, repair: Box::new(repair) })
    };
    finish_min_form(BoundKind::StateEAlpha, settings, level, build, state_value(&fixed))
}
