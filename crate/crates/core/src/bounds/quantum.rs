//! Bounds on quantum capacities assisted by two-way classical communication.

use super::{BoundKind, 
    abs_dominated, below_identity, below_scalar, chain_program, check_level, choi_value, finish, finish_min_form, fixed_choi,
    psd_part, repair_theta, shrink, state_value, transposed, MinForm,
    log2, BoundResult,
};
use crate::channels::Channel;
use crate::conic::{Affine, Field, MatExpr, Program, Solution, SolverSettings};
use crate::error::{Error, Result};
use crate::linalg::{trace_norm, Hermitian};

/// `log ‖Θ ∘ N‖◊ = log min { y : Y ± J^{T_B} ⪰ 0, tr_B Y ⪯ y I }`.
pub fn holevo_werner(n: &Channel, settings: &SolverSettings) -> Result<BoundResult> {
    let j = n.choi();
    let dims = n.dims();
    let mut p = Program::new(Field::for_data([j.matrix()]));
    let y = p.scalar();
    let big = p.hermitian(j.dim());
    abs_dominated(&mut p, &big, &MatExpr::constant(j).partial_transpose(&dims, &[1]));
    below_scalar(&mut p, &y, &big.partial_trace(&dims, &[1]));
    p.minimize(&y);
    finish(BoundKind::HolevoWerner, &p, settings, None, log2)
}

/// Max-Rains information `log min { μ : (V - Y)^{T_B} ⪰ J, tr_B(V + Y) ⪯ μ I, V, Y ⪰ 0 }`.
pub fn max_rains(n: &Channel, settings: &SolverSettings) -> Result<BoundResult> {
    let j = n.choi();
    let dims = n.dims();
    let mut p = Program::new(Field::for_data([j.matrix()]));
    let mu = p.scalar();
    let v = p.hermitian(j.dim());
    let w = p.hermitian(j.dim());
    p.psd(&v);
    p.psd(&w);
    p.psd(&v.sub(&w).partial_transpose(&dims, &[1]).sub(&MatExpr::constant(j)));
    below_scalar(&mut p, &mu, &v.add(&w).partial_trace(&dims, &[1]));
    p.minimize(&mu);
    finish(BoundKind::MaxRains, &p, settings, None, log2)
}

/// Max-relative entropy to the closest subchannel with bounded transposed Choi
/// operator: `log min { t : J ⪯ K, R ± K^{T_B} ⪰ 0, tr_B R ⪯ t I }`.
pub fn max_rains_theta(n: &Channel, settings: &SolverSettings) -> Result<BoundResult> {
    let j = n.choi();
    let dims = n.dims();
    let mut p = Program::new(Field::for_data([j.matrix()]));
    let t = p.scalar();
    let k = p.hermitian(j.dim());
    let r = p.hermitian(j.dim());
    p.psd(&k.sub(&MatExpr::constant(j)));
    abs_dominated(&mut p, &r, &k.partial_transpose(&dims, &[1]));
    below_scalar(&mut p, &t, &r.partial_trace(&dims, &[1]));
    p.minimize(&t);
    finish(BoundKind::MaxRainsTheta, &p, settings, None, log2)
}

/// Geometric Rényi channel divergence to the closest subchannel with
/// `‖J_M^{T_B}‖` constrained: `R ± N_0^{T_B} ⪰ 0` and `tr_B R ⪯ I`.
pub fn rains_theta_geometric(n: &Channel, level: u32, settings: &SolverSettings) -> Result<BoundResult> {
    check_level(level)?;
    let j = fixed_choi(n.choi(), settings);
    let dims = n.dims();
    let build = |l| {
        let mut c = chain_program(&j, &dims, &[1], l);
        let r = c.program.hermitian(j.dim());
        abs_dominated(&mut c.program, &r, &c.n0.partial_transpose(&dims, &[1]));
        below_identity(&mut c.program, &r.partial_trace(&dims, &[1]));
        let n0 = c.n0;
        let repair = Box::new(move |sol: &Solution| repair_theta(sol, &n0, &r, &dims, &[1], &[1]));
        Ok(MinForm { program: c.program, repair })
    };
    finish_min_form(BoundKind::RainsThetaGeometric, settings, level, build, choi_value(&j, &dims, &[1]))
}

/// Max-form program shared by the geometric Rains bound and its separable
/// analogue; the caller constrains `Z_0 + Z_0†` against `ρ ⊗ I`. Returns the
/// program, `ρ ⊗ I`, `Z_0 + Z_0†`, and the objective.
pub(crate) fn max_form(j: &Hermitian, d_in: usize, d_out: usize, level: u32) -> (Program, MatExpr, MatExpr, Affine) {
    let n = j.dim();
    let mut p = Program::new(Field::for_data([j.matrix()]));
    let rho = p.hermitian(d_in);
    let rho_i = rho.kron_identity_right(d_out);
    let k = p.general(n, n);
    let zs: Vec<MatExpr> = (0..=level).map(|_| p.general(n, n)).collect();
    let ws: Vec<MatExpr> = (0..level).map(|_| p.hermitian(n)).collect();
    let last = zs.last().expect("at least one Z").hermitian_part2();
    p.psd(&MatExpr::block(&rho_i, &k, &k.adjoint(), &last));
    for i in 1..=level as usize {
        p.psd(&MatExpr::block(&ws[i - 1], &zs[i], &zs[i].adjoint(), &zs[i - 1].hermitian_part2()));
    }
    p.zero(&rho.trace().sub(&Affine::real(1.0)));
    let mut obj = k.hermitian_part2();
    for w in &ws {
        obj = obj.sub(w);
    }
    let objective = obj.inner(j.matrix());
    p.maximize(&objective);
    (p, rho_i, zs[0].hermitian_part2(), objective)
}

/// Converts the optimal value `S` of the max-form program into bits:
/// `ℓ 2^ℓ - (2^ℓ + 1) log(2^ℓ + 1) + (2^ℓ + 1) log S`.
pub(crate) fn max_form_bits(level: u32) -> impl Fn(f64) -> f64 {
    move |s: f64| {
        let a = 2f64.powi(level as i32);
        level as f64 * a - (a + 1.0) * (a + 1.0).log2() + (a + 1.0) * s.log2()
    }
}

/// Geometric Rényi-Rains information of a channel.
pub fn rains_geometric(n: &Channel, level: u32, settings: &SolverSettings) -> Result<BoundResult> {
    check_level(level)?;
    let (mut p, rho_i, z0, _) = max_form(n.choi(), n.d_in(), n.d_out(), level);
    let zt = z0.partial_transpose(&n.dims(), &[1]);
    abs_dominated(&mut p, &rho_i, &zt);
    finish(BoundKind::RainsGeometric, &p, settings, Some(level), max_form_bits(level))
}

/// Geometric Rényi-Rains relative entropy of a bipartite state `ρ_AB`:
/// `2^ℓ log min { tr M : M ⪰ G_{1-α}(ρ, σ), σ^{T_B} = X - Y, X, Y ⪰ 0, tr(X + Y) ≤ 1 }`.
pub fn state_rains_geometric(
    rho: &Hermitian,
    dims: [usize; 2],
    level: u32,
    settings: &SolverSettings,
) -> Result<BoundResult> {
    check_level(level)?;
    if rho.dim() != dims[0] * dims[1] {
        return Err(Error::DimensionMismatch(format!(
            "state of dimension {} on subsystems {dims:?}",
            rho.dim()
        )));
    }
    let fixed = fixed_choi(rho, settings);
    let n = rho.dim();
    let build = |l| {
        let mut p = Program::new(Field::for_data([fixed.matrix()]));
        let sigma = p.hermitian(n);
        let m = p.geometric_mean_upper(&fixed, &sigma, l);
        let x = p.hermitian(n);
        let w = p.hermitian(n);
        p.psd(&x);
        p.psd(&w);
        p.zero_hermitian(&sigma.partial_transpose(&dims, &[1]).sub(&x.sub(&w)));
        p.nonneg(&Affine::real(1.0).sub(&x.add(&w).trace()));
        p.minimize(&m.trace());
        let repair = move |sol: &Solution| {
            let s = psd_part(&sol.hermitian(&sigma));
            let c = trace_norm(transposed(&s, &dims, &[1])?.matrix());
            Some(shrink(s, c))
        };
        Ok(MinForm { program: p, repair: Box::new(repair) })
    };
    finish_min_form(BoundKind::StateRainsGeometric, settings, level, build, state_value(&fixed))
}
