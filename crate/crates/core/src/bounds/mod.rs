//! Semidefinite upper bounds on channel capacities.
//!
//! Geometric bounds take a level `ℓ` and use `α(ℓ) = 1 + 2^{-ℓ}`; their
//! value is `2^ℓ log₂ y*` for the optimal `y*` of a program whose constraint
//! chain represents the weighted geometric mean epigraph.

mod bidirectional;
mod classical;
mod discrimination;
mod private;
mod quantum;

pub use bidirectional::{bi_holevo_werner, bi_max_rains, bi_theta_geometric};
pub use discrimination::{channel_geometric_program, discrimination_bound};
pub use classical::{c_beta, c_zeta, upsilon_geometric, upsilon_max};
pub use private::{e_alpha, e_alpha_sigma, e_max, e_max_sigma, state_e_alpha};
pub use quantum::{
    holevo_werner, max_rains, max_rains_theta, rains_geometric, rains_theta_geometric,
    state_rains_geometric,
};

use crate::conic::{Field, MatExpr, Program, SolveReport, SolveStatus, Solution, SolverSettings};
use crate::divergences::{choi_geometric, geometric};
use crate::error::{Error, Result};
use crate::linalg::{partial_trace, partial_transpose, Hermitian};
use serde::Serialize;

/// Largest accepted level; beyond it `α - 1` approaches machine precision.
pub const MAX_LEVEL: u32 = 20;

/// Value of a bound in bits with the report of the underlying solve.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundResult {
    pub bits: f64,
    pub level: Option<u32>,
    pub report: SolveReport,
    pub bound_kind: BoundKind,
}

/// Which quantity a [`BoundResult`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    HolevoWerner,
    MaxRains,
    MaxRainsTheta,
    RainsGeometric,
    RainsThetaGeometric,
    StateRainsGeometric,
    EMax,
    EMaxSigma,
    EAlpha,
    EAlphaSigma,
    StateEAlpha,
    CBeta,
    CZeta,
    UpsilonMax,
    UpsilonGeometric,
    BiHolevoWerner,
    BiMaxRains,
    BiThetaGeometric,
    ThetaMinState,
    ThaumaMax,
    ThaumaGeometric,
    StateThaumaGeometric,
    ChannelGeometric,
}

impl BoundKind {
    pub fn is_geometric(self) -> bool {
        use BoundKind::*;
        matches!(
            self,
            RainsGeometric
                | RainsThetaGeometric
                | StateRainsGeometric
                | EAlpha
                | EAlphaSigma
                | StateEAlpha
                | UpsilonGeometric
                | BiThetaGeometric
                | ThaumaGeometric
                | StateThaumaGeometric
                | ChannelGeometric
        )
    }
}

impl BoundResult {
    pub fn is_optimal(&self) -> bool {
        self.report.is_optimal()
    }

    pub fn status(&self) -> SolveStatus {
        self.report.status
    }
}

/// `α(ℓ) = 1 + 2^{-ℓ}`
pub fn alpha_of_level(level: u32) -> f64 {
    1.0 + 0.5f64.powi(level as i32)
}

pub(crate) fn check_level(level: u32) -> Result<()> {
    if level > MAX_LEVEL {
        return Err(Error::InvalidParameter(format!("level {level} exceeds {MAX_LEVEL}")));
    }
    Ok(())
}

/// Tightest tolerance requested from the backend.
const TOL_FLOOR: f64 = 1e-12;

/// Settings for a level-`ℓ` program. The value `2^ℓ log y` amplifies the
/// relative error of `y` by `2^ℓ`, so tolerances shrink by the same factor.
pub fn settings_for_level(settings: &SolverSettings, level: u32) -> SolverSettings {
    let scale = 0.5f64.powi(level as i32);
    let mut s = settings.clone();
    s.tol_feas = (settings.tol_feas * scale).max(TOL_FLOOR).min(settings.tol_feas);
    s.tol_gap = (settings.tol_gap * scale).max(TOL_FLOOR).min(settings.tol_gap);
    s
}

/// Solves and maps the optimal objective through `to_bits`. Solves that
/// fail to produce a point yield `NaN`.
pub(crate) fn finish(
    bound_kind: BoundKind,
    program: &Program,
    settings: &SolverSettings,
    level: Option<u32>,
    to_bits: impl Fn(f64) -> f64,
) -> Result<BoundResult> {
    let sol = match level {
        Some(l) => program.solve(&settings_for_level(settings, l))?,
        None => program.solve(settings)?,
    };
    let report = sol.report;
    let bits = match report.status {
        SolveStatus::Optimal | SolveStatus::Inaccurate => to_bits(report.objective),
        _ => f64::NAN,
    };
    Ok(BoundResult { bits, level, report, bound_kind })
}

pub(crate) fn log2_scaled(level: u32) -> impl Fn(f64) -> f64 {
    move |y: f64| 2f64.powi(level as i32) * y.log2()
}

pub(crate) fn log2(y: f64) -> f64 {
    y.log2()
}

/// A min-form program at one level together with the map from its
/// solutions to exactly feasible points of the underlying set.
pub(crate) struct MinForm<'a> {
    pub program: Program,
    pub repair: Box<dyn Fn(&Solution) -> Option<Hermitian> + 'a>,
}

/// Levels whose optima are also tried as candidates for finer levels.
const COARSE_LEVELS: [u32; 2] = [3, 5];

/// Solves a min-form bound `min_{N_0 ∈ 𝒮} D̂_α(J‖N_0)` built by `build` and
/// reports the closed-form `value(N_0, α)` at repaired points.
///
/// Every repaired point is feasible, so each value is an upper bound on the
/// optimum and avoids the `2^ℓ` amplification of the solver's relative
/// error. The closed form is first-order sensitive to errors in the point,
/// which at degenerate optima can exceed the objective error, so optima of
/// the [`COARSE_LEVELS`] below `ℓ` are evaluated at the target `α` too.
/// The smallest candidate is reported, and the raw `2^ℓ log y*` only when
/// no candidate is finite.
pub(crate) fn finish_min_form<'a>(
    bound_kind: BoundKind,
    settings: &SolverSettings,
    level: u32,
    build: impl Fn(u32) -> Result<MinForm<'a>>,
    value: impl Fn(&Hermitian, f64) -> Option<f64>,
) -> Result<BoundResult> {
    let alpha = alpha_of_level(level);
    let usable = |s: SolveStatus| matches!(s, SolveStatus::Optimal | SolveStatus::Inaccurate);
    let fine = build(level)?;
    let sol = fine.program.solve(&settings_for_level(settings, level))?;
    let mut report = sol.report.clone();
    if !usable(report.status) {
        return Ok(BoundResult { bits: f64::NAN, level: Some(level), report, bound_kind });
    }
    let eval = |form: &MinForm, sol: &Solution| (form.repair)(sol).and_then(|x| value(&x, alpha));
    let mut candidates = vec![eval(&fine, &sol)];
    let quiet = |mut s: SolverSettings| {
        s.dump = None;
        s.verbose = false;
        s
    };
    // Tight tolerances occasionally stall on degenerate optima; retry at the base ones.
    if report.status == SolveStatus::Inaccurate && level > 0 {
        if let Ok(sol) = fine.program.solve(&quiet(settings.clone())) {
            if sol.report.status == SolveStatus::Optimal {
                candidates.push(eval(&fine, &sol));
                report = sol.report;
            }
        }
    }
    for &l in COARSE_LEVELS.iter().filter(|&&l| l < level) {
        let coarse = build(l)?;
        if let Ok(sol) = coarse.program.solve(&quiet(settings_for_level(settings, l))) {
            if usable(sol.report.status) {
                candidates.push(eval(&coarse, &sol));
            }
        }
    }
    let bits = candidates
        .into_iter()
        .flatten()
        .filter(|v| v.is_finite())
        .reduce(f64::min)
        .unwrap_or_else(|| log2_scaled(level)(report.objective));
    Ok(BoundResult { bits, level: Some(level), report, bound_kind })
}

/// `D̂_α(J‖N_0)` for Choi operators on `dims` with the given output systems.
pub(crate) fn choi_value<'a>(j: &'a Hermitian, dims: &'a [usize], outputs: &'a [usize]) -> impl Fn(&Hermitian, f64) -> Option<f64> + 'a {
    move |n0, alpha| choi_geometric(j, n0, dims, outputs, alpha).ok()?.finite()
}

/// `D̂_α(ρ‖σ)`
pub(crate) fn state_value(rho: &Hermitian) -> impl Fn(&Hermitian, f64) -> Option<f64> + '_ {
    move |sigma, alpha| geometric(rho, sigma, alpha).ok()?.finite()
}

/// Positive part of `h`.
pub(crate) fn psd_part(h: &Hermitian) -> Hermitian {
    let s = h.eigh();
    Hermitian::symmetrized(s.map(|v| v.max(0.0)))
}

/// Smallest `ε ≥ 0` with `r + ε I ± x ⪰ 0`.
pub(crate) fn domination_gap(r: &Hermitian, x: &Hermitian) -> f64 {
    let lo = r.add(x).min_eigenvalue().min(r.sub(x).min_eigenvalue());
    (-lo).max(0.0)
}

/// Two repairs of `r` so that `r ± x ⪰ 0`: adding the negative parts of
/// `r + x` and `r - x`, and the uniform shift by [`domination_gap`]. The
/// first is usually far smaller after a partial trace.
pub(crate) fn dominating(r: &Hermitian, x: &Hermitian) -> [Hermitian; 2] {
    let negative = |h: Hermitian| psd_part(&h.scale(-1.0));
    let local = r.add(&negative(r.add(x))).add(&negative(r.sub(x)));
    [local, shifted(r, domination_gap(r, x))]
}

/// `h + ε I`
pub(crate) fn shifted(h: &Hermitian, eps: f64) -> Hermitian {
    if eps > 0.0 {
        h.add(&Hermitian::identity(h.dim()).scale(eps))
    } else {
        h.clone()
    }
}

/// `h / c` when `c > 1`.
pub(crate) fn shrink(h: Hermitian, c: f64) -> Hermitian {
    if c > 1.0 {
        h.scale(1.0 / c)
    } else {
        h
    }
}

pub(crate) fn transposed(h: &Hermitian, dims: &[usize], systems: &[usize]) -> Option<Hermitian> {
    partial_transpose(h.matrix(), dims, systems).ok().map(Hermitian::symmetrized)
}

pub(crate) fn reduced(h: &Hermitian, dims: &[usize], traced: &[usize]) -> Option<Hermitian> {
    partial_trace(h.matrix(), dims, traced).ok().map(Hermitian::symmetrized)
}

/// Repair for sets `{N_0 : R ± N_0^{T} ⪰ 0, tr_out R ⪯ I}`.
pub(crate) fn repair_theta(
    sol: &Solution,
    n0: &MatExpr,
    r: &MatExpr,
    dims: &[usize],
    transposed_systems: &[usize],
    outputs: &[usize],
) -> Option<Hermitian> {
    let n0 = psd_part(&sol.hermitian(n0));
    let r = sol.hermitian(r);
    let nt = transposed(&n0, dims, transposed_systems)?;
    let mut c = f64::INFINITY;
    for r in dominating(&r, &nt) {
        c = c.min(reduced(&r, dims, outputs)?.max_eigenvalue());
    }
    Some(shrink(n0, c))
}

/// Fixed Choi input, with the optional regularizing identity mixed in.
pub(crate) fn fixed_choi(j: &Hermitian, settings: &SolverSettings) -> Hermitian {
    if settings.regularization > 0.0 {
        j.add(&Hermitian::identity(j.dim()).scale(settings.regularization))
    } else {
        j.clone()
    }
}

/// Skeleton shared by channel bounds of the form
/// `2^ℓ log min { y : M ⪰ G_{1-α}(J, N_0), y I ⪰ tr_out M, N_0 ∈ 𝒮 }`.
/// `traced` lists the output subsystems of `dims`; callers add the
/// constraints defining `𝒮` on `n0`.
pub(crate) struct ChainProgram {
    pub program: Program,
    pub m: MatExpr,
    pub n0: MatExpr,
}

pub(crate) fn chain_program(j: &Hermitian, dims: &[usize], traced: &[usize], level: u32) -> ChainProgram {
    chain_program_in(Field::for_data([j.matrix()]), j, dims, traced, level)
}

pub(crate) fn chain_program_in(
    field: Field,
    j: &Hermitian,
    dims: &[usize],
    traced: &[usize],
    level: u32,
) -> ChainProgram {
    let mut p = Program::new(field);
    let y = p.scalar();
    let n0 = p.hermitian(j.dim());
    let m = p.geometric_mean_upper(j, &n0, level);
    let reduced = m.partial_trace(dims, traced);
    p.psd(&MatExpr::scalar_identity(&y, reduced.rows()).sub(&reduced));
    p.minimize(&y);
    ChainProgram { program: p, m, n0 }
}

/// `r ± x ⪰ 0`
pub(crate) fn abs_dominated(p: &mut Program, r: &MatExpr, x: &MatExpr) {
    p.psd(&r.add(x));
    p.psd(&r.sub(x));
}

/// `I - e ⪰ 0`
pub(crate) fn below_identity(p: &mut Program, e: &MatExpr) {
    p.psd(&MatExpr::identity(e.rows()).sub(e));
}

/// `y I - e ⪰ 0`
pub(crate) fn below_scalar(p: &mut Program, y: &crate::conic::Affine, e: &MatExpr) {
    p.psd(&MatExpr::scalar_identity(y, e.rows()).sub(e));
}

/// Rejects Choi operators whose bipartite dimension exceeds the range where
/// the positive-partial-transpose relaxation is exact.
pub(crate) fn require_ppt_exact(d_in: usize, d_out: usize) -> Result<()> {
    if d_in * d_out > 6 {
        return Err(Error::UnsupportedDimension(format!(
            "separability is only handled for |A||B| ≤ 6, got {d_in}x{d_out}"
        )));
    }
    Ok(())
}
