//! Discrete Wigner representation over odd prime dimensions and magic
//! measures of states and channels: mana, min-, max- and geometric Rényi
//! Thauma, magic-state generation and channel-synthesis bounds.
//!
//! Composite dimensions are handled as tensor products of odd prime factors;
//! dimension one is the trivial phase space with the single point `[1]`.

use crate::bounds::{self, check_level, finish, fixed_choi, log2, BoundKind, BoundResult, MinForm};
use crate::channels::Channel;
use crate::conic::{Affine, Field, MatExpr, Program, Solution, SolveStatus, SolverSettings};
use crate::error::{Error, Result};
use crate::linalg::{self, c, kron, trace_product, CMatrix, DensityOperator, Hermitian};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// Values of a Thauma below this are treated as zero when they divide.
pub const FREE_TOL: f64 = 1e-6;

const REALNESS_TOL: f64 = 1e-9;

fn is_odd_prime(d: usize) -> bool {
    d >= 3 && d % 2 == 1 && (3..).step_by(2).take_while(|k| k * k <= d).all(|k| d % k != 0)
}

fn odd_prime_factors(mut n: usize) -> Result<Vec<usize>> {
    if n == 0 {
        return Err(Error::UnsupportedDimension("dimension 0".into()));
    }
    let mut out = Vec::new();
    let mut k = 2;
    while n > 1 {
        if n % k == 0 {
            if k == 2 {
                return Err(Error::UnsupportedDimension(
                    "discrete Wigner functions need odd dimensions".into(),
                ));
            }
            out.push(k);
            n /= k;
        } else {
            k += 1;
        }
    }
    Ok(out)
}

/// Heisenberg-Weyl operator `τ^{-a1 a2} Z^{a1} X^{a2}` with `τ = e^{(d+1)πi/d}`.
pub fn heisenberg_weyl(d: usize, a1: usize, a2: usize) -> CMatrix {
    let omega = |k: usize| Complex64::from_polar(1.0, 2.0 * PI * (k % d) as f64 / d as f64);
    // τ = ω^{(d+1)/2}
    let half = (d + 1) / 2;
    let phase = omega((d - (a1 * a2 * half) % d) % d);
    let mut t = CMatrix::zeros(d, d);
    for j in 0..d {
        t[((j + a2) % d, j)] = phase * omega(a1 * ((j + a2) % d));
    }
    t
}

fn chop(m: CMatrix) -> CMatrix {
    let snap = |x: f64| if x.abs() < 1e-14 { 0.0 } else { x };
    m.map(|z| c(snap(z.re), snap(z.im)))
}

/// Phase-point operators `A_u` of a product of odd prime dimensions.
#[derive(Clone, Debug)]
pub struct PhaseSpace {
    factors: Vec<usize>,
    dim: usize,
    points: Vec<CMatrix>,
}

impl PhaseSpace {
    /// Phase space of one odd prime dimension.
    pub fn new(d: usize) -> Result<Self> {
        if !is_odd_prime(d) {
            return Err(Error::UnsupportedDimension(format!("{d} is not an odd prime")));
        }
        Ok(Self::prime(d))
    }

    /// Phase space of `n` viewed as a tensor product of its prime factors.
    pub fn for_dimension(n: usize) -> Result<Self> {
        let factors = odd_prime_factors(n)?;
        let mut space = PhaseSpace { factors: Vec::new(), dim: 1, points: vec![CMatrix::identity(1, 1)] };
        for d in factors {
            space = space.tensor(&Self::prime(d));
        }
        Ok(space)
    }

    fn prime(d: usize) -> Self {
        let shifts: Vec<CMatrix> =
            (0..d * d).map(|u| heisenberg_weyl(d, u / d, u % d)).collect();
        let a0 = shifts.iter().fold(CMatrix::zeros(d, d), |acc, t| acc + t) / c(d as f64, 0.0);
        let points = shifts.iter().map(|t| chop(t * &a0 * t.adjoint())).collect();
        PhaseSpace { factors: vec![d], dim: d, points }
    }

    /// Phase space of the joint system, indices ordered `(u_self, u_other)`.
    pub fn tensor(&self, other: &PhaseSpace) -> PhaseSpace {
        let mut points = Vec::with_capacity(self.points.len() * other.points.len());
        for a in &self.points {
            for b in &other.points {
                points.push(kron(a, b));
            }
        }
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        PhaseSpace { factors, dim: self.dim * other.dim, points }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    /// Number of phase-space points, `dim²`.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, u: usize) -> &CMatrix {
        &self.points[u]
    }

    pub fn points(&self) -> &[CMatrix] {
        &self.points
    }

    fn check(&self, n: usize) -> Result<()> {
        if n != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "operator of dimension {n} on a phase space of dimension {}",
                self.dim
            )));
        }
        Ok(())
    }

    /// `W_V(u) = tr[A_u V] / d`
    pub fn wigner(&self, v: &Hermitian) -> Result<Vec<f64>> {
        self.check(v.dim())?;
        let d = self.dim as f64;
        Ok(self.points.iter().map(|a| trace_product(a, v.matrix()).re / d).collect())
    }

    /// Wigner trace norm `Σ_u |W_V(u)|`.
    pub fn wigner_trace_norm(&self, v: &Hermitian) -> Result<f64> {
        Ok(self.wigner(v)?.iter().map(|w| w.abs()).sum())
    }
}

/// Wigner function `W(v|u) = tr[J (A_u ⊗ A_v)] / d_B` of a Hermiticity-preserving
/// map given by its Choi operator, indexed `[u][v]`.
pub fn channel_wigner(n: &Channel) -> Result<Vec<Vec<f64>>> {
    let input = PhaseSpace::for_dimension(n.d_in())?;
    let output = PhaseSpace::for_dimension(n.d_out())?;
    Ok(wigner_table(n.choi(), &input, &output))
}

/// `tr[E (A_u ⊗ A_v)] / d_out` for every pair of phase points.
fn wigner_table(e: &Hermitian, input: &PhaseSpace, output: &PhaseSpace) -> Vec<Vec<f64>> {
    let db = output.dim() as f64;
    input
        .points()
        .iter()
        .map(|a| output.points().iter().map(|b| trace_product(e.matrix(), &kron(a, b)).re / db).collect())
        .collect()
}

/// `max_u Σ_v |W(v|u)|` of an operator on input ⊗ output.
fn wigner_norm(e: &Hermitian, input: &PhaseSpace, output: &PhaseSpace) -> f64 {
    wigner_table(e, input, output)
        .iter()
        .map(|row| row.iter().map(|w| w.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Mana `log ‖ρ‖_{W,1}`.
pub fn mana_state(rho: &Hermitian) -> Result<f64> {
    Ok(PhaseSpace::for_dimension(rho.dim())?.wigner_trace_norm(rho)?.log2())
}

/// Channel mana `log max_u Σ_v |W(v|u)|`.
pub fn mana_channel(n: &Channel) -> Result<f64> {
    let w = channel_wigner(n)?;
    let worst = w
        .iter()
        .map(|row| row.iter().map(|x| x.abs()).sum::<f64>())
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(worst.log2())
}

/// Qutrit T-type magic state `(ξ, 1, ξ⁻¹)/√3` with `ξ = e^{2πi/9}`.
pub fn qutrit_t_state() -> DensityOperator {
    let xi = Complex64::from_polar(1.0, 2.0 * PI / 9.0);
    DensityOperator::pure(&[xi, c(1.0, 0.0), xi.conj()]).expect("normalizable vector")
}

/// Qutrit Strange-type magic state proportional to `(1 + √3, 1, 1)`.
pub fn qutrit_h_plus_state() -> DensityOperator {
    DensityOperator::pure(&[c(1.0 + 3f64.sqrt(), 0.0), c(1.0, 0.0), c(1.0, 0.0)]).expect("normalizable vector")
}

fn field_with(space: &[&PhaseSpace], data: &CMatrix) -> Field {
    let mut all: Vec<&CMatrix> = vec![data];
    for s in space {
        all.extend(s.points());
    }
    Field::for_data(all)
}

/// Adds `Σ_v |tr[E (A_u ⊗ A_v)]| / d_B ≤ bound` for every `u`, using slacks
/// `t_uv ≥ ±tr[E (A_u ⊗ A_v)] / d_B`.
fn wigner_norm_at_most(
    p: &mut Program,
    e: &MatExpr,
    input: &PhaseSpace,
    output: &PhaseSpace,
    bound: &Affine,
) -> Result<()> {
    let db = output.dim() as f64;
    for a in input.points() {
        let mut total = Affine::default();
        for b in output.points() {
            let w = e.inner(&kron(a, b)).scale_real(1.0 / db);
            if w.max_imag() > REALNESS_TOL {
                return Err(Error::Backend("Wigner coefficient of a Hermitian operator is not real".into()));
            }
            let w = Affine {
                constant: c(w.constant.re, 0.0),
                terms: w.terms.iter().map(|&(i, z)| (i, c(z.re, 0.0))).collect(),
            };
            let t = p.scalar();
            p.nonneg(&t.sub(&w));
            p.nonneg(&t.add(&w));
            total = total.add(&t);
        }
        p.nonneg(&bound.sub(&total));
    }
    Ok(())
}

/// Min-Thauma `-log max { tr[ψ σ] : σ ⪰ 0, ‖σ‖_{W,1} ≤ 1 }` of a pure state.
pub fn theta_min_state(psi: &DensityOperator, settings: &SolverSettings) -> Result<BoundResult> {
    let spec = psi.eigh();
    if spec.rank() != 1 {
        return Err(Error::InvalidParameter("min-Thauma needs a pure state".into()));
    }
    let space = PhaseSpace::for_dimension(psi.dim())?;
    let trivial = PhaseSpace::for_dimension(1)?;
    let mut p = Program::new(field_with(&[&space], psi.matrix()));
    let sigma = p.hermitian(psi.dim());
    p.psd(&sigma);
    wigner_norm_at_most(&mut p, &sigma, &trivial, &space, &Affine::real(1.0))?;
    let proj = linalg::support_projector(psi);
    p.maximize(&sigma.inner(proj.matrix()));
    finish(BoundKind::ThetaMinState, &p, settings, None, |v| -v.log2())
}

/// Max-Thauma `log min { μ : V ⪰ J, max_u Σ_v |W_V(v|u)| ≤ μ }`.
pub fn thauma_max(n: &Channel, settings: &SolverSettings) -> Result<BoundResult> {
    let input = PhaseSpace::for_dimension(n.d_in())?;
    let output = PhaseSpace::for_dimension(n.d_out())?;
    let j = n.choi();
    let mut p = Program::new(field_with(&[&input, &output], j.matrix()));
    let mu = p.scalar();
    let v = p.hermitian(j.dim());
    p.psd(&v.sub(&MatExpr::constant(j)));
    wigner_norm_at_most(&mut p, &v, &input, &output, &mu)?;
    p.minimize(&mu);
    finish(BoundKind::ThaumaMax, &p, settings, None, log2)
}

/// Geometric Rényi Thauma of a channel at `α(ℓ)`: the geometric channel
/// divergence to the closest subchannel with non-positive mana.
pub fn thauma_geometric(n: &Channel, level: u32, settings: &SolverSettings) -> Result<BoundResult> {
    check_level(level)?;
    let input = PhaseSpace::for_dimension(n.d_in())?;
    let output = PhaseSpace::for_dimension(n.d_out())?;
    let j = fixed_choi(n.choi(), settings);
    let field = field_with(&[&input, &output], j.matrix());
    let dims = n.dims();
    let (input, output) = (&input, &output);
    let build = |l| -> Result<MinForm> {
        let mut chain = bounds::chain_program_in(field, &j, &dims, &[1], l);
        wigner_norm_at_most(&mut chain.program, &chain.n0, input, output, &Affine::real(1.0))?;
        let n0 = chain.n0;
        let repair = move |sol: &Solution| {
            let n0 = bounds::psd_part(&sol.hermitian(&n0));
            let c = wigner_norm(&n0, input, output);
            Some(bounds::shrink(n0, c))
        };
        Ok(MinForm { program: chain.program, repair: Box::new(repair) })
    };
    bounds::finish_min_form(BoundKind::ThaumaGeometric, settings, level, build, bounds::choi_value(&j, &dims, &[1]))
}

/// Geometric Rényi Thauma `min { D̂_α(ρ‖σ) : σ ⪰ 0, ‖σ‖_{W,1} ≤ 1 }` of a state.
pub fn state_thauma_geometric(rho: &Hermitian, level: u32, settings: &SolverSettings) -> Result<BoundResult> {
    check_level(level)?;
    let space = PhaseSpace::for_dimension(rho.dim())?;
    let trivial = PhaseSpace::for_dimension(1)?;
    let fixed = fixed_choi(rho, settings);
    let (space, trivial) = (&space, &trivial);
    let build = |l| -> Result<MinForm> {
        let mut p = Program::new(field_with(&[space], fixed.matrix()));
        let sigma = p.hermitian(rho.dim());
        let m = p.geometric_mean_upper(&fixed, &sigma, l);
        wigner_norm_at_most(&mut p, &sigma, trivial, space, &Affine::real(1.0))?;
        p.minimize(&m.trace());
        let repair = move |sol: &Solution| {
            let s = bounds::psd_part(&sol.hermitian(&sigma));
            let c = wigner_norm(&s, trivial, space);
            Some(bounds::shrink(s, c))
        };
        Ok(MinForm { program: p, repair: Box::new(repair) })
    };
    bounds::finish_min_form(BoundKind::StateThaumaGeometric, settings, level, build, bounds::state_value(&fixed))
}

fn positive_or_undefined(value: f64, what: &str) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::Backend(format!("{what} could not be computed")));
    }
    if value <= FREE_TOL {
        return Err(Error::Undefined(format!("{what} vanishes")));
    }
    Ok(value)
}

/// Strong converse bound `θ̂_α(N) / θ_min(ψ)` on the rate of producing `ψ`.
pub fn magic_capacity_bound(
    n: &Channel,
    target: &DensityOperator,
    level: u32,
    settings: &SolverSettings,
) -> Result<f64> {
    let denom = positive_or_undefined(theta_min_state(target, settings)?.bits, "min-Thauma of the target")?;
    let num = thauma_geometric(n, level, settings)?.bits;
    if !num.is_finite() {
        return Err(Error::Backend("geometric Thauma could not be computed".into()));
    }
    Ok(num.max(0.0) / denom)
}

/// Lower bounds on the number of uses of a source channel needed to
/// implement a target channel with free operations.
#[derive(Clone, Debug, Serialize)]
pub struct SynthesisBound {
    pub mana: f64,
    pub thauma_max: f64,
    pub thauma_geometric: f64,
}

impl SynthesisBound {
    pub fn best(&self) -> f64 {
        self.mana.max(self.thauma_max).max(self.thauma_geometric)
    }
}

/// Ratios of mana, max-Thauma and geometric Thauma of target over source.
/// A source with vanishing geometric Thauma cannot implement any magic
/// target and yields [`Error::Undefined`].
pub fn synthesis_lower_bound(
    source: &Channel,
    target: &Channel,
    level: u32,
    settings: &SolverSettings,
) -> Result<SynthesisBound> {
    let geo_src = positive_or_undefined(thauma_geometric(source, level, settings)?.bits, "source Thauma")?;
    let max_src = positive_or_undefined(thauma_max(source, settings)?.bits, "source max-Thauma")?;
    let mana_src = positive_or_undefined(mana_channel(source)?, "source mana")?;
    let geo_tgt = thauma_geometric(target, level, settings)?.bits;
    let max_tgt = thauma_max(target, settings)?.bits;
    let mana_tgt = mana_channel(target)?;
    Ok(SynthesisBound {
        mana: mana_tgt.max(0.0) / mana_src,
        thauma_max: max_tgt.max(0.0) / max_src,
        thauma_geometric: geo_tgt.max(0.0) / geo_src,
    })
}

/// Optimal point of the `α = 2` dual program
/// `max tr[J (K + K†)] - Σ_u f_u` subject to `[[ρ ⊗ I, K], [K†, Z]] ⪰ 0`,
/// `|tr[Z (A_u ⊗ A_v)]| / d_A ≤ f_u` and `tr ρ = 1`.
#[derive(Clone, Debug)]
pub struct ThaumaDual {
    pub rho: Hermitian,
    pub k: CMatrix,
    pub z: Hermitian,
    pub f: Vec<f64>,
    pub status: SolveStatus,
}

/// Optimal point of the `α = 2` primal program: `M ⪰ J N_0^{-1} J` with
/// `tr_B M ⪯ y I` and `N_0` of non-positive mana.
#[derive(Clone, Debug)]
pub struct ThaumaPrimal {
    pub m: Hermitian,
    pub n0: Hermitian,
    pub status: SolveStatus,
}

pub fn thauma_two_dual(n: &Channel, settings: &SolverSettings) -> Result<ThaumaDual> {
    let input = PhaseSpace::for_dimension(n.d_in())?;
    let output = PhaseSpace::for_dimension(n.d_out())?;
    let j = n.choi();
    let dim = j.dim();
    let da = n.d_in() as f64;
    let mut p = Program::new(field_with(&[&input, &output], j.matrix()));
    let rho = p.hermitian(n.d_in());
    let k = p.general(dim, dim);
    let z = p.hermitian(dim);
    let fs: Vec<Affine> = (0..input.len()).map(|_| p.scalar()).collect();
    p.psd(&MatExpr::block(&rho.kron_identity_right(n.d_out()), &k, &k.adjoint(), &z));
    p.zero(&rho.trace().sub(&Affine::real(1.0)));
    for (a, f) in input.points().iter().zip(&fs) {
        for b in output.points() {
            let w = z.inner(&kron(a, b)).scale_real(1.0 / da);
            let w = Affine {
                constant: c(w.constant.re, 0.0),
                terms: w.terms.iter().map(|&(i, s)| (i, c(s.re, 0.0))).collect(),
            };
            p.nonneg(&f.sub(&w));
            p.nonneg(&f.add(&w));
        }
    }
    p.maximize(&k.hermitian_part2().inner(j.matrix()).sub(&Affine::sum(&fs)));
    let sol = p.solve(settings)?;
    Ok(ThaumaDual {
        rho: sol.hermitian(&rho),
        k: sol.matrix(&k),
        z: sol.hermitian(&z),
        f: fs.iter().map(|f| sol.value(f)).collect(),
        status: sol.report.status,
    })
}

pub fn thauma_two_primal(n: &Channel, settings: &SolverSettings) -> Result<ThaumaPrimal> {
    let input = PhaseSpace::for_dimension(n.d_in())?;
    let output = PhaseSpace::for_dimension(n.d_out())?;
    let j = n.choi();
    let field = field_with(&[&input, &output], j.matrix());
    let mut chain = bounds::chain_program_in(field, j, &n.dims(), &[1], 0);
    wigner_norm_at_most(&mut chain.program, &chain.n0, &input, &output, &Affine::real(1.0))?;
    let sol = chain.program.solve(settings)?;
    Ok(ThaumaPrimal {
        m: sol.hermitian(&chain.m),
        n0: sol.hermitian(&chain.n0),
        status: sol.report.status,
    })
}

/// Bracket on `θ̂₂(N₁ ⊗ N₂)` obtained from tensor products of optimal points
/// of the single-channel primal and dual programs, each verified on the
/// joint system. Both ends are repaired to exact feasibility of the linear
/// Wigner constraints by rescaling; the smallest eigenvalues of the two
/// block matrices are reported rather than repaired.
#[derive(Clone, Debug, Serialize)]
pub struct ProductBracket {
    /// `θ̂₂(N₁)` and `θ̂₂(N₂)` from direct solves.
    pub single: [f64; 2],
    /// Dual value of the product point: a lower bound on `θ̂₂(N₁ ⊗ N₂)`.
    pub lower: f64,
    /// Primal value of the product point: an upper bound on `θ̂₂(N₁ ⊗ N₂)`.
    pub upper: f64,
    /// Smallest eigenvalue of `[[M, J], [J, N_0]]`, relative to its norm.
    pub primal_min_eig: f64,
    /// Smallest eigenvalue of `[[ρ ⊗ I, K], [K†, Z]]`, relative to its norm.
    pub dual_min_eig: f64,
}

fn relative_min_eig(m: CMatrix) -> f64 {
    let h = Hermitian::symmetrized(m);
    h.min_eigenvalue() / h.operator_norm().max(f64::MIN_POSITIVE)
}

fn block(a: &CMatrix, b: &CMatrix, c_: &CMatrix, d: &CMatrix) -> CMatrix {
    let (r, s) = (a.nrows(), d.nrows());
    let mut out = CMatrix::zeros(r + s, r + s);
    out.view_mut((0, 0), (r, r)).copy_from(a);
    out.view_mut((0, r), (r, s)).copy_from(b);
    out.view_mut((r, 0), (s, r)).copy_from(c_);
    out.view_mut((r, r), (s, s)).copy_from(d);
    out
}

pub fn thauma_two_product_bracket(n1: &Channel, n2: &Channel, settings: &SolverSettings) -> Result<ProductBracket> {
    let single = [thauma_geometric(n1, 0, settings)?.bits, thauma_geometric(n2, 0, settings)?.bits];
    let joint = n1.tensor(n2)?;
    let dims = [n1.d_in(), n1.d_out(), n2.d_in(), n2.d_out()];
    let pair = |a: &CMatrix, b: &CMatrix| linalg::permute_subsystems(&kron(a, b), &dims, &[0, 2, 1, 3]);
    let input = PhaseSpace::for_dimension(n1.d_in())?.tensor(&PhaseSpace::for_dimension(n2.d_in())?);
    let output = PhaseSpace::for_dimension(n1.d_out())?.tensor(&PhaseSpace::for_dimension(n2.d_out())?);
    let coefficients = |x: &CMatrix| -> Vec<Vec<f64>> {
        input
            .points()
            .iter()
            .map(|a| output.points().iter().map(|b| trace_product(x, &kron(a, b)).re).collect())
            .collect()
    };
    let j = joint.choi().matrix();
    let (da, db) = (joint.d_in() as f64, joint.d_out() as f64);

    let p1 = thauma_two_primal(n1, settings)?;
    let p2 = thauma_two_primal(n2, settings)?;
    let m = pair(p1.m.matrix(), p2.m.matrix())?;
    let n0 = pair(p1.n0.matrix(), p2.n0.matrix())?;
    let mana = coefficients(&n0)
        .iter()
        .map(|row| row.iter().map(|w| w.abs()).sum::<f64>() / db)
        .fold(0.0, f64::max);
    let scale = mana.max(1.0);
    let reduced = Hermitian::symmetrized(linalg::partial_trace(&m, &joint.dims(), &[1])?);
    let upper = (scale * reduced.max_eigenvalue()).log2();
    let primal_min_eig = relative_min_eig(block(&m, j, j, &n0));

    let d1 = thauma_two_dual(n1, settings)?;
    let d2 = thauma_two_dual(n2, settings)?;
    let rho = kron(d1.rho.matrix(), d2.rho.matrix());
    let k = pair(&d1.k, &d2.k)?;
    let z = pair(d1.z.matrix(), d2.z.matrix())?;
    let f: Vec<f64> = d1.f.iter().flat_map(|a| d2.f.iter().map(move |b| a * b)).collect();
    let ratio = coefficients(&z)
        .iter()
        .zip(&f)
        .flat_map(|(row, fu)| row.iter().map(move |w| w.abs() / (da * fu)))
        .fold(0.0, f64::max);
    let total: f64 = f.iter().sum::<f64>() * ratio.max(1.0);
    let lower = (trace_product(j, &k).norm_sqr() / total).log2();
    let rho_i = kron(&rho, &CMatrix::identity(joint.d_out(), joint.d_out()));
    let dual_min_eig = relative_min_eig(block(&rho_i, &k, &k.adjoint(), &z));

    Ok(ProductBracket { single, lower, upper, primal_min_eig, dual_min_eig })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qutrit_phase_points() {
        let s = PhaseSpace::new(3).unwrap();
        assert_eq!(s.len(), 9);
        let mut sum = CMatrix::zeros(3, 3);
        for (u, a) in s.points().iter().enumerate() {
            assert!((a - a.adjoint()).norm() < 1e-12);
            assert!((a.trace().re - 1.0).abs() < 1e-12);
            for (v, b) in s.points().iter().enumerate() {
                let want = if u == v { 3.0 } else { 0.0 };
                assert!((trace_product(a, b) - c(want, 0.0)).norm() < 1e-10);
            }
            sum += a;
        }
        assert!((sum / c(3.0, 0.0) - CMatrix::identity(3, 3)).norm() < 1e-12);
    }

    #[test]
    fn shifts_are_unitary() {
        for u in 0..25 {
            let t = heisenberg_weyl(5, u / 5, u % 5);
            assert!((&t * t.adjoint() - CMatrix::identity(5, 5)).norm() < 1e-12);
        }
    }

    #[test]
    fn rejects_even_and_composite() {
        assert!(PhaseSpace::new(2).is_err());
        assert!(PhaseSpace::new(9).is_err());
        assert!(PhaseSpace::for_dimension(6).is_err());
        assert_eq!(PhaseSpace::for_dimension(15).unwrap().factors(), &[3, 5]);
    }

    #[test]
    fn wigner_sums_to_trace() {
        let s = PhaseSpace::new(3).unwrap();
        let w = s.wigner(qutrit_t_state().hermitian()).unwrap();
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        assert!(w.iter().any(|&x| x < 0.0));
    }

    #[test]
    fn free_objects_have_zero_mana() {
        assert!(mana_state(DensityOperator::maximally_mixed(3).hermitian()).unwrap().abs() < 1e-12);
        assert!(mana_channel(&Channel::identity(3)).unwrap().abs() < 1e-12);
        assert!(mana_state(qutrit_t_state().hermitian()).unwrap() > 0.1);
    }

    #[test]
    fn stabilizer_state_has_zero_min_thauma() {
        let zero = DensityOperator::pure(&[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        let r = theta_min_state(&zero, &SolverSettings::default()).unwrap();
        assert!(r.bits.abs() < 1e-6, "{}", r.bits);
    }
}
