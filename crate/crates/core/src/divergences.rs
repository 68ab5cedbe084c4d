//! Quantum Rényi divergences between states and between channels, in bits.

use crate::channels::Channel;
use crate::error::{Error, Result};
use crate::linalg::{self, trace_product, weighted_geometric_mean, Hermitian};
use serde::{Serialize, Serializer};
use std::f64::consts::LN_2;
use std::fmt;

/// A divergence value; `Infinite` marks a violated support condition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Divergence {
    Finite(f64),
    Infinite,
}

impl Divergence {
    pub fn is_finite(&self) -> bool {
        matches!(self, Divergence::Finite(_))
    }

    /// The finite value, or `None` for `Infinite`.
    pub fn finite(&self) -> Option<f64> {
        match *self {
            Divergence::Finite(v) => Some(v),
            Divergence::Infinite => None,
        }
    }

    /// The value as an `f64`, mapping `Infinite` to `f64::INFINITY`.
    pub fn to_f64(&self) -> f64 {
        self.finite().unwrap_or(f64::INFINITY)
    }

    /// `self ≤ other + slack` in the extended reals.
    pub fn le(&self, other: &Divergence, slack: f64) -> bool {
        match (self, other) {
            (_, Divergence::Infinite) => true,
            (Divergence::Infinite, _) => false,
            (Divergence::Finite(a), Divergence::Finite(b)) => *a <= *b + slack,
        }
    }
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Divergence::Finite(v) => match f.precision() {
                Some(p) => write!(f, "{v:.p$}"),
                None => write!(f, "{v}"),
            },
            Divergence::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Divergence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Divergence::Finite(v) => s.serialize_f64(*v),
            Divergence::Infinite => s.serialize_str("inf"),
        }
    }
}

fn same_dim(rho: &Hermitian, sigma: &Hermitian) -> Result<()> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(format!(
            "divergence between dimensions {} and {}",
            rho.dim(),
            sigma.dim()
        )));
    }
    Ok(())
}

fn check_alpha(alpha: f64, lo: f64, hi: f64, name: &str) -> Result<()> {
    if !(alpha > lo && alpha <= hi) || alpha == 1.0 {
        return Err(Error::InvalidParameter(format!(
            "{name} divergence needs alpha in ({lo}, 1) ∪ (1, {hi}], got {alpha}"
        )));
    }
    Ok(())
}

/// `(1/(α-1)) log₂ q`, where `q = 0` means orthogonal supports.
fn renyi_from_quasi(q: f64, alpha: f64) -> Divergence {
    if q <= 0.0 {
        return if alpha < 1.0 { Divergence::Infinite } else { Divergence::Finite(f64::NEG_INFINITY) };
    }
    Divergence::Finite(q.log2() / (alpha - 1.0))
}

/// Umegaki relative entropy `tr ρ (log ρ - log σ)`.
pub fn umegaki(rho: &Hermitian, sigma: &Hermitian) -> Result<Divergence> {
    same_dim(rho, sigma)?;
    if !linalg::support_included(rho, sigma) {
        return Ok(Divergence::Infinite);
    }
    let diff = linalg::log_on_support(rho)?.sub(&linalg::log_on_support(sigma)?);
    Ok(Divergence::Finite(trace_product(rho, &diff).re / LN_2))
}

/// Petz-Rényi divergence `(1/(α-1)) log tr ρ^α σ^{1-α}` for `α ∈ (0,1) ∪ (1,2]`.
pub fn petz(rho: &Hermitian, sigma: &Hermitian, alpha: f64) -> Result<Divergence> {
    same_dim(rho, sigma)?;
    check_alpha(alpha, 0.0, 2.0, "Petz")?;
    if alpha > 1.0 && !linalg::support_included(rho, sigma) {
        return Ok(Divergence::Infinite);
    }
    let a = linalg::power(rho, alpha)?;
    let b = linalg::power(sigma, 1.0 - alpha)?;
    Ok(renyi_from_quasi(trace_product(&a, &b).re, alpha))
}

/// Sandwiched Rényi divergence `(1/(α-1)) log tr (σ^{(1-α)/2α} ρ σ^{(1-α)/2α})^α`
/// for `α ∈ [1/2, 1) ∪ (1, ∞)`.
pub fn sandwiched(rho: &Hermitian, sigma: &Hermitian, alpha: f64) -> Result<Divergence> {
    same_dim(rho, sigma)?;
    if alpha < 0.5 || alpha == 1.0 || !alpha.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "sandwiched divergence needs alpha in [1/2, 1) ∪ (1, ∞), got {alpha}"
        )));
    }
    if alpha > 1.0 && !linalg::support_included(rho, sigma) {
        return Ok(Divergence::Infinite);
    }
    let s = linalg::power(sigma, (1.0 - alpha) / (2.0 * alpha))?;
    let inner = rho.congruence(&s);
    let q = linalg::power(&inner, alpha)?.trace();
    Ok(renyi_from_quasi(q, alpha))
}

/// Geometric Rényi divergence `(1/(α-1)) log tr G_{1-α}(ρ, σ)` for `α ∈ (0,1) ∪ (1,2]`.
pub fn geometric(rho: &Hermitian, sigma: &Hermitian, alpha: f64) -> Result<Divergence> {
    same_dim(rho, sigma)?;
    check_alpha(alpha, 0.0, 2.0, "geometric")?;
    match weighted_geometric_mean(rho, sigma, 1.0 - alpha) {
        Ok(g) => Ok(renyi_from_quasi(g.trace(), alpha)),
        Err(Error::SupportViolation) => Ok(Divergence::Infinite),
        Err(e) => Err(e),
    }
}

/// Belavkin-Staszewski relative entropy `tr ρ log(ρ^{1/2} σ^{-1} ρ^{1/2})`.
pub fn belavkin_staszewski(rho: &Hermitian, sigma: &Hermitian) -> Result<Divergence> {
    same_dim(rho, sigma)?;
    if !linalg::support_included(rho, sigma) {
        return Ok(Divergence::Infinite);
    }
    let inner = linalg::pinv(sigma)?.congruence(linalg::sqrt(rho)?.matrix());
    let log = linalg::log_on_support(&inner)?;
    Ok(Divergence::Finite(trace_product(rho, &log).re / LN_2))
}

/// Max-relative entropy `log λ_max(σ^{-1/2} ρ σ^{-1/2})`.
pub fn max_relative(rho: &Hermitian, sigma: &Hermitian) -> Result<Divergence> {
    same_dim(rho, sigma)?;
    if !linalg::support_included(rho, sigma) {
        return Ok(Divergence::Infinite);
    }
    let s = linalg::power(sigma, -0.5)?;
    let top = rho.congruence(&s).max_eigenvalue();
    Ok(if top <= 0.0 { Divergence::Finite(f64::NEG_INFINITY) } else { Divergence::Finite(top.log2()) })
}

/// Min-relative entropy `-log tr Π_ρ σ`.
pub fn min_relative(rho: &Hermitian, sigma: &Hermitian) -> Result<Divergence> {
    same_dim(rho, sigma)?;
    let q = trace_product(&linalg::support_projector(rho), sigma).re;
    Ok(if q <= 0.0 { Divergence::Infinite } else { Divergence::Finite(-q.log2()) })
}

fn same_channel_dims(n: &Channel, m: &Channel) -> Result<()> {
    if n.dims() != m.dims() {
        return Err(Error::DimensionMismatch(format!(
            "channels {:?} and {:?} differ in dimensions",
            n.dims(),
            m.dims()
        )));
    }
    Ok(())
}

/// Geometric Rényi channel divergence `(1/(α-1)) log ‖tr_B G_{1-α}(J_N, J_M)‖∞`, `α ∈ (1,2]`.
pub fn channel_geometric(n: &Channel, m: &Channel, alpha: f64) -> Result<Divergence> {
    same_channel_dims(n, m)?;
    choi_geometric(n.choi(), m.choi(), &n.dims(), &[1], alpha)
}

/// Channel geometric divergence between Choi operators on subsystems `dims`,
/// with `outputs` the subsystems traced out.
pub fn choi_geometric(jn: &Hermitian, jm: &Hermitian, dims: &[usize], outputs: &[usize], alpha: f64) -> Result<Divergence> {
    same_dim(jn, jm)?;
    if !(alpha > 1.0 && alpha <= 2.0) {
        return Err(Error::InvalidParameter(format!(
            "channel geometric divergence needs alpha in (1, 2], got {alpha}"
        )));
    }
    let g = match weighted_geometric_mean(jn, jm, 1.0 - alpha) {
        Ok(g) => g,
        Err(Error::SupportViolation) => return Ok(Divergence::Infinite),
        Err(e) => return Err(e),
    };
    let reduced = Hermitian::symmetrized(linalg::partial_trace(g.matrix(), dims, outputs)?);
    Ok(renyi_from_quasi(reduced.max_eigenvalue(), alpha))
}

/// Belavkin-Staszewski channel divergence
/// `‖tr_B J_N^{1/2} log(J_N^{1/2} J_M^{-1} J_N^{1/2}) J_N^{1/2}‖∞`.
pub fn channel_belavkin_staszewski(n: &Channel, m: &Channel) -> Result<Divergence> {
    same_channel_dims(n, m)?;
    if !linalg::support_included(n.choi(), m.choi()) {
        return Ok(Divergence::Infinite);
    }
    let root = linalg::sqrt(n.choi())?;
    let inner = linalg::pinv(m.choi())?.congruence(&root);
    let log = linalg::log_on_support(&inner)?.congruence(&root);
    let reduced = Hermitian::symmetrized(linalg::partial_trace(&log, &n.dims(), &[1])?);
    Ok(Divergence::Finite(reduced.max_eigenvalue() / LN_2))
}

/// Channel max-relative entropy `D_max(J_N ‖ J_M)`.
pub fn channel_max_relative(n: &Channel, m: &Channel) -> Result<Divergence> {
    same_channel_dims(n, m)?;
    max_relative(n.choi(), m.choi())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(n: usize, d: &[f64]) -> Hermitian {
        Hermitian::from_real(n, d).unwrap()
    }

    #[test]
    fn identical_states_have_zero_divergence() {
        let rho = h(2, &[0.6, 0.2, 0.2, 0.4]);
        for d in [
            umegaki(&rho, &rho).unwrap(),
            geometric(&rho, &rho, 1.5).unwrap(),
            petz(&rho, &rho, 1.5).unwrap(),
            sandwiched(&rho, &rho, 2.0).unwrap(),
            belavkin_staszewski(&rho, &rho).unwrap(),
            max_relative(&rho, &rho).unwrap(),
        ] {
            assert!(d.finite().unwrap().abs() < 1e-10, "{d}");
        }
    }

    #[test]
    fn commuting_states_reduce_to_classical() {
        let rho = h(2, &[0.5, 0.0, 0.0, 0.5]);
        let sigma = h(2, &[0.25, 0.0, 0.0, 0.75]);
        let expected = (0.5f64 * 0.5 / 0.25 + 0.5 * 0.5 / 0.75).log2();
        for d in [geometric(&rho, &sigma, 2.0), petz(&rho, &sigma, 2.0), sandwiched(&rho, &sigma, 2.0)] {
            assert!((d.unwrap().finite().unwrap() - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn support_violation_is_infinite() {
        let rho = h(2, &[0.5, 0.0, 0.0, 0.5]);
        let sigma = h(2, &[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(geometric(&rho, &sigma, 1.5).unwrap(), Divergence::Infinite);
        assert_eq!(max_relative(&rho, &sigma).unwrap(), Divergence::Infinite);
        assert_eq!(umegaki(&rho, &sigma).unwrap(), Divergence::Infinite);
        assert_eq!(format!("{:.6}", Divergence::Infinite), "inf");
    }

    #[test]
    fn rejects_alpha_out_of_range() {
        let rho = h(2, &[0.5, 0.0, 0.0, 0.5]);
        assert!(geometric(&rho, &rho, 2.5).is_err());
        assert!(geometric(&rho, &rho, 1.0).is_err());
        assert!(petz(&rho, &rho, 0.0).is_err());
    }

    #[test]
    fn dimension_mismatch() {
        assert!(umegaki(&Hermitian::identity(2), &Hermitian::identity(3)).is_err());
    }
}
