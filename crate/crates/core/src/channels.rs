//! Quantum channels in the Choi representation.
//!
//! The Choi operator of `N: A → B` is `J = Σ_ij |i⟩⟨j| ⊗ N(|i⟩⟨j|)` on `A ⊗ B`,
//! built from the unnormalized maximally entangled vector.

use crate::error::{Error, Result};
use crate::linalg::{self, c, CMatrix, Hermitian};
use num_complex::Complex64;
use std::f64::consts::PI;

const TP_TOL: f64 = 1e-8;

/// Whether the map is trace preserving or only trace non-increasing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChannelKind {
    Channel,
    Subchannel,
}

#[derive(Clone, Debug)]
pub struct Channel {
    choi: Hermitian,
    d_in: usize,
    d_out: usize,
    kind: ChannelKind,
}

fn check_probability(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::InvalidParameter(format!("{name} = {p} is outside [0, 1]")));
    }
    Ok(())
}

fn basis_op(rows: usize, cols: usize, r: usize, col: usize, v: f64) -> CMatrix {
    let mut m = CMatrix::zeros(rows, cols);
    m[(r, col)] = c(v, 0.0);
    m
}

impl Channel {
    /// Validates a Choi operator: positive semidefinite with `tr_B J = I_A`
    /// (or `tr_B J ≤ I_A` for subchannels).
    pub fn from_choi(choi: Hermitian, d_in: usize, d_out: usize, kind: ChannelKind) -> Result<Self> {
        if choi.dim() != d_in * d_out {
            return Err(Error::DimensionMismatch(format!(
                "Choi operator is {0}x{0}, expected {1}x{1}",
                choi.dim(),
                d_in * d_out
            )));
        }
        let lmin = choi.min_eigenvalue();
        if lmin < -1e-9 {
            return Err(Error::NotPositive(lmin));
        }
        let marginal = Hermitian::symmetrized(linalg::partial_trace(&choi, &[d_in, d_out], &[1])?);
        let gap = Hermitian::identity(d_in).sub(&marginal);
        match kind {
            ChannelKind::Channel if gap.operator_norm() > TP_TOL => {
                return Err(Error::InvalidParameter(format!(
                    "map is not trace preserving (deviation {:.3e})",
                    gap.operator_norm()
                )))
            }
            ChannelKind::Subchannel if gap.min_eigenvalue() < -TP_TOL => {
                return Err(Error::InvalidParameter("map increases trace".into()))
            }
            _ => {}
        }
        Ok(Channel { choi, d_in, d_out, kind })
    }

    pub fn from_kraus(kraus: &[CMatrix]) -> Result<Self> {
        let first = kraus
            .first()
            .ok_or_else(|| Error::InvalidParameter("empty Kraus list".into()))?;
        let (d_out, d_in) = first.shape();
        let n = d_in * d_out;
        let mut j = CMatrix::zeros(n, n);
        for a in kraus {
            if a.shape() != (d_out, d_in) {
                return Err(Error::DimensionMismatch("Kraus operators differ in shape".into()));
            }
            let v = CMatrix::from_fn(n, 1, |k, _| a[(k % d_out, k / d_out)]);
            j += &v * v.adjoint();
        }
        Self::from_choi(Hermitian::symmetrized(j), d_in, d_out, ChannelKind::Channel)
    }

    pub fn identity(d: usize) -> Self {
        Self::from_kraus(&[linalg::identity(d)]).expect("identity is a channel")
    }

    pub fn unitary(u: &CMatrix) -> Result<Self> {
        Self::from_kraus(std::slice::from_ref(u))
    }

    /// `ρ ↦ (1-p) ρ + p tr(ρ) I/d`
    pub fn depolarizing(d: usize, p: f64) -> Result<Self> {
        check_probability("p", p)?;
        let phi = max_entangled(d);
        let n = d * d;
        let j = phi * c(1.0 - p, 0.0) + linalg::identity(n) * c(p / d as f64, 0.0);
        Self::from_choi(Hermitian::symmetrized(j), d, d, ChannelKind::Channel)
    }

    /// Erasure with flag `|d⟩` appended to a `d`-dimensional input.
    pub fn erasure(d: usize, p: f64) -> Result<Self> {
        check_probability("p", p)?;
        let mut kraus = vec![embedding(d, d + 1) * c((1.0 - p).sqrt(), 0.0)];
        for i in 0..d {
            kraus.push(basis_op(d + 1, d, d, i, p.sqrt()));
        }
        Self::from_kraus(&kraus)
    }

    /// Qubit dephasing `ρ ↦ (1-p) ρ + p ZρZ`.
    pub fn dephasing(p: f64) -> Result<Self> {
        check_probability("p", p)?;
        Self::from_kraus(&[
            linalg::identity(2) * c((1.0 - p).sqrt(), 0.0),
            pauli_z() * c(p.sqrt(), 0.0),
        ])
    }

    /// Qubit dephasing followed by erasure: output dimension three, flag index two.
    pub fn dephrasure(p: f64, q: f64) -> Result<Self> {
        check_probability("p", p)?;
        check_probability("q", q)?;
        let v = embedding(2, 3);
        Self::from_kraus(&[
            &v * c(((1.0 - q) * (1.0 - p)).sqrt(), 0.0),
            &v * pauli_z() * c(((1.0 - q) * p).sqrt(), 0.0),
            basis_op(3, 2, 2, 0, q.sqrt()),
            basis_op(3, 2, 2, 1, q.sqrt()),
        ])
    }

    /// Generalized amplitude damping with damping `gamma` and thermal population `n`.
    pub fn generalized_amplitude_damping(gamma: f64, n: f64) -> Result<Self> {
        check_probability("gamma", gamma)?;
        check_probability("N", n)?;
        let s = |x: f64| x.max(0.0).sqrt();
        let a1 = linalg::diag(&[1.0, s(1.0 - gamma)]) * c(s(1.0 - n), 0.0);
        let a2 = basis_op(2, 2, 0, 1, s(gamma * (1.0 - n)));
        let a3 = linalg::diag(&[s(1.0 - gamma), 1.0]) * c(s(n), 0.0);
        let a4 = basis_op(2, 2, 1, 0, s(gamma * n));
        Self::from_kraus(&[a1, a2, a3, a4])
    }

    pub fn amplitude_damping(gamma: f64) -> Result<Self> {
        Self::generalized_amplitude_damping(gamma, 0.0)
    }

    /// Discards the input and prepares `sigma`.
    pub fn replacer(d_in: usize, sigma: &Hermitian) -> Result<Self> {
        let j = Hermitian::identity(d_in).kron(sigma);
        Self::from_choi(j, d_in, sigma.dim(), ChannelKind::Channel)
    }

    /// Two-qubit channel `ρ ↦ p SρS + (1-p) U S ρ S U†` with `U = diag(1, e^{iφ}, e^{iφ}, e^{2iφ})`.
    pub fn swap_dephase(p: f64, phi: f64) -> Result<Self> {
        check_probability("p", p)?;
        let s = swap(2);
        let e = Complex64::from_polar(1.0, phi);
        let mut u = CMatrix::zeros(4, 4);
        u[(0, 0)] = c(1.0, 0.0);
        u[(1, 1)] = e;
        u[(2, 2)] = e;
        u[(3, 3)] = e * e;
        Self::from_kraus(&[&s * c(p.sqrt(), 0.0), &u * &s * c((1.0 - p).sqrt(), 0.0)])
    }

    /// Qutrit depolarizing noise after the qutrit T gate `diag(ξ, 1, ξ⁻¹)`, `ξ = e^{2πi/9}`.
    pub fn qutrit_t_depolarizing(p: f64) -> Result<Self> {
        let t = Self::unitary(&qutrit_t_gate())?;
        Self::depolarizing(3, p)?.after(&t)
    }

    /// `self ∘ first`, computed through the link product of Choi operators.
    pub fn after(&self, first: &Channel) -> Result<Self> {
        if first.d_out != self.d_in {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose: first outputs dimension {}, second expects {}",
                first.d_out, self.d_in
            )));
        }
        let (da, dc) = (first.d_in, self.d_out);
        let mut j = CMatrix::zeros(da * dc, da * dc);
        for i in 0..da {
            for k in 0..da {
                let mid = first.block(i, k);
                let out = self.apply_operator(&mid);
                for x in 0..dc {
                    for y in 0..dc {
                        j[(i * dc + x, k * dc + y)] = out[(x, y)];
                    }
                }
            }
        }
        let kind = if self.kind == ChannelKind::Channel && first.kind == ChannelKind::Channel {
            ChannelKind::Channel
        } else {
            ChannelKind::Subchannel
        };
        Self::from_choi(Hermitian::symmetrized(j), da, dc, kind)
    }

    /// Parallel use `self ⊗ other` with input `A1A2` and output `B1B2`.
    pub fn tensor(&self, other: &Channel) -> Result<Self> {
        let big = linalg::kron(&self.choi, &other.choi);
        let dims = [self.d_in, self.d_out, other.d_in, other.d_out];
        let j = linalg::permute_subsystems(&big, &dims, &[0, 2, 1, 3])?;
        let kind = if self.kind == ChannelKind::Channel && other.kind == ChannelKind::Channel {
            ChannelKind::Channel
        } else {
            ChannelKind::Subchannel
        };
        Self::from_choi(
            Hermitian::symmetrized(j),
            self.d_in * other.d_in,
            self.d_out * other.d_out,
            kind,
        )
    }

    /// `N(|i⟩⟨k|)` read off the Choi operator.
    fn block(&self, i: usize, k: usize) -> CMatrix {
        let d = self.d_out;
        self.choi.view((i * d, k * d), (d, d)).into_owned()
    }

    /// Action on an arbitrary operator on the input space.
    pub fn apply_operator(&self, x: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(self.d_out, self.d_out);
        for i in 0..self.d_in {
            for k in 0..self.d_in {
                let w = x[(i, k)];
                if w.norm() != 0.0 {
                    out += self.block(i, k) * w;
                }
            }
        }
        out
    }

    /// Applies the channel to subsystem `k` of an operator on subsystems `dims`.
    pub fn apply_to(&self, rho: &Hermitian, dims: &[usize], k: usize) -> Result<Hermitian> {
        if k >= dims.len() || dims[k] != self.d_in || rho.dim() != dims.iter().product::<usize>() {
            return Err(Error::DimensionMismatch(format!(
                "cannot apply a channel on dimension {} to subsystem {k} of {:?}",
                self.d_in, dims
            )));
        }
        let left: usize = dims[..k].iter().product();
        let right: usize = dims[k + 1..].iter().product();
        let (da, db) = (self.d_in, self.d_out);
        let n_out = left * db * right;
        let mut out = CMatrix::zeros(n_out, n_out);
        let idx_in = |l: usize, a: usize, r: usize| (l * da + a) * right + r;
        let idx_out = |l: usize, b: usize, r: usize| (l * db + b) * right + r;
        for a in 0..da {
            for a2 in 0..da {
                let blk = self.block(a, a2);
                for l in 0..left {
                    for l2 in 0..left {
                        for r in 0..right {
                            for r2 in 0..right {
                                let w = rho[(idx_in(l, a, r), idx_in(l2, a2, r2))];
                                if w.norm() == 0.0 {
                                    continue;
                                }
                                for b in 0..db {
                                    for b2 in 0..db {
                                        out[(idx_out(l, b, r), idx_out(l2, b2, r2))] += w * blk[(b, b2)];
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(Hermitian::symmetrized(out))
    }

    /// `(id_R ⊗ N)(ρ_RA)`; via the identity `⟨Φ|_{AA'} ρ_{RA} ⊗ J_{A'B} |Φ⟩_{AA'}`.
    pub fn apply(&self, rho: &Hermitian, d_ref: usize) -> Result<Hermitian> {
        self.apply_to(rho, &[d_ref, self.d_in], 1)
    }

    pub fn choi(&self) -> &Hermitian {
        &self.choi
    }

    pub fn d_in(&self) -> usize {
        self.d_in
    }

    pub fn d_out(&self) -> usize {
        self.d_out
    }

    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn dims(&self) -> [usize; 2] {
        [self.d_in, self.d_out]
    }

    /// Choi operator with `eps · I` mixed in, used to keep conic programs strictly feasible.
    pub fn regularized_choi(&self, eps: f64) -> Hermitian {
        if eps == 0.0 {
            return self.choi.clone();
        }
        self.choi.add(&Hermitian::identity(self.choi.dim()).scale(eps))
    }
}

/// A channel `A1 B1 → A2 B2` shared by two parties, with Choi operator on `A1 B1 A2 B2`.
#[derive(Clone, Debug)]
pub struct BipartiteChannel {
    channel: Channel,
    dims: [usize; 4],
}

impl BipartiteChannel {
    /// `dims = [A1, B1, A2, B2]`.
    pub fn new(channel: Channel, dims: [usize; 4]) -> Result<Self> {
        if channel.d_in != dims[0] * dims[1] || channel.d_out != dims[2] * dims[3] {
            return Err(Error::DimensionMismatch(format!(
                "channel {}→{} does not factor as {:?}",
                channel.d_in, channel.d_out, dims
            )));
        }
        Ok(BipartiteChannel { channel, dims })
    }

    pub fn swap_dephase(p: f64, phi: f64) -> Result<Self> {
        Self::new(Channel::swap_dephase(p, phi)?, [2, 2, 2, 2])
    }

    pub fn channel(&self) -> &Channel {
        &self.channel
    }

    pub fn dims(&self) -> [usize; 4] {
        self.dims
    }
}

/// Unnormalized `|Φ⟩⟨Φ|` with `|Φ⟩ = Σ_i |ii⟩`.
pub fn max_entangled(d: usize) -> CMatrix {
    let n = d * d;
    CMatrix::from_fn(n, n, |r, col| {
        if r % (d + 1) == 0 && col % (d + 1) == 0 {
            c(1.0, 0.0)
        } else {
            c(0.0, 0.0)
        }
    })
}

/// Isometric inclusion of `C^d` into `C^m`.
fn embedding(d: usize, m: usize) -> CMatrix {
    CMatrix::from_fn(m, d, |i, j| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) })
}

pub fn pauli_z() -> CMatrix {
    linalg::diag(&[1.0, -1.0])
}

/// Swap of two `d`-dimensional systems.
pub fn swap(d: usize) -> CMatrix {
    let n = d * d;
    CMatrix::from_fn(n, n, |r, col| {
        if r == (col % d) * d + col / d {
            c(1.0, 0.0)
        } else {
            c(0.0, 0.0)
        }
    })
}

pub fn qutrit_t_gate() -> CMatrix {
    let xi = Complex64::from_polar(1.0, 2.0 * PI / 9.0);
    let mut t = CMatrix::zeros(3, 3);
    t[(0, 0)] = xi;
    t[(1, 1)] = c(1.0, 0.0);
    t[(2, 2)] = xi.conj();
    t
}
