//! Random fixtures and independent oracles shared by the integration tests.
#![allow(dead_code)]

use georenyi::channels::{Channel, ChannelKind};
use georenyi::linalg::{c, CMatrix, Hermitian};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Complex matrix with independent uniform entries in the unit square.
pub fn ginibre(r: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| c(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)))
}

pub fn real_matrix(r: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| c(r.gen_range(-1.0..1.0), 0.0))
}

pub fn random_hermitian(r: &mut ChaCha8Rng, n: usize) -> Hermitian {
    Hermitian::symmetrized(ginibre(r, n, n))
}

/// Density operator of the given rank (full rank when `rank == n`).
pub fn random_state_rank(r: &mut ChaCha8Rng, n: usize, rank: usize) -> Hermitian {
    let g = ginibre(r, n, rank);
    let m = &g * g.adjoint();
    let t = m.trace().re;
    Hermitian::symmetrized(m / c(t, 0.0))
}

pub fn random_state(r: &mut ChaCha8Rng, n: usize) -> Hermitian {
    random_state_rank(r, n, n)
}

/// Positive definite matrix, not normalized.
pub fn random_positive(r: &mut ChaCha8Rng, n: usize) -> Hermitian {
    let g = ginibre(r, n, n);
    Hermitian::symmetrized(&g * g.adjoint() + CMatrix::identity(n, n) * c(0.1, 0.0))
}

/// Kraus operators of a random channel from a random isometry.
pub fn random_kraus(r: &mut ChaCha8Rng, d_in: usize, d_out: usize, count: usize) -> Vec<CMatrix> {
    assert!(d_out * count >= d_in, "an isometry needs d_out * count >= d_in");
    let v = ginibre(r, d_out * count, d_in).qr().q();
    (0..count).map(|k| v.rows(k * d_out, d_out).into_owned()).collect()
}

pub fn random_channel(r: &mut ChaCha8Rng, d_in: usize, d_out: usize, count: usize) -> Channel {
    Channel::from_kraus(&random_kraus(r, d_in, d_out, count)).expect("isometry gives a channel")
}

/// Channel with real Kraus operators, whose programs stay in real arithmetic.
pub fn random_real_channel(r: &mut ChaCha8Rng, d_in: usize, d_out: usize, count: usize) -> Channel {
    let v = real_matrix(r, d_out * count, d_in).qr().q();
    let kraus: Vec<CMatrix> = (0..count).map(|k| v.rows(k * d_out, d_out).into_owned()).collect();
    Channel::from_kraus(&kraus).expect("isometry gives a channel")
}

/// Choi operator `Σ_ij |i⟩⟨j| ⊗ Σ_k K|i⟩⟨j|K†` built entry by entry.
pub fn choi_from_kraus(kraus: &[CMatrix]) -> CMatrix {
    let (d_out, d_in) = kraus[0].shape();
    let mut j = CMatrix::zeros(d_in * d_out, d_in * d_out);
    for i in 0..d_in {
        for k in 0..d_in {
            for a in kraus {
                for x in 0..d_out {
                    for y in 0..d_out {
                        j[(i * d_out + x, k * d_out + y)] += a[(x, i)] * a[(y, k)].conj();
                    }
                }
            }
        }
    }
    j
}

/// `Σ_k K ρ K†`
pub fn apply_kraus(kraus: &[CMatrix], rho: &CMatrix) -> CMatrix {
    kraus.iter().fold(CMatrix::zeros(kraus[0].nrows(), kraus[0].nrows()), |acc, k| acc + k * rho * k.adjoint())
}

/// Random channel mixed with a full-rank replacer, so its Choi operator is full rank.
pub fn full_rank_channel(r: &mut ChaCha8Rng, d: usize, mix: f64) -> Channel {
    let n = random_channel(r, d, d, 2);
    let noise = Channel::depolarizing(d, 1.0).unwrap();
    let j = n.choi().scale(1.0 - mix).add(&noise.choi().scale(mix));
    Channel::from_choi(j, d, d, ChannelKind::Channel).unwrap()
}

pub fn unitary(r: &mut ChaCha8Rng, n: usize) -> CMatrix {
    ginibre(r, n, n).qr().q()
}

/// `U diag(values) U†`
pub fn rotated_diag(u: &CMatrix, values: &[f64]) -> Hermitian {
    Hermitian::symmetrized(u * georenyi::linalg::diag(values) * u.adjoint())
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    georenyi::linalg::max_abs(&(a - b))
}

/// Random probability vector with entries bounded away from zero.
pub fn probabilities(r: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| r.gen_range(0.05..1.0)).collect();
    let s: f64 = raw.iter().sum();
    raw.iter().map(|x| x / s).collect()
}

/// Classical Rényi divergence `(1/(α-1)) log₂ Σ p^α q^{1-α}`.
pub fn classical_renyi(p: &[f64], q: &[f64], alpha: f64) -> f64 {
    let s: f64 = p.iter().zip(q).map(|(a, b)| a.powf(alpha) * b.powf(1.0 - alpha)).sum();
    s.log2() / (alpha - 1.0)
}
