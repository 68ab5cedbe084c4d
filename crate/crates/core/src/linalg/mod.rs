//! Dense complex linear algebra: Hermitian spectral calculus, the weighted
//! matrix geometric mean, and operations on bipartite and multipartite operators.

pub mod subsystems;

use crate::error::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::ops::Deref;

pub type CMatrix = DMatrix<Complex64>;

/// Eigenvalues in `(-CLIP, 0]` are treated as exact zeros.
pub const CLIP: f64 = 1e-10;
/// Relative cutoff below which eigenvalues are excluded from pseudo-inverses.
pub const PINV_CUTOFF: f64 = 1e-10;
/// Threshold for the support inclusion test.
pub const SUPPORT_TOL: f64 = 1e-9;
const HERMITIAN_TOL: f64 = 1e-9;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> CMatrix {
    CMatrix::from_row_iterator(rows, cols, data.iter().map(|&x| c(x, 0.0)))
}

pub fn diag(values: &[f64]) -> CMatrix {
    let mut m = CMatrix::zeros(values.len(), values.len());
    for (i, &v) in values.iter().enumerate() {
        m[(i, i)] = c(v, 0.0);
    }
    m
}

/// Projector onto a pure state vector.
pub fn projector(v: &[Complex64]) -> CMatrix {
    let n = v.len();
    CMatrix::from_fn(n, n, |i, j| v[i] * v[j].conj())
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Real trace of a product `tr(AB)`, computed without forming the product.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let n = a.nrows();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..a.ncols() {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

/// A validated Hermitian matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Hermitian(CMatrix);

impl Hermitian {
    /// Accepts matrices that are Hermitian up to a relative tolerance and symmetrizes them.
    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "expected a square matrix, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        let asym = max_abs(&(&m - m.adjoint()));
        if asym > HERMITIAN_TOL * max_abs(&m).max(1.0) {
            return Err(Error::NotHermitian(asym));
        }
        Ok(Self::symmetrized(m))
    }

    /// Hermitian part `(M + M†)/2` without validation.
    pub fn symmetrized(m: CMatrix) -> Self {
        let h = (&m + m.adjoint()) * c(0.5, 0.0);
        Hermitian(h)
    }

    pub fn from_real(n: usize, data: &[f64]) -> Result<Self> {
        Self::new(from_real(n, n, data))
    }

    pub fn identity(n: usize) -> Self {
        Hermitian(identity(n))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    pub fn is_real(&self) -> bool {
        self.0.iter().all(|z| z.im.abs() <= 1e-14)
    }

    pub fn eigh(&self) -> Spectrum {
        eigh(self)
    }

    pub fn kron(&self, other: &Hermitian) -> Hermitian {
        Hermitian(kron(&self.0, &other.0))
    }

    pub fn scale(&self, s: f64) -> Hermitian {
        Hermitian(&self.0 * c(s, 0.0))
    }

    pub fn add(&self, other: &Hermitian) -> Hermitian {
        Hermitian(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &Hermitian) -> Hermitian {
        Hermitian(&self.0 - &other.0)
    }

    /// `K self K†`
    pub fn congruence(&self, k: &CMatrix) -> Hermitian {
        Hermitian::symmetrized(k * &self.0 * k.adjoint())
    }

    pub fn min_eigenvalue(&self) -> f64 {
        *self.eigh().values.last().unwrap_or(&0.0)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigh().values.first().unwrap_or(&0.0)
    }

    /// Largest absolute eigenvalue.
    pub fn operator_norm(&self) -> f64 {
        self.eigh().values.iter().fold(0.0, |a, v| a.max(v.abs()))
    }
}

impl Deref for Hermitian {
    type Target = CMatrix;
    fn deref(&self) -> &CMatrix {
        &self.0
    }
}

/// A (possibly sub-normalized) density operator.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator(Hermitian);

impl DensityOperator {
    /// Positive semidefinite with unit trace.
    pub fn new(h: Hermitian) -> Result<Self> {
        let t = h.trace();
        if (t - 1.0).abs() > 1e-8 {
            return Err(Error::InvalidParameter(format!("state has trace {t}")));
        }
        Self::subnormalized(h)
    }

    /// Positive semidefinite with trace at most one.
    pub fn subnormalized(h: Hermitian) -> Result<Self> {
        let lmin = h.min_eigenvalue();
        if lmin < -1e-9 {
            return Err(Error::NotPositive(lmin));
        }
        if h.trace() > 1.0 + 1e-8 {
            return Err(Error::InvalidParameter(format!("state has trace {}", h.trace())));
        }
        Ok(DensityOperator(h))
    }

    pub fn pure(v: &[Complex64]) -> Result<Self> {
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let unit: Vec<Complex64> = v.iter().map(|z| z / norm).collect();
        Self::new(Hermitian(projector(&unit)))
    }

    pub fn maximally_mixed(d: usize) -> Self {
        DensityOperator(Hermitian::identity(d).scale(1.0 / d as f64))
    }

    pub fn hermitian(&self) -> &Hermitian {
        &self.0
    }

    pub fn into_hermitian(self) -> Hermitian {
        self.0
    }
}

impl Deref for DensityOperator {
    type Target = Hermitian;
    fn deref(&self) -> &Hermitian {
        &self.0
    }
}

/// Eigen-decomposition with eigenvalues sorted in descending order.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl Spectrum {
    /// `V diag(f(λ)) V†`
    pub fn map(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for j in 0..n {
            let s = f(self.values[j]);
            for i in 0..n {
                scaled[(i, j)] *= s;
            }
        }
        &scaled * self.vectors.adjoint()
    }

    pub fn max(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    /// Eigenvalues counted as support under the pseudo-inverse cutoff.
    fn support_threshold(&self) -> f64 {
        PINV_CUTOFF * self.max().max(0.0)
    }

    pub fn rank(&self) -> usize {
        let cut = self.support_threshold();
        self.values.iter().filter(|&&v| v > cut && v > 0.0).count()
    }
}

pub fn eigh(h: &Hermitian) -> Spectrum {
    let n = h.dim();
    let eig = h.matrix().clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].partial_cmp(&eig.eigenvalues[a]).unwrap());
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    Spectrum { values, vectors }
}

fn check_positive(s: &Spectrum) -> Result<()> {
    let scale = s.max().abs().max(1.0);
    match s.values.last() {
        Some(&v) if v <= -CLIP * scale => Err(Error::NotPositive(v)),
        _ => Ok(()),
    }
}

/// Real power of a positive semidefinite matrix. Negative powers act as
/// pseudo-inverses on the support; near-zero negative eigenvalues are clipped.
pub fn power(h: &Hermitian, p: f64) -> Result<Hermitian> {
    let s = h.eigh();
    check_positive(&s)?;
    Ok(Hermitian::symmetrized(power_of(&s, p)))
}

fn power_of(s: &Spectrum, p: f64) -> CMatrix {
    let cut = s.support_threshold();
    s.map(|v| {
        if p > 0.0 {
            v.max(0.0).powf(p)
        } else if v > cut && v > 0.0 {
            v.powf(p)
        } else {
            0.0
        }
    })
}

pub fn sqrt(h: &Hermitian) -> Result<Hermitian> {
    power(h, 0.5)
}

/// Moore-Penrose inverse of a positive semidefinite matrix.
pub fn pinv(h: &Hermitian) -> Result<Hermitian> {
    power(h, -1.0)
}

/// Natural logarithm restricted to the support (`0 log 0 = 0` convention).
pub fn log_on_support(h: &Hermitian) -> Result<Hermitian> {
    let s = h.eigh();
    check_positive(&s)?;
    let cut = s.support_threshold();
    Ok(Hermitian::symmetrized(s.map(|v| if v > cut && v > 0.0 { v.ln() } else { 0.0 })))
}

/// Projector onto the span of eigenvectors above the pseudo-inverse cutoff.
pub fn support_projector(h: &Hermitian) -> Hermitian {
    let s = h.eigh();
    let cut = s.support_threshold();
    Hermitian::symmetrized(s.map(|v| if v > cut && v > 0.0 { 1.0 } else { 0.0 }))
}

/// Orthonormal basis (as columns) of the support; real whenever `h` is real.
pub fn support_basis(h: &Hermitian) -> CMatrix {
    let n = h.dim();
    let (values, vectors): (Vec<f64>, CMatrix) = if h.is_real() {
        let re = nalgebra::DMatrix::<f64>::from_fn(n, n, |i, j| h[(i, j)].re);
        let eig = re.symmetric_eigen();
        let v = CMatrix::from_fn(n, n, |i, j| c(eig.eigenvectors[(i, j)], 0.0));
        (eig.eigenvalues.iter().copied().collect(), v)
    } else {
        let eig = h.matrix().clone().symmetric_eigen();
        (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
    };
    let top = values.iter().fold(0.0f64, |a, &v| a.max(v));
    let keep: Vec<usize> = (0..n).filter(|&i| values[i] > PINV_CUTOFF * top && values[i] > 0.0).collect();
    if keep.len() == n {
        return identity(n);
    }
    CMatrix::from_fn(n, keep.len(), |i, j| vectors[(i, keep[j])])
}

/// Whether `supp(a) ⊆ supp(b)`, judged by `‖(I-Π_b) a (I-Π_b)‖∞ ≤ 1e-9`.
pub fn support_included(a: &Hermitian, b: &Hermitian) -> bool {
    let n = b.dim();
    let q = identity(n) - support_projector(b).into_matrix();
    let residual = Hermitian::symmetrized(&q * a.matrix() * &q);
    residual.operator_norm() <= SUPPORT_TOL
}

/// Weighted matrix geometric mean `X^{1/2} (X^{-1/2} Y X^{-1/2})^t X^{1/2}`.
///
/// For `t` in `[0,1]` the formula is evaluated as written with pseudo-inverses
/// on the support of `X`. Outside that range the equivalent form
/// `Y^{1/2} (Y^{-1/2} X Y^{-1/2})^{1-t} Y^{1/2}` is used, which needs only a
/// non-negative power of a positive matrix and requires `supp X ⊆ supp Y`.
pub fn weighted_geometric_mean(x: &Hermitian, y: &Hermitian, t: f64) -> Result<Hermitian> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch(format!(
            "geometric mean of {}x{} and {}x{}",
            x.dim(),
            x.dim(),
            y.dim(),
            y.dim()
        )));
    }
    let (base, other, exponent) = if (0.0..=1.0).contains(&t) {
        (x, y, t)
    } else {
        if !support_included(x, y) {
            return Err(Error::SupportViolation);
        }
        (y, x, 1.0 - t)
    };
    let s = base.eigh();
    check_positive(&s)?;
    let half = power_of(&s, 0.5);
    let inv_half = power_of(&s, -0.5);
    let inner = Hermitian::symmetrized(&inv_half * other.matrix() * &inv_half);
    let inner_pow = power(&inner, exponent)?;
    Ok(Hermitian::symmetrized(&half * inner_pow.matrix() * &half))
}

/// Partial trace over the listed subsystems.
pub fn partial_trace(m: &CMatrix, dims: &[usize], traced: &[usize]) -> Result<CMatrix> {
    check_dims(m, dims)?;
    let (k, map) = subsystems::partial_trace_map(dims, traced);
    let n = m.ncols();
    Ok(CMatrix::from_row_iterator(
        k,
        k,
        map.iter().map(|src| src.iter().map(|&p| m[(p / n, p % n)]).sum()),
    ))
}

/// Partial transpose on the listed subsystems.
pub fn partial_transpose(m: &CMatrix, dims: &[usize], systems: &[usize]) -> Result<CMatrix> {
    check_dims(m, dims)?;
    let n = m.ncols();
    let map = subsystems::transpose_map(dims, systems);
    Ok(CMatrix::from_row_iterator(n, n, map.iter().map(|&p| m[(p / n, p % n)])))
}

/// Reorders subsystems so that output subsystem `k` is input subsystem `perm[k]`.
pub fn permute_subsystems(m: &CMatrix, dims: &[usize], perm: &[usize]) -> Result<CMatrix> {
    check_dims(m, dims)?;
    let n = m.ncols();
    let map = subsystems::permute_map(dims, perm);
    Ok(CMatrix::from_row_iterator(n, n, map.iter().map(|&p| m[(p / n, p % n)])))
}

fn check_dims(m: &CMatrix, dims: &[usize]) -> Result<()> {
    let n = subsystems::total(dims);
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::DimensionMismatch(format!(
            "operator is {}x{} but subsystems {:?} multiply to {}",
            m.nrows(),
            m.ncols(),
            dims,
            n
        )));
    }
    Ok(())
}

/// Sum of singular values.
pub fn trace_norm(m: &CMatrix) -> f64 {
    m.clone().singular_values().iter().sum()
}

/// Largest singular value.
pub fn spectral_norm(m: &CMatrix) -> f64 {
    m.clone().singular_values().iter().fold(0.0, |a: f64, &v| a.max(v))
}
