//! Affine expressions in real scalar variables with complex coefficients.

use crate::linalg::{subsystems, CMatrix};
use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `constant + Σ coeff·x_var` with real decision variables.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Affine {
    pub constant: Complex64,
    pub terms: Vec<(usize, Complex64)>,
}

impl Affine {
    pub fn constant(v: Complex64) -> Self {
        Affine { constant: v, terms: Vec::new() }
    }

    pub fn real(v: f64) -> Self {
        Self::constant(Complex64::new(v, 0.0))
    }

    pub fn var(index: usize, coeff: Complex64) -> Self {
        Affine { constant: ZERO, terms: vec![(index, coeff)] }
    }

    pub fn is_zero(&self) -> bool {
        self.constant == ZERO && self.terms.is_empty()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        if s == ZERO {
            return Affine::default();
        }
        Affine {
            constant: self.constant * s,
            terms: self.terms.iter().map(|&(i, a)| (i, a * s)).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn conj(&self) -> Self {
        Affine {
            constant: self.constant.conj(),
            terms: self.terms.iter().map(|&(i, a)| (i, a.conj())).collect(),
        }
    }

    pub fn add(&self, other: &Affine) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        terms.extend_from_slice(&self.terms);
        terms.extend_from_slice(&other.terms);
        Affine { constant: self.constant + other.constant, terms }.normalized()
    }

    pub fn sub(&self, other: &Affine) -> Self {
        self.add(&other.scale_real(-1.0))
    }

    /// Sum of many expressions with a single normalization pass.
    pub fn sum<'a>(items: impl IntoIterator<Item = &'a Affine>) -> Self {
        let mut out = Affine::default();
        for a in items {
            out.constant += a.constant;
            out.terms.extend_from_slice(&a.terms);
        }
        out.normalized()
    }

    /// Sorts terms by variable and merges duplicates.
    pub fn normalized(mut self) -> Self {
        self.terms.sort_by_key(|t| t.0);
        let mut merged: Vec<(usize, Complex64)> = Vec::with_capacity(self.terms.len());
        for (i, a) in self.terms {
            match merged.last_mut() {
                Some(last) if last.0 == i => last.1 += a,
                _ => merged.push((i, a)),
            }
        }
        merged.retain(|t| t.1 != ZERO);
        self.terms = merged;
        self
    }

    pub fn re(&self) -> RealAffine {
        RealAffine {
            constant: self.constant.re,
            terms: self.terms.iter().filter(|t| t.1.re != 0.0).map(|&(i, a)| (i, a.re)).collect(),
        }
    }

    pub fn im(&self) -> RealAffine {
        RealAffine {
            constant: self.constant.im,
            terms: self.terms.iter().filter(|t| t.1.im != 0.0).map(|&(i, a)| (i, a.im)).collect(),
        }
    }

    /// Largest imaginary part among the constant and coefficients.
    pub fn max_imag(&self) -> f64 {
        self.terms.iter().fold(self.constant.im.abs(), |m, t| m.max(t.1.im.abs()))
    }

    pub fn eval(&self, x: &[f64]) -> Complex64 {
        self.terms.iter().fold(self.constant, |acc, &(i, a)| acc + a * x[i])
    }
}

/// A real affine row of the lowered program.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RealAffine {
    pub constant: f64,
    pub terms: Vec<(usize, f64)>,
}

impl RealAffine {
    pub fn scale(&self, s: f64) -> Self {
        RealAffine {
            constant: self.constant * s,
            terms: self.terms.iter().map(|&(i, a)| (i, a * s)).collect(),
        }
    }
}

/// A matrix whose entries are affine expressions, stored row major.
#[derive(Clone, Debug, PartialEq)]
pub struct MatExpr {
    rows: usize,
    cols: usize,
    data: Vec<Affine>,
}

impl MatExpr {
    pub fn from_entries(rows: usize, cols: usize, data: Vec<Affine>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        MatExpr { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_entries(rows, cols, vec![Affine::default(); rows * cols])
    }

    pub fn constant(m: &CMatrix) -> Self {
        let (rows, cols) = m.shape();
        let data = (0..rows * cols)
            .map(|k| Affine::constant(m[(k / cols, k % cols)]))
            .collect();
        Self::from_entries(rows, cols, data)
    }

    pub fn identity(n: usize) -> Self {
        Self::constant(&CMatrix::identity(n, n))
    }

    /// `s · I_n` for a scalar expression `s`.
    pub fn scalar_identity(s: &Affine, n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = s.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Affine {
        &self.data[r * self.cols + c]
    }

    pub fn entries(&self) -> &[Affine] {
        &self.data
    }

    fn zip(&self, other: &MatExpr, f: impl Fn(&Affine, &Affine) -> Affine) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Self::from_entries(self.rows, self.cols, data)
    }

    pub fn add(&self, other: &MatExpr) -> Self {
        self.zip(other, Affine::add)
    }

    pub fn sub(&self, other: &MatExpr) -> Self {
        self.zip(other, Affine::sub)
    }

    pub fn add_const(&self, m: &CMatrix) -> Self {
        self.add(&Self::constant(m))
    }

    pub fn scale(&self, s: f64) -> Self {
        let data = self.data.iter().map(|a| a.scale_real(s)).collect();
        Self::from_entries(self.rows, self.cols, data)
    }

    pub fn neg(&self) -> Self {
        self.scale(-1.0)
    }

    pub fn adjoint(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for r in 0..self.cols {
            for c in 0..self.rows {
                data.push(self.get(c, r).conj());
            }
        }
        Self::from_entries(self.cols, self.rows, data)
    }

    /// `X + X†`
    pub fn hermitian_part2(&self) -> Self {
        self.add(&self.adjoint())
    }

    pub fn trace(&self) -> Affine {
        Affine::sum((0..self.rows.min(self.cols)).map(|i| self.get(i, i)))
    }

    /// `tr(self · h)` for a constant matrix `h`.
    pub fn inner(&self, h: &CMatrix) -> Affine {
        let mut out = Affine::default();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let w = h[(c, r)];
                if w.norm() != 0.0 {
                    let e = self.get(r, c);
                    out.constant += e.constant * w;
                    out.terms.extend(e.terms.iter().map(|&(i, a)| (i, a * w)));
                }
            }
        }
        out.normalized()
    }

    /// `a · self · b` for constant matrices `a` and `b`.
    pub fn sandwich(&self, a: &CMatrix, b: &CMatrix) -> Self {
        assert_eq!(a.ncols(), self.rows, "left factor shape mismatch");
        assert_eq!(b.nrows(), self.cols, "right factor shape mismatch");
        let (rows, cols) = (a.nrows(), b.ncols());
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let mut acc = Affine::default();
                for i in 0..self.rows {
                    let wa = a[(r, i)];
                    if wa.norm() == 0.0 {
                        continue;
                    }
                    for j in 0..self.cols {
                        let w = wa * b[(j, c)];
                        if w.norm() == 0.0 {
                            continue;
                        }
                        let e = self.get(i, j);
                        acc.constant += e.constant * w;
                        acc.terms.extend(e.terms.iter().map(|&(k, x)| (k, x * w)));
                    }
                }
                data.push(acc.normalized());
            }
        }
        Self::from_entries(rows, cols, data)
    }

    /// `I_d ⊗ self`
    pub fn kron_identity_left(&self, d: usize) -> Self {
        let (r, c) = (self.rows, self.cols);
        let mut out = Self::zeros(d * r, d * c);
        for k in 0..d {
            for i in 0..r {
                for j in 0..c {
                    out.data[(k * r + i) * d * c + k * c + j] = self.get(i, j).clone();
                }
            }
        }
        out
    }

    /// `self ⊗ I_d`
    pub fn kron_identity_right(&self, d: usize) -> Self {
        let (r, c) = (self.rows, self.cols);
        let mut out = Self::zeros(r * d, c * d);
        for i in 0..r {
            for j in 0..c {
                for k in 0..d {
                    out.data[(i * d + k) * c * d + j * d + k] = self.get(i, j).clone();
                }
            }
        }
        out
    }

    fn remap(&self, map: &[usize]) -> Self {
        let data = map.iter().map(|&p| self.data[p].clone()).collect();
        Self::from_entries(self.rows, self.cols, data)
    }

    pub fn partial_transpose(&self, dims: &[usize], systems: &[usize]) -> Self {
        assert_eq!(subsystems::total(dims), self.rows, "subsystem dimensions do not match");
        self.remap(&subsystems::transpose_map(dims, systems))
    }

    pub fn permute_subsystems(&self, dims: &[usize], perm: &[usize]) -> Self {
        assert_eq!(subsystems::total(dims), self.rows, "subsystem dimensions do not match");
        self.remap(&subsystems::permute_map(dims, perm))
    }

    pub fn partial_trace(&self, dims: &[usize], traced: &[usize]) -> Self {
        assert_eq!(subsystems::total(dims), self.rows, "subsystem dimensions do not match");
        let (m, map) = subsystems::partial_trace_map(dims, traced);
        let data = map
            .iter()
            .map(|src| Affine::sum(src.iter().map(|&p| &self.data[p])))
            .collect();
        Self::from_entries(m, m, data)
    }

    /// `[[a, b], [c, d]]`
    pub fn block(a: &MatExpr, b: &MatExpr, c: &MatExpr, d: &MatExpr) -> Self {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let rows = a.rows + c.rows;
        let cols = a.cols + b.cols;
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for col in 0..cols {
                let e = match (r < a.rows, col < a.cols) {
                    (true, true) => a.get(r, col),
                    (true, false) => b.get(r, col - a.cols),
                    (false, true) => c.get(r - a.rows, col),
                    (false, false) => d.get(r - a.rows, col - a.cols),
                };
                data.push(e.clone());
            }
        }
        Self::from_entries(rows, cols, data)
    }

    /// Largest deviation from `E = E†` over coefficients and constants.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..self.rows {
            for c in r..self.cols {
                let d = self.get(r, c).sub(&self.get(c, r).conj());
                worst = worst.max(d.constant.norm());
                for t in &d.terms {
                    worst = worst.max(t.1.norm());
                }
            }
        }
        worst
    }

    pub fn eval(&self, x: &[f64]) -> CMatrix {
        CMatrix::from_row_iterator(self.rows, self.cols, self.data.iter().map(|a| a.eval(x)))
    }
}
