//! Conic programs over Hermitian matrix variables.
//!
//! Programs are assembled from affine matrix expressions in real scalar
//! variables and lowered to a real problem
//! `min cᵀx  s.t.  b - Ax ∈ {0}ⁿ × ℝ₊ᵐ × S₊ × … × S₊`.
//! A Hermitian constraint `E ⪰ 0` becomes the real symmetric constraint
//! `[[Re E, -Im E], [Im E, Re E]] ⪰ 0`; in [`Field::Real`] programs the
//! imaginary parts must vanish and only `Re E ⪰ 0` is imposed.

mod backend;
mod expr;

pub use backend::{Backend, ClarabelBackend, RawSolution};
pub use expr::{Affine, MatExpr, RealAffine};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, Hermitian};
use num_complex::Complex64;
use serde::Serialize;
use std::fmt::Write as _;

const REALNESS_TOL: f64 = 1e-12;

/// Number field of the matrix variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    /// Real whenever all the given data are real.
    pub fn for_data<'a>(data: impl IntoIterator<Item = &'a CMatrix>) -> Field {
        if data.into_iter().all(|m| m.iter().all(|z| z.im == 0.0)) {
            Field::Real
        } else {
            Field::Complex
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

/// A cone of the lowered real problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cone {
    Zero(usize),
    Nonnegative(usize),
    /// Real symmetric PSD cone of the given order, vectorized as the upper
    /// triangle in column-major order with off-diagonals scaled by `√2`.
    Psd(usize),
}

impl Cone {
    pub fn rows(&self) -> usize {
        match *self {
            Cone::Zero(n) | Cone::Nonnegative(n) => n,
            Cone::Psd(n) => n * (n + 1) / 2,
        }
    }
}

/// The real problem handed to a backend: `min cᵀx` s.t. `b - Ax ∈ K`.
#[derive(Clone, Debug)]
pub struct LoweredProgram {
    /// Sense of the original objective; `c` is already negated for maximization.
    pub sense: Sense,
    /// Constant term of the original objective.
    pub offset: f64,
    pub n_vars: usize,
    pub c: Vec<f64>,
    pub rows: Vec<RealAffine>,
    pub cones: Vec<Cone>,
}

impl LoweredProgram {
    /// Sparse triplet text format, see the crate README for the schema.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let nnz: usize = self.rows.iter().map(|r| r.terms.len()).sum();
        let _ = writeln!(out, "conic-program v1");
        let _ = writeln!(out, "variables {}", self.n_vars);
        let _ = writeln!(out, "rows {}", self.rows.len());
        let _ = writeln!(out, "nonzeros {nnz}");
        let sense = if self.sense == Sense::Minimize { "minimize" } else { "maximize" };
        let _ = writeln!(out, "sense {sense}");
        let _ = writeln!(out, "offset {:e}", self.offset);
        for cone in &self.cones {
            let _ = match cone {
                Cone::Zero(n) => writeln!(out, "cone zero {n}"),
                Cone::Nonnegative(n) => writeln!(out, "cone nonneg {n}"),
                Cone::Psd(n) => writeln!(out, "cone psd {n}"),
            };
        }
        for (j, v) in self.c.iter().enumerate() {
            if *v != 0.0 {
                let _ = writeln!(out, "c {j} {v:e}");
            }
        }
        for (i, r) in self.rows.iter().enumerate() {
            if r.constant != 0.0 {
                let _ = writeln!(out, "b {i} {:e}", r.constant);
            }
        }
        for (i, r) in self.rows.iter().enumerate() {
            for &(j, a) in &r.terms {
                let _ = writeln!(out, "A {i} {j} {:e}", -a);
            }
        }
        out
    }
}

/// Solver configuration shared by every bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolverSettings {
    pub backend: String,
    pub tol_feas: f64,
    pub tol_gap: f64,
    pub max_iter: u32,
    /// Weight of the identity mixed into fixed Choi inputs.
    pub regularization: f64,
    /// Sparse factorization used for the KKT system: `faer` or `qdldl`.
    pub kkt: String,
    /// Chordal decomposition of PSD constraints.
    pub chordal: bool,
    /// Print the backend's iteration log.
    pub verbose: bool,
    /// Write each lowered program to this file before solving.
    pub dump: Option<std::path::PathBuf>,
}

impl Default for SolverSettings {
    fn default() -> Self {
        SolverSettings {
            backend: "clarabel".into(),
            tol_feas: 1e-8,
            tol_gap: 1e-8,
            max_iter: 400,
            regularization: 0.0,
            kkt: "faer".into(),
            chordal: true,
            verbose: false,
            dump: None,
        }
    }
}

pub const ENV_BACKEND: &str = "GEORENYI_BACKEND";
pub const ENV_TOL_FEAS: &str = "GEORENYI_TOL_FEAS";
pub const ENV_TOL_GAP: &str = "GEORENYI_TOL_GAP";
pub const ENV_MAX_ITER: &str = "GEORENYI_MAX_ITER";
pub const ENV_KKT: &str = "GEORENYI_KKT";
pub const ENV_CHORDAL: &str = "GEORENYI_CHORDAL";
pub const ENV_VERBOSE: &str = "GEORENYI_VERBOSE";

impl SolverSettings {
    /// Defaults overridden by `GEORENYI_*` environment variables.
    pub fn from_env() -> Result<Self> {
        let mut s = Self::default();
        for (key, var) in [
            ("backend", ENV_BACKEND),
            ("tol_feas", ENV_TOL_FEAS),
            ("tol_gap", ENV_TOL_GAP),
            ("max_iter", ENV_MAX_ITER),
            ("kkt", ENV_KKT),
            ("chordal", ENV_CHORDAL),
            ("verbose", ENV_VERBOSE),
        ] {
            if let Ok(v) = std::env::var(var) {
                s.set(key, &v)?;
            }
        }
        Ok(s)
    }

    /// Sets one option by its config-file key.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |e: &dyn std::fmt::Display| Error::Config(format!("{key} = {value}: {e}"));
        match key {
            "backend" => self.backend = value.trim().to_string(),
            "tol_feas" => self.tol_feas = value.trim().parse().map_err(|e| bad(&e))?,
            "tol_gap" => self.tol_gap = value.trim().parse().map_err(|e| bad(&e))?,
            "max_iter" => self.max_iter = value.trim().parse().map_err(|e| bad(&e))?,
            "regularization" => self.regularization = value.trim().parse().map_err(|e| bad(&e))?,
            "kkt" => match value.trim() {
                v @ ("faer" | "qdldl") => self.kkt = v.to_string(),
                _ => return Err(bad(&"expected faer or qdldl")),
            },
            "chordal" => self.chordal = value.trim().parse().map_err(|e| bad(&e))?,
            "verbose" => self.verbose = value.trim().parse().map_err(|e| bad(&e))?,
            _ => return Err(Error::Config(format!("unknown solver option '{key}'"))),
        }
        Ok(())
    }

    pub fn backend(&self) -> Result<Box<dyn Backend>> {
        match self.backend.as_str() {
            "clarabel" => Ok(Box::new(ClarabelBackend)),
            other => Err(Error::Config(format!("unknown backend '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolveStatus {
    Optimal,
    Inaccurate,
    Infeasible,
    Unbounded,
    Failed,
}

impl std::fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SolveStatus::Optimal => "optimal",
            SolveStatus::Inaccurate => "inaccurate",
            SolveStatus::Infeasible => "infeasible",
            SolveStatus::Unbounded => "unbounded",
            SolveStatus::Failed => "failed",
        };
        f.write_str(s)
    }
}

/// Outcome of a solve, with the objective in the caller's sense.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveReport {
    pub status: SolveStatus,
    pub objective: f64,
    pub gap: f64,
    pub primal_residual: f64,
    pub dual_residual: f64,
    pub iterations: u32,
}

impl SolveReport {
    pub fn is_optimal(&self) -> bool {
        self.status == SolveStatus::Optimal
    }
}

/// Primal solution of a program.
#[derive(Clone, Debug)]
pub struct Solution {
    pub report: SolveReport,
    x: Vec<f64>,
}

impl Solution {
    pub fn value(&self, a: &Affine) -> f64 {
        a.eval(&self.x).re
    }

    pub fn matrix(&self, e: &MatExpr) -> CMatrix {
        e.eval(&self.x)
    }

    pub fn hermitian(&self, e: &MatExpr) -> Hermitian {
        Hermitian::symmetrized(e.eval(&self.x))
    }

    pub fn raw(&self) -> &[f64] {
        &self.x
    }
}

/// A conic program under construction.
#[derive(Clone, Debug)]
pub struct Program {
    field: Field,
    n_vars: usize,
    objective: Option<(Sense, Affine)>,
    zero: Vec<RealAffine>,
    nonneg: Vec<RealAffine>,
    psd: Vec<(usize, Vec<RealAffine>)>,
    defect: Option<String>,
}

impl Program {
    pub fn new(field: Field) -> Self {
        Program {
            field,
            n_vars: 0,
            objective: None,
            zero: Vec::new(),
            nonneg: Vec::new(),
            psd: Vec::new(),
            defect: None,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    fn fresh(&mut self) -> usize {
        self.n_vars += 1;
        self.n_vars - 1
    }

    /// A real scalar variable.
    pub fn scalar(&mut self) -> Affine {
        let i = self.fresh();
        Affine::var(i, Complex64::new(1.0, 0.0))
    }

    /// A Hermitian (real symmetric in [`Field::Real`]) matrix variable.
    pub fn hermitian(&mut self, n: usize) -> MatExpr {
        let mut m = MatExpr::zeros(n, n).entries().to_vec();
        for i in 0..n {
            m[i * n + i] = self.scalar();
            for j in i + 1..n {
                let mut e = self.scalar();
                if self.field == Field::Complex {
                    let im = self.fresh();
                    e.terms.push((im, Complex64::new(0.0, 1.0)));
                }
                m[j * n + i] = e.conj();
                m[i * n + j] = e;
            }
        }
        MatExpr::from_entries(n, n, m)
    }

    /// An unstructured matrix variable.
    pub fn general(&mut self, rows: usize, cols: usize) -> MatExpr {
        let data = (0..rows * cols)
            .map(|_| {
                let mut e = self.scalar();
                if self.field == Field::Complex {
                    let im = self.fresh();
                    e.terms.push((im, Complex64::new(0.0, 1.0)));
                }
                e
            })
            .collect();
        MatExpr::from_entries(rows, cols, data)
    }

    fn flag(&mut self, msg: String) {
        if self.defect.is_none() {
            self.defect = Some(msg);
        }
    }

    fn real_part(&mut self, a: &Affine, what: &str) -> RealAffine {
        if a.max_imag() > REALNESS_TOL {
            self.flag(format!("{what} has imaginary part {:.3e}", a.max_imag()));
        }
        a.re()
    }

    /// `E ⪰ 0` for a Hermitian expression `E`.
    pub fn psd(&mut self, e: &MatExpr) {
        if !e.is_square() {
            self.flag(format!("PSD constraint on a {}x{} expression", e.rows(), e.cols()));
            return;
        }
        let defect = e.hermitian_defect();
        if defect > REALNESS_TOL * 1e3 {
            self.flag(format!("PSD constraint on a non-Hermitian expression (defect {defect:.3e})"));
        }
        let n = e.rows();
        match self.field {
            Field::Real => {
                let mut rows = Vec::with_capacity(n * (n + 1) / 2);
                for j in 0..n {
                    for i in 0..=j {
                        let r = self.real_part(e.get(i, j), "real PSD entry");
                        rows.push(if i == j { r } else { r.scale(std::f64::consts::SQRT_2) });
                    }
                }
                self.psd.push((n, rows));
            }
            Field::Complex => {
                let m = 2 * n;
                let mut rows = Vec::with_capacity(m * (m + 1) / 2);
                for j in 0..m {
                    for i in 0..=j {
                        let r = match (i < n, j < n) {
                            (true, true) => e.get(i, j).re(),
                            (true, false) => e.get(i, j - n).im().scale(-1.0),
                            (false, false) => e.get(i - n, j - n).re(),
                            (false, true) => unreachable!("upper triangle only"),
                        };
                        rows.push(if i == j { r } else { r.scale(std::f64::consts::SQRT_2) });
                    }
                }
                self.psd.push((m, rows));
            }
        }
    }

    /// `a ≥ 0` for a real-valued scalar expression.
    pub fn nonneg(&mut self, a: &Affine) {
        let r = self.real_part(a, "scalar inequality");
        self.nonneg.push(r);
    }

    /// `a = 0` for a real-valued scalar expression.
    pub fn zero(&mut self, a: &Affine) {
        let r = self.real_part(a, "scalar equality");
        self.zero.push(r);
    }

    /// `E = 0` for a Hermitian expression, imposed on the upper triangle.
    pub fn zero_hermitian(&mut self, e: &MatExpr) {
        let n = e.rows();
        for i in 0..n {
            for j in i..n {
                let a = e.get(i, j);
                self.zero.push(a.re());
                if i != j {
                    match self.field {
                        Field::Complex => self.zero.push(a.im()),
                        Field::Real => {
                            let _ = self.real_part(a, "real matrix equality");
                        }
                    }
                }
            }
        }
    }

    pub fn minimize(&mut self, a: &Affine) {
        self.objective = Some((Sense::Minimize, a.clone()));
    }

    pub fn maximize(&mut self, a: &Affine) {
        self.objective = Some((Sense::Maximize, a.clone()));
    }

    /// Adds `[[M, X], [X, N_ℓ]] ⪰ 0` and `[[X, N_i], [N_i, N_{i-1}]] ⪰ 0` for
    /// `i = 1..ℓ` with fresh Hermitian `N_1..N_ℓ` and `N_0 = y`. Feasibility is
    /// equivalent to `M ⪰ G_{-2^{-ℓ}}(X, Y)`.
    pub fn geometric_mean_epigraph(&mut self, m: &MatExpr, x: &MatExpr, y: &MatExpr, level: u32) {
        let n = x.rows();
        let mut prev = y.clone();
        for _ in 0..level {
            let next = self.hermitian(n);
            self.psd(&MatExpr::block(x, &next, &next, &prev));
            prev = next;
        }
        self.psd(&MatExpr::block(m, x, x, &prev));
    }

    /// Returns an expression `M` ranging over all `M ⪰ G_{-2^{-ℓ}}(X, Y)` for a
    /// fixed positive semidefinite `X`.
    ///
    /// The epigraph chain is restricted to the support of `X`, where every
    /// `N_1..N_ℓ` and the minimal `M` live; with `X = V X' V†` the links read
    /// `[[M', X'], [X', N_ℓ']]`, `[[X', N_i'], [N_i', N_{i-1}']]` and
    /// `[[X', N_1' V†], [V N_1', Y]]`. This keeps the program strictly
    /// feasible when `X` is singular.
    pub fn geometric_mean_upper(&mut self, x: &Hermitian, y: &MatExpr, level: u32) -> MatExpr {
        let v = crate::linalg::support_basis(x);
        let r = v.ncols();
        let vt = v.adjoint();
        let xr = MatExpr::constant(&(&vt * x.matrix() * &v));
        let m = self.hermitian(r);
        let mut prev: Option<MatExpr> = None;
        for _ in 0..level {
            let next = self.hermitian(r);
            match &prev {
                None => {
                    let left = next.sandwich(&CMatrix::identity(r, r), &vt);
                    self.psd(&MatExpr::block(&xr, &left, &left.adjoint(), y));
                }
                Some(p) => self.psd(&MatExpr::block(&xr, &next, &next, p)),
            }
            prev = Some(next);
        }
        match &prev {
            Some(p) => self.psd(&MatExpr::block(&m, &xr, &xr, p)),
            None => {
                let xv = xr.sandwich(&CMatrix::identity(r, r), &vt);
                self.psd(&MatExpr::block(&m, &xv, &xv.adjoint(), y));
            }
        }
        m.sandwich(&v, &vt)
    }

    /// Lowers to the real problem handed to a backend.
    pub fn lower(&self) -> Result<LoweredProgram> {
        if let Some(msg) = &self.defect {
            return Err(Error::Backend(format!("malformed program: {msg}")));
        }
        let (sense, obj) = self
            .objective
            .as_ref()
            .ok_or_else(|| Error::Backend("program has no objective".into()))?;
        if obj.max_imag() > REALNESS_TOL {
            return Err(Error::Backend("objective is not real".into()));
        }
        let sign = if *sense == Sense::Minimize { 1.0 } else { -1.0 };
        let mut c = vec![0.0; self.n_vars];
        for &(i, a) in &obj.terms {
            c[i] += sign * a.re;
        }
        let mut rows = Vec::new();
        let mut cones = Vec::new();
        if !self.zero.is_empty() {
            cones.push(Cone::Zero(self.zero.len()));
            rows.extend(self.zero.iter().cloned());
        }
        if !self.nonneg.is_empty() {
            cones.push(Cone::Nonnegative(self.nonneg.len()));
            rows.extend(self.nonneg.iter().cloned());
        }
        for (n, r) in &self.psd {
            cones.push(Cone::Psd(*n));
            rows.extend(r.iter().cloned());
        }
        Ok(LoweredProgram { sense: *sense, offset: obj.constant.re, n_vars: self.n_vars, c, rows, cones })
    }

    pub fn solve(&self, settings: &SolverSettings) -> Result<Solution> {
        let lowered = self.lower()?;
        if let Some(path) = &settings.dump {
            std::fs::write(path, lowered.to_text())?;
        }
        let raw = settings.backend()?.solve(&lowered, settings)?;
        let (_, obj) = self.objective.as_ref().expect("lowered program has an objective");
        let value = obj.eval(&raw.x).re;
        let report = SolveReport { objective: value, ..raw.report };
        Ok(Solution { report, x: raw.x })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{self, c};

    #[test]
    fn scalar_lmi() {
        let mut p = Program::new(Field::Real);
        let t = p.scalar();
        let m = MatExpr::from_entries(2, 2, vec![t.clone(), Affine::real(1.0), Affine::real(1.0), Affine::real(1.0)]);
        p.psd(&m);
        p.minimize(&t);
        let s = p.solve(&SolverSettings::default()).unwrap();
        assert!(s.report.is_optimal());
        assert!((s.report.objective - 1.0).abs() < 1e-7);
    }

    #[test]
    fn complex_lowering_recovers_hermitian_solution() {
        // max Re tr(H X) over density matrices X is the top eigenvalue of H
        let h = Hermitian::new(CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 2.0), c(0.0, -2.0), c(-1.0, 0.0)])).unwrap();
        let mut p = Program::new(Field::Complex);
        let x = p.hermitian(2);
        p.psd(&x);
        p.zero(&x.trace().sub(&Affine::real(1.0)));
        p.maximize(&x.inner(h.matrix()));
        let s = p.solve(&SolverSettings::default()).unwrap();
        assert!((s.report.objective - 5f64.sqrt()).abs() < 1e-7);
        let xv = s.matrix(&x);
        assert!(linalg::max_abs(&(&xv - xv.adjoint())) < 1e-12);
        // the real embedding carries each eigenvalue twice
        let embedded = CMatrix::from_fn(4, 4, |i, j| {
            let e = xv[(i % 2, j % 2)];
            match (i < 2, j < 2) {
                (true, true) | (false, false) => c(e.re, 0.0),
                (true, false) => c(-e.im, 0.0),
                (false, true) => c(e.im, 0.0),
            }
        });
        assert!((embedded.trace().re - 2.0 * xv.trace().re).abs() < 1e-12);
    }

    #[test]
    fn real_program_rejects_complex_data() {
        let mut p = Program::new(Field::Real);
        let x = p.hermitian(2);
        let k = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(0.0, 0.0)]);
        p.psd(&x.add_const(&k));
        p.minimize(&x.trace());
        assert!(p.solve(&SolverSettings::default()).is_err());
    }

    #[test]
    fn settings_parse_and_reject() {
        let mut s = SolverSettings::default();
        s.set("tol_gap", "1e-9").unwrap();
        assert_eq!(s.tol_gap, 1e-9);
        assert!(s.set("nonsense", "1").is_err());
        s.set("backend", "mosek").unwrap();
        assert!(s.backend().is_err());
    }

    #[test]
    fn dump_lists_cones_and_triplets() {
        let mut p = Program::new(Field::Real);
        let t = p.scalar();
        p.nonneg(&t.sub(&Affine::real(2.0)));
        p.minimize(&t);
        let text = p.lower().unwrap().to_text();
        assert!(text.contains("cone nonneg 1"));
        assert!(text.contains("A 0 0 -1e0"));
        assert!(text.contains("b 0 -2e0"));
    }
}
