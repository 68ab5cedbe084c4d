//! Interior-point backends for lowered programs.

use super::{Cone, LoweredProgram, SolveReport, SolveStatus, SolverSettings};
use crate::error::{Error, Result};
use clarabel::algebra::CscMatrix;
use clarabel::solver::{
    DefaultSettingsBuilder, DefaultSolver, IPSolver, NonnegativeConeT, PSDTriangleConeT,
    SolverStatus, SupportedConeT, ZeroConeT,
};

/// Acceptance thresholds for reporting a solve as optimal.
const OPTIMAL_GAP: f64 = 1e-6;
const OPTIMAL_RESIDUAL: f64 = 1e-7;

/// Primal point and report of a backend solve. The report objective is the
/// backend's own minimization objective.
#[derive(Clone, Debug)]
pub struct RawSolution {
    pub x: Vec<f64>,
    pub report: SolveReport,
}

pub trait Backend: Send + Sync {
    fn name(&self) -> &'static str;
    fn solve(&self, program: &LoweredProgram, settings: &SolverSettings) -> Result<RawSolution>;
}

/// The Clarabel interior-point solver.
#[derive(Clone, Copy, Debug, Default)]
pub struct ClarabelBackend;

impl Backend for ClarabelBackend {
    fn name(&self) -> &'static str {
        "clarabel"
    }

    fn solve(&self, program: &LoweredProgram, settings: &SolverSettings) -> Result<RawSolution> {
        let n = program.n_vars;
        let m = program.rows.len();
        let (mut ri, mut ci, mut vals) = (Vec::new(), Vec::new(), Vec::new());
        let mut b = Vec::with_capacity(m);
        for (i, row) in program.rows.iter().enumerate() {
            b.push(row.constant);
            for &(j, a) in &row.terms {
                ri.push(i);
                ci.push(j);
                vals.push(-a);
            }
        }
        let a = CscMatrix::new_from_triplets(m, n, ri, ci, vals);
        let p = CscMatrix::zeros((n, n));
        let cones: Vec<SupportedConeT<f64>> = program
            .cones
            .iter()
            .map(|c| match *c {
                Cone::Zero(k) => ZeroConeT(k),
                Cone::Nonnegative(k) => NonnegativeConeT(k),
                Cone::Psd(k) => PSDTriangleConeT(k),
            })
            .collect();
        let opts = DefaultSettingsBuilder::default()
            .verbose(settings.verbose)
            .tol_feas(settings.tol_feas)
            .tol_gap_abs(settings.tol_gap)
            .tol_gap_rel(settings.tol_gap)
            .max_iter(settings.max_iter)
            .max_threads(1)
            .chordal_decomposition_enable(settings.chordal)
            .direct_solve_method(settings.kkt.clone())
            .build()
            .map_err(|e| Error::Backend(e.to_string()))?;
        let mut solver = DefaultSolver::new(&p, &program.c, &a, &b, &cones, opts)
            .map_err(|e| Error::Backend(format!("{e:?}")))?;
        solver.solve();
        let info = &solver.info;
        let sol = &solver.solution;
        let status = match sol.status {
            SolverStatus::Solved | SolverStatus::AlmostSolved => {
                let gap_ok = info.gap_abs <= OPTIMAL_GAP || info.gap_rel <= OPTIMAL_GAP;
                if gap_ok && info.res_primal <= OPTIMAL_RESIDUAL && info.res_dual <= OPTIMAL_RESIDUAL {
                    SolveStatus::Optimal
                } else {
                    SolveStatus::Inaccurate
                }
            }
            SolverStatus::PrimalInfeasible | SolverStatus::AlmostPrimalInfeasible => SolveStatus::Infeasible,
            SolverStatus::DualInfeasible | SolverStatus::AlmostDualInfeasible => SolveStatus::Unbounded,
            _ => SolveStatus::Failed,
        };
        Ok(RawSolution {
            x: sol.x.clone(),
            report: SolveReport {
                status,
                objective: sol.obj_val,
                gap: info.gap_abs,
                primal_residual: info.res_primal,
                dual_residual: info.res_dual,
                iterations: info.iterations,
            },
        })
    }
}
