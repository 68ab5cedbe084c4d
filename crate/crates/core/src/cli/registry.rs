//! Names of the quantities exposed on the command line.

use super::spec::Target;
use crate::bounds::{self, BoundKind, BoundResult};
use crate::conic::{SolveReport, SolveStatus, SolverSettings};
use crate::error::{Error, Result};
use crate::magic;
use serde::Serialize;

/// A command-line quantity: a solver-backed bound or the closed-form mana.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    Bound(BoundKind),
    Mana,
}

/// Every accepted name with its quantity, in help order.
pub const QUANTITIES: &[(&str, Quantity)] = &[
    ("holevo-werner", Quantity::Bound(BoundKind::HolevoWerner)),
    ("max-rains", Quantity::Bound(BoundKind::MaxRains)),
    ("max-rains-theta", Quantity::Bound(BoundKind::MaxRainsTheta)),
    ("rains-geometric", Quantity::Bound(BoundKind::RainsGeometric)),
    ("rains-theta-geometric", Quantity::Bound(BoundKind::RainsThetaGeometric)),
    ("e-max", Quantity::Bound(BoundKind::EMax)),
    ("e-max-sigma", Quantity::Bound(BoundKind::EMaxSigma)),
    ("e-alpha", Quantity::Bound(BoundKind::EAlpha)),
    ("e-alpha-sigma", Quantity::Bound(BoundKind::EAlphaSigma)),
    ("c-beta", Quantity::Bound(BoundKind::CBeta)),
    ("c-zeta", Quantity::Bound(BoundKind::CZeta)),
    ("upsilon-max", Quantity::Bound(BoundKind::UpsilonMax)),
    ("upsilon-geometric", Quantity::Bound(BoundKind::UpsilonGeometric)),
    ("bi-holevo-werner", Quantity::Bound(BoundKind::BiHolevoWerner)),
    ("bi-max-rains", Quantity::Bound(BoundKind::BiMaxRains)),
    ("bi-theta-geometric", Quantity::Bound(BoundKind::BiThetaGeometric)),
    ("mana", Quantity::Mana),
    ("thauma-max", Quantity::Bound(BoundKind::ThaumaMax)),
    ("thauma-geometric", Quantity::Bound(BoundKind::ThaumaGeometric)),
];

pub fn lookup(name: &str) -> Result<Quantity> {
    QUANTITIES.iter().find(|(n, _)| *n == name).map(|&(_, q)| q).ok_or_else(|| {
        let names: Vec<&str> = QUANTITIES.iter().map(|(n, _)| *n).collect();
        Error::Config(format!("unknown bound '{name}'; expected one of {}", names.join(", ")))
    })
}

/// Outcome of evaluating one quantity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Evaluation {
    pub bound: String,
    pub bits: f64,
    /// `optimal`, `inaccurate`, `infeasible`, `unbounded`, `failed`, `exact`, or `error`.
    pub status: String,
    pub level: Option<u32>,
    pub report: Option<SolveReport>,
    pub error: Option<String>,
    /// Process exit code this cell implies.
    #[serde(skip)]
    pub exit_code: i32,
}

impl Evaluation {
    fn from_bound(name: &str, r: BoundResult) -> Self {
        Evaluation {
            bound: name.to_string(),
            bits: r.bits,
            status: r.report.status.to_string(),
            level: r.level,
            exit_code: if r.report.status == SolveStatus::Optimal { super::EXIT_OK } else { super::EXIT_SOLVER },
            report: Some(r.report),
            error: None,
        }
    }

    pub fn from_error(name: &str, e: &Error) -> Self {
        Evaluation {
            bound: name.to_string(),
            bits: f64::NAN,
            status: "error".into(),
            level: None,
            report: None,
            error: Some(e.to_string()),
            exit_code: super::exit_code(e),
        }
    }

}

fn single<'a>(name: &str, target: &'a Target) -> Result<&'a crate::channels::Channel> {
    match target {
        Target::Single(c) => Ok(c),
        Target::Bipartite(_) => {
            Err(Error::InvalidParameter(format!("{name} takes an ordinary channel, not a bipartite one")))
        }
    }
}

pub fn evaluate(name: &str, target: &Target, level: u32, settings: &SolverSettings) -> Result<Evaluation> {
    use BoundKind::*;
    let kind = match lookup(name)? {
        Quantity::Mana => {
            let bits = magic::mana_channel(single(name, target)?)?;
            return Ok(Evaluation {
                bound: name.to_string(),
                bits,
                status: "exact".into(),
                level: None,
                report: None,
                error: None,
                exit_code: super::EXIT_OK,
            });
        }
        Quantity::Bound(k) => k,
    };
    let s = settings;
    let result = match kind {
        BiHolevoWerner | BiMaxRains | BiThetaGeometric => {
            let Target::Bipartite(b) = target else {
                return Err(Error::InvalidParameter(format!("{name} needs a bipartite channel such as kind=swap_dephase")));
            };
            match kind {
                BiHolevoWerner => bounds::bi_holevo_werner(b, s)?,
                BiMaxRains => bounds::bi_max_rains(b, s)?,
                _ => bounds::bi_theta_geometric(b, level, s)?,
            }
        }
        _ => {
            let n = single(name, target)?;
            match kind {
                HolevoWerner => bounds::holevo_werner(n, s)?,
                MaxRains => bounds::max_rains(n, s)?,
                MaxRainsTheta => bounds::max_rains_theta(n, s)?,
                RainsGeometric => bounds::rains_geometric(n, level, s)?,
                RainsThetaGeometric => bounds::rains_theta_geometric(n, level, s)?,
                EMax => bounds::e_max(n, s)?,
                EMaxSigma => bounds::e_max_sigma(n, s)?,
                EAlpha => bounds::e_alpha(n, level, s)?,
                EAlphaSigma => bounds::e_alpha_sigma(n, level, s)?,
                CBeta => bounds::c_beta(n, s)?,
                CZeta => bounds::c_zeta(n, s)?,
                UpsilonMax => bounds::upsilon_max(n, s)?,
                UpsilonGeometric => bounds::upsilon_geometric(n, level, s)?,
                ThaumaMax => magic::thauma_max(n, s)?,
                ThaumaGeometric => magic::thauma_geometric(n, level, s)?,
                other => return Err(Error::Config(format!("{other:?} is not a channel bound"))),
            }
        }
    };
    Ok(Evaluation::from_bound(name, result))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_match_kinds() {
        for (i, (name, q)) in QUANTITIES.iter().enumerate() {
            assert!(QUANTITIES[..i].iter().all(|(n, other)| n != name && other != q), "{name}");
            if let Quantity::Bound(k) = q {
                assert_eq!(serde_json::to_value(k).unwrap(), serde_json::json!(name));
            }
        }
        assert!(lookup("nonsense").is_err());
    }
}
