//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Failures are reported but do not fail the process unless
//! `GEORENYI_ACCEPTANCE_STRICT=1` is set, so known failures stay visible
//! without breaking the regular test run.

mod common;

use common::*;
use georenyi::bounds::*;
use georenyi::channels::{BipartiteChannel, Channel};
use georenyi::conic::{Field, MatExpr, Program, SolveStatus, SolverSettings};
use georenyi::divergences::*;
use georenyi::linalg::weighted_geometric_mean;
use georenyi::magic::*;
use std::f64::consts::PI;
use std::time::Instant;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn s() -> SolverSettings {
    SolverSettings::default()
}

fn bits(r: georenyi::Result<BoundResult>) -> f64 {
    match r {
        Ok(b) if matches!(b.status(), SolveStatus::Optimal | SolveStatus::Inaccurate) => b.bits,
        _ => f64::NAN,
    }
}

fn finite(d: georenyi::Result<Divergence>) -> f64 {
    d.ok().and_then(|d| d.finite()).unwrap_or(f64::NAN)
}

fn worst(errors: impl IntoIterator<Item = f64>) -> f64 {
    errors.into_iter().fold(0.0, |m, e| if e.is_nan() { f64::INFINITY } else { m.max(e) })
}

fn gad_analytic() -> Outcome {
    let mut err = Vec::new();
    for g in 1..=9 {
        let gamma = g as f64 / 10.0;
        for n in [0.0, 0.3, 0.5] {
            let ch = Channel::generalized_amplitude_damping(gamma, n).unwrap();
            let expect = (1.0 + (1.0 - gamma).sqrt()).log2();
            err.push((bits(c_beta(&ch, &s())) - expect).abs());
            err.push((bits(c_zeta(&ch, &s())) - expect).abs());
        }
    }
    let e = worst(err);
    outcome(e <= 1e-6, format!("max |error| {e:.2e} over 27 channels"))
}

fn erasure_upsilon() -> Outcome {
    let cells: Vec<(f64, f64)> = [0.0, 0.25, 0.5, 0.75, 1.0]
        .iter()
        .map(|&p| (p, bits(upsilon_geometric(&Channel::erasure(2, p).unwrap(), 5, &s())) - (1.0 - p)))
        .collect();
    let e = worst(cells.iter().map(|c| c.1.abs()));
    let shown: Vec<String> = cells.iter().map(|(p, d)| format!("p={p}: {d:+.2e}")).collect();
    outcome(e <= 1e-3, format!("value - (1-p): {}", shown.join(", ")))
}

fn dephrasure_upsilon() -> Outcome {
    let cells: Vec<(f64, f64)> = [0.2, 0.5, 0.8]
        .iter()
        .map(|&p| {
            let q = p * p;
            (p, bits(upsilon_geometric(&Channel::dephrasure(p, q).unwrap(), 5, &s())) - (1.0 - q))
        })
        .collect();
    let e = worst(cells.iter().map(|c| c.1.abs()));
    let shown: Vec<String> = cells.iter().map(|(p, d)| format!("p={p}: {d:+.2e}")).collect();
    outcome(e <= 1e-3, format!("value - (1-p²): {}", shown.join(", ")))
}

fn magic_constants() -> Outcome {
    let t = bits(theta_min_state(&qutrit_t_state(), &s())) - (1.0 + 2.0 * (PI / 18.0).sin()).log2();
    let h = bits(theta_min_state(&qutrit_h_plus_state(), &s())) - (3.0 - 3f64.sqrt()).log2();
    outcome(worst([t.abs(), h.abs()]) <= 1e-6, format!("T {t:+.2e}, H+ {h:+.2e}"))
}

fn divergence_chain() -> Outcome {
    let mut r = rng(5);
    let mut lowest = f64::INFINITY;
    for i in 0..200 {
        let n = 2 + i % 3;
        let rho = random_state_rank(&mut r, n, 1 + i % n);
        let sigma = random_state(&mut r, n);
        let alpha = [1.03125, 1.5, 2.0][i % 3];
        let chain = [
            finite(umegaki(&rho, &sigma)),
            finite(sandwiched(&rho, &sigma, alpha)),
            finite(petz(&rho, &sigma, alpha)),
            finite(geometric(&rho, &sigma, alpha)),
            finite(max_relative(&rho, &sigma)),
        ];
        for w in chain.windows(2) {
            let slack = w[1] - w[0];
            lowest = if slack.is_nan() { f64::NEG_INFINITY } else { lowest.min(slack) };
        }
    }
    outcome(lowest >= -1e-8, format!("smallest consecutive gap {lowest:+.2e} over 200 pairs"))
}

/// Pass requires absolute error ≤ 1e-6; the error scaled by `max(1, value)`
/// is printed alongside to separate solver accuracy from modelling errors.
fn sdp_versus_closed_form() -> Outcome {
    let mut r = rng(6);
    let (mut abs, mut scaled) = (Vec::new(), Vec::new());
    for i in 0..50 {
        let n = 2 + i % 5;
        let level = (i % 6) as u32;
        let x = if i % 2 == 0 { random_state_rank(&mut r, n, 1 + i % n) } else { random_state(&mut r, n) };
        let y = random_state(&mut r, n);
        let mut p = Program::new(Field::for_data([x.matrix(), y.matrix()]));
        let m = p.geometric_mean_upper(&x, &MatExpr::constant(y.matrix()), level);
        p.minimize(&m.trace());
        let v = p.solve(&settings_for_level(&s(), level)).map(|sol| sol.report.objective).unwrap_or(f64::NAN);
        let closed = weighted_geometric_mean(&x, &y, 1.0 - alpha_of_level(level)).unwrap().trace();
        abs.push((v - closed).abs());
        scaled.push((v - closed).abs() / closed.abs().max(1.0));
    }
    let mut chan = Vec::new();
    for seed in 0..5 {
        let mut r = rng(60 + seed);
        let n = random_channel(&mut r, 2, 2, 2);
        let m = full_rank_channel(&mut r, 2, 0.3);
        let program = bits(channel_geometric_program(&n, &m, 0, &s()));
        chan.push((program - finite(discrimination_bound(&n, &m, 2.0))).abs());
    }
    let (a, e, b) = (worst(abs), worst(scaled), worst(chan));
    outcome(
        a <= 1e-6 && b <= 1e-6,
        format!("epigraph absolute error {a:.2e} (scaled {e:.2e}) over 50 fixtures, channel D̂₂ {b:.2e} over 5 pairs"),
    )
}

fn additivity_and_chain_rule() -> Outcome {
    let mut add = Vec::new();
    let mut chain = f64::INFINITY;
    for i in 0..20u64 {
        let mut r = rng(70 + i);
        let alpha = [1.0 + 2f64.powi(-3), 1.5, 2.0][i as usize % 3];
        let (n1, m1) = (random_channel(&mut r, 2, 2, 2), full_rank_channel(&mut r, 2, 0.3));
        let (n2, m2) = (random_channel(&mut r, 2, 2, 2), full_rank_channel(&mut r, 2, 0.3));
        let joint = finite(channel_geometric(&n1.tensor(&n2).unwrap(), &m1.tensor(&m2).unwrap(), alpha));
        let sum = finite(channel_geometric(&n1, &m1, alpha)) + finite(channel_geometric(&n2, &m2, alpha));
        add.push((joint - sum).abs());
        let rho = random_state(&mut r, 4);
        let sigma = random_state(&mut r, 4);
        let lhs = finite(geometric(&n1.apply(&rho, 2).unwrap(), &m1.apply(&sigma, 2).unwrap(), alpha));
        let rhs = finite(geometric(&rho, &sigma, alpha)) + finite(channel_geometric(&n1, &m1, alpha));
        let gap = rhs - lhs;
        chain = if gap.is_nan() { f64::NEG_INFINITY } else { chain.min(gap) };
    }
    let a = worst(add);
    outcome(a <= 1e-8 && chain >= -1e-8, format!("additivity {a:.2e}, smallest chain-rule slack {chain:+.2e}"))
}

fn formulation_identities() -> Outcome {
    let mut rains = Vec::new();
    let mut squashed = Vec::new();
    for seed in 0..20 {
        let n = random_channel(&mut rng(80 + seed), 2, 2, 1 + seed as usize % 3);
        rains.push((bits(max_rains(&n, &s())) - bits(max_rains_theta(&n, &s()))).abs());
        squashed.push((bits(e_max(&n, &s())) - bits(e_max_sigma(&n, &s()))).abs());
    }
    let (a, b) = (worst(rains), worst(squashed));
    outcome(a <= 1e-6 && b <= 1e-6, format!("Rains {a:.2e}, E_max {b:.2e} over 20 channels"))
}

/// Largest violation of `geometric ≤ max + 1e-6` and largest gap over a grid.
struct Ladder {
    name: String,
    violation: f64,
    gap: f64,
}

fn ladder(name: &str, grid: &[f64], pair: impl Fn(f64) -> (f64, f64)) -> Ladder {
    let mut violation: f64 = 0.0;
    let mut gap: f64 = f64::NEG_INFINITY;
    for &p in grid {
        let (g, m) = pair(p);
        if g.is_nan() || m.is_nan() {
            violation = f64::INFINITY;
            continue;
        }
        violation = violation.max(g - m);
        gap = gap.max(m - g);
    }
    Ladder { name: name.into(), violation, gap }
}

fn bound_ladder() -> Outcome {
    const L: u32 = 10;
    let grid: Vec<f64> = (0..21).map(|i| i as f64 / 20.0).collect();
    let gad = |p: f64| Channel::generalized_amplitude_damping(p, 0.3).unwrap();
    let ad = |p: f64| Channel::amplitude_damping(p).unwrap();
    let quantum: Vec<(&str, Box<dyn Fn(f64) -> Channel>)> = vec![
        ("gad(p,0.3)", Box::new(gad)),
        ("depolarizing∘ad", Box::new(move |p| Channel::depolarizing(2, p).unwrap().after(&ad(p)).unwrap())),
        ("erasure∘ad", Box::new(move |p| Channel::erasure(2, p).unwrap().after(&ad(p)).unwrap())),
        ("dephasing∘ad", Box::new(move |p| Channel::dephasing(p).unwrap().after(&ad(p)).unwrap())),
    ];
    let mut rows = Vec::new();
    for (name, ch) in &quantum {
        rows.push(ladder(&format!("theta {name}"), &grid, |p| {
            let n = ch(p);
            (bits(rains_theta_geometric(&n, L, &s())), bits(max_rains(&n, &s())))
        }));
        rows.push(ladder(&format!("rains {name}"), &grid, |p| {
            let n = ch(p);
            (bits(rains_geometric(&n, L, &s())), bits(max_rains(&n, &s())))
        }));
    }
    rows.push(ladder("sigma gad(p,0.3)", &grid, |p| {
        let n = gad(p);
        (bits(e_alpha_sigma(&n, L, &s())), bits(e_max(&n, &s())))
    }));
    for (label, phi) in [("π", PI), ("π/2", PI / 2.0), ("π/3", PI / 3.0)] {
        rows.push(ladder(&format!("bidirectional φ={label}"), &grid, |p| {
            let n = BipartiteChannel::swap_dephase(p, phi).unwrap();
            (bits(bi_theta_geometric(&n, L, &s())), bits(bi_max_rains(&n, &s())))
        }));
    }
    let classical: Vec<(&str, Box<dyn Fn(f64) -> Channel>)> = vec![
        ("depolarizing", Box::new(|p| Channel::depolarizing(2, p).unwrap())),
        ("erasure", Box::new(|p| Channel::erasure(2, p).unwrap())),
        ("dephrasure(p,p²)", Box::new(|p| Channel::dephrasure(p, p * p).unwrap())),
        ("gad(p,0.3)", Box::new(gad)),
    ];
    for (name, ch) in &classical {
        rows.push(ladder(&format!("upsilon {name}"), &grid, |p| {
            let n = ch(p);
            (bits(upsilon_geometric(&n, L, &s())), bits(upsilon_max(&n, &s())))
        }));
    }
    let ordered = rows.iter().all(|r| r.violation <= 1e-6);
    let strict = ["theta gad(p,0.3)", "bidirectional φ=π", "upsilon gad(p,0.3)"]
        .iter()
        .all(|n| rows.iter().any(|r| r.name == *n && r.gap > 1e-3));
    let detail: Vec<String> =
        rows.iter().map(|r| format!("{} (violation {:.1e}, gap {:.3})", r.name, r.violation, r.gap)).collect();
    outcome(ordered && strict, detail.join("; "))
}

fn structural_inequalities() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;

    let mut r = rng(90);
    let mut sub = f64::INFINITY;
    for _ in 0..2 {
        let n1 = random_channel(&mut r, 2, 2, 2);
        let n2 = random_channel(&mut r, 2, 2, 2);
        let joint = bits(upsilon_geometric(&n1.tensor(&n2).unwrap(), 3, &s()));
        let sum = bits(upsilon_geometric(&n1, 3, &s())) + bits(upsilon_geometric(&n2, 3, &s()));
        sub = sub.min(sum - joint);
    }
    pass &= sub >= -1e-5;
    notes.push(format!("Υ̂ sub-additivity slack {sub:+.2e}"));

    let mut cap = f64::INFINITY;
    let zoo = [
        Channel::generalized_amplitude_damping(0.3, 0.2).unwrap(),
        Channel::erasure(2, 0.4).unwrap(),
        Channel::dephrasure(0.3, 0.2).unwrap(),
        Channel::depolarizing(2, 0.5).unwrap(),
        random_channel(&mut r, 2, 2, 2),
    ];
    for n in &zoo {
        let um = bits(upsilon_max(n, &s()));
        cap = cap.min(bits(c_beta(n, &s())).min(bits(c_zeta(n, &s()))) - um);
    }
    pass &= cap >= -1e-6;
    notes.push(format!("min(C_β,C_ζ) - Υ_max ≥ {cap:+.2e}"));

    let faithful = bits(thauma_geometric(&Channel::identity(3), 5, &s()));
    pass &= faithful.abs() <= 1e-6;
    notes.push(format!("θ̂(id₃) at ℓ=5 = {faithful:.2e}"));

    let n1 = Channel::qutrit_t_depolarizing(0.1).unwrap();
    let n2 = Channel::qutrit_t_depolarizing(0.3).unwrap();
    let both = bits(thauma_geometric(&n2.after(&n1).unwrap(), 3, &s()));
    let sum = bits(thauma_geometric(&n1, 3, &s())) + bits(thauma_geometric(&n2, 3, &s()));
    pass &= both <= sum + 1e-6;
    notes.push(format!("θ̂ composition slack {:+.2e}", sum - both));

    outcome(pass, notes.join(", "))
}

fn thauma_additivity() -> Outcome {
    let n = Channel::qutrit_t_depolarizing(0.2).unwrap();
    match thauma_two_product_bracket(&n, &n, &s()) {
        Ok(b) => {
            let twice = b.single[0] + b.single[1];
            let (lo, hi) = (b.lower - twice, b.upper - twice);
            let pass = lo.abs() <= 1e-4 && hi.abs() <= 1e-4 && b.primal_min_eig >= -1e-6 && b.dual_min_eig >= -1e-6;
            outcome(
                pass,
                format!(
                    "2θ̂₂(N) = {twice:.6}, bracket [{lo:+.2e}, {hi:+.2e}], min eigenvalues {:.1e} / {:.1e}",
                    b.primal_min_eig, b.dual_min_eig
                ),
            )
        }
        Err(e) => outcome(false, format!("error: {e}")),
    }
}

fn cli_determinism() -> Outcome {
    let run = || {
        std::process::Command::new(env!("CARGO_BIN_EXE_georenyi"))
            .args([
                "sweep", "--channel", "kind=gad gamma=$p N=0.3", "--points", "11", "--bounds",
                "rains-theta-geometric,max-rains,upsilon-geometric", "--level", "5",
            ])
            .output()
    };
    match (run(), run()) {
        (Ok(a), Ok(b)) => {
            let same = a.stdout == b.stdout && !a.stdout.is_empty();
            outcome(same && a.status.success(), format!("{} bytes, identical: {same}", a.stdout.len()))
        }
        _ => outcome(false, "binary did not run"),
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("GAD C_β = C_ζ = log(1+√(1-γ))", gad_analytic),
        ("erasure Υ̂ at ℓ=5 = 1-p", erasure_upsilon),
        ("dephrasure Υ̂ at ℓ=5 = 1-p²", dephrasure_upsilon),
        ("min-Thauma constants", magic_constants),
        ("divergence ordering chain", divergence_chain),
        ("SDP versus closed form", sdp_versus_closed_form),
        ("channel additivity and chain rule", additivity_and_chain_rule),
        ("R_max = R_max,Θ and E_max = E_max,Σ", formulation_identities),
        ("bound ladder on the channel zoo", bound_ladder),
        ("sub-additivity, faithfulness, Υ_max ≤ C", structural_inequalities),
        ("θ̂₂ additivity", thauma_additivity),
        ("CLI determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        let secs = start.elapsed().as_secs_f64();
        failed += usize::from(!o.pass);
        println!("{} {:>2} {name} [{secs:.1}s]: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 && std::env::var("GEORENYI_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1") {
        std::process::exit(1);
    }
}
