//! Build a semidefinite program by hand: minimise `tr M` over the
//! epigraph of the weighted geometric mean and compare with the matrix
//! formula. Also prints the head of the lowered program text.

use georenyi::bounds::{alpha_of_level, settings_for_level};
use georenyi::conic::{Field, MatExpr, Program, SolverSettings};
use georenyi::linalg::{weighted_geometric_mean, Hermitian};

fn main() -> georenyi::Result<()> {
    let x = Hermitian::from_real(3, &[0.5, 0.1, 0.0, 0.1, 0.3, 0.05, 0.0, 0.05, 0.2])?;
    let y = Hermitian::from_real(3, &[0.4, 0.0, 0.1, 0.0, 0.4, 0.0, 0.1, 0.0, 0.2])?;
    let base = SolverSettings::default();

    for level in 0..=4 {
        let mut p = Program::new(Field::for_data([x.matrix(), y.matrix()]));
        let m = p.geometric_mean_upper(&x, &MatExpr::constant(y.matrix()), level);
        p.minimize(&m.trace());
        let sol = p.solve(&settings_for_level(&base, level))?;
        let t = 1.0 - alpha_of_level(level);
        let exact = weighted_geometric_mean(&x, &y, t)?.trace();
        println!(
            "level {level}  t = {t:+.4}  program {:.9}  formula {exact:.9}  [{}]",
            sol.report.objective, sol.report.status
        );
        if level == 1 {
            let text = p.lower()?.to_text();
            for line in text.lines().take(8) {
                println!("    | {line}");
            }
        }
    }
    Ok(())
}
