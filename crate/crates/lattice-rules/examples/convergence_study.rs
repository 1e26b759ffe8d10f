//! Empirical convergence of Fibonacci rules on the polynomial bump integrand,
//! with the fitted log-log rate. Output matches the `converge` subcommand.

use lattice_rules::bounds::BoundParams;
use lattice_rules::diophantine::fibonacci_rule;
use lattice_rules::lattice::LatticeSpec;
use lattice_rules::quadrature::{convergence_study, study_csv, Integrand, StudyOptions};

fn main() -> lattice_rules::Result<()> {
    let family: Vec<LatticeSpec> = (10..=20u32)
        .map(|n| {
            let (big, small) = fibonacci_rule(n).unwrap();
            LatticeSpec::rank1(big, &[small as i64]).unwrap()
        })
        .collect();
    let params = BoundParams::new(2.0, 2.0, 2.0, 16)?;
    for a in [1u32, 2] {
        let f = Integrand::bump(a, 2)?;
        let (rows, fit) = convergence_study(&family, &f, &params, &StudyOptions::default())?;
        eprintln!(
            "# bump a = {a}: slope {:.3}, residual {:.3}",
            fit.slope, fit.residual
        );
        print!("{}", study_csv(&rows, &fit));
    }
    Ok(())
}
