//! Apply general lattice rules to the bump integrand and compare the exact
//! rational quadrature value against the known integral.

use lattice_rules::lattice::LatticeSpec;
use lattice_rules::quadrature::{bump_exact_integral, qmc_apply_rational, Integrand};
use num_traits::ToPrimitive;

fn main() -> lattice_rules::Result<()> {
    let f = Integrand::bump(2, 2)?;
    let exact = bump_exact_integral(2, 2);
    println!("I(f) = {exact} = {:.12}", exact.to_f64().unwrap());
    println!();
    println!("{:<30} {:>8} {:>14}", "rule", "N", "abs error");

    let rules: Vec<(String, LatticeSpec)> = vec![
        ("rank-1 N=144 g=89".into(), LatticeSpec::rank1(144, &[89])?),
        (
            "rank-1 N=610 g=377".into(),
            LatticeSpec::rank1(610, &[377])?,
        ),
        (
            "rank-1 N=610 g=1 (bad)".into(),
            LatticeSpec::rank1(610, &[1])?,
        ),
        ("frolov d=2 a=16".into(), LatticeSpec::frolov(2, 16.0)?),
    ];
    for (name, spec) in rules {
        let q = qmc_apply_rational(&spec, &f)?;
        let n = lattice_rules::lattice::enumerate_points(&spec)?.len();
        let err = (q - &exact).to_f64().unwrap().abs();
        println!("{name:<30} {n:>8} {err:>14.3e}");
    }
    Ok(())
}
