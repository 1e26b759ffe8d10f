//! Worst-case-error bound evaluation on the Fibonacci ladder: the truncated
//! dyadic sum with its tail estimate against the closed form
//! rho^{-s} (1 + log2 d_T)^{(d-1)(1-1/theta)}.

use lattice_rules::bounds::{wce_bound_closed, wce_bound_sum, BoundParams};
use lattice_rules::diophantine::fibonacci_rule;
use lattice_rules::lattice::LatticeSpec;
use lattice_rules::zaremba::zaremba_index;

fn main() -> lattice_rules::Result<()> {
    println!("s = 2, p = 2, theta = 2, Mmax = ceil(2 log2 N) + 8");
    println!(
        "{:>6} {:>6} {:>13} {:>13} {:>10} {:>9}",
        "N", "rho", "bound_sum", "bound_closed", "tail/sum", "ratio"
    );
    for n in 5..=16u32 {
        let (big, small) = fibonacci_rule(n)?;
        let spec = LatticeSpec::rank1(big, &[small as i64])?;
        let params = BoundParams::new(2.0, 2.0, 2.0, BoundParams::default_mmax(big))?;
        let sum = wce_bound_sum(&spec, &params)?;
        let rho = zaremba_index(&spec)?.rho_f64();
        let closed = wce_bound_closed(rho, big as f64, 2, &params)?;
        println!(
            "{big:>6} {rho:>6} {:>13.5e} {:>13.5e} {:>10.2e} {:>9.3}",
            sum.value,
            closed,
            sum.tail_estimate / sum.value,
            closed / sum.value
        );
    }
    Ok(())
}
