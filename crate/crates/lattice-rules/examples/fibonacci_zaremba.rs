//! Zaremba indices of Fibonacci rules and the continued-fraction sandwich
//! N/(K+2) <= rho <= N/K.

use lattice_rules::diophantine::{cfrac_rational, fibonacci_rule, k_value};
use lattice_rules::lattice::LatticeSpec;
use lattice_rules::zaremba::zaremba_index;

fn main() -> lattice_rules::Result<()> {
    println!(
        "{:>4} {:>8} {:>8} {:>8} {:>10} {:>10}",
        "n", "N=F_n", "g=F_n-1", "rho", "N/(Kv+2)", "N/Kv"
    );
    for n in 5..=24 {
        let (big, small) = fibonacci_rule(n)?;
        let spec = LatticeSpec::rank1(big, &[small as i64])?;
        let rho = zaremba_index(&spec)?.rho_f64();
        let variant = cfrac_rational(small as i64, big)?.variant();
        let kv = k_value(&variant)? as f64;
        println!(
            "{n:>4} {big:>8} {small:>8} {rho:>8} {:>10.3} {:>10.3}",
            big as f64 / (kv + 2.0),
            big as f64 / kv
        );
    }
    println!();
    println!("variant partial quotients of F_n-1/F_n are all 1, so Kv = 1 and");
    println!("the sandwich pins rho between N/3 and N.");
    Ok(())
}
