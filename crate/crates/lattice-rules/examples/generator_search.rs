//! Generator searches: exhaustive over coprime generators for small N, and
//! the Korobov form (1, g, g^2, ...) that shrinks the search space to phi(N).

use lattice_rules::bounds::existence_constant;
use lattice_rules::zaremba::{search_best_gen, SearchMode};

fn main() -> lattice_rules::Result<()> {
    println!(
        "{:>6} {:>12} {:>8} {:>14}",
        "N", "best g", "rho", "C_d N/log^1 N"
    );
    for n in [5u64, 8, 34, 144, 610, 1009] {
        let (g, r) = search_best_gen(n, 2, SearchMode::Full)?;
        let reference = existence_constant(2) * n as f64 / (n as f64).log2();
        println!("{n:>6} {:>12?} {:>8} {reference:>14.2}", g, r.rho_f64());
    }
    println!();
    println!("Korobov search in d = 3 (vector (1, g, g^2) mod N):");
    println!("{:>6} {:>16} {:>8}", "N", "g vector", "rho");
    for n in [53u64, 101, 499, 1009] {
        let (g, r) = search_best_gen(n, 3, SearchMode::Korobov)?;
        println!("{n:>6} {:>16?} {:>8}", g, r.rho_f64());
    }
    Ok(())
}
