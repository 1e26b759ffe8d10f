//! Dyadic census of the dual lattice of a Fibonacci rule: exact counts per
//! annulus level against the growth bound 2^{|m|_1+d+1}/rho, and the empty
//! levels below log2(rho).

use lattice_rules::lattice::LatticeSpec;
use lattice_rules::zaremba::{dyadic_count, zaremba_index, DyadicIndex};

fn main() -> lattice_rules::Result<()> {
    let (n, g) = (144u64, 89i64);
    let spec = LatticeSpec::rank1(n, &[g])?;
    let rho = zaremba_index(&spec)?.rho_f64();
    println!(
        "N = {n}, g = {g}, rho = {rho}, log2(rho) = {:.3}",
        rho.log2()
    );
    println!();
    println!("{:>5} {:>12} {:>14}", "|m|1", "total count", "level bound");
    for l in 0u32..=12 {
        let mut total = 0u64;
        let mut bound = 0.0f64;
        for m1 in 0..=l {
            total += dyadic_count(&spec, &DyadicIndex(vec![m1, l - m1]))?;
            bound += 2f64.powi(l as i32 + 3) / rho;
        }
        let marker = if (1u64 << l) < rho as u64 {
            "  (below log2 rho)"
        } else {
            ""
        };
        println!("{l:>5} {total:>12} {bound:>14.1}{marker}");
    }
    Ok(())
}
