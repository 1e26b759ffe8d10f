//! Frolov lattice construction: the polynomial p_d, its real roots, and how
//! the point count inside the unit cube tracks |det(T^{-1})| = a^d |det B|
//! as the shrinking factor grows.

use lattice_rules::lattice::{enumerate_points, frolov_polynomial, frolov_roots, LatticeSpec};
use lattice_rules::matrix;
use num_traits::ToPrimitive;

fn main() -> lattice_rules::Result<()> {
    let d = 2;
    let coeffs = frolov_polynomial(d);
    println!("p_{d} coefficients (low to high): {coeffs:?}");
    let roots = frolov_roots(d)?;
    let root_strs: Vec<String> = roots
        .iter()
        .map(|r| format!("{:.12}", r.to_f64().unwrap()))
        .collect();
    println!("roots: {}", root_strs.join(", "));
    println!();
    println!(
        "{:>6} {:>10} {:>12} {:>10}",
        "a", "count", "det(T^-1)", "gap"
    );
    for a in [2.0f64, 4.0, 8.0, 16.0, 24.0] {
        let spec = LatticeSpec::frolov(d, a)?;
        let ps = enumerate_points(&spec)?;
        let det_inv = matrix::abs(&ps.weight).recip().to_f64().unwrap();
        let gap = (ps.len() as f64 / det_inv - 1.0).abs();
        println!("{a:>6} {:>10} {det_inv:>12.3} {gap:>10.5}", ps.len());
    }
    Ok(())
}
