//! Emit the first points of a golden-ratio Kronecker lattice as CSV, the
//! same format the `points` subcommand produces.

use lattice_rules::diophantine::{named_alpha, AlphaKind};
use lattice_rules::lattice::{enumerate_points, LatticeSpec};

fn main() -> lattice_rules::Result<()> {
    let alpha = named_alpha(AlphaKind::GoldenRatio, 2)?;
    let spec = LatticeSpec::kronecker(21, alpha.alphas())?;
    let points = enumerate_points(&spec)?;
    print!("{}", points.to_csv());
    eprintln!(
        "# N = {}, weight = 1/N, exact = {}",
        points.len(),
        points.exact
    );
    Ok(())
}
