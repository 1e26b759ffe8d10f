//! Continued fractions: canonical and all-ones-tail expansions of rationals,
//! certified convergents of irrationals.

use lattice_rules::diophantine::{
    cfrac_rational, convergents, k_value, named_alpha, Alpha, AlphaKind,
};

fn main() -> lattice_rules::Result<()> {
    for (p, q) in [(3i64, 5u64), (13, 21), (355, 113)] {
        let canonical = cfrac_rational(p, q)?;
        let variant = canonical.variant();
        println!(
            "{p}/{q}: canonical {} (K = {}), variant {} (K = {})",
            canonical.render(),
            k_value(&canonical)?,
            variant.render(),
            k_value(&variant)?
        );
    }
    println!();

    let golden = named_alpha(AlphaKind::GoldenRatio, 2)?;
    let alpha = Alpha::Real(golden.values[0].clone());
    let convs = convergents(&alpha, 10)?;
    let rendered: Vec<String> = convs.iter().map(|(p, q)| format!("{p}/{q}")).collect();
    println!("golden ratio convergents: {}", rendered.join(", "));

    let sqrt2 = named_alpha(AlphaKind::SqrtPrimes(vec![2]), 2)?;
    let alpha = Alpha::Real(sqrt2.values[0].clone());
    let convs = convergents(&alpha, 6)?;
    let rendered: Vec<String> = convs.iter().map(|(p, q)| format!("{p}/{q}")).collect();
    println!("sqrt(2) convergents:      {}", rendered.join(", "));
    Ok(())
}
