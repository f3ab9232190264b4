//! Largest partial sum along homogeneous progressions d, 2d, ..., md.

use liouville_lab::chowla::{discrepancy_of_values, discrepancy_scan};
use liouville_lab::multiplicative::{CustomSpec, Kind, MultiplicativeFunction, PrimeRule};

fn main() -> liouville_lab::Result<()> {
    let n = 100_000;
    let d = discrepancy_scan(&MultiplicativeFunction::Liouville, n)?;
    println!("λ: max |Σ_{{j≤m}} λ(jd)| = {} at d = {}, m = {}", d.max_abs, d.argmax_d, d.argmax_n);

    // completely multiplicative, f(3) = 1, otherwise the character mod 3
    let spec = CustomSpec::new(Kind::CompletelyMultiplicative).rule(PrimeRule::Chi3).prime(3, 1.0);
    let f = MultiplicativeFunction::custom(spec)?;
    let d = discrepancy_scan(&f, n)?;
    println!("χ₃-like: {} at d = {}, m = {}", d.max_abs, d.argmax_d, d.argmax_n);

    let alternating: Vec<i8> = (1..=1000).map(|i| if i % 2 == 1 { 1 } else { -1 }).collect();
    println!("alternating: {}", discrepancy_of_values(&alternating)?.max_abs);
    Ok(())
}
