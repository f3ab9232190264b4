//! Sign patterns of consecutive Liouville values and two-point correlations.

use liouville_lab::chowla::{correlation, pattern_census, pattern_label};

fn main() -> liouville_lab::Result<()> {
    let n = 1_000_000;
    for k in 1..=3 {
        let c = pattern_census(n, k)?;
        println!("k = {k}");
        for (code, f) in c.frequencies.iter().enumerate() {
            println!("  {} {:.5}", pattern_label(code, k), f);
        }
    }

    for shifts in [[0u64, 1], [0, 2], [0, 6]] {
        let c = correlation(n, &shifts)?;
        println!("Σ λ(n+{})λ(n+{}) = {} ({:+.5})", shifts[0], shifts[1], c.sum, c.normalized);
    }
    Ok(())
}
