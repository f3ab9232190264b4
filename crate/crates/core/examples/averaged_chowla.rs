//! Chowla correlations averaged over shifts, and the logarithmic variant.

use liouville_lab::chowla::{averaged_chowla, log_chowla};

fn main() -> liouville_lab::Result<()> {
    for k in 1..=3 {
        for h in [4, 16, 32] {
            let a = averaged_chowla(100_000, h, k)?;
            println!("k = {k} h = {h:>2}: {:.5} ({} shift sets)", a.value, a.distinct_sets);
        }
    }
    for x in [10_000, 1_000_000, 10_000_000] {
        let l = log_chowla(x, 1)?;
        println!("x = {x:>8}: (1/log x) Σ λ(n)λ(n+1)/n = {:+.5}", l.normalized);
    }
    Ok(())
}
