//! Short averages of a multiplicative function against its long average.

use liouville_lab::multiplicative::{short_vs_long, MultiplicativeFunction};

fn main() -> liouville_lab::Result<()> {
    let x = 1_000_000;
    for f in ["lambda", "mu", "mu2", "smooth:1000"] {
        let func = MultiplicativeFunction::parse(f)?;
        for h in [100, 1000, 10_000] {
            let r = short_vs_long(&func, x, h, 1, 0.1)?;
            println!(
                "{f:>11} h = {h:>5}: median {:>8.2} p99 {:>8.2} max {:>8.2}  exceptional {:.4}",
                r.median, r.p99, r.max, r.exceptional_fraction
            );
        }
    }
    Ok(())
}
