//! How often μ and λ change sign.

use liouville_lab::multiplicative::{sign_changes, MultiplicativeFunction};

fn main() -> liouville_lab::Result<()> {
    for n in [1_000u64, 100_000, 10_000_000] {
        for f in [MultiplicativeFunction::Mobius, MultiplicativeFunction::Liouville] {
            let s = sign_changes(&f, n)?;
            println!("{:>6} N = {n:>8}: {} changes in {} nonzero values ({:.4})", f.to_string(), s.count, s.nonzero, s.proportion);
        }
    }
    Ok(())
}
