//! |Σ λ(n) n^{it}| and |Σ p^{it}| along a few frequencies.

use liouville_lab::dirichlet::{twisted_sum_profile, TwistKind};

fn main() -> liouville_lab::Result<()> {
    let ts = [0.0, 1.0, 14.134725, 100.0, 1000.0];
    for kind in [TwistKind::Liouville, TwistKind::Primes] {
        println!("{kind:?}");
        for r in twisted_sum_profile(kind, 1_000_000, &ts)? {
            println!("  t = {:>9}: |S| = {:>10.2}  |S| / trivial = {:.5}", r.t, r.abs_sum, r.ratio);
        }
    }
    Ok(())
}
