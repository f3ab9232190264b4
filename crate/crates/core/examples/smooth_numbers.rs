//! Smooth integers in [N, N + C√N].

use liouville_lab::multiplicative::{smooth_constant_table, smooth_in_interval};

fn main() -> liouville_lab::Result<()> {
    for n in [1_000_000u64, 1_000_000_007, 10_u64.pow(12)] {
        let w = smooth_in_interval(n, 0.3, 10.0)?;
        match w.witness {
            Some(m) => println!("N = {n}: {m} is {:.1}-smooth, offset {}", w.bound, w.offset.unwrap_or(0)),
            None => println!("N = {n}: nothing {:.1}-smooth within {:.0}", w.bound, w.c * (n as f64).sqrt()),
        }
    }

    println!("{:>5} {:>9} {:>11} {:>11}", "ε", "not found", "max offset", "offset/√N");
    for row in smooth_constant_table(&[0.2, 0.25, 0.3, 0.4, 0.5], 2000, 1_000_000, 2_000_000, 20.0, 1)? {
        println!("{:>5} {:>9} {:>11} {:>11.4}", row.eps_exponent, row.not_found, row.max_offset, row.max_ratio);
    }
    Ok(())
}
