//! Mean square of Liouville sums over [x, x + h) as h grows.

use liouville_lab::intervals::{variance_scan, Weight};

fn main() -> liouville_lab::Result<()> {
    let x = 2_000_000;
    println!("{:>6} {:>12} {:>14} {:>8} {:>12}", "h", "E S²", "E S² / h²", "max|S|", "#|S| > h/10");
    for h in [4, 16, 64, 256, 1024, 4096] {
        let s = variance_scan(x, h, 1, Weight::Lambda, &[0.1])?;
        println!(
            "{h:>6} {:>12.3} {:>14.6e} {:>8} {:>12}",
            s.mean_sq, s.normalized_variance, s.max_abs, s.exceptional_counts[0].1
        );
    }

    let s = variance_scan(x, 256, 1, Weight::Mangoldt, &[])?;
    println!("Λ, h = 256: E (ψ(x+h) − ψ(x) − h)² = {:.2}", s.mean_sq);
    Ok(())
}
