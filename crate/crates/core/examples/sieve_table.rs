//! Tabulate Ω, λ, μ and Λ on a window far from the origin.

use liouville_lab::sieve::{mertens_lambda, primes_in, sieve_segment};

fn main() -> liouville_lab::Result<()> {
    let (lo, hi) = (1_000_000_000_000u64, 1_000_000_000_030u64);
    let t = sieve_segment(lo, hi)?;
    println!("{:>15} {:>3} {:>3} {:>3} {:>8}", "n", "Ω", "λ", "μ", "Λ");
    for n in lo..=hi {
        println!(
            "{n:>15} {:>3} {:>3} {:>3} {:>8.4}",
            t.omega(n)?,
            t.lambda(n)?,
            t.mu(n)?,
            t.mangoldt(n)?
        );
    }

    let primes = primes_in(1, 1_000_000)?;
    println!("π(10^6) = {}", primes.len());
    println!("L(10^6) = Σ λ(n) = {}", mertens_lambda(1_000_000)?);
    Ok(())
}
