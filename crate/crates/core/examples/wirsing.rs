//! Mean values of multiplicative functions against their Euler products.

use liouville_lab::multiplicative::{pretentious_distance, wirsing_mean, CustomSpec, Kind, MultiplicativeFunction, PowerRule};

fn main() -> liouville_lab::Result<()> {
    let n = 2_000_000;
    let r = wirsing_mean(&MultiplicativeFunction::MobiusSquared, n, 100_000)?;
    println!("μ²: mean {:.6}, Euler product {:.6}, 6/π² = {:.6}", r.empirical_mean, r.partial_product, 6.0 / std::f64::consts::PI.powi(2));

    // f(p) = 1/2 on every prime, f(p^k) = 1/2^k
    let half = CustomSpec::new(Kind::Multiplicative).default_value(0.5).power_rule(PowerRule::Power);
    let f = MultiplicativeFunction::custom(half)?;
    let r = wirsing_mean(&f, n, 100_000)?;
    println!("f(p) = 1/2: mean {:.6}, Euler product {:.6}, distance {:.4}", r.empirical_mean, r.partial_product, r.distance);

    for g in ["lambda", "mu", "mu2", "smooth:100"] {
        let g = MultiplicativeFunction::parse(g)?;
        println!("D({g}, 1; 10^6) = {:.4}", pretentious_distance(&g, 1_000_000)?);
    }
    Ok(())
}
