//! Where a prime polynomial is large, and how much mass sits there.

use liouville_lab::dirichlet::{
    halasz_montgomery_ratio, large_values_measure, random_points, DirichletPolynomial, ExceptionalSet,
};

fn main() -> liouville_lab::Result<()> {
    let p = 2000;
    let t = 5000.0;
    let poly = DirichletPolynomial::prime_indicator(p)?;
    let step = 1.0 / (4.0 * (p as f64).ln());
    for v in [3.0, 4.0, 8.0] {
        let lv = large_values_measure(&poly, p, t, v, step)?;
        println!(
            "V = {v}: {} of {} grid points above {:.1}, measure {:.3}",
            lv.set.member_points.len(),
            lv.grid_points,
            lv.threshold,
            lv.set.measure_estimate
        );
    }

    let set = ExceptionalSet::from_points(t, step, random_points(7, 0, 100, t))?;
    let general = halasz_montgomery_ratio(&poly, &set, t, false)?;
    let prime = halasz_montgomery_ratio(&poly, &set, t, true)?;
    println!("∫_E |P|² = {:.1} over |E| = {:.2}", general.integral, general.measure);
    println!("general bound {:.4e}, ratio {:.4}", general.denominator, general.ratio);
    println!("prime bound   {:.4e}, ratio {:.4}", prime.denominator, prime.ratio);
    Ok(())
}
