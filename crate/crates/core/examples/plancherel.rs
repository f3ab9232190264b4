//! Frequency-side integrals of Dirichlet polynomials against exact
//! physical-side sums.

use liouville_lab::dirichlet::{
    mean_value_ratio, plancherel_check, saffari_vaughan_ratio, DirichletPolynomial, QuadratureParams,
};

fn main() -> liouville_lab::Result<()> {
    let params = QuadratureParams::default();
    let poly = DirichletPolynomial::random_unit(500, 1, 0)?;
    for t in [1.0, 5.0, 25.0] {
        let r = plancherel_check(&poly, t, &params)?;
        println!(
            "T = {t:>4}: lhs {:.8} rhs {:.8} rel_err {:.2e} (quad {:.1e}, tail {:.1e})",
            r.lhs, r.rhs, r.rel_err, r.quad_error, r.tail_estimate
        );
    }

    let lam = DirichletPolynomial::liouville(1000, 2000)?;
    for t in [100.0, 1000.0, 10_000.0] {
        let m = mean_value_ratio(&lam, t)?;
        println!("mean value, λ on [1000, 2000], T = {t}: ratio {:.4}", m.ratio);
    }

    let sv = saffari_vaughan_ratio(&lam, 50.0, 1000.0, 1.0, 2.0)?;
    println!("short sums h = 50: lhs {:.1}, rhs {:.1}, ratio {:.4}", sv.lhs, sv.denominator, sv.ratio);
    Ok(())
}
