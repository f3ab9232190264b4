//! Layered prime-block coefficients and the counting identities behind them.

use liouville_lab::dirichlet::{
    build_decomposition, decomposition_identity, restricted_factorization_error, turan_variance, Layer,
};

fn main() -> liouville_lab::Result<()> {
    let x = 100_000;
    let layers = Layer::parse_list("2:10;11:50")?;
    let (d, poly) = build_decomposition(&layers, x)?;
    for info in &d.layers {
        println!("layer [{}, {}]: {} blocks, W = {:.4}", info.layer.lo, info.layer.hi, info.blocks.len(), info.w);
    }
    let check = decomposition_identity(&d, &poly)?;
    println!("identity on [X, 2X]: {} values, holds = {}", check.checked, check.holds);

    for layer in [Layer::new(2, 10), Layer::new(2, 100), Layer::new(101, 1000)] {
        let r = turan_variance(layer, x)?;
        println!("Turán [{}, {}]: variance / XW = {:.4}", layer.lo, layer.hi, r.ratio);
    }

    let r = restricted_factorization_error(Layer::new(100, 1000), x)?;
    println!("restricted factorization [100, 1000]: relative error {:.4}", r.relative_error);
    Ok(())
}
