//! SU(1,1) acting on a non-normal contraction by (αA + β)(β̄A + ᾱ)⁻¹.

use covkit::groups::{Group, Su11Element};
use covkit::operators::{mobius_apply, spectral_radius, OperatorMatrix};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let a = OperatorMatrix::from_rows(&[
        vec![c(0.5, 0.1), c(3.0, 0.0)],
        vec![c(0.0, 0.0), c(-0.2, 0.4)],
    ])?;
    let g1 = Su11Element::from_polar(0.8, 0.3, -1.0);
    let g2 = Su11Element::from_polar(1.5, -2.0, 0.5);
    println!("rho(A) = {:.6}, |A| = {:.6}", spectral_radius(&a)?, a.norm());
    for (name, g) in [("g1", g1), ("g2", g2), ("g1 g2", g1.compose(&g2))] {
        let b = mobius_apply(&g, &a)?;
        println!("rho({name}.A) = {:.6}", spectral_radius(&b)?);
    }
    let lhs = mobius_apply(&g1.compose(&g2), &a)?;
    let rhs = mobius_apply(&g1, &mobius_apply(&g2, &a)?)?;
    println!("composition residual {:.2e}", (lhs.matrix() - rhs.matrix()).norm());
    Ok(())
}
