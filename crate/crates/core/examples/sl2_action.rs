//! Weight-2 action of SL(2,R) on a function of the upper half-plane.
//! f(z) = (z + i)^{-2} transforms into another rational function whose
//! values we can write down by hand.

use covkit::groups::{Group, Sl2Element};
use covkit::representations::{Representation, Sl2Rep};
use covkit::signals::SampledSignal2D;
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = |z: Complex64| 1.0 / ((z + Complex64::i()) * (z + Complex64::i()));
    let s = SampledSignal2D::from_fn((-2.0, 0.5), (0.01, 0.01), (401, 201), |x, y| f(Complex64::new(x, y)))?;
    let g = Sl2Element::from_iwasawa(0.3, 1.2, 0.2)?;
    let moved = Sl2Rep.apply(&g, &s)?;
    let (a, b, c, d) = g.inverse().entries();
    let mut worst = 0.0f64;
    for (i, j) in [(100, 50), (200, 100), (300, 150), (250, 20)] {
        let (x, y) = s.point(i, j);
        let z = Complex64::new(x, y);
        let den = z * c + d;
        let exact = f((z * a + b) / den) / (den * den);
        worst = worst.max((moved.at(i, j) - exact).norm());
    }
    println!("det g = {:.12}, max pointwise error {worst:.3e}", g.determinant());
    Ok(())
}
