//! Radon transform of an off-centre disc, checked against the chord length.

use covkit::groups::{EuclideanMotion, GroupGrid};
use covkit::signals::SampledSignal2D;
use covkit::transform::radon_transform;
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (cx, cy, r) = (0.3, -0.2, 0.6);
    let f = SampledSignal2D::centered(1.5, 0.01, |x, y| {
        Complex64::from(if (x - cx).powi(2) + (y - cy).powi(2) <= r * r { 1.0 } else { 0.0 })
    })?;
    let grid: GroupGrid<EuclideanMotion> = GroupGrid::parse("euclidean:theta=lin:0:3:7,d=lin:-0.9:0.9:9")?;
    let sino = radon_transform(&f, &grid)?;
    let mut worst = 0.0f64;
    for (g, v) in grid.elements().iter().zip(sino.values()) {
        // the line is g·(s, 0): direction (cos θ, sin θ) through the translation
        let (tx, ty) = g.translation();
        let (s, c) = g.theta().sin_cos();
        let dist = ((tx - cx) * s - (ty - cy) * c).abs();
        let chord = if dist < r { 2.0 * (r * r - dist * dist).sqrt() } else { 0.0 };
        worst = worst.max((v[0].re - chord).abs());
    }
    println!("{} lines, max |R f - chord| = {worst:.3e}", grid.len());
    let mut out = std::io::stdout().lock();
    sino.write_csv(&mut out)?;
    Ok(())
}
