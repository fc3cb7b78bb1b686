//! Mexican-hat wavelet transform of a two-tone chirp, printed as a coarse
//! scalogram (rows are scales, columns are positions).

use covkit::fiducials::Fiducial;
use covkit::groups::GroupGrid;
use covkit::representations::AffineRep;
use covkit::signals::{Exponent, SampledSignal1D};
use covkit::transform::covariant_transform;
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let hat = SampledSignal1D::on_window(-10.0, 10.0, 0.02, |x| Complex64::from((1.0 - x * x) * (-x * x / 2.0).exp()))?;
    // low tone on the left, high tone on the right
    let f = SampledSignal1D::on_window(-20.0, 20.0, 0.02, |x| {
        let tone = if x < 0.0 { (2.0 * x).cos() } else { (8.0 * x).cos() };
        Complex64::from(tone * (-(x / 8.0).powi(2)).exp())
    })?;
    let grid = GroupGrid::parse("affine:a=log:0.1:2:12,b=lin:-15:15:61")?;
    let w = covariant_transform(&AffineRep::new(Exponent::Finite(2.0)), &Fiducial::inner_product(hat, "mexican-hat"), &f, &grid)?;

    let shades = [' ', '.', ':', '-', '=', '+', '*', '#', '%', '@'];
    let peak = w.values().iter().map(|v| v[0].norm()).fold(0.0, f64::max);
    let b_len = grid.axis("b").map_or(1, |ax| ax.len());
    for (row, chunk) in w.values().chunks(b_len).enumerate() {
        let a = grid.elements()[row * b_len].a();
        let line: String = chunk
            .iter()
            .map(|v| shades[((v[0].norm() / peak) * 9.0).round() as usize])
            .collect();
        println!("a={a:6.3} |{line}|");
    }
    Ok(())
}
