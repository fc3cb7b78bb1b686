//! Wavelet analysis and resynthesis through the Haar pairing.

use covkit::checks::haar_test_signals;
use covkit::fiducials::Fiducial;
use covkit::groups::GroupGrid;
use covkit::inversion::{admissibility_constant, inverse_haar, OutputGrid};
use covkit::representations::AffineRep;
use covkit::signals::{Exponent, SampledSignal1D};
use covkit::transform::covariant_transform;
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let v0 = SampledSignal1D::on_window(-10.0, 10.0, 0.05, |x| Complex64::from((1.0 - x * x) * (-x * x / 2.0).exp()))?;
    println!("C = {:.6} (pi = {:.6})", admissibility_constant(&v0)?, std::f64::consts::PI);
    let grid = GroupGrid::parse("affine:a=log:0.1:10:32,b=lin:-15:15:151")?;
    let rep = AffineRep::new(Exponent::Finite(2.0));
    let fid = Fiducial::inner_product(v0.clone(), "mexican-hat");
    for (name, s) in haar_test_signals() {
        let f = SampledSignal1D::on_window(-15.0, 15.0, 0.05, |x| Complex64::from(s(x)))?;
        let w = covariant_transform(&rep, &fid, &f, &grid)?;
        let r = inverse_haar(&w, &rep, &v0, OutputGrid::like(&f), Some(&f))?;
        println!("{name:<20} residual {:.3e}", r.residual.unwrap_or(f64::NAN));
    }
    let gaussian = SampledSignal1D::on_window(-10.0, 10.0, 0.05, |x| Complex64::from((-x * x / 2.0).exp()))?;
    match admissibility_constant(&gaussian) {
        Ok(c) => println!("gaussian: C = {c}"),
        Err(e) => println!("gaussian: {e}"),
    }
    Ok(())
}
