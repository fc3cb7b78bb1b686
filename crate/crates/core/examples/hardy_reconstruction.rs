//! Reconstruction of a Hardy-space function from its Cauchy transform with
//! the pairing that takes a -> 0 instead of integrating over Haar measure.
//! Smaller than the acceptance run; expect a few seconds.

use std::f64::consts::PI;

use covkit::fiducials::{Fiducial, FiducialKind};
use covkit::inversion::{inverse_hardy, HardyPairing, OutputGrid};
use covkit::representations::AffineRep;
use covkit::signals::{Exponent, SampledSignal1D};
use covkit::transform::covariant_transform;
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let i = Complex64::i();
    let v0 = SampledSignal1D::on_window(-800.0, 800.0, 0.05, |x| 1.0 / (2.0 * PI * i * (x + i)))?;
    let pairing = HardyPairing::parse("geo:0.2:0.5:3", "lin:-20:20:2001")?;
    let rep = AffineRep::new(Exponent::Infinity);
    let f = SampledSignal1D::on_window(-60.0, 60.0, 0.01, |x| 1.0 / ((x + i) * (x + i)))?;
    let w = covariant_transform(&rep, &Fiducial::new(FiducialKind::CauchyPlus), &f, &pairing.grid()?)?;
    let reference = SampledSignal1D::on_window(-5.0, 5.0, 0.02, |x| 1.0 / ((x + i) * (x + i)))?;
    let r = inverse_hardy(&w, &rep, &v0, &pairing, OutputGrid::like(&reference), Some(&reference))?;
    println!("{}", r.to_json());
    Ok(())
}
