use std::f64::consts::PI;

use covkit::fiducials::{Fiducial, FiducialKind};
use covkit::groups::GroupGrid;
use covkit::inversion::{admissibility_constant, inverse_haar, inverse_hardy, HardyPairing, OutputGrid};
use covkit::representations::AffineRep;
use covkit::signals::{Exponent, SampledSignal1D};
use covkit::transform::covariant_transform;
use covkit::Error;
use num_complex::Complex64;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn mexican_hat() -> SampledSignal1D {
    SampledSignal1D::on_window(-10.0, 10.0, 0.05, |x| c((1.0 - x * x) * (-x * x / 2.0).exp())).unwrap()
}

#[test]
fn mexican_hat_admissibility_is_pi() {
    let hat = SampledSignal1D::on_window(-20.0, 20.0, 0.02, |x| c((1.0 - x * x) * (-x * x / 2.0).exp())).unwrap();
    assert!((admissibility_constant(&hat).unwrap() - PI).abs() < 1e-3);
}

#[test]
fn haar_recovers_a_wave_packet_on_a_coarse_grid() {
    let v0 = mexican_hat();
    let grid = GroupGrid::parse("affine:a=log:0.1:10:24,b=lin:-15:15:121").unwrap();
    let rep = AffineRep::new(Exponent::Finite(2.0));
    let f = SampledSignal1D::on_window(-15.0, 15.0, 0.05, |x| c((3.0 * x).cos() * (-x * x / 2.0).exp())).unwrap();
    let w = covariant_transform(&rep, &Fiducial::inner_product(v0.clone(), "hat"), &f, &grid).unwrap();
    let r = inverse_haar(&w, &rep, &v0, OutputGrid::like(&f), Some(&f)).unwrap();
    assert!(r.residual.unwrap() < 0.05, "{:?}", r.residual);
}

#[test]
fn haar_inverse_is_linear_in_the_transform() {
    let v0 = mexican_hat();
    let grid = GroupGrid::parse("affine:a=log:0.2:5:8,b=lin:-5:5:21").unwrap();
    let rep = AffineRep::new(Exponent::Finite(2.0));
    let fid = Fiducial::inner_product(v0.clone(), "hat");
    let f = SampledSignal1D::on_window(-8.0, 8.0, 0.05, |x| c(-x * (-x * x / 2.0).exp())).unwrap();
    let g = SampledSignal1D::on_window(-8.0, 8.0, 0.05, |x| c((2.0 * x).sin() * (-x * x / 4.0).exp())).unwrap();
    let alpha = Complex64::new(0.5, -2.0);
    let h = f.combine(c(1.0), &g, alpha).unwrap();
    let out = OutputGrid::like(&f);
    let inv = |s: &SampledSignal1D| {
        let w = covariant_transform(&rep, &fid, s, &grid).unwrap();
        inverse_haar(&w, &rep, &v0, out, None).unwrap().result
    };
    let expected = inv(&f).combine(c(1.0), &inv(&g), alpha).unwrap();
    let got = inv(&h);
    for (x, y) in got.values().iter().zip(expected.values()) {
        assert!((x - y).norm() < 1e-12);
    }
}

#[test]
fn gaussian_vacuum_is_inadmissible() {
    let v0 = SampledSignal1D::on_window(-10.0, 10.0, 0.05, |x| c((-x * x / 2.0).exp())).unwrap();
    let grid = GroupGrid::parse("affine:a=log:0.2:5:4,b=lin:-5:5:11").unwrap();
    let rep = AffineRep::new(Exponent::Finite(2.0));
    let f = mexican_hat();
    let w = covariant_transform(&rep, &Fiducial::inner_product(v0.clone(), "g"), &f, &grid).unwrap();
    let err = inverse_haar(&w, &rep, &v0, OutputGrid::like(&f), None).unwrap_err();
    assert!(matches!(err, Error::InadmissibleVacuum { .. }), "{err}");
}

#[test]
fn hardy_rejects_scales_below_the_b_resolution() {
    let v0 = SampledSignal1D::on_window(-50.0, 50.0, 0.05, |x| 1.0 / (Complex64::new(0.0, 2.0 * PI) * Complex64::new(x, 1.0))).unwrap();
    let pairing = HardyPairing::parse("geo:0.1:0.5:3", "lin:-5:5:11").unwrap();
    let rep = AffineRep::new(Exponent::Infinity);
    let f = SampledSignal1D::on_window(-10.0, 10.0, 0.05, |x| 1.0 / (Complex64::new(x, 1.0).powi(2))).unwrap();
    let w = covariant_transform(&rep, &Fiducial::new(FiducialKind::CauchyPlus), &f, &pairing.grid().unwrap()).unwrap();
    let err = inverse_hardy(&w, &rep, &v0, &pairing, OutputGrid::like(&f), None).unwrap_err();
    assert!(matches!(err, Error::UnresolvedVacuum { .. }), "{err}");
}

#[test]
fn hardy_pairing_needs_decreasing_scales() {
    assert!(HardyPairing::parse("geo:0.1:2:3", "lin:-5:5:11").is_err());
    assert!(HardyPairing::parse("geo:0.5:0.5:3", "log:1:5:11").is_err());
}
