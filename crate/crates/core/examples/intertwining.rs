//! The covariant transform intertwines the representation with the left
//! regular action: W(π(g)v)(h) = W(v)(g⁻¹h).

use covkit::fiducials::{Fiducial, FiducialKind};
use covkit::groups::{AffineElement, EuclideanMotion, GroupGrid};
use covkit::representations::{AffineRep, EuclideanRep};
use covkit::signals::{Exponent, SampledSignal1D, SampledSignal2D};
use covkit::transform::check_intertwining;
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let v = SampledSignal1D::on_window(-30.0, 30.0, 0.01, |x| (-(x - 0.3) * (x - 0.3)).exp() * Complex64::from_polar(1.0, 2.0 * x))?;
    let grid: GroupGrid<AffineElement> = GroupGrid::parse("affine:a=log:0.5:2:3,b=lin:-1:1:3")?;
    let g = AffineElement::new(1.7, -0.4)?;
    for (name, p, kind) in [
        ("cauchy+", Exponent::Finite(2.0), FiducialKind::CauchyPlus),
        ("poisson", Exponent::Finite(1.0), FiducialKind::PoissonKernel),
        ("avg", Exponent::Infinity, FiducialKind::IntervalAverage),
    ] {
        let r = check_intertwining(&AffineRep::new(p), &Fiducial::new(kind), &v, &g, &grid)?;
        println!("affine  {name:<8} residual {r:.2e}");
    }
    let plane = SampledSignal2D::centered(3.0, 0.02, |x, y| Complex64::from((-(x * x + 3.0 * y * y)).exp()))?;
    let egrid: GroupGrid<EuclideanMotion> = GroupGrid::parse("euclidean:theta=lin:-1:1:3,d=lin:-0.5:0.5:3")?;
    let m = EuclideanMotion::new(0.7, 0.2, -0.1)?;
    let r = check_intertwining(&EuclideanRep, &Fiducial::new(FiducialKind::RadonLine), &plane, &m, &egrid)?;
    println!("euclid  radon    residual {r:.2e}");
    Ok(())
}
