//! Cauchy and Poisson fiducials on the Lorentzian 1/(1+t²), compared with
//! their residue values. The rational tail treats the signal as constant
//! past the window edges, so on a decaying signal it over-corrects a little.

use covkit::fiducials::{Evaluate, Fiducial, FiducialKind};
use covkit::signals::{QuadratureRule, SampledSignal1D, TailPolicy};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = SampledSignal1D::on_window(-20.0, 20.0, 0.01, |t| Complex64::from(1.0 / (1.0 + t * t)))?;
    let rational = QuadratureRule::TRAPEZOID.with_tail(TailPolicy::RationalTail);
    let cases = [
        ("cauchy+", FiducialKind::CauchyPlus, vec![0.25]),
        ("cauchy-", FiducialKind::CauchyMinus, vec![-0.25]),
        ("poisson", FiducialKind::PoissonKernel, vec![0.5]),
        ("jump", FiducialKind::Jump, vec![0.25, -0.25]),
    ];
    println!("{:<8} {:>24} {:>10} {:>10} {:>10}", "fiducial", "value", "error", "+tail", "budget");
    for (name, kind, exact) in cases {
        let fid = Fiducial::new(kind.clone());
        let v = fid.evaluate(&f)?;
        let vt = Fiducial::new(kind).with_rule(rational).evaluate(&f)?;
        for (k, e) in exact.iter().enumerate() {
            println!(
                "{:<8} {:>24} {:>10.2e} {:>10.2e} {:>10.2e}",
                if k == 0 { name } else { "" },
                format!("{:.6}{:+.6}i", v[k].re, v[k].im),
                (v[k] - e).norm(),
                (vt[k] - e).norm(),
                fid.truncation_budget(&f)
            );
        }
    }
    Ok(())
}
