//! Numerical range of a 3x3 matrix: support-function boundary and the
//! samples `<U(t) A U(t)* x, x>` along a unitary orbit, all inside it.

use covkit::operators::{numrange_transform, OperatorMatrix, SupportFunction, UnitaryOrbit};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let z = |re: f64, im: f64| Complex64::new(re, im);
    let a = OperatorMatrix::new(DMatrix::from_row_slice(3, 3, &[
        z(1.0, 0.0), z(2.0, 0.0), z(0.0, 0.0),
        z(0.0, 0.0), z(0.0, 1.0), z(1.0, 0.0),
        z(0.0, 0.0), z(0.0, 0.0), z(-1.0, 0.0),
    ]))?;
    let h = OperatorMatrix::new(DMatrix::from_row_slice(3, 3, &[
        z(1.0, 0.0), z(0.5, -0.5), z(0.0, 0.0),
        z(0.5, 0.5), z(0.0, 0.0), z(0.3, 0.0),
        z(0.0, 0.0), z(0.3, 0.0), z(-1.0, 0.0),
    ]))?;
    let x = DVector::from_vec(vec![z(1.0, 0.0), z(0.0, 1.0), z(1.0, 0.0)]) / z(3f64.sqrt(), 0.0);
    let orbit = UnitaryOrbit::new(&h, (0..200).map(|k| 0.05 * k as f64).collect())?;
    let support = SupportFunction::new(&a, 360)?;
    let samples = numrange_transform(&a, &x, &orbit)?;
    let worst = samples.iter().map(|w| support.excess(*w).1).fold(f64::NEG_INFINITY, f64::max);
    println!("{} boundary points, {} orbit samples, max support excess {worst:.3e}", support.boundary().len(), samples.len());
    for w in samples.iter().step_by(25) {
        println!("  {:+.4} {:+.4}i", w.re, w.im);
    }
    Ok(())
}
