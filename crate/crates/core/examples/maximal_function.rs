//! Hardy maximal function of the indicator of [-1, 1]. The closed form is
//! 1 inside and 1/(1+|b|) elsewhere, so 1/2 at the endpoints. On the grid
//! the endpoint value is off by about dx/(2 a_min).

use covkit::groups::Axis;
use covkit::signals::SampledSignal1D;
use covkit::transform::{hardy_maximal, maximal_table, shift_invariant_norm};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = SampledSignal1D::on_window(-6.0, 6.0, 0.01, |x| Complex64::from(if x.abs() <= 1.0 { 1.0 } else { 0.0 }))?;
    let a = Axis::log(0.05, 20.0, 200)?.values();
    let b = Axis::lin(-4.0, 4.0, 17)?;
    let m = hardy_maximal(&f, &b, &a)?;
    println!("{:>6} {:>10} {:>10} {:>8}", "b", "M(b)", "exact", "a*");
    for (p, x) in maximal_table(&f, &b, &a)?.iter().zip(b.values()) {
        let exact = if x.abs() < 1.0 { 1.0 } else { 1.0 / (1.0 + x.abs()) };
        println!("{:6.2} {:10.5} {:10.5} {:8.3}", p.b, p.value, exact, p.a_star);
    }
    println!("sup M = {:.5}, shift-invariant norm = {:.5}", m.values().iter().map(|v| v.re).fold(0.0, f64::max), shift_invariant_norm(&f)?);
    Ok(())
}
