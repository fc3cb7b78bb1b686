use num_complex::Complex64;

use super::{Group, ALGEBRAIC_TOL};
use crate::error::{Error, Result};

/// A real 2×2 matrix `[[m11, m12], [m21, m22]]` with unit determinant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sl2Element {
    m: [f64; 4],
}

impl Sl2Element {
    pub fn new(m11: f64, m12: f64, m21: f64, m22: f64) -> Result<Self> {
        let det = m11 * m22 - m12 * m21;
        let scale = [m11, m12, m21, m22].iter().map(|v| v * v).sum::<f64>().max(1.0);
        if !det.is_finite() || (det - 1.0).abs() > ALGEBRAIC_TOL * scale {
            return Err(Error::invalid("SL(2,R) element", format!("determinant {det}, expected 1")));
        }
        Ok(Self { m: [m11, m12, m21, m22] })
    }

    /// Iwasawa form `n(x) a(y) k(θ)`: the element maps `i` to `x + i y`.
    pub fn from_iwasawa(x: f64, y: f64, theta: f64) -> Result<Self> {
        if !(y > 0.0) {
            return Err(Error::invalid("SL(2,R) element", "Iwasawa height must be positive"));
        }
        let (s, c) = theta.sin_cos();
        let r = y.sqrt();
        // [[1, x], [0, 1]] [[r, 0], [0, 1/r]] [[c, -s], [s, c]]
        let (a11, a12, a21, a22) = (r, x / r, 0.0, 1.0 / r);
        Self::new(
            a11 * c + a12 * s,
            -a11 * s + a12 * c,
            a21 * c + a22 * s,
            -a21 * s + a22 * c,
        )
    }

    pub fn entries(&self) -> (f64, f64, f64, f64) {
        (self.m[0], self.m[1], self.m[2], self.m[3])
    }

    pub fn determinant(&self) -> f64 {
        self.m[0] * self.m[3] - self.m[1] * self.m[2]
    }

    /// `z -> (m11 z + m12) / (m21 z + m22)`.
    pub fn mobius(&self, z: Complex64) -> Complex64 {
        let (a, b, c, d) = self.entries();
        (z * a + b) / (z * c + d)
    }
}

impl Group for Sl2Element {
    const NAME: &'static str = "sl2";

    fn identity() -> Self {
        Self { m: [1.0, 0.0, 0.0, 1.0] }
    }

    fn compose(&self, other: &Self) -> Self {
        let [a, b, c, d] = self.m;
        let [e, f, g, h] = other.m;
        Self {
            m: [a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h],
        }
    }

    fn inverse(&self) -> Self {
        let [a, b, c, d] = self.m;
        Self { m: [d, -b, -c, a] }
    }

    fn coords(&self) -> Vec<f64> {
        self.m.to_vec()
    }

    fn coord_names() -> &'static [&'static str] {
        &["m11", "m12", "m21", "m22"]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_checked() {
        assert!(Sl2Element::new(2.0, 0.0, 0.0, 0.5).is_ok());
        assert!(Sl2Element::new(2.0, 0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn iwasawa_maps_i() {
        let g = Sl2Element::from_iwasawa(0.3, 2.0, 1.1).unwrap();
        let z = g.mobius(Complex64::i());
        assert!((z - Complex64::new(0.3, 2.0)).norm() < 1e-14);
        assert!((g.determinant() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn mobius_composes() {
        let g = Sl2Element::from_iwasawa(0.1, 1.5, 0.4).unwrap();
        let h = Sl2Element::from_iwasawa(-0.7, 0.6, -2.0).unwrap();
        let z = Complex64::new(0.25, 0.8);
        assert!((g.compose(&h).mobius(z) - g.mobius(h.mobius(z))).norm() < 1e-13);
    }
}
