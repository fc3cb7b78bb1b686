use super::Group;
use crate::error::{Error, Result};

/// A point `(a, b)` of the "ax+b" group, `a > 0`.
///
/// The group law is `(a, b) * (a', b') = (a a', a b' + b)`, i.e. composition
/// of the maps `x -> a x + b`. The left Haar density is `a^-2 da db`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineElement {
    a: f64,
    b: f64,
}

impl AffineElement {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::invalid("affine element", format!("dilation a = {a} must be finite and > 0")));
        }
        if !b.is_finite() {
            return Err(Error::invalid("affine element", format!("translation b = {b} must be finite")));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Left Haar density `a^-2` at this point.
    pub fn haar_density(&self) -> f64 {
        self.a.powi(-2)
    }

    /// The point `a x + b`.
    pub fn act(&self, x: f64) -> f64 {
        self.a * x + self.b
    }
}

impl Group for AffineElement {
    const NAME: &'static str = "affine";

    fn identity() -> Self {
        Self { a: 1.0, b: 0.0 }
    }

    fn compose(&self, other: &Self) -> Self {
        Self {
            a: self.a * other.a,
            b: self.a * other.b + self.b,
        }
    }

    fn inverse(&self) -> Self {
        Self {
            a: 1.0 / self.a,
            b: -self.b / self.a,
        }
    }

    fn coords(&self) -> Vec<f64> {
        vec![self.a, self.b]
    }

    fn coord_names() -> &'static [&'static str] {
        &["a", "b"]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(a: f64, b: f64) -> AffineElement {
        AffineElement::new(a, b).unwrap()
    }

    #[test]
    fn group_law() {
        assert_eq!(el(2.0, 1.0).compose(&el(3.0, 4.0)), el(6.0, 9.0));
        assert_eq!(el(2.5, -0.3).compose(&AffineElement::identity()), el(2.5, -0.3));
    }

    #[test]
    fn inverse_formula() {
        assert_eq!(el(2.0, 1.0).inverse(), el(0.5, -0.5));
        assert_eq!(AffineElement::identity().inverse(), AffineElement::identity());
    }

    #[test]
    fn rejects_nonpositive_dilation() {
        assert!(AffineElement::new(0.0, 1.0).is_err());
        assert!(AffineElement::new(-1.0, 1.0).is_err());
        assert!(AffineElement::new(1.0, f64::NAN).is_err());
    }

    #[test]
    fn composition_matches_maps() {
        let g = el(1.7, -0.4);
        let h = el(0.3, 2.2);
        let x = 0.77;
        assert!((g.compose(&h).act(x) - g.act(h.act(x))).abs() < 1e-15);
    }
}
