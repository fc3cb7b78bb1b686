use num_complex::Complex64;

use super::{Group, ALGEBRAIC_TOL};
use crate::error::{Error, Result};

/// An element `[[α, β], [β̄, ᾱ]]` of SU(1,1), `|α|² − |β|² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su11Element {
    alpha: Complex64,
    beta: Complex64,
}

impl Su11Element {
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let det = alpha.norm_sqr() - beta.norm_sqr();
        let scale = alpha.norm_sqr().max(1.0);
        if !det.is_finite() || (det - 1.0).abs() > ALGEBRAIC_TOL * scale {
            return Err(Error::invalid(
                "SU(1,1) element",
                format!("|alpha|^2 - |beta|^2 = {det}, expected 1"),
            ));
        }
        Ok(Self { alpha, beta })
    }

    /// `α = cosh(r) e^{iφ}`, `β = sinh(r) e^{iψ}`; always satisfies the constraint.
    pub fn from_polar(r: f64, phi: f64, psi: f64) -> Self {
        Self {
            alpha: Complex64::from_polar(r.cosh(), phi),
            beta: Complex64::from_polar(r.sinh(), psi),
        }
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    /// `|α|² − |β|²`, equal to 1 up to rounding.
    pub fn hyperbolic_norm(&self) -> f64 {
        self.alpha.norm_sqr() - self.beta.norm_sqr()
    }

    /// Möbius action on the disc: `z -> (α z + β) / (β̄ z + ᾱ)`.
    pub fn act(&self, z: Complex64) -> Complex64 {
        (self.alpha * z + self.beta) / (self.beta.conj() * z + self.alpha.conj())
    }
}

impl Group for Su11Element {
    const NAME: &'static str = "su11";

    fn identity() -> Self {
        Self {
            alpha: Complex64::new(1.0, 0.0),
            beta: Complex64::new(0.0, 0.0),
        }
    }

    fn compose(&self, other: &Self) -> Self {
        Self {
            alpha: self.alpha * other.alpha + self.beta * other.beta.conj(),
            beta: self.alpha * other.beta + self.beta * other.alpha.conj(),
        }
    }

    fn inverse(&self) -> Self {
        Self {
            alpha: self.alpha.conj(),
            beta: -self.beta,
        }
    }

    fn coords(&self) -> Vec<f64> {
        vec![self.alpha.re, self.alpha.im, self.beta.re, self.beta.im]
    }

    fn coord_names() -> &'static [&'static str] {
        &["alpha_re", "alpha_im", "beta_re", "beta_im"]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn inverse_pair_composes_to_identity() {
        let g = Su11Element::new(c(5.0 / 3.0), c(4.0 / 3.0)).unwrap();
        let h = Su11Element::new(c(5.0 / 3.0), c(-4.0 / 3.0)).unwrap();
        let gh = g.compose(&h);
        assert!(gh.distance(&Su11Element::identity()) < 1e-15);
        assert_eq!(h, g.inverse());
    }

    #[test]
    fn rejects_off_hyperboloid() {
        assert!(Su11Element::new(c(1.0), c(0.5)).is_err());
    }

    #[test]
    fn action_composes() {
        let g = Su11Element::from_polar(0.8, 0.3, -1.1);
        let h = Su11Element::from_polar(0.4, 2.0, 0.7);
        let z = Complex64::new(0.2, -0.5);
        assert!((g.compose(&h).act(z) - g.act(h.act(z))).norm() < 1e-14);
    }
}
