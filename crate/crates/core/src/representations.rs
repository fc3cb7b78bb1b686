//! Representations of the concrete groups on sampled signals.
//!
//! `apply(g, v)` always computes `π(g)v` for a genuine homomorphism
//! `π(gh) = π(g)π(h)`; the transform engine feeds it `g⁻¹`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::groups::{AffineElement, EuclideanMotion, Group, Sl2Element};
use crate::signals::{Exponent, SampledSignal1D, SampledSignal2D};

pub trait Representation: Sync {
    type Group: Group;
    type Signal: Clone + Send + Sync;

    fn apply(&self, g: &Self::Group, v: &Self::Signal) -> Result<Self::Signal>;

    /// Short textual description, e.g. `affine:p=2`.
    fn descriptor(&self) -> String;
}

/// The isometric representation of the "ax+b" group on `L_p(ℝ)`.
///
/// `π_p(a, b) f (x) = a^{-1/p} f((x - b)/a)`, so that
/// `π_p((a, b)⁻¹) f (x) = a^{1/p} f(a x + b)`.
///
/// The action is carried out on the grid itself: samples keep their values
/// (times the prefactor) and move to `a·x_k + b`. Affine maps send
/// piecewise-linear interpolants to piecewise-linear interpolants, so this is
/// exact on sampled signals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineRep {
    p: Exponent,
}

impl AffineRep {
    pub fn new(p: Exponent) -> Self {
        Self { p }
    }

    pub fn p(&self) -> Exponent {
        self.p
    }

    /// `a^{-1/p}`, the factor in front of `π(a, b)`.
    fn factor(&self, a: f64) -> f64 {
        match self.p {
            Exponent::Infinity => 1.0,
            p => a.powf(-p.reciprocal()),
        }
    }

    /// The dilation-translation `f(x) -> a^{1/p} f(a x + b)`, i.e. `π((a, b)⁻¹)`.
    pub fn dilate_translate(&self, a: f64, b: f64, f: &SampledSignal1D) -> Result<SampledSignal1D> {
        self.apply(&AffineElement::new(a, b)?.inverse(), f)
    }

    /// `π(g)f` interpolated back onto the grid of `f`.
    pub fn apply_resampled(&self, g: &AffineElement, f: &SampledSignal1D) -> Result<SampledSignal1D> {
        if g.is_identity() {
            return Ok(f.clone());
        }
        let c = self.factor(g.a());
        SampledSignal1D::from_fn(f.x0(), f.dx(), f.len(), |x| f.evaluate((x - g.b()) / g.a()) * c)
    }

    /// `[π(g)f](x)` at a single point.
    pub fn eval_at(&self, g: &AffineElement, f: &SampledSignal1D, x: f64) -> Complex64 {
        f.evaluate((x - g.b()) / g.a()) * self.factor(g.a())
    }
}

impl Representation for AffineRep {
    type Group = AffineElement;
    type Signal = SampledSignal1D;

    fn apply(&self, g: &AffineElement, f: &SampledSignal1D) -> Result<SampledSignal1D> {
        if g.is_identity() {
            return Ok(f.clone());
        }
        let c = self.factor(g.a());
        let values = if c == 1.0 {
            f.values().to_vec()
        } else {
            f.values().iter().map(|v| v * c).collect()
        };
        SampledSignal1D::new(g.act(f.x0()), g.a() * f.dx(), values)
    }

    fn descriptor(&self) -> String {
        format!("affine:p={}", self.p)
    }
}

/// Rigid motions acting by change of variables, `π(g)f(x) = f(g⁻¹·x)`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct EuclideanRep;

impl Representation for EuclideanRep {
    type Group = EuclideanMotion;
    type Signal = SampledSignal2D;

    fn apply(&self, g: &EuclideanMotion, f: &SampledSignal2D) -> Result<SampledSignal2D> {
        if g.is_identity() {
            return Ok(f.clone());
        }
        let ginv = g.inverse();
        let (nx, ny) = f.shape();
        let mut values = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                let (x, y) = ginv.act(f.point(i, j));
                values.push(f.evaluate(x, y));
            }
        }
        f.with_values(values)
    }

    fn descriptor(&self) -> String {
        "euclidean".into()
    }
}

/// Weight-2 Möbius action of SL(2,ℝ) on functions of the upper half-plane:
/// `π(g) f(z) = (c z + d)^{-2} f((a z + b)/(c z + d))` with `[[a, b], [c, d]] = g⁻¹`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Sl2Rep;

impl Representation for Sl2Rep {
    type Group = Sl2Element;
    type Signal = SampledSignal2D;

    fn apply(&self, g: &Sl2Element, f: &SampledSignal2D) -> Result<SampledSignal2D> {
        if f.origin().1 <= 0.0 {
            return Err(Error::invalid(
                "half-plane signal",
                format!("grid reaches y = {} <= 0; it must lie in the open upper half-plane", f.origin().1),
            ));
        }
        if g.is_identity() {
            return Ok(f.clone());
        }
        let (a, b, c, d) = g.inverse().entries();
        let (nx, ny) = f.shape();
        let mut values = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                let (x, y) = f.point(i, j);
                let z = Complex64::new(x, y);
                let denom = z * c + d;
                let w = (z * a + b) / denom;
                values.push(f.evaluate(w.re, w.im) / (denom * denom));
            }
        }
        f.with_values(values)
    }

    fn descriptor(&self) -> String {
        "sl2".into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signals::QuadratureRule;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn el(a: f64, b: f64) -> AffineElement {
        AffineElement::new(a, b).unwrap()
    }

    #[test]
    fn identity_is_bit_exact() {
        let f = SampledSignal1D::from_real_fn(-1.0, 0.1, 21, |x| x.sin()).unwrap();
        let rep = AffineRep::new(Exponent::Finite(2.0));
        assert_eq!(rep.apply(&AffineElement::identity(), &f).unwrap(), f);
        let f2 = SampledSignal2D::centered(1.0, 0.1, |x, y| c(x * y)).unwrap();
        assert_eq!(EuclideanRep.apply(&EuclideanMotion::identity(), &f2).unwrap(), f2);
    }

    #[test]
    fn printed_dilation_of_box() {
        // a^{1/2} f(4x) with f = 1 on [0,1] is 2 on [0, 1/4]
        let dx = 0.001;
        let f = SampledSignal1D::on_window(-2.0, 2.0, dx, |x| c(if (0.0..=1.0).contains(&x) { 1.0 } else { 0.0 })).unwrap();
        let rep = AffineRep::new(Exponent::Finite(2.0));
        let g = rep.dilate_translate(4.0, 0.0, &f).unwrap();
        assert!((g.evaluate(0.1) - c(2.0)).norm() < 1e-12);
        assert_eq!(g.evaluate(0.3), c(0.0));
        let n0 = f.lp_norm(Exponent::Finite(2.0)).unwrap();
        let n1 = g.lp_norm(Exponent::Finite(2.0)).unwrap();
        assert!((n0 - n1).abs() < 2.0 * dx);
    }

    #[test]
    fn affine_homomorphism_is_exact() {
        let f = SampledSignal1D::from_real_fn(-3.0, 0.01, 601, |x| (-x * x).exp()).unwrap();
        let rep = AffineRep::new(Exponent::Finite(1.5));
        let (g, h) = (el(1.7, 0.3), el(0.6, -1.1));
        let lhs = rep.apply(&g, &rep.apply(&h, &f).unwrap()).unwrap();
        let rhs = rep.apply(&g.compose(&h), &f).unwrap();
        for x in [-2.0, -0.3, 0.0, 0.77, 1.9] {
            assert!((lhs.evaluate(x) - rhs.evaluate(x)).norm() < 1e-12);
        }
    }

    #[test]
    fn affine_isometry() {
        let f = SampledSignal1D::from_real_fn(-5.0, 0.01, 1001, |x| (-x * x).exp() * (3.0 * x).cos()).unwrap();
        for p in [1.0, 2.0, 3.5] {
            let rep = AffineRep::new(Exponent::Finite(p));
            let g = rep.apply(&el(2.3, 0.4), &f).unwrap();
            let (n0, n1) = (f.lp_norm(Exponent::Finite(p)).unwrap(), g.lp_norm(Exponent::Finite(p)).unwrap());
            assert!((n0 - n1).abs() < 1e-12 * n0, "p = {p}");
        }
    }

    #[test]
    fn resampled_sup_norm() {
        let f = SampledSignal1D::from_real_fn(-10.0, 0.01, 2001, |x| (-x * x).exp()).unwrap();
        let rep = AffineRep::new(Exponent::Infinity);
        let g = rep.apply_resampled(&el(0.8, 1.3), &f).unwrap();
        let lipschitz = (2.0f64).sqrt() * (-0.5f64).exp();
        let tol = 2.0 * lipschitz * f.dx();
        assert!((g.lp_norm(Exponent::Infinity).unwrap() - 1.0).abs() < tol);
    }

    #[test]
    fn rotation_and_translation_of_disc() {
        let h = 0.01;
        let disc = SampledSignal2D::centered(2.0, h, |x, y| c(if x * x + y * y <= 1.0 { 1.0 } else { 0.0 })).unwrap();
        let rot = EuclideanRep.apply(&EuclideanMotion::new(std::f64::consts::PI, 0.0, 0.0).unwrap(), &disc).unwrap();
        let area0 = disc.integrate(QuadratureRule::TRAPEZOID).unwrap().re;
        let area1 = rot.integrate(QuadratureRule::TRAPEZOID).unwrap().re;
        assert!((area0 - area1).abs() < 10.0 * h);
        let moved = EuclideanRep.apply(&EuclideanMotion::new(0.0, 1.0, 0.0).unwrap(), &disc).unwrap();
        assert_eq!(moved.evaluate(1.0, 0.0), c(1.0));
        assert_eq!(moved.evaluate(1.9, 0.0), c(1.0));
        assert_eq!(moved.evaluate(-0.5, 0.0), c(0.0));
        assert_eq!(moved.evaluate(1.0, 1.5), c(0.0));
    }

    #[test]
    fn sl2_rejects_real_axis() {
        let f = SampledSignal2D::from_fn((-1.0, 0.0), (0.1, 0.1), (21, 11), |_, _| c(1.0)).unwrap();
        assert!(Sl2Rep.apply(&Sl2Element::identity(), &f).is_err());
    }

    #[test]
    fn sl2_round_trip_on_interior() {
        let f = SampledSignal2D::from_fn((-2.0, 0.2), (0.01, 0.01), (401, 381), |x, y| {
            c((-(x * x + (y - 1.5).powi(2))).exp())
        })
        .unwrap();
        let g = Sl2Element::from_iwasawa(0.2, 1.1, 0.15).unwrap();
        let back = Sl2Rep.apply(&g.inverse(), &Sl2Rep.apply(&g, &f).unwrap()).unwrap();
        for (x, y) in [(0.0, 1.5), (0.3, 1.2), (-0.4, 1.9)] {
            assert!((back.evaluate(x, y) - f.evaluate(x, y)).norm() < 1e-3, "at ({x}, {y})");
        }
    }
}
