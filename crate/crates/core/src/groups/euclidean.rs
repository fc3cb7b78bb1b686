use std::f64::consts::PI;

use super::Group;
use crate::error::{Error, Result};

/// A rigid motion of the plane acting as `x -> R(theta) x + t`.
///
/// Composition follows from that action:
/// `(θ₁, t₁) * (θ₂, t₂) = (θ₁ + θ₂, R(θ₁) t₂ + t₁)`.
/// Angles are kept in `(-π, π]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EuclideanMotion {
    theta: f64,
    tx: f64,
    ty: f64,
}

/// Wraps an angle into `(-π, π]`.
pub(crate) fn normalize_angle(theta: f64) -> f64 {
    if theta > -PI && theta <= PI {
        return theta;
    }
    let t = theta.rem_euclid(2.0 * PI);
    if t > PI {
        t - 2.0 * PI
    } else {
        t
    }
}

impl EuclideanMotion {
    pub fn new(theta: f64, tx: f64, ty: f64) -> Result<Self> {
        if !(theta.is_finite() && tx.is_finite() && ty.is_finite()) {
            return Err(Error::invalid("euclidean motion", "coordinates must be finite"));
        }
        Ok(Self {
            theta: normalize_angle(theta),
            tx,
            ty,
        })
    }

    /// Motion that maps the x-axis onto the line with unit normal at angle
    /// `theta + π/2` and signed distance `d` from the origin.
    pub fn line(theta: f64, d: f64) -> Result<Self> {
        let (s, c) = theta.sin_cos();
        Self::new(theta, -d * s, d * c)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn translation(&self) -> (f64, f64) {
        (self.tx, self.ty)
    }

    pub fn act(&self, (x, y): (f64, f64)) -> (f64, f64) {
        let (s, c) = self.theta.sin_cos();
        (c * x - s * y + self.tx, s * x + c * y + self.ty)
    }
}

impl Group for EuclideanMotion {
    const NAME: &'static str = "euclidean";

    fn identity() -> Self {
        Self {
            theta: 0.0,
            tx: 0.0,
            ty: 0.0,
        }
    }

    fn compose(&self, other: &Self) -> Self {
        let (s, c) = self.theta.sin_cos();
        Self {
            theta: normalize_angle(self.theta + other.theta),
            tx: c * other.tx - s * other.ty + self.tx,
            ty: s * other.tx + c * other.ty + self.ty,
        }
    }

    fn inverse(&self) -> Self {
        let (s, c) = self.theta.sin_cos();
        // -R(-θ) t
        Self {
            theta: normalize_angle(-self.theta),
            tx: -(c * self.tx + s * self.ty),
            ty: -(-s * self.tx + c * self.ty),
        }
    }

    fn coords(&self) -> Vec<f64> {
        vec![self.theta, self.tx, self.ty]
    }

    fn coord_names() -> &'static [&'static str] {
        &["theta", "tx", "ty"]
    }

    fn distance(&self, other: &Self) -> f64 {
        let dtheta = normalize_angle(self.theta - other.theta).abs();
        dtheta.max((self.tx - other.tx).abs()).max((self.ty - other.ty).abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_translation() {
        let g = EuclideanMotion::new(0.0, 1.0, 0.0).unwrap();
        assert_eq!(g.inverse(), EuclideanMotion::new(0.0, -1.0, 0.0).unwrap());
        assert!(EuclideanMotion::identity().inverse().distance(&EuclideanMotion::identity()) == 0.0);
    }

    #[test]
    fn angle_normalization() {
        assert_eq!(normalize_angle(PI), PI);
        assert_eq!(normalize_angle(-PI), PI);
        assert!((normalize_angle(3.0 * PI) - PI).abs() < 1e-12);
        assert!((normalize_angle(-0.5) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn composition_matches_action() {
        let g = EuclideanMotion::new(0.7, 1.0, -2.0).unwrap();
        let h = EuclideanMotion::new(-2.1, 0.3, 0.5).unwrap();
        let p = (0.4, -1.3);
        let lhs = g.compose(&h).act(p);
        let rhs = g.act(h.act(p));
        assert!((lhs.0 - rhs.0).abs() < 1e-14 && (lhs.1 - rhs.1).abs() < 1e-14);
    }

    #[test]
    fn line_motion_offsets_origin() {
        let g = EuclideanMotion::line(0.3, 0.6).unwrap();
        let (x, y) = g.act((0.0, 0.0));
        assert!(((x * x + y * y).sqrt() - 0.6).abs() < 1e-15);
    }
}
