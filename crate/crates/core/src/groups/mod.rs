//! Concrete groups acting on signals and operators.
//!
//! Every group here is a small `Copy` value type. The [`Group`] trait carries
//! the group law; mixing elements of different groups is rejected at compile
//! time because `compose` takes `&Self`.

mod affine;
mod euclidean;
mod grid;
mod sl2;
mod su11;

pub use affine::AffineElement;
pub use euclidean::EuclideanMotion;
pub use grid::{make_grid, AnyGrid, Axis, AxisKind, GridGroup, GroupGrid};
pub use sl2::Sl2Element;
pub use su11::Su11Element;

use std::fmt::Debug;

/// Tolerance on algebraic invariants (unit determinant, hyperbolic norm).
pub const ALGEBRAIC_TOL: f64 = 1e-12;

pub trait Group: Copy + Debug + PartialEq + Send + Sync + 'static {
    /// Short name used in grid specs and CSV headers.
    const NAME: &'static str;

    fn identity() -> Self;

    /// The group product `self * other`.
    fn compose(&self, other: &Self) -> Self;

    fn inverse(&self) -> Self;

    /// Real coordinates of the element, in the order of [`Group::coord_names`].
    fn coords(&self) -> Vec<f64>;

    fn coord_names() -> &'static [&'static str];

    /// Componentwise max distance in coordinates.
    fn distance(&self, other: &Self) -> f64 {
        self.coords()
            .iter()
            .zip(other.coords())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    fn is_identity(&self) -> bool {
        *self == Self::identity()
    }
}
