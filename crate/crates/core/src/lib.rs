//! Covariant transforms of signals over concrete groups.
//!
//! A covariant transform takes a representation `π` of a group `G` on a
//! signal space and a fiducial operator `F`, and maps a signal `v` to the
//! function `v̂(g) = F(π(g⁻¹) v)` on `G`. Wavelet transforms, Cauchy and
//! Poisson integrals, the Hardy maximal function and the Radon transform are
//! all instances.

pub mod checks;
pub mod cli;
pub mod error;
pub mod fiducials;
pub mod groups;
pub mod inversion;
pub mod operators;
pub mod representations;
pub mod signals;
pub mod transform;

pub use error::{Error, Result};
