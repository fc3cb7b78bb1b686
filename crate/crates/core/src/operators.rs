//! Operator-valued transforms on finite matrices: the Möbius action of
//! SU(1,1) on contractions and numerical-range sampling by unitary orbits.

use std::f64::consts::PI;
use std::io::Read;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::groups::Su11Element;

/// Condition number above which `β̄A + ᾱI` counts as singular.
pub const SINGULAR_CONDITION: f64 = 1e12;

/// Slack allowed on spectral radii and support-function tests.
pub const SPECTRAL_SLACK: f64 = 1e-10;
pub const SUPPORT_SLACK: f64 = 1e-9;

/// Directions used to certify numerical-range membership.
pub const CERTIFY_DIRECTIONS: usize = 360;

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    m: DMatrix<Complex64>,
}

impl OperatorMatrix {
    pub fn new(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return Err(Error::invalid("operator", format!("matrix is {}x{}, expected square", m.nrows(), m.ncols())));
        }
        if m.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::invalid("operator", "entries must be finite"));
        }
        Ok(Self { m })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("operator", "rows must all have the matrix dimension"));
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn identity(n: usize) -> Self {
        Self { m: DMatrix::identity(n, n) }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    /// Largest singular value.
    pub fn norm(&self) -> f64 {
        self.m.clone().svd(false, false).singular_values.max()
    }

    /// Reads a JSON array of rows, each an array of `[re, im]` pairs.
    pub fn read_json(reader: impl Read) -> Result<Self> {
        let rows: Vec<Vec<[f64; 2]>> =
            serde_json::from_reader(reader).map_err(|e| Error::format("matrix json", e.to_string()))?;
        Self::from_rows(&rows.iter().map(|r| r.iter().map(|p| Complex64::new(p[0], p[1])).collect()).collect::<Vec<_>>())
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Vec<[f64; 2]>> = (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| [self.m[(i, j)].re, self.m[(i, j)].im]).collect())
            .collect();
        serde_json::to_string(&rows).expect("matrix is plain data")
    }
}

/// Reads a JSON vector of `[re, im]` pairs.
pub fn read_vector_json(reader: impl Read) -> Result<DVector<Complex64>> {
    let v: Vec<[f64; 2]> = serde_json::from_reader(reader).map_err(|e| Error::format("vector json", e.to_string()))?;
    Ok(DVector::from_iterator(v.len(), v.iter().map(|p| Complex64::new(p[0], p[1]))))
}

/// Max modulus of the eigenvalues (complex Schur form).
pub fn spectral_radius(a: &OperatorMatrix) -> Result<f64> {
    let n = a.dim();
    let schur = a.m.clone().try_schur(f64::EPSILON, 10_000 * n).ok_or(Error::Eigensolver)?;
    let eig = schur.eigenvalues().ok_or(Error::Eigensolver)?;
    Ok(eig.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

fn condition_number(m: &DMatrix<Complex64>) -> f64 {
    let s = m.clone().svd(false, false).singular_values;
    let (hi, lo) = (s.max(), s.min());
    if lo == 0.0 {
        f64::INFINITY
    } else {
        hi / lo
    }
}

/// `g·A = (αA + βI)(β̄A + ᾱI)⁻¹`. This is a left action:
/// `(g₁g₂)·A = g₁·(g₂·A)`.
pub fn mobius_apply(g: &Su11Element, a: &OperatorMatrix) -> Result<OperatorMatrix> {
    let radius = spectral_radius(a)?;
    if radius >= 1.0 {
        return Err(Error::NotContraction { radius });
    }
    let (alpha, beta) = (g.alpha(), g.beta());
    if beta == Complex64::new(0.0, 0.0) && alpha == Complex64::new(1.0, 0.0) {
        return Ok(a.clone());
    }
    let id = DMatrix::<Complex64>::identity(a.dim(), a.dim());
    let num = &a.m * alpha + &id * beta;
    let den = &a.m * beta.conj() + &id * alpha.conj();
    let condition = condition_number(&den);
    if condition > SINGULAR_CONDITION {
        return Err(Error::Singular { condition });
    }
    let inv = den.try_inverse().ok_or(Error::Singular { condition })?;
    let out = OperatorMatrix::new(num * inv)?;
    let radius = spectral_radius(&out)?;
    if radius >= 1.0 + SPECTRAL_SLACK {
        return Err(Error::NotContraction { radius });
    }
    Ok(out)
}

/// The one-parameter unitary group `U(t) = exp(itH)` sampled on a grid.
#[derive(Debug, Clone)]
pub struct UnitaryOrbit {
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<Complex64>,
    h_norm: f64,
    t: Vec<f64>,
}

impl UnitaryOrbit {
    pub fn new(h: &OperatorMatrix, t: Vec<f64>) -> Result<Self> {
        let skew = (&h.m - h.m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if skew > 1e-12 {
            return Err(Error::invalid("generator", format!("not Hermitian (|H - H*| = {skew:.3e})")));
        }
        if t.is_empty() {
            return Err(Error::invalid("t grid", "needs at least one point"));
        }
        let eig = h.m.clone().symmetric_eigen();
        let h_norm = eig.eigenvalues.iter().map(|x| x.abs()).fold(0.0, f64::max);
        Ok(Self {
            eigenvalues: eig.eigenvalues,
            eigenvectors: eig.eigenvectors,
            h_norm,
            t,
        })
    }

    pub fn t_grid(&self) -> &[f64] {
        &self.t
    }

    /// Operator norm of the generator.
    pub fn generator_norm(&self) -> f64 {
        self.h_norm
    }

    pub fn unitary(&self, t: f64) -> DMatrix<Complex64> {
        let phases = DMatrix::from_diagonal(&self.eigenvalues.map(|l| Complex64::from_polar(1.0, t * l)));
        &self.eigenvectors * phases * self.eigenvectors.adjoint()
    }
}

/// `⟨A y, y⟩ = y* A y`.
fn quadratic_form(a: &DMatrix<Complex64>, y: &DVector<Complex64>) -> Complex64 {
    (y.adjoint() * a * y)[(0, 0)]
}

/// The support function `h(θ) = λ_max(Re(e^{-iθ} A))` in a set of directions.
#[derive(Debug, Clone)]
pub struct SupportFunction {
    thetas: Vec<f64>,
    values: Vec<f64>,
    extreme_points: Vec<Complex64>,
}

impl SupportFunction {
    pub fn new(a: &OperatorMatrix, n_theta: usize) -> Result<Self> {
        if n_theta < 3 {
            return Err(Error::invalid("direction count", format!("{n_theta} < 3")));
        }
        let mut thetas = Vec::with_capacity(n_theta);
        let mut values = Vec::with_capacity(n_theta);
        let mut extreme_points = Vec::with_capacity(n_theta);
        for k in 0..n_theta {
            let theta = 2.0 * PI * k as f64 / n_theta as f64;
            let rot = &a.m * Complex64::from_polar(1.0, -theta);
            let herm = (&rot + rot.adjoint()) * Complex64::new(0.5, 0.0);
            let eig = herm.symmetric_eigen();
            let top = eig.eigenvalues.imax();
            let v = eig.eigenvectors.column(top).into_owned();
            thetas.push(theta);
            values.push(eig.eigenvalues[top]);
            extreme_points.push(quadratic_form(&a.m, &v) / v.norm_squared());
        }
        Ok(Self {
            thetas,
            values,
            extreme_points,
        })
    }

    /// Boundary points of the numerical range, counterclockwise.
    pub fn boundary(&self) -> &[Complex64] {
        &self.extreme_points
    }

    /// Largest excess `Re(e^{-iθ} z) − h(θ)` over the directions, with its index.
    pub fn excess(&self, z: Complex64) -> (usize, f64) {
        self.thetas
            .iter()
            .zip(&self.values)
            .enumerate()
            .map(|(k, (t, h))| (k, (z * Complex64::from_polar(1.0, -t)).re - h))
            .fold((0, f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best })
    }

    /// Membership in the circumscribed polygon of support half-planes.
    pub fn contains(&self, z: Complex64, slack: f64) -> bool {
        self.excess(z).1 <= slack
    }
}

/// Boundary points of the numerical range, one per direction, counterclockwise.
pub fn numerical_range_hull(a: &OperatorMatrix, n_theta: usize) -> Result<Vec<Complex64>> {
    Ok(SupportFunction::new(a, n_theta)?.boundary().to_vec())
}

/// `⟨A U(t)x, U(t)x⟩` along the orbit, each value certified to lie in the
/// numerical range of `A` by the support-function test.
pub fn numrange_transform(a: &OperatorMatrix, x: &DVector<Complex64>, orbit: &UnitaryOrbit) -> Result<Vec<Complex64>> {
    if x.len() != a.dim() {
        return Err(Error::Dimension(format!("vector of length {} for a {}x{} matrix", x.len(), a.dim(), a.dim())));
    }
    if (x.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::invalid("vector", format!("norm {} is not 1", x.norm())));
    }
    let support = SupportFunction::new(a, CERTIFY_DIRECTIONS)?;
    orbit
        .t
        .iter()
        .enumerate()
        .map(|(k, &t)| {
            let y = orbit.unitary(t) * x;
            let z = quadratic_form(&a.m, &y);
            let (_, excess) = support.excess(z);
            if excess > SUPPORT_SLACK {
                return Err(Error::NumericalRange { index: k, excess });
            }
            Ok(z)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn diag(d: &[f64]) -> OperatorMatrix {
        OperatorMatrix::new(DMatrix::from_diagonal(&DVector::from_iterator(d.len(), d.iter().map(|x| c(*x, 0.0))))).unwrap()
    }

    fn shift() -> OperatorMatrix {
        OperatorMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]]).unwrap()
    }

    #[test]
    fn spectral_radii() {
        assert_eq!(spectral_radius(&diag(&[0.0, 0.0])).unwrap(), 0.0);
        assert!((spectral_radius(&diag(&[0.5, -0.25])).unwrap() - 0.5).abs() < 1e-15);
        assert!(spectral_radius(&shift()).unwrap() < 1e-15);
    }

    #[test]
    fn mobius_of_zero() {
        let g = Su11Element::new(c(5.0 / 3.0, 0.0), c(4.0 / 3.0, 0.0)).unwrap();
        let out = mobius_apply(&g, &diag(&[0.0, 0.0])).unwrap();
        assert!((out.matrix() - DMatrix::identity(2, 2) * c(0.8, 0.0)).norm() < 1e-15);
        let a = shift();
        assert_eq!(mobius_apply(&Su11Element::from_polar(0.0, 0.0, 0.0), &a).unwrap(), a);
        assert!(matches!(mobius_apply(&g, &diag(&[1.0, 0.0])), Err(Error::NotContraction { .. })));
    }

    #[test]
    fn numrange_simple_cases() {
        let orbit = UnitaryOrbit::new(&diag(&[1.0, -1.0]), vec![0.0, 0.3, 1.0]).unwrap();
        let e1 = DVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(numrange_transform(&diag(&[0.0, 1.0]), &e1, &orbit).unwrap()[0], c(0.0, 0.0));
        let ones = numrange_transform(&OperatorMatrix::identity(2), &e1, &orbit).unwrap();
        assert!(ones.iter().all(|z| *z == c(1.0, 0.0)));
        let bad = DVector::from_vec(vec![c(1.0, 0.0), c(1.0, 0.0)]);
        assert!(numrange_transform(&diag(&[0.0, 1.0]), &bad, &orbit).is_err());
    }

    #[test]
    fn shift_range_is_half_disc() {
        for z in numerical_range_hull(&shift(), 64).unwrap() {
            assert!((z.norm() - 0.5).abs() < 1e-9);
        }
        for z in numerical_range_hull(&diag(&[0.0, 1.0]), 16).unwrap() {
            assert!(z.im.abs() < 1e-12 && (-1e-12..=1.0 + 1e-12).contains(&z.re));
        }
        assert!(numerical_range_hull(&shift(), 2).is_err());
    }

    #[test]
    fn json_round_trip() {
        let a = OperatorMatrix::from_rows(&[vec![c(0.1, -0.2), c(1.0, 0.0)], vec![c(0.0, 0.5), c(-0.3, 0.0)]]).unwrap();
        assert_eq!(OperatorMatrix::read_json(a.to_json().as_bytes()).unwrap(), a);
    }

    #[test]
    fn rejects_non_hermitian_generator() {
        assert!(UnitaryOrbit::new(&shift(), vec![0.0]).is_err());
    }
}
