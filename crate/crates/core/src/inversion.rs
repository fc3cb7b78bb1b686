//! Invariant pairings on transforms and the inverse covariant transform.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::groups::{AffineElement, Axis, AxisKind, Group, GroupGrid};
use crate::representations::AffineRep;
use crate::signals::{QuadratureRule, SampledSignal1D};
use crate::transform::TransformResult;

/// Relative growth of the admissibility integral under 4x bin refinement
/// above which the vacuum is declared inadmissible.
pub const ADMISSIBILITY_GROWTH: f64 = 0.05;

/// Largest ratio of the b step to the smallest scale for which `π(a, b) v₀`
/// is still resolved along `b`.
pub const RESOLUTION_LIMIT: f64 = 0.5;

/// `Σ f1ᵢ · conj(f2ᵢ) · weightᵢ` over the grid, in grid order.
pub fn haar_pairing<G: Group>(f1: &TransformResult<G>, f2: &TransformResult<G>) -> Result<Complex64> {
    check_same_grid(f1, f2)?;
    Ok(pair(&f1.scalars()?, &f2.scalars()?, f1.grid().weights()))
}

/// Pairs vector-valued transforms component by component.
pub fn haar_pairing_componentwise<G: Group>(f1: &TransformResult<G>, f2: &TransformResult<G>) -> Result<Vec<Complex64>> {
    check_same_grid(f1, f2)?;
    if f1.output_dim() != f2.output_dim() {
        return Err(Error::Dimension("output dimensions differ".into()));
    }
    Ok((0..f1.output_dim())
        .map(|k| pair(&f1.component(k), &f2.component(k), f1.grid().weights()))
        .collect())
}

fn check_same_grid<G: Group>(f1: &TransformResult<G>, f2: &TransformResult<G>) -> Result<()> {
    if !f1.grid().same_points(f2.grid()) {
        return Err(Error::GridMismatch("pairing needs both transforms on the same grid".into()));
    }
    Ok(())
}

fn pair(u: &[Complex64], v: &[Complex64], w: &[f64]) -> Complex64 {
    u.iter().zip(v).zip(w).map(|((x, y), w)| x * y.conj() * *w).sum()
}

/// The Hardy pairing: a decreasing sequence of scales standing in for
/// `a → 0`, and a linear `b` axis.
#[derive(Debug, Clone, PartialEq)]
pub struct HardyPairing {
    a_sequence: Axis,
    b_axis: Axis,
}

impl HardyPairing {
    pub fn new(a_sequence: Axis, b_axis: Axis) -> Result<Self> {
        let a = a_sequence.values();
        if a.windows(2).any(|w| !(w[1] < w[0])) {
            return Err(Error::invalid("a sequence", "must be strictly decreasing"));
        }
        if a.iter().any(|&x| !(x > 0.0)) {
            return Err(Error::invalid("a sequence", "must be positive"));
        }
        if b_axis.kind() != AxisKind::Lin || b_axis.len() < 2 {
            return Err(Error::invalid("b grid", "must be linear with at least two points"));
        }
        Ok(Self { a_sequence, b_axis })
    }

    /// Parses `geo:<a0>:<ratio>:<n>` and a `lin:` b axis.
    pub fn parse(a_sequence: &str, b_axis: &str) -> Result<Self> {
        Self::new(Axis::parse(a_sequence)?, Axis::parse(b_axis)?)
    }

    pub fn a_values(&self) -> Vec<f64> {
        self.a_sequence.values()
    }

    pub fn b_axis(&self) -> &Axis {
        &self.b_axis
    }

    /// The affine product grid `a × b` the transforms must be sampled on.
    pub fn grid(&self) -> Result<GroupGrid<AffineElement>> {
        GroupGrid::from_axes(vec![("a".into(), self.a_sequence.clone()), ("b".into(), self.b_axis.clone())])
    }

    fn check(&self, grid: &GroupGrid<AffineElement>) -> Result<()> {
        if grid.axis("a") != Some(&self.a_sequence) || grid.axis("b") != Some(&self.b_axis) || grid.axes()[0].0 != "a" {
            return Err(Error::GridMismatch(format!(
                "transform grid {:?} is not the pairing grid a={},b={}",
                grid.spec(),
                self.a_sequence,
                self.b_axis
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HardyPairingValue {
    /// `∫ f1(a, b) conj(f2(a, b)) db` for each `a` of the sequence.
    pub per_a: Vec<Complex64>,
    /// Extrapolation to `a = 0` through the last three scales.
    pub limit: Complex64,
    /// Whether successive differences are non-increasing.
    pub converged: bool,
}

/// `lim_{a→0} ∫ f1(a, b) conj(f2(a, b)) db`.
pub fn hardy_pairing(
    f1: &TransformResult<AffineElement>,
    f2: &TransformResult<AffineElement>,
    pairing: &HardyPairing,
) -> Result<HardyPairingValue> {
    check_same_grid(f1, f2)?;
    pairing.check(f1.grid())?;
    let (u, v) = (f1.scalars()?, f2.scalars()?);
    let nb = pairing.b_axis.len();
    let db = pairing.b_axis.step().unwrap_or(1.0);
    let per_a: Vec<Complex64> = u
        .chunks(nb)
        .zip(v.chunks(nb))
        .map(|(x, y)| {
            let s: Complex64 = x
                .iter()
                .zip(y)
                .enumerate()
                .map(|(j, (p, q))| p * q.conj() * QuadratureRule::TRAPEZOID.node_weight(j, nb))
                .sum();
            s * db
        })
        .collect();
    let a = pairing.a_values();
    let diffs: Vec<f64> = per_a.windows(2).map(|w| (w[1] - w[0]).norm()).collect();
    Ok(HardyPairingValue {
        limit: extrapolate_to_zero(&a, &per_a),
        converged: non_increasing(&diffs),
        per_a,
    })
}

fn non_increasing(d: &[f64]) -> bool {
    d.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12) + 1e-15)
}

/// Neville's scheme at `a = 0` through the last (up to) three points.
pub fn extrapolate_to_zero(a: &[f64], y: &[Complex64]) -> Complex64 {
    let k = a.len().min(3);
    let (a, y) = (&a[a.len() - k..], &y[y.len() - k..]);
    let mut p: Vec<Complex64> = y.to_vec();
    for level in 1..k {
        for i in 0..k - level {
            let (xi, xj) = (a[i], a[i + level]);
            // P(0) from P_{i..j-1} and P_{i+1..j}
            p[i] = (p[i + 1] * xi - p[i] * xj) / (xi - xj);
        }
    }
    p[0]
}

/// `C = ½ ∫ |V̂₀(ω)|² / |ω| dω` on a zero-padded DFT grid with `pad`× the
/// samples of `v0`. The `ω = 0` bin is excluded.
fn admissibility_sum(v0: &SampledSignal1D, pad: usize) -> f64 {
    let n = v0.len() * pad;
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    buf[..v0.len()].copy_from_slice(v0.values());
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let dw = 2.0 * PI / (n as f64 * v0.dx());
    let dx = v0.dx();
    (1..n)
        .map(|k| {
            let m = if k <= n / 2 { k } else { n - k } as f64;
            (buf[k] * dx).norm_sqr() / (m * dw) * dw
        })
        .sum::<f64>()
        * 0.5
}

/// The admissibility constant of a vacuum, or an error if it grows under
/// refinement of the frequency bins (a vacuum with nonzero mean).
pub fn admissibility_constant(v0: &SampledSignal1D) -> Result<f64> {
    let coarse = admissibility_sum(v0, 4);
    let fine = admissibility_sum(v0, 16);
    if !(coarse > 0.0) || (fine - coarse) / coarse > ADMISSIBILITY_GROWTH {
        return Err(Error::InadmissibleVacuum { coarse, fine });
    }
    Ok(fine)
}

/// Uniform output grid for reconstructions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutputGrid {
    pub x0: f64,
    pub dx: f64,
    pub n: usize,
}

impl OutputGrid {
    pub fn like(s: &SampledSignal1D) -> Self {
        Self {
            x0: s.x0(),
            dx: s.dx(),
            n: s.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructionReport {
    pub result: SampledSignal1D,
    /// Relative L² error against the reference, when one was given. For the
    /// Hardy route it is measured after dividing out `scalar_gain`.
    pub residual: Option<f64>,
    /// Least-squares `γ` in `result ≈ γ · reference`.
    pub scalar_gain: Option<Complex64>,
    pub a_sequence: Vec<f64>,
    pub converged: bool,
}

impl ReconstructionReport {
    pub fn to_json(&self) -> String {
        let gain = self.scalar_gain;
        let value = serde_json::json!({
            "residual": self.residual,
            "scalar_gain_re": gain.map(|g| g.re),
            "scalar_gain_im": gain.map(|g| g.im),
            "a_sequence": self.a_sequence,
            "converged": self.converged,
        });
        serde_json::to_string_pretty(&value).expect("report is plain data")
    }
}

fn l2(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Fits `γ` in `result ≈ γ·reference` and returns it with the relative
/// residual, raw or after dividing out `γ`.
fn compare(result: &SampledSignal1D, reference: &SampledSignal1D, remove_gain: bool) -> Result<(Complex64, f64)> {
    let r = result.resample_like(reference)?;
    let (u, v) = (r.values(), reference.values());
    let vv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    if vv == 0.0 {
        return Err(Error::invalid("reference", "reference signal is zero"));
    }
    let gamma: Complex64 = u.iter().zip(v).map(|(x, y)| x * y.conj()).sum::<Complex64>() / vv;
    let scaled: Vec<Complex64> = if remove_gain {
        if gamma.norm() == 0.0 {
            return Ok((gamma, 1.0));
        }
        u.iter().zip(v).map(|(x, y)| x / gamma - y).collect()
    } else {
        u.iter().zip(v).map(|(x, y)| x - y).collect()
    };
    Ok((gamma, l2(&scaled) / vv.sqrt()))
}

/// `f(x) = (1/C) Σᵢ W(gᵢ) [π(gᵢ)v₀](x) weightᵢ`, the reconstruction formula
/// over the Haar measure. `reference`, when given, both fixes the output
/// grid and is compared against.
pub fn inverse_haar(
    w: &TransformResult<AffineElement>,
    rep: &AffineRep,
    v0: &SampledSignal1D,
    out: OutputGrid,
    reference: Option<&SampledSignal1D>,
) -> Result<ReconstructionReport> {
    let c = admissibility_constant(v0)?;
    let values = w.scalars()?;
    let coeffs: Vec<(AffineElement, Complex64)> = w
        .grid()
        .elements()
        .iter()
        .zip(&values)
        .zip(w.grid().weights())
        .filter(|((_, v), _)| v.norm() > 0.0)
        .map(|((g, v), wt)| (*g, v * (wt / c)))
        .collect();
    let result = SampledSignal1D::new(
        out.x0,
        out.dx,
        (0..out.n)
            .into_par_iter()
            .map(|k| {
                let x = out.x0 + k as f64 * out.dx;
                coeffs.iter().map(|(g, cf)| cf * rep.eval_at(g, v0, x)).sum()
            })
            .collect(),
    )?;
    let (scalar_gain, residual) = match reference {
        Some(r) => {
            let (g, res) = compare(&result, r, false)?;
            (Some(g), Some(res))
        }
        None => (None, None),
    };
    Ok(ReconstructionReport {
        result,
        residual,
        scalar_gain,
        a_sequence: Vec::new(),
        converged: true,
    })
}

/// Reconstruction through the Hardy pairing. At each scale `a` of the
/// sequence `R_a(x) = ∫ W(a, b) [π_q(a, b) v₀](x) db`, with `q` the exponent
/// dual to the one of `rep`; the scales are then extrapolated pointwise to
/// `a = 0`. The overall constant is fitted against `reference`.
pub fn inverse_hardy(
    w: &TransformResult<AffineElement>,
    rep: &AffineRep,
    v0: &SampledSignal1D,
    pairing: &HardyPairing,
    out: OutputGrid,
    reference: Option<&SampledSignal1D>,
) -> Result<ReconstructionReport> {
    pairing.check(w.grid())?;
    let values = w.scalars()?;
    let a = pairing.a_values();
    let db = pairing.b_axis.step().unwrap_or(1.0);
    let a_min = a[a.len() - 1];
    let step = db.max(out.dx) / a_min;
    if step > RESOLUTION_LIMIT {
        return Err(Error::UnresolvedVacuum {
            a_min,
            step,
            limit: RESOLUTION_LIMIT,
        });
    }
    let dual = AffineRep::new(rep.p().conjugate());
    let b = pairing.b_axis.values();
    let nb = b.len();
    let per_a: Vec<Vec<Complex64>> = a
        .iter()
        .enumerate()
        .map(|(i, &ai)| {
            let row = &values[i * nb..(i + 1) * nb];
            (0..out.n)
                .into_par_iter()
                .map(|k| {
                    let x = out.x0 + k as f64 * out.dx;
                    let s: Complex64 = row
                        .iter()
                        .zip(&b)
                        .enumerate()
                        .filter(|(_, (v, _))| v.norm() > 0.0)
                        .map(|(j, (v, &bj))| {
                            let g = AffineElement::new(ai, bj).expect("pairing scales are positive");
                            v * dual.eval_at(&g, v0, x) * QuadratureRule::TRAPEZOID.node_weight(j, nb)
                        })
                        .sum();
                    s * db
                })
                .collect()
        })
        .collect();
    let diffs: Vec<f64> = per_a
        .windows(2)
        .map(|w| l2(&w[1].iter().zip(&w[0]).map(|(x, y)| x - y).collect::<Vec<_>>()))
        .collect();
    let limit: Vec<Complex64> = (0..out.n)
        .map(|k| {
            let ys: Vec<Complex64> = per_a.iter().map(|r| r[k]).collect();
            extrapolate_to_zero(&a, &ys)
        })
        .collect();
    let result = SampledSignal1D::new(out.x0, out.dx, limit)?;
    let (scalar_gain, residual) = match reference {
        Some(r) => {
            let (g, res) = compare(&result, r, true)?;
            (Some(g), Some(res))
        }
        None => (None, None),
    };
    Ok(ReconstructionReport {
        result,
        residual,
        scalar_gain,
        a_sequence: a,
        converged: non_increasing(&diffs),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fiducials::{Fiducial, FiducialKind};
    use crate::signals::Exponent;
    use crate::transform::covariant_transform;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn mexican_hat() -> SampledSignal1D {
        SampledSignal1D::on_window(-20.0, 20.0, 0.02, |x| c((1.0 - x * x) * (-x * x / 2.0).exp())).unwrap()
    }

    #[test]
    fn admissibility_of_mexican_hat_is_pi() {
        let cpsi = admissibility_constant(&mexican_hat()).unwrap();
        assert!((cpsi - PI).abs() < 1e-3 * PI, "{cpsi}");
    }

    #[test]
    fn gaussian_vacuum_is_inadmissible() {
        let g = SampledSignal1D::on_window(-20.0, 20.0, 0.02, |x| c((-x * x / 2.0).exp())).unwrap();
        assert!(matches!(admissibility_constant(&g), Err(Error::InadmissibleVacuum { .. })));
    }

    #[test]
    fn neville_is_exact_on_quadratics() {
        let a = [0.4, 0.2, 0.1, 0.05];
        let y: Vec<Complex64> = a.iter().map(|x| c(3.0 - x + 2.0 * x * x)).collect();
        assert!((extrapolate_to_zero(&a, &y) - c(3.0)).norm() < 1e-12);
        assert_eq!(extrapolate_to_zero(&[0.5], &[c(2.0)]), c(2.0));
    }

    #[test]
    fn hardy_pairing_of_cauchy_transform() {
        // W(a, b) = f(b + i a) for f = 1/(t+i)², so ∫|W|² db = π / (2 (1+a)³)
        let f = SampledSignal1D::on_window(-400.0, 400.0, 0.01, |t| {
            let z = Complex64::new(t, 1.0);
            1.0 / (z * z)
        })
        .unwrap();
        let pairing = HardyPairing::parse("geo:0.1:0.5:4", "lin:-30:30:1201").unwrap();
        let grid = pairing.grid().unwrap();
        let w = covariant_transform(&AffineRep::new(Exponent::Infinity), &Fiducial::new(FiducialKind::CauchyPlus), &f, &grid)
            .unwrap();
        let v = hardy_pairing(&w, &w, &pairing).unwrap();
        for (a, i) in pairing.a_values().iter().zip(&v.per_a) {
            assert!((i.re - PI / (2.0 * (1.0 + a).powi(3))).abs() < 5e-3, "a = {a}: {i}");
        }
        assert!(v.converged);
        assert!((v.limit.re - PI / 2.0).abs() < 1e-2, "{}", v.limit);
        let zero = w.with_scalars(vec![c(0.0); w.grid().len()]).unwrap();
        assert!(hardy_pairing(&w, &zero, &pairing).unwrap().per_a.iter().all(|z| *z == c(0.0)));
    }

    #[test]
    fn haar_pairing_basic() {
        let f = mexican_hat();
        let grid = GroupGrid::parse("affine:a=log:0.5:4:5,b=lin:-3:3:7").unwrap();
        let w = covariant_transform(&AffineRep::new(Exponent::Finite(2.0)), &Fiducial::inner_product(f.clone(), "v0"), &f, &grid)
            .unwrap();
        let ww = haar_pairing(&w, &w).unwrap();
        assert!(ww.re > 0.0 && ww.im == 0.0);
        let zero = w.with_scalars(vec![c(0.0); w.grid().len()]).unwrap();
        assert_eq!(haar_pairing(&w, &zero).unwrap(), c(0.0));
    }

    #[test]
    fn zero_transform_reconstructs_zero() {
        let v0 = mexican_hat();
        let grid = GroupGrid::parse("affine:a=log:0.5:4:5,b=lin:-3:3:7").unwrap();
        let w = covariant_transform(&AffineRep::new(Exponent::Finite(2.0)), &Fiducial::inner_product(v0.clone(), "v0"), &v0.zeros_like(), &grid)
            .unwrap();
        let rep = AffineRep::new(Exponent::Finite(2.0));
        let r = inverse_haar(&w, &rep, &v0, OutputGrid::like(&v0), Some(&v0)).unwrap();
        assert!(r.result.values().iter().all(|z| *z == c(0.0)));
        assert_eq!(r.residual, Some(1.0));
    }

    #[test]
    fn unresolved_scale_is_rejected() {
        let v0 = SampledSignal1D::on_window(-100.0, 100.0, 0.1, |x| 1.0 / (Complex64::new(0.0, 2.0 * PI) * Complex64::new(x, 1.0))).unwrap();
        let pairing = HardyPairing::parse("geo:0.1:0.5:3", "lin:-5:5:101").unwrap();
        let grid = pairing.grid().unwrap();
        let w = covariant_transform(&AffineRep::new(Exponent::Infinity), &Fiducial::new(FiducialKind::CauchyPlus), &v0, &grid).unwrap();
        let out = OutputGrid { x0: -5.0, dx: 0.1, n: 101 };
        let err = inverse_hardy(&w, &AffineRep::new(Exponent::Infinity), &v0, &pairing, out, None).unwrap_err();
        assert!(matches!(err, Error::UnresolvedVacuum { .. }));
    }
}
