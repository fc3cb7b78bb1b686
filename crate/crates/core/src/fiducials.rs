//! Fiducial operators: the maps from signals to `ℂ` or `ℂ²` that a covariant
//! transform evaluates at every group element.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::signals::{QuadratureRule, SampledSignal1D, SampledSignal2D, TailPolicy};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CauchySign {
    /// `1/(t − i)`: boundary values of the upper half-plane.
    Plus,
    /// `1/(t + i)`: boundary values of the lower half-plane.
    Minus,
}

impl CauchySign {
    fn s(self) -> f64 {
        match self {
            CauchySign::Plus => 1.0,
            CauchySign::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FiducialKind {
    CauchyPlus,
    CauchyMinus,
    /// `c₊·F₊ + c₋·F₋`.
    Combo { plus: Complex64, minus: Complex64 },
    /// `(F₊, F₋)`, the only vector-valued fiducial.
    Jump,
    PoissonKernel,
    /// `f -> ⟨f, v₀⟩`; `label` is how the vector was named (e.g. its file).
    InnerProduct { v0: SampledSignal1D, label: String },
    /// `f -> ½∫₋₁¹ |f|`, homogeneous but not linear.
    IntervalAverage,
    /// `f -> ∫ f(x, 0) dx` on plane signals.
    RadonLine,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fiducial {
    kind: FiducialKind,
    rule: QuadratureRule,
}

impl Fiducial {
    pub fn new(kind: FiducialKind) -> Self {
        Self {
            kind,
            rule: QuadratureRule::TRAPEZOID,
        }
    }

    pub fn with_rule(mut self, rule: QuadratureRule) -> Self {
        self.rule = rule;
        self
    }

    pub fn inner_product(v0: SampledSignal1D, label: impl Into<String>) -> Self {
        Self::new(FiducialKind::InnerProduct { v0, label: label.into() })
    }

    pub fn kind(&self) -> &FiducialKind {
        &self.kind
    }

    pub fn rule(&self) -> QuadratureRule {
        self.rule
    }

    pub fn output_dim(&self) -> usize {
        match self.kind {
            FiducialKind::Jump => 2,
            _ => 1,
        }
    }

    pub fn is_linear(&self) -> bool {
        !matches!(self.kind, FiducialKind::IntervalAverage)
    }

    /// Parses a CLI fiducial spec; `load` resolves the path of `inner:<path>`.
    pub fn parse(spec: &str, load: impl FnOnce(&str) -> Result<SampledSignal1D>) -> Result<Self> {
        let spec = spec.trim();
        let kind = match spec {
            "cauchy+" => FiducialKind::CauchyPlus,
            "cauchy-" => FiducialKind::CauchyMinus,
            "jump" => FiducialKind::Jump,
            "poisson" => FiducialKind::PoissonKernel,
            "avg" => FiducialKind::IntervalAverage,
            "radonline" => FiducialKind::RadonLine,
            s if s.starts_with("combo:") => {
                let parts: Vec<&str> = s["combo:".len()..].split(':').collect();
                if parts.len() != 2 {
                    return Err(Error::parse("fiducial", s, "expected combo:<c+>:<c->"));
                }
                let coef = |t: &str| {
                    t.trim()
                        .parse::<Complex64>()
                        .map_err(|_| Error::parse("fiducial", t, "coefficient is not a complex number"))
                };
                FiducialKind::Combo {
                    plus: coef(parts[0])?,
                    minus: coef(parts[1])?,
                }
            }
            s if s.starts_with("inner:") => {
                let path = &s["inner:".len()..];
                if path.is_empty() {
                    return Err(Error::parse("fiducial", s, "inner needs a path to v0"));
                }
                FiducialKind::InnerProduct {
                    v0: load(path)?,
                    label: path.to_string(),
                }
            }
            other => {
                return Err(Error::parse(
                    "fiducial",
                    other,
                    "expected cauchy+, cauchy-, combo:<c+>:<c->, jump, poisson, inner:<path>, avg or radonline",
                ))
            }
        };
        Ok(Self::new(kind))
    }
}

impl fmt::Display for Fiducial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FiducialKind::CauchyPlus => write!(f, "cauchy+"),
            FiducialKind::CauchyMinus => write!(f, "cauchy-"),
            FiducialKind::Combo { plus, minus } => write!(f, "combo:{plus}:{minus}"),
            FiducialKind::Jump => write!(f, "jump"),
            FiducialKind::PoissonKernel => write!(f, "poisson"),
            FiducialKind::InnerProduct { label, .. } => write!(f, "inner:{label}"),
            FiducialKind::IntervalAverage => write!(f, "avg"),
            FiducialKind::RadonLine => write!(f, "radonline"),
        }
    }
}

/// Evaluation of a fiducial on one kind of signal.
pub trait Evaluate<S> {
    /// Vector of length `output_dim`.
    fn evaluate(&self, s: &S) -> Result<Vec<Complex64>>;

    /// Bound on the error from cutting the integral at the sampled window.
    fn truncation_budget(&self, _s: &S) -> f64 {
        0.0
    }
}

impl Evaluate<SampledSignal1D> for Fiducial {
    fn evaluate(&self, f: &SampledSignal1D) -> Result<Vec<Complex64>> {
        let rule = self.rule;
        Ok(match &self.kind {
            FiducialKind::CauchyPlus => vec![eval_cauchy(CauchySign::Plus, f, rule)?],
            FiducialKind::CauchyMinus => vec![eval_cauchy(CauchySign::Minus, f, rule)?],
            FiducialKind::Combo { plus, minus } => vec![eval_combo(*plus, *minus, f, rule)?],
            FiducialKind::Jump => eval_jump(f, rule)?.to_vec(),
            FiducialKind::PoissonKernel => vec![eval_poisson_kernel(f, rule)?],
            FiducialKind::InnerProduct { v0, .. } => vec![eval_inner_product(v0, f, rule)?],
            FiducialKind::IntervalAverage => vec![Complex64::new(eval_interval_average(f), 0.0)],
            FiducialKind::RadonLine => {
                return Err(Error::Dimension("radonline acts on plane signals, got a line signal".into()))
            }
        })
    }

    fn truncation_budget(&self, f: &SampledSignal1D) -> f64 {
        match &self.kind {
            FiducialKind::CauchyPlus | FiducialKind::CauchyMinus | FiducialKind::Jump => cauchy_truncation_budget(f),
            FiducialKind::Combo { plus, minus } => (plus.norm() + minus.norm()) * cauchy_truncation_budget(f),
            FiducialKind::PoissonKernel => poisson_truncation_budget(f),
            _ => 0.0,
        }
    }
}

impl Evaluate<SampledSignal2D> for Fiducial {
    fn evaluate(&self, f: &SampledSignal2D) -> Result<Vec<Complex64>> {
        match self.kind {
            FiducialKind::RadonLine => Ok(vec![eval_radon_line(f, self.rule)?]),
            _ => Err(Error::Dimension(format!("fiducial `{self}` acts on line signals, got a plane signal"))),
        }
    }
}

/// `dx · Σ w_k f_k K(x_k)` with the rule's node weights.
fn kernel_sum(f: &SampledSignal1D, rule: QuadratureRule, kernel: impl Fn(f64) -> Complex64) -> Result<Complex64> {
    let n = f.len();
    rule.check_len(n)?;
    let sum: Complex64 = f
        .values()
        .iter()
        .enumerate()
        .map(|(k, &v)| v * kernel(f.x(k)) * rule.node_weight(k, n))
        .sum();
    Ok(sum * f.dx())
}

fn edge_values(f: &SampledSignal1D) -> (Complex64, Complex64) {
    (f.values()[0], f.values()[f.len() - 1])
}

/// `F±(f) = (1/2πi) ∫ f(t) dt / (t ∓ i)`.
///
/// With [`TailPolicy::RationalTail`] the tails are closed with the mean edge
/// value and the principal-value antiderivative `ln(t ∓ i)`.
pub fn eval_cauchy(sign: CauchySign, f: &SampledSignal1D, rule: QuadratureRule) -> Result<Complex64> {
    let s = sign.s();
    let mut total = kernel_sum(f, rule, |t| 1.0 / Complex64::new(t, -s))?;
    if rule.tail == TailPolicy::RationalTail {
        let (fl, fr) = edge_values(f);
        let (l, r) = (f.x0(), f.x_end());
        let tail = I * (s * PI) + Complex64::new(l, -s).ln() - Complex64::new(r, -s).ln();
        total += (fl + fr) * 0.5 * tail;
    }
    Ok(total / (2.0 * PI * I))
}

/// Tail bound for the Cauchy kernels, assuming `|f(t)| <= |f(e)|·(e/t)²`
/// beyond each window edge `e`: each side contributes at most `|f(e)|/(4π)`.
pub fn cauchy_truncation_budget(f: &SampledSignal1D) -> f64 {
    let (fl, fr) = edge_values(f);
    (fl.norm() + fr.norm()) / (4.0 * PI)
}

pub fn eval_combo(plus: Complex64, minus: Complex64, f: &SampledSignal1D, rule: QuadratureRule) -> Result<Complex64> {
    let [fp, fm] = eval_jump(f, rule)?;
    Ok(plus * fp + minus * fm)
}

pub fn eval_jump(f: &SampledSignal1D, rule: QuadratureRule) -> Result<[Complex64; 2]> {
    Ok([
        eval_cauchy(CauchySign::Plus, f, rule)?,
        eval_cauchy(CauchySign::Minus, f, rule)?,
    ])
}

/// Harmonic extension at `i`: `(1/π) ∫ f(t) dt / (1 + t²)`.
pub fn eval_poisson_kernel(f: &SampledSignal1D, rule: QuadratureRule) -> Result<Complex64> {
    let mut total = kernel_sum(f, rule, |t| Complex64::new(1.0 / (1.0 + t * t), 0.0))?;
    if rule.tail == TailPolicy::RationalTail {
        let (fl, fr) = edge_values(f);
        total += fr * (PI / 2.0 - f.x_end().atan()) + fl * (f.x0().atan() + PI / 2.0);
    }
    Ok(total / PI)
}

/// Kernel mass beyond the window times the edge moduli.
pub fn poisson_truncation_budget(f: &SampledSignal1D) -> f64 {
    let (fl, fr) = edge_values(f);
    (fr.norm() * (PI / 2.0 - f.x_end().atan()) + fl.norm() * (f.x0().atan() + PI / 2.0)) / PI
}

/// `⟨f, v₀⟩ = ∫ f(t) conj(v₀(t)) dt` on the grid of `f` (`v₀` is interpolated).
pub fn eval_inner_product(v0: &SampledSignal1D, f: &SampledSignal1D, rule: QuadratureRule) -> Result<Complex64> {
    if v0.same_grid(f) {
        let n = f.len();
        rule.check_len(n)?;
        let sum: Complex64 = f
            .values()
            .iter()
            .zip(v0.values())
            .enumerate()
            .map(|(k, (&u, &v))| u * v.conj() * rule.node_weight(k, n))
            .sum();
        return Ok(sum * f.dx());
    }
    kernel_sum(f, rule, |t| v0.evaluate(t).conj())
}

/// `½ ∫₋₁¹ |f(x)| dx`, trapezoid on the modulus. The part of `[-1, 1]`
/// outside the sampled window contributes zero.
pub fn eval_interval_average(f: &SampledSignal1D) -> f64 {
    let lo = f.x0().max(-1.0);
    let hi = f.x_end().min(1.0);
    if !(hi > lo) {
        return 0.0;
    }
    let first = ((lo - f.x0()) / f.dx()).floor() as usize + 1;
    let mut xs = vec![lo];
    let mut k = first;
    while k < f.len() && f.x(k) < hi {
        if f.x(k) > lo {
            xs.push(f.x(k));
        }
        k += 1;
    }
    xs.push(hi);
    let ys: Vec<f64> = xs.iter().map(|&x| f.evaluate(x).norm()).collect();
    let integral: f64 = xs
        .windows(2)
        .zip(ys.windows(2))
        .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
        .sum();
    0.5 * integral
}

/// `∫ f(x, 0) dx` over the sampled x-range; zero when `y = 0` misses the window.
pub fn eval_radon_line(f: &SampledSignal2D, rule: QuadratureRule) -> Result<Complex64> {
    let (nx, _) = f.shape();
    rule.check_len(nx)?;
    let (dx, _) = f.spacing();
    let sum: Complex64 = (0..nx)
        .map(|i| f.evaluate(f.point(i, 0).0, 0.0) * rule.node_weight(i, nx))
        .sum();
    Ok(sum * dx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn lorentz(lo: f64, hi: f64, dx: f64) -> SampledSignal1D {
        SampledSignal1D::on_window(lo, hi, dx, |t| c(1.0 / (1.0 + t * t))).unwrap()
    }

    const T: QuadratureRule = QuadratureRule::TRAPEZOID;

    #[test]
    fn cauchy_of_lorentzian() {
        // residues: F₊ = 1/4, F₋ = −1/4
        let f = lorentz(-200.0, 200.0, 0.01);
        assert!((eval_cauchy(CauchySign::Plus, &f, T).unwrap() - c(0.25)).norm() < 1e-3);
        assert!((eval_cauchy(CauchySign::Minus, &f, T).unwrap() - c(-0.25)).norm() < 1e-3);
        assert_eq!(eval_cauchy(CauchySign::Plus, &f.zeros_like(), T).unwrap(), c(0.0));
    }

    #[test]
    fn rational_tail_tightens_constant() {
        let one = SampledSignal1D::on_window(-20.0, 20.0, 0.01, |_| c(1.0)).unwrap();
        let truncated = eval_poisson_kernel(&one, T).unwrap();
        let budget = poisson_truncation_budget(&one);
        assert!((truncated - c(1.0)).norm() <= budget + 1e-6);
        let closed = eval_poisson_kernel(&one, T.with_tail(TailPolicy::RationalTail)).unwrap();
        assert!((closed - c(1.0)).norm() < 1e-8);
        // a constant has F₊ = ½ in the principal-value sense
        let fp = eval_cauchy(CauchySign::Plus, &one, T.with_tail(TailPolicy::RationalTail)).unwrap();
        assert!((fp - c(0.5)).norm() < 1e-8, "{fp}");
    }

    #[test]
    fn combo_and_jump() {
        let f = lorentz(-200.0, 200.0, 0.01);
        let [fp, fm] = eval_jump(&f, T).unwrap();
        assert!((fp - c(0.25)).norm() < 1e-3 && (fm - c(-0.25)).norm() < 1e-3);
        assert_eq!(eval_combo(c(1.0), c(0.0), &f, T).unwrap(), fp);
        let diff = eval_combo(c(1.0), c(-1.0), &f, T).unwrap();
        assert_eq!(diff, fp - fm);
        assert!((diff - c(0.5)).norm() < 2e-3);
        assert_eq!(eval_combo(c(1.0), c(1.0), &f, T).unwrap(), fp + fm);
        assert_eq!(eval_combo(c(1.0), c(-1.0), &f.zeros_like(), T).unwrap(), c(0.0));
    }

    #[test]
    fn poisson_kernel_values() {
        let f = lorentz(-200.0, 200.0, 0.01);
        assert!((eval_poisson_kernel(&f, T).unwrap() - c(0.5)).norm() < 1e-3);
        let odd = SampledSignal1D::on_window(-30.0, 30.0, 0.01, |t| c(t * (-t * t).exp())).unwrap();
        assert!(eval_poisson_kernel(&odd, T).unwrap().norm() < 1e-10);
        assert!(eval_poisson_kernel(&f, T).unwrap().im.abs() < 1e-12);
    }

    #[test]
    fn upper_hardy_annihilated_by_minus() {
        let f = SampledSignal1D::on_window(-200.0, 200.0, 0.01, |t| {
            let z = Complex64::new(t, 1.0);
            1.0 / (z * z)
        })
        .unwrap();
        assert!(eval_cauchy(CauchySign::Minus, &f, T).unwrap().norm() < 2e-3);
        // F₊ reproduces f(i) = −1/4
        assert!((eval_cauchy(CauchySign::Plus, &f, T).unwrap() - c(-0.25)).norm() < 1e-3);
    }

    #[test]
    fn inner_products() {
        let g = SampledSignal1D::on_window(-10.0, 10.0, 0.01, |x| c((-x * x).exp())).unwrap();
        let expected = (std::f64::consts::PI / 2.0).sqrt();
        assert!((eval_inner_product(&g, &g, T).unwrap() - c(expected)).norm() < 1e-3);
        let odd = SampledSignal1D::on_window(-10.0, 10.0, 0.01, |x| c(x * (-x * x).exp())).unwrap();
        assert!(eval_inner_product(&g, &odd, T).unwrap().norm() < 1e-10);
        // different grids: v0 interpolated
        let coarse = SampledSignal1D::on_window(-10.0, 10.0, 0.02, |x| c((-x * x).exp())).unwrap();
        assert!((eval_inner_product(&coarse, &g, T).unwrap() - c(expected)).norm() < 1e-3);
    }

    #[test]
    fn interval_average_properties() {
        let dx = 0.01;
        let box_ = SampledSignal1D::on_window(-3.0, 3.0, dx, |x| c(if x.abs() <= 1.0 { 1.0 } else { 0.0 })).unwrap();
        assert!((eval_interval_average(&box_) - 1.0).abs() <= dx);
        assert_eq!(eval_interval_average(&box_.zeros_like()), 0.0);
        let f = SampledSignal1D::on_window(-3.0, 3.0, dx, |x| Complex64::new(x.sin(), x.cos() * 0.3)).unwrap();
        assert_eq!(eval_interval_average(&f.map(|v| v * 2.0)), 2.0 * eval_interval_average(&f));
        // window entirely outside [-1, 1]
        let far = SampledSignal1D::on_window(5.0, 6.0, dx, |_| c(1.0)).unwrap();
        assert_eq!(eval_interval_average(&far), 0.0);
    }

    #[test]
    fn radon_line_disc() {
        let h = 0.01;
        let disc = SampledSignal2D::centered(1.5, h, |x, y| c(if x * x + y * y <= 1.0 { 1.0 } else { 0.0 })).unwrap();
        assert!((eval_radon_line(&disc, T).unwrap() - c(2.0)).norm() < 2.0 * h);
        let zero = disc.map(|_| c(0.0));
        assert_eq!(eval_radon_line(&zero, T).unwrap(), c(0.0));
    }

    #[test]
    fn dimension_mismatch() {
        let f = lorentz(-1.0, 1.0, 0.1);
        assert!(matches!(
            Fiducial::new(FiducialKind::RadonLine).evaluate(&f),
            Err(Error::Dimension(_))
        ));
        let p = SampledSignal2D::centered(1.0, 0.1, |_, _| c(1.0)).unwrap();
        assert!(matches!(
            Fiducial::new(FiducialKind::CauchyPlus).evaluate(&p),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn spec_strings() {
        let no_file = |_: &str| -> Result<SampledSignal1D> { panic!("no file expected") };
        for s in ["cauchy+", "cauchy-", "jump", "poisson", "avg", "radonline"] {
            assert_eq!(Fiducial::parse(s, no_file).unwrap().to_string(), s);
        }
        let combo = Fiducial::parse("combo:1:-1", no_file).unwrap();
        assert_eq!(combo.kind(), &FiducialKind::Combo { plus: c(1.0), minus: c(-1.0) });
        assert_eq!(Fiducial::parse("jump", no_file).unwrap().output_dim(), 2);
        let inner = Fiducial::parse("inner:v0.csv", |p| {
            assert_eq!(p, "v0.csv");
            SampledSignal1D::new(0.0, 1.0, vec![c(1.0)])
        })
        .unwrap();
        assert_eq!(inner.to_string(), "inner:v0.csv");
        let err = Fiducial::parse("cauchy*", no_file).unwrap_err().to_string();
        assert!(err.contains("cauchy*"));
    }
}
