//! Uniformly sampled signals on the line and the plane.
//!
//! Values between samples are linear (bilinear in 2D) interpolants; outside
//! the sampled window a signal is zero.

use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Snap distance (in units of the spacing) under which a point is a node.
const NODE_SNAP: f64 = 1e-9;

/// Relative tolerance on uniform spacing when reading CSV grids.
const CSV_SPACING_TOL: f64 = 1e-9;

/// An `L_p` exponent, `1 <= p <= ∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn finite(p: f64) -> Result<Self> {
        if !(p >= 1.0 && p.is_finite()) {
            return Err(Error::invalid("exponent", format!("p = {p} must be >= 1")));
        }
        Ok(Exponent::Finite(p))
    }

    /// `1/p`, zero for `p = ∞`.
    pub fn reciprocal(&self) -> f64 {
        match *self {
            Exponent::Finite(p) => 1.0 / p,
            Exponent::Infinity => 0.0,
        }
    }

    /// Hölder conjugate `q` with `1/p + 1/q = 1`.
    pub fn conjugate(&self) -> Exponent {
        match *self {
            Exponent::Infinity => Exponent::Finite(1.0),
            Exponent::Finite(p) if p == 1.0 => Exponent::Infinity,
            Exponent::Finite(p) => Exponent::Finite(p / (p - 1.0)),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Exponent::Infinity),
            t => {
                let p: f64 = t.parse().map_err(|_| Error::parse("exponent", t, "expected a number >= 1 or `inf`"))?;
                Exponent::finite(p).map_err(|_| Error::parse("exponent", t, "p must be >= 1"))
            }
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QuadratureKind {
    #[default]
    Trapezoid,
    Midpoint,
}

/// What an integral does beyond the sampled window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TailPolicy {
    /// The signal is zero outside its window.
    #[default]
    Truncate,
    /// Kernels with a closed-form antiderivative are integrated analytically
    /// over the tails against the constant edge values of the signal.
    RationalTail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct QuadratureRule {
    pub kind: QuadratureKind,
    pub tail: TailPolicy,
}

impl QuadratureRule {
    pub const TRAPEZOID: QuadratureRule = QuadratureRule {
        kind: QuadratureKind::Trapezoid,
        tail: TailPolicy::Truncate,
    };

    pub fn with_tail(mut self, tail: TailPolicy) -> Self {
        self.tail = tail;
        self
    }

    /// Weight of node `k` out of `n`, in units of the spacing.
    pub fn node_weight(&self, k: usize, n: usize) -> f64 {
        match self.kind {
            QuadratureKind::Trapezoid if n > 1 && (k == 0 || k == n - 1) => 0.5,
            _ => 1.0,
        }
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        let needed = match self.kind {
            QuadratureKind::Trapezoid => 2,
            QuadratureKind::Midpoint => 1,
        };
        if n < needed {
            return Err(Error::TooFewSamples { needed, got: n });
        }
        Ok(())
    }
}

/// Samples `values[k]` at `x0 + k·dx`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal1D {
    x0: f64,
    dx: f64,
    values: Vec<Complex64>,
}

impl SampledSignal1D {
    pub fn new(x0: f64, dx: f64, values: Vec<Complex64>) -> Result<Self> {
        if !(dx > 0.0 && dx.is_finite()) {
            return Err(Error::invalid("1D signal", format!("spacing dx = {dx} must be positive")));
        }
        if !x0.is_finite() {
            return Err(Error::invalid("1D signal", "left endpoint must be finite"));
        }
        if values.is_empty() {
            return Err(Error::invalid("1D signal", "needs at least one sample"));
        }
        Ok(Self { x0, dx, values })
    }

    pub fn from_fn(x0: f64, dx: f64, n: usize, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let values = (0..n).map(|k| f(x0 + k as f64 * dx)).collect();
        Self::new(x0, dx, values)
    }

    pub fn from_real_fn(x0: f64, dx: f64, n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::from_fn(x0, dx, n, |x| Complex64::new(f(x), 0.0))
    }

    /// Samples on `[lo, hi]` with spacing `dx` (the right end is rounded to the grid).
    pub fn on_window(lo: f64, hi: f64, dx: f64, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let n = ((hi - lo) / dx).round() as usize + 1;
        Self::from_fn(lo, dx, n, f)
    }

    pub fn zeros_like(&self) -> Self {
        Self {
            values: vec![Complex64::new(0.0, 0.0); self.values.len()],
            ..*self
        }
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn x(&self, k: usize) -> f64 {
        self.x0 + k as f64 * self.dx
    }

    pub fn x_end(&self) -> f64 {
        self.x(self.values.len() - 1)
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn same_grid(&self, other: &Self) -> bool {
        self.x0 == other.x0 && self.dx == other.dx && self.values.len() == other.values.len()
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            values: self.values.iter().map(|&v| f(v)).collect(),
            ..*self
        }
    }

    /// `alpha·self + beta·other` on a shared grid.
    pub fn combine(&self, alpha: Complex64, other: &Self, beta: Complex64) -> Result<Self> {
        if !self.same_grid(other) {
            return Err(Error::GridMismatch("linear combination needs identical grids".into()));
        }
        Ok(Self {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&u, &v)| alpha * u + beta * v)
                .collect(),
            ..*self
        })
    }

    /// Linear interpolation inside the window, zero outside; exact at nodes.
    pub fn evaluate(&self, x: f64) -> Complex64 {
        let zero = Complex64::new(0.0, 0.0);
        let last = self.values.len() - 1;
        let u = (x - self.x0) / self.dx;
        if !(u >= -NODE_SNAP && u <= last as f64 + NODE_SNAP) {
            return zero;
        }
        let r = u.round();
        if (u - r).abs() <= NODE_SNAP {
            return self.values[(r.max(0.0) as usize).min(last)];
        }
        let k = u.floor() as usize;
        let t = u - k as f64;
        self.values[k] * (1.0 - t) + self.values[k + 1] * t
    }

    /// Resamples onto the grid `x0 + k·dx`, `k < n`.
    pub fn resample(&self, x0: f64, dx: f64, n: usize) -> Result<Self> {
        if x0 == self.x0 && dx == self.dx && n == self.values.len() {
            return Ok(self.clone());
        }
        Self::from_fn(x0, dx, n, |x| self.evaluate(x))
    }

    pub fn resample_like(&self, target: &Self) -> Result<Self> {
        self.resample(target.x0, target.dx, target.len())
    }

    pub fn integrate(&self, rule: QuadratureRule) -> Result<Complex64> {
        let n = self.values.len();
        rule.check_len(n)?;
        let sum: Complex64 = self
            .values
            .iter()
            .enumerate()
            .map(|(k, &v)| v * rule.node_weight(k, n))
            .sum();
        Ok(sum * self.dx)
    }

    /// Quadrature approximation of `‖s‖_p`; `p = ∞` is the largest sample modulus.
    pub fn lp_norm(&self, p: Exponent) -> Result<f64> {
        match p {
            Exponent::Infinity => Ok(self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)),
            Exponent::Finite(p) => {
                if !(p >= 1.0) {
                    return Err(Error::invalid("exponent", format!("p = {p} must be >= 1")));
                }
                let n = self.values.len();
                let rule = QuadratureRule::TRAPEZOID;
                if n == 1 {
                    return Ok(self.values[0].norm() * self.dx.powf(1.0 / p));
                }
                let s: f64 = self
                    .values
                    .iter()
                    .enumerate()
                    .map(|(k, v)| v.norm().powf(p) * rule.node_weight(k, n))
                    .sum();
                Ok((s * self.dx).powf(1.0 / p))
            }
        }
    }

    /// Reads the `x,re,im` CSV format.
    pub fn read_csv(reader: impl Read) -> Result<Self> {
        let rows = read_rows(reader, &["x", "re", "im"])?;
        let xs: Vec<f64> = rows.iter().map(|r| r[0]).collect();
        let (x0, dx) = uniform_axis("x", &xs)?;
        let values = rows.iter().map(|r| Complex64::new(r[1], r[2])).collect();
        Self::new(x0, dx, values)
    }

    pub fn write_csv(&self, writer: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        let io = |e: csv::Error| Error::format("signal CSV", e.to_string());
        w.write_record(["x", "re", "im"]).map_err(io)?;
        for (k, v) in self.values.iter().enumerate() {
            w.write_record([self.x(k).to_string(), v.re.to_string(), v.im.to_string()])
                .map_err(io)?;
        }
        w.flush().map_err(|e| Error::format("signal CSV", e.to_string()))
    }
}

/// Samples on a rectangle, row-major: `values[j·nx + i]` sits at
/// `(x0 + i·dx, y0 + j·dy)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal2D {
    origin: (f64, f64),
    dx: f64,
    dy: f64,
    nx: usize,
    ny: usize,
    values: Vec<Complex64>,
}

impl SampledSignal2D {
    pub fn new(origin: (f64, f64), dx: f64, dy: f64, nx: usize, values: Vec<Complex64>) -> Result<Self> {
        if !(dx > 0.0 && dy > 0.0 && dx.is_finite() && dy.is_finite()) {
            return Err(Error::invalid("2D signal", "spacings must be positive"));
        }
        if nx == 0 || values.is_empty() || values.len() % nx != 0 {
            return Err(Error::invalid("2D signal", "values must fill a non-empty nx × ny grid"));
        }
        let ny = values.len() / nx;
        Ok(Self {
            origin,
            dx,
            dy,
            nx,
            ny,
            values,
        })
    }

    pub fn from_fn(
        origin: (f64, f64),
        (dx, dy): (f64, f64),
        (nx, ny): (usize, usize),
        f: impl Fn(f64, f64) -> Complex64,
    ) -> Result<Self> {
        let mut values = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            let y = origin.1 + j as f64 * dy;
            for i in 0..nx {
                values.push(f(origin.0 + i as f64 * dx, y));
            }
        }
        Self::new(origin, dx, dy, nx, values)
    }

    /// Square grid on `[-half, half]²` with spacing `h`; the axes are grid lines.
    pub fn centered(half: f64, h: f64, f: impl Fn(f64, f64) -> Complex64) -> Result<Self> {
        let m = (half / h).round() as usize;
        let n = 2 * m + 1;
        let o = -(m as f64) * h;
        Self::from_fn((o, o), (h, h), (n, n), f)
    }

    pub fn origin(&self) -> (f64, f64) {
        self.origin
    }

    pub fn spacing(&self) -> (f64, f64) {
        (self.dx, self.dy)
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn point(&self, i: usize, j: usize) -> (f64, f64) {
        (self.origin.0 + i as f64 * self.dx, self.origin.1 + j as f64 * self.dy)
    }

    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.values[j * self.nx + i]
    }

    pub fn with_values(&self, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != self.values.len() {
            return Err(Error::GridMismatch("replacement values must match the grid".into()));
        }
        Ok(Self { values, ..self.clone() })
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            values: self.values.iter().map(|&v| f(v)).collect(),
            ..self.clone()
        }
    }

    pub fn same_grid(&self, other: &Self) -> bool {
        self.origin == other.origin
            && self.dx == other.dx
            && self.dy == other.dy
            && self.nx == other.nx
            && self.ny == other.ny
    }

    pub fn combine(&self, alpha: Complex64, other: &Self, beta: Complex64) -> Result<Self> {
        if !self.same_grid(other) {
            return Err(Error::GridMismatch("linear combination needs identical grids".into()));
        }
        self.with_values(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(&u, &v)| alpha * u + beta * v)
                .collect(),
        )
    }

    /// Index and fraction along one axis; `None` outside the window.
    fn locate(u: f64, n: usize) -> Option<(usize, f64)> {
        let last = (n - 1) as f64;
        if !(u >= -NODE_SNAP && u <= last + NODE_SNAP) {
            return None;
        }
        let r = u.round();
        if (u - r).abs() <= NODE_SNAP {
            return Some(((r.max(0.0) as usize).min(n - 1), 0.0));
        }
        let k = u.floor() as usize;
        Some((k, u - k as f64))
    }

    /// Bilinear interpolation, zero outside the sampled rectangle.
    pub fn evaluate(&self, x: f64, y: f64) -> Complex64 {
        let zero = Complex64::new(0.0, 0.0);
        let Some((i, tx)) = Self::locate((x - self.origin.0) / self.dx, self.nx) else {
            return zero;
        };
        let Some((j, ty)) = Self::locate((y - self.origin.1) / self.dy, self.ny) else {
            return zero;
        };
        let row = |j: usize| {
            if tx == 0.0 {
                self.at(i, j)
            } else {
                self.at(i, j) * (1.0 - tx) + self.at(i + 1, j) * tx
            }
        };
        if ty == 0.0 {
            row(j)
        } else {
            row(j) * (1.0 - ty) + row(j + 1) * ty
        }
    }

    /// Tensor-product rule over the rectangle.
    pub fn integrate(&self, rule: QuadratureRule) -> Result<Complex64> {
        rule.check_len(self.nx)?;
        rule.check_len(self.ny)?;
        let mut sum = Complex64::new(0.0, 0.0);
        for j in 0..self.ny {
            let wy = rule.node_weight(j, self.ny);
            for i in 0..self.nx {
                sum += self.at(i, j) * (wy * rule.node_weight(i, self.nx));
            }
        }
        Ok(sum * self.dx * self.dy)
    }

    /// Reads the `x,y,re,im` CSV format (x varying fastest).
    pub fn read_csv(reader: impl Read) -> Result<Self> {
        let rows = read_rows(reader, &["x", "y", "re", "im"])?;
        let y_first = rows[0][1];
        let nx = rows.iter().take_while(|r| r[1] == y_first).count();
        if rows.len() % nx != 0 {
            return Err(Error::format("2D signal CSV", "rows do not form a complete grid"));
        }
        let ny = rows.len() / nx;
        let xs: Vec<f64> = rows[..nx].iter().map(|r| r[0]).collect();
        let ys: Vec<f64> = (0..ny).map(|j| rows[j * nx][1]).collect();
        let (x0, dx) = uniform_axis("x", &xs)?;
        let (y0, dy) = uniform_axis("y", &ys)?;
        for (k, r) in rows.iter().enumerate() {
            let (i, j) = (k % nx, k / nx);
            if r[0] != xs[i] || r[1] != ys[j] {
                return Err(Error::format("2D signal CSV", format!("row {} breaks the x-fastest grid order", k + 2)));
            }
        }
        let values = rows.iter().map(|r| Complex64::new(r[2], r[3])).collect();
        Self::new((x0, y0), dx, dy, nx, values)
    }

    pub fn write_csv(&self, writer: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        let io = |e: csv::Error| Error::format("2D signal CSV", e.to_string());
        w.write_record(["x", "y", "re", "im"]).map_err(io)?;
        for j in 0..self.ny {
            for i in 0..self.nx {
                let (x, y) = self.point(i, j);
                let v = self.at(i, j);
                w.write_record([x.to_string(), y.to_string(), v.re.to_string(), v.im.to_string()])
                    .map_err(io)?;
            }
        }
        w.flush().map_err(|e| Error::format("2D signal CSV", e.to_string()))
    }
}

fn read_rows(reader: impl Read, header: &[&str]) -> Result<Vec<Vec<f64>>> {
    let what = "signal CSV";
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(reader);
    let got = r.headers().map_err(|e| Error::format(what, e.to_string()))?.clone();
    let got: Vec<&str> = got.iter().map(str::trim).collect();
    if got != header {
        return Err(Error::format(what, format!("header {:?}, expected {:?}", got, header)));
    }
    let mut rows = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| Error::format(what, e.to_string()))?;
        let row = rec
            .iter()
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::format(what, format!("non-numeric field on data row {}", line + 1)))?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::format(what, "no data rows"));
    }
    Ok(rows)
}

/// Checks that `xs` is strictly increasing and uniform; returns `(x0, dx)`.
fn uniform_axis(name: &str, xs: &[f64]) -> Result<(f64, f64)> {
    let what = "signal CSV";
    if xs.len() == 1 {
        return Ok((xs[0], 1.0));
    }
    let n = xs.len();
    let (first, last) = (xs[0], xs[n - 1]);
    let dx = (last - first) / (n - 1) as f64;
    if !(dx > 0.0) {
        return Err(Error::format(what, format!("{name} must be strictly increasing")));
    }
    let tol = CSV_SPACING_TOL * (first.abs() + last.abs() + dx);
    for (k, &x) in xs.iter().enumerate() {
        if k > 0 && x <= xs[k - 1] {
            return Err(Error::format(what, format!("{name} must be strictly increasing (row {})", k + 1)));
        }
        if (x - (first + k as f64 * dx)).abs() > tol {
            return Err(Error::format(what, format!("{name} spacing is not uniform at {name} = {x}")));
        }
    }
    Ok((first, dx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn indicator(lo: f64, hi: f64) -> impl Fn(f64) -> f64 {
        move |x| if (lo..=hi).contains(&x) { 1.0 } else { 0.0 }
    }

    #[test]
    fn evaluate_reproduces_linear() {
        let s = SampledSignal1D::from_real_fn(0.0, 0.1, 11, |x| x).unwrap();
        assert!((s.evaluate(0.5) - c(0.5)).norm() < 1e-15);
        assert!((s.evaluate(0.537) - c(0.537)).norm() < 1e-14);
        assert_eq!(s.evaluate(1.5), c(0.0));
        assert_eq!(s.evaluate(-0.01), c(0.0));
        assert_eq!(s.evaluate(s.x(3)), s.values()[3]);
    }

    #[test]
    fn integrate_indicator_and_odd() {
        let dx = 0.01;
        let s = SampledSignal1D::on_window(-2.0, 2.0, dx, |x| c(indicator(-1.0, 1.0)(x))).unwrap();
        let v = s.integrate(QuadratureRule::TRAPEZOID).unwrap();
        assert!((v.re - 2.0).abs() <= dx + 1e-12);
        let odd = SampledSignal1D::on_window(-1.0, 1.0, 0.01, c).unwrap();
        assert!(odd.integrate(QuadratureRule::TRAPEZOID).unwrap().norm() < 1e-12);
    }

    #[test]
    fn integrate_lorentzian_against_arctan() {
        let s = SampledSignal1D::on_window(-50.0, 50.0, 0.01, |x| c(1.0 / (1.0 + x * x))).unwrap();
        let v = s.integrate(QuadratureRule::TRAPEZOID).unwrap().re;
        let exact_window = 2.0 * 50f64.atan();
        assert!((v - exact_window).abs() < 1e-5);
        // the dropped tails carry 2·(π/2 − atan 50) ≈ 0.04
        assert!((PI - v - 2.0 * (PI / 2.0 - 50f64.atan())).abs() < 1e-5);
    }

    #[test]
    fn too_few_samples() {
        let s = SampledSignal1D::new(0.0, 1.0, vec![c(1.0)]).unwrap();
        assert!(matches!(
            s.integrate(QuadratureRule::TRAPEZOID),
            Err(Error::TooFewSamples { needed: 2, got: 1 })
        ));
        let mid = QuadratureRule {
            kind: QuadratureKind::Midpoint,
            ..Default::default()
        };
        assert_eq!(s.integrate(mid).unwrap(), c(1.0));
    }

    #[test]
    fn norms() {
        let dx = 0.001;
        let box01 = SampledSignal1D::on_window(-1.0, 2.0, dx, |x| c(indicator(0.0, 1.0)(x))).unwrap();
        assert!((box01.lp_norm(Exponent::Finite(2.0)).unwrap() - 1.0).abs() <= dx);
        assert_eq!(box01.zeros_like().lp_norm(Exponent::Finite(2.0)).unwrap(), 0.0);
        assert_eq!(box01.lp_norm(Exponent::Infinity).unwrap(), 1.0);
        let g = SampledSignal1D::on_window(-8.0, 8.0, 0.01, |x| c((-x * x).exp())).unwrap();
        let expected = (PI / 2.0).powf(0.25);
        assert!((g.lp_norm(Exponent::Finite(2.0)).unwrap() - expected).abs() < 1e-3);
        assert!(g.lp_norm(Exponent::Finite(0.5)).is_err());
    }

    #[test]
    fn exponent_parsing() {
        assert_eq!("inf".parse::<Exponent>().unwrap(), Exponent::Infinity);
        assert_eq!("2".parse::<Exponent>().unwrap(), Exponent::Finite(2.0));
        assert!("0.5".parse::<Exponent>().is_err());
        assert_eq!(Exponent::Finite(2.0).conjugate(), Exponent::Finite(2.0));
        assert_eq!(Exponent::Infinity.conjugate(), Exponent::Finite(1.0));
    }

    #[test]
    fn bilinear_reproduces_bilinear() {
        let s = SampledSignal2D::centered(1.0, 0.1, |x, y| c(1.0 + 2.0 * x - y + 0.5 * x * y)).unwrap();
        let (x, y) = (0.33, -0.71);
        assert!((s.evaluate(x, y) - c(1.0 + 2.0 * x - y + 0.5 * x * y)).norm() < 1e-13);
        assert_eq!(s.evaluate(1.5, 0.0), c(0.0));
    }

    #[test]
    fn csv_rejects_nonuniform() {
        let text = "x,re,im\n0,1,0\n0.1,1,0\n0.25,1,0\n";
        assert!(SampledSignal1D::read_csv(text.as_bytes()).is_err());
        let text = "t,re,im\n0,1,0\n";
        assert!(SampledSignal1D::read_csv(text.as_bytes()).is_err());
    }

    #[test]
    fn csv_2d_round_trip() {
        let s = SampledSignal2D::from_fn((-1.0, 0.5), (0.25, 0.5), (5, 3), |x, y| Complex64::new(x, y)).unwrap();
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let back = SampledSignal2D::read_csv(buf.as_slice()).unwrap();
        assert_eq!(back.shape(), (5, 3));
        assert_eq!(back.values(), s.values());
    }
}
