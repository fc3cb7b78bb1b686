//! Finite grids on groups and their textual specs.
//!
//! Grammar: `<group>:<axis>=<kind>:<lo>:<hi>:<n>[,<axis>=...]` with
//! `kind ∈ {lin, log, geo}`. `lin` and `log` run from `lo` to `hi` with `n`
//! points (`n = 1` is the single point `lo`); `log` needs `lo, hi > 0`.
//! `geo:<a0>:<ratio>:<n>` is the geometric sequence `a0 * ratio^k`.
//! The first axis written is the outermost loop of the element order.

use std::collections::HashMap;
use std::fmt;

use super::{AffineElement, EuclideanMotion, Group};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisKind {
    Lin,
    Log,
    Geo,
}

impl AxisKind {
    fn as_str(self) -> &'static str {
        match self {
            AxisKind::Lin => "lin",
            AxisKind::Log => "log",
            AxisKind::Geo => "geo",
        }
    }
}

/// One sampled coordinate axis.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    kind: AxisKind,
    lo: f64,
    hi: f64,
    n: usize,
}

fn parse_f64(what: &'static str, tok: &str) -> Result<f64> {
    let v: f64 = tok
        .trim()
        .parse()
        .map_err(|_| Error::parse(what, tok, "not a number"))?;
    if !v.is_finite() {
        return Err(Error::parse(what, tok, "not finite"));
    }
    Ok(v)
}

impl Axis {
    pub fn lin(lo: f64, hi: f64, n: usize) -> Result<Self> {
        Self::checked(AxisKind::Lin, lo, hi, n)
    }

    pub fn log(lo: f64, hi: f64, n: usize) -> Result<Self> {
        Self::checked(AxisKind::Log, lo, hi, n)
    }

    pub fn geo(a0: f64, ratio: f64, n: usize) -> Result<Self> {
        Self::checked(AxisKind::Geo, a0, ratio, n)
    }

    fn checked(kind: AxisKind, lo: f64, hi: f64, n: usize) -> Result<Self> {
        let axis = Self { kind, lo, hi, n };
        let tok = axis.to_string();
        if n == 0 {
            return Err(Error::parse("axis", tok, "point count must be >= 1"));
        }
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(Error::parse("axis", tok, "bounds must be finite"));
        }
        match kind {
            AxisKind::Log if !(lo > 0.0 && hi > 0.0) => {
                return Err(Error::parse("axis", tok, "log axis needs lo, hi > 0"))
            }
            AxisKind::Geo if !(lo > 0.0 && hi > 0.0) => {
                return Err(Error::parse("axis", tok, "geo axis needs a0, ratio > 0"))
            }
            _ => {}
        }
        Ok(axis)
    }

    /// Parses `kind:lo:hi:n`.
    pub fn parse(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.trim().split(':').collect();
        if parts.len() != 4 {
            return Err(Error::parse("axis", spec, "expected <kind>:<lo>:<hi>:<n>"));
        }
        let kind = match parts[0] {
            "lin" => AxisKind::Lin,
            "log" => AxisKind::Log,
            "geo" => AxisKind::Geo,
            other => return Err(Error::parse("axis", other, "kind must be lin, log or geo")),
        };
        let lo = parse_f64("axis", parts[1])?;
        let hi = parse_f64("axis", parts[2])?;
        let n: usize = parts[3]
            .trim()
            .parse()
            .map_err(|_| Error::parse("axis", parts[3], "point count must be a positive integer"))?;
        Self::checked(kind, lo, hi, n)
    }

    pub fn kind(&self) -> AxisKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn value(&self, k: usize) -> f64 {
        if self.n == 1 {
            return self.lo;
        }
        let t = k as f64 / (self.n - 1) as f64;
        match self.kind {
            AxisKind::Lin => {
                if k == self.n - 1 {
                    self.hi
                } else {
                    self.lo + (self.hi - self.lo) * t
                }
            }
            AxisKind::Log => {
                if k == 0 {
                    self.lo
                } else if k == self.n - 1 {
                    self.hi
                } else {
                    (self.lo.ln() + (self.hi / self.lo).ln() * t).exp()
                }
            }
            AxisKind::Geo => self.lo * self.hi.powi(k as i32),
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.n).map(|k| self.value(k)).collect()
    }

    /// Local cell width around each point; 1 for a single-point axis.
    ///
    /// For `log` and `geo` axes this is `x · Δ(ln x)`, the differential of
    /// the logarithmic spacing.
    pub fn cell_widths(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![1.0];
        }
        let steps = (self.n - 1) as f64;
        match self.kind {
            AxisKind::Lin => vec![((self.hi - self.lo) / steps).abs(); self.n],
            AxisKind::Log => {
                let dl = (self.hi / self.lo).ln().abs() / steps;
                self.values().into_iter().map(|x| x * dl).collect()
            }
            AxisKind::Geo => {
                let dl = self.hi.ln().abs();
                self.values().into_iter().map(|x| x * dl).collect()
            }
        }
    }

    /// Uniform spacing of a `lin` axis (1 when it has a single point).
    pub fn step(&self) -> Option<f64> {
        match (self.kind, self.n) {
            (AxisKind::Lin, 1) => Some(1.0),
            (AxisKind::Lin, n) => Some((self.hi - self.lo) / (n - 1) as f64),
            _ => None,
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}:{}", self.kind.as_str(), self.lo, self.hi, self.n)
    }
}

/// Groups that can be sampled from named axes.
pub trait GridGroup: Group {
    /// Builds the element at one point of the axis product; `coords` maps axis
    /// names to values. Also returns the Haar density there.
    fn from_axis_point(coords: &HashMap<&str, f64>) -> Result<(Self, f64)>;

    /// Checks axis names; returns an error naming the first bad token.
    fn validate_axes(names: &[&str]) -> Result<()>;

    /// Inverse of [`Group::coords`].
    fn from_coords(coords: &[f64]) -> Result<Self>;
}

impl GridGroup for AffineElement {
    fn from_axis_point(coords: &HashMap<&str, f64>) -> Result<(Self, f64)> {
        let g = AffineElement::new(coords["a"], coords["b"])?;
        Ok((g, g.haar_density()))
    }

    fn validate_axes(names: &[&str]) -> Result<()> {
        for n in names {
            if !matches!(*n, "a" | "b") {
                return Err(Error::parse("affine grid", *n, "affine axes are a and b"));
            }
        }
        for needed in ["a", "b"] {
            if !names.contains(&needed) {
                return Err(Error::parse("affine grid", needed, "axis missing"));
            }
        }
        Ok(())
    }

    fn from_coords(coords: &[f64]) -> Result<Self> {
        match coords {
            [a, b] => AffineElement::new(*a, *b),
            _ => Err(Error::invalid("affine element", "expected coordinates a, b")),
        }
    }
}

impl GridGroup for EuclideanMotion {
    fn from_axis_point(coords: &HashMap<&str, f64>) -> Result<(Self, f64)> {
        let theta = coords.get("theta").copied().unwrap_or(0.0);
        let g = match coords.get("d") {
            Some(&d) => EuclideanMotion::line(theta, d)?,
            None => EuclideanMotion::new(
                theta,
                coords.get("tx").copied().unwrap_or(0.0),
                coords.get("ty").copied().unwrap_or(0.0),
            )?,
        };
        // E(2) is unimodular: dθ dtx dty (or dθ dd along the normal).
        Ok((g, 1.0))
    }

    fn validate_axes(names: &[&str]) -> Result<()> {
        for n in names {
            if !matches!(*n, "theta" | "tx" | "ty" | "d") {
                return Err(Error::parse("euclidean grid", *n, "euclidean axes are theta, tx, ty or theta, d"));
            }
        }
        if names.contains(&"d") && (names.contains(&"tx") || names.contains(&"ty")) {
            return Err(Error::parse("euclidean grid", "d", "d cannot be combined with tx/ty"));
        }
        Ok(())
    }

    fn from_coords(coords: &[f64]) -> Result<Self> {
        match coords {
            [theta, tx, ty] => EuclideanMotion::new(*theta, *tx, *ty),
            _ => Err(Error::invalid("euclidean motion", "expected coordinates theta, tx, ty")),
        }
    }
}

/// An ordered finite sample of a group with positive Haar weights.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupGrid<G> {
    elements: Vec<G>,
    weights: Vec<f64>,
    axes: Vec<(String, Axis)>,
}

impl<G: Group> GroupGrid<G> {
    /// A grid from explicit elements and weights (no textual spec).
    pub fn from_parts(elements: Vec<G>, weights: Vec<f64>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::invalid("group grid", "needs at least one element"));
        }
        if elements.len() != weights.len() {
            return Err(Error::invalid("group grid", "one weight per element"));
        }
        if let Some(w) = weights.iter().find(|w| !(**w > 0.0 && w.is_finite())) {
            return Err(Error::invalid("group grid", format!("weight {w} is not positive")));
        }
        Ok(Self {
            elements,
            weights,
            axes: Vec::new(),
        })
    }

    pub fn elements(&self) -> &[G] {
        &self.elements
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn axes(&self) -> &[(String, Axis)] {
        &self.axes
    }

    pub fn axis(&self, name: &str) -> Option<&Axis> {
        self.axes.iter().find(|(n, _)| n == name).map(|(_, a)| a)
    }

    /// Canonical textual spec; `None` for grids built from explicit parts.
    pub fn spec(&self) -> Option<String> {
        if self.axes.is_empty() {
            return None;
        }
        let body: Vec<String> = self.axes.iter().map(|(n, a)| format!("{n}={a}")).collect();
        Some(format!("{}:{}", G::NAME, body.join(",")))
    }

    /// Same elements and weights, the textual spec aside.
    pub fn same_points(&self, other: &Self) -> bool {
        self.elements == other.elements && self.weights == other.weights
    }
}

impl<G: GridGroup> GroupGrid<G> {
    pub fn from_axes(axes: Vec<(String, Axis)>) -> Result<Self> {
        let names: Vec<&str> = axes.iter().map(|(n, _)| n.as_str()).collect();
        G::validate_axes(&names)?;
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::parse("grid", *n, "axis given twice"));
            }
        }
        let values: Vec<Vec<f64>> = axes.iter().map(|(_, a)| a.values()).collect();
        let widths: Vec<Vec<f64>> = axes.iter().map(|(_, a)| a.cell_widths()).collect();
        let total: usize = values.iter().map(Vec::len).product();

        let mut elements = Vec::with_capacity(total);
        let mut weights = Vec::with_capacity(total);
        let mut idx = vec![0usize; axes.len()];
        for _ in 0..total {
            let mut coords = HashMap::new();
            let mut cell = 1.0;
            for (k, name) in names.iter().enumerate() {
                coords.insert(*name, values[k][idx[k]]);
                cell *= widths[k][idx[k]];
            }
            let (g, density) = G::from_axis_point(&coords)?;
            elements.push(g);
            weights.push(density * cell);
            // odometer, last axis fastest
            for k in (0..idx.len()).rev() {
                idx[k] += 1;
                if idx[k] < values[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
        let mut grid = Self::from_parts(elements, weights)?;
        grid.axes = axes;
        Ok(grid)
    }

    /// Parses `<group>:<axis>=<kind>:<lo>:<hi>:<n>[,...]` for this group.
    pub fn parse(spec: &str) -> Result<Self> {
        let (group, body) = spec
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::parse("grid", spec, "expected <group>:<axes>"))?;
        if group != G::NAME {
            return Err(Error::parse("grid", group, format!("expected group `{}`", G::NAME)));
        }
        let mut axes = Vec::new();
        for part in body.split(',') {
            let (name, axis) = part
                .split_once('=')
                .ok_or_else(|| Error::parse("grid", part, "expected <axis>=<kind>:<lo>:<hi>:<n>"))?;
            axes.push((name.trim().to_string(), Axis::parse(axis)?));
        }
        Self::from_axes(axes)
    }
}

/// A parsed grid of any supported group.
#[derive(Debug, Clone)]
pub enum AnyGrid {
    Affine(GroupGrid<AffineElement>),
    Euclidean(GroupGrid<EuclideanMotion>),
}

impl AnyGrid {
    pub fn len(&self) -> usize {
        match self {
            AnyGrid::Affine(g) => g.len(),
            AnyGrid::Euclidean(g) => g.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Parses a grid spec, dispatching on the group name.
pub fn make_grid(spec: &str) -> Result<AnyGrid> {
    let group = spec.trim().split(':').next().unwrap_or_default();
    match group {
        "affine" => Ok(AnyGrid::Affine(GroupGrid::parse(spec)?)),
        "euclidean" => Ok(AnyGrid::Euclidean(GroupGrid::parse(spec)?)),
        other => Err(Error::parse("grid", other, "unknown group (affine, euclidean)")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_axis_endpoints() {
        let AnyGrid::Affine(g) = make_grid("affine:a=log:0.1:10:3,b=lin:-1:1:3").unwrap() else {
            panic!("expected affine grid");
        };
        assert_eq!(g.len(), 9);
        let a: Vec<f64> = g.elements().iter().step_by(3).map(|e| e.a()).collect();
        assert_eq!(a[0], 0.1);
        assert!((a[1] - 1.0).abs() < 1e-15);
        assert_eq!(a[2], 10.0);
    }

    #[test]
    fn single_point_grid_is_identity() {
        let g = GroupGrid::<AffineElement>::parse("affine:a=log:1:1:1,b=lin:0:0:1").unwrap();
        assert_eq!(g.elements(), &[AffineElement::identity()]);
    }

    #[test]
    fn weight_at_unit_dilation() {
        let g = GroupGrid::<AffineElement>::parse("affine:a=lin:0.5:1.5:3,b=lin:0:1:5").unwrap();
        // middle a is 1, Δa = 0.5, Δb = 0.25
        let i = g.elements().iter().position(|e| e.a() == 1.0).unwrap();
        assert!((g.weights()[i] - 0.5 * 0.25).abs() < 1e-15);
    }

    #[test]
    fn bad_tokens_are_named() {
        let err = make_grid("affine:a=cubic:0.1:10:3,b=lin:-1:1:3").unwrap_err().to_string();
        assert!(err.contains("cubic"), "{err}");
        let err = make_grid("affine:a=log:-1:10:3,b=lin:-1:1:3").unwrap_err().to_string();
        assert!(err.contains("log:-1:10:3"), "{err}");
        let err = make_grid("affine:a=log:1:10:3,c=lin:-1:1:3").unwrap_err().to_string();
        assert!(err.contains("`c`"), "{err}");
        let err = make_grid("affine:a=log:1:10:x,b=lin:-1:1:3").unwrap_err().to_string();
        assert!(err.contains("`x`"), "{err}");
        assert!(make_grid("sl3:a=lin:0:1:2").is_err());
    }

    #[test]
    fn spec_round_trips() {
        let spec = "affine:a=log:0.05:20:7,b=lin:-3.5:2.25:11";
        let g = GroupGrid::<AffineElement>::parse(spec).unwrap();
        assert_eq!(g.spec().unwrap(), spec);
        let again = GroupGrid::<AffineElement>::parse(&g.spec().unwrap()).unwrap();
        assert_eq!(g, again);
    }

    #[test]
    fn euclidean_line_grid() {
        let AnyGrid::Euclidean(g) = make_grid("euclidean:theta=lin:0:1.5:4,d=lin:-0.5:0.5:3").unwrap() else {
            panic!("expected euclidean grid");
        };
        assert_eq!(g.len(), 12);
        assert!(make_grid("euclidean:theta=lin:0:1:2,d=lin:0:1:2,tx=lin:0:1:2").is_err());
    }

    #[test]
    fn geo_axis() {
        let a = Axis::parse("geo:0.1:0.5:4").unwrap();
        assert_eq!(a.values(), vec![0.1, 0.05, 0.025, 0.0125]);
    }
}
