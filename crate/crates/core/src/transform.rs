//! The covariant transform `v̂(g) = F(π(g⁻¹) v)` over a group grid.

use std::io::{Read, Write};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fiducials::{eval_interval_average, Evaluate, Fiducial, FiducialKind};
use crate::groups::{AffineElement, Axis, AxisKind, EuclideanMotion, GridGroup, Group, GroupGrid};
use crate::representations::{AffineRep, EuclideanRep, Representation};
use crate::signals::{Exponent, SampledSignal1D, SampledSignal2D};

#[derive(Debug, Clone, PartialEq)]
pub struct TransformMeta {
    pub rep: String,
    pub fiducial: String,
    /// Largest window-truncation budget reported by the fiducial over the grid.
    pub truncation_budget: f64,
}

/// Values of a covariant transform on a grid, one vector per element.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformResult<G> {
    grid: GroupGrid<G>,
    values: Vec<Vec<Complex64>>,
    meta: TransformMeta,
}

impl<G: Group> TransformResult<G> {
    pub fn new(grid: GroupGrid<G>, values: Vec<Vec<Complex64>>, meta: TransformMeta) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "{} values for {} grid elements",
                values.len(),
                grid.len()
            )));
        }
        let dim = values.first().map_or(0, Vec::len);
        if dim == 0 || values.iter().any(|v| v.len() != dim) {
            return Err(Error::invalid("transform result", "every value needs the same positive length"));
        }
        Ok(Self { grid, values, meta })
    }

    pub fn grid(&self) -> &GroupGrid<G> {
        &self.grid
    }

    pub fn values(&self) -> &[Vec<Complex64>] {
        &self.values
    }

    pub fn meta(&self) -> &TransformMeta {
        &self.meta
    }

    pub fn output_dim(&self) -> usize {
        self.values[0].len()
    }

    /// Component `k` of every value, in grid order.
    pub fn component(&self, k: usize) -> Vec<Complex64> {
        self.values.iter().map(|v| v[k]).collect()
    }

    /// The values of a scalar transform; errors on vector-valued results.
    pub fn scalars(&self) -> Result<Vec<Complex64>> {
        if self.output_dim() != 1 {
            return Err(Error::Dimension(format!(
                "expected a scalar transform, got output dimension {}",
                self.output_dim()
            )));
        }
        Ok(self.component(0))
    }

    /// Same grid and meta, new scalar values.
    pub fn with_scalars(&self, values: Vec<Complex64>) -> Result<Self> {
        Self::new(self.grid.clone(), values.into_iter().map(|v| vec![v]).collect(), self.meta.clone())
    }

    /// CSV with a `#` header line carrying the specs, then one row per element.
    pub fn write_csv(&self, mut writer: impl Write) -> Result<()> {
        let io = |e: std::io::Error| Error::Io {
            path: "<transform csv>".into(),
            source: e,
        };
        writeln!(
            writer,
            "# group={};grid={};rep={};fiducial={};budget={:e}",
            G::NAME,
            self.grid.spec().unwrap_or_else(|| "-".into()),
            self.meta.rep,
            self.meta.fiducial,
            self.meta.truncation_budget
        )
        .map_err(io)?;
        let mut w = csv::Writer::from_writer(writer);
        let mut header: Vec<String> = G::coord_names().iter().map(|s| s.to_string()).collect();
        for k in 0..self.output_dim() {
            header.push(format!("re_{k}"));
            header.push(format!("im_{k}"));
        }
        w.write_record(&header).map_err(csv_err)?;
        for (g, v) in self.grid.elements().iter().zip(&self.values) {
            let mut row: Vec<String> = g.coords().iter().map(|c| c.to_string()).collect();
            for z in v {
                row.push(z.re.to_string());
                row.push(z.im.to_string());
            }
            w.write_record(&row).map_err(csv_err)?;
        }
        w.flush().map_err(io)?;
        Ok(())
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::format("transform csv", e.to_string())
}

impl<G: GridGroup> TransformResult<G> {
    /// Reads what [`TransformResult::write_csv`] wrote. Grids with a spec are
    /// rebuilt from it (restoring the Haar weights); otherwise unit weights.
    pub fn read_csv(mut reader: impl Read) -> Result<Self> {
        let mut text = String::new();
        reader.read_to_string(&mut text).map_err(|e| Error::Io {
            path: "<transform csv>".into(),
            source: e,
        })?;
        let mut meta = TransformMeta {
            rep: String::new(),
            fiducial: String::new(),
            truncation_budget: 0.0,
        };
        let mut grid_spec = None;
        if let Some(line) = text.lines().next().and_then(|l| l.strip_prefix('#')) {
            for field in line.trim().split(';') {
                let (key, value) = field.split_once('=').unwrap_or((field, ""));
                match key.trim() {
                    "group" if value != G::NAME => {
                        return Err(Error::format("transform csv", format!("group `{value}`, expected `{}`", G::NAME)))
                    }
                    "grid" if value != "-" => grid_spec = Some(value.to_string()),
                    "rep" => meta.rep = value.to_string(),
                    "fiducial" => meta.fiducial = value.to_string(),
                    "budget" => {
                        meta.truncation_budget = value
                            .parse()
                            .map_err(|_| Error::format("transform csv", format!("bad budget `{value}`")))?
                    }
                    _ => {}
                }
            }
        }
        let mut rdr = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let header = rdr.headers().map_err(csv_err)?.clone();
        let nc = G::coord_names().len();
        let names: Vec<&str> = header.iter().collect();
        if names.len() < nc + 2 || names[..nc] != *G::coord_names() || (names.len() - nc) % 2 != 0 {
            return Err(Error::format("transform csv", format!("unexpected header {names:?}")));
        }
        let dim = (names.len() - nc) / 2;
        let mut elements = Vec::new();
        let mut values = Vec::new();
        for (line, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(csv_err)?;
            let nums = rec
                .iter()
                .map(|t| t.parse::<f64>())
                .collect::<std::result::Result<Vec<f64>, _>>()
                .map_err(|_| Error::format("transform csv", format!("non-numeric field in row {}", line + 1)))?;
            elements.push(G::from_coords(&nums[..nc])?);
            values.push((0..dim).map(|k| Complex64::new(nums[nc + 2 * k], nums[nc + 2 * k + 1])).collect());
        }
        let grid = match grid_spec {
            Some(spec) => {
                let grid = GroupGrid::<G>::parse(&spec)?;
                if grid.elements() != elements.as_slice() {
                    return Err(Error::format("transform csv", "rows do not match the grid in the header"));
                }
                grid
            }
            None => {
                let n = elements.len();
                GroupGrid::from_parts(elements, vec![1.0; n])?
            }
        };
        Self::new(grid, values, meta)
    }
}

/// Evaluates `F(π(g⁻¹) v)` at each element, in order.
pub fn transform_at<R>(rep: &R, fiducial: &Fiducial, v: &R::Signal, elements: &[R::Group]) -> Result<Vec<Vec<Complex64>>>
where
    R: Representation,
    Fiducial: Evaluate<R::Signal>,
{
    Ok(evaluate_all(rep, fiducial, v, elements)?.into_iter().map(|(v, _)| v).collect())
}

fn evaluate_all<R>(rep: &R, fiducial: &Fiducial, v: &R::Signal, elements: &[R::Group]) -> Result<Vec<(Vec<Complex64>, f64)>>
where
    R: Representation,
    Fiducial: Evaluate<R::Signal>,
{
    elements
        .par_iter()
        .map(|g| {
            let moved = rep.apply(&g.inverse(), v)?;
            Ok((fiducial.evaluate(&moved)?, fiducial.truncation_budget(&moved)))
        })
        .collect()
}

/// The covariant transform of `v` on `grid`.
pub fn covariant_transform<R>(
    rep: &R,
    fiducial: &Fiducial,
    v: &R::Signal,
    grid: &GroupGrid<R::Group>,
) -> Result<TransformResult<R::Group>>
where
    R: Representation,
    Fiducial: Evaluate<R::Signal>,
{
    let evaluated = evaluate_all(rep, fiducial, v, grid.elements())?;
    let budget = evaluated.iter().map(|(_, b)| *b).fold(0.0, f64::max);
    let values = evaluated.into_iter().map(|(v, _)| v).collect();
    TransformResult::new(
        grid.clone(),
        values,
        TransformMeta {
            rep: rep.descriptor(),
            fiducial: fiducial.to_string(),
            truncation_budget: budget,
        },
    )
}

/// `max_h |W(π(g)v)(h) − (Wv)(g⁻¹h)|` over the grid. The translated
/// elements `g⁻¹h` are evaluated exactly, never snapped to the grid.
pub fn check_intertwining<R>(
    rep: &R,
    fiducial: &Fiducial,
    v: &R::Signal,
    g: &R::Group,
    grid: &GroupGrid<R::Group>,
) -> Result<f64>
where
    R: Representation,
    Fiducial: Evaluate<R::Signal>,
{
    if g.is_identity() {
        return Ok(0.0);
    }
    let moved = rep.apply(g, v)?;
    let lhs = transform_at(rep, fiducial, &moved, grid.elements())?;
    let shifted: Vec<R::Group> = grid.elements().iter().map(|h| g.inverse().compose(h)).collect();
    let rhs = transform_at(rep, fiducial, v, &shifted)?;
    Ok(lhs
        .iter()
        .zip(&rhs)
        .flat_map(|(l, r)| l.iter().zip(r).map(|(x, y)| (x - y).norm()))
        .fold(0.0, f64::max))
}

/// `[W_∞ f](a, b) = ½ ∫₋₁¹ |f(a x + b)| dx = (1/2a) ∫_{b−a}^{b+a} |f|`.
pub fn maximal_average(f: &SampledSignal1D, a: f64, b: f64) -> Result<f64> {
    let g = AffineElement::new(a, b)?;
    let moved = AffineRep::new(Exponent::Infinity).apply(&g.inverse(), f)?;
    Ok(eval_interval_average(&moved))
}

/// One row of a maximal-function table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaximalPoint {
    pub b: f64,
    pub value: f64,
    /// The sampled `a` achieving the maximum (first one on ties).
    pub a_star: f64,
}

/// `M_f(b) = max_a [W_∞ f](a, b)` for each `b` of the axis.
pub fn maximal_table(f: &SampledSignal1D, b_axis: &Axis, a_values: &[f64]) -> Result<Vec<MaximalPoint>> {
    if a_values.is_empty() {
        return Err(Error::invalid("a grid", "needs at least one scale"));
    }
    if let Some(a) = a_values.iter().find(|a| !(**a > 0.0 && a.is_finite())) {
        return Err(Error::invalid("a grid", format!("scale {a} is not positive")));
    }
    b_axis
        .values()
        .par_iter()
        .map(|&b| {
            let mut best = MaximalPoint {
                b,
                value: f64::NEG_INFINITY,
                a_star: a_values[0],
            };
            for &a in a_values {
                let v = maximal_average(f, a, b)?;
                if v > best.value {
                    best.value = v;
                    best.a_star = a;
                }
            }
            Ok(best)
        })
        .collect()
}

/// The Hardy maximal function sampled on a linear `b` axis.
pub fn hardy_maximal(f: &SampledSignal1D, b_axis: &Axis, a_values: &[f64]) -> Result<SampledSignal1D> {
    let step = match (b_axis.kind(), b_axis.len()) {
        (_, 1) => 1.0,
        (AxisKind::Lin, _) => b_axis.step().unwrap_or(1.0),
        _ => return Err(Error::invalid("b grid", "the b axis must be linear")),
    };
    let table = maximal_table(f, b_axis, a_values)?;
    SampledSignal1D::new(
        b_axis.lo(),
        step,
        table.iter().map(|p| Complex64::new(p.value, 0.0)).collect(),
    )
}

/// `max_b [W_∞ f](1/2, b)` with `b` over the sample nodes of `f`.
pub fn shift_invariant_norm(f: &SampledSignal1D) -> Result<f64> {
    let values = (0..f.len())
        .into_par_iter()
        .map(|k| maximal_average(f, 0.5, f.x(k)))
        .collect::<Result<Vec<f64>>>()?;
    Ok(values.into_iter().fold(0.0, f64::max))
}

/// The Radon transform as the covariant transform of `f` under rigid
/// motions with the line fiducial: the value at `g` is `∫ f(g·(s, 0)) ds`.
pub fn radon_transform(f: &SampledSignal2D, motions: &GroupGrid<EuclideanMotion>) -> Result<TransformResult<EuclideanMotion>> {
    let fiducial = Fiducial::new(FiducialKind::RadonLine);
    let (nx, ny) = f.shape();
    let (dx, dy) = f.spacing();
    let row = (0..ny).find(|&j| f.point(0, j).1.abs() < 1e-9 * dy);
    let Some(j0) = row else {
        return covariant_transform(&EuclideanRep, &fiducial, f, motions);
    };
    // y = 0 is a sample row, so the rotated image is only needed on that row.
    let rule = fiducial.rule();
    rule.check_len(nx)?;
    let values: Vec<Vec<Complex64>> = motions
        .elements()
        .par_iter()
        .map(|g| {
            let sum: Complex64 = (0..nx)
                .map(|i| {
                    let (x, y) = g.act(f.point(i, j0));
                    f.evaluate(x, y) * rule.node_weight(i, nx)
                })
                .sum();
            vec![sum * dx]
        })
        .collect();
    TransformResult::new(
        motions.clone(),
        values,
        TransformMeta {
            rep: EuclideanRep.descriptor(),
            fiducial: fiducial.to_string(),
            truncation_budget: 0.0,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::make_grid;
    use crate::groups::AnyGrid;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn box_signal(dx: f64) -> SampledSignal1D {
        SampledSignal1D::on_window(-6.0, 6.0, dx, |x| c(if x.abs() <= 1.0 { 1.0 } else { 0.0 })).unwrap()
    }

    fn affine_grid(spec: &str) -> GroupGrid<AffineElement> {
        match make_grid(spec).unwrap() {
            AnyGrid::Affine(g) => g,
            _ => unreachable!(),
        }
    }

    #[test]
    fn zero_signal_gives_zero_transform() {
        let f = box_signal(0.01).zeros_like();
        let grid = affine_grid("affine:a=log:0.1:10:5,b=lin:-2:2:5");
        let w = covariant_transform(&AffineRep::new(Exponent::Finite(2.0)), &Fiducial::new(FiducialKind::CauchyPlus), &f, &grid)
            .unwrap();
        assert!(w.values().iter().all(|v| v[0] == c(0.0)));
        assert_eq!(w.values().len(), 25);
    }

    #[test]
    fn interval_average_value() {
        let dx = 0.01;
        let f = box_signal(dx);
        assert!((maximal_average(&f, 2.0, 0.0).unwrap() - 0.5).abs() <= dx);
    }

    #[test]
    fn maximal_of_box() {
        let dx = 0.01;
        let f = box_signal(dx);
        let a = Axis::log(0.05, 20.0, 200).unwrap().values();
        let b = Axis::lin(-4.0, 4.0, 161).unwrap();
        let m = hardy_maximal(&f, &b, &a).unwrap();
        assert!((m.evaluate(0.0).re - 1.0).abs() < 0.02);
        assert!((m.evaluate(2.0).re - 1.0 / 3.0).abs() < 0.02);
        let zero = hardy_maximal(&f.zeros_like(), &b, &a).unwrap();
        assert!(zero.values().iter().all(|v| v.re == 0.0));
        assert!(hardy_maximal(&f, &b, &[]).is_err());
    }

    #[test]
    fn shift_invariant_norm_of_box() {
        let dx = 0.01;
        let f = box_signal(dx);
        assert!((shift_invariant_norm(&f).unwrap() - 1.0).abs() <= dx);
        assert_eq!(shift_invariant_norm(&f.zeros_like()).unwrap(), 0.0);
    }

    #[test]
    fn identity_intertwining_is_exact() {
        let f = SampledSignal1D::on_window(-10.0, 10.0, 0.01, |x| c((-x * x).exp())).unwrap();
        let grid = affine_grid("affine:a=log:0.5:2:3,b=lin:-1:1:3");
        let r = check_intertwining(
            &AffineRep::new(Exponent::Finite(2.0)),
            &Fiducial::new(FiducialKind::CauchyPlus),
            &f,
            &AffineElement::identity(),
            &grid,
        )
        .unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn radon_fast_path_matches_definition() {
        let h = 0.02;
        let f = SampledSignal2D::centered(1.5, h, |x, y| c((-(x * x + 2.0 * y * y)).exp())).unwrap();
        let grid: GroupGrid<EuclideanMotion> = GroupGrid::parse("euclidean:theta=lin:0:3:4,d=lin:-0.5:0.5:3").unwrap();
        let fast = radon_transform(&f, &grid).unwrap();
        let slow = covariant_transform(&EuclideanRep, &Fiducial::new(FiducialKind::RadonLine), &f, &grid).unwrap();
        for (a, b) in fast.values().iter().zip(slow.values()) {
            assert!((a[0] - b[0]).norm() < 1e-12);
        }
    }

    #[test]
    fn radon_of_disc_chords() {
        let h = 0.01;
        let disc = SampledSignal2D::centered(1.5, h, |x, y| c(if x * x + y * y <= 1.0 { 1.0 } else { 0.0 })).unwrap();
        let grid: GroupGrid<EuclideanMotion> = GroupGrid::parse("euclidean:theta=lin:0:1:2,d=lin:0:0.6:2").unwrap();
        let r = radon_transform(&disc, &grid).unwrap();
        for (g, v) in grid.elements().iter().zip(r.values()) {
            let d = (g.translation().0.powi(2) + g.translation().1.powi(2)).sqrt();
            assert!((v[0].re - 2.0 * (1.0 - d * d).sqrt()).abs() < 3.0 * h, "{g:?}");
        }
    }

    #[test]
    fn csv_round_trip() {
        let f = SampledSignal1D::on_window(-10.0, 10.0, 0.05, |x| c(1.0 / (1.0 + x * x))).unwrap();
        let grid = affine_grid("affine:a=log:0.1:10:4,b=lin:-2:2:3");
        let w = covariant_transform(&AffineRep::new(Exponent::Finite(2.0)), &Fiducial::new(FiducialKind::Jump), &f, &grid).unwrap();
        let mut buf = Vec::new();
        w.write_csv(&mut buf).unwrap();
        let back = TransformResult::<AffineElement>::read_csv(buf.as_slice()).unwrap();
        assert_eq!(back, w);
    }
}
