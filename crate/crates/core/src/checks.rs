//! Seeded property checks behind `covkit check`.
//!
//! Every check measures one nonnegative metric and passes when it does not
//! exceed its threshold. Each check draws from its own ChaCha stream derived
//! from the run seed and the check name, so a check gives the same numbers
//! whether it runs alone or with its whole suite.

use std::f64::consts::PI;
use std::fmt::Write as _;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fiducials::{eval_interval_average, Evaluate, Fiducial, FiducialKind};
use crate::groups::{AffineElement, EuclideanMotion, Group, GroupGrid, Sl2Element, Su11Element};
use crate::inversion::{
    haar_pairing, hardy_pairing, inverse_haar, inverse_hardy, HardyPairing, OutputGrid,
};
use crate::operators::{
    mobius_apply, numrange_transform, spectral_radius, OperatorMatrix, SupportFunction, UnitaryOrbit,
    SUPPORT_SLACK,
};
use crate::representations::{AffineRep, EuclideanRep, Representation, Sl2Rep};
use crate::signals::{Exponent, QuadratureRule, SampledSignal1D, SampledSignal2D};
use crate::transform::{check_intertwining, covariant_transform, maximal_average, radon_transform, TransformResult};

pub const SUITES: &[&str] = &[
    "groups",
    "signals",
    "representations",
    "fiducials",
    "intertwining",
    "transform",
    "inversion",
    "operators",
    "cli",
];

/// The properties the checks are traced to.
pub const PROPERTIES: &[(&str, &str)] = &[
    ("groups/associativity", "(g*h)*k = g*(h*k) within 1e-10 on 100 random triples per group"),
    ("groups/inverse-law", "g*g^-1 = identity within 1e-10"),
    ("groups/su11-constraint", "|alpha|^2 - |beta|^2 = 1 preserved under composition within 1e-10"),
    ("groups/haar-left-invariance", "affine grid sums invariant under left translation of the summand"),
    ("signals/affine-interpolation", "interpolation reproduces affine functions at interior points"),
    ("signals/integrate-linearity", "integrate is linear within 1e-12 scale"),
    ("signals/sup-norm-resampling", "sup norm invariant under pi_inf resampling within 2 L dx"),
    ("representations/homomorphism", "pi(g)pi(h)f = pi(gh)f within 3x interpolation error"),
    ("representations/affine-isometry", "affine representation is isometric on L_p"),
    ("representations/identity-exact", "pi(identity) is the identity, bit for bit"),
    ("fiducials/linearity", "every fiducial except interval_average is linear within 1e-12 scale"),
    ("fiducials/interval-average", "interval_average is homogeneous, nonnegative and subadditive"),
    ("fiducials/jump-consistency", "combo(1,1) and combo(1,-1) are the sum and difference of jump"),
    ("fiducials/hardy-annihilation", "cauchy- annihilates 1/(t+i)^2 within the truncation budget"),
    ("transform/left-shift-covariance", "check_intertwining residual below budget for 20 random g per pair"),
    ("transform/maximal-intertwining", "M of pi_inf(a,b)f at x equals M_f(ax+b) with the a grid dilated"),
    ("transform/radon-oracle", "Radon transform of a polygon matches line quadrature within 3 dx"),
    ("transform/maximal-monotonicity", "|f| <= |h| implies M_f <= M_h"),
    ("inversion/haar-conjugate-symmetry", "<f1,f2> = conj(<f2,f1>) exactly"),
    ("inversion/haar-round-trip", "inverse_haar after the transform recovers 5 smooth signals within 0.05"),
    ("inversion/hardy-shift-invariance", "hardy_pairing limit invariant under a common b shift within 1e-10"),
    ("inversion/inverse-linearity", "both inverse maps are linear within 1e-12 scale"),
    ("operators/mobius-spectral-ball", "spectral radius of g.A stays below 1 + 1e-10"),
    ("operators/mobius-group-action", "identity acts trivially and (g1 g2).A = g1.(g2.A) within 1e-10"),
    ("operators/numrange-containment", "numrange_transform values lie in the support polygon with 1e-9 slack"),
    ("operators/numrange-continuity", "successive orbit values differ by at most 2 |A| |H| dt + 1e-9"),
    ("cli/byte-identical", "identical inputs and seeds give byte-identical outputs"),
    ("cli/csv-round-trip", "emitted CSV is re-read to the same values"),
    ("cli/traceability", "every property has at least one check"),
];

/// A measured metric and the bound it must not exceed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measure {
    pub metric: f64,
    pub threshold: f64,
}

impl Measure {
    fn new(metric: f64, threshold: f64) -> Result<Self> {
        Ok(Self { metric, threshold })
    }

    pub fn passed(&self) -> bool {
        self.metric <= self.threshold
    }
}

type CheckFn = fn(&mut ChaCha8Rng) -> Result<Measure>;

pub struct Check {
    pub suite: &'static str,
    pub name: &'static str,
    pub covers: &'static str,
    run: CheckFn,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub id: String,
    pub covers: &'static str,
    pub result: std::result::Result<Measure, String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        matches!(&self.result, Ok(m) if m.passed())
    }

    pub fn line(&self) -> String {
        let tag = if self.passed() { "PASS" } else { "FAIL" };
        match &self.result {
            Ok(m) => format!("[{tag}] {} metric={:.3e} threshold={:.3e}", self.id, m.metric, m.threshold),
            Err(e) => format!("[{tag}] {} error=\"{e}\"", self.id),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub seed: u64,
    pub suites: Vec<String>,
    pub outcomes: Vec<Outcome>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(Outcome::passed)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "covkit check seed={} suites={}", self.seed, self.suites.join(","));
        for o in &self.outcomes {
            let _ = writeln!(s, "{}", o.line());
        }
        let _ = writeln!(s, "traceability:");
        for (prop, _) in PROPERTIES {
            let ids: Vec<&str> = self
                .outcomes
                .iter()
                .filter(|o| o.covers == *prop)
                .map(|o| o.id.as_str())
                .collect();
            if !ids.is_empty() {
                let _ = writeln!(s, "  {prop} <- {}", ids.join(" "));
            }
        }
        let passed = self.outcomes.iter().filter(|o| o.passed()).count();
        let _ = writeln!(s, "summary: {passed} passed, {} failed", self.outcomes.len() - passed);
        s
    }
}

/// Stable 64-bit FNV-1a, used to give every check its own stream.
fn fnv1a(s: &str) -> u64 {
    s.bytes()
        .fold(0xcbf29ce484222325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}

pub fn registry() -> Vec<Check> {
    macro_rules! check {
        ($suite:literal, $name:literal, $covers:literal, $f:expr) => {
            Check {
                suite: $suite,
                name: $name,
                covers: $covers,
                run: $f,
            }
        };
    }
    vec![
        check!("groups", "associativity_affine", "groups/associativity", |r| associativity::<AffineElement>(r, random_affine)),
        check!("groups", "associativity_euclidean", "groups/associativity", |r| associativity::<EuclideanMotion>(r, random_motion)),
        check!("groups", "associativity_su11", "groups/associativity", |r| associativity::<Su11Element>(r, random_su11)),
        check!("groups", "associativity_sl2", "groups/associativity", |r| associativity::<Sl2Element>(r, random_sl2)),
        check!("groups", "inverse_law", "groups/inverse-law", inverse_law),
        check!("groups", "su11_constraint", "groups/su11-constraint", su11_constraint),
        check!("groups", "haar_left_invariance", "groups/haar-left-invariance", haar_left_invariance),
        check!("signals", "affine_interpolation", "signals/affine-interpolation", affine_interpolation),
        check!("signals", "integrate_linearity", "signals/integrate-linearity", integrate_linearity),
        check!("signals", "sup_norm_resampling", "signals/sup-norm-resampling", sup_norm_resampling),
        check!("representations", "homomorphism_affine", "representations/homomorphism", homomorphism_affine),
        check!("representations", "homomorphism_euclidean", "representations/homomorphism", homomorphism_euclidean),
        check!("representations", "homomorphism_sl2", "representations/homomorphism", homomorphism_sl2),
        check!("representations", "affine_isometry", "representations/affine-isometry", affine_isometry),
        check!("representations", "identity_exact", "representations/identity-exact", identity_exact),
        check!("fiducials", "linearity", "fiducials/linearity", fiducial_linearity),
        check!("fiducials", "interval_average", "fiducials/interval-average", interval_average_properties),
        check!("fiducials", "jump_consistency", "fiducials/jump-consistency", jump_consistency),
        check!("fiducials", "hardy_annihilation", "fiducials/hardy-annihilation", hardy_annihilation),
        check!("intertwining", "affine_cauchy_plus", "transform/left-shift-covariance", |r| {
            affine_intertwining(r, Exponent::Finite(2.0), Fiducial::new(FiducialKind::CauchyPlus))
        }),
        check!("intertwining", "affine_cauchy_minus", "transform/left-shift-covariance", |r| {
            affine_intertwining(r, Exponent::Finite(2.0), Fiducial::new(FiducialKind::CauchyMinus))
        }),
        check!("intertwining", "affine_inner_gaussian", "transform/left-shift-covariance", |r| {
            affine_intertwining(r, Exponent::Finite(2.0), Fiducial::inner_product(gaussian(), "gaussian"))
        }),
        check!("intertwining", "affine_inf_interval_average", "transform/left-shift-covariance", |r| {
            affine_intertwining(r, Exponent::Infinity, Fiducial::new(FiducialKind::IntervalAverage))
        }),
        check!("intertwining", "euclidean_radon_line", "transform/left-shift-covariance", euclidean_intertwining),
        check!("transform", "maximal_intertwining", "transform/maximal-intertwining", maximal_intertwining),
        check!("transform", "radon_polygon", "transform/radon-oracle", radon_polygon),
        check!("transform", "maximal_monotonicity", "transform/maximal-monotonicity", maximal_monotonicity),
        check!("inversion", "haar_conjugate_symmetry", "inversion/haar-conjugate-symmetry", haar_conjugate_symmetry),
        check!("inversion", "haar_round_trip", "inversion/haar-round-trip", haar_round_trip),
        check!("inversion", "hardy_shift_invariance", "inversion/hardy-shift-invariance", hardy_shift_invariance),
        check!("inversion", "inverse_linearity", "inversion/inverse-linearity", inverse_linearity),
        check!("operators", "mobius_spectral_ball", "operators/mobius-spectral-ball", mobius_spectral_ball),
        check!("operators", "mobius_group_action", "operators/mobius-group-action", mobius_group_action),
        check!("operators", "numrange_containment", "operators/numrange-containment", numrange_containment),
        check!("operators", "numrange_continuity", "operators/numrange-continuity", numrange_continuity),
        check!("cli", "byte_identical", "cli/byte-identical", byte_identical),
        check!("cli", "csv_round_trip", "cli/csv-round-trip", csv_round_trip),
        check!("cli", "traceability", "cli/traceability", traceability),
    ]
}

/// Runs the named suites (all when `suites` is empty) in registry order.
pub fn run(seed: u64, suites: &[String]) -> Result<Report> {
    for s in suites {
        if !SUITES.contains(&s.as_str()) {
            return Err(Error::parse("suite", s.clone(), format!("known suites: {}", SUITES.join(", "))));
        }
    }
    let selected: Vec<String> = if suites.is_empty() {
        SUITES.iter().map(|s| s.to_string()).collect()
    } else {
        suites.to_vec()
    };
    let outcomes = registry()
        .into_iter()
        .filter(|c| selected.iter().any(|s| s == c.suite))
        .map(|c| {
            let id = format!("{}.{}", c.suite, c.name);
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv1a(&id));
            Outcome {
                covers: c.covers,
                result: (c.run)(&mut rng).map_err(|e| e.to_string()),
                id,
            }
        })
        .collect();
    Ok(Report {
        seed,
        suites: selected,
        outcomes,
    })
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn crand(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn random_affine(rng: &mut ChaCha8Rng) -> AffineElement {
    AffineElement::new(rng.gen_range(0.2f64..5.0), rng.gen_range(-3.0..3.0)).expect("positive a")
}

fn random_motion(rng: &mut ChaCha8Rng) -> EuclideanMotion {
    EuclideanMotion::new(rng.gen_range(-PI..PI), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)).expect("finite")
}

fn random_su11(rng: &mut ChaCha8Rng) -> Su11Element {
    Su11Element::from_polar(rng.gen_range(0.0..2.0), rng.gen_range(-PI..PI), rng.gen_range(-PI..PI))
}

fn random_sl2(rng: &mut ChaCha8Rng) -> Sl2Element {
    Sl2Element::from_iwasawa(rng.gen_range(-2.0..2.0), rng.gen_range(0.3..3.0), rng.gen_range(-PI..PI)).expect("y > 0")
}

fn associativity<G: Group>(rng: &mut ChaCha8Rng, gen: fn(&mut ChaCha8Rng) -> G) -> Result<Measure> {
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let (g, h, k) = (gen(rng), gen(rng), gen(rng));
        worst = worst.max(g.compose(&h).compose(&k).distance(&g.compose(&h.compose(&k))));
    }
    Measure::new(worst, 1e-10)
}

fn inverse_law(rng: &mut ChaCha8Rng) -> Result<Measure> {
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let g = random_affine(rng);
        worst = worst.max(g.compose(&g.inverse()).distance(&AffineElement::identity()));
        let g = random_motion(rng);
        worst = worst.max(g.compose(&g.inverse()).distance(&EuclideanMotion::identity()));
        let g = random_su11(rng);
        worst = worst.max(g.compose(&g.inverse()).distance(&Su11Element::identity()));
        let g = random_sl2(rng);
        worst = worst.max(g.compose(&g.inverse()).distance(&Sl2Element::identity()));
    }
    Measure::new(worst, 1e-10)
}

fn su11_constraint(rng: &mut ChaCha8Rng) -> Result<Measure> {
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let g = random_su11(rng).compose(&random_su11(rng));
        let det = g.alpha().norm_sqr() - g.beta().norm_sqr();
        worst = worst.max((det - 1.0).abs() / g.alpha().norm_sqr());
    }
    Measure::new(worst, 1e-10)
}

fn haar_left_invariance(rng: &mut ChaCha8Rng) -> Result<Measure> {
    let grid: GroupGrid<AffineElement> = GroupGrid::parse("affine:a=log:0.01:100:401,b=lin:-30:30:601")?;
    let phi = |g: &AffineElement| (-2.0 * g.a().ln().powi(2)).exp() * (-g.b() * g.b()).exp();
    let base: f64 = grid.elements().iter().zip(grid.weights()).map(|(h, w)| phi(h) * w).sum();
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let g = AffineElement::new(rng.gen_range(0.5..2.0), rng.gen_range(-2.0..2.0))?;
        let moved: f64 = grid
            .elements()
            .iter()
            .zip(grid.weights())
            .map(|(h, w)| phi(&g.compose(h)) * w)
            .sum();
        worst = worst.max((moved - base).abs() / base);
    }
    Measure::new(worst, 1e-3)
}

fn affine_interpolation(rng: &mut ChaCha8Rng) -> Result<Measure> {
    let (m, q) = (crand(rng), crand(rng));
    let f = SampledSignal1D::from_fn(-2.0, 0.01, 401, |x| m * x + q)?;
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let x = rng.gen_range(-2.0..2.0);
        worst = worst.max((f.evaluate(x) - (m * x + q)).norm());
    }
    Measure::new(worst, 1e-12)
}

fn integrate_linearity(rng: &mut ChaCha8Rng) -> Result<Measure> {
    let rule = QuadratureRule::TRAPEZOID;
    let f = SampledSignal1D::from_fn(-5.0, 0.01, 1001, |x| Complex64::new((-x * x).exp(), x.sin() * 0.2))?;
    let g = SampledSignal1D::from_fn(-5.0, 0.01, 1001, |x| Complex64::new(x.cos(), (-x.abs()).exp()))?;
    let (alpha, beta) = (crand(rng) * 3.0, crand(rng) * 3.0);
    let lhs = f.combine(alpha, &g, beta)?.integrate(rule)?;
    let rhs = alpha * f.integrate(rule)? + beta * g.integrate(rule)?;
    let scale = alpha.norm() * f.integrate(rule)?.norm() + beta.norm() * g.integrate(rule)?.norm();
    Measure::new((lhs - rhs).norm() / scale.max(1.0), 1e-12)
}

fn sup_norm_resampling(rng: &mut ChaCha8Rng) -> Result<Measure> {
    let f = SampledSignal1D::from_real_fn(-20.0, 0.01, 4001, |x| (-x * x).exp())?;
    let lipschitz = 2f64.sqrt() * (-0.5f64).exp();
    let rep = AffineRep::new(Exponent::Infinity);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let g = AffineElement::new(rng.gen_range(0.5..2.0), rng.gen_range(-3.0..3.0))?;
        let moved = rep.apply_resampled(&g, &f)?;
        worst = worst.max((moved.lp_norm(Exponent::Infinity)? - f.lp_norm(Exponent::Infinity)?).abs());
    }
    Measure::new(worst, 2.0 * lipschitz * f.dx())
}

fn gaussian() -> SampledSignal1D {
    SampledSignal1D::on_window(-10.0, 10.0, 0.01, |x| c((-x * x).exp())).expect("valid grid")
}

fn homomorphism_affine(rng: &mut ChaCha8Rng) -> Result<Measure> {
    let f = SampledSignal1D::from_real_fn(-10.0, 0.01, 2001, |x| (-x * x).exp() * (2.0 * x).cos())?;
    let rep = AffineRep::new(Exponent::Finite(2.0));
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let (g, h) = (random_affine(rng), random_affine(rng));
        let lhs = rep.apply(&g, &rep.apply(&h, &f)?)?;
        let rhs = rep.apply(&g.compose(&h), &f)?;
        for _ in 0..10 {
            let x = rng.gen_range(-3.0..3.0);
            worst = worst.max((lhs.evaluate(x) - rhs.evaluate(x)).norm());
        }
    }
    Measure::new(worst, 1e-10)
}

/// Bilinear interpolation error bound `h²/8 (|f_xx| + |f_yy|)` for the
/// plane test bump below.
fn bump2d(h: f64) -> Result<(SampledSignal2D, f64)> {
    let f = SampledSignal2D::centered(4.0, h, |x, y| c((-(x * x + 2.0 * y * y)).exp() * (1.0 + 0.5 * x)))?;
    Ok((f, h * h / 8.0 * 8.0))
}

fn homomorphism_euclidean(rng: &mut ChaCha8Rng) -> Result<Measure> {
    let (f, bound) = bump2d(0.02)?;
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let small = |rng: &mut ChaCha8Rng| {
            EuclideanMotion::new(rng.gen_range(-PI..PI), rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5))
        };
        let (g, h) = (small(rng)?, small(rng)?);
        let lhs = EuclideanRep.apply(&g, &EuclideanRep.apply(&h, &f)?)?;
        let rhs = EuclideanRep.apply(&g.compose(&h), &f)?;
        for _ in 0..20 {
            let (x, y) = (rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
            worst = worst.max((lhs.evaluate(x, y) - rhs.evaluate(x, y)).norm());
        }
    }
    Measure::new(worst, 3.0 * bound)
}

fn homomorphism_sl2(rng: &mut ChaCha8Rng) -> Result<Measure> {
    let h = 0.01;
    let f = SampledSignal2D::from_fn((-3.0, 0.2), (h, h), (601, 381), |x, y| {
        c((-(x * x + (y - 1.5).powi(2))).exp())
    })?;
    // |f''| <= 2 on the bump; the weight factors stay near 1 for the small
    // elements used here
    let bound = h * h / 8.0 * 4.0;
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let small = |rng: &mut ChaCha8Rng| {
            Sl2Element::from_iwasawa(rng.gen_range(-0.2..0.2), rng.gen_range(0.9..1.1), rng.gen_range(-0.1..0.1))
        };
        let (g, k) = (small(rng)?, small(rng)?);
        let lhs = Sl2Rep.apply(&g, &Sl2Rep.apply(&k, &f)?)?;
        let rhs = Sl2Rep.apply(&g.compose(&k), &f)?;
        for _ in 0..20 {
            let (x, y) = (rng.gen_range(-0.8..0.8), rng.gen_range(1.0..2.0));
            worst = worst.max((lhs.evaluate(x, y) - rhs.evaluate(x, y)).norm());
        }
    }
    Measure::new(worst, 3.0 * 2.0 * bound)
}

fn affine_isometry(rng: &mut ChaCha8Rng) -> Result<Measure> {
    let f = SampledSignal1D::from_real_fn(-20.0, 0.01, 4001, |x| (-x * x).exp() * (3.0 * x).cos())?;
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let p = Exponent::Finite(rng.gen_range(1.0..4.0));
        let g = random_affine(rng);
        let moved = AffineRep::new(p).apply(&g, &f)?;
        let n = f.lp_norm(p)?;
        worst = worst.max((moved.lp_norm(p)? - n).abs() / n);
    }
    Measure::new(worst, 1e-12)
}

fn identity_exact(_: &mut ChaCha8Rng) -> Result<Measure> {
    let f = gaussian();
    let (f2, _) = bump2d(0.1)?;
    let f3 = SampledSignal2D::from_fn((-1.0, 0.5), (0.1, 0.1), (21, 11), |x, y| Complex64::new(x, y))?;
    let same = AffineRep::new(Exponent::Finite(3.0)).apply(&AffineElement::identity(), &f)? == f
        && EuclideanRep.apply(&EuclideanMotion::identity(), &f2)? == f2
        && Sl2Rep.apply(&Sl2Element::identity(), &f3)? == f3;
    Measure::new(if same { 0.0 } else { 1.0 }, 0.0)
}

fn random_smooth(rng: &mut ChaCha8Rng, lo: f64, hi: f64, dx: f64) -> Result<SampledSignal1D> {
    let (m, w, k) = (rng.gen_range(-1.0..1.0), rng.gen_range(0.5..2.0), rng.gen_range(0.0..3.0));
    let amp = crand(rng);
    SampledSignal1D::on_window(lo, hi, dx, |x| amp * (-((x - m) / w).powi(2)).exp() * Complex64::from_polar(1.0, k * x))
}

fn fiducial_linearity(rng: &mut ChaCha8Rng) -> Result<Measure> {
    let fids = [
        Fiducial::new(FiducialKind::CauchyPlus),
        Fiducial::new(FiducialKind::CauchyMinus),
        Fiducial::new(FiducialKind::Combo {
            plus: c(1.0),
            minus: c(-1.0),
        }),
        Fiducial::new(FiducialKind::Jump),
        Fiducial::new(FiducialKind::PoissonKernel),
        Fiducial::inner_product(gaussian(), "gaussian"),
    ];
    let mut worst = 0.0f64;
    for fid in &fids {
        let f = random_smooth(rng, -20.0, 20.0, 0.01)?;
        let g = random_smooth(rng, -20.0, 20.0, 0.01)?;
        let (alpha, beta) = (crand(rng), crand(rng));
        let lhs = fid.evaluate(&f.combine(alpha, &g, beta)?)?;
        let (ff, gg) = (fid.evaluate(&f)?, fid.evaluate(&g)?);
        for k in 0..lhs.len() {
            let scale = (alpha * ff[k]).norm() + (beta * gg[k]).norm();
            worst = worst.max((lhs[k] - alpha * ff[k] - beta * gg[k]).norm() / scale.max(1e-300));
        }
    }
    let plane = |rng: &mut ChaCha8Rng| {
        let (m, amp) = (rng.gen_range(-0.5..0.5), crand(rng));
        SampledSignal2D::centered(2.0, 0.05, move |x, y| amp * (-((x - m).powi(2) + y * y)).exp())
    };
    let (f, g) = (plane(rng)?, plane(rng)?);
    let (alpha, beta) = (crand(rng), crand(rng));
    let radon = Fiducial::new(FiducialKind::RadonLine);
    let lhs = radon.evaluate(&f.combine(alpha, &g, beta)?)?[0];
    let (ff, gg) = (radon.evaluate(&f)?[0], radon.evaluate(&g)?[0]);
    worst = worst.max((lhs - alpha * ff - beta * gg).norm() / ((alpha * ff).norm() + (beta * gg).norm()));
    Measure::new(worst, 1e-12)
}

fn interval_average_properties(rng: &mut ChaCha8Rng) -> Result<Measure> {
    let dx = 0.01;
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let f = random_smooth(rng, -3.0, 3.0, dx)?;
        let g = random_smooth(rng, -3.0, 3.0, dx)?;
        let k = crand(rng) * 4.0;
        let (af, ag) = (eval_interval_average(&f), eval_interval_average(&g));
        let homogeneity = (eval_interval_average(&f.map(|v| v * k)) - k.norm() * af).abs() / af.max(1e-300);
        let negativity = (-af).max(0.0);
        let triangle = (eval_interval_average(&f.combine(c(1.0), &g, c(1.0))?) - af - ag).max(0.0);
        worst = worst.max(homogeneity).max(negativity).max(triangle);
    }
    Measure::new(worst, 1e-12)
}

fn jump_consistency(rng: &mut ChaCha8Rng) -> Result<Measure> {
    let rule = QuadratureRule::TRAPEZOID;
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let f = random_smooth(rng, -20.0, 20.0, 0.01)?;
        let [p, m] = crate::fiducials::eval_jump(&f, rule)?;
        let sum = crate::fiducials::eval_combo(c(1.0), c(1.0), &f, rule)?;
        let diff = crate::fiducials::eval_combo(c(1.0), c(-1.0), &f, rule)?;
        worst = worst.max((sum - (p + m)).norm()).max((diff - (p - m)).norm());
    }
    Measure::new(worst, 0.0)
}

fn hardy_annihilation(_: &mut ChaCha8Rng) -> Result<Measure> {
    let f = SampledSignal1D::on_window(-200.0, 200.0, 0.01, |t| {
        let z = Complex64::new(t, 1.0);
        1.0 / (z * z)
    })?;
    let fid = Fiducial::new(FiducialKind::CauchyMinus);
    Measure::new(fid.evaluate(&f)?[0].norm(), fid.truncation_budget(&f) + 1e-9)
}

/// Left-shift covariance budget for affine pairs. The affine action moves
/// the grid without interpolation, so only rounding separates both sides.
const AFFINE_INTERTWINING_BUDGET: f64 = 1e-3;

fn affine_intertwining(rng: &mut ChaCha8Rng, p: Exponent, fid: Fiducial) -> Result<Measure> {
    let rep = AffineRep::new(p);
    let grid: GroupGrid<AffineElement> = GroupGrid::parse("affine:a=log:0.5:2:3,b=lin:-2:2:3")?;
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let v = random_smooth(rng, -50.0, 50.0, 0.01)?;
        let g = AffineElement::new(rng.gen_range(0.5..2.0), rng.gen_range(-2.0..2.0))?;
        worst = worst.max(check_intertwining(&rep, &fid, &v, &g, &grid)?);
    }
    Measure::new(worst, AFFINE_INTERTWINING_BUDGET)
}

fn euclidean_intertwining(rng: &mut ChaCha8Rng) -> Result<Measure> {
    let (f, bound) = bump2d(0.02)?;
    let grid: GroupGrid<EuclideanMotion> = GroupGrid::parse("euclidean:theta=lin:-1:1:3,d=lin:-0.5:0.5:3")?;
    let fid = Fiducial::new(FiducialKind::RadonLine);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let g = EuclideanMotion::new(rng.gen_range(-PI..PI), rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5))?;
        worst = worst.max(check_intertwining(&EuclideanRep, &fid, &f, &g, &grid)?);
    }
    // two interpolations on one side, integrated along a chord of length 8
    Measure::new(worst, (3.0 * bound * 8.0).min(AFFINE_INTERTWINING_BUDGET))
}

fn maximal_intertwining(rng: &mut ChaCha8Rng) -> Result<Measure> {
    let dx = 0.01;
    let f = random_smooth(rng, -8.0, 8.0, dx)?;
    let rep = AffineRep::new(Exponent::Infinity);
    let radii: Vec<f64> = (0..40).map(|k| 0.05 * 1.15f64.powi(k)).collect();
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let (a, b) = (rng.gen_range(0.5..2.0), dx * rng.gen_range(-100..100) as f64);
        // h(x) = f(ax + b)
        let h = rep.dilate_translate(a, b, &f)?;
        for _ in 0..5 {
            let k = rng.gen_range(300..1300usize);
            let x = (f.x(k) - b) / a;
            let mh = radii
                .iter()
                .map(|r| maximal_average(&h, r / a, x))
                .collect::<Result<Vec<f64>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            let mf = radii
                .iter()
                .map(|r| maximal_average(&f, *r, a * x + b))
                .collect::<Result<Vec<f64>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            worst = worst.max((mh - mf).abs());
        }
    }
    Measure::new(worst, 1e-9)
}

/// A random convex polygon: sorted angles on a circle of radius ~0.8.
pub fn random_polygon(rng: &mut ChaCha8Rng, n: usize) -> Vec<(f64, f64)> {
    let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
    angles.sort_by(f64::total_cmp);
    angles
        .iter()
        .map(|t| {
            let r = rng.gen_range(0.6..0.9);
            (r * t.cos(), r * t.sin())
        })
        .collect()
}

/// Even-odd point-in-polygon test.
pub fn in_polygon(poly: &[(f64, f64)], (x, y): (f64, f64)) -> bool {
    let mut inside = false;
    let n = poly.len();
    for i in 0..n {
        let (xi, yi) = poly[i];
        let (xj, yj) = poly[(i + n - 1) % n];
        if (yi > y) != (yj > y) && x < (xj - xi) * (y - yi) / (yj - yi) + xi {
            inside = !inside;
        }
    }
    inside
}

/// `∫ 1_P(g·(s, 0)) ds` by dense sampling of the exact indicator.
pub fn line_quadrature(poly: &[(f64, f64)], g: &EuclideanMotion, half: f64, step: f64) -> f64 {
    let n = (2.0 * half / step).round() as usize;
    (0..n)
        .filter(|k| in_polygon(poly, g.act((-half + (*k as f64 + 0.5) * step, 0.0))))
        .count() as f64
        * step
}

fn radon_polygon(rng: &mut ChaCha8Rng) -> Result<Measure> {
    let h = 0.01;
    let poly = random_polygon(rng, 7);
    let f = SampledSignal2D::centered(1.5, h, |x, y| c(if in_polygon(&poly, (x, y)) { 1.0 } else { 0.0 }))?;
    let motions: Vec<EuclideanMotion> = (0..10)
        .map(|_| EuclideanMotion::line(rng.gen_range(-PI..PI), rng.gen_range(-0.5..0.5)))
        .collect::<Result<_>>()?;
    let grid = GroupGrid::from_parts(motions.clone(), vec![1.0; motions.len()])?;
    let r = radon_transform(&f, &grid)?;
    let worst = motions
        .iter()
        .zip(r.values())
        .map(|(g, v)| (v[0].re - line_quadrature(&poly, g, 2.2, h / 50.0)).abs())
        .fold(0.0, f64::max);
    Measure::new(worst, 3.0 * h)
}

fn maximal_monotonicity(rng: &mut ChaCha8Rng) -> Result<Measure> {
    let dx = 0.02;
    let (m, w) = (rng.gen_range(-1.0..1.0), rng.gen_range(0.5..2.0));
    let hsig = SampledSignal1D::on_window(-6.0, 6.0, dx, |x| c(1.0 + (-((x - m) / w).powi(2)).exp()))?;
    let phase = rng.gen_range(0.0..3.0);
    let fsig = SampledSignal1D::from_fn(hsig.x0(), dx, hsig.len(), |x| {
        hsig.evaluate(x) * (0.5 + 0.5 * (phase * x).sin()) * Complex64::from_polar(1.0, x)
    })?;
    let radii: Vec<f64> = (0..30).map(|k| 0.05 * 1.2f64.powi(k)).collect();
    let mut worst = 0.0f64;
    for k in 0..21 {
        let b = -4.0 + 0.4 * k as f64;
        let mut mf = 0.0f64;
        let mut mh = 0.0f64;
        for r in &radii {
            mf = mf.max(maximal_average(&fsig, *r, b)?);
            mh = mh.max(maximal_average(&hsig, *r, b)?);
        }
        worst = worst.max(mf - mh);
    }
    Measure::new(worst.max(0.0), 1e-12)
}

fn mexican_hat(dx: f64) -> Result<SampledSignal1D> {
    SampledSignal1D::on_window(-20.0, 20.0, dx, |x| c((1.0 - x * x) * (-x * x / 2.0).exp()))
}

/// Zero-mean (or nearly) smooth signals: the reconstruction grid has a
/// bounded range of scales and cannot carry a DC component.
pub fn haar_test_signals() -> Vec<(&'static str, fn(f64) -> f64)> {
    vec![
        ("modulated-gaussian", |x| (3.0 * x).cos() * (-x * x / 2.0).exp()),
        ("gaussian-derivative", |x| -x * (-x * x / 2.0).exp()),
        ("shifted-hat", |x| (1.0 - (x - 1.0).powi(2)) * (-(x - 1.0).powi(2) / 2.0).exp()),
        ("modulated-sine", |x| (2.0 * x).sin() * (-x * x / 4.0).exp()),
        ("hermite-3", |x| (x * x * x - 3.0 * x) * (-x * x / 2.0).exp()),
    ]
}

fn haar_transform(f: &SampledSignal1D, v0: &SampledSignal1D, grid: &GroupGrid<AffineElement>) -> Result<TransformResult<AffineElement>> {
    covariant_transform(
        &AffineRep::new(Exponent::Finite(2.0)),
        &Fiducial::inner_product(v0.clone(), "mexican-hat"),
        f,
        grid,
    )
}

fn haar_round_trip(_: &mut ChaCha8Rng) -> Result<Measure> {
    let v0 = mexican_hat(0.05)?;
    let grid = GroupGrid::parse("affine:a=log:0.1:20:32,b=lin:-25:25:251")?;
    let mut worst = 0.0f64;
    for (_, s) in haar_test_signals() {
        let f = SampledSignal1D::on_window(-30.0, 30.0, 0.05, |x| c(s(x)))?;
        let w = haar_transform(&f, &v0, &grid)?;
        let rep = AffineRep::new(Exponent::Finite(2.0));
        let r = inverse_haar(&w, &rep, &v0, OutputGrid::like(&f), Some(&f))?;
        worst = worst.max(r.residual.unwrap_or(f64::INFINITY));
    }
    Measure::new(worst, 0.05)
}

fn haar_conjugate_symmetry(rng: &mut ChaCha8Rng) -> Result<Measure> {
    let grid: GroupGrid<AffineElement> = GroupGrid::parse("affine:a=log:0.1:10:16,b=lin:-5:5:21")?;
    let n = grid.len();
    let meta = crate::transform::TransformMeta {
        rep: "affine:p=2".into(),
        fiducial: "synthetic".into(),
        truncation_budget: 0.0,
    };
    let f1 = TransformResult::new(grid.clone(), (0..n).map(|_| vec![crand(rng)]).collect(), meta.clone())?;
    let f2 = TransformResult::new(grid, (0..n).map(|_| vec![crand(rng)]).collect(), meta)?;
    let d = haar_pairing(&f1, &f2)? - haar_pairing(&f2, &f1)?.conj();
    Measure::new(d.norm(), 0.0)
}

fn hardy_shift_invariance(rng: &mut ChaCha8Rng) -> Result<Measure> {
    let pairing = HardyPairing::parse("geo:0.1:0.5:3", "lin:-10:10:201")?;
    let grid = pairing.grid()?;
    let nb = pairing.b_axis().len();
    let bump = |j: isize, center: isize| {
        let t = (j - center) as f64 / 30.0;
        if t.abs() < 1.0 {
            (1.0 - t * t).powi(3)
        } else {
            0.0
        }
    };
    let (c1, c2) = (crand(rng), crand(rng));
    let make = |shift: isize, coef: Complex64| -> Result<TransformResult<AffineElement>> {
        let a = pairing.a_values();
        let vals: Vec<Vec<Complex64>> = (0..grid.len())
            .map(|i| {
                let (ia, j) = (i / nb, (i % nb) as isize);
                vec![coef * (1.0 + a[ia]) * bump(j - shift, 80) * Complex64::from_polar(1.0, 0.1 * j as f64 - 0.1 * shift as f64)]
            })
            .collect();
        TransformResult::new(
            grid.clone(),
            vals,
            crate::transform::TransformMeta {
                rep: "affine:p=inf".into(),
                fiducial: "synthetic".into(),
                truncation_budget: 0.0,
            },
        )
    };
    let shift = rng.gen_range(1..30isize);
    let base = hardy_pairing(&make(0, c1)?, &make(0, c2)?, &pairing)?.limit;
    let moved = hardy_pairing(&make(shift, c1)?, &make(shift, c2)?, &pairing)?.limit;
    Measure::new((base - moved).norm(), 1e-10)
}

fn inverse_linearity(rng: &mut ChaCha8Rng) -> Result<Measure> {
    let v0 = mexican_hat(0.05)?;
    let grid = GroupGrid::parse("affine:a=log:0.5:4:6,b=lin:-5:5:21")?;
    let rep = AffineRep::new(Exponent::Finite(2.0));
    let f = random_smooth(rng, -10.0, 10.0, 0.05)?;
    let g = random_smooth(rng, -10.0, 10.0, 0.05)?;
    let (alpha, beta) = (crand(rng), crand(rng));
    let (w1, w2) = (haar_transform(&f, &v0, &grid)?, haar_transform(&g, &v0, &grid)?);
    let combo = |x: &TransformResult<AffineElement>, y: &TransformResult<AffineElement>| -> Result<TransformResult<AffineElement>> {
        let vals = x.scalars()?.iter().zip(y.scalars()?).map(|(p, q)| alpha * p + beta * q).collect();
        x.with_scalars(vals)
    };
    let out = OutputGrid::like(&f);
    let lin_err = |m: &SampledSignal1D, m1: &SampledSignal1D, m2: &SampledSignal1D| {
        let mut err = 0.0f64;
        let mut scale = 0.0f64;
        for k in 0..m.len() {
            let (u, p, q) = (m.values()[k], m1.values()[k], m2.values()[k]);
            err = err.max((u - alpha * p - beta * q).norm());
            scale = scale.max((alpha * p).norm() + (beta * q).norm());
        }
        err / scale.max(1e-300)
    };
    let m = inverse_haar(&combo(&w1, &w2)?, &rep, &v0, out, None)?.result;
    let m1 = inverse_haar(&w1, &rep, &v0, out, None)?.result;
    let m2 = inverse_haar(&w2, &rep, &v0, out, None)?.result;
    let haar = lin_err(&m, &m1, &m2);

    let pairing = HardyPairing::parse("geo:0.4:0.5:3", "lin:-5:5:401")?;
    let hgrid = pairing.grid()?;
    let hrep = AffineRep::new(Exponent::Infinity);
    let cauchy = Fiducial::new(FiducialKind::CauchyPlus);
    let (h1, h2) = (
        covariant_transform(&hrep, &cauchy, &f, &hgrid)?,
        covariant_transform(&hrep, &cauchy, &g, &hgrid)?,
    );
    let vac = SampledSignal1D::on_window(-200.0, 200.0, 0.05, |x| 1.0 / (Complex64::new(0.0, 2.0 * PI) * Complex64::new(x, 1.0)))?;
    let hout = OutputGrid {
        x0: -3.0,
        dx: 0.025,
        n: 241,
    };
    let m = inverse_hardy(&combo(&h1, &h2)?, &hrep, &vac, &pairing, hout, None)?.result;
    let m1 = inverse_hardy(&h1, &hrep, &vac, &pairing, hout, None)?.result;
    let m2 = inverse_hardy(&h2, &hrep, &vac, &pairing, hout, None)?.result;
    Measure::new(haar.max(lin_err(&m, &m1, &m2)), 1e-12)
}

/// A random complex matrix rescaled to spectral radius in `[0.05, 0.95)`.
pub fn random_contraction(rng: &mut ChaCha8Rng, n: usize) -> Result<OperatorMatrix> {
    let m = OperatorMatrix::new(DMatrix::from_fn(n, n, |_, _| crand(rng)))?;
    let rho = spectral_radius(&m)?;
    let target = rng.gen_range(0.05..0.95);
    OperatorMatrix::new(m.matrix() * Complex64::new(target / rho, 0.0))
}

fn mobius_spectral_ball(rng: &mut ChaCha8Rng) -> Result<Measure> {
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let a = random_contraction(rng, 3)?;
        let g = random_su11(rng);
        worst = worst.max(spectral_radius(&mobius_apply(&g, &a)?)?);
    }
    Measure::new(worst, 1.0 + 1e-10)
}

fn mobius_group_action(rng: &mut ChaCha8Rng) -> Result<Measure> {
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let a = random_contraction(rng, 3)?;
        if mobius_apply(&Su11Element::identity(), &a)? != a {
            return Measure::new(f64::INFINITY, 1e-10);
        }
        let (g1, g2) = (random_su11(rng), random_su11(rng));
        let lhs = mobius_apply(&g1.compose(&g2), &a)?;
        let rhs = mobius_apply(&g1, &mobius_apply(&g2, &a)?)?;
        worst = worst.max((lhs.matrix() - rhs.matrix()).norm() / lhs.matrix().norm().max(1.0));
    }
    Measure::new(worst, 1e-10)
}

fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> Result<OperatorMatrix> {
    let m = DMatrix::from_fn(n, n, |_, _| crand(rng));
    OperatorMatrix::new((&m + m.adjoint()) * Complex64::new(0.5, 0.0))
}

fn random_unit(rng: &mut ChaCha8Rng, n: usize) -> DVector<Complex64> {
    let v = DVector::from_fn(n, |_, _| crand(rng));
    let norm = v.norm();
    v / Complex64::new(norm, 0.0)
}

fn numrange_containment(rng: &mut ChaCha8Rng) -> Result<Measure> {
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..5 {
        let a = OperatorMatrix::new(DMatrix::from_fn(3, 3, |_, _| crand(rng)))?;
        let orbit = UnitaryOrbit::new(&random_hermitian(rng, 3)?, (0..64).map(|k| 0.1 * k as f64).collect())?;
        let values = numrange_transform(&a, &random_unit(rng, 3), &orbit)?;
        let support = SupportFunction::new(&a, 360)?;
        for z in values {
            worst = worst.max(support.excess(z).1);
        }
    }
    Measure::new(worst.max(0.0), SUPPORT_SLACK)
}

fn numrange_continuity(rng: &mut ChaCha8Rng) -> Result<Measure> {
    let a = OperatorMatrix::new(DMatrix::from_fn(4, 4, |_, _| crand(rng)))?;
    let dt = 0.05;
    let orbit = UnitaryOrbit::new(&random_hermitian(rng, 4)?, (0..100).map(|k| dt * k as f64).collect())?;
    let values = numrange_transform(&a, &random_unit(rng, 4), &orbit)?;
    let bound = 2.0 * a.norm() * orbit.generator_norm() * dt + 1e-9;
    let worst = values.windows(2).map(|w| (w[1] - w[0]).norm() / bound).fold(0.0, f64::max);
    Measure::new(worst, 1.0)
}

fn small_transform(rng: &mut ChaCha8Rng) -> Result<TransformResult<AffineElement>> {
    let f = random_smooth(rng, -10.0, 10.0, 0.02)?;
    let grid = GroupGrid::parse("affine:a=log:0.1:10:8,b=lin:-3:3:13")?;
    covariant_transform(&AffineRep::new(Exponent::Finite(2.0)), &Fiducial::new(FiducialKind::Jump), &f, &grid)
}

fn byte_identical(rng: &mut ChaCha8Rng) -> Result<Measure> {
    let mut twin = rng.clone();
    let (mut a, mut b) = (Vec::new(), Vec::new());
    small_transform(rng)?.write_csv(&mut a)?;
    small_transform(&mut twin)?.write_csv(&mut b)?;
    Measure::new(if a == b { 0.0 } else { 1.0 }, 0.0)
}

fn csv_round_trip(rng: &mut ChaCha8Rng) -> Result<Measure> {
    let w = small_transform(rng)?;
    let mut buf = Vec::new();
    w.write_csv(&mut buf)?;
    let back = TransformResult::<AffineElement>::read_csv(buf.as_slice())?;
    let f = random_smooth(rng, -1.0, 1.0, 0.1)?;
    let mut sbuf = Vec::new();
    f.write_csv(&mut sbuf)?;
    let same = back == w && SampledSignal1D::read_csv(sbuf.as_slice())? == f;
    Measure::new(if same { 0.0 } else { 1.0 }, 0.0)
}

fn traceability(_: &mut ChaCha8Rng) -> Result<Measure> {
    let checks = registry();
    let missing = PROPERTIES
        .iter()
        .filter(|(p, _)| !checks.iter().any(|c| c.covers == *p))
        .count();
    Measure::new(missing as f64, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_property_is_covered_and_every_check_traced() {
        let checks = registry();
        for (p, _) in PROPERTIES {
            assert!(checks.iter().any(|c| c.covers == *p), "{p}");
        }
        for c in &checks {
            assert!(PROPERTIES.iter().any(|(p, _)| *p == c.covers), "{}", c.name);
            assert!(SUITES.contains(&c.suite));
        }
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run(1, &["nope".into()]).is_err());
    }

    #[test]
    fn polygon_membership() {
        let square = [(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)];
        assert!(in_polygon(&square, (0.0, 0.0)));
        assert!(!in_polygon(&square, (1.5, 0.0)));
        let g = EuclideanMotion::line(0.0, 0.0).unwrap();
        assert!((line_quadrature(&square, &g, 3.0, 0.001) - 2.0).abs() < 2e-3);
    }
}
