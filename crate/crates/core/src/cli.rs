//! The `covkit` command line.

use std::fmt;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use crate::checks;
use crate::error::Error;
use crate::fiducials::Fiducial;
use crate::groups::{make_grid, AnyGrid, Axis, AxisKind, EuclideanMotion, GroupGrid, Su11Element};
use crate::inversion::{inverse_haar, inverse_hardy, HardyPairing, OutputGrid, ReconstructionReport};
use crate::operators::{mobius_apply, numerical_range_hull, numrange_transform, read_vector_json, OperatorMatrix, UnitaryOrbit};
use crate::representations::{AffineRep, EuclideanRep};
use crate::signals::{Exponent, QuadratureRule, SampledSignal1D, SampledSignal2D, TailPolicy};
use crate::transform::{covariant_transform, hardy_maximal, radon_transform, TransformResult};

#[derive(Parser, Debug)]
#[command(name = "covkit", version, about = "Covariant transforms over concrete groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Covariant transform of a signal over a group grid
    Transform(TransformArgs),
    /// Inverse transform through the Haar or the Hardy pairing
    Reconstruct(ReconstructArgs),
    /// Hardy maximal function of a line signal
    Maximal(MaximalArgs),
    /// Radon transform of a plane signal over a grid of motions
    Radon(RadonArgs),
    /// Numerical-range samples along a unitary orbit
    Numrange(NumrangeArgs),
    /// Möbius action of SU(1,1) on a contraction matrix
    Mobius(MobiusArgs),
    /// Run the seeded property suites
    Check(CheckArgs),
}

#[derive(Args, Debug)]
struct TransformArgs {
    /// affine or euclidean
    #[arg(long)]
    group: String,
    /// Exponent of the affine representation: a number >= 1 or `inf`
    #[arg(long, default_value = "2")]
    p: String,
    /// cauchy+, cauchy-, combo:<c+>:<c->, jump, poisson, inner:<path>, avg or radonline
    #[arg(long)]
    fiducial: String,
    /// Signal CSV (x,re,im for affine; x,y,re,im for euclidean)
    #[arg(long)]
    signal: PathBuf,
    /// Grid spec, e.g. affine:a=log:0.1:10:32,b=lin:-5:5:128
    #[arg(long)]
    grid: String,
    /// Window tails: truncate or rational
    #[arg(long, default_value = "truncate")]
    tail: String,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct ReconstructArgs {
    /// Transform CSV written by `transform`
    #[arg(long)]
    transform: PathBuf,
    /// Exponent the transform was computed with
    #[arg(long, default_value = "2")]
    p: String,
    /// Vacuum vector CSV
    #[arg(long)]
    vacuum: PathBuf,
    /// haar or hardy
    #[arg(long, default_value = "haar")]
    pairing: String,
    /// Scales for the Hardy pairing, geo:<a0>:<ratio>:<n>
    #[arg(long)]
    a_sequence: Option<String>,
    /// b axis for the Hardy pairing, lin:<lo>:<hi>:<n>
    #[arg(long)]
    b_grid: Option<String>,
    /// Reference signal; fixes the output grid and enables the residual
    #[arg(long)]
    signal: Option<PathBuf>,
    /// Output grid lin:<lo>:<hi>:<n> when no reference is given
    #[arg(long)]
    out_grid: Option<String>,
    #[arg(long)]
    out: PathBuf,
    /// JSON report path (stdout when absent)
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MaximalArgs {
    #[arg(long)]
    signal: PathBuf,
    /// Scales, e.g. log:0.05:20:200
    #[arg(long)]
    a_grid: String,
    /// Linear centres, e.g. lin:-4:4:161
    #[arg(long)]
    b_grid: String,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct RadonArgs {
    /// Plane signal CSV (x,y,re,im)
    #[arg(long)]
    signal: PathBuf,
    /// Motion grid, e.g. euclidean:theta=lin:0:3.1416:16,d=lin:-0.9:0.9:64
    #[arg(long)]
    grid: String,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct NumrangeArgs {
    /// Matrix JSON (rows of [re, im] pairs)
    #[arg(long)]
    matrix: PathBuf,
    /// Hermitian generator JSON
    #[arg(long)]
    hermitian: PathBuf,
    /// Unit vector JSON ([re, im] pairs)
    #[arg(long)]
    x: PathBuf,
    /// lin:<t0>:<t1>:<n>
    #[arg(long)]
    t_grid: String,
    #[arg(long)]
    out: PathBuf,
    /// Also write boundary points of the numerical range (JSON)
    #[arg(long)]
    hull_out: Option<PathBuf>,
    #[arg(long, default_value_t = 360)]
    n_theta: usize,
}

#[derive(Args, Debug)]
struct MobiusArgs {
    #[arg(long)]
    matrix: PathBuf,
    /// alpha entry, e.g. 1.25 or 1+0.5i
    #[arg(long)]
    alpha: String,
    /// beta entry
    #[arg(long)]
    beta: String,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// Suites to run (repeatable or comma separated); all when absent
    #[arg(long, value_delimiter = ',')]
    suite: Vec<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write the report to a file
    #[arg(long)]
    out: Option<PathBuf>,
}

/// An error with the operation it came from.
#[derive(Debug)]
pub struct CliError {
    op: &'static str,
    err: Error,
}

impl CliError {
    /// 2 for malformed specs, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self.err {
            Error::Parse { .. } => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.op, self.err)
    }
}

trait Context<T> {
    fn during(self, op: &'static str) -> Result<T, CliError>;
}

impl<T> Context<T> for crate::Result<T> {
    fn during(self, op: &'static str) -> Result<T, CliError> {
        self.map_err(|err| CliError { op, err })
    }
}

fn open(path: &Path) -> crate::Result<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn create(path: &Path) -> crate::Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write_text(path: &Path, text: &str) -> crate::Result<()> {
    let mut w = create(path)?;
    w.write_all(text.as_bytes())
        .and_then(|_| w.flush())
        .map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })
}

fn read_signal(path: &Path) -> crate::Result<SampledSignal1D> {
    SampledSignal1D::read_csv(open(path)?)
}

fn parse_complex(what: &'static str, s: &str) -> crate::Result<Complex64> {
    s.trim()
        .parse::<Complex64>()
        .map_err(|_| Error::parse(what, s, "not a complex number"))
}

fn parse_tail(s: &str) -> crate::Result<TailPolicy> {
    match s {
        "truncate" => Ok(TailPolicy::Truncate),
        "rational" => Ok(TailPolicy::RationalTail),
        other => Err(Error::parse("tail policy", other, "expected truncate or rational")),
    }
}

fn transform(args: TransformArgs) -> Result<(), CliError> {
    let op = "transform::covariant_transform";
    let p: Exponent = args.p.parse().during("transform::parse_exponent")?;
    let rule = QuadratureRule::TRAPEZOID.with_tail(parse_tail(&args.tail).during("transform::parse_tail")?);
    let fiducial = Fiducial::parse(&args.fiducial, |path| read_signal(Path::new(path)))
        .during("fiducials::parse")?
        .with_rule(rule);
    let grid = make_grid(&args.grid).during("groups::make_grid")?;
    let mut out = create(&args.out).during("cli::write_output")?;
    match (args.group.as_str(), grid) {
        ("affine", AnyGrid::Affine(grid)) => {
            let f = read_signal(&args.signal).during("signals::read_csv")?;
            let w = covariant_transform(&AffineRep::new(p), &fiducial, &f, &grid).during(op)?;
            w.write_csv(&mut out).during("transform::write_csv")
        }
        ("euclidean", AnyGrid::Euclidean(grid)) => {
            let f = SampledSignal2D::read_csv(open(&args.signal).during("signals::read_csv")?).during("signals::read_csv")?;
            let w = covariant_transform(&EuclideanRep, &fiducial, &f, &grid).during(op)?;
            w.write_csv(&mut out).during("transform::write_csv")
        }
        (group, _) => Err(Error::parse("group", group, "must be affine or euclidean and match the grid")).during("cli::transform"),
    }
}

fn output_grid(spec: &str) -> crate::Result<OutputGrid> {
    let axis = Axis::parse(spec)?;
    if axis.kind() != AxisKind::Lin || axis.len() < 2 {
        return Err(Error::parse("output grid", spec, "expected lin:<lo>:<hi>:<n> with n >= 2"));
    }
    Ok(OutputGrid {
        x0: axis.lo(),
        dx: axis.step().unwrap_or(1.0),
        n: axis.len(),
    })
}

fn reconstruct(args: ReconstructArgs) -> Result<(), CliError> {
    let p: Exponent = args.p.parse().during("reconstruct::parse_exponent")?;
    let w = TransformResult::read_csv(open(&args.transform).during("transform::read_csv")?).during("transform::read_csv")?;
    let v0 = read_signal(&args.vacuum).during("signals::read_csv")?;
    let reference = args.signal.as_deref().map(read_signal).transpose().during("signals::read_csv")?;
    let out = match (&reference, &args.out_grid) {
        (Some(r), _) => OutputGrid::like(r),
        (None, Some(spec)) => output_grid(spec).during("reconstruct::parse_out_grid")?,
        (None, None) => {
            return Err(Error::parse("reconstruct", "--out-grid", "needs --signal or --out-grid")).during("cli::reconstruct")
        }
    };
    let rep = AffineRep::new(p);
    let report: ReconstructionReport = match args.pairing.as_str() {
        "haar" => inverse_haar(&w, &rep, &v0, out, reference.as_ref()).during("inversion::inverse_haar")?,
        "hardy" => {
            let (Some(a), Some(b)) = (&args.a_sequence, &args.b_grid) else {
                return Err(Error::parse("pairing", "hardy", "needs --a-sequence and --b-grid")).during("cli::reconstruct");
            };
            let pairing = HardyPairing::parse(a, b).during("inversion::parse_pairing")?;
            inverse_hardy(&w, &rep, &v0, &pairing, out, reference.as_ref()).during("inversion::inverse_hardy")?
        }
        other => return Err(Error::parse("pairing", other, "expected haar or hardy")).during("cli::reconstruct"),
    };
    report
        .result
        .write_csv(create(&args.out).during("cli::write_output")?)
        .during("signals::write_csv")?;
    let json = report.to_json();
    match &args.report {
        Some(path) => write_text(path, &format!("{json}\n")).during("cli::write_report"),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

fn maximal(args: MaximalArgs) -> Result<(), CliError> {
    let f = read_signal(&args.signal).during("signals::read_csv")?;
    let a = Axis::parse(&args.a_grid).during("groups::parse_axis")?;
    let b = Axis::parse(&args.b_grid).during("groups::parse_axis")?;
    let m = hardy_maximal(&f, &b, &a.values()).during("transform::hardy_maximal")?;
    m.write_csv(create(&args.out).during("cli::write_output")?).during("signals::write_csv")
}

fn radon(args: RadonArgs) -> Result<(), CliError> {
    let f = SampledSignal2D::read_csv(open(&args.signal).during("signals::read_csv")?).during("signals::read_csv")?;
    let grid: GroupGrid<EuclideanMotion> = GroupGrid::parse(&args.grid).during("groups::parse_grid")?;
    let r = radon_transform(&f, &grid).during("transform::radon_transform")?;
    r.write_csv(create(&args.out).during("cli::write_output")?).during("transform::write_csv")
}

fn numrange(args: NumrangeArgs) -> Result<(), CliError> {
    let read_matrix = |p: &Path| OperatorMatrix::read_json(open(p)?);
    let a = read_matrix(&args.matrix).during("operators::read_matrix")?;
    let h = read_matrix(&args.hermitian).during("operators::read_matrix")?;
    let x = read_vector_json(open(&args.x).during("operators::read_vector")?).during("operators::read_vector")?;
    let t = Axis::parse(&args.t_grid).during("groups::parse_axis")?;
    if t.kind() != AxisKind::Lin {
        return Err(Error::parse("t grid", args.t_grid.clone(), "expected lin:<t0>:<t1>:<n>")).during("cli::numrange");
    }
    let orbit = UnitaryOrbit::new(&h, t.values()).during("operators::unitary_orbit")?;
    let values = numrange_transform(&a, &x, &orbit).during("operators::numrange_transform")?;
    SampledSignal1D::new(t.lo(), t.step().unwrap_or(1.0), values)
        .and_then(|s| s.write_csv(create(&args.out)?))
        .during("cli::write_output")?;
    if let Some(path) = &args.hull_out {
        let hull = numerical_range_hull(&a, args.n_theta).during("operators::numerical_range_hull")?;
        let pairs: Vec<[f64; 2]> = hull.iter().map(|z| [z.re, z.im]).collect();
        let json = serde_json::to_string(&pairs).expect("points are plain data");
        write_text(path, &format!("{json}\n")).during("cli::write_output")?;
    }
    Ok(())
}

fn mobius(args: MobiusArgs) -> Result<(), CliError> {
    let a = OperatorMatrix::read_json(open(&args.matrix).during("operators::read_matrix")?).during("operators::read_matrix")?;
    let alpha = parse_complex("alpha", &args.alpha).during("cli::mobius")?;
    let beta = parse_complex("beta", &args.beta).during("cli::mobius")?;
    let g = Su11Element::new(alpha, beta).during("groups::su11")?;
    let out = mobius_apply(&g, &a).during("operators::mobius_apply")?;
    write_text(&args.out, &format!("{}\n", out.to_json())).during("cli::write_output")
}

fn check(args: CheckArgs) -> Result<bool, CliError> {
    let report = checks::run(args.seed, &args.suite).during("checks::run")?;
    let text = report.render();
    print!("{text}");
    if let Some(path) = &args.out {
        write_text(path, &text).during("cli::write_report")?;
    }
    Ok(report.all_passed())
}

fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("COVKIT_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|n| *n >= 1)
        .ok_or_else(|| format!("COVKIT_THREADS must be an integer >= 1, got `{value}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("covkit: cli::configure_threads: {msg}");
        return 2;
    }
    let result = match cli.command {
        Command::Transform(a) => transform(a),
        Command::Reconstruct(a) => reconstruct(a),
        Command::Maximal(a) => maximal(a),
        Command::Radon(a) => radon(a),
        Command::Numrange(a) => numrange(a),
        Command::Mobius(a) => mobius(a),
        Command::Check(a) => match check(a) {
            Ok(true) => Ok(()),
            Ok(false) => return 1,
            Err(e) => Err(e),
        },
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("covkit: {e}");
            e.exit_code()
        }
    }
}

pub fn main() -> i32 {
    run(std::env::args_os())
}
