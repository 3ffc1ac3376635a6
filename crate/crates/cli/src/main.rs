use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use seam_core::figures::{
    self, AxisSpec, FigureDataset, FlowRunConfig, GridSpec, DEFAULT_RESOLUTION_THREE_CLASS,
    DEFAULT_RESOLUTION_TWO_CLASS,
};
use seam_core::verify::{self, Suite, VerifyConfig};
use seam_core::{Error as CoreError, Logits, Probabilities};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "seam", version, about = "Fenchel-Young seam figures, property checks and replicator flows")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit a figure dataset
    #[command(subcommand)]
    Figure(FigureCommand),
    /// Run seeded property suites
    Verify(VerifyArgs),
    /// Integrate the replicator flow to the softmax equilibrium
    Flow(FlowArgs),
}

#[derive(Subcommand, Debug)]
enum FigureCommand {
    /// Gap field over (Delta, p) with the seam p = sigma(Delta)
    TwoClass(TwoClassArgs),
    /// Softmax image of a centered-logit grid in the 2-simplex
    ThreeClass(ThreeClassArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Output file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args, Debug)]
struct GridArgs {
    /// Grid points per axis
    #[arg(long)]
    resolution: Option<usize>,
    /// Axis range MIN:MAX; repeat once per axis
    #[arg(long = "range", value_name = "MIN:MAX", allow_hyphen_values = true)]
    ranges: Vec<String>,
    /// Recorded in metadata only; figures involve no randomness
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct TwoClassArgs {
    #[command(flatten)]
    output: OutputArgs,
    #[command(flatten)]
    grid: GridArgs,
    /// Seam tolerance in nats
    #[arg(long, default_value_t = seam_core::duality::DEFAULT_SEAM_TOLERANCE)]
    tol: f64,
    /// Where to write the sampled seam curve; defaults next to --out
    #[arg(long)]
    seam_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ThreeClassArgs {
    #[command(flatten)]
    output: OutputArgs,
    #[command(flatten)]
    grid: GridArgs,
    /// Common offset c added to the raw logits (a + c, b + c, c)
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    offset: f64,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_parser = parse_suite, default_value = "all")]
    suite: Suite,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Convergence tolerance of the flow suite, nats
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Replace one property's tolerance: ID=VALUE
    #[arg(long = "tol-override", value_name = "ID=VALUE")]
    tol_overrides: Vec<String>,
    /// Also write the full report as JSON
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FlowArgs {
    #[command(flatten)]
    output: OutputArgs,
    /// Number of classes
    #[arg(long)]
    dim: Option<usize>,
    /// Comma-separated logits; overrides --seed
    #[arg(long, allow_hyphen_values = true)]
    logits: Option<String>,
    /// Draw logits uniformly from [-3, 3]
    #[arg(long)]
    seed: Option<u64>,
    /// "uniform" or comma-separated probabilities
    #[arg(long, default_value = "uniform")]
    y0: String,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, default_value_t = 1_000_000)]
    max_steps: usize,
    /// Add barycentric triangle coordinates (d = 3 only)
    #[arg(long)]
    barycentric: bool,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

/// Failure with the process exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl Failure {
    fn usage(error: impl Into<anyhow::Error>) -> Self {
        Self { code: EXIT_USAGE, error: error.into() }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        let code = if error.downcast_ref::<CoreError>().is_some() { EXIT_USAGE } else { EXIT_FAILURE };
        Self { code, error }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        Self::usage(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Figure(FigureCommand::TwoClass(args)) => two_class(args),
        Command::Figure(FigureCommand::ThreeClass(args)) => three_class(args),
        Command::Verify(args) => verify_cmd(args),
        Command::Flow(args) => flow(args),
    }
}

fn parse_range(s: &str) -> Result<(f64, f64), Failure> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| Failure::usage(anyhow::anyhow!("range {s:?} is not MIN:MAX")))?;
    let parse = |v: &str| {
        v.trim()
            .parse::<f64>()
            .map_err(|e| Failure::usage(anyhow::anyhow!("bad range bound {v:?}: {e}")))
    };
    Ok((parse(lo)?, parse(hi)?))
}

fn grid_from(args: &GridArgs, default: GridSpec, default_res: usize) -> Result<GridSpec, Failure> {
    let res = args.resolution.unwrap_or(default_res);
    let (x, y) = match args.ranges.as_slice() {
        [] => ((default.x.min, default.x.max), (default.y.min, default.y.max)),
        [a, b] => (parse_range(a)?, parse_range(b)?),
        other => {
            return Err(Failure::usage(anyhow::anyhow!(
                "expected 0 or 2 --range flags, got {}",
                other.len()
            )))
        }
    };
    Ok(GridSpec {
        x: AxisSpec::new(x.0, x.1, res)?,
        y: AxisSpec::new(y.0, y.1, res)?,
    })
}

fn write_output(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            // a closed pipe (`| head`) is not an error worth reporting
            match std::io::stdout().lock().write_all(text.as_bytes()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e).context("writing stdout"),
                _ => Ok(()),
            }
        }
    }
}

fn encode(ds: &FigureDataset, format: Format) -> String {
    match format {
        Format::Json => ds.to_json(),
        _ => ds.to_csv(),
    }
}

fn sibling(path: &Path, tag: &str) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("figure");
    let ext = path.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    path.with_file_name(format!("{stem}.{tag}.{ext}"))
}

fn with_seed(mut ds: FigureDataset, seed: Option<u64>) -> FigureDataset {
    ds.metadata.seed = seed;
    ds
}

fn two_class(args: TwoClassArgs) -> Result<u8, Failure> {
    let grid = grid_from(&args.grid, GridSpec::two_class_default(), DEFAULT_RESOLUTION_TWO_CLASS)?;
    let fig = figures::figure_two_class_with_tolerance(&grid, args.tol)?;
    let field = with_seed(fig.field, args.grid.seed);
    let seam = with_seed(fig.seam, args.grid.seed);
    let out = args.output.out.as_deref();
    if args.output.format == Format::Svg {
        write_output(out, &figures::two_class_svg(&field, &seam, &grid))?;
        return Ok(0);
    }
    write_output(out, &encode(&field, args.output.format))?;
    let seam_path = args.seam_out.or_else(|| out.map(|p| sibling(p, "seam")));
    if let Some(p) = seam_path {
        write_output(Some(&p), &encode(&seam, args.output.format))?;
    }
    Ok(0)
}

fn three_class(args: ThreeClassArgs) -> Result<u8, Failure> {
    let grid = grid_from(&args.grid, GridSpec::three_class_default(), DEFAULT_RESOLUTION_THREE_CLASS)?;
    let ds = with_seed(figures::figure_three_class(&grid, args.offset)?, args.grid.seed);
    let text = match args.output.format {
        Format::Svg => figures::three_class_svg(&ds, &grid),
        f => encode(&ds, f),
    };
    write_output(args.output.out.as_deref(), &text)?;
    Ok(0)
}

fn verify_cmd(args: VerifyArgs) -> Result<u8, Failure> {
    let mut cfg = VerifyConfig {
        samples: args.samples,
        seed: args.seed,
        flow_tolerance: args.tol,
        ..VerifyConfig::default()
    };
    for o in &args.tol_overrides {
        let (id, v) = o
            .split_once('=')
            .ok_or_else(|| Failure::usage(anyhow::anyhow!("override {o:?} is not ID=VALUE")))?;
        let v: f64 = v
            .parse()
            .map_err(|e| Failure::usage(anyhow::anyhow!("override {o:?}: {e}")))?;
        cfg.tolerance_overrides.insert(id.to_string(), v);
    }
    let report = verify::run(args.suite, &cfg)?;
    write_output(None, &format!("{report}\n"))?;
    for f in report.failures() {
        if let Some(sample) = &f.failing_sample {
            eprintln!("replay {}: {}", f.id, sample);
        }
    }
    if let Some(p) = &args.out {
        let text = serde_json::to_string_pretty(&report).context("serializing report")?;
        write_output(Some(p), &(text + "\n"))?;
    }
    Ok(if report.passed() { 0 } else { EXIT_FAILURE })
}

fn parse_list(s: &str) -> Result<Vec<f64>, Failure> {
    s.split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|e| Failure::usage(anyhow::anyhow!("bad number {v:?}: {e}")))
        })
        .collect()
}

/// `(1, …, −1)` evenly spaced; `(1, 0, −1)` for d = 3.
fn default_logits(d: usize) -> Vec<f64> {
    (0..d).map(|i| 1.0 - 2.0 * i as f64 / (d - 1) as f64).collect()
}

fn flow(args: FlowArgs) -> Result<u8, Failure> {
    let z = match (&args.logits, args.seed) {
        (Some(list), _) => parse_list(list)?,
        (None, Some(seed)) => {
            let d = args.dim.unwrap_or(3);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..d).map(|_| rng.gen_range(-3.0..=3.0)).collect()
        }
        (None, None) => default_logits(args.dim.unwrap_or(3).max(2)),
    };
    let d = z.len();
    if let Some(dim) = args.dim {
        if dim != d {
            return Err(Failure::usage(anyhow::anyhow!("--dim {dim} but {d} logits given")));
        }
    }
    if !(2..=figures::MAX_FLOW_DIM).contains(&d) {
        return Err(Failure::usage(anyhow::anyhow!(
            "dimension {d} outside [2, {}]",
            figures::MAX_FLOW_DIM
        )));
    }
    let z = Logits::new(z)?;
    let y0 = if args.y0 == "uniform" {
        Probabilities::uniform(d)?
    } else {
        Probabilities::new(parse_list(&args.y0)?)?
    };
    let cfg = FlowRunConfig {
        z,
        y0,
        tol: args.tol,
        max_steps: args.max_steps,
        barycentric: args.barycentric,
        seed: args.seed,
    };
    let (ds, trace) = figures::flow_run(&cfg)?;
    let text = match args.output.format {
        Format::Svg => figures::flow_svg(&ds),
        f => encode(&ds, f),
    };
    write_output(args.output.out.as_deref(), &text)?;
    eprintln!(
        "{}",
        json!({
            "converged": trace.converged,
            "steps": trace.steps,
            "rejected": trace.rejected,
            "final_gap": trace.final_gap,
            "t": trace.last().t,
            "rows": ds.rows.len(),
        })
    );
    Ok(if trace.converged { 0 } else { EXIT_FAILURE })
}
