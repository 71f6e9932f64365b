//! `fpvac` command-line driver.
//!
//! Every subcommand reads its table from an optional TOML run file
//! (`--config`) and overlays any flags given on the command line. Flag names
//! are the file keys verbatim.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use toml::{Table, Value};

/// Exit status for a run that could not be completed.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Numerical(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Numerical(_) => 1,
            Failure::Usage(_) => 2,
        }
    }
}

impl From<fpvac::Error> for Failure {
    fn from(e: fpvac::Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

pub const OUT_DIR_ENV: &str = "FPVAC_OUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "fpvac", version, about = "Quadrant modes, Bogoliubov coefficients and detector response in the conformally flat patch")]
struct Cli {
    /// TOML run file; flags override its keys.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory [default: the run file's out_dir, then $FPVAC_OUT_DIR, then "."].
    #[arg(long = "out_dir", global = true)]
    out_dir: Option<PathBuf>,

    /// Worker threads for sweeps [default: number of cores].
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify events and round-trip them through the quadrant charts.
    #[command(after_help = commands::QUADRANT_COLUMNS)]
    Quadrant(QuadrantArgs),
    /// Tabulate quadrant modes and the positive-frequency check of G and Ḡ.
    #[command(after_help = commands::MODES_COLUMNS)]
    Modes(ModesArgs),
    /// Bogoliubov coefficient tables and the relation report.
    #[command(after_help = commands::BOGOLIUBOV_COLUMNS)]
    Bogoliubov(BogoliubovArgs),
    /// Entangled vacuum state, thermal spectrum, entropy and residuals.
    #[command(after_help = commands::VACUUM_COLUMNS)]
    Vacuum(VacuumArgs),
    /// Integrand identity, response-rate sweep and windowed comparison.
    #[command(after_help = commands::DETECTOR_COLUMNS)]
    Detector(DetectorArgs),
    /// Temperature scale and thermalization margin for a scenario.
    #[command(after_help = commands::FEASIBILITY_COLUMNS)]
    Feasibility(FeasibilityArgs),
    /// Run the acceptance suite and print one line per criterion.
    Verify,
}

#[derive(Args, Debug, Serialize)]
#[command(rename_all = "snake_case")]
struct QuadrantArgs {
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<f64>,
    /// Half-width of the event grid.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    extent: Option<f64>,
    /// Grid points per axis.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    points: Option<usize>,
    /// Time of a single event to classify (with --z).
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    z: Option<f64>,
}

#[derive(Args, Debug, Serialize)]
#[command(rename_all = "snake_case")]
struct ModesArgs {
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<f64>,
    /// Comma-separated ω/a values.
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    omega_over_a: Option<Vec<f64>>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    v_min: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    v_max: Option<f64>,
    /// Logarithmic points per sign of V.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    points: Option<usize>,
    /// Comma-separated window scales in units of 1/a.
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    sigmas: Option<Vec<f64>>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    window_order: Option<u32>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    span: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    cell_width: Option<f64>,
}

#[derive(Args, Debug, Serialize)]
#[command(rename_all = "snake_case")]
struct BogoliubovArgs {
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    omega_over_a: Option<Vec<f64>>,
    /// Comma-separated momenta.
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<Vec<f64>>,
    /// First damping of the ladder, as a multiple of k.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    delta_first: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    delta_ratio: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    delta_levels: Option<usize>,
}

#[derive(Args, Debug, Serialize)]
#[command(rename_all = "snake_case")]
struct VacuumArgs {
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    omega: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<f64>,
    /// Highest occupation kept [default: smallest with deficit below 1e-12].
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    n_trunc: Option<usize>,
}

#[derive(Args, Debug, Serialize)]
#[command(rename_all = "snake_case")]
struct DetectorArgs {
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<f64>,
    /// Comma-separated gaps E/a.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    energy_over_a: Option<Vec<f64>>,
    /// Comma-separated regulator ladder in units of 1/a.
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    epsilons: Option<Vec<f64>>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    delta_range: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    window_start: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    window_end: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    window_epsilon: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    identity_samples: Option<usize>,
}

#[derive(Args, Debug, Serialize)]
#[command(rename_all = "snake_case")]
struct FeasibilityArgs {
    /// Target temperature in kelvin.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    temperature: Option<f64>,
    /// Scenario file with keys a, t1, t2, e_bar_1.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    scenario: Option<String>,
}

fn overrides<T: Serialize>(args: &T) -> Result<Table, Failure> {
    match Value::try_from(args) {
        Ok(Value::Table(t)) => Ok(t),
        Ok(_) => Ok(Table::new()),
        Err(e) => Err(Failure::Usage(e.to_string())),
    }
}

struct Context {
    doc: Table,
    out_dir: PathBuf,
}

impl Context {
    fn section<T: serde::de::DeserializeOwned>(&self, name: &str, args: &impl Serialize) -> Result<T, Failure> {
        Ok(fpvac::config::resolve_section(&self.doc, name, overrides(args)?)?)
    }
}

fn setup(cli: &Cli) -> Result<Context, Failure> {
    let doc = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            fpvac::config::RunConfig::parse(&text)?;
            fpvac::config::parse_document(&text)?
        }
        None => Table::new(),
    };
    let out_dir = cli
        .out_dir
        .clone()
        .or_else(|| doc.get("out_dir").and_then(Value::as_str).map(PathBuf::from))
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    let threads = match cli.threads {
        Some(n) => Some(n),
        None => doc
            .get("threads")
            .and_then(Value::as_integer)
            .map(|n| usize::try_from(n).unwrap_or(0)),
    };
    if let Some(n) = threads {
        if n == 0 {
            return Err(Failure::Usage("threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    Ok(Context { doc, out_dir })
}

fn run(cli: Cli) -> Result<(), Failure> {
    let ctx = setup(&cli)?;
    match &cli.command {
        Command::Quadrant(args) => commands::quadrant(&ctx.out_dir, ctx.section("quadrant", args)?),
        Command::Modes(args) => commands::modes(&ctx.out_dir, ctx.section("modes", args)?),
        Command::Bogoliubov(args) => commands::bogoliubov(&ctx.out_dir, ctx.section("bogoliubov", args)?),
        Command::Vacuum(args) => commands::vacuum(&ctx.out_dir, ctx.section("vacuum", args)?),
        Command::Detector(args) => commands::detector(&ctx.out_dir, ctx.section("detector", args)?),
        Command::Feasibility(args) => commands::feasibility(&ctx.out_dir, ctx.section("feasibility", args)?),
        Command::Verify => commands::verify(),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(msg) => eprintln!("error: {msg}"),
                Failure::Numerical(msg) => eprintln!("numerical failure: {msg}"),
            }
            ExitCode::from(f.code())
        }
    }
}
