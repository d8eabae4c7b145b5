mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use umbilic_core::complexpoly::DEFAULT_GUARD;
use umbilic_core::umbilic::VerifyOptions;
use umbilic_core::{Error, ErrorClass};

#[derive(Parser, Debug)]
#[command(
    name = "umbilic",
    version,
    about = "Constrained polynomials, convex surfaces and umbilic indices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample seeded constrained profiles with roots away from the unit circle.
    Gen(GenArgs),
    /// Verify I = K − N/2 and both bounds for every profile in a file.
    Verify(VerifyArgs),
    /// Mesh a profile surface or an ellipsoid and run the convexity probe.
    Surface(SurfaceArgs),
    /// Umbilic index at the chart origin of a profile surface or ellipsoid.
    Index(IndexArgs),
    /// Seeded generate-and-verify sweep over a degree range, as CSV.
    Sweep(SweepArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Obj,
}

#[derive(Args, Debug, Clone)]
pub struct Tolerances {
    /// Tolerance for the coefficient relations.
    #[arg(long = "tol-relation", default_value_t = 1e-12)]
    pub relation: f64,
    /// Root finder convergence tolerance.
    #[arg(long = "tol-root", default_value_t = 1e-12)]
    pub root: f64,
    /// Root finder iteration limit.
    #[arg(long = "tol-max-iter", default_value_t = 500)]
    pub max_iter: usize,
    /// Radius below which root approximants are merged.
    #[arg(long = "tol-cluster", default_value_t = 1e-6)]
    pub cluster: f64,
    /// Initial sample count of the argument-principle counter.
    #[arg(long = "tol-arg-samples", default_value_t = 1024)]
    pub arg_samples: usize,
    /// Initial θ samples per winding circle.
    #[arg(long = "tol-n-theta", default_value_t = 1024)]
    pub n_theta: usize,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, default_value_t = DEFAULT_GUARD)]
    pub guard: f64,
    /// Modulus of the leading section coefficient A_N1.
    #[arg(long, default_value_t = 1.0)]
    pub scale: f64,
    /// Support constant C. Defaults to 10 for verification and to ten times
    /// the largest |F| on the mesh domain for `surface`.
    #[arg(long = "constant-c")]
    pub constant_c: Option<f64>,
    #[command(flatten)]
    pub tol: Tolerances,
}

impl Common {
    pub fn verify_options(&self) -> VerifyOptions {
        VerifyOptions {
            guard: self.guard,
            scale: self.scale,
            support_constant: self.constant_c.unwrap_or(10.0),
            relation_tol: self.tol.relation,
            root_tol: self.tol.root,
            max_iter: self.tol.max_iter,
            cluster_radius: self.tol.cluster,
            arg_samples: self.tol.arg_samples,
            n_theta: self.tol.n_theta,
            ..VerifyOptions::default()
        }
    }
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long)]
    pub degree: usize,
    #[arg(long, default_value_t = 1)]
    pub count: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// JSON profile or array of profiles.
    #[arg(long = "in")]
    pub input: PathBuf,
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SurfaceArgs {
    /// JSON profile (the first entry is used if the file holds an array).
    #[arg(long = "in", conflicts_with = "ellipsoid")]
    pub input: Option<PathBuf>,
    /// Semi-axis squares a1,a2,a3.
    #[arg(long, value_parser = io::parse_triple)]
    pub ellipsoid: Option<[f64; 3]>,
    /// nR,nTheta,Rmax.
    #[arg(long, value_parser = io::parse_grid)]
    pub grid: Option<umbilic_core::surfacegen::GridSpec>,
    /// Double C until the convexity probe passes.
    #[arg(long = "auto-c")]
    pub auto_c: bool,
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value_t = Format::Obj)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct IndexArgs {
    #[arg(long = "in", conflicts_with = "ellipsoid")]
    pub input: Option<PathBuf>,
    #[arg(long, value_parser = io::parse_triple)]
    pub ellipsoid: Option<[f64; 3]>,
    /// Move ξ = R0 to the origin before measuring.
    #[arg(long, requires = "ellipsoid", conflicts_with = "auto_umbilic")]
    pub recenter: Option<f64>,
    /// Measure at each of the four real umbilics of a triaxial ellipsoid.
    #[arg(long = "auto-umbilic", requires = "ellipsoid")]
    pub auto_umbilic: bool,
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Single degree or inclusive range such as 3..8.
    #[arg(long, value_parser = io::parse_degrees)]
    pub degree: io::Degrees,
    #[arg(long, default_value_t = 100)]
    pub count: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Append a per-row wall-clock column (not reproducible).
    #[arg(long)]
    pub timing: bool,
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Failure carrying its own exit status.
#[derive(Debug)]
pub struct Exit {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        Exit {
            code: exit_code(e.class()),
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Exit {
    fn from(e: std::io::Error) -> Self {
        Exit {
            code: 2,
            message: e.to_string(),
        }
    }
}

pub fn exit_code(class: ErrorClass) -> u8 {
    match class {
        ErrorClass::Verification => 1,
        ErrorClass::Input => 2,
        ErrorClass::Numerical => 3,
    }
}

fn init_threads() -> Result<(), Exit> {
    let Ok(raw) = std::env::var("UMBILIC_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.parse().map_err(|_| Exit {
        code: 2,
        message: format!("UMBILIC_THREADS must be a positive integer, got {raw:?}"),
    })?;
    if n == 0 {
        return Err(Exit {
            code: 2,
            message: "UMBILIC_THREADS must be positive".into(),
        });
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Exit {
            code: 2,
            message: e.to_string(),
        })?;
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Exit> {
    init_threads()?;
    match cli.command {
        Command::Gen(a) => commands::gen(a),
        Command::Verify(a) => commands::verify(a),
        Command::Surface(a) => commands::surface(a),
        Command::Index(a) => commands::index(a),
        Command::Sweep(a) => commands::sweep(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
