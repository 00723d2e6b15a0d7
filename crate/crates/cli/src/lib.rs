//! Command-line front end: argument parsing, file handling and exit codes.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use dissipative_pencil::gallery::DzektserModel;
use dissipative_pencil::io::{self, format_matrix, format_pencil, format_trajectory_csv};
use dissipative_pencil::report::{analyze, AnalysisOptions, AnalysisStatus, DecompositionSummary};
use dissipative_pencil::{consistent_ic, decompose, simulate, Alpha, CoupledBlocks, Error, Pencil, Tolerances};

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_SINGULAR: i32 = 3;
pub const EXIT_INCONSISTENT: i32 = 4;
pub const EXIT_NOT_DECOMPOSABLE: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "dpencil", version, about = "Analyze dissipative matrix pencils d/dt(Ex) = Ax")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the dissipativity, radiality and splitting report.
    Analyze(AnalyzeArgs),
    /// Write the projections P, Q and the reduced generator G.
    Decompose(DecomposeArgs),
    /// Integrate the homogeneous system from E x(0) = z0.
    Simulate(SimulateArgs),
    /// Assemble the block pencil E = diag(I, 0), A = [A1 A2; A3 A4].
    Coupled(CoupledArgs),
    /// Write the Dzektser model pencil in sine-mode coordinates.
    Dzektser(DzektserArgs),
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub pencil: PathBuf,
    #[arg(long, default_value_t = 1e-2)]
    pub lambda_min: f64,
    #[arg(long, default_value_t = 1e3)]
    pub lambda_max: f64,
    #[arg(long, default_value_t = 25)]
    pub lambda_steps: usize,
    /// Relative dissipativity threshold.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    pub pencil: PathBuf,
    /// `auto`, a real number, or a complex entry `re:im`.
    #[arg(long, default_value = "auto")]
    pub alpha: String,
    #[arg(long)]
    pub out_prefix: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    pub pencil: PathBuf,
    #[arg(long)]
    pub z0: PathBuf,
    #[arg(long)]
    pub t_final: f64,
    #[arg(long)]
    pub steps: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct CoupledArgs {
    #[arg(long)]
    pub a1: PathBuf,
    #[arg(long)]
    pub a2: PathBuf,
    #[arg(long)]
    pub a3: PathBuf,
    #[arg(long)]
    pub a4: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct DzektserArgs {
    #[arg(long)]
    pub modes: usize,
    #[arg(long)]
    pub out: PathBuf,
}

/// Failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn other(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_OTHER,
            message: message.into(),
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => EXIT_PARSE,
        Error::SingularAtS { .. } | Error::EmptyResolventSet => EXIT_SINGULAR,
        Error::InconsistentIC { .. } => EXIT_INCONSISTENT,
        Error::NotDecomposable(_) | Error::DegenerateA0(_) => EXIT_NOT_DECOMPOSABLE,
        _ => EXIT_OTHER,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

type Outcome = Result<i32, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::other(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::other(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: Result<T, dissipative_pencil::ParseError>) -> Result<T, Failure> {
    r.map_err(|e| Failure {
        code: EXIT_PARSE,
        message: format!("{}: {e}", path.display()),
    })
}

fn load_pencil(path: &Path) -> Result<Pencil, Failure> {
    in_file(path, io::parse_pencil(&read(path)?))
}

fn parse_alpha(text: &str) -> Result<Alpha, Failure> {
    if text == "auto" {
        return Ok(Alpha::Auto);
    }
    let entry = if text.contains(':') {
        io::parse_entry(text, 1, 1)
    } else {
        io::parse_entry(&format!("{text}:0"), 1, 1)
    };
    entry.map(Alpha::Value).map_err(|e| Failure {
        code: EXIT_PARSE,
        message: format!("--alpha: {}", e.message),
    })
}

fn run_analyze(args: &AnalyzeArgs, out: &mut dyn Write) -> Outcome {
    let p = load_pencil(&args.pencil)?;
    if !(args.lambda_min > 0.0 && args.lambda_max >= args.lambda_min && args.lambda_steps > 0) {
        return Err(Failure::other("lambda grid must satisfy 0 < min <= max and steps > 0"));
    }
    if !(args.tol > 0.0 && args.tol.is_finite()) {
        return Err(Failure::other("--tol must be a positive number"));
    }
    let options = AnalysisOptions {
        lambda_min: args.lambda_min,
        lambda_max: args.lambda_max,
        lambda_steps: args.lambda_steps,
        tolerances: Tolerances {
            dissipativity: args.tol,
            ..Tolerances::default()
        },
    };
    let report = analyze(&p, &options);
    write!(out, "{report}").map_err(|e| Failure::other(e.to_string()))?;
    Ok(match report.status {
        AnalysisStatus::Ok => EXIT_OK,
        AnalysisStatus::Singular => EXIT_SINGULAR,
    })
}

fn run_decompose(args: &DecomposeArgs, out: &mut dyn Write) -> Outcome {
    let p = load_pencil(&args.pencil)?;
    let alpha = parse_alpha(&args.alpha)?;
    let d = decompose(&p, alpha, &Tolerances::default())?;
    if let Some(prefix) = &args.out_prefix {
        for (suffix, m) in [("P", &d.p), ("Q", &d.q), ("G", &d.g)] {
            let mut name = prefix.clone().into_os_string();
            name.push(".");
            name.push(suffix);
            write(Path::new(&name), &format_matrix(m))?;
        }
    }
    let summary = DecompositionSummary::new(&d, &p);
    write!(out, "{summary}").map_err(|e| Failure::other(e.to_string()))?;
    Ok(EXIT_OK)
}

fn run_simulate(args: &SimulateArgs) -> Outcome {
    let p = load_pencil(&args.pencil)?;
    let z0 = in_file(&args.z0, io::parse_vector(&read(&args.z0)?))?;
    let tol = Tolerances::default();
    let d = decompose(&p, Alpha::Auto, &tol)?;
    let ic = consistent_ic(&d, &z0, &tol)?;
    let traj = simulate(&p, &d, &ic.x1, args.t_final, args.steps)?;
    write(&args.out, &format_trajectory_csv(&traj))?;
    Ok(EXIT_OK)
}

fn run_coupled(args: &CoupledArgs) -> Outcome {
    let mut blocks = Vec::with_capacity(4);
    for path in [&args.a1, &args.a2, &args.a3, &args.a4] {
        blocks.push(in_file(path, io::parse_matrix(&read(path)?))?);
    }
    let [a1, a2, a3, a4]: [_; 4] = blocks.try_into().expect("four blocks");
    let coupled = CoupledBlocks::new(a1, a2, a3, a4, None)?;
    write(&args.out, &format_pencil(&coupled.assemble()))?;
    Ok(EXIT_OK)
}

fn run_dzektser(args: &DzektserArgs) -> Outcome {
    let model = DzektserModel::new(args.modes)?;
    write(&args.out, &format_pencil(&model.pencil()))?;
    Ok(EXIT_OK)
}

/// Runs one invocation. Reports go to `out`, diagnostics to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let outcome = match &cli.command {
        Command::Analyze(a) => run_analyze(a, out),
        Command::Decompose(a) => run_decompose(a, out),
        Command::Simulate(a) => run_simulate(a),
        Command::Coupled(a) => run_coupled(a),
        Command::Dzektser(a) => run_dzektser(a),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "dpencil: {}", f.message);
            f.code
        }
    }
}

/// Parses `argv` (including the program name) and runs it.
pub fn dispatch<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            let _ = write!(err, "{e}");
            match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_OTHER,
            }
        }
    }
}
