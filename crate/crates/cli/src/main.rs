//! Command-line surface: evaluate oscillator solutions, generate partner
//! potentials and their eigenfunctions, and run the verification suites.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 configuration error,
//! 3 numerical failure, 4 singular potential, 5 excluded factorization
//! energy.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use invosc::algebra::{Normalization, PartnerEigenfunction, TransformedWave};
use invosc::diagnostics::{self, Suite};
use invosc::oscillator::{Combo, OscillatorKind, SolutionSpec};
use invosc::susy::{self, ComplexTransform, ZeroKind};
use invosc::wave::WaveFunction;
use invosc::Complex64;

const TOL_ENV: &str = "INVOSC_TOL";

#[derive(Parser)]
#[command(name = "invosc", version, about = "omega-family oscillators and inverted-oscillator SUSY partners")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a solution of the stationary Schrodinger equation on a grid.
    Eval(EvalArgs),
    /// Generate a non-singular partner potential V2 (complex case).
    Partner(PartnerArgs),
    /// Evaluate an eigenfunction of the partner Hamiltonian H2.
    Eigenfunction(EigenArgs),
    /// Run a verification suite and emit a JSON report.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum KindArg {
    Harmonic,
    Free,
    Inverted,
}

impl From<KindArg> for OscillatorKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Harmonic => OscillatorKind::Harmonic,
            KindArg::Free => OscillatorKind::Free,
            KindArg::Inverted => OscillatorKind::Inverted,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum ComboArg {
    Even,
    Odd,
    General,
    Plus,
    Minus,
    Left,
    Right,
}

#[derive(Args, Serialize)]
struct GridArgs {
    #[arg(long, allow_hyphen_values = true)]
    xmin: f64,
    #[arg(long, allow_hyphen_values = true)]
    xmax: f64,
    /// Number of grid points (xmin = xmax needs exactly 1).
    #[arg(long)]
    samples: usize,
}

impl GridArgs {
    fn validate(&self) -> Result<(), CliError> {
        if !self.xmin.is_finite() || !self.xmax.is_finite() {
            return Err(CliError::Config("grid bounds must be finite".into()));
        }
        if self.xmin == self.xmax {
            if self.samples != 1 {
                return Err(CliError::Config("a degenerate grid (xmin = xmax) needs --samples 1".into()));
            }
        } else if self.xmin > self.xmax {
            return Err(CliError::Config("xmin must not exceed xmax".into()));
        } else if self.samples < 2 {
            return Err(CliError::Config("need at least 2 samples".into()));
        }
        Ok(())
    }

    fn points(&self) -> Vec<f64> {
        if self.samples == 1 {
            return vec![self.xmin];
        }
        (0..self.samples)
            .map(|k| self.xmin + (self.xmax - self.xmin) * k as f64 / (self.samples - 1) as f64)
            .collect()
    }
}

#[derive(Args, Serialize)]
struct EvalArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long, value_enum)]
    combo: ComboArg,
    #[arg(long, allow_hyphen_values = true)]
    energy: f64,
    /// Even-part coefficient for --combo general.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    c: f64,
    /// Odd-part coefficient for --combo general.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    d: f64,
    #[command(flatten)]
    grid: GridArgs,
    /// Output CSV path (stdout when omitted; a .meta.json sidecar is written
    /// next to a file output).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct PartnerArgs {
    #[arg(long, allow_hyphen_values = true)]
    eps_re: f64,
    #[arg(long, allow_hyphen_values = true)]
    eps_im: f64,
    #[command(flatten)]
    grid: GridArgs,
    /// Points for the pre-emission singularity scan.
    #[arg(long, default_value_t = 4000)]
    scan_samples: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct EigenArgs {
    #[arg(long, allow_hyphen_values = true)]
    eps_re: f64,
    #[arg(long, allow_hyphen_values = true)]
    eps_im: f64,
    #[arg(long, allow_hyphen_values = true)]
    energy: f64,
    #[arg(long, value_enum)]
    combo: ComboArg,
    /// Also emit the untransformed eigenfunction column.
    #[arg(long)]
    include_base: bool,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum SuiteArg {
    Specfun,
    Oscillator,
    Ladder,
    Susy,
    Algebra,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Specfun => Suite::Specfun,
            SuiteArg::Oscillator => Suite::Oscillator,
            SuiteArg::Ladder => Suite::Ladder,
            SuiteArg::Susy => Suite::Susy,
            SuiteArg::Algebra => Suite::Algebra,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Args, Serialize)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: SuiteArg,
    /// Override every check tolerance (INVOSC_TOL supplies a default).
    #[arg(long)]
    tol: Option<f64>,
    /// Also write the JSON report to this path.
    #[arg(long)]
    json: Option<PathBuf>,
}

enum CliError {
    Config(String),
    Numeric(String),
    Singular(String),
    Excluded(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Singular(_) => 4,
            CliError::Excluded(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Numeric(m) | CliError::Singular(m) | CliError::Excluded(m) => m,
        }
    }
}

impl From<invosc::Error> for CliError {
    fn from(e: invosc::Error) -> Self {
        use invosc::Error::*;
        match e {
            ExcludedEpsilon { .. } => CliError::Excluded(e.to_string()),
            WZero(_) | SeedZero(_) | WronskianZero(_) => CliError::Singular(e.to_string()),
            InvalidSpec(_) | Domain(_) | UnsupportedKind => CliError::Config(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Config(format!("io error: {e}"))
    }
}

/// 17 significant digits, '.' decimal separator; negative zero normalized.
fn fmt(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.16e}")
}

#[derive(Serialize)]
struct Sidecar<'a, T: Serialize> {
    command: &'a str,
    config: &'a T,
    library_version: &'a str,
    tol_env: Option<String>,
}

fn write_sidecar<T: Serialize>(out: &Path, command: &str, config: &T) -> Result<(), CliError> {
    let sidecar = Sidecar {
        command,
        config,
        library_version: env!("CARGO_PKG_VERSION"),
        tol_env: std::env::var(TOL_ENV).ok(),
    };
    let path = PathBuf::from(format!("{}.meta.json", out.display()));
    let mut f = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut f, &sidecar).map_err(|e| CliError::Config(e.to_string()))?;
    f.write_all(b"\n")?;
    Ok(())
}

/// Stream CSV rows either to a file (with sidecar) or stdout.
fn emit_csv<T: Serialize>(
    out: &Option<PathBuf>,
    command: &str,
    config: &T,
    header: &str,
    rows: Vec<String>,
) -> Result<(), CliError> {
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            w.write_all(header.as_bytes())?;
            w.write_all(b"\n")?;
            for r in rows {
                w.write_all(r.as_bytes())?;
                w.write_all(b"\n")?;
            }
            w.flush()?;
            write_sidecar(path, command, config)?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut w = stdout.lock();
            writeln!(w, "{header}")?;
            for r in rows {
                writeln!(w, "{r}")?;
            }
        }
    }
    Ok(())
}

fn combo_of(arg: ComboArg, c: f64, d: f64) -> Combo {
    match arg {
        ComboArg::Even => Combo::Even,
        ComboArg::Odd => Combo::Odd,
        ComboArg::General => Combo::General { c, d },
        ComboArg::Plus => Combo::Plus,
        ComboArg::Minus => Combo::Minus,
        ComboArg::Left => Combo::Left,
        ComboArg::Right => Combo::Right,
    }
}

fn cmd_eval(args: &EvalArgs) -> Result<(), CliError> {
    args.grid.validate()?;
    let spec = SolutionSpec {
        kind: args.kind.into(),
        energy: args.energy,
        combo: combo_of(args.combo, args.c, args.d),
    };
    spec.validate().map_err(|e| CliError::Config(e.to_string()))?;
    let wave = invosc::oscillator::solution_wave(&spec)?;
    // Plus/Minus are intrinsically complex; everything else here is real
    let complex_output = matches!(args.combo, ComboArg::Plus | ComboArg::Minus);
    let mut rows = Vec::with_capacity(args.grid.samples);
    for x in args.grid.points() {
        let v = wave.value(x)?;
        if complex_output {
            rows.push(format!("{},{},{}", fmt(x), fmt(v.re), fmt(v.im)));
        } else {
            rows.push(format!("{},{}", fmt(x), fmt(v.re)));
        }
    }
    let header = if complex_output { "x,re,im" } else { "x,value" };
    emit_csv(&args.out, "eval", args, header, rows)
}

fn cmd_partner(args: &PartnerArgs) -> Result<(), CliError> {
    args.grid.validate()?;
    if args.scan_samples < 2 {
        return Err(CliError::Config("scan needs at least 2 samples".into()));
    }
    let eps = Complex64::new(args.eps_re, args.eps_im);
    let transform = ComplexTransform::new(eps)?; // exit 5 on excluded eps
    let scan = susy::singularity_scan(
        |x| transform.w(x),
        (args.grid.xmin.min(-1.0), args.grid.xmax.max(1.0)),
        args.scan_samples,
        ZeroKind::WZero,
    )?;
    if scan.is_singular {
        let zeros: Vec<String> = scan.zeros.iter().map(|(x, _)| format!("{x:.6}")).collect();
        return Err(CliError::Singular(format!(
            "w(x) vanishes inside the window at [{}]; the transform is singular",
            zeros.join(", ")
        )));
    }
    let mut rows = Vec::with_capacity(args.grid.samples);
    for x in args.grid.points() {
        let v2 = transform.v2(x)?;
        let v0 = -x * x / 2.0;
        rows.push(format!("{},{},{}", fmt(x), fmt(v2), fmt(v0)));
    }
    emit_csv(&args.out, "partner", args, "x,V2,V0", rows)
}

fn cmd_eigenfunction(args: &EigenArgs) -> Result<(), CliError> {
    args.grid.validate()?;
    let base = match args.combo {
        ComboArg::Left => Combo::Left,
        ComboArg::Right => Combo::Right,
        ComboArg::Plus => Combo::Plus,
        ComboArg::Minus => Combo::Minus,
        _ => {
            return Err(CliError::Config(
                "eigenfunction bases are left, right, plus or minus".into(),
            ))
        }
    };
    let eps = Complex64::new(args.eps_re, args.eps_im);
    let p = PartnerEigenfunction {
        eps,
        energy: args.energy,
        base,
        normalization: Normalization::BFactor,
    };
    let wave = TransformedWave::new(&p)?; // exit 5 on excluded eps
    let base_spec = SolutionSpec {
        kind: OscillatorKind::Inverted,
        energy: args.energy,
        combo: base,
    };
    let base_wave = invosc::oscillator::solution_wave(&base_spec)?;
    let complex_output = matches!(args.combo, ComboArg::Plus | ComboArg::Minus);
    let mut rows = Vec::with_capacity(args.grid.samples);
    for x in args.grid.points() {
        let v = wave.eval(x)?.value;
        let mut row = if complex_output {
            format!("{},{},{}", fmt(x), fmt(v.re), fmt(v.im))
        } else {
            format!("{},{}", fmt(x), fmt(v.re))
        };
        if args.include_base {
            let b = base_wave.value(x)?;
            if complex_output {
                row.push_str(&format!(",{},{}", fmt(b.re), fmt(b.im)));
            } else {
                row.push_str(&format!(",{}", fmt(b.re)));
            }
        }
        rows.push(row);
    }
    let header = match (complex_output, args.include_base) {
        (false, false) => "x,psi2",
        (false, true) => "x,psi2,psi0",
        (true, false) => "x,psi2_re,psi2_im",
        (true, true) => "x,psi2_re,psi2_im,psi0_re,psi0_im",
    };
    emit_csv(&args.out, "eigenfunction", args, header, rows)
}

#[derive(Serialize)]
struct VerifyOutput {
    #[serde(flatten)]
    report: invosc::DiagnosticReport,
    tol_override: Option<f64>,
    tol_env: Option<String>,
    library_version: &'static str,
}

fn cmd_verify(args: &VerifyArgs) -> Result<bool, CliError> {
    let env_tol = match std::env::var(TOL_ENV) {
        Ok(s) => Some(
            s.parse::<f64>()
                .map_err(|_| CliError::Config(format!("{TOL_ENV} must parse as a float, got {s:?}")))?,
        ),
        Err(_) => None,
    };
    let tol = args.tol.or(env_tol);
    let report = diagnostics::run_suite(args.suite.into(), tol);
    let pass = report.pass;
    let out = VerifyOutput {
        report,
        tol_override: tol,
        tol_env: std::env::var(TOL_ENV).ok(),
        library_version: env!("CARGO_PKG_VERSION"),
    };
    let rendered = serde_json::to_string_pretty(&out).map_err(|e| CliError::Numeric(e.to_string()))?;
    println!("{rendered}");
    if let Some(path) = &args.json {
        let mut f = BufWriter::new(File::create(path)?);
        f.write_all(rendered.as_bytes())?;
        f.write_all(b"\n")?;
    }
    Ok(pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.cmd {
        Command::Eval(args) => cmd_eval(args).map(|_| true),
        Command::Partner(args) => cmd_partner(args).map(|_| true),
        Command::Eigenfunction(args) => cmd_eigenfunction(args).map(|_| true),
        Command::Verify(args) => cmd_verify(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
