//! Command-line front end: validate line constants, compute bound
//! parameters, evaluate network matrices at points or over frequency sweeps,
//! and run the verification suite.

mod config;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use telegrapher::line::KappaGrid;
use telegrapher::netparams::{abcd_direct, admittance, chain_matrix, impedance};
use telegrapher::verify::{default_suite, parse_suite, run_suite, CheckStatus, VerifyError};
use telegrapher::ComplexMatrix;

use config::{load_constants, LineConfig};
use sweep::{run_sweep, Spacing, SweepSpec};

const DEFAULT_SEED: u64 = 2026;

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Validation(String),
    Domain(String),
    VerificationFailed { failed: usize },
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Validation(_) => 2,
            CliError::Domain(_) => 3,
            CliError::VerificationFailed { .. } => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(msg) => write!(f, "parse error: {msg}"),
            CliError::Validation(msg) => write!(f, "validation failure: {msg}"),
            CliError::Domain(msg) => write!(f, "domain error: {msg}"),
            CliError::VerificationFailed { failed } => {
                write!(f, "verification failed: {failed} check(s) did not pass")
            }
            CliError::Io(msg) => write!(f, "io error: {msg}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    Chain,
    Abcd,
    Admittance,
    Impedance,
    /// Growth-envelope column (sweeps only).
    Bounds,
}

impl Quantity {
    fn column_name(&self) -> &'static str {
        match self {
            Quantity::Chain => "chain",
            Quantity::Abcd => "abcd",
            Quantity::Admittance => "admittance",
            Quantity::Impedance => "impedance",
            Quantity::Bounds => "bounds",
        }
    }
}

#[derive(Parser)]
#[command(
    name = "telegrapher",
    version,
    about = "Network parameter matrices and growth bounds of multiconductor transmission lines"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a line config and print its derived bound parameters
    Params {
        /// Line config (JSON). Optional with --emit-config, which then
        /// prints a built-in template.
        config: Option<PathBuf>,
        /// Re-emit the validated config (or a template) as canonical JSON
        #[arg(long)]
        emit_config: bool,
        /// Print the validation report and bound parameters as JSON
        #[arg(long)]
        json: bool,
    },
    /// Evaluate one network matrix at a single (s, d) point
    Eval {
        config: PathBuf,
        /// Real part of s (1/s)
        #[arg(long)]
        s_re: f64,
        /// Imaginary part of s (rad/s)
        #[arg(long, default_value_t = 0.0)]
        s_im: f64,
        /// Line length (m)
        #[arg(long)]
        d: f64,
        #[arg(long, value_enum)]
        quantity: Quantity,
    },
    /// Evaluate norms over a frequency grid and write CSV
    Sweep {
        config: PathBuf,
        #[arg(long)]
        f_start: f64,
        #[arg(long)]
        f_stop: f64,
        #[arg(long)]
        points: usize,
        /// Grid spacing: linear or log
        #[arg(long, default_value = "log")]
        spacing: String,
        /// Real part of s; the sweep evaluates s = sigma + j 2 pi f
        #[arg(long, default_value_t = 0.0)]
        sigma: f64,
        #[arg(long)]
        d: f64,
        /// Comma-separated subset of chain,abcd,admittance,impedance,bounds
        #[arg(long, value_delimiter = ',', value_enum, required = true)]
        quantities: Vec<Quantity>,
        #[arg(long)]
        out: PathBuf,
        /// Also emit every matrix entry as paired _re/_im columns
        #[arg(long)]
        full_matrices: bool,
    },
    /// Run the verification suite and write a JSON report
    Verify {
        config: PathBuf,
        /// Suite file (JSON array of check configs); the full default suite
        /// when omitted
        #[arg(long)]
        suite: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Params {
            config,
            emit_config,
            json,
        } => cmd_params(config, emit_config, json),
        Command::Eval {
            config,
            s_re,
            s_im,
            d,
            quantity,
        } => cmd_eval(&config, Complex64::new(s_re, s_im), d, quantity),
        Command::Sweep {
            config,
            f_start,
            f_stop,
            points,
            spacing,
            sigma,
            d,
            quantities,
            out,
            full_matrices,
        } => {
            let spacing = match spacing.as_str() {
                "linear" => Spacing::Linear,
                "log" => Spacing::Log,
                other => {
                    return Err(CliError::Parse(format!(
                        "spacing must be linear or log, got {other}"
                    )))
                }
            };
            let spec = SweepSpec {
                f_start,
                f_stop,
                points,
                spacing,
                sigma,
                d,
                quantities,
                full_matrices,
            };
            cmd_sweep(&config, &spec, &out)
        }
        Command::Verify { config, suite, out } => cmd_verify(&config, suite.as_deref(), &out),
    }
}

fn cmd_params(config: Option<PathBuf>, emit_config: bool, json: bool) -> Result<(), CliError> {
    let Some(path) = config else {
        if emit_config {
            println!("{}", LineConfig::template().to_json());
            return Ok(());
        }
        return Err(CliError::Parse(
            "params needs a config path (or --emit-config for a template)".into(),
        ));
    };

    let raw = LineConfig::load(&path)?;
    let report = raw.validation_report()?;
    if !report.pass {
        return Err(CliError::Validation(report.failures.join("; ")));
    }

    let line = raw.into_constants()?;
    if emit_config {
        println!("{}", LineConfig::from_constants(&line).to_json());
        return Ok(());
    }

    let params = line
        .bound_params(&KappaGrid::default())
        .map_err(|e| CliError::Domain(e.to_string()))?;

    if json {
        #[derive(serde::Serialize)]
        struct ParamsOutput<'a> {
            validation: &'a telegrapher::line::ValidationReport,
            bound_params: &'a telegrapher::line::BoundParams,
        }
        let output = ParamsOutput {
            validation: &report,
            bound_params: &params,
        };
        println!(
            "{}",
            serde_json::to_string_pretty(&output).expect("serialization cannot fail")
        );
        return Ok(());
    }

    println!("validation: pass (n = {})", report.n);
    println!(
        "  lambda_min(L) = {:.6e}   lambda_min(C) = {:.6e}",
        report.lambda_min_l, report.lambda_min_c
    );
    println!("bound parameters:");
    println!("  alpha       = {:.17e} 1/s", params.alpha);
    println!("  gamma       = {:.17e} 1/s", params.gamma);
    println!("  rho         = {:.17e} 1/s", params.rho);
    println!("  c0          = {:.17e} 1/m", params.c0);
    println!("  c1          = {:.17e} s/m", params.c1);
    println!("  kappa_lower = {:.17e}", params.kappa_lower);
    println!("  kappa_upper = {:.17e}", params.kappa_upper);
    println!("  theta       = {:.17e} 1/s", params.theta);
    println!("  nu_lower    = {:.17e} m/s", params.nu_lower);
    println!("  nu_upper    = {:.17e} m/s", params.nu_upper);
    println!("  b           = {:.17e} s/m", params.b);
    Ok(())
}

fn cmd_eval(
    config: &std::path::Path,
    s: Complex64,
    d: f64,
    quantity: Quantity,
) -> Result<(), CliError> {
    let line = load_constants(config)?;
    let result = match quantity {
        Quantity::Chain => chain_matrix(&line, s, d),
        Quantity::Abcd => abcd_direct(&line, s, d),
        Quantity::Admittance => admittance(&line, s, d),
        Quantity::Impedance => impedance(&line, s, d),
        Quantity::Bounds => {
            return Err(CliError::Parse(
                "bounds is a sweep column, not a point quantity".into(),
            ))
        }
    };
    let port = result.map_err(|e| CliError::Domain(e.to_string()))?;
    print_matrix(&port.value);
    Ok(())
}

fn print_matrix(m: &ComplexMatrix) {
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols())
            .map(|j| {
                let z = m[(i, j)];
                format!("{:.16e} {:+.16e}j", z.re, z.im)
            })
            .collect();
        println!("{}", row.join("  "));
    }
}

fn cmd_sweep(
    config: &std::path::Path,
    spec: &SweepSpec,
    out: &std::path::Path,
) -> Result<(), CliError> {
    let line = load_constants(config)?;
    // Validate (including the half-plane precondition) before creating the
    // output file, so a rejected sweep writes nothing.
    spec.validate(&line)?;
    let mut buffer = Vec::new();
    run_sweep(&line, spec, &mut buffer)?;
    std::fs::write(out, buffer).map_err(|e| CliError::Io(e.to_string()))?;
    Ok(())
}

fn cmd_verify(
    config: &std::path::Path,
    suite_path: Option<&std::path::Path>,
    out: &std::path::Path,
) -> Result<(), CliError> {
    let line = load_constants(config)?;
    let seed = match std::env::var("TELEGRAPH_SEED") {
        Ok(text) => text
            .parse::<u64>()
            .map_err(|_| CliError::Parse(format!("TELEGRAPH_SEED must be a u64, got {text:?}")))?,
        Err(_) => DEFAULT_SEED,
    };
    let suite = match suite_path {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
            parse_suite(&text, seed).map_err(|e| match e {
                VerifyError::UnknownCheck(id) => CliError::Parse(format!("unknown check id: {id}")),
                VerifyError::MalformedSuite(msg) => CliError::Parse(msg),
            })?
        }
        None => default_suite(seed),
    };

    let report = run_suite(&line, &suite);
    for check in &report.checks {
        println!(
            "{:<28} {}  worst_margin {:+.6e}  samples {}",
            check.check_id.as_str(),
            match check.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
            },
            check.worst_margin,
            check.samples_run
        );
    }
    println!("passed {} / {}", report.passed, report.checks.len());

    let json = serde_json::to_string_pretty(&report).expect("report serialization cannot fail");
    std::fs::write(out, json).map_err(|e| CliError::Io(e.to_string()))?;

    if report.failed > 0 {
        return Err(CliError::VerificationFailed {
            failed: report.failed,
        });
    }
    Ok(())
}
