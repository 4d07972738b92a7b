mod commands;
mod config;

use clap::{Parser, Subcommand, ValueEnum};
use commands::*;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;
use std::process::ExitCode;
use zplab_core::ErrorKind;

const GRAMMAR: &str = "\
Expressions are sums of monomials in z0, z1, ..., z20, where zl stands for the
l-th derivative of zeta:
    expr  := term (('+' | '-') term)*
    term  := ['-'] factor ('*' factor)*
    factor:= number | '(' re ',' im ')' | 'z' digits ['^' integer]
Examples: \"z0\", \"z1^2 + z0^3\", \"(1,-2)*z0*z2 - 0.5*z1^2\".

Exit codes: 0 success, 1 a verification failed, 2 invalid input, 3 numerical failure.
A JSON file passed with --config may hold any long flag as a key (for example
{\"expr\": \"z1\", \"T\": 200, \"threads\": 1}); flags given on the command line win.";

#[derive(Parser)]
#[command(name = "zplab", version, about = "Zeros and Dirichlet series of polynomials in zeta and its derivatives", after_help = GRAMMAR)]
struct Cli {
    /// JSON file mirroring the long flags
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Validate parameters and print the planned computation without evaluating zeta
    #[arg(long, global = true)]
    dry_run: bool,
    /// Worker threads; falls back to ZPLAB_THREADS, then to all cores
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the result here instead of standard output
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Report runtime_ms as 0 so repeated runs are byte-identical
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate F (and optionally F') at points s = sigma + i t
    #[command(after_help = "CSV columns: sigma,t,re,im,error_bound[,d_re,d_im]")]
    Eval(EvalArgs),
    /// Dirichlet coefficients eta_n of F
    #[command(after_help = "CSV columns: n,re,im")]
    Coeffs(CoeffsArgs),
    /// Coefficients alpha(d) of F'/F on the lattice n / n_F^m, d <= X
    #[command(after_help = "CSV columns: d,re,im with d written as p/q")]
    Logderiv(LogderivArgs),
    /// deg1, deg2, J and the sum of the J coefficients
    #[command(after_help = "CSV columns: deg1,deg2,sumJ_re,sumJ_im,condition")]
    Degrees(DegreesArgs),
    /// Locate zeros in a rectangle, or in [E1, E2] x [1, T]
    #[command(after_help = "CSV columns: beta,gamma,multiplicity,residual")]
    Zeros(ZerosArgs),
    /// Count zeros with 1 < gamma < T against the predicted count
    #[command(after_help = REPORT_CSV)]
    Count(CountArgs),
    /// Zeros in the disks |s + 2n| < epsilon around the trivial zeros
    #[command(after_help = "CSV columns: n,epsilon,count,deg1")]
    Cluster(ClusterArgs),
    /// Certified right and empirical left zero-free abscissae
    #[command(after_help = "CSV columns: e2f,e1f_scan,epsilon,t_lo,t_hi")]
    Zerofree(ZerofreeArgs),
    /// Check one of T1..T6 or C7 and report predicted against measured
    #[command(after_help = REPORT_CSV)]
    Verify(VerifyArgs),
    /// Sum of x^rho over zeros with 1 < gamma < T against alpha(x) T / 2 pi
    #[command(after_help = REPORT_CSV)]
    Powersum(PowersumArgs),
    /// Weyl sums and star discrepancy of {alpha gamma} over zeros up to T
    #[command(after_help = "CSV columns: m,re,im,abs; the report goes to JSON only")]
    Equidist(EquidistArgs),
}

const REPORT_CSV: &str =
    "CSV columns: theorem_id,predicted_re,predicted_im,measured_re,measured_im,discrepancy,tolerance,verdict,zero_count,runtime_ms";

fn exit_code(e: &CliError) -> u8 {
    match e {
        CliError::Input(_) => 2,
        CliError::Core(e) if e.kind() == ErrorKind::Input => 2,
        CliError::Core(_) => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("zplab: error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let mut file = match &cli.config {
        Some(path) => config::load(path)?,
        None => Default::default(),
    };
    let global = config::Global::resolve(cli.threads, cli.format, cli.output, cli.no_timing, &mut file)?;
    let job = match cli.command {
        Command::Eval(a) => eval(config::merge(a, file)?)?,
        Command::Coeffs(a) => coeffs(config::merge(a, file)?)?,
        Command::Logderiv(a) => logderiv(config::merge(a, file)?)?,
        Command::Degrees(a) => degrees(config::merge(a, file)?)?,
        Command::Zeros(a) => zeros(config::merge(a, file)?)?,
        Command::Count(a) => count(config::merge(a, file)?)?,
        Command::Cluster(a) => cluster(config::merge(a, file)?)?,
        Command::Zerofree(a) => zerofree(config::merge(a, file)?)?,
        Command::Verify(a) => verify(config::merge(a, file)?)?,
        Command::Powersum(a) => powersum(config::merge(a, file)?)?,
        Command::Equidist(a) => equidist(config::merge(a, file)?)?,
    };
    if cli.dry_run {
        let mut plan = job.plan;
        plan["threads"] = global.threads.map_or(serde_json::Value::Null, Into::into);
        global.write(&config::json(&plan)?)?;
        return Ok(0);
    }
    global.install_threads()?;
    let out = (job.run)(&global)?;
    let text = match global.format.unwrap_or(job.default_format) {
        Format::Json => config::json(&out.json)?,
        Format::Csv => out.csv,
    };
    global.write(&text)?;
    Ok(if out.failed { 1 } else { 0 })
}
