//! Command-line front end: classify a product's invariance families, check a
//! single symbol against both the structural classifier and the brute-force
//! oracle, or construct a product realizing a prescribed rotation divisor.
//!
//! Exit codes: 0 success, 1 classifier/oracle disagreement, 2 input error,
//! 3 internal failure.

mod problem;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mobiusmodel::classifier::{
    classify_d, classify_l, construct_example, is_d_trivial, is_l_trivial, rotation_divisor,
};
use mobiusmodel::oracle::{invariance_report, OracleError};
use mobiusmodel::{SelfMap, ToleranceConfig};

use problem::{ProblemFile, ToleranceEntry, ZeroEntry};
use report::Report;

#[derive(Debug)]
pub struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: 2,
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: 3,
        }
    }
}

impl From<OracleError> for CliError {
    fn from(err: OracleError) -> Self {
        CliError::internal(format!("oracle failure: {err}"))
    }
}

#[derive(Parser)]
#[command(
    name = "mobiusmodel",
    version,
    about = "Classify and certify composition-operator invariance of finite-dimensional model spaces"
)]
struct Cli {
    /// Absolute complex-equality tolerance (overrides profile and file).
    #[arg(long, global = true)]
    eq_tol: Option<f64>,
    /// Relative span-membership residual threshold.
    #[arg(long, global = true)]
    residual_tol: Option<f64>,
    /// Bound for root-of-unity and iteration-order searches.
    #[arg(long, global = true)]
    max_order: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report the invariance families D and L of the product in a problem file.
    Classify { path: PathBuf },
    /// Check one symbol two ways: structural classification vs span oracle.
    Check { path: PathBuf },
    /// Write a problem file whose product has rotation divisor exactly D.
    Construct {
        n: u32,
        d: u32,
        #[arg(long)]
        out: PathBuf,
    },
}

fn profile_config() -> Result<ToleranceConfig, CliError> {
    let profile =
        std::env::var("MOBIUSMODEL_TOLERANCE_PROFILE").unwrap_or_else(|_| "default".to_string());
    match profile.as_str() {
        "default" | "" => Ok(ToleranceConfig::default()),
        "strict" => Ok(ToleranceConfig {
            eq_tol: 1e-11,
            residual_tol: 1e-10,
            cond_max: 1e8,
            max_order: 1024,
        }),
        "loose" => Ok(ToleranceConfig {
            eq_tol: 1e-7,
            residual_tol: 1e-6,
            cond_max: 1e13,
            max_order: 256,
        }),
        other => Err(CliError::input(format!(
            "unknown MOBIUSMODEL_TOLERANCE_PROFILE {other:?} (expected default, strict, or loose)"
        ))),
    }
}

fn effective_config(cli: &Cli, file: Option<&ProblemFile>) -> Result<ToleranceConfig, CliError> {
    let base = profile_config()?;
    let mut cfg = match file {
        Some(f) => f.tolerances_over(&base),
        None => base,
    };
    if let Some(v) = cli.eq_tol {
        cfg.eq_tol = v;
    }
    if let Some(v) = cli.residual_tol {
        cfg.residual_tol = v;
    }
    if let Some(v) = cli.max_order {
        cfg.max_order = v;
    }
    cfg.validate()
        .map_err(|e| CliError::input(format!("invalid tolerances: {e}")))?;
    Ok(cfg)
}

fn cmd_classify(cli: &Cli, path: &PathBuf) -> Result<(String, u8), CliError> {
    let file = ProblemFile::load(path)?;
    let cfg = effective_config(cli, Some(&file))?;
    let theta = file.blaschke_product(&cfg)?;

    let mut report = Report::new("classify");
    report.push("degree", theta.degree());
    report.push("distinct_zeros", theta.distinct_zero_count());
    report.push("vanishes_at_origin", theta.vanishes_at_origin());
    if !theta.vanishes_at_origin() {
        let divisor = rotation_divisor(&theta)
            .map_err(|e| CliError::internal(format!("divisor computation failed: {e}")))?;
        report.push("rotation_divisor", divisor);
        let trivial_d = is_d_trivial(&theta)
            .map_err(|e| CliError::internal(format!("triviality test failed: {e}")))?;
        report.push("trivial_d", trivial_d);
    } else {
        report.push("trivial_d", false);
    }
    report.push("trivial_l", is_l_trivial(&theta, &cfg));
    report.push_family("d", &classify_d(&theta, &cfg));
    report.push_family("l", &classify_l(&theta, &cfg));
    Ok((report.render(), 0))
}

fn cmd_check(cli: &Cli, path: &PathBuf) -> Result<(String, u8), CliError> {
    let file = ProblemFile::load(path)?;
    let cfg = effective_config(cli, Some(&file))?;
    let theta = file.blaschke_product(&cfg)?;
    let symbol = file.self_map(&cfg)?;

    let l_family = classify_l(&theta, &cfg);
    let d_family = classify_d(&theta, &cfg);
    let theorem_l = l_family.contains(&symbol, &cfg);
    let theorem_d = d_family.contains(&symbol, &cfg);

    let oracle = invariance_report(&theta, &symbol, &cfg)?;
    let oracle_l = oracle.invariant;
    let disc_side = match &symbol {
        SelfMap::Constant(c) => c.norm() < 1.0,
        other => other.is_disc_self_map(&cfg),
    };
    let oracle_d = oracle_l && disc_side;

    let agree = theorem_l == oracle_l && theorem_d == oracle_d;
    let mut report = Report::new("check");
    report.push("symbol", report::map_text(&symbol));
    report.push("theorem_verdict", theorem_l);
    report.push("oracle_verdict", oracle_l);
    report.push("theorem_verdict_d", theorem_d);
    report.push("oracle_verdict_d", oracle_d);
    report.push("oracle_residual_max", report::float_text(oracle.max_residual));
    report.push("agree", agree);
    Ok((report.render(), if agree { 0 } else { 1 }))
}

fn cmd_construct(cli: &Cli, n: u32, d: u32, out: &PathBuf) -> Result<(String, u8), CliError> {
    let cfg = effective_config(cli, None)?;
    let theta = construct_example(n, d, &cfg)
        .map_err(|e| CliError::input(format!("cannot construct: {e}")))?;
    let file = ProblemFile {
        blaschke: theta
            .pairs()
            .iter()
            .map(|(z, mult)| ZeroEntry {
                re: z.re,
                im: z.im,
                mult: *mult,
            })
            .collect(),
        symbol: None,
        tolerances: Some(ToleranceEntry::default()),
    };
    file.save(out)?;
    let mut report = Report::new("construct");
    report.push("n", n);
    report.push("d", d);
    report.push("degree", theta.degree());
    report.push("distinct_zeros", theta.distinct_zero_count());
    report.push("out", out.display());
    Ok((report.render(), 0))
}

fn run(cli: &Cli) -> Result<(String, u8), CliError> {
    match &cli.command {
        Command::Classify { path } => cmd_classify(cli, path),
        Command::Check { path } => cmd_check(cli, path),
        Command::Construct { n, d, out } => cmd_construct(cli, *n, *d, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}
