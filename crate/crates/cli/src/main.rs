//! `wres`: compute boundary-term reports, list case patterns, run the
//! verification suites and the quadrature oracle.
//!
//! Exit codes: 0 success, 1 verification failure, 2 configuration error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::bigint::BigInt;
use num::rational::BigRational;
use std::process::ExitCode;
use std::str::FromStr;
use wres_core::engine::{self, SUPPORTED_CONFIGS};

use wres_core::report::{render_text, report_json, spec_json};
use wres_core::verify::{self, CheckStatus, SuiteOptions};

#[derive(Parser)]
#[command(name = "wres", version, about = "boundary terms of noncommutative residues of Dirac-operator powers", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct ConfigArgs {
    /// Manifold dimension
    #[arg(long, value_parser = ["3", "4", "6"])]
    dim: String,
    /// First operator power (D^{-p1})
    #[arg(long)]
    p1: u32,
    /// Second operator power (D^{-p2})
    #[arg(long)]
    p2: u32,
}

impl ConfigArgs {
    fn triple(&self) -> (u32, u32, u32) {
        (self.dim.parse().unwrap(), self.p1, self.p2)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every boundary case and assemble the full report
    Compute {
        #[command(flatten)]
        config: ConfigArgs,
        /// Exact rational value for phi'(0), e.g. 3/2
        #[arg(long, value_name = "p/q")]
        phi_prime: Option<String>,
        /// Exact rational value for psi'(0), e.g. -1/3
        #[arg(long, value_name = "p/q")]
        psi_prime: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List the case patterns and prefactors for a configuration
    Cases {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a verification suite and exit nonzero on any failure
    Verify {
        #[arg(long, value_parser = ["paper", "internal", "all"], default_value = "paper")]
        suite: String,
        #[arg(long, default_value_t = 1789)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Numeric arbitration of one configuration at given or random (a, b)
    Oracle {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long, value_name = "p/q")]
        phi_prime: Option<String>,
        #[arg(long, value_name = "p/q")]
        psi_prime: Option<String>,
        #[arg(long, default_value_t = 1789)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|e| e.to_string())?;
        let d = BigInt::from_str(den.trim()).map_err(|e| e.to_string())?;
        if d == BigInt::from(0) {
            return Err("zero denominator".into());
        }
        Ok(BigRational::new(n, d))
    } else {
        let n = BigInt::from_str(s.trim()).map_err(|e| e.to_string())?;
        Ok(BigRational::from(n))
    }
}

fn config_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("configuration error: {msg}");
    eprintln!("supported configurations (dim, p1, p2): {:?}", SUPPORTED_CONFIGS);
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Compute { config, phi_prime, psi_prime, format } => {
            let (n, p1, p2) = config.triple();
            let values = match parse_values(phi_prime, psi_prime) {
                Ok(v) => v,
                Err(e) => return config_error(e),
            };
            let report = match engine::phi_total(n, p1, p2) {
                Ok(r) => r,
                Err(e) => return config_error(e),
            };
            let json = report_json(&report, values.as_ref());
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&json).unwrap()),
                Format::Text => print!("{}", render_text(&json)),
            }
            ExitCode::SUCCESS
        }
        Command::Cases { config, format } => {
            let (n, p1, p2) = config.triple();
            let specs = match engine::enumerate_cases(n, p1, p2) {
                Ok(s) => s,
                Err(e) => return config_error(e),
            };
            match format {
                Format::Json => {
                    let rows: Vec<_> = specs
                        .iter()
                        .map(|s| {
                            serde_json::json!({
                                "label": s.label.name(),
                                "spec": spec_json(s),
                            })
                        })
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&rows).unwrap());
                }
                Format::Text => {
                    println!(
                        "{:<8} {:>4} {:>4} {:>3} {:>3} {:>7} {:>14}",
                        "case", "r", "l", "j", "k", "|alpha|", "prefactor"
                    );
                    for s in &specs {
                        println!(
                            "{:<8} {:>4} {:>4} {:>3} {:>3} {:>7} {:>14}",
                            s.label.name(),
                            s.r,
                            s.l,
                            s.j,
                            s.k,
                            s.alpha,
                            s.prefactor().to_string()
                        );
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Command::Verify { suite, seed, trials, tol, format } => {
            if tol <= 0.0 {
                return config_error("tolerance must be positive");
            }
            let opts = SuiteOptions { seed, trials, tol };
            let mut results = Vec::new();
            if suite == "paper" || suite == "all" {
                results.extend(verify::run_paper_suite(&opts));
            }
            if suite == "internal" || suite == "all" {
                results.extend(verify::run_internal_suite(&opts));
            }
            let mut failed = false;
            match format {
                Format::Text => {
                    for r in &results {
                        print!("{}", r.render());
                        failed |= r.status() == CheckStatus::Fail;
                    }
                    let (pass, note, fail) = tally(&results);
                    println!("summary: {pass} pass, {note} notes (registered discrepancies), {fail} fail");
                }
                Format::Json => {
                    let rows: Vec<_> = results
                        .iter()
                        .map(|r| {
                            failed |= r.status() == CheckStatus::Fail;
                            serde_json::json!({
                                "criterion": r.id,
                                "title": r.title,
                                "status": r.status().to_string(),
                                "elapsed_ms": r.elapsed_ms,
                                "checks": r.lines.iter().map(|l| serde_json::json!({
                                    "name": l.name,
                                    "status": l.status.to_string(),
                                    "detail": l.detail,
                                })).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&rows).unwrap());
                }
            }
            if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Command::Oracle { config, phi_prime, psi_prime, seed, trials, tol, format } => {
            let (n, p1, p2) = config.triple();
            if tol <= 0.0 {
                return config_error("tolerance must be positive");
            }
            let values = match parse_values(phi_prime, psi_prime) {
                Ok(v) => v,
                Err(e) => return config_error(e),
            };
            use num::ToPrimitive;
            let points: Vec<(f64, f64)> = match values {
                Some((a, b)) => vec![(a.to_f64().unwrap(), b.to_f64().unwrap())],
                None => wres_core::oracle::seeded_points(seed, trials),
            };
            let rows = match wres_core::oracle::arbitrate_config(n, p1, p2, &points, tol) {
                Ok(r) => r,
                Err(e) => return config_error(e),
            };
            let all_pass = rows.iter().all(|r| r.pass);
            match format {
                Format::Json => {
                    let json: Vec<_> = rows
                        .iter()
                        .map(|r| {
                            serde_json::json!({
                                "case": r.label,
                                "symbolic": r.symbolic_expr,
                                "points": r.points,
                                "worst_deviation": r.worst,
                                "pass": r.pass,
                            })
                        })
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&json).unwrap());
                }
                Format::Text => {
                    println!("oracle arbitration: ({n},{p1},{p2}), {} point(s), tol {tol:.1e}", points.len());
                    for r in &rows {
                        println!(
                            "  {:<8} {:<36} worst {:>9.2e}  {}",
                            r.label,
                            r.symbolic_expr,
                            r.worst,
                            if r.pass { "pass" } else { "FAIL" }
                        );
                    }
                }
            }
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn parse_values(
    phi: Option<String>,
    psi: Option<String>,
) -> Result<Option<(BigRational, BigRational)>, String> {
    match (phi, psi) {
        (None, None) => Ok(None),
        (Some(a), Some(b)) => Ok(Some((parse_rational(&a)?, parse_rational(&b)?))),
        _ => Err("--phi-prime and --psi-prime must be given together".into()),
    }
}

fn tally(results: &[verify::CriterionResult]) -> (usize, usize, usize) {
    let mut pass = 0;
    let mut note = 0;
    let mut fail = 0;
    for r in results {
        for l in &r.lines {
            match l.status {
                CheckStatus::Pass => pass += 1,
                CheckStatus::Note => note += 1,
                CheckStatus::Fail => fail += 1,
            }
        }
    }
    (pass, note, fail)
}
