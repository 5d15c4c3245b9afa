//! Command-line front end: verification suites, seeded construction of
//! certified conic bundles, and sweeps along the pencil of a net.

mod report;
mod suites;

pub use report::{Check, VerificationReport};
pub use suites::{run_suite, Suite};

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::conicbundle::{construct, sweep, ConstructOptions, LocusMode};

#[derive(Debug, Parser)]
#[command(name = "prymconic", version, about = "Exact checks for the conic-bundle model of genus-6 Prym curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a suite of exact identities and report expected vs computed.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Seed for the checks that sample lines.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Build and certify the conic bundle through five random fiber lines.
    Construct {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Certify the singular locus over Q instead of modulo a prime.
        #[arg(long)]
        exact_elimination: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Certify the net through four fixed lines and sample its pencil.
    Sweep {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long)]
        exact_elimination: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn mode(exact: bool) -> LocusMode {
    if exact {
        LocusMode::Exact
    } else {
        LocusMode::Modular
    }
}

fn emit(json: &str, path: Option<&Path>) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, format!("{json}\n")).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

fn print_report(report: &VerificationReport) {
    for c in &report.checks {
        let computed = match (&c.computed, &c.error) {
            (Some([n, d]), _) if d == "1" => n.clone(),
            (Some([n, d]), _) => format!("{n}/{d}"),
            (None, Some(e)) => format!("error: {e}"),
            (None, None) => "-".into(),
        };
        let [n, d] = &c.expected;
        let expected = if d == "1" { n.clone() } else { format!("{n}/{d}") };
        let tag = if c.pass { "PASS" } else { "FAIL" };
        println!("{tag} {:<32} expected {expected:<6} computed {computed:<6} {:>6} ms  {}", c.id, c.millis, c.anchor);
    }
    let failed = report.failures().count();
    println!("{} checks, {} failed", report.checks.len(), failed);
}

/// Runs the command line, returning the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(cli.command) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn execute(cmd: Command) -> Result<bool, String> {
    match cmd {
        Command::Verify { suite, seed, json } => {
            let report = run_suite(suite, seed);
            print_report(&report);
            if let Some(p) = json {
                emit(&report.to_json(), Some(&p))?;
            }
            Ok(report.passed)
        }
        Command::Construct {
            seed,
            exact_elimination,
            json,
        } => {
            let opts = ConstructOptions {
                exact_elimination,
                ..Default::default()
            };
            let inst = construct(seed, opts).map_err(|e| e.to_string())?;
            if json.is_some() {
                println!(
                    "seed {seed}: {} node certificates after {} attempt(s), singular locus {:?} check passed",
                    inst.certificates.len(),
                    inst.attempts,
                    inst.singular_locus.mode
                );
            }
            emit(&inst.to_json(), json.as_deref())?;
            Ok(true)
        }
        Command::Sweep {
            seed,
            samples,
            exact_elimination,
            json,
        } => {
            let report = sweep(seed, samples as usize, mode(exact_elimination)).map_err(|e| e.to_string())?;
            let ok = report.samples.iter().all(|s| s.instance.is_some());
            if json.is_some() {
                println!(
                    "seed {seed}: net of dimension {}, nodal cubic with one singular member",
                    report.net_dimension
                );
                for s in &report.samples {
                    match (&s.instance, &s.error) {
                        (Some(inst), _) => println!("sample {}: certified, {} residual lines", s.index, inst.residuals.len()),
                        (None, e) => println!("sample {}: failed: {}", s.index, e.as_deref().unwrap_or("unknown")),
                    }
                }
            }
            let json_text = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
            emit(&json_text, json.as_deref())?;
            Ok(ok)
        }
    }
}
