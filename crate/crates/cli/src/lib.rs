//! Command-line front end: single scenarios, parameter sweeps, figure data
//! and limit reports.

pub mod args;
pub mod commands;
pub mod error;
pub mod grid;
pub mod output;
pub mod recipes;

use std::ffi::OsString;

use clap::Parser;
use udw_harvest::quadrature::QuadratureSpec;

use args::{Cli, Command};
use commands::LimitRequest;
use error::CliError;

/// Parses `argv`, runs the command and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn quadrature(cli: &Cli) -> Result<QuadratureSpec, CliError> {
    let base = QuadratureSpec::default();
    let mut spec = base.with_tolerances(cli.rel_tol.unwrap_or(base.rel_tol), cli.abs_tol.unwrap_or(base.abs_tol));
    if let Some(n) = cli.max_subdivisions {
        spec.max_subdivisions = n;
    }
    spec.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(spec)
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    let spec = quadrature(&cli)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        pool = pool.num_threads(jobs);
    }
    let pool = pool.build().map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    pool.install(|| match &cli.command {
        Command::Compute { scenario } => {
            println!("{}", commands::cmd_compute(scenario, &spec)?);
            Ok(())
        }
        Command::Sweep { scenario, x, y, out } => {
            let failed = commands::cmd_sweep(scenario, x, y.as_deref(), out, &spec)?;
            if failed > 0 {
                eprintln!("warning: {failed} cells did not converge or were rejected");
            }
            Ok(())
        }
        Command::Figure { id, out, points } => {
            for fig in commands::cmd_figure(id, out, *points, &spec)? {
                let failed = fig.table.failures();
                if failed > 0 {
                    eprintln!("warning: {}: {failed} cells did not converge or were rejected", fig.id);
                }
                for a in &fig.assertions {
                    eprintln!("{}: {} {} ({})", fig.id, if a.holds { "holds" } else { "FAILS" }, a.name, a.detail);
                }
            }
            Ok(())
        }
        Command::Limits { kind, omega, separation, width, lmc, gammas, masses, path, out } => {
            let req = LimitRequest {
                kind: *kind,
                omega,
                separation,
                width,
                lmc: lmc.as_deref(),
                gammas: gammas.as_deref(),
                masses: masses.as_deref(),
                path: *path,
            };
            println!("{}", commands::cmd_limits(&req, out.as_deref(), &spec)?);
            Ok(())
        }
    })
}
