//! Command-line front end of `magkern`.
//!
//! ```text
//! magkern eval <target> [--b0|--eb0] [--m] [--e2] [--t] [--x] [--xp] [--r] [--spin] ...
//! magkern certify <certificate> [--grid AXIS]... [--seed N] [--jobs N]
//! magkern verify [identities] [--tol]
//! magkern sweep <target> --grid AXIS... [params] [--jobs N]
//! ```
//!
//! Reports are JSON objects `{target, params, results[], certificate?, runtime_ms}`
//! or CSV tables of `results`. Exit status is 0 on success, 1 when a
//! certificate fails and 2 on usage or domain errors.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod certs;
pub mod eval;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use magkern::certify::{par_map, GridSpec, DEFAULT_SEED};
use serde_json::json;

use args::{Cli, Command, Format, OutputArgs, SweepArgs};
use eval::{evaluate, Params, SWEEP_AXES};
use report::{Report, Row};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

type Outcome = Result<(Report, bool), String>;

/// Parse `argv`, run it and write the report; returns the exit status.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let msg = e.to_string();
                    let line = msg.lines().next().unwrap_or("invalid arguments");
                    let _ = writeln!(stderr, "magkern: {}", line.trim_start_matches("error: "));
                    EXIT_USAGE
                }
            };
        }
    };
    let output = match &cli.command {
        Command::Eval(a) => a.output.clone(),
        Command::Certify(a) => a.output.clone(),
        Command::Verify(a) => a.output.clone(),
        Command::Sweep(a) => a.output.clone(),
    };
    match execute(cli.command).and_then(|(report, pass)| {
        emit(&report, &output, stdout).map_err(|e| format!("cannot write report: {e}"))?;
        Ok(pass)
    }) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAILED,
        Err(msg) => {
            let _ = writeln!(stderr, "magkern: {msg}");
            EXIT_USAGE
        }
    }
}

/// Run a parsed command; the flag is false when a certificate failed.
pub fn execute(command: Command) -> Outcome {
    let start = Instant::now();
    let ms = |s: Instant| s.elapsed().as_secs_f64() * 1e3;
    match command {
        Command::Eval(a) => {
            let p = Params::from(&a.params);
            let results = evaluate(a.target, &p).map_err(|e| e.to_string())?;
            let report = Report {
                target: format!("eval {}", name(a.target)),
                params: p.to_json(),
                results,
                certificate: None,
                runtime_ms: ms(start),
            };
            Ok((report, true))
        }
        Command::Sweep(a) => sweep(&a, start),
        Command::Certify(a) => {
            let run = certs::certify(a.target, &a.grid, a.seed, a.jobs.jobs as usize)
                .map_err(|e| e.to_string())?;
            let report = Report {
                target: format!("certify {}", name(a.target)),
                params: run.params,
                results: run.rows,
                certificate: Some(run.certificate),
                runtime_ms: ms(start),
            };
            Ok((report, run.pass))
        }
        Command::Verify(a) => {
            let run = certs::verify(a.tol).map_err(|e| e.to_string())?;
            let report = Report {
                target: format!("verify {}", name(a.target)),
                params: run.params,
                results: run.rows,
                certificate: Some(run.certificate),
                runtime_ms: ms(start),
            };
            Ok((report, run.pass))
        }
    }
}

fn sweep(a: &SweepArgs, start: Instant) -> Outcome {
    let grid = GridSpec::parse(&a.grid, DEFAULT_SEED).map_err(|e| e.to_string())?;
    if let Some(bad) = grid.names().into_iter().find(|n| !SWEEP_AXES.contains(n)) {
        return Err(format!("cannot sweep {bad:?}; expected one of {SWEEP_AXES:?}"));
    }
    let base = Params::from(&a.params);
    let names: Vec<String> = grid.names().iter().map(|s| s.to_string()).collect();
    let points = grid.points();
    let rows = par_map(&points, a.jobs.jobs as usize, |pt| -> Result<Vec<Row>, String> {
        let mut p = base.clone();
        let mut head = Row::new();
        for (n, &v) in names.iter().zip(pt) {
            p.set(n, v).map_err(|e| e.to_string())?;
            if n != "spin" {
                head = head.real(n, v);
            }
        }
        let rows = evaluate(a.target, &p).map_err(|e| {
            let at: Vec<String> = names.iter().zip(pt).map(|(n, v)| format!("{n}={v}")).collect();
            format!("{e} at {}", at.join(", "))
        })?;
        Ok(rows.into_iter().map(|r| r.prefixed(head.clone())).collect())
    });
    let mut results = Vec::new();
    for r in rows {
        results.extend(r?);
    }
    let mut params = base.to_json();
    params["grid"] = json!(grid.axes.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    params["jobs"] = json!(a.jobs.jobs);
    let report = Report {
        target: format!("sweep {}", name(a.target)),
        params,
        results,
        certificate: None,
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Ok((report, true))
}

fn name<T: clap::ValueEnum>(v: T) -> String {
    v.to_possible_value()
        .map(|p| p.get_name().to_string())
        .unwrap_or_default()
}

fn emit(report: &Report, output: &OutputArgs, stdout: &mut dyn Write) -> std::io::Result<()> {
    let mut file;
    let w: &mut dyn Write = match &output.out {
        Some(path) => {
            file = std::io::BufWriter::new(std::fs::File::create(path)?);
            &mut file
        }
        None => stdout,
    };
    match output.format {
        Format::Json => report.write_json(w)?,
        Format::Csv => report.write_csv(w)?,
    }
    w.flush()
}
