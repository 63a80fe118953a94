//! Problem files, reports, and the `reflap` command line.
//!
//! Exit codes: 0 success, 2 resonance, 3 non-contractive, 4 unsupported
//! regime, 5 parse or semantic error, 6 oracle disagreement, 1 I/O failure.

pub mod findings;
pub mod problem;
pub mod report;
pub mod run;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::grid::DEFAULT_TAIL_CUT;

pub use findings::{forcing_digest, parse_findings, render_findings, FINDINGS_HEADER};
pub use problem::{emit_problem, parse_problem, IvpSpec, ProblemSpec, SolverMode, SolverSettings};
pub use report::{fmt_real, render_csv, Report, CSV_HEADER};
pub use run::{exit_code, run, run_demo, RunOptions, RunOutcome};

#[derive(Debug, Parser)]
#[command(
    name = "reflap",
    version,
    about = "Bounded and almost periodic solutions of x''(t) + a x(t) + b x(-t) = g(t)",
    long_about = "Bounded and almost periodic solutions of x''(t) + a x(t) + b x(-t) = g(t).\n\n\
                  Forcing is a trigonometric polynomial over declared basis frequencies; the \
                  generators are taken to be rationally independent without being checked."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report the regime, channel rates and resonance margins.
    Classify {
        problem: PathBuf,
    },
    /// Solve a linear problem (mode spectral or grid), verify it, and write
    /// the report and CSV.
    Solve(SolveArgs),
    /// Solve a nonlinear problem (mode picard) by contraction, verify it, and
    /// write the report and CSV.
    SolveNonlinear(SolveArgs),
    /// Solve and run every oracle without writing artifacts.
    Verify {
        problem: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TAIL_CUT)]
        tail_cut: f64,
    },
    /// Run the bundled examples and the sup-norm bound probe.
    Demo {
        /// Also write each report and the findings file here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub problem: PathBuf,
    /// Directory for `<stem>.report`, `<stem>.csv` and `<stem>.findings.tsv`.
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    /// Relative kernel tail dropped at the window edges.
    #[arg(long, default_value_t = DEFAULT_TAIL_CUT)]
    pub tail_cut: f64,
}

fn read_problem(path: &Path) -> Result<ProblemSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_problem(&text)
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "problem".into())
}

fn solve(args: &SolveArgs, nonlinear: bool, out: &mut dyn Write) -> Result<u8> {
    let spec = read_problem(&args.problem)?;
    match (nonlinear, spec.solver.mode) {
        (false, SolverMode::Picard) => {
            return Err(Error::Semantic("mode = picard problems are solved with solve-nonlinear".into()))
        }
        (true, SolverMode::Spectral | SolverMode::Grid) => {
            return Err(Error::Semantic("solve-nonlinear requires mode = picard".into()))
        }
        _ => {}
    }
    let outcome = run(&spec, &RunOptions { tail_cut: args.tail_cut, csv: true })?;
    std::fs::create_dir_all(&args.out_dir).map_err(|e| Error::Io(format!("{}: {e}", args.out_dir.display())))?;
    let name = stem(&args.problem);
    write_file(&args.out_dir.join(format!("{name}.report")), &outcome.report.render())?;
    if let Some(csv) = &outcome.csv {
        write_file(&args.out_dir.join(format!("{name}.csv")), csv)?;
    }
    if !outcome.findings.is_empty() {
        write_file(&args.out_dir.join(format!("{name}.findings.tsv")), &render_findings(&outcome.findings))?;
    }
    let _ = out.write_all(outcome.report.render().as_bytes());
    Ok(outcome.exit_code())
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<u8> {
    match &cli.command {
        Command::Classify { problem } => {
            let spec = read_problem(problem)?;
            let _ = out.write_all(run::classification_report(&spec).render().as_bytes());
            Ok(run::EXIT_OK)
        }
        Command::Solve(args) => solve(args, false, out),
        Command::SolveNonlinear(args) => solve(args, true, out),
        Command::Verify { problem, tail_cut } => {
            let spec = read_problem(problem)?;
            let outcome = run(&spec, &RunOptions { tail_cut: *tail_cut, csv: false })?;
            let _ = out.write_all(outcome.report.render().as_bytes());
            Ok(outcome.exit_code())
        }
        Command::Demo { out_dir } => {
            let results = run_demo(&RunOptions { tail_cut: DEFAULT_TAIL_CUT, csv: false })?;
            let mut all = Vec::new();
            let mut code = run::EXIT_OK;
            for r in &results {
                let _ = writeln!(out, "[{}]", r.name);
                let _ = out.write_all(r.outcome.report.render().as_bytes());
                let _ = writeln!(out);
                all.extend(r.outcome.findings.iter().cloned());
                code = code.max(r.outcome.exit_code());
            }
            let findings = render_findings(&all);
            let _ = writeln!(out, "[findings]");
            let _ = out.write_all(findings.as_bytes());
            if let Some(dir) = out_dir {
                std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
                for r in &results {
                    write_file(&dir.join(format!("{}.report", r.name)), &r.outcome.report.render())?;
                }
                write_file(&dir.join("demo.findings.tsv"), &findings)?;
            }
            Ok(code)
        }
    }
}

/// Parses `args` (program name first), runs the command, and returns the
/// process exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { run::EXIT_INPUT } else { run::EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "status = {}\nerror = {e}", run::status_name(&e));
            exit_code(&e)
        }
    }
}
