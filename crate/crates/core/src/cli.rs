//! Command-line front end. Exit codes: 0 success, 1 verification failure,
//! 2 input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::module::DEFAULT_SIZE_CAP;
use crate::report::{
    cmd_bound, cmd_cohomology, cmd_contact_table, cmd_grade, cmd_verify, render_contact_table, render_report, ProblemSpec,
    Report, RunError,
};

pub const SIZE_CAP_ENV: &str = "PARABOLICA_SIZE_CAP";

#[derive(Parser, Debug)]
#[command(name = "parabolica", version, about = "Exact invariants of parabolic gradings and prolongation modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest module dimension built explicitly [default: spec field, then
    /// $PARABOLICA_SIZE_CAP, then 400].
    #[arg(long, global = true)]
    size_cap: Option<usize>,
    /// Worker threads for independent specs.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Grading summary: depth, graded dimensions, Levi factor, contact test.
    Grade(SpecArgs),
    /// Solution-space bound dim V[E, r] and the jet order N.
    Bound(SpecArgs),
    /// Kostant H^0 and H^1 with grading degrees.
    Cohomology(SpecArgs),
    /// Closed-form contact bounds against the Weyl dimension of V[E, r].
    ContactTable {
        n_max: u64,
        r_max: u64,
        t_max: u64,
    },
    /// Brute-force cochain checks on explicit matrices.
    Verify(SpecArgs),
}

#[derive(Args, Debug)]
struct SpecArgs {
    /// Problem spec (JSON or TOML); repeatable.
    #[arg(long = "spec", required = true)]
    spec: Vec<PathBuf>,
}

#[derive(Clone, Copy)]
enum Kind {
    Grade,
    Bound,
    Cohomology,
    Verify,
}

fn env_cap() -> Result<Option<usize>, String> {
    match std::env::var(SIZE_CAP_ENV) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| format!("{SIZE_CAP_ENV}: `{v}` is not a nonnegative integer")),
        Err(_) => Ok(None),
    }
}

fn run_spec(kind: Kind, path: &Path, flag_cap: Option<usize>, env: Option<usize>) -> Result<Report, RunError> {
    let spec = ProblemSpec::load(path)?;
    let cap = flag_cap.or(spec.size_cap).or(env).unwrap_or(DEFAULT_SIZE_CAP);
    let with_verify = |mut r: Report| -> Result<Report, RunError> {
        if spec.verify {
            r.verification = cmd_verify(&spec, cap)?.verification;
        }
        Ok(r)
    };
    match kind {
        Kind::Grade => cmd_grade(&spec),
        Kind::Bound => with_verify(cmd_bound(&spec)?),
        Kind::Cohomology => with_verify(cmd_cohomology(&spec)?),
        Kind::Verify => cmd_verify(&spec, cap),
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return if code == 0 { 0 } else { 2 };
        }
    };
    let env = match env_cap() {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let (kind, paths) = match cli.command {
        Command::ContactTable { n_max, r_max, t_max } => return contact_table(n_max, r_max, t_max, cli.format, out, err),
        Command::Grade(a) => (Kind::Grade, a.spec),
        Command::Bound(a) => (Kind::Bound, a.spec),
        Command::Cohomology(a) => (Kind::Cohomology, a.spec),
        Command::Verify(a) => (Kind::Verify, a.spec),
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let results: Vec<Result<Report, RunError>> =
        pool.install(|| paths.par_iter().map(|p| run_spec(kind, p, cli.size_cap, env)).collect());

    let mut code = 0;
    let mut reports = Vec::new();
    for (path, res) in paths.iter().zip(results) {
        match res {
            Ok(r) => {
                if r.failed() {
                    code = code.max(1);
                    if let Some(v) = &r.verification {
                        for c in v.failures() {
                            let _ = writeln!(err, "{}: check `{}` failed: expected {} got {}", path.display(), c.name, c.expected, c.actual);
                        }
                    }
                }
                reports.push((path, r));
            }
            Err(RunError::Input(m)) => {
                code = 2;
                let _ = writeln!(err, "error: {m}");
            }
            Err(RunError::Failure(m)) => {
                code = code.max(1);
                let _ = writeln!(err, "{}: verification failed: {m}", path.display());
            }
        }
    }
    match cli.format {
        Format::Json => {
            let doc = if reports.len() == 1 {
                serde_json::to_string_pretty(&reports[0].1)
            } else {
                serde_json::to_string_pretty(&reports.iter().map(|r| &r.1).collect::<Vec<_>>())
            };
            let _ = writeln!(out, "{}", doc.expect("report serializes"));
        }
        Format::Text => {
            let many = reports.len() > 1;
            for (k, (path, r)) in reports.iter().enumerate() {
                if k > 0 {
                    let _ = writeln!(out);
                }
                if many {
                    let _ = writeln!(out, "== {} ==", path.display());
                }
                let _ = write!(out, "{}", render_report(r));
            }
        }
    }
    code
}

fn contact_table(n_max: u64, r_max: u64, t_max: u64, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if n_max == 0 || r_max == 0 || t_max == 0 {
        let _ = writeln!(err, "error: contact-table bounds must be positive");
        return 2;
    }
    let table = match cmd_contact_table(n_max, r_max, t_max) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let _ = match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&table).expect("table serializes")),
        Format::Text => write!(out, "{}", render_contact_table(&table)),
    };
    match table.mismatch() {
        Some(row) => {
            let _ = writeln!(err, "mismatch at (n, r, t) = ({}, {}, {}): {} != {}", row.n, row.r, row.t, row.closed_form, row.weyl_dim);
            1
        }
        None => 0,
    }
}
