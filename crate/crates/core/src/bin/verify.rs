use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use rttverify::cli::{
    emit_report, exit_code, run_suite, CliError, Format, SuiteConfig, EXIT_IO, EXIT_USAGE, SUITES,
};

#[derive(Parser, Debug)]
#[command(
    name = "verify",
    about = "Run an exact verification suite and emit a report"
)]
struct Args {
    /// One of: ybe, rtt-expansion, yangian-pbw, embed-ytw, qloop-classical-limit,
    /// rs-identity, graded-relation, scong, twisted-phi, separation
    suite: String,
    #[arg(long)]
    n: Option<usize>,
    /// o, sp or both
    #[arg(long)]
    case: Option<String>,
    #[arg(long)]
    rmax: Option<i32>,
    #[arg(long)]
    mmax: Option<i32>,
    /// Series truncation order L
    #[arg(long)]
    order: Option<u32>,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// json or md
    #[arg(long, default_value = "json")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Plain-text `key = value` file; flags override it
    #[arg(long)]
    config: Option<PathBuf>,
    /// Flip one sign in one target; the suite must then fail
    #[arg(long)]
    negative_control: bool,
    /// Record wall time per check
    #[arg(long)]
    timings: bool,
}

fn config(a: &Args) -> Result<SuiteConfig, CliError> {
    let mut c = SuiteConfig::default();
    if let Some(p) = &a.config {
        let text = std::fs::read_to_string(p)
            .map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
        c.apply_kv(&text)?;
    }
    if let Some(v) = a.n {
        c.n = v;
    }
    if let Some(v) = &a.case {
        c.case = v.parse()?;
    }
    if let Some(v) = a.rmax {
        c.rmax = v;
    }
    if let Some(v) = a.mmax {
        c.mmax = v;
    }
    if let Some(v) = a.order {
        c.order = v;
    }
    if let Some(v) = a.jobs {
        c.jobs = v;
    }
    if let Some(v) = a.seed {
        c.seed = v;
    }
    c.negative_control |= a.negative_control;
    c.timings |= a.timings;
    Ok(c)
}

fn run(a: &Args) -> Result<i32, CliError> {
    let format: Format = a.format.parse()?;
    let c = config(a)?;
    let report = run_suite(&a.suite, &c)?;
    let bytes = emit_report(&report, format)?;
    match &a.out {
        Some(p) => {
            std::fs::write(p, &bytes).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?
        }
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(&bytes)
                .map_err(|e| CliError::Io(e.to_string()))?;
        }
    }
    Ok(exit_code(report.status))
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(EXIT_USAGE as u8);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(&args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e @ CliError::Io(_)) => {
            eprintln!("verify: {e}");
            ExitCode::from(EXIT_IO as u8)
        }
        Err(e) => {
            eprintln!("verify: {e}");
            if matches!(e, CliError::UnknownSuite(_)) {
                eprintln!("suites: {}", SUITES.join(", "));
            }
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
