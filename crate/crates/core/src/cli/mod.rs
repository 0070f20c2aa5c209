//! Suite configuration, dispatch, and report emission for the `verify` binary.

mod suites;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::freealg::Case;
use crate::report::{Check, Report, Status};

pub const SUITES: [&str; 10] = [
    "ybe",
    "rtt-expansion",
    "yangian-pbw",
    "embed-ytw",
    "qloop-classical-limit",
    "rs-identity",
    "graded-relation",
    "scong",
    "twisted-phi",
    "separation",
];

/// Process exit code for a usage error.
pub const EXIT_USAGE: i32 = 64;
/// Process exit code when the report cannot be read or written.
pub const EXIT_IO: i32 = 74;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("i/o error: {0}")]
    Io(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseSel {
    O,
    Sp,
    Both,
}

impl FromStr for CaseSel {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "o" | "orthogonal" => Ok(CaseSel::O),
            "sp" | "symplectic" => Ok(CaseSel::Sp),
            "both" => Ok(CaseSel::Both),
            _ => Err(CliError::InvalidConfig(format!(
                "case must be o, sp or both, not {s:?}"
            ))),
        }
    }
}

impl CaseSel {
    fn name(self) -> &'static str {
        match self {
            CaseSel::O => "o",
            CaseSel::Sp => "sp",
            CaseSel::Both => "both",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Markdown,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "json" => Ok(Format::Json),
            "md" | "markdown" => Ok(Format::Markdown),
            _ => Err(CliError::InvalidConfig(format!(
                "format must be json or md, not {s:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub n: usize,
    pub case: CaseSel,
    pub rmax: i32,
    pub mmax: i32,
    /// Series truncation order `L`.
    pub order: u32,
    /// Relation levels searched above a congruence target.
    pub level_slack: i32,
    pub jobs: usize,
    pub seed: u64,
    /// Random products in the confluence check.
    pub samples: usize,
    /// Flip one sign in one target of the suite.
    pub negative_control: bool,
    /// Record wall time per check (reports are then no longer reproducible).
    pub timings: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n: 2,
            case: CaseSel::Both,
            rmax: 4,
            mmax: 2,
            order: 6,
            level_slack: 1,
            jobs: std::thread::available_parallelism().map_or(1, |p| p.get()),
            seed: 0,
            samples: 100,
            negative_control: false,
            timings: false,
        }
    }
}

fn parse<T: FromStr>(key: &str, v: &str) -> Result<T, CliError> {
    v.parse()
        .map_err(|_| CliError::InvalidConfig(format!("bad value {v:?} for {key}")))
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: &str| Err(CliError::InvalidConfig(m.into()));
        if self.n < 1 {
            return bad("N must be at least 1");
        }
        if self.case == CaseSel::Sp && self.n % 2 == 1 {
            return bad("the symplectic case requires even N");
        }
        if self.rmax < 1 {
            return bad("Rmax must be at least 1");
        }
        if self.mmax < 0 {
            return bad("Mmax must be nonnegative");
        }
        if (self.order as i64) < self.rmax as i64 + 2 {
            return bad("series order L must be at least Rmax + 2");
        }
        if self.level_slack < 0 {
            return bad("level slack must be nonnegative");
        }
        if self.jobs < 1 {
            return bad("jobs must be at least 1");
        }
        if self.negative_control && self.n < 2 {
            return bad("negative controls need N ≥ 2");
        }
        Ok(())
    }

    /// Cases to run; `both` skips the symplectic case for odd `N`.
    pub fn cases(&self) -> Vec<Case> {
        match self.case {
            CaseSel::O => vec![Case::O],
            CaseSel::Sp => vec![Case::Sp],
            CaseSel::Both => [Case::O, Case::Sp]
                .into_iter()
                .filter(|c| c.admits(self.n))
                .collect(),
        }
    }

    /// Set one field from its key-value-file name.
    pub fn set(&mut self, key: &str, v: &str) -> Result<(), CliError> {
        match key {
            "n" => self.n = parse(key, v)?,
            "case" => self.case = v.parse()?,
            "rmax" => self.rmax = parse(key, v)?,
            "mmax" => self.mmax = parse(key, v)?,
            "order" => self.order = parse(key, v)?,
            "level_slack" => self.level_slack = parse(key, v)?,
            "jobs" => self.jobs = parse(key, v)?,
            "seed" => self.seed = parse(key, v)?,
            "samples" => self.samples = parse(key, v)?,
            "negative_control" => self.negative_control = parse(key, v)?,
            "timings" => self.timings = parse(key, v)?,
            _ => return Err(CliError::InvalidConfig(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    /// Apply `key = value` lines; `#` starts a comment.
    pub fn apply_kv(&mut self, text: &str) -> Result<(), CliError> {
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                CliError::InvalidConfig(format!("line {}: expected key = value", no + 1))
            })?;
            self.set(k.trim(), v.trim())?;
        }
        Ok(())
    }

    /// The fields that determine the report; parallelism and timing are left out.
    pub fn echo(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert("n".into(), self.n.to_string());
        m.insert("case".into(), self.case.name().into());
        m.insert("rmax".into(), self.rmax.to_string());
        m.insert("mmax".into(), self.mmax.to_string());
        m.insert("order".into(), self.order.to_string());
        m.insert("level_slack".into(), self.level_slack.to_string());
        m.insert("seed".into(), self.seed.to_string());
        m.insert("samples".into(), self.samples.to_string());
        m.insert("negative_control".into(), self.negative_control.to_string());
        m
    }
}

/// One unit of parallel work; yields one or more checks.
pub(crate) struct Task {
    name: String,
    params: BTreeMap<String, String>,
    run: Box<dyn FnOnce() -> Vec<Check> + Send>,
}

impl Task {
    fn many(name: impl Into<String>, run: impl FnOnce() -> Vec<Check> + Send + 'static) -> Self {
        Task {
            name: name.into(),
            params: BTreeMap::new(),
            run: Box::new(run),
        }
    }

    fn one(name: impl Into<String>, run: impl FnOnce() -> Check + Send + 'static) -> Self {
        Self::many(name, move || vec![run()])
    }

    fn param(mut self, k: &str, v: impl ToString) -> Self {
        self.params.insert(k.into(), v.to_string());
        self
    }

    fn execute(self, timings: bool) -> Vec<Check> {
        let start = Instant::now();
        let mut out = (self.run)();
        let ms = start.elapsed().as_millis() as u64;
        for c in &mut out {
            c.name = if c.name.is_empty() {
                self.name.clone()
            } else {
                format!("{}/{}", self.name, c.name)
            };
            for (k, v) in &self.params {
                c.params.entry(k.clone()).or_insert_with(|| v.clone());
            }
            if timings {
                c.wall_ms = Some(ms);
            }
        }
        out
    }
}

/// Run every check of the named suite.
pub fn run_suite(name: &str, config: &SuiteConfig) -> Result<Report, CliError> {
    config.validate()?;
    let tasks = suites::tasks(name, config)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| CliError::InvalidConfig(e.to_string()))?;
    let timings = config.timings;
    let checks: Vec<Vec<Check>> =
        pool.install(|| tasks.into_par_iter().map(|t| t.execute(timings)).collect());
    let mut report = Report::new(name);
    report.config = config.echo();
    for c in checks.into_iter().flatten() {
        report.push(c);
    }
    Ok(report)
}

pub fn exit_code(s: Status) -> i32 {
    match s {
        Status::Pass => 0,
        Status::Fail => 1,
        Status::Inconclusive => 2,
    }
}

pub fn emit_report(r: &Report, format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Json => {
            let mut v = serde_json::to_vec_pretty(r).map_err(|e| CliError::Io(e.to_string()))?;
            v.push(b'\n');
            Ok(v)
        }
        Format::Markdown => Ok(markdown(r).into_bytes()),
    }
}

pub fn parse_report(bytes: &[u8]) -> Result<Report, CliError> {
    serde_json::from_slice(bytes).map_err(|e| CliError::Io(e.to_string()))
}

fn verdict(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Inconclusive => "inconclusive",
    }
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

fn markdown(r: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# {}: {}\n", r.suite, verdict(r.status));
    let cfg: Vec<String> = r.config.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let _ = writeln!(s, "config: {}\n", cfg.join(", "));
    let _ = writeln!(
        s,
        "{} checks: {} pass, {} fail, {} inconclusive\n",
        r.checks.len(),
        r.count(Status::Pass),
        r.count(Status::Fail),
        r.count(Status::Inconclusive)
    );
    let _ = writeln!(s, "| check | params | verdict | certificate | detail |");
    let _ = writeln!(s, "|---|---|---|---|---|");
    for c in &r.checks {
        let params: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let cert = c
            .certificate
            .as_ref()
            .map(|c| {
                format!(
                    "{} relations, {} high-degree",
                    c.relations.len(),
                    c.high_degree.len()
                )
            })
            .unwrap_or_default();
        let mut detail = cell(&c.detail);
        if let Some(ms) = c.wall_ms {
            detail = format!("{detail} ({ms} ms)");
        }
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} | {} |",
            cell(&c.name),
            cell(&params.join(" ")),
            verdict(c.status),
            cert,
            detail
        );
    }
    s
}

#[cfg(test)]
mod tests;
