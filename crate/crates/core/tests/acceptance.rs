//! Acceptance criteria, one line each. Runs without the test harness so the
//! lines come out in order; exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rttverify::cli::{run_suite, SuiteConfig, SUITES};
use rttverify::report::{Report, Status};
use rttverify::rmat::{check_ybe, RKind};

struct Outcome {
    ok: bool,
    note: String,
}

fn from_reports(reports: &[Report]) -> Outcome {
    let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
    for r in reports {
        if let Some(c) = r.first_failure() {
            return Outcome {
                ok: false,
                note: format!("{}: {} is {:?}: {}", r.suite, c.name, c.status, c.detail),
            };
        }
    }
    Outcome {
        ok: true,
        note: format!("{checks} checks"),
    }
}

fn suite(name: &str) -> Outcome {
    match run_suite(name, &SuiteConfig::default()) {
        Ok(r) => from_reports(&[r]),
        Err(e) => Outcome {
            ok: false,
            note: e.to_string(),
        },
    }
}

/// Every check of `prefix` in the report carries a certificate.
fn all_certified(name: &str, prefix: &str) -> Outcome {
    let r = match run_suite(name, &SuiteConfig::default()) {
        Ok(r) => r,
        Err(e) => {
            return Outcome {
                ok: false,
                note: e.to_string(),
            }
        }
    };
    let out = from_reports(std::slice::from_ref(&r));
    if !out.ok {
        return out;
    }
    let targets: Vec<_> = r
        .checks
        .iter()
        .filter(|c| c.name.starts_with(prefix))
        .collect();
    match targets.iter().find(|c| c.certificate.is_none()) {
        Some(c) => Outcome {
            ok: false,
            note: format!("{} has no certificate", c.name),
        },
        None => Outcome {
            ok: true,
            note: format!("{}; {} certificates", out.note, targets.len()),
        },
    }
}

fn ybe() -> Outcome {
    for n in [2, 3] {
        for kind in [RKind::Yangian, RKind::Quantum] {
            match check_ybe(kind, n) {
                Ok(true) => {}
                other => {
                    return Outcome {
                        ok: false,
                        note: format!("{kind:?} at N={n}: {other:?}"),
                    }
                }
            }
        }
    }
    Outcome {
        ok: true,
        note: "R(u) and R_q(u,v) at N=2,3".into(),
    }
}

fn negative_controls() -> Outcome {
    let config = SuiteConfig {
        negative_control: true,
        ..SuiteConfig::default()
    };
    for name in SUITES {
        match run_suite(name, &config) {
            Ok(r) if r.status == Status::Fail => {}
            Ok(r) => {
                return Outcome {
                    ok: false,
                    note: format!("{name} reported {:?}", r.status),
                }
            }
            Err(e) => {
                return Outcome {
                    ok: false,
                    note: format!("{name}: {e}"),
                }
            }
        }
    }
    Outcome {
        ok: true,
        note: format!("all {} suites fail", SUITES.len()),
    }
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, u64, fn() -> Outcome); 10] = [
        (1, "Yang-Baxter equation", 10, ybe),
        (2, "RTT expansion fidelity", 30, || suite("rtt-expansion")),
        (3, "Yangian PBW", 60, || suite("yangian-pbw")),
        (4, "twisted Yangian embedding", 300, || suite("embed-ytw")),
        (5, "classical limit and psi closed forms", 120, || {
            suite("qloop-classical-limit")
        }),
        (6, "(r,m),(s,n) commutation identity", 300, || {
            all_certified("rs-identity", "rs[")
        }),
        (7, "graded Yangian relations", 600, || {
            all_certified("graded-relation", "graded[")
        }),
        (8, "S expansion and congruences", 300, || suite("scong")),
        (9, "twisted phi and embedding images", 600, || {
            suite("twisted-phi")
        }),
        (10, "negative controls", 600, negative_controls),
    ];
    let mut failed = 0;
    for (no, title, limit, run) in criteria {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(limit);
        let ok = out.ok && in_time;
        if !ok {
            failed += 1;
        }
        let late = if in_time {
            String::new()
        } else {
            " (over the time limit)".into()
        };
        println!(
            "criterion {no:>2} {}: {title}: {} [{:.2}s / {limit}s]{late}",
            if ok { "PASS" } else { "FAIL" },
            out.note,
            took.as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
