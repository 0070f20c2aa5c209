use super::*;

fn config() -> SuiteConfig {
    SuiteConfig {
        jobs: 2,
        ..SuiteConfig::default()
    }
}

#[test]
fn defaults_are_valid() {
    let c = SuiteConfig::default();
    assert_eq!((c.n, c.rmax, c.mmax, c.order), (2, 4, 2, 6));
    c.validate().unwrap();
}

#[test]
fn invalid_configs() {
    let bad = |c: SuiteConfig| matches!(run_suite("ybe", &c), Err(CliError::InvalidConfig(_)));
    assert!(bad(SuiteConfig { n: 0, ..config() }));
    assert!(bad(SuiteConfig {
        n: 3,
        case: CaseSel::Sp,
        ..config()
    }));
    assert!(bad(SuiteConfig {
        order: 5,
        ..config()
    }));
    assert!(bad(SuiteConfig {
        n: 1,
        negative_control: true,
        ..config()
    }));
    assert_eq!(
        run_suite("nope", &config()).unwrap_err(),
        CliError::UnknownSuite("nope".into())
    );
}

#[test]
fn odd_n_skips_the_symplectic_case() {
    let c = SuiteConfig { n: 3, ..config() };
    assert_eq!(c.cases(), vec![Case::O]);
}

#[test]
fn key_value_file() {
    let mut c = config();
    c.apply_kv("# caps\nn = 3\ncase = o\nrmax=2 # small\n\nseed = 7\n")
        .unwrap();
    assert_eq!((c.n, c.case, c.rmax, c.seed), (3, CaseSel::O, 2, 7));
    assert!(c.apply_kv("bogus = 1").is_err());
    assert!(c.apply_kv("n 3").is_err());
}

#[test]
fn ybe_suite_passes() {
    let r = run_suite("ybe", &config()).unwrap();
    assert_eq!(r.status, Status::Pass);
    assert_eq!(r.checks.len(), 3);
    assert_eq!(exit_code(r.status), 0);
}

#[test]
fn ybe_negative_control_fails() {
    let r = run_suite(
        "ybe",
        &SuiteConfig {
            negative_control: true,
            ..config()
        },
    )
    .unwrap();
    assert_eq!(r.status, Status::Fail);
    assert!(!r.first_failure().unwrap().detail.is_empty());
    assert_eq!(exit_code(r.status), 1);
}

#[test]
fn empty_report_json() {
    let r = Report::new("ybe");
    let v: serde_json::Value =
        serde_json::from_slice(&emit_report(&r, Format::Json).unwrap()).unwrap();
    assert_eq!(v["suite"], "ybe");
    assert_eq!(v["checks"], serde_json::json!([]));
    assert_eq!(v["schema_version"], crate::report::SCHEMA_VERSION);
}

#[test]
fn passing_check_record() {
    let mut r = Report::new("x");
    r.push(Check::pass("c").with_param("m", 1));
    let v: serde_json::Value =
        serde_json::from_slice(&emit_report(&r, Format::Json).unwrap()).unwrap();
    assert_eq!(v["checks"][0]["verdict"], "pass");
    assert_eq!(v["checks"][0]["params"]["m"], "1");
}

#[test]
fn json_round_trip_and_determinism() {
    let r = run_suite(
        "rtt-expansion",
        &SuiteConfig {
            rmax: 2,
            order: 4,
            ..config()
        },
    )
    .unwrap();
    let bytes = emit_report(&r, Format::Json).unwrap();
    assert_eq!(parse_report(&bytes).unwrap(), r);
    let again = run_suite(
        "rtt-expansion",
        &SuiteConfig {
            rmax: 2,
            order: 4,
            jobs: 1,
            ..config()
        },
    )
    .unwrap();
    assert_eq!(emit_report(&again, Format::Json).unwrap(), bytes);
}

#[test]
fn markdown_has_one_row_per_check() {
    let r = run_suite("ybe", &config()).unwrap();
    let md = String::from_utf8(emit_report(&r, Format::Markdown).unwrap()).unwrap();
    let rows = md
        .lines()
        .filter(|l| l.starts_with("| ") && !l.starts_with("| check"))
        .count();
    assert_eq!(rows, 3);
}
