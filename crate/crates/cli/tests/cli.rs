use std::path::PathBuf;
use std::process::{Command, Output};

use sha2::{Digest, Sha256};

use starkres_cli::catalog::{lookup, Source, CATALOG};
use starkres_cli::compare::{cross_validate, Status, ToleranceSpec};
use starkres_cli::config::{FileConfig, JobConfig, Method, Overrides};
use starkres_cli::engines::Computed;
use starkres_core::decimal::printed_digits;
use starkres_core::{PrecisionContext, StateLabel};

fn starkres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_starkres")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn zero_field_rpm_is_exact() {
    let out = scratch("zero.csv");
    let o = starkres(&["rpm", "--F", "0", "--state", "1 0 0", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "method,ReE,Gamma,source\nrpm,-0.5,0,computed\n");
}

#[test]
fn pt_reference_check_passes() {
    let o = starkres(&["pt", "--state", "1 0 0", "--F", "0.005", "--orders", "130", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("| pt vs pt-130 | ReE |"), "{text}");
    assert!(text.contains("PASS") && !text.contains("FAIL"), "{text}");
}

#[test]
fn exit_codes() {
    // Configuration errors.
    for args in [
        &["rpm", "--F", "0.005", "--state", "2 2 0"][..],
        &["rpm", "--F", "-0.001"],
        &["asymptotic", "--F", "0.06"],
        &["crlm", "--F", "0.005", "--theta", "0.3"],
        &["run", "--F", "0.005"],
    ] {
        assert_eq!(starkres(args).status.code(), Some(2), "{args:?}");
    }
    // Engine error: working precision below the rule for this field.
    assert_eq!(starkres(&["rpm", "--F", "0.005", "--digits", "60", "--d-max", "4"]).status.code(), Some(3));
    // Reference mismatch: a 4 x 4 mesh cannot reach 11 digits.
    let o = starkres(&["crlm", "--F", "0.005", "--N", "4", "--check"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("FAIL"));
    // Without --check the same run succeeds.
    assert_eq!(starkres(&["crlm", "--F", "0.005", "--N", "4"]).status.code(), Some(0));
    // A short series only claims the digits it has, so its check passes.
    assert_eq!(starkres(&["pt", "--F", "0.005", "--orders", "20", "--check"]).status.code(), Some(0));
}

#[test]
fn missing_config_file_is_an_io_error() {
    let o = starkres(&["run", "--config", "/nonexistent/job.toml"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("/nonexistent/job.toml"));
}

#[test]
fn identical_config_gives_identical_files() {
    let cfg = scratch("job.toml");
    std::fs::write(
        &cfg,
        "method = \"converge\"\nF = \"0.005\"\nstate = \"1 0 0\"\n[rpm]\nd_min = 2\nd_max = 7\n[output]\nformat = \"csv\"\n",
    )
    .unwrap();
    let mut bodies = Vec::new();
    for name in ["a.csv", "b.csv"] {
        let out = scratch(name);
        let o = starkres(&["run", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        bodies.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(bodies[0], bodies[1]);
    let text = String::from_utf8(bodies.remove(0)).unwrap();
    assert!(text.starts_with("D,ReE,ImE,log10_rel_dRe,log10_rel_dIm\n2,"));
    assert_eq!(text.lines().count(), 7);

    let json: Vec<Vec<u8>> = (0..2)
        .map(|_| {
            let out = scratch("pt.json");
            starkres(&["pt", "--F", "0.004", "--format", "json", "--out", out.to_str().unwrap()]);
            std::fs::read(&out).unwrap()
        })
        .collect();
    assert_eq!(json[0], json[1]);
    let v: serde_json::Value = serde_json::from_slice(&json[0]).unwrap();
    assert_eq!(v["rows"][0]["method"], "pt");
}

#[test]
fn single_dimension_trace() {
    let out = scratch("single.csv");
    let o = starkres(&["converge", "--F", "0", "--d-min", "4", "--d-max", "4", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "D,ReE,ImE,log10_rel_dRe,log10_rel_dIm\n4,-0.5,0,,\n");
}

#[test]
fn zero_field_trace_sits_at_the_floor() {
    let out = scratch("floor.csv");
    starkres(&["converge", "--F", "0", "--d-max", "6", "--out", out.to_str().unwrap()]);
    let text = std::fs::read_to_string(&out).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0][3], "");
    for r in &rows[1..] {
        assert_eq!(r[3], "-60.000", "{r:?}");
        // Im E stays zero, so no relative change is defined.
        assert_eq!((r[2], r[4]), ("0", ""));
    }
}

#[test]
fn ground_trace_converges_monotonically() {
    let out = scratch("ground.csv");
    starkres(&["converge", "--F", "0.005", "--d-max", "14", "--out", out.to_str().unwrap()]);
    let text = std::fs::read_to_string(&out).unwrap();
    let logs: Vec<(usize, f64)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[3].parse().unwrap_or(0.0))
        })
        .collect();
    let tail: Vec<f64> = logs.iter().filter(|(d, _)| *d >= 5).map(|(_, l)| *l).collect();
    assert!(tail.windows(2).all(|w| w[1] < w[0]), "{logs:?}");
    assert!(*tail.last().unwrap() < -40.0);
}

#[test]
fn rpm_reference_check_with_trace_file() {
    let trace = scratch("rpm-trace.csv");
    let o = starkres(&["rpm", "--F", "0.005", "--check", "--trace", trace.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
    assert_eq!(std::fs::read_to_string(&trace).unwrap().lines().count(), 30);
}

#[test]
fn zero_field_engines_agree() {
    for (state, mesh, e) in [("1 0 0", "10", "-0.5"), ("2 1 0", "20", "-0.125")] {
        let out = scratch("cmp0.csv");
        let o = starkres(&["compare", "--F", "0", "--state", state, "--N", mesh, "--check", "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        let text = std::fs::read_to_string(&out).unwrap();
        assert!(text.contains(&format!("rpm,{e},0,computed")), "{text}");
        assert!(text.contains(&format!("pt,{e},,computed")), "{text}");
        assert!(text.contains("crlm,") && text.contains(",<1e-13,computed"), "{text}");
        let report = stdout(&o);
        assert!(report.contains("bound consistent"));
        assert!(report.contains("| asymptotic | - | n/a"), "{report}");
    }
}

#[test]
fn catalog_checksum() {
    let mut h = Sha256::new();
    for e in CATALOG {
        h.update(e.canonical_line().as_bytes());
        h.update(b"\n");
    }
    let hex: String = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
    assert_eq!(hex, "0499aa5800a3783c7881e419296f059ccb7be73f48cb4981c6be401898f8eabe");
}

#[test]
fn catalog_strings_are_verbatim() {
    let ctx = PrecisionContext::new(100).unwrap();
    for e in CATALOG {
        for s in [e.re_e, e.gamma].into_iter().flatten() {
            ctx.parse(s).unwrap();
        }
    }
    let rpm = CATALOG.iter().find(|e| e.source == Source::RpmFull).unwrap();
    assert_eq!(printed_digits(rpm.re_e.unwrap()), 68);
    let pt = CATALOG.iter().find(|e| e.source == Source::Pt130).unwrap();
    assert_eq!(printed_digits(pt.re_e.unwrap()), 55);
    let k = CATALOG.iter().find(|e| e.source == Source::Kolosov).unwrap();
    assert_eq!(k.re_e, Some("-0.127 146 612"));
    assert_eq!(printed_digits(k.re_e.unwrap()), 9);
    let flagged = lookup(StateLabel::new(1, 0, 0), "0.005");
    assert!(flagged.iter().any(|e| e.source == Source::Crlm2013 && e.note.contains("mis-transcribed")));
}

fn fake(method: Method, re: Option<&str>, gamma: Option<&str>, bound: Option<f64>) -> Computed {
    let ctx = PrecisionContext::new(40).unwrap();
    Computed {
        method,
        re: re.map(|s| ctx.parse(s).unwrap()),
        gamma: gamma.map(|s| ctx.parse(s).unwrap()),
        gamma_bound: bound,
        re_digits: 16,
        gamma_digits: 6,
        re_tol: 0.0,
        gamma_rel_tol: 0.0,
        working_digits: 40,
        detail: String::new(),
    }
}

#[test]
fn verdicts_degrade_instead_of_dropping_engines() {
    let outcomes = vec![
        (Method::Rpm, Ok(fake(Method::Rpm, Some("-0.5000562847937"), Some("9.498e-56"), None))),
        (Method::Pt, Err("precision exhausted".to_string())),
        (Method::Crlm, Ok(fake(Method::Crlm, Some("-0.5000562847938"), Some("1e-20"), Some(1e-13)))),
        (Method::Asymptotic, Ok(fake(Method::Asymptotic, None, Some("9.5e-56"), None))),
    ];
    let v = cross_validate(&outcomes, &ToleranceSpec::default());
    assert_eq!(v[0].pair, "pt");
    assert_eq!(v[0].status, Status::Error);
    let find = |pair: &str, q: &str| v.iter().find(|x| x.pair == pair && x.quantity == q).unwrap().status.clone();
    assert_eq!(find("rpm vs crlm", "ReE"), Status::Pass);
    assert_eq!(find("rpm vs crlm", "Gamma"), Status::BoundConsistent);
    assert_eq!(find("rpm vs asymptotic", "Gamma"), Status::Fail);
    assert_eq!(find("crlm vs asymptotic", "Gamma"), Status::BoundConsistent);
    assert_eq!(v.len(), 5);
}

#[test]
fn bound_violation_is_a_failure() {
    let outcomes = vec![
        (Method::Rpm, Ok(fake(Method::Rpm, None, Some("2e-13"), None))),
        (Method::Crlm, Ok(fake(Method::Crlm, None, Some("0"), Some(1e-13)))),
    ];
    let v = cross_validate(&outcomes, &ToleranceSpec::default());
    assert_eq!(v[0].status, Status::BoundViolated);
    assert!(v[0].status.is_failure());
}

#[test]
fn config_file_schema_round_trip() {
    let text = "method = \"crlm\"\nF = \"0.005\"\nstate = \"|2 0 1>\"\n[crlm]\nmesh = 20\ntheta = [0.3, 0.4]\n[output]\nformat = \"md\"\ncheck = true\n";
    let job = JobConfig::resolve(FileConfig::parse(text).unwrap(), Overrides::default()).unwrap();
    assert_eq!(job.method, Method::Crlm);
    assert_eq!(job.state, StateLabel::new(0, 0, 1));
    assert_eq!(job.crlm.quad_order, 2 * 20 + 2 + 6);
    assert!(job.output.check);
}
