use std::io::Write;
use std::process::{Command, Output, Stdio};

fn ggr(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ggr"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn ggr");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn certify(n: u32, case: &str) -> String {
    let o = ggr(&["certify", "--n", &n.to_string(), "--case", case], None);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    stdout(&o)
}

#[test]
fn certify_then_verify_round_trip() {
    for case in ["ggr", "variant"] {
        for n in 2..=8 {
            let cert = certify(n, case);
            let o = ggr(&["verify"], Some(&cert));
            assert_eq!(o.status.code(), Some(0), "{case} n={n}: {}", stdout(&o));
            assert!(stdout(&o).starts_with("verified:"));
        }
    }
}

#[test]
fn certify_is_byte_deterministic() {
    for strategy in ["inductive", "solver"] {
        let args = ["certify", "--n", "6", "--strategy", strategy];
        assert_eq!(ggr(&args, None).stdout, ggr(&args, None).stdout);
    }
}

#[test]
fn certify_writes_to_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let o = ggr(&["certify", "--n", "5", "--out", path.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let o = ggr(&["verify", path.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn tampered_coefficient_exits_4_with_diagnostic() {
    let n2 = certify(2, "ggr");
    // r_2 = d_0, so the n = 2 certificate is a single coefficient 1.
    let tampered = n2.replace("\"coeff\": \"1\"", "\"coeff\": \"2\"");
    assert_ne!(tampered, n2);
    let o = ggr(&["verify"], Some(&tampered));
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("t^2 - 2*t + 1"), "{}", stdout(&o));

    let o = ggr(&["verify", "--format", "json"], Some(&tampered));
    assert_eq!(o.status.code(), Some(4));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["ok"], false);
    assert_eq!(report["difference"], "t^2 - 2*t + 1");
}

#[test]
fn malformed_certificates_exit_1() {
    let cert = certify(3, "ggr");
    for bad in [
        cert.replace("t^(-s*k)*(t^s-1)^n", "t^k*(t^s-1)^n"),
        cert.replace("\"target\": \"r_n\"", "\"target\": \"R_n\""),
        "{".to_string(),
        String::new(),
    ] {
        let o = ggr(&["verify"], Some(&bad));
        assert_eq!(o.status.code(), Some(1), "{bad}");
        assert!(stderr(&o).contains("malformed certificate"));
    }
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        vec!["certify", "--n", "0"],
        vec!["certify", "--n", "1", "--case", "variant"],
        vec!["certify", "--n", "17"],
        vec!["certify", "--n", "3", "--case", "other"],
        vec!["demo", "--n", "3", "--fn", "tan"],
        vec!["demo", "--n", "3", "--fn", "exp", "--h0", "0"],
        vec!["certify"],
        vec!["frobnicate"],
    ] {
        let o = ggr(&args, None);
        assert_eq!(o.status.code(), Some(1), "{args:?}: {}", stderr(&o));
    }
    let o = ggr(&["certify", "--n", "17"], None);
    assert!(stderr(&o).contains("--allow-large"));
}

#[test]
fn allow_large_lifts_the_cap() {
    let o = ggr(&["certify", "--n", "17", "--allow-large"], None);
    assert_eq!(o.status.code(), Some(0));
    let o = ggr(&["verify"], Some(&stdout(&o)));
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn solver_infeasible_exits_2() {
    let o = ggr(&["certify", "--n", "3", "--strategy", "solver", "--s-max", "1"], None);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}

#[test]
fn solver_certificates_verify() {
    for case in ["ggr", "variant"] {
        let o = ggr(&["certify", "--n", "6", "--case", case, "--strategy", "solver"], None);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(ggr(&["verify"], Some(&stdout(&o))).status.code(), Some(0));
    }
}

#[test]
fn moments_output() {
    let o = ggr(&["moments", "--n", "6"], None);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("r_6: 0 0 0 0 0 0 319979520  [ok]"), "{text}");
    assert!(text.contains("d_1: 0 0 0 0 0 0 720  [ok]"));
    assert!(text.contains("d_0:"));

    // Odd n excludes k = 0 in the ggr case.
    let text = stdout(&ggr(&["moments", "--n", "5"], None));
    assert!(!text.contains("d_0:"), "{text}");
    assert!(text.contains("d_4:"));

    let o = ggr(&["moments", "--n", "1", "--format", "json"], None);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["ok"], true);
    assert_eq!(v["rows"][0]["name"], "d_0");
    assert_eq!(v["rows"][1]["moments"], serde_json::json!(["0", "1"]));
}

#[test]
fn demo_polynomial_is_exact() {
    let o = ggr(&["demo", "--n", "2", "--fn", "poly:0,0,1", "--format", "json"], None);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["agree"], true);
    for table in v["ggr"].as_array().unwrap() {
        assert_eq!(table["exact"], true);
        assert!(table["rows"].as_array().unwrap().iter().all(|r| r["q"] == "2"));
    }
}

#[test]
fn demo_float_functions() {
    for f in ["exp", "sin", "abs_pow:3.5", "osc:2,0.5"] {
        let o = ggr(&["demo", "--n", "3", "--fn", f, "--c", "0.3", "--steps", "6"], None);
        assert_eq!(o.status.code(), Some(0), "{f}: {}", stderr(&o));
        assert!(stdout(&o).contains("R_3"));
    }
    let o = ggr(&["demo", "--n", "4", "--fn", "exp", "--format", "json"], None);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["agree"], true);
    assert_eq!(v["mz_scale"], "56");
}

#[test]
fn render_text_and_file_input() {
    let o = ggr(&["render", "--n", "3"], None);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("r_3(t) = t^4 - 6*t^2 + 8*t - 3"), "{text}");
    assert!(text.contains("R_3(h) = -3*D_1(h) - D_2(h) + D_1(2h)"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    std::fs::write(&path, certify(4, "variant")).unwrap();
    let o = ggr(&["render", "--n", "4", path.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("r_4(t)"));
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(ggr(&["--help"], None).status.code(), Some(0));
    assert_eq!(ggr(&["--version"], None).status.code(), Some(0));
}
