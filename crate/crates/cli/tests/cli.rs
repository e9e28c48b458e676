use std::process::Command;

fn bvpdn(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_bvpdn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &std::process::Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn bounds_json_reports_constants() {
    let out = bvpdn(&[
        "bounds", "--l1", "1", "--l2", "1", "--l3", "1", "--c-abs", "0", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let l4 = v["L4"].as_f64().unwrap();
    assert!((l4 - 14.310507146627971).abs() <= 1e-9);
    let r0 = v["r0"].as_f64().unwrap();
    assert!(r0 > 1.5e-3 && r0 < 2e-3);
}

#[test]
fn bounds_harmonic_only_gives_4_over_pi() {
    let out = bvpdn(&[
        "bounds", "--l1", "1", "--l2", "0", "--l3", "0", "--c-abs", "0", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let l4 = v["L4"].as_f64().unwrap();
    assert!((l4 - 4.0 / std::f64::consts::PI).abs() <= 1e-12);
}

#[test]
fn bounds_degenerate_parameters_exit_2() {
    let out = bvpdn(&["bounds", "--l1", "0", "--l2", "0", "--l3", "0", "--c-abs", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn unknown_flag_exit_2() {
    let out = bvpdn(&["bounds", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn eval_polynomial_grid_csv() {
    let dir = std::env::temp_dir().join("bvpdn-cli-test-eval");
    std::fs::create_dir_all(&dir).unwrap();
    let spec = dir.join("poly.json");
    std::fs::write(
        &spec,
        r#"{"type":"poly","terms":[{"p":2,"q":2,"re":1.0,"im":0.0}]}"#,
    )
    .unwrap();
    let out = bvpdn(&[
        "eval",
        "--problem",
        spec.to_str().unwrap(),
        "--rmax",
        "0.5",
        "--grid",
        "8",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.trim_end().lines().collect();
    assert_eq!(lines.len(), 65, "header plus 64 grid rows");
    assert_eq!(
        lines[0],
        "re_z,im_z,re_w,im_w,abs_w,re_wz,im_wz,re_wzbar,im_wzbar"
    );
    // The outermost ring contains z = 0.5 exactly; |z|^4 = 0.0625 there.
    let row = lines
        .iter()
        .find(|l| l.starts_with("5.0000000000000000e-1,0.0"))
        .expect("node at z = 0.5");
    let cols: Vec<f64> = row.split(',').map(|x| x.parse().unwrap()).collect();
    assert!((cols[2] - 0.0625).abs() <= 1e-4, "re_w = {}", cols[2]);
    assert!(cols[3].abs() <= 1e-6);
}

#[test]
fn eval_zero_problem_gives_zero_columns() {
    let dir = std::env::temp_dir().join("bvpdn-cli-test-zero");
    std::fs::create_dir_all(&dir).unwrap();
    let spec = dir.join("zero.json");
    std::fs::write(&spec, r#"{"type":"poly","terms":[]}"#).unwrap();
    let out = bvpdn(&[
        "eval",
        "--problem",
        spec.to_str().unwrap(),
        "--rmax",
        "0.5",
        "--grid",
        "4",
    ]);
    assert!(out.status.success());
    for line in stdout_of(&out).trim_end().lines().skip(1) {
        let cols: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert!(cols[2..].iter().all(|&v| v == 0.0), "{line}");
    }
}

#[test]
fn eval_malformed_problem_exit_2() {
    let dir = std::env::temp_dir().join("bvpdn-cli-test-bad");
    std::fs::create_dir_all(&dir).unwrap();
    let spec = dir.join("bad.json");
    std::fs::write(&spec, "{not json").unwrap();
    let out = bvpdn(&["eval", "--problem", spec.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    // Missing file is also a usage error.
    let out = bvpdn(&["eval", "--problem", "/nonexistent/problem.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_landau_suite_passes() {
    let out = bvpdn(&["verify", "--suite", "landau", "--seed", "7"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout_of(&out);
    assert!(text.contains("univalence_radius"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_unknown_suite_exit_2() {
    let out = bvpdn(&["verify", "--suite", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn landau_subcommand_json() {
    let out = bvpdn(&[
        "landau", "--l1", "1", "--l2", "0", "--l3", "0", "--c-abs", "0", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let r0 = v["r0"].as_f64().unwrap();
    assert!((r0 - 0.12577029234976927).abs() <= 1e-12);
}

#[test]
fn thread_cap_env_var_is_accepted() {
    let out = Command::new(env!("CARGO_BIN_EXE_bvpdn"))
        .env("BVPDN_THREADS", "1")
        .args(["verify", "--suite", "coeff", "--seed", "7", "--format", "json"])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
}
