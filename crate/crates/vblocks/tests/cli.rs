//! End-to-end behavior of the binary: argument handling, config merging,
//! output formats, exit codes, and oracle mode.

use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_vblocks"));
    c.env_remove("VERONESE_BLOCKS_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn intersect_known_value_as_json() {
    let out = run(&[
        "intersect", "--ell", "1", "--g", "3", "--profile", "1,1,1,5", "--format", "json",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema"], "vb-1");
    assert_eq!(v["command"], "intersect");
    assert_eq!(v["outputs"]["value"], "1/2");
}

#[test]
fn rank_plain_value() {
    let out = run(&["rank", "--ell", "2", "--weights", "1,1,1,1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "2\n");
}

#[test]
fn cb_intersect_both_flavors() {
    let out = run(&["cb-intersect", "--ell", "2", "--g", "4", "--i", "2"]);
    assert_eq!((code(&out), stdout(&out).as_str()), (0, "4\n"));
    let out = run(&["cb-intersect", "--ell", "2", "--n", "8", "--i", "3"]);
    assert_eq!((code(&out), stdout(&out).as_str()), (0, "2\n"));
}

#[test]
fn sigma_reports_phi_and_wall() {
    let out = run(&[
        "sigma", "--ell", "1", "--g", "3", "--labels", "1,2,3,4", "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["outputs"]["value"], "1");
    assert_eq!(v["outputs"]["phi"], "1");
    assert_eq!(v["outputs"]["on_wall"], "true");
}

#[test]
fn verify_poscomb_passes() {
    let out = run(&["verify", "poscomb", "--ell", "3", "--g", "7"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("PASS"), "{}", stdout(&out));
    assert!(stdout(&out).contains("220"), "{}", stdout(&out));
}

#[test]
fn verify_wall_without_walls_is_vacuous() {
    let out = run(&[
        "verify", "wall", "--d", "2", "--gamma", "1/7", "--weights",
        "10/21,10/21,10/21,10/21,10/21,10/21", "--format", "json",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["outputs"]["curves_on_walls"], "0");
}

#[test]
fn missing_parameter_is_a_usage_error() {
    let out = run(&["rank", "--ell", "2"]);
    assert_eq!(code(&out), 1);
    assert!(
        stderr(&out).contains("missing required parameter --weights"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn degree_one_is_rejected() {
    let out = run(&["intersect", "--ell", "3", "--g", "3", "--profile", "1,1,2,4"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("d=1"), "{}", stderr(&out));
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("Usage"));
}

#[test]
fn unknown_subcommand_exits_one() {
    let out = run(&["frobnicate"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn config_supplies_parameters_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("job.conf");
    std::fs::write(
        &path,
        "# intersection job\ncommand = intersect\nell = 1\ng = 3\nprofile = 1,1,1,5\nformat = json\n",
    )
    .unwrap();
    let conf = path.to_str().unwrap();

    let out = run(&["--config", conf]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["outputs"]["value"], "1/2");

    let out = run(&["--config", conf, "--format", "plain", "intersect", "--profile", "1,1,2,4"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(stdout(&out), "0\n");
}

#[test]
fn bad_config_lines_are_named() {
    let dir = tempfile::tempdir().unwrap();

    let unknown = dir.path().join("unknown.conf");
    std::fs::write(&unknown, "command = rank\nel = 2\nweights = 1,1,1,1\n").unwrap();
    let out = run(&["--config", unknown.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("unknown key"), "{}", stderr(&out));
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));

    let duplicate = dir.path().join("duplicate.conf");
    std::fs::write(&duplicate, "command = rank\nell = 2\nell = 3\n").unwrap();
    let out = run(&["--config", duplicate.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("duplicate"), "{}", stderr(&out));
}

#[test]
fn out_file_gets_the_exact_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let args = ["class", "--ell", "2", "--g", "4", "--format", "json"];

    let direct = run(&args);
    assert_eq!(code(&direct), 0);

    let mut redirected: Vec<&str> = args.to_vec();
    let out_path = path.to_str().unwrap();
    redirected.extend_from_slice(&["--out", out_path]);
    let out = run(&redirected);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
}

#[test]
fn json_reports_round_trip() {
    for args in [
        vec!["table", "jensen", "--g", "4", "--format", "json"],
        vec!["rank", "--ell", "3", "--weights", "2,2,2,2", "--format", "json"],
        vec!["verify", "same-face", "--ell", "3", "--g", "5", "--format", "json"],
    ] {
        let out = run(&args);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        let text = stdout(&out);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
        assert_eq!(text, again, "serialization is not canonical for {args:?}");
    }
}

#[test]
fn csv_uses_lf_and_a_header() {
    let out = run(&["table", "jensen", "--g", "3", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("ell,i,value\n"), "{}", text);
    assert!(!text.contains('\r'));
    assert!(text.ends_with('\n'));
    assert_eq!(text.lines().count(), 10); // header + 3x3 grid
}

#[test]
fn oracle_mode_reports_agreement() {
    let out = run(&["rank", "--ell", "3", "--weights", "2,2,2,2", "--check-oracle"]);
    assert_eq!(code(&out), 0);
    assert!(
        stderr(&out).contains("path enumeration"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn oracle_mode_refuses_infeasible_sizes() {
    let weights = vec!["1"; 13].join(",");
    let out = run(&["rank", "--ell", "1", "--weights", &weights, "--check-oracle"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("n <= 12"), "{}", stderr(&out));
}

#[test]
fn thread_env_must_be_a_positive_integer() {
    let out = bin()
        .args(["table", "jensen", "--g", "3"])
        .env("VERONESE_BLOCKS_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&out), 1);
    assert!(
        stderr(&out).contains("VERONESE_BLOCKS_THREADS"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn oversized_tables_are_refused_with_a_cost_estimate() {
    let out = run(&["table", "jensen", "--g", "40"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("exceeds the limit"), "{}", stderr(&out));
    assert!(stderr(&out).contains("raise --limit"), "{}", stderr(&out));

    let out = run(&["table", "jensen", "--g", "14", "--limit", "14"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
}
