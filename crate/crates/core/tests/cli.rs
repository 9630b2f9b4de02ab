use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_smoothwords"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn derive_prints_closure_and_chains() {
    let o = run(&["derive", "--alphabet", "1,3", "--word", "3313133311"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("closure: 333131333111"));
    assert!(out.contains("rho: 311133"));
    assert!(out.contains("D chain: 3313133311 -> 1113 -> 3 -> ε"));
}

#[test]
fn smooth_json() {
    let o = run(&[
        "smooth",
        "--alphabet",
        "1,2",
        "--word",
        "2211",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["smooth"], true);
    assert_eq!(v["height"], 2);
    assert_eq!(v["lfe"], false);
}

#[test]
fn level_count() {
    let o = run(&[
        "lfe",
        "level",
        "--alphabet",
        "2,3",
        "--j",
        "3",
        "--count-only",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "200");
}

#[test]
fn gamma_csv_rows() {
    let o = run(&["gamma", "--alphabet", "1,2", "--n", "16", "--format", "csv"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,gamma,lf_count,ht_min,ht_max,min_b_ratio");
    assert_eq!(lines.len(), 17);
    assert!(lines[2].starts_with("2,4,"));
    assert!(lines[5].starts_with("5,14,"));
}

#[test]
fn gamma_methods_agree() {
    let tree = run(&[
        "gamma",
        "--alphabet",
        "2,4",
        "--n",
        "30",
        "--format",
        "csv",
        "--method",
        "tree",
    ]);
    let frontier = run(&[
        "gamma",
        "--alphabet",
        "2,4",
        "--n",
        "30",
        "--format",
        "csv",
        "--method",
        "frontier",
    ]);
    assert!(tree.status.success() && frontier.status.success());
    assert_eq!(tree.stdout, frontier.stdout);
}

#[test]
fn kolakoski_prefix() {
    let o = run(&["kolakoski", "--n", "20"]);
    assert_eq!(stdout(&o).trim(), "22112122122112112212");
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["smooth", "--alphabet", "3,3", "--word", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["smooth", "--alphabet", "1,2", "--word", "13"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    let o = run(&[
        "lfe",
        "level",
        "--alphabet",
        "2,3",
        "--j",
        "9",
        "--count-only",
        "--max-states",
        "100",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("resource limit"));
    // the counting law fails for {1,3}
    assert_eq!(
        run(&["verify-all", "--alphabet", "1,3"]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["verify-all", "--alphabet", "1,2"]).status.code(),
        Some(0)
    );
}

#[test]
fn manifest_is_written_and_stable() {
    let dir = std::env::temp_dir().join(format!("smoothwords-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut digests = Vec::new();
    for threads in ["1", "3"] {
        let path = dir.join(format!("m{threads}.json"));
        let o = run(&[
            "lfe",
            "length",
            "--alphabet",
            "1,3",
            "--n",
            "12",
            "--threads",
            threads,
            "--manifest",
            path.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        let m: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(m["command"], "lfe length");
        assert_eq!(m["exit_code"], 0);
        assert_eq!(m["output_sha256"].as_str().unwrap().len(), 64);
        digests.push(m["output_sha256"].clone());
    }
    assert_eq!(digests[0], digests[1]);
    std::fs::remove_dir_all(&dir).ok();
}
