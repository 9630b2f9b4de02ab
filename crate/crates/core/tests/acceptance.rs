//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_FAILURES` are reported as FAIL but do not fail the target; any other
//! failure, or a known failure that starts passing, exits nonzero.

use std::process::Command;
use std::time::Instant;

use smoothwords::verify::{
    construction_matches_oracle, counting_law, even_balance, even_constant_ranges,
    even_exponent_trend, gamma_identity, growth_sandwich_check, kolakoski_checks, lfe_properties,
    operator_algebra, worked_examples, Check,
};
use smoothwords::Alphabet;

const LEVEL_CAP: u64 = 100_000;
const MAX_STATES: u64 = 5_000_000;
const PROPERTY_LEN: usize = 14;
const EVEN_LEN: usize = 30;
const EVEN_B_MAX: u32 = 58;
const EVEN_EXPONENT_TOL: f64 = 0.25;

/// The level counting law does not hold for b >= a + 2 under closure-based smoothness.
const KNOWN_FAILURES: &[u32] = &[1];

fn ab(a: u32, b: u32) -> Alphabet {
    Alphabet::new(a, b).unwrap()
}

fn grid() -> [Alphabet; 4] {
    [ab(1, 2), ab(1, 3), ab(2, 3), ab(2, 4)]
}

fn combine(checks: Vec<Check>) -> (bool, String) {
    let passed = checks.iter().all(|c| c.passed);
    let detail = checks
        .iter()
        .map(|c| c.line())
        .collect::<Vec<_>>()
        .join("\n      ");
    (passed, detail)
}

fn manifest_digest(args: &[&str], threads: usize, tag: &str) -> Result<String, String> {
    let dir = std::env::temp_dir().join(format!("smoothwords-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let path = dir.join(format!("{tag}-{threads}.json"));
    let status = Command::new(env!("CARGO_BIN_EXE_smoothwords"))
        .args(args)
        .arg("--threads")
        .arg(threads.to_string())
        .arg("--manifest")
        .arg(&path)
        .output()
        .map_err(|e| e.to_string())?;
    if !status.status.success() {
        return Err(format!("{args:?} exited with {}", status.status));
    }
    let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    v["output_sha256"]
        .as_str()
        .map(str::to_string)
        .ok_or_else(|| "no digest".to_string())
}

fn determinism() -> (bool, String) {
    let runs: &[(&str, &[&str])] = &[
        ("verify", &["verify-all", "--alphabet", "2,3"]),
        (
            "gamma",
            &[
                "gamma",
                "--alphabet",
                "2,4",
                "--n",
                "200",
                "--format",
                "csv",
            ],
        ),
        (
            "level",
            &[
                "lfe",
                "level",
                "--alphabet",
                "1,3",
                "--j",
                "4",
                "--format",
                "json",
            ],
        ),
    ];
    let mut lines = Vec::new();
    let mut ok = true;
    for (tag, args) in runs {
        let digests: Result<Vec<String>, String> = [1, 4, 1, 8]
            .iter()
            .map(|&t| manifest_digest(args, t, tag))
            .collect();
        match digests {
            Ok(d) => {
                let same = d.iter().all(|x| x == &d[0]);
                ok &= same;
                lines.push(format!(
                    "{tag}: {} ({})",
                    if same { "identical" } else { "differ" },
                    &d[0][..16]
                ));
            }
            Err(e) => {
                ok = false;
                lines.push(format!("{tag}: {e}"));
            }
        }
    }
    (ok, format!("threads 1/4/1/8: {}", lines.join(", ")))
}

type Criterion = (u32, &'static str, Box<dyn Fn() -> (bool, String)>);

fn main() {
    let criteria: Vec<Criterion> = vec![
        (
            1,
            "counting law |P^j(e)| = 4(b-1)(2b-1)^(j-1)",
            Box::new(|| {
                combine(
                    grid()
                        .iter()
                        .map(|&s| counting_law(s, LEVEL_CAP, MAX_STATES))
                        .collect(),
                )
            }),
        ),
        (
            2,
            "construction = preimage oracle",
            Box::new(|| {
                combine(
                    grid()
                        .iter()
                        .map(|&s| construction_matches_oracle(s, LEVEL_CAP, MAX_STATES))
                        .collect(),
                )
            }),
        ),
        (
            3,
            "gamma(n) = 2 + sum |LF_i| = direct count, n <= 20",
            Box::new(|| {
                combine(
                    grid()
                        .iter()
                        .map(|&s| gamma_identity(s, 20, MAX_STATES))
                        .collect(),
                )
            }),
        ),
        (
            4,
            "worked examples",
            Box::new(|| combine(vec![worked_examples()])),
        ),
        (
            5,
            "operator algebra, smooth words |w| <= 14",
            Box::new(|| {
                let alphabets = [ab(1, 2), ab(1, 3), ab(2, 3), ab(2, 4), ab(3, 5), ab(2, 6)];
                combine(
                    alphabets
                        .iter()
                        .map(|&s| operator_algebra(s, PROPERTY_LEN, MAX_STATES))
                        .collect(),
                )
            }),
        ),
        (
            6,
            "LFE properties, |w| <= 14",
            Box::new(|| {
                let alphabets = [ab(1, 2), ab(1, 3), ab(2, 3), ab(2, 4), ab(3, 5), ab(2, 6)];
                combine(
                    alphabets
                        .iter()
                        .map(|&s| lfe_properties(s, PROPERTY_LEN, MAX_STATES))
                        .collect(),
                )
            }),
        ),
        (
            7,
            "even alphabets: balance, length sandwich, constant ranges",
            Box::new(|| {
                let mut checks: Vec<Check> = [ab(2, 4), ab(2, 6), ab(4, 6)]
                    .iter()
                    .map(|&s| even_balance(s, EVEN_LEN, MAX_STATES))
                    .collect();
                checks.push(even_constant_ranges(EVEN_B_MAX));
                combine(checks)
            }),
        ),
        (
            8,
            "growth sandwich on the enumerated horizon",
            Box::new(|| {
                combine(
                    grid()
                        .iter()
                        .map(|&s| growth_sandwich_check(s, 8, 256))
                        .collect(),
                )
            }),
        ),
        (
            9,
            "even exponent trend {2,4}",
            Box::new(|| combine(vec![even_exponent_trend(ab(2, 4), 2048, EVEN_EXPONENT_TOL)])),
        ),
        (
            10,
            "Kolakoski prefix, factors, density band",
            Box::new(|| combine(vec![kolakoski_checks(1_000_000, 10_000, 12)])),
        ),
        (
            11,
            "determinism across thread counts",
            Box::new(determinism),
        ),
    ];

    let mut unexpected = Vec::new();
    let mut passed_count = 0;
    for (id, title, run) in &criteria {
        let start = Instant::now();
        let (passed, detail) = run();
        let known = KNOWN_FAILURES.contains(id);
        let tag = match (passed, known) {
            (true, false) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
            (true, true) => "PASS (expected to fail)",
        };
        passed_count += passed as usize;
        if passed == known {
            unexpected.push(*id);
        }
        println!(
            "[{id:>2}] {tag} {title} ({:.1}s)\n      {detail}",
            start.elapsed().as_secs_f64()
        );
    }
    println!(
        "\nacceptance: {passed_count}/{} pass, known failures {:?}, unexpected {:?}",
        criteria.len(),
        KNOWN_FAILURES,
        unexpected
    );
    if !unexpected.is_empty() {
        std::process::exit(1);
    }
}
