//! Acceptance criterion 9: the generate -> analyze round trip reproduces the
//! requested classification label for every legal spec at n = 2..5, and the
//! full selfcheck finishes within its wall-clock budget.

use chn_orbit_cli::commands::{cmd_analyze, cmd_generate, AnalyzeOpts, GenerateOpts};
use std::process::Command;
use std::time::Instant;

/// Legal generator specs with their expected classification labels.
fn legal_specs(n: usize) -> Vec<(&'static str, String, bool, String)> {
    let m = n - 1;
    let mut out: Vec<(&'static str, String, bool, String)> = Vec::new();
    for k in 0..=m {
        let expected = if k == m {
            "RH^n-focal".to_string()
        } else {
            format!("RH^{}", k + 1)
        };
        out.push(("a", format!("totally-real:{k}"), false, expected));
    }
    for k in 0..=m {
        out.push((
            "b",
            format!("complex:{}", 2 * k),
            false,
            format!("CH^{}", k + 1),
        ));
    }
    out.push(("b", "hyperplane".to_string(), false, "Lohnherr".to_string()));
    for dim in 0..=2 * m {
        let expected = if dim % 2 == 0 {
            format!("CH^{}", dim / 2 + 1)
        } else if dim == 2 * m - 1 {
            "Lohnherr".to_string()
        } else {
            "generic-focal".to_string()
        };
        out.push(("b", format!("dim:{dim}"), false, expected));
    }
    if m >= 2 {
        out.push((
            "b",
            "constant-angle:3/5:4/5:2".to_string(),
            false,
            "generic-focal".to_string(),
        ));
        out.push(("twisted", "complex:2".to_string(), true, "CH^2".to_string()));
    }
    if m >= 3 {
        out.push((
            "twisted",
            "totally-real:2".to_string(),
            false,
            "RH^3".to_string(),
        ));
    }
    out
}

#[test]
fn criterion_9_classification_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let mut total = 0usize;
    for n in 2..=5 {
        for (family, spec, with_z, expected) in legal_specs(n) {
            let path = dir.path().join(format!("{n}-{family}-{}.json", total));
            cmd_generate(&GenerateOpts {
                family: family.to_string(),
                n,
                spec: Some(spec.clone()),
                with_z,
                out: Some(path.clone()),
            })
            .unwrap_or_else(|e| panic!("generate failed for {family} {spec} at n={n}: {e}"));
            let report = cmd_analyze(
                &path,
                &AnalyzeOpts {
                    json: true,
                    float: false,
                    span: false,
                },
            )
            .unwrap_or_else(|e| panic!("analyze failed for {family} {spec} at n={n}: {e}"));
            let v: serde_json::Value = serde_json::from_str(&report).unwrap();
            assert_eq!(
                v["classification"]["label"], expected,
                "label mismatch for {family} {spec} at n = {n}"
            );
            assert_eq!(v["minimal"], true, "{family} {spec} at n = {n}");
            total += 1;
        }
    }
    assert!(total >= 60, "only {total} specs exercised");
    println!("criterion 9a (classification round trip, {total} specs over n = 2..5): PASS");
}

#[test]
fn criterion_9_selfcheck_budget() {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_chn-orbit"))
        .args(["selfcheck", "--n-range", "2..6", "--seed", "7"])
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    assert_eq!(
        out.status.code(),
        Some(0),
        "selfcheck failed:\n{}",
        String::from_utf8_lossy(&out.stdout)
    );
    assert!(
        elapsed.as_secs_f64() < 120.0,
        "selfcheck took {elapsed:?} (budget 120 s)"
    );
    println!("criterion 9b (full selfcheck under the wall-clock budget, {elapsed:?}): PASS");
}
