//! End-to-end tests of the `convmds` binary: exit codes, file formats and
//! report determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_convmds"))
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("convmds-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn plan_golden_and_bounds_failure() {
    let out = bin().args(["plan", "11", "2", "6"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("W = 5, E = 2, F = 1, R = 4"), "{text}");
    assert!(text.contains("G1^c, (G2; G1; G0), (G2; G3), (G2; G1), [G0 G1 G2 G3]"));

    // (4, 2, 6) violates the stated exception bound n >= 5.
    let out = bin().args(["plan", "4", "2", "6"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_paper_reports_known_mismatches() {
    let dir = tmp_dir("verify");
    let out = bin()
        .args(["verify-paper", "--emit-codes"])
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "mismatches exist by design");
    let text = stdout(&out);
    assert!(text.contains("verify-paper: 37 checks, 6 mismatches"), "{text}");
    assert!(text.contains("ok       example 3 free distance"));
    assert!(text.contains("ok       example 5 planned conditions pass"));
    assert!(text.contains("MISMATCH example 5 certificate"));
    assert!(text.contains("MISMATCH example 5 free distance"));
    assert!(text.contains("MISMATCH example 6 free distance"));
    assert!(text.contains("MISMATCH example 4 sampled free-distance upper bound"));
    for name in [
        "all_ones_2_1_1.json",
        "gf4_3_1_2.json",
        "gf7_3_1_3.json",
        "gf16_3_1_3.json",
        "gf31_5_2_4.json",
        "gf3_3_2_3.json",
        "gf7_6_2_3.json",
    ] {
        assert!(dir.join(name).exists(), "{name} missing");
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn check_exit_codes_and_determinism() {
    let dir = tmp_dir("check");
    bin()
        .args(["verify-paper", "--emit-codes"])
        .arg(&dir)
        .output()
        .unwrap();

    // Certified code: exit 0.
    let gf7 = dir.join("gf7_3_1_3.json");
    let out = bin()
        .args(["check"])
        .arg(&gf7)
        .args(["--planned"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("certified-MDS"));

    // The unrelaxed window conditions fail for the same code: exit 1.
    let out = bin().args(["check"]).arg(&gf7).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("minors-fail"));

    // Prior-work comparison on the wide code: exit 1.
    let out = bin()
        .args(["check"])
        .arg(dir.join("gf7_6_2_3.json"))
        .args(["--theorem", "prior"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("superregular stack: FAIL"));

    // Malformed input: exit 2.
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"field\": {}}").unwrap();
    let out = bin().args(["check"]).arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Reports are byte-identical across runs.
    let rep1 = dir.join("rep1.json");
    let rep2 = dir.join("rep2.json");
    for rep in [&rep1, &rep2] {
        let out = bin()
            .args(["check"])
            .arg(&gf7)
            .args(["--planned", "--out"])
            .arg(rep)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
    }
    let a = std::fs::read(&rep1).unwrap();
    let b = std::fs::read(&rep2).unwrap();
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert!(text.contains("\"schema_version\": 1"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn distances_profile_output() {
    let dir = tmp_dir("dist");
    bin()
        .args(["verify-paper", "--emit-codes"])
        .arg(&dir)
        .output()
        .unwrap();
    let out = bin()
        .args(["distances"])
        .arg(dir.join("gf7_3_1_3.json"))
        .args(["--free"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("d_0 = 3 optimal"), "{text}");
    assert!(text.contains("free distance >= 12"));
    assert!(text.contains("MDS: yes"));

    let out = bin()
        .args(["distances"])
        .arg(dir.join("gf3_3_2_3.json"))
        .args(["--free"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("MDS: no"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn construct_round_trips_through_check() {
    let dir = tmp_dir("construct");
    let code = dir.join("code.json");
    let out = bin()
        .args(["construct", "2", "1", "1", "--out"])
        .arg(&code)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("requires GF(2^17)"));
    let out = bin().args(["check"]).arg(&code).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    // Out-of-budget parameters report the degree and build nothing.
    let out = bin().args(["construct", "3", "2", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("requires GF(2^65)"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn search_writes_hits_and_stats() {
    let dir = tmp_dir("search");
    let out = bin()
        .args([
            "search", "3", "1", "2", "--q", "4", "--exhaustive", "--budget", "300000",
            "--workers", "2", "--out",
        ])
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("exhaustive"));
    let stats = std::fs::read_to_string(dir.join("stats.json")).unwrap();
    assert!(stats.contains("\"schema_version\": 1"));
    assert!(stats.contains("\"exhausted\": true"));
    let hits: Vec<_> = std::fs::read_dir(&dir)
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| e.file_name().to_string_lossy().starts_with("hit_"))
        .collect();
    assert!(!hits.is_empty());
    // Every written hit re-checks as certified under the planned set.
    let hit_path = hits[0].path();
    let out = bin()
        .args(["check"])
        .arg(&hit_path)
        .args(["--planned"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));

    // Field-size scan over several q values.
    let out = bin()
        .args(["search", "3", "1", "2", "--q", "2,3,4", "--budget", "300000"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("q = 2: NoHitCertificate"));
    assert!(text.contains("q = 3: NoHitCertificate"));
    assert!(text.contains("q = 4: Hit"));
    std::fs::remove_dir_all(&dir).unwrap();
}
