//! End-to-end tests of the binary: exit-code contract, determinism, golden
//! outputs, and the documented flag surface.

use std::process::{Command, Output};

fn a1ext(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_a1ext"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn build_bg1_emits_three_classes() {
    let out = a1ext(&["build", "bg:1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("MODULE v1 bg:1"));
    assert_eq!(text.matches("\nB ").count() + usize::from(text.starts_with("B ")), 3);
    assert!(text.contains("B 3 z2"));
}

#[test]
fn build_tmf_small_dims() {
    let out = a1ext(&["build", "tmf", "--max-degree", "16"]);
    assert!(out.status.success());
    let text = stdout(&out);
    // Dims 1,0,0,0,0,0,0,0,1,0,0,0,1,0,1,1,1 in degrees 0..16.
    for d in [0, 8, 12, 14, 15, 16] {
        assert_eq!(text.matches(&format!("\nB {d} ")).count(), 1, "degree {d}");
    }
    assert_eq!(text.matches("\nB ").count(), 6);
}

#[test]
fn build_omega_contains_suspended_summand() {
    let out = a1ext(&["build", "omega", "--max-degree", "12"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("B 12 B1S12:1"));
}

#[test]
fn build_bobg() {
    let out = a1ext(&["build", "bobg:1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    // Weight ≤ 4 monomials of the bo-level ring: 1, z1^4, z2^2, z3.
    assert!(text.contains("B 0 1"));
    assert!(text.contains("B 4 z1^4"));
    assert!(text.contains("B 6 z2^2"));
    assert!(text.contains("B 7 z3"));
    assert_eq!(text.matches("\nB ").count(), 4);
}

#[test]
fn unknown_construction_exits_2() {
    let out = a1ext(&["build", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    let out = a1ext(&["build", "bg:x"]);
    assert_eq!(out.status.code(), Some(2));
    // Weight components of HZ carry no splitting.
    let out = a1ext(&["build", "n:hz:2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn weight_component_build() {
    let out = a1ext(&["build", "n:tmf:8", "--max-degree", "16"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("B 8 z1^8"));
    assert!(text.contains("B 12 z2^4"));
    assert!(text.contains("B 14 z3^2"));
    assert!(text.contains("B 15 z4"));
}

#[test]
fn ext_window_violation_reports_minimum() {
    let out = a1ext(&["ext", "tmf", "--stem-max", "32", "--s-max", "16", "--max-degree", "48"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("54"), "minimal admissible bound reported: {err}");
}

#[test]
fn ext_tmf_reproduces_golden() {
    let out = a1ext(&["ext", "tmf", "--stem-max", "32", "--s-max", "16"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), a1ext_core::verify::GOLDEN_TMF_CHART);
}

#[test]
fn ext_suspended_bg1_window() {
    let out = a1ext(&["ext", "bg:1", "--suspend", "12", "--stem-max", "24", "--s-max", "7"]);
    assert!(out.status.success());
    let text = stdout(&out);
    // Towers at stems 12, 16, 20, 24 with bottoms at s = 0, 1, 4, 5.
    for (n, s) in [(12, 0), (16, 1), (20, 4), (24, 5)] {
        assert!(text.contains(&format!("C {n} {s} ")), "missing ({n},{s})");
    }
    assert!(!text.contains("C 16 0 "));
    assert!(!text.contains("C 20 3 "));
}

#[test]
fn deterministic_output() {
    let a = a1ext(&["ext", "bg:2", "--stem-max", "20", "--s-max", "10"]);
    let b = a1ext(&["ext", "bg:2", "--stem-max", "20", "--s-max", "10"]);
    assert_eq!(stdout(&a), stdout(&b));
    let a = a1ext(&["chart", "bg:2", "--format", "svg", "--stem-max", "20", "--s-max", "10"]);
    let b = a1ext(&["chart", "bg:2", "--format", "svg", "--stem-max", "20", "--s-max", "10"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn chart_svg_class_count_matches_chart_file() {
    let chart = a1ext(&["ext", "bg:2", "--stem-max", "16", "--s-max", "8"]);
    let classes = stdout(&chart).lines().filter(|l| l.starts_with("C ")).count();
    let svg = a1ext(&["chart", "bg:2", "--format", "svg", "--stem-max", "16", "--s-max", "8"]);
    assert_eq!(stdout(&svg).matches("<circle").count(), classes);
}

#[test]
fn cell_diagram_of_moore_bg1() {
    let out = a1ext(&["chart", "moore-bg1", "--cells", "--format", "svg"]);
    assert!(out.status.success());
    let svg = stdout(&out);
    assert_eq!(svg.matches("<circle").count(), 6);
    assert_eq!(svg.matches("class=\"sq1\"").count(), 3);
    assert_eq!(svg.matches("class=\"sq2\"").count(), 3);
}

#[test]
fn verify_weights_passes() {
    let out = a1ext(&["verify", "weights", "--max-degree", "24"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("PASS weights.tmf.sq4.blockdiag"));
    assert!(text.contains("PASS weights.tmf.sq1.blockdiag"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_davis_case_flag() {
    let out = a1ext(&["verify", "davis", "--case", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("PASS davis.case-2"));
    assert_eq!(text.matches("PASS davis").count(), 1);
}

#[test]
fn verify_census_fails_on_eta_congruence() {
    // The h1-congruence check asserts stems ≡ 4 mod 8, but the computed
    // chart places eta-supporting towers in stems ≡ 0 mod 8, so the suite
    // reports one FAIL and exits 1.
    let out = a1ext(&["verify", "chart-census"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("PASS census.towers-mod4"));
    assert!(text.contains("FAIL census.eta-mod8"));
    assert!(text.contains("PASS census.vacancies"));
    assert!(text.contains("PASS census.golden"));
}

#[test]
fn verify_unknown_suite_exits_2() {
    let out = a1ext(&["verify", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_flag_writes_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bg1.module");
    let out = a1ext(&["build", "bg:1", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("MODULE v1 bg:1"));
    // No leftover temp file.
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}
