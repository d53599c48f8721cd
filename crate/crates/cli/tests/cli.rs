use std::path::Path;
use std::process::{Command, Output};

use proptest::prelude::*;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_contactforge"))
        .args(args)
        .env_remove("CONTACTFORGE_MAX_TERMS")
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn claim<'a>(report: &'a Value, anchor: &str) -> &'a Value {
    report["claims"].as_array().unwrap().iter().find(|c| c["anchor"] == anchor).unwrap_or_else(|| panic!("{anchor}"))
}

#[test]
fn verify_contact_p1_writes_constant_and_both_readings() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = run(&["verify-contact", "--p", "1", "--json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = read_json(&path);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["suite"], "verify-contact");
    let c = claim(&r, "contact-identity.constant");
    assert_eq!(c["computed"], "-4");
    assert_eq!(c["verdict"], "confirmed");
    let vol = claim(&r, "contact-identity.theta-volume");
    assert_eq!(vol["verdict"], "reported-only");
    assert_eq!(vol["matches"], true);
    let pow = claim(&r, "contact-identity.theta-power");
    assert_eq!(pow["verdict"], "reported-only");
    assert_eq!(pow["matches"], false);
}

#[test]
fn h_algebra_p2_has_dimension_10() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.json");
    assert_eq!(code(&["h-algebra", "--p", "2", "--json", path.to_str().unwrap()]), 0);
    let r = read_json(&path);
    assert_eq!(claim(&r, "h.dimension")["computed"], 10);
}

#[test]
fn cartan_class_so3() {
    let out = run(&["cartan-class", "--algebra", "so", "--n", "3", "--form", "1,2,3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"rank_route\":3"), "{text}");
}

#[test]
fn cartan_class_accepts_negative_and_fractional_coordinates() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    assert_eq!(code(&["cartan-class", "--algebra", "sl", "--n", "2", "--form", "-1,0,1/2", "--json", path.to_str().unwrap()]), 0);
    let r = read_json(&path);
    assert_eq!(r["parameters"]["form"], serde_json::json!(["-1", "0", "1/2"]));
    assert_eq!(claim(&r, "class.routes")["computed"]["rank_route"], 3);
}

#[test]
fn structure_constant_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("heis.txt");
    std::fs::write(&file, "# 3-dimensional Heisenberg algebra\ndim 3\n1 2 3 1\n").unwrap();
    let json = dir.path().join("r.json");
    let spec = format!("file:{}", file.display());
    assert_eq!(code(&["cartan-class", "--algebra", &spec, "--form", "0,0,1", "--json", json.to_str().unwrap()]), 0);
    assert_eq!(claim(&read_json(&json), "class.routes")["computed"]["rank_route"], 3);
    assert_eq!(code(&["cartan-class", "--algebra", &spec, "--form", "1,0,0", "--json", json.to_str().unwrap()]), 0);
    assert_eq!(claim(&read_json(&json), "class.routes")["computed"]["rank_route"], 1);

    std::fs::write(&file, "dim 3\n2 1 3 1\n").unwrap();
    assert_eq!(code(&["cartan-class", "--algebra", &spec]), 2);
    assert_eq!(code(&["cartan-class", "--algebra", "file:/nonexistent/algebra.txt"]), 2);
}

#[test]
fn identical_arguments_give_identical_json() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 4] = [
        &["invariance", "--p", "2", "--samples", "5", "--seed", "11"],
        &["class-survey", "--algebra", "so", "--n", "4", "--rank", "2", "--samples", "30", "--seed", "3"],
        &["scan", "--form", "t5-lutz", "--points", "300", "--seed", "9", "--tol", "1e-9"],
        &["so3-check", "--samples", "5", "--seed", "2"],
    ];
    for args in cases {
        let a = dir.path().join("a.json");
        let b = dir.path().join("b.json");
        for p in [&a, &b] {
            let mut full: Vec<&str> = args.to_vec();
            full.extend(["--json", p.to_str().unwrap()]);
            assert_eq!(code(&full), 0, "{args:?}");
        }
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap(), "{args:?}");
    }
}

#[test]
fn published_discrepancies_do_not_fail_the_run() {
    // the published SO(3) value and the published p = 2 constant both differ
    assert_eq!(code(&["so3-check", "--samples", "3", "--seed", "1"]), 0);
    assert_eq!(code(&["verify-contact", "--p", "2"]), 0);
    assert_eq!(code(&["reeb", "--p", "2"]), 0);
}

#[test]
fn term_guard_exits_3() {
    assert_eq!(code(&["verify-contact", "--p", "2", "--max-terms", "10"]), 3);
    let out = Command::new(env!("CARGO_BIN_EXE_contactforge"))
        .args(["verify-contact", "--p", "2"])
        .env("CONTACTFORGE_MAX_TERMS", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &[][..],
        &["frobnicate"],
        &["verify-contact"],
        &["verify-contact", "--p", "x"],
        &["verify-contact", "--p", "1", "--bogus"],
        &["verify-contact", "--p", "0"],
        &["structural", "--p", "5"],
        &["cartan-class", "--algebra", "so", "--n", "3", "--form", "1,2"],
        &["cartan-class", "--algebra", "so", "--n", "3", "--form", "1,a,3"],
        &["cartan-class", "--algebra", "su", "--n", "3"],
        &["cartan-class", "--algebra", "sl"],
        &["cartan-class", "--algebra", "heisenberg", "--n", "4"],
        &["scan", "--form", "t4"],
        &["scan", "--form", "t3", "--tol", "0"],
        &["class-survey", "--algebra", "sl", "--n", "3", "--rank", "2", "--samples", "0"],
    ] {
        assert_eq!(code(args), 2, "{args:?}");
    }
}

#[test]
fn all_runs_every_suite() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("all.json");
    assert_eq!(code(&["all", "--p", "1", "--json", path.to_str().unwrap()]), 0);
    let r = read_json(&path);
    let anchors: Vec<&str> = r["claims"].as_array().unwrap().iter().map(|c| c["anchor"].as_str().unwrap()).collect();
    for prefix in ["verify-contact/", "reeb/", "invariance/", "h-algebra/", "u-decomp/", "structural/", "so3-check/", "class-survey/", "scan/"] {
        assert!(anchors.iter().any(|a| a.starts_with(prefix)), "{prefix}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn malformed_arguments_exit_2(
        sub in prop::sample::select(vec!["verify-contact", "reeb", "h-algebra", "u-decomp", "structural", "all"]),
        junk in "[a-z]{1,8}",
        number in "-?[0-9]{0,2}[a-z.]{1,3}",
    ) {
        prop_assert_eq!(code(&[sub, "--p", &number]), 2);
        let flag = format!("--{junk}x");
        prop_assert_eq!(code(&[sub, "--p", "1", &flag]), 2);
        let unknown = format!("{junk}-zz");
        prop_assert_eq!(code(&[&unknown]), 2);
    }

    #[test]
    fn malformed_forms_exit_2(coords in prop::collection::vec("[0-9a-z/]{0,4}", 1..6)) {
        let form = coords.join(",");
        let valid = coords.len() == 3 && coords.iter().all(|c| c.parse::<i64>().is_ok() || {
            let parts: Vec<&str> = c.split('/').collect();
            parts.len() == 2 && parts[0].parse::<i64>().is_ok() && parts[1].parse::<i64>().map_or(false, |d| d != 0)
        });
        prop_assume!(!valid);
        prop_assert_eq!(code(&["cartan-class", "--algebra", "so", "--n", "3", "--form", &form]), 2);
    }
}
