use std::process::{Command, Output};

use serde_json::Value;

fn bcfks(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bcfks"))
        .args(args)
        .output()
        .expect("run bcfks")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect()
}

#[test]
fn model_prints_action_matrix() {
    let out = bcfks(&["model", "--n", "3", "--k", "3", "--degrees", "1,1,2,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let m: Vec<Vec<i64>> = serde_json::from_value(v["action_matrix"]["matrix"].clone()).unwrap();
    assert_eq!(m, vec![vec![1, 1, 2, 1], vec![0, 1, 2, 1], vec![0, 0, 1, 1], vec![0, 0, 0, 1]]);
    let inv: Vec<Vec<i64>> = serde_json::from_value(v["action_matrix"]["inverse"].clone()).unwrap();
    assert_eq!(inv[1], vec![0, 1, -2, 1]);
    assert_eq!(strings(&v["weight_variables"]), ["a", "a_1_1", "a_3_1", "a_3_2"]);
    assert_eq!(strings(&v["complement"]), ["h_{3,3}"]);
}

#[test]
fn model_single_hyperplane() {
    let v = json(&bcfks(&["model", "--n", "2", "--k", "2", "--degrees", "1"]));
    let blocks = v["blocks"].as_array().unwrap();
    assert_eq!(blocks.len(), 1);
    assert_eq!(blocks[0]["kind"], "HB");
    assert_eq!((blocks[0]["r"].as_u64(), blocks[0]["s"].as_u64()), (Some(0), Some(1)));
    assert_eq!(strings(&v["weight_variables"]), ["a"]);
}

#[test]
fn invalid_specs_exit_2() {
    let out = bcfks(&["model", "--n", "2", "--k", "2", "--degrees", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Fano"));
    assert_eq!(bcfks(&["check", "--n", "1", "--k", "2"]).status.code(), Some(2));
    assert_eq!(bcfks(&["model", "--n", "3", "--k", "3", "--degrees", "1,x"]).status.code(), Some(2));
    assert_eq!(bcfks(&["model", "--n", "3", "--k", "3", "--degrees", "0"]).status.code(), Some(2));
}

#[test]
fn superpotential_both_methods_agree() {
    let out = bcfks(&["superpotential", "--n", "3", "--k", "3", "--degrees", "1,1,2,1", "--method", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "agree");
    assert_eq!(v["elimination"], v["closed"]);
}

#[test]
fn superpotential_of_g24_hyperplane() {
    let v = json(&bcfks(&["superpotential", "--n", "2", "--k", "2", "--degrees", "1"]));
    assert_eq!(v["terms"], 5);
    assert_eq!(strings(&v["polynomial"]["variables"]), ["a_1_1", "a_1_2", "a_2_1"]);
    let closed = json(&bcfks(&["superpotential", "--n", "2", "--k", "2", "--degrees", "1", "--method", "closed"]));
    assert_eq!(closed["polynomial"], v["polynomial"]);
}

#[test]
fn text_mode_shows_factors() {
    let out = bcfks(&["superpotential", "--n", "3", "--k", "3", "--degrees", "1,1,1,2", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let first = text.lines().find(|l| l.starts_with("f = ")).unwrap();
    assert_eq!(first.matches(") * (").count(), 2, "{first}");
    assert!(first.ends_with(")^2"), "{first}");
}

#[test]
fn iseries_quadric_and_hyperplanes() {
    let v = json(&bcfks(&["iseries", "--n", "3", "--k", "3", "--degrees", "2,1,1,1", "--order", "8"]));
    assert_eq!(
        strings(&v["coefficients"]),
        [
            "1",
            "12",
            "756",
            "78960",
            "10451700",
            "1587790512",
            "263964176784",
            "46763681545152",
            "8685492699286260"
        ]
    );
}

#[test]
fn check_matches() {
    let out = bcfks(&["check", "--n", "3", "--k", "3", "--degrees", "1,1,2,1", "--order", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "match");
    assert_eq!(v["order"], 3);
    assert_eq!(strings(&v["lhs"]), ["1", "12", "756", "78960"]);
    assert_eq!(v["lhs"], v["rhs"]);
}

#[test]
fn grassmannian_without_hypersurfaces() {
    let v = json(&bcfks(&["check", "--n", "2", "--k", "2", "--degrees", "", "--order", "8"]));
    assert_eq!(v["verdict"], "match");
    // G(2,4) is the quadric fourfold: Σ (2d)!(4d)!/(d!)^6 t^{4d}.
    assert_eq!(strings(&v["lhs"]), ["1", "0", "0", "0", "48", "0", "0", "0", "15120"]);
}

#[test]
fn selftest_small_sweep() {
    let out = bcfks(&["selftest", "--max-n", "3", "--max-k", "3", "--max-l", "2", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["models"], 45);
    assert!(v["failures"].as_array().unwrap().is_empty());
}

#[test]
fn output_independent_of_workers() {
    for args in [
        ["superpotential", "--n", "3", "--k", "3", "--degrees", "1,1,2,1"],
        ["check", "--n", "3", "--k", "3", "--degrees", "1,2,1,1"],
    ] {
        let outputs: Vec<Vec<u8>> = ["1", "4", "8"]
            .iter()
            .map(|w| {
                let mut a = args.to_vec();
                a.extend(["--workers", w]);
                bcfks(&a).stdout
            })
            .collect();
        assert!(!outputs[0].is_empty());
        assert!(outputs.iter().all(|o| o == &outputs[0]));
    }
}
