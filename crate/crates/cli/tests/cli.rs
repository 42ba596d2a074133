use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kodual")).args(args).current_dir(root()).output().unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(run(args).stdout).unwrap()
}

fn stderr(args: &[&str]) -> String {
    String::from_utf8(run(args).stderr).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&a)).unwrap()
}

#[test]
fn validate_exit_codes() {
    assert_eq!(code(&["validate", "fixtures/sing.txt"]), 0);
    assert_eq!(code(&["validate", "fixtures/sing.json"]), 0);
    assert_eq!(code(&["validate", "fixtures/missing-principal.txt"]), 1);
    assert!(stderr(&["validate", "fixtures/missing-principal.txt"]).contains("[S3K]"));
    assert_eq!(code(&["validate", "fixtures/malformed.json"]), 2);
    assert!(stderr(&["validate", "fixtures/malformed.json"]).contains("line 5"));
    assert_eq!(code(&["validate", "fixtures/no-such-file.txt"]), 2);
}

#[test]
fn json_errors_go_to_stderr() {
    let out = run(&["validate", "fixtures/missing-principal.txt", "--format", "json"]);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(v["error"], "invalid");
    assert_eq!(v["diagnostics"][0]["code"], "S3K");
}

#[test]
fn convert_examples() {
    let out = run(&["convert", "fixtures/m3.txt", "--to", "kospace"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("quadruple (a, b, c, b)"));
    assert_eq!(code(&["convert", "fixtures/sing.txt", "--to", "bidcpo", "--roundtrip"]), 0);
    assert_eq!(code(&["convert", "fixtures/empty.txt", "--to", "bidcpo", "--roundtrip"]), 0);
    assert_eq!(code(&["convert", "fixtures/dia.txt", "--to", "kospace", "--roundtrip"]), 0);
    assert_eq!(code(&["convert", "fixtures/sing.txt", "--to", "nonsense"]), 2);
    // forgetting the families loses information
    assert_eq!(code(&["convert", "fixtures/dia.txt", "--to", "poset", "--roundtrip"]), 1);
}

#[test]
fn convert_output_reloads() {
    let v = json(&["convert", "fixtures/dia.txt", "--to", "kospace"]);
    assert_eq!(v["kind"], "kospace");
    let back = kodual::io::load(&v.to_string()).unwrap();
    assert_eq!(back.kind(), "kospace");
}

#[test]
fn dualize_is_an_involution() {
    let canonical = stdout(&["convert", "fixtures/sing.txt", "--to", "kospace"]);
    let once = stdout(&["dualize", "degroot", "fixtures/sing.txt"]);
    let tmp = std::env::temp_dir().join(format!("kodual-dual-{}.txt", std::process::id()));
    std::fs::write(&tmp, &once).unwrap();
    let twice = stdout(&["dualize", "degroot", tmp.to_str().unwrap()]);
    std::fs::remove_file(&tmp).unwrap();
    assert_eq!(twice, canonical);
    assert_eq!(code(&["dualize", "lawson", "fixtures/sing.txt"]), 1);
    assert_eq!(code(&["dualize", "degroot", "fixtures/dia.txt"]), 1);
}

#[test]
fn concept_lattice_of_m3() {
    let v = json(&["concept-lattice", "fixtures/m3.txt"]);
    assert_eq!(v["concepts"].as_array().unwrap().len(), 5);
    assert_eq!(v["covers"].as_array().unwrap().len(), 6);
    assert_eq!(v["distributive"], false);
}

#[test]
fn checks() {
    assert_eq!(code(&["check", "distributive", "fixtures/m3.txt"]), 1);
    assert_eq!(code(&["check", "distributive", "fixtures/dia.txt"]), 0);
    assert_eq!(code(&["check", "bicontinuous", "fixtures/dia.txt"]), 0);
    assert_eq!(code(&["check", "lc", "fixtures/sing.txt"]), 0);
    assert_eq!(code(&["check", "raney", "fixtures/m3.txt"]), 1);
    assert_eq!(code(&["check", "raney", "fixtures/dia.txt"]), 0);
    assert_eq!(code(&["check", "bifounded", "fixtures/m3.txt"]), 0);
    assert_eq!(code(&["check", "hofmis", "fixtures/dia.txt"]), 0);
    assert_eq!(code(&["check", "hofmis", "fixtures/sing.txt"]), 1);
    assert_eq!(code(&["check", "wilker", "fixtures/updown3.txt"]), 0);
    assert_eq!(code(&["check", "wilker", "fixtures/updown3.txt", "--variant", "2"]), 0);
    assert_eq!(code(&["check", "hofmis", "fixtures/updown3.txt"]), 0);
    // variant 1 needs binary joins on the o-side
    assert_eq!(code(&["check", "wilker", "fixtures/dia.txt"]), 1);
    assert_eq!(code(&["check", "wilker", "fixtures/sing.txt", "--variant", "3"]), 2);
    let v = json(&["check", "distributive", "fixtures/m3.txt"]);
    assert_eq!(v["holds"], false);
    assert_eq!(v["quadruple"].as_array().unwrap().len(), 4);
}

#[test]
fn sweeps() {
    assert_eq!(code(&["sweep", "bifounded", "3x3"]), 0);
    assert_eq!(code(&["sweep", "raney-char", "--bound", "6"]), 0);
    assert_eq!(code(&["sweep", "corr-distributivity", "3x3", "--samples", "20"]), 0);
    assert_eq!(code(&["sweep", "bifounded", "3x3", "--bound", "2x2"]), 2);
    let err = stderr(&["sweep", "no-such-theorem"]);
    assert!(err.contains("bifounded") && err.contains("morphism-preservation"));
    let v = json(&["sweep", "key-lemma", "4"]);
    assert_eq!(v["instances"], 5);
    assert_eq!(v["failed"], 0);
}

#[test]
fn guardrail_and_override() {
    // 6x6 polarities exceed the exhaustive enumeration limit
    assert_eq!(code(&["sweep", "bifounded", "6x6"]), 1);
    assert!(stderr(&["sweep", "bifounded", "6x6"]).contains("guardrail"));
    assert_eq!(code(&["gen", "kospace", "--size", "21"]), 1);
    assert_eq!(code(&["gen", "kospace", "--size", "21", "--override-guardrail"]), 0);
}

#[test]
fn gen_golden() {
    let golden = std::fs::read_to_string(root().join("fixtures/golden/gen-poset-4-seed0.txt")).unwrap();
    assert_eq!(stdout(&["gen", "poset", "--size", "4", "--seed", "0"]), golden);
    let golden = std::fs::read_to_string(root().join("fixtures/golden/gen-poset-4-seed0.json")).unwrap();
    assert_eq!(stdout(&["gen", "poset", "--size", "4", "--seed", "0", "--format", "json"]), golden);
}

#[test]
fn generated_structures_validate() {
    let kinds = ["poset", "kospace", "bicontinuous", "polarity", "bidcpo", "monotone", "weakening", "crelation", "galois"];
    for kind in kinds {
        for seed in ["1", "2", "3"] {
            let out = run(&["gen", kind, "--size", "4", "--seed", seed, "--format", "json"]);
            assert_eq!(out.status.code(), Some(0), "{kind} {seed}: {}", String::from_utf8_lossy(&out.stderr));
            kodual::io::load(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
        }
    }
}

#[test]
fn export_dot_shapes() {
    let count = |dot: &str| (dot.matches("[label=").count(), dot.matches(" -> ").count());
    assert_eq!(count(&stdout(&["export-dot", "fixtures/chain2.txt"])), (2, 1));
    assert_eq!(count(&stdout(&["export-dot", "fixtures/m3.txt"])), (5, 6));
    assert_eq!(count(&stdout(&["export-dot", "fixtures/dia.txt"])), (4, 4));
}
