use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gefkit::io::{
    allocation_to_json, instance_to_json, parse_allocation, parse_instance, parse_report,
};
use gefkit::{fixtures, validate_witness, FairnessConcept};
use tempfile::TempDir;

fn gefkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gefkit"))
        .args(args)
        .env_remove("GEFKIT_BOUND")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

struct Files {
    dir: TempDir,
}

impl Files {
    fn new() -> Self {
        Files {
            dir: TempDir::new().unwrap(),
        }
    }

    fn put(&self, name: &str, text: &str) -> String {
        let path = self.dir.path().join(name);
        fs::write(&path, text).unwrap();
        path.to_str().unwrap().to_string()
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn single_peaked(&self) -> (String, String) {
        (
            self.put(
                "inst.json",
                &instance_to_json(&fixtures::single_peaked_four_agents()),
            ),
            self.put(
                "alloc.json",
                &allocation_to_json(&fixtures::single_peaked_allocation()),
            ),
        )
    }
}

fn read(path: &Path) -> String {
    fs::read_to_string(path).unwrap()
}

#[test]
fn check_reports_gef1_violation_with_valid_witness() {
    let files = Files::new();
    let (inst, alloc) = files.single_peaked();
    let out = gefkit(&[
        "check",
        "--instance",
        &inst,
        "--allocation",
        &alloc,
        "--concept",
        "gef1",
    ]);
    assert_eq!(code(&out), 1);
    let report = parse_report(&stdout(&out)).unwrap();
    assert_eq!(report.concept, FairnessConcept::Gef1);
    assert!(!report.holds);
    let witness = report.witness.unwrap();
    validate_witness(
        &fixtures::single_peaked_four_agents(),
        &fixtures::single_peaked_allocation(),
        &witness,
    )
    .unwrap();
}

#[test]
fn check_passes_ef_and_exhaustive_agrees() {
    let files = Files::new();
    let (inst, alloc) = files.single_peaked();
    let out = gefkit(&[
        "check",
        "--instance",
        &inst,
        "--allocation",
        &alloc,
        "--concept",
        "EF",
    ]);
    assert_eq!(code(&out), 0);
    assert!(parse_report(&stdout(&out)).unwrap().holds);
    let out = gefkit(&[
        "check",
        "--instance",
        &inst,
        "--allocation",
        &alloc,
        "--concept",
        "gef1",
        "--exhaustive",
    ]);
    assert_eq!(code(&out), 1);
}

#[test]
fn pretty_output_names_groups() {
    let files = Files::new();
    let (inst, alloc) = files.single_peaked();
    let out = gefkit(&[
        "--pretty",
        "check",
        "--instance",
        &inst,
        "--allocation",
        &alloc,
        "--concept",
        "gef1",
    ]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.starts_with("GEF1: violated"));
    assert!(text.contains("S = {a1, a2}"));
}

#[test]
fn egal_sequential_rejects_non_identical() {
    let files = Files::new();
    let (inst, _) = files.single_peaked();
    let out = gefkit(&[
        "solve",
        "--instance",
        &inst,
        "--algorithm",
        "egal-sequential",
    ]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("identical"));
}

#[test]
fn generate_is_deterministic() {
    let a = gefkit(&["generate", "--kind", "ternary", "--seed", "7"]);
    let b = gefkit(&["generate", "--kind", "ternary", "--seed", "7"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let files = Files::new();
    let path = files.path("gen.json");
    let c = gefkit(&[
        "generate",
        "--kind",
        "ternary",
        "--seed",
        "7",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&c), 0);
    assert_eq!(read(&path).as_bytes(), a.stdout.as_slice());
    assert!(parse_instance(&read(&path)).unwrap().is_ternary_symmetric());
}

#[test]
fn generate_rejects_bad_range() {
    let out = gefkit(&["generate", "--kind", "additive", "--range", "3:-3"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn solve_then_check_round_trip() {
    let files = Files::new();
    let (inst, _) = files.single_peaked();
    let solved = files.path("solved.json");
    let out = gefkit(&[
        "solve",
        "--instance",
        &inst,
        "--algorithm",
        "ternary-flow",
        "--output",
        solved.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), r#"{"utilities":["2","2","2","2"]}"#);
    parse_allocation(&read(&solved)).unwrap();
    let out = gefkit(&[
        "check",
        "--instance",
        &inst,
        "--allocation",
        solved.to_str().unwrap(),
        "--concept",
        "gef1",
    ]);
    assert_eq!(code(&out), 0);

    let identical = files.put(
        "ident.json",
        &instance_to_json(
            &gefkit::Instance::additive_from_ints(&[&[3, -1, 2, -2], &[3, -1, 2, -2]]).unwrap(),
        ),
    );
    let solved = files.path("egal.json");
    let out = gefkit(&[
        "solve",
        "--instance",
        &identical,
        "--algorithm",
        "egal-sequential",
        "--output",
        solved.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    for concept in ["efx", "gef1"] {
        let out = gefkit(&[
            "check",
            "--instance",
            &identical,
            "--allocation",
            solved.to_str().unwrap(),
            "--concept",
            concept,
        ]);
        assert_eq!(code(&out), 0, "{concept}");
    }
}

#[test]
fn trace_goes_to_stderr() {
    let files = Files::new();
    let (inst, _) = files.single_peaked();
    let out = gefkit(&[
        "solve",
        "--instance",
        &inst,
        "--algorithm",
        "ternary-flow",
        "--trace",
    ]);
    assert_eq!(code(&out), 0);
    let events: Vec<serde_json::Value> = String::from_utf8_lossy(&out.stderr)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(events.iter().filter(|e| e["event"] == "augment").count(), 8);
    assert_eq!(events.iter().filter(|e| e["event"] == "assign").count(), 8);
}

#[test]
fn bound_exceeded_exits_3() {
    let files = Files::new();
    let (inst, alloc) = files.single_peaked();
    let out = gefkit(&[
        "--bound",
        "100",
        "check",
        "--instance",
        &inst,
        "--allocation",
        &alloc,
        "--concept",
        "po",
    ]);
    assert_eq!(code(&out), 3);
    let out = Command::new(env!("CARGO_BIN_EXE_gefkit"))
        .args([
            "check",
            "--instance",
            &inst,
            "--allocation",
            &alloc,
            "--concept",
            "po",
        ])
        .env("GEFKIT_BOUND", "100")
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
}

#[test]
fn parse_errors_exit_2() {
    let files = Files::new();
    let (inst, _) = files.single_peaked();
    let broken = files.put("broken.json", "{\"bundles\": [[0]");
    let out = gefkit(&[
        "check",
        "--instance",
        &inst,
        "--allocation",
        &broken,
        "--concept",
        "ef",
    ]);
    assert_eq!(code(&out), 2);
    let out = gefkit(&[
        "check",
        "--instance",
        &inst,
        "--allocation",
        "/nonexistent/file.json",
        "--concept",
        "ef",
    ]);
    assert_eq!(code(&out), 2);
    let out = gefkit(&["check", "--instance", &inst, "--concept", "ef"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn reduce_writes_instance_allocation_and_label() {
    let files = Files::new();
    let input = files.put(
        "x.json",
        r#"["26/100", "26/100", "48/100", "3/10", "3/10", "4/10"]"#,
    );
    let dir = files.path("out");
    let out = gefkit(&[
        "reduce",
        "--variant",
        "goods",
        "--input",
        &input,
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let label: serde_json::Value = serde_json::from_str(&read(&dir.join("label.json"))).unwrap();
    assert_eq!(label["answer"], "yes");
    assert_eq!(label["oracle"], "bruteforce-3partition");
    let instance_text = read(&dir.join("instance.json"));
    assert!(instance_text.contains("\"epsilon\": \"1/100\""));
    let inst = parse_instance(&instance_text).unwrap();
    assert_eq!((inst.agents(), inst.items()), (3, 12));

    let out = gefkit(&[
        "check",
        "--instance",
        dir.join("instance.json").to_str().unwrap(),
        "--allocation",
        dir.join("allocation.json").to_str().unwrap(),
        "--concept",
        "gef1",
    ]);
    assert_eq!(code(&out), 1);
    let report = parse_report(&stdout(&out)).unwrap();
    let w = report.group_witness().unwrap();
    assert_eq!(w.s, vec![0, 1, 2]);
    assert_eq!(w.t, vec![0, 1, 2]);
}

#[test]
fn reduce_rejects_goods_with_one_triple() {
    let files = Files::new();
    let input = files.put("x.json", r#"{"values": ["3/10", "3/10", "4/10"]}"#);
    let dir = files.path("out");
    let out = gefkit(&[
        "reduce",
        "--variant",
        "goods",
        "--input",
        &input,
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn taxonomy_prints_every_concept() {
    let files = Files::new();
    let (inst, alloc) = files.single_peaked();
    let out = gefkit(&["taxonomy", "--instance", &inst, "--allocation", &alloc]);
    assert_eq!(code(&out), 0);
    let map: serde_json::Map<String, serde_json::Value> =
        serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(map.len(), FairnessConcept::ALL.len());
    assert_eq!(map["EF"], true);
    assert_eq!(map["GEF1"], false);
}
