use std::process::{Command, Output};

fn run(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_silting-lab"));
    c.current_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/../.."));
    c.env_remove("SILTING_TRUNC").env_remove("SILTING_DELTA");
    for (k, v) in env {
        c.env(k, v);
    }
    c.args(args).output().unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn envelope_is_versioned() {
    let o = run(&["homology", "-i", "data/a2_m1.quiver", "--window", "-2..0"], &[]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["result"]["dims"]["0"], 3);
    assert_eq!(v["stable"], true);
}

#[test]
fn env_overrides_and_flag_precedence() {
    let args = ["hom", "-i", "data/a2_m1.quiver", "--x", "1@0", "--y", "2@0"];
    let v = json(&run(&args, &[("SILTING_TRUNC", "5"), ("SILTING_DELTA", "3")]));
    assert_eq!(v["config"]["trunc"], 5);
    assert_eq!(v["result"]["recheck_trunc"], 8);
    let mut with_flag = args.to_vec();
    with_flag.extend(["--trunc", "4"]);
    let v = json(&run(&with_flag, &[("SILTING_TRUNC", "5")]));
    assert_eq!(v["config"]["trunc"], 4);
}

#[test]
fn exit_codes() {
    // a failed claim
    let o = run(&["periodicity", "-i", "data/one_loop_m3.quiver", "--kind", "dpp", "--vertex", "x"], &[]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["pass"], false);
    // missing input and bad configuration
    assert_eq!(run(&["hom", "--x", "1", "--y", "1"], &[]).status.code(), Some(2));
    assert_eq!(run(&["homology", "-i", "data/a2_m1.quiver", "--window", "0..1"], &[]).status.code(), Some(2));
    assert_eq!(run(&["homology", "-i", "data/a2_m1.quiver", "--trunc", "0"], &[]).status.code(), Some(2));
    assert_eq!(run(&["scenario", "no-such"], &[]).status.code(), Some(2));
}

#[test]
fn empty_scenario_list_prints_usage() {
    let o = run(&["scenario"], &[]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("usage:"));
    assert!(text.contains("a2-complements"));
}

#[test]
fn scenarios_pass_and_are_byte_stable() {
    let a = run(&["scenario", "a2-complements", "special-loop", "--sequential"], &[]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stdout));
    let b = run(&["scenario", "a2-complements", "special-loop"], &[]);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    let first = &v["assertions"][0];
    for key in ["name", "computed", "expected", "anchor", "pass"] {
        assert!(first.get(key).is_some(), "{key}");
    }
}

#[test]
fn text_format() {
    let o = run(&["scenario", "two-loops", "--format", "text"], &[]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("PASS two-loops: dim H^-2: computed 3, expected 3"));
    assert!(text.trim_end().ends_with("result: PASS"));
}

#[test]
fn module_files_round_trip() {
    let o = run(&["mutate", "-i", "data/a2_m1.quiver", "--vertex", "2", "--steps", "1"], &[]);
    let v = json(&o);
    let module = &v["result"]["states"][1]["module"];
    let path = std::env::temp_dir().join("silting_lab_ra1.json");
    std::fs::write(&path, module.to_string()).unwrap();
    let p = path.to_str().unwrap();
    let o = run(&["support", "-i", "data/a2_m1.quiver", "--x", p], &[]);
    assert_eq!(json(&o)["result"]["support"], serde_json::json!([-1, 0]));
    let o = run(&["k0", "-i", "data/a2_m1.quiver", "1@0", p], &[]);
    assert_eq!(json(&o)["result"]["determinant"], -1);
}
