use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn silt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_silt"))
        .args(args)
        .env_remove("SILT_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn algebra_show_dimensions() {
    let o = silt(&["algebra", "show", "--builtin", "hereditary", "--n", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("dimension 4\n"), "{}", stdout(&o));
    let o = silt(&["algebra", "show", "--builtin", "auslander_bass_v", "--n", "1"]);
    assert!(stdout(&o).starts_with("dimension 4\n"));
    let o = silt(&["algebra", "show", "--builtin", "triangular_a2"]);
    assert!(stdout(&o).contains("P1: (1, 1)"));
}

#[test]
fn explore_counts() {
    for (args, want) in [
        (&["--builtin", "hereditary", "--n", "3"][..], "20 silting modules"),
        (&["--builtin", "triangular_a2"][..], "5 silting modules"),
        (&["--builtin", "auslander_bass_v", "--n", "2"][..], "24 silting modules"),
    ] {
        let mut all = vec!["explore"];
        all.extend_from_slice(args);
        let o = silt(&all);
        assert_eq!(o.status.code(), Some(0));
        let text = stdout(&o);
        assert!(text.contains(want), "{text}");
        assert!(text.contains("hasse check: pass"));
        assert!(!text.contains("INCOMPLETE"));
    }
}

#[test]
fn limits_give_incomplete_banner() {
    let o = silt(&["explore", "--builtin", "hereditary", "--n", "3", "--max-nodes", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("INCOMPLETE"));
    let o = silt(&["explore", "--builtin", "hereditary", "--n", "3", "--max-depth", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["complete"], false);
    assert_eq!(v["nodes"].as_array().unwrap().len(), 4);
}

#[test]
fn tors_counts_and_refusal() {
    let o = silt(&["tors", "--builtin", "hereditary", "--n", "2"]);
    assert!(stdout(&o).contains("9 torsion classes"));
    let o = silt(&["tors", "--builtin", "hereditary", "--n", "1"]);
    assert!(stdout(&o).contains("3 torsion classes"));
    let o = silt(&["tors", "--builtin", "bass_v"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("hereditary family"));
    let o = silt(&["tors", "--builtin", "hereditary", "--n", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 9);
    assert_eq!(v["nodes"][0]["kind"], "FacFl");
    assert_eq!(v["nodes"][8]["kind"], "Fac");
    assert!(v["edges"][0].is_array());
}

#[test]
fn verify_commands() {
    let o = silt(&["verify", "hereditary", "--max-n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for n in ["70", "105"] {
        assert!(text.contains(n));
    }
    assert!(text.ends_with("PASS\n"));
    let o = silt(&["verify", "weak-order", "--max-n", "2"]);
    assert!(stdout(&o).contains("S4"));
    assert_eq!(o.status.code(), Some(0));
    let o = silt(&["verify", "reduction", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn input_errors_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        r#"{"quiver": {"vertices": ["1", "2"], "arrows": [["a", "1", "2"]]},
            "relations": [[[1, ["a", "b"]]]], "nilpotency_bound": 2}"#,
    )
    .unwrap();
    let o = silt(&["algebra", "show", "--file", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("relation 0"), "{}", stderr(&o));

    fs::write(&bad, "{\"quiver\": {\n  \"vertices\": [}").unwrap();
    let o = silt(&["algebra", "show", "--file", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));

    assert_eq!(silt(&["explore"]).status.code(), Some(3));
    assert_eq!(silt(&["explore", "--builtin", "hereditary"]).status.code(), Some(3));
    assert_eq!(silt(&["explore", "--builtin", "nope"]).status.code(), Some(3));
    assert_eq!(silt(&["explore", "--builtin", "bass_v", "--prime", "9"]).status.code(), Some(3));
    assert_eq!(silt(&["--help"]).status.code(), Some(0));
}

#[test]
fn custom_file_matches_builtin() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("a2.json");
    fs::write(
        &file,
        r#"{"field": {"p": 7}, "quiver": {"vertices": [1, 2], "arrows": [["a", 1, 2]]},
            "relations": [], "nilpotency_bound": 2}"#,
    )
    .unwrap();
    let o = silt(&["explore", "--builtin", "custom", "--file", file.to_str().unwrap(), "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["algebra"]["field"]["p"], 7);
    assert_eq!(v["nodes"].as_array().unwrap().len(), 5);
    let o = silt(&["explore", "--file", file.to_str().unwrap(), "--prime", "11", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["algebra"]["field"]["p"], 11);
}

fn cached_run(cache: &Path, out: &Path, env: bool) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_silt"));
    cmd.args(["explore", "--builtin", "hereditary", "--n", "3", "--format", "json", "--out"])
        .arg(out);
    if env {
        cmd.env("SILT_CACHE", cache).args(["--cache", "/nonexistent/ignored"]);
    } else {
        cmd.env_remove("SILT_CACHE").arg("--cache").arg(cache);
    }
    cmd.output().unwrap()
}

#[test]
fn cache_hits_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    assert!(cached_run(&cache, &a, false).status.success());
    let entries: Vec<_> = fs::read_dir(&cache).unwrap().collect();
    assert_eq!(entries.len(), 1);
    let o = cached_run(&cache, &b, true);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("20 silting modules"));
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(fs::read_dir(&cache).unwrap().count(), 1);
}

#[test]
fn dot_output() {
    let o = silt(&["explore", "--builtin", "triangular_a2", "--format", "dot"]);
    let text = stdout(&o);
    assert!(text.starts_with("digraph exchange {"));
    assert_eq!(text.matches(" -> ").count(), 5);
    let o = silt(&["tors", "--builtin", "hereditary", "--n", "2", "--format", "dot"]);
    assert_eq!(stdout(&o).matches(" -> ").count(), 11);
}

#[test]
fn workers_do_not_change_output() {
    let run = |w: &str| {
        stdout(&silt(&["explore", "--builtin", "auslander_bass_v", "--n", "2", "--format", "json", "--workers", w]))
    };
    assert_eq!(run("1"), run("8"));
}
