use std::process::{Command, Output};

fn iogeom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iogeom")).args(args).env_remove("GEOM_SEED").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut a = args.to_vec();
    a.push("--json");
    serde_json::from_str(&stdout(&iogeom(&a))).expect("valid JSON")
}

#[test]
fn maxima_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pts.txt");
    std::fs::write(&path, "# staircase\n0 3\n1 2\n2 1\n0.5 0.5\n").unwrap();
    let v = json(&["maxima", "--input", path.to_str().unwrap()]);
    assert_eq!(v["maximal"], serde_json::json!([0, 1, 2]));
    let v = json(&["maxima", "--input", path.to_str().unwrap(), "--algorithm", "bruteforce"]);
    assert_eq!(v["h"], 3);
}

#[test]
fn hull_commands() {
    let v = json(&["hull2d", "--family", "hull2d-easy", "--n", "500"]);
    assert_eq!(v["h"], 3);
    let v = json(&["hull3d", "--family", "hull3d-easy", "--n", "600", "--delta", "1", "--cap", "1"]);
    assert_eq!(v["h"], 4);
}

#[test]
fn relation_commands() {
    let v = json(&["segint", "--family", "segint-crossing-grid", "--n", "20", "--limit", "5"]);
    assert_eq!(v["K"], 100);
    assert_eq!(v["pairs"].as_array().unwrap().len(), 5);
    assert_eq!(v["truncated"], true);
    let v = json(&["segint", "--n", "20", "--mode", "count-individual"]);
    assert!(v["red_counts"].as_array().unwrap().iter().all(|c| c == 10));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.txt");
    std::fs::write(&path, "0.5 0.5\n2 2\nR 0 1 0 1\nR 0.25 3 0.25 3\n").unwrap();
    let v = json(&["rangerep", "--input", path.to_str().unwrap()]);
    assert_eq!(v["K"], 3);
    assert_eq!(v["pairs"], serde_json::json!([[0, 0], [0, 1], [1, 1]]));
}

#[test]
fn entropy_and_adversary() {
    let v = json(&["entropy", "--family", "maxima-hard", "--n", "64"]);
    assert_eq!(v["h_output"], 64);
    assert!((v["h_vert"].as_f64().unwrap() - 6.0).abs() < 1e-9);
    let v = json(&["adversary", "--n", "256"]);
    assert_eq!(v["replay_ok"], true);
    assert_eq!(v["D"], 256 * 8);
}

#[test]
fn seed_from_environment() {
    let run = |seed: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_iogeom"));
        c.args(["hull2d", "--family", "uniform-disk", "--n", "300", "--json"]);
        match seed {
            Some(s) => c.env("GEOM_SEED", s),
            None => c.env_remove("GEOM_SEED"),
        };
        stdout(&c.output().unwrap())
    };
    assert_eq!(run(None), run(Some("0")));
    assert_ne!(run(None), run(Some("7")));
}

#[test]
fn bench_is_reproducible_and_fits() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let args = ["bench", "--family", "maxima-easy", "--n", "256,512,1024", "--seeds", "2", "--perms", "3", "--algorithms", "maxima2d", "--csv"];
        let mut args = args.to_vec();
        args.push(p.to_str().unwrap());
        stdout(&iogeom(&args));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert_eq!(text.lines().count(), 1 + 3 * 2 * 3);
    assert!(text.starts_with("family,n,seed,perm,algorithm,comparisons,orient2d,orient3d,dominance,output_size,h_kd,h_vert,f_per_n,wall_ns\n"));
    let fit = iogeom(&["fit", "--csv", a.to_str().unwrap(), "--band-n", "2"]);
    assert!(stdout(&fit).contains("PASS maxima-easy maxima2d"));
    let strict = iogeom(&["fit", "--csv", a.to_str().unwrap(), "--band-n", "1.0001"]);
    assert_eq!(strict.status.code(), Some(1));
}

#[test]
fn bad_names_fail_before_running() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("never.csv");
    for args in [
        vec!["bench", "--family", "no-such-family", "--n", "8,16,32"],
        vec!["bench", "--family", "maxima-easy", "--n", "8,16,32", "--algorithms", "maxima2d,quickhull"],
        vec!["bench", "--family", "maxima-easy", "--n", "8,16,32", "--algorithms", "hull3d"],
    ] {
        let mut args = args;
        args.extend(["--csv", out.to_str().unwrap()]);
        let o = iogeom(&args);
        assert_eq!(o.status.code(), Some(2));
        assert!(!out.exists());
    }
    let o = iogeom(&["fit", "--csv", "/nonexistent/x.csv"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn presets_run_by_name_and_number() {
    assert!(stdout(&iogeom(&["bench", "--preset", "c1-entropy-fixture"])).contains("PASS c1-entropy-fixture"));
    assert!(stdout(&iogeom(&["bench", "--preset", "2"])).contains("PASS c2-f-fixture"));
    assert_eq!(stdout(&iogeom(&["bench", "--list-presets"])).lines().count(), 10);
    assert_eq!(iogeom(&["bench", "--preset", "c99"]).status.code(), Some(2));
}
