use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_intensity"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn polar_distortion_is_exact() {
    let p = data("polar_m2.prof");
    assert_eq!(
        stdout_ok(&["distortion", "--profile", &p, "--alt", "a1"]),
        "7/5\n"
    );
    assert_eq!(stdout_ok(&["distort", "--profile", &p]), "a1: 7/5\na2: 3\n");
    assert_eq!(
        stdout_ok(&[
            "distortion",
            "--profile",
            &p,
            "--alt",
            "a1",
            "--decimal",
            "3"
        ]),
        "1.400\n"
    );
}

#[test]
fn overrides_replace_file_settings() {
    let p = data("polar_m2.prof");
    let v = stdout_ok(&[
        "distortion",
        "--profile",
        &p,
        "--mode",
        "voluntary",
        "--alpha",
        "0.5",
    ]);
    let m = stdout_ok(&["distortion", "--profile", &p]);
    assert_ne!(v, m);
    assert_eq!(
        stdout_ok(&["distortion", "--profile", &data("voluntary_m2.prof")]),
        "x: 3\ny: 3\n"
    );
}

#[test]
fn optima_and_poii() {
    let p = data("polar_m2.prof");
    assert_eq!(
        stdout_ok(&["opt", "aware", "--profile", &p]),
        "opt: a1\ndistortion: 7/5\n"
    );
    assert!(stdout_ok(&["opt", "oblivious", "--profile", &p]).contains("assignments: 4\n"));
    assert!(stdout_ok(&["poii", "--profile", &p]).ends_with("poii: 1\n"));
    assert_eq!(
        run(&["opt", "oblivious", "--profile", &p, "--budget", "3"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn rules() {
    let p = data("polar_m2.prof");
    assert_eq!(
        stdout_ok(&["rule", "tal", "--profile", &p]),
        "winner: a1\ndistortion: 7/5\n"
    );
    assert!(stdout_ok(&["rule", "general", "--profile", &p]).starts_with("winner: a1\n"));
    assert!(stdout_ok(&["rule", "psm", "--k", "1", "--profile", &p]).starts_with("winner: a1\n"));
    assert!(
        stdout_ok(&["rule", "robust", "--ell", "1", "--profile", &p]).starts_with("winner: a1\n")
    );
}

#[test]
fn game_commands() {
    assert_eq!(
        stdout_ok(&["game", "verify", "--k", "3", "--alpha", "1/2"]),
        "t_3: 97/113\nequilibrium: OK\n"
    );
    assert_eq!(
        stdout_ok(&["game", "matrix", "--k", "2", "--alpha", "1/2"]),
        "-1 1 1\n2 -1 1\n4 2 -1\n"
    );
    let rec = stdout_ok(&["game", "recurrence", "--k", "2", "--alpha", "0.5"]);
    assert!(rec.contains("t: 1/5 15/23\n"), "{rec}");
}

#[test]
fn instances_verify_and_dump() {
    let v = stdout_ok(&[
        "instance", "verify", "--kind", "polar", "--m", "4", "--alpha", "1/2",
    ]);
    assert!(
        v.contains("certificate: OK") && !v.contains("FAILED"),
        "{v}"
    );
    let g = stdout_ok(&[
        "instance",
        "generate",
        "--kind",
        "general-intense",
        "--m",
        "4",
        "--k",
        "1",
        "--alpha",
        "1/2",
    ]);
    assert!(g.contains("expected_ratio: 2\n"), "{g}");

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().display().to_string();
    stdout_ok(&[
        "instance", "dump", "--kind", "polar", "--m", "2", "--alpha", "1/2", "--out", &out,
    ]);
    let prof = dir.path().join("polar-m2.prof");
    assert_eq!(
        std::fs::read_to_string(dir.path().join("polar-m2.csv")).unwrap(),
        "a1,a2\n1/5,2/5\n6/5,3/5\n"
    );
    let prof = prof.display().to_string();
    assert_eq!(
        stdout_ok(&["distortion", "--profile", &prof, "--alt", "a1"]),
        "7/5\n"
    );
}

#[test]
fn sweeps_are_stable_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lb.csv");
    let path_s = path.display().to_string();
    stdout_ok(&[
        "sweep", "bounds", "--m", "10", "--alphas", "0:1:0.01", "--out", &path_s,
    ]);
    let first = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = first.lines().collect();
    assert_eq!(lines[0], "alpha,lemma_left,lemma_right,max");
    assert_eq!(lines.len(), 102);
    assert_eq!(lines[1], "0,3,1,3");
    assert_eq!(lines[101], "1,1,3,3");
    stdout_ok(&[
        "sweep", "bounds", "--m", "10", "--alphas", "0:1:0.01", "--out", &path_s,
    ]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), first);

    let up = stdout_ok(&["sweep", "upper", "--alphas", "1/2", "--ell", "0,1"]);
    assert_eq!(up, "alpha,ell,t_ell,bound\n1/2,0,-1,5/2\n1/2,1,1/5,5/2\n");
    let line = stdout_ok(&["sweep", "line", "--m", "2,4", "--alphas", "1/2"]);
    assert_eq!(
        line,
        "alpha,m,two_alternative,general\n1/2,2,2,7/5\n1/2,4,2,13/7\n"
    );
    let conj = stdout_ok(&["conjecture", "--total", "20", "--alphas", "1/2"]);
    assert!(
        conj.starts_with("alpha,max_min_distortion,n1,n2,n3,n4,conjectured_bound\n1/2,2,"),
        "{conj}"
    );
}

#[test]
fn exit_codes() {
    let p = data("polar_m2.prof");
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(
        run(&["rule", "psm", "--profile", &p]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["rule", "robust", "--profile", &p]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["distortion", "--profile", &p, "--alpha", "x/y"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["instance", "verify", "--kind", "nonsense", "--m", "2", "--alpha", "1/2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["distortion", "--profile", "/nonexistent.prof"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["distortion", "--profile", &p, "--alt", "zz"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["game", "verify", "--k", "2", "--alpha", "3/2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["sweep", "line", "--alphas", "0"]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["instance", "generate", "--kind", "polar", "--m", "4", "--alpha", "1"])
            .status
            .code(),
        Some(1)
    );
}
