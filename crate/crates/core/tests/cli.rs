use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use behavior_cones::io;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_behavior-cones"));
    c.env_remove("BEHAVIOR_CONES_SEED");
    c
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn hankel_of_leslie_trajectory() {
    let traj = data("leslie_trajectory.csv");
    let o = run(&["hankel", traj.to_str().unwrap(), "-L", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let m = io::parse_matrix_json(&stdout(&o)).unwrap();
    assert_eq!(
        m.to_rows(),
        vec![
            vec![0.0, 0.0, 1.0, 1.0],
            vec![0.0, 1.0, 1.0, 0.0],
            vec![1.0, 1.0, 0.0, 0.0],
            vec![1.0, 0.0, 0.0, 1.0],
        ]
    );
}

#[test]
fn hankel_small_and_out_of_range() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "w.csv", "y1\n1\n2\n3\n");
    let o = run(&["hankel", &f, "-L", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let m = io::parse_matrix_json(&stdout(&o)).unwrap();
    assert_eq!(m.to_rows(), vec![vec![1.0, 2.0], vec![2.0, 3.0]]);

    assert_eq!(run(&["hankel", &f, "-L", "4"]).status.code(), Some(2));
    let bad = write(&dir, "bad.csv", "y1\n1\nfoo\n");
    let o = run(&["hankel", &bad, "-L", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn hankel_output_is_byte_deterministic() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "w.csv", "u1,y1\n0.1,0.7\n0.2,0.30000000000000004\n1e-300,5\n");
    let a = run(&["hankel", &f, "-L", "2"]);
    let b = run(&["hankel", &f, "-L", "2"]);
    assert_eq!(a.stdout, b.stdout);
    let m = io::parse_matrix_json(&stdout(&a)).unwrap();
    assert_eq!(m[(3, 0)], 0.30000000000000004);
}

#[test]
fn pe_check_exit_codes() {
    let traj = data("leslie_trajectory.csv");
    let state = data("leslie_state.csv");
    let (t, s) = (traj.to_str().unwrap(), state.to_str().unwrap());
    let common = ["-m", "0", "-n", "4", "-L", "4"];

    let mut args = vec!["pe-check", t, "--state", s, "--class", "positiveLinear"];
    args.extend(common);
    let o = run(&args);
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(json["verdict"], "REPRESENTATIVE");
    assert_eq!(json["nnLower"], 4);
    assert_eq!(json["nnUpper"], 4);
    assert_eq!(json["monomialFound"], true);
    assert_eq!(json["representation"]["hull"], "ccone");

    let mut args = vec!["pe-check", t, "--class", "linear"];
    args.extend(common);
    let o = run(&args);
    assert_eq!(o.status.code(), Some(3));
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(json["ordinaryRank"], 3);
    assert_eq!(json["requiredRank"], 4);
    assert!(json.get("representation").is_none());

    let mut args = vec!["pe-check", t, "--class", "positiveLinear"];
    args.extend(common);
    assert_eq!(run(&args).status.code(), Some(2));
}

#[test]
fn pe_check_undecided_when_bounds_do_not_meet() {
    // H_4 of the periodic signal (2,3,1,0) has rank 3 but no fooling set or
    // factorization settles its non-negative rank at 3.
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "w.csv", "y1\n2\n3\n1\n0\n2\n3\n1\n0\n");
    let s = write(&dir, "x.csv", "x1,x2,x3\n1,0,0\n0,1,0\n0,0,1\n1,0,0\n0,1,0\n0,0,1\n1,0,0\n0,1,0\n");
    let o =
        run(&["pe-check", &t, "--state", &s, "--class", "positive-linear", "-m", "0", "-n", "3", "-L", "4"]);
    assert_eq!(o.status.code(), Some(4));
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(json["verdict"], "UNDECIDED");
    assert_eq!(json["nnLower"], 3);
    assert_eq!(json["nnUpper"], 4);
}

#[test]
fn member_exit_codes() {
    let dir = TempDir::new().unwrap();
    let cone = data("leslie_cone.json");
    let cone = cone.to_str().unwrap();
    let gen = write(&dir, "g.csv", "y1\n0\n0\n1\n1\n");
    let o = run(&["member", cone, &gen]);
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(json["feasible"], true);

    let neg = write(&dir, "n.csv", "y1\n0\n0\n-1\n-1\n");
    assert_eq!(run(&["member", cone, &neg]).status.code(), Some(3));

    // 0.5*g1 + 2*g2 + 0.25*g4
    let mix = write(&dir, "m.csv", "y1\n0.25\n2\n2.5\n0.75\n");
    assert_eq!(run(&["member", cone, &mix]).status.code(), Some(0));

    let short = write(&dir, "s.csv", "y1\n0\n");
    assert_eq!(run(&["member", cone, &short]).status.code(), Some(2));
}

#[test]
fn simulate_reproduces_leslie_output() {
    let dir = TempDir::new().unwrap();
    let model = data("leslie_model.json");
    let states = dir.path().join("x.csv");
    let o = run(&[
        "simulate",
        model.to_str().unwrap(),
        "--x0",
        "1,0,0,0",
        "-T",
        "7",
        "--state-output",
        states.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let w = io::parse_trajectory_csv(&stdout(&o)).unwrap();
    assert_eq!(w.outputs().column(0), vec![0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 1.0]);
    let x = io::parse_state_csv(&std::fs::read_to_string(states).unwrap()).unwrap();
    assert_eq!(x.len(), 7);
    assert_eq!(x.state(3), &[0.0, 0.0, 0.0, 1.0]);
}

#[test]
fn simulate_zero_and_affine_models() {
    let dir = TempDir::new().unwrap();
    let zero =
        write(&dir, "z.json", r#"{"n":2,"m":1,"p":1,"A":[[0,0],[0,0]],"B":[[0],[0]],"C":[[0,0]],"D":[[0]]}"#);
    let u = write(&dir, "u.csv", "u1\n1\n2\n3\n");
    let o = run(&["simulate", &zero, "--x0", "0,0", "-T", "3", "--input", &u]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "u1,y1\n1,0\n2,0\n3,0\n");

    let aff = write(
        &dir,
        "a.json",
        r#"{"n":1,"m":0,"p":1,"affine":true,"A":[[0]],"B":[],"C":[[1]],"D":[],"E":[1],"F":[0]}"#,
    );
    let o = run(&["simulate", &aff, "--x0", "0", "-T", "3"]);
    assert_eq!(stdout(&o), "y1\n0\n1\n1\n");

    assert_eq!(run(&["simulate", &aff, "--x0", "0,1", "-T", "3"]).status.code(), Some(2));
}

#[test]
fn mpum_writes_behavior_json() {
    let traj = data("leslie_trajectory.csv");
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("b.json");
    let o = run(&[
        "mpum",
        traj.to_str().unwrap(),
        "-L",
        "4",
        "--class",
        "positiveLinear",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let b = io::parse_behavior_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let expected =
        io::parse_behavior_json(&std::fs::read_to_string(data("leslie_cone.json")).unwrap()).unwrap();
    assert_eq!(b, expected);
}

#[test]
fn leslie_demo_runs() {
    let o = run(&["leslie-demo"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("rank = 3"));
    assert!(text.contains("nonnegative rank in [4, 4]"));
    assert!(!text.contains("MISMATCH"));

    let o = run(&["leslie-demo", "--order", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("MISMATCH"));

    let o = run(&["leslie-demo", "-L", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("H_5"));
}

#[test]
fn seed_from_environment_is_accepted() {
    let o = bin().arg("leslie-demo").env("BEHAVIOR_CONES_SEED", "7").output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = bin().arg("leslie-demo").env("BEHAVIOR_CONES_SEED", "seven").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}
