use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use shape_forge_cli::schema::ShapeSet;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shape-forge")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn gen(n: &str, d: &str) -> (TempDir, Output) {
    let dir = TempDir::new().unwrap();
    let out = run(&["gen", "-N", n, "-d", d, "-o", dir.path().to_str().unwrap()]);
    (dir, out)
}

fn dot_counts(dir: &Path) -> (usize, usize, usize) {
    let dot = fs::read_to_string(dir.join("tree.dot")).unwrap();
    let nodes = dot.lines().filter(|l| l.contains("[label=") && !l.contains("->")).count();
    let solid = dot.lines().filter(|l| l.contains("->") && !l.contains("dashed")).count();
    let dashed = dot.lines().filter(|l| l.contains("dashed")).count();
    (nodes, solid, dashed)
}

#[test]
fn poly_examples() {
    let o = run(&["poly", "-N", "3", "-d", "3", "--fermion"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "3q^2 + 10q^3 + 6q^4 + 6q^5 + 7q^6 + 3q^7 + q^9\n[0,0,3,10,6,6,7,3,0,1]\n");
    assert_eq!(stdout(&run(&["poly", "-N", "0", "-d", "4"])).lines().next(), Some("1"));
    assert_eq!(stdout(&run(&["poly", "-N", "2", "-d", "2", "--fermion"])).lines().next(), Some("2q"));
    let boson = stdout(&run(&["poly", "-N", "3", "-d", "3", "--boson"]));
    assert_eq!(boson.lines().nth(1), Some("[1,0,3,7,6,6,10,3]"));
}

#[test]
fn bad_arguments_exit_two() {
    assert_eq!(run(&["poly", "-N", "three", "-d", "3"]).status.code(), Some(2));
    assert_eq!(run(&["poly", "-N", "3"]).status.code(), Some(2));
    assert_eq!(run(&["count", "-N", "3", "-d", "0", "-g", "2"]).status.code(), Some(2));
    assert_eq!(gen("3", "2").1.status.code(), Some(2));
    assert_eq!(gen("0", "3").1.status.code(), Some(2));
}

#[test]
fn count_examples() {
    let o = run(&["count", "-N", "3", "-d", "3", "-g", "9"]);
    assert_eq!(stdout(&o).lines().last(), Some("9 3838"));
    let counts = |args: &[&str]| -> Vec<String> {
        stdout(&run(args)).lines().skip(1).map(|l| l.split(' ').nth(1).unwrap().to_string()).collect()
    };
    assert_eq!(counts(&["count", "-N", "1", "-d", "1", "-g", "3"]), ["1", "1", "1", "1"]);
    assert_eq!(counts(&["count", "-N", "2", "-d", "1", "-g", "3"]), ["0", "1", "1", "2"]);
    let o = run(&["count", "-N", "3", "-d", "2", "-g", "6", "--oracle"]);
    assert!(o.status.success());
    for line in stdout(&o).lines().skip(1) {
        let cols: Vec<&str> = line.split(' ').collect();
        assert_eq!(cols[1], cols[2], "{line}");
    }
}

#[test]
fn gen_three_particles() {
    let (dir, out) = gen("3", "3");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (nodes, solid, dashed) = dot_counts(dir.path());
    assert_eq!((nodes, solid), (36, 35));
    let set = ShapeSet::from_json(&fs::read_to_string(dir.path().join("shapes.json")).unwrap()).unwrap();
    assert_eq!(set.shapes.len(), 36);
    assert_eq!(set.tree.extra_edges.len(), dashed);
    assert_eq!(set.generator_order, "lex, coordinate-major");
    assert_eq!(set.shape_poly, [0, 0, 3, 10, 6, 6, 7, 3, 0, 1]);
    let report = fs::read_to_string(dir.path().join("report.txt")).unwrap();
    assert!(report.contains("histogram matches: true"));
    assert!(report.contains("fallback events: 0"));

    let verify = run(&["verify", dir.path().join("shapes.json").to_str().unwrap()]);
    assert!(verify.status.success(), "{}", String::from_utf8_lossy(&verify.stderr));
}

#[test]
fn gen_small_cases() {
    let (dir, out) = gen("1", "3");
    assert!(out.status.success());
    assert_eq!(dot_counts(dir.path()), (1, 0, 0));
    let (dir, out) = gen("2", "3");
    assert!(out.status.success());
    let (nodes, solid, _) = dot_counts(dir.path());
    assert_eq!((nodes, solid), (4, 3));
}

#[test]
fn dot_and_json_are_stable() {
    let (a, _) = gen("2", "3");
    let (b, _) = gen("2", "3");
    for f in ["tree.dot", "shapes.json"] {
        assert_eq!(fs::read(a.path().join(f)).unwrap(), fs::read(b.path().join(f)).unwrap(), "{f}");
    }
}

#[test]
fn json_round_trip() {
    let (dir, _) = gen("3", "3");
    let text = fs::read_to_string(dir.path().join("shapes.json")).unwrap();
    let set = ShapeSet::from_json(&text).unwrap();
    let again = ShapeSet::from_json(&set.to_json().unwrap()).unwrap();
    assert_eq!(set, again);
    assert_eq!(text, again.to_json().unwrap());
    let records = set.records().unwrap();
    assert_eq!(records.len(), 36);
    assert_eq!(set.branching_tree().unwrap().edges.len(), 35);
}

fn corrupt(edit: impl FnOnce(&mut ShapeSet)) -> Output {
    let (dir, _) = gen("3", "3");
    let path = dir.path().join("shapes.json");
    let mut set = ShapeSet::from_json(&fs::read_to_string(&path).unwrap()).unwrap();
    edit(&mut set);
    fs::write(&path, set.to_json().unwrap()).unwrap();
    run(&["verify", path.to_str().unwrap()])
}

#[test]
fn perturbed_coefficient_is_caught() {
    let out = corrupt(|set| {
        let term = &mut set.shapes[17].poly[0];
        let c: i64 = term.coef.parse().unwrap();
        term.coef = (c + 1).to_string();
    });
    assert_eq!(out.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&out.stderr).contains("shape 17"));
}

#[test]
fn wrong_word_is_caught() {
    let out = corrupt(|set| {
        set.shapes[5].provenance.word = Some("v[-1]t[-1]".into());
    });
    assert_eq!(out.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&out.stderr).contains("shape 5"));
}

#[test]
fn empty_shape_list_is_rejected() {
    let out = corrupt(|set| {
        set.shapes.clear();
        set.tree.edges.clear();
        set.tree.extra_edges.clear();
    });
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn thread_count_from_environment() {
    let dir = TempDir::new().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_shape-forge"))
        .args(["gen", "-N", "2", "-d", "3", "-o", dir.path().to_str().unwrap()])
        .env("SHAPE_FORGE_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(run(&["verify", dir.path().join("shapes.json").to_str().unwrap()]).status.code(), Some(0));
}
