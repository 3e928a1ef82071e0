use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn latgen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latgen"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> String {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn markov_on_running_example() {
    let o = latgen(&["markov", &data("example.lat")]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("5 6"));
    assert!(out.lines().any(|l| l == "0 1 3 1 -1 -1"), "{out}");
    // rows come out sorted
    let rows: Vec<&str> = lines.collect();
    let mut sorted = rows.clone();
    sorted.sort_by_key(|r| r.split_whitespace().map(|t| t.parse::<i64>().unwrap()).collect::<Vec<_>>());
    assert_eq!(rows, sorted);
}

#[test]
fn markov_output_is_byte_identical_across_runs() {
    for alg in ["pl", "sat", "lp"] {
        let a = latgen(&["markov", "--algorithm", alg, &data("example.lat")]);
        let b = latgen(&["markov", "--algorithm", alg, &data("example.lat")]);
        assert_eq!(a.stdout, b.stdout, "{alg}");
    }
}

#[test]
fn markov_saturation_matches_the_table() {
    let o = latgen(&["markov", "--algorithm", "sat", &data("example.lat")]);
    assert_eq!(
        stdout(&o),
        "5 6\n0 1 3 1 -1 -1\n1 -1 -1 -3 -1 2\n1 0 2 -2 -2 1\n1 1 5 -1 -3 0\n1 2 8 0 -4 -1\n"
    );
    let o = latgen(&["markov", "--reduce", &data("example.lat")]);
    assert_eq!(stdout(&o).lines().next(), Some("4 6"));
}

#[test]
fn check_generating_passes_on_markov_output() {
    let m = latgen(&["markov", &data("example.lat")]);
    let path = scratch("markov.out", &stdout(&m));
    let o = latgen(&["check", "generating", &data("example.lat"), &path, "--box", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn check_generating_fails_on_a_basis_vector_alone() {
    let path = scratch("one.out", "1 6\n1 0 2 -2 -2 1\n");
    let o = latgen(&["check", "generating", &data("example.lat"), &path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAILED"));
}

#[test]
fn groebner_then_check_and_normal_form() {
    let g = latgen(&["groebner", &data("example.lat")]);
    assert!(g.status.success());
    let path = scratch("gb.out", &stdout(&g));
    let o = latgen(&["check", "groebner", &data("example.lat"), &path]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    // both points of the two-point fiber reduce to the same minimum
    let a = latgen(&["normalform", &path, "0 0 0 0 1 1"]);
    let b = latgen(&["normalform", &path, "0 1 3 1 0 0"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn groebner_with_a_rational_cost() {
    let g = latgen(&["groebner", "--cost", "-1 0 0 0 1/2 0", &data("example.lat")]);
    assert!(g.status.success(), "{}", String::from_utf8_lossy(&g.stderr));
    let path = scratch("gb_cost.out", &stdout(&g));
    let o = latgen(&["check", "groebner", "--cost", "-1 0 0 0 1/2 0", &data("example.lat"), &path]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn three_way_tables_have_110_element_groebner_basis() {
    let o = latgen(&["groebner", "--from-matrix", &data("t333.mat")]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("110 27"));
}

#[test]
fn table_file_matches_the_generator() {
    let o = latgen(&["table", "3", "3", "3"]);
    assert_eq!(stdout(&o), std::fs::read_to_string(data("t333.mat")).unwrap());
}

#[test]
fn input_errors_exit_with_two() {
    let bad = scratch("bad.lat", "2 3\n1 2 3\n4 x 6\n");
    let o = latgen(&["markov", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));

    let o = latgen(&["markov", "/nonexistent/file"]);
    assert_eq!(o.status.code(), Some(2));

    let o = latgen(&["groebner", "--cost", "1 2", &data("example.lat")]);
    assert_eq!(o.status.code(), Some(2));

    let o = latgen(&["groebner", "--cost", "a 0 0 0 0 0", &data("example.lat")]);
    assert_eq!(o.status.code(), Some(2));

    let o = latgen(&["markov"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_rejects_vectors_outside_the_lattice() {
    let path = scratch("outside.out", "1 6\n1 0 0 0 0 0\n");
    let o = latgen(&["check", "generating", &data("example.lat"), &path]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bench_example_prints_every_algorithm() {
    let o = latgen(&["bench", "example"]);
    assert!(o.status.success());
    let out = stdout(&o);
    for alg in ["pl", "sat", "lp"] {
        assert!(out.lines().any(|l| l.starts_with("example") && l.contains(&format!(" {alg} "))), "{out}");
    }
}
