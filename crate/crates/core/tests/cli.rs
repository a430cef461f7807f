//! The `upp-elab` binary end to end.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");

fn data(name: &str) -> PathBuf {
    Path::new(DATA).join(name)
}

fn upp_elab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_upp-elab")).args(args).output().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn writes_output_agda_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    let (out, agda) = (dir.path().join("id.upp"), dir.path().join("Id.agda"));
    let o = upp_elab(&[
        "--input",
        path(&data("id.sig")),
        "--output",
        path(&out),
        "--agda-out",
        path(&agda),
        "--trace",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.contains("def id' : (i : Lvl) ->"), "{text}");
    assert!(fs::read_to_string(&agda).unwrap().contains("id' = λ i → id (lsuc i)"));
    let trace = fs::read_to_string(dir.path().join("id.upp.trace")).unwrap();
    assert!(trace.contains("# id'") && trace.contains("SOLVE"), "{trace}");
}

#[test]
fn constraint_file_narrows_succ() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("nat.upp");
    let o = upp_elab(&[
        "--input",
        path(&data("nat.sig")),
        "--constraints",
        path(&data("nat.constraints")),
        "--output",
        path(&out),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(fs::read_to_string(&out)
        .unwrap()
        .contains("succ : (i : Lvl) -> Tm i (Nat i) -> Tm i (Nat i)."));
}

#[test]
fn dry_run_lists_erased_entries_and_writes_nothing() {
    let o = upp_elab(&["--input", path(&data("nat.sig")), "--dry-run"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(o.stdout).unwrap(),
        "Nat : Tm i1 (U i2).\nzero : Tm i1 (Nat i2).\nsucc : Tm i1 (Nat i2) -> Tm i3 (Nat i4).\n"
    );
}

#[test]
fn parse_errors_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.sig");
    fs::write(&input, "A : Tm@Box (U@Omega)").unwrap();
    let out = dir.path().join("bad.upp");
    let o = upp_elab(&["--input", path(&input), "--output", path(&out)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("PARSE"));
    assert!(!out.exists());
}

#[test]
fn entry_failures_exit_with_1_and_leave_no_output() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("ill.sig");
    fs::write(&input, "B : Tm@Box (U@Omega).\nc : Tm@Omega Nat.\n").unwrap();
    let out = dir.path().join("ill.upp");
    let o = upp_elab(&["--input", path(&input), "--output", path(&out), "--trace"]);
    assert_eq!(o.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&o.stderr);
    assert!(stderr.contains(" c: "), "{stderr}");
    assert!(!out.exists());
    assert!(dir.path().join("ill.upp.trace").exists());
}

#[test]
fn missing_input_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = upp_elab(&["--input", path(&dir.path().join("nope.sig")), "--output", path(&dir.path().join("o"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("IO"));
}

#[test]
fn bad_flags_are_rejected() {
    let input = data("id.sig");
    for args in [
        vec!["--input", path(&input), "--output", "x", "--pts", "sorts=a;axioms=b:a"],
        vec!["--input", path(&input), "--output", "x", "--fuel", "0"],
        vec!["--input", path(&input)],
    ] {
        assert_eq!(upp_elab(&args).status.code(), Some(2), "{args:?}");
    }
}
