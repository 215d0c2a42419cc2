//! Black-box tests of the command-line front end.

use std::process::Command;

fn run(args: &[&str]) -> (Option<i32>, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_supercohomology"))
        .args(args)
        .output()
        .expect("spawn CLI");
    (
        out.status.code(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn cohomology_golden_json() {
    let (code, stdout, _) = run(&[
        "cohomology", "--family", "sbar", "--n", "3", "--sub", "g0", "--coeff", "trivial",
        "--pmax", "6", "--format", "json",
    ]);
    assert_eq!(code, Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["schema"], "1");
    assert_eq!(v["dims"], serde_json::json!([1, 0, 0, 0, 1, 0, 0]));
    assert_eq!(v["pair"][0], "Sbar(3)");
}

#[test]
fn typicality_verdicts() {
    let (code, stdout, _) =
        run(&["typicality", "--family", "sbar", "--n", "3", "--weight", "2,1,0", "--format", "md"]);
    assert_eq!(code, Some(0));
    assert_eq!(stdout.trim(), "typical");

    let (code, stdout, _) =
        run(&["typicality", "--family", "sbar", "--n", "3", "--weight", "1,1,1", "--format", "md"]);
    assert_eq!(code, Some(0));
    assert_eq!(stdout.trim(), "atypical");
}

#[test]
fn support_descriptors() {
    let (code, stdout, _) = run(&[
        "support", "simple", "--family", "sbar", "--n", "5", "--weight", "1,1,1,1,0",
        "--format", "md",
    ]);
    assert_eq!(code, Some(0));
    assert!(stdout.contains("FullAffine dim 3"));

    let (code, stdout, _) = run(&[
        "support", "kac", "--family", "sbar", "--n", "3", "--weight", "2,1,0", "--format", "md",
    ]);
    assert_eq!(code, Some(0));
    assert!(stdout.contains("ZeroPoint"));
}

#[test]
fn ext_kac_window() {
    let (code, stdout, _) = run(&[
        "ext", "--family", "sbar", "--n", "3", "--sub", "g0", "--m1", "kac:0", "--m2", "kac:0",
        "--pmax", "4", "--format", "csv",
    ]);
    assert_eq!(code, Some(0));
    assert_eq!(stdout, "p,dim\n0,1\n1,0\n2,0\n3,0\n4,0\n");
}

#[test]
fn usage_errors_exit_2() {
    let (code, _, stderr) = run(&["cohomology", "--family", "sbar", "--sub", "nope"]);
    assert_eq!(code, Some(2));
    assert!(!stderr.is_empty());

    let (code, _, stderr) = run(&["algebra", "build", "--family", "glmn", "--n", "2"]);
    assert_eq!(code, Some(2));
    assert!(stderr.contains("--m"));

    let (code, _, stderr) =
        run(&["cohomology", "--family", "w", "--n", "2", "--coeff", "bogus(3)"]);
    assert_eq!(code, Some(2));
    assert!(stderr.contains("coefficient"));
}

#[test]
fn help_exits_0() {
    let (code, stdout, _) = run(&["--help"]);
    assert_eq!(code, Some(0));
    assert!(stdout.contains("cohomology"));
}

#[test]
fn coefficient_grammar_composes() {
    let (code, stdout, _) = run(&[
        "cohomology", "--family", "glmn", "--m", "1", "--n", "1", "--sub", "g0",
        "--coeff", "tensor(dual(trivial),trivial)", "--pmax", "4", "--format", "csv",
    ]);
    assert_eq!(code, Some(0));
    // dual(C) tensor C = C, so this reproduces the gl(1|1) table
    assert_eq!(stdout, "p,dim\n0,1\n1,0\n2,1\n3,0\n4,1\n");
}

#[test]
fn module_file_roundtrip() {
    use supercohomology::liesuper::construct_sbar;
    use supercohomology::smodule::{kac_module_sigma, module_to_json};

    let sbar = construct_sbar(3).unwrap();
    let k0 = kac_module_sigma(&sbar, 0);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k0.json");
    std::fs::write(&path, serde_json::to_string(&module_to_json(&k0)).unwrap()).unwrap();

    let (code, stdout, _) = run(&[
        "cohomology", "--family", "sbar", "--n", "3", "--sub", "g0",
        "--coeff", &format!("file:{}", path.display()), "--pmax", "2", "--format", "csv",
    ]);
    assert_eq!(code, Some(0), "stdout: {stdout}");
    let (_, direct, _) = run(&[
        "cohomology", "--family", "sbar", "--n", "3", "--sub", "g0", "--coeff", "kac:0",
        "--pmax", "2", "--format", "csv",
    ]);
    assert_eq!(stdout, direct);
}
