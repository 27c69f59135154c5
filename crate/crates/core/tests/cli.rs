use curvlike::cli::{run_command, CommandOutput, EXIT_FAILED, EXIT_INVALID, EXIT_OK};
use curvlike::instance::load_instance;
use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> CommandOutput {
    run_command(std::iter::once("curvlike").chain(args.iter().copied()))
}

fn json(out: &CommandOutput) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", out.stdout))
}

fn construct(dir: &TempDir, name: &str, args: &[&str]) -> String {
    let path = dir.path().join(name).display().to_string();
    let mut full = vec!["construct"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", &path]);
    let out = run(&full);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    path
}

#[test]
fn h_umbilical_saturates_improved_bound() {
    let dir = TempDir::new().unwrap();
    let x = construct(
        &dir,
        "x.json",
        &["--family", "h-umbilical", "--n", "2", "--lambda", "3", "--mu", "1"],
    );
    let out = run(&["bound", &x, "--mode", "improved"]);
    assert_eq!(out.code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["gap"], 0.0);
    assert_eq!(v["equality_class"]["class"], "HUmbilicalSurface");
    assert_eq!(v["equality_class"]["mu"], 1.0);
}

#[test]
fn totally_umbilical_fails_improved_certification() {
    let dir = TempDir::new().unwrap();
    let tu = construct(
        &dir,
        "tu.json",
        &["--family", "totally-umbilical", "--n", "3", "--h0", "1,0,0"],
    );
    let out = run(&["bound", &tu, "--mode", "improved"]);
    assert_eq!(out.code, EXIT_FAILED);
    let v = json(&out);
    assert_eq!(v["symmetry_certified"], false);
    assert!((v["gap"].as_f64().unwrap() + 0.5).abs() < 1e-12);
    // the general bound still holds, and no claim of total symmetry was made
    assert_eq!(run(&["bound", &tu, "--mode", "general"]).code, EXIT_OK);
    assert_eq!(run(&["check", &tu]).code, EXIT_OK);
}

#[test]
fn ambient_claim_without_symmetry_fails_check() {
    let dir = TempDir::new().unwrap();
    let tu = construct(
        &dir,
        "tu.json",
        &[
            "--family",
            "totally-umbilical",
            "--n",
            "3",
            "--h0",
            "1,0,0",
            "--ambient",
            "complex_lagrangian",
            "--c",
            "1",
        ],
    );
    let out = run(&["check", &tu]);
    assert_eq!(out.code, EXIT_FAILED);
    let v = json(&out);
    assert!(v["failures"][0].as_str().unwrap().contains("complex_lagrangian"));
    assert_eq!(run(&["report", &tu, "--format", "text"]).code, EXIT_FAILED);
}

#[test]
fn every_family_constructs_and_checks() {
    let dir = TempDir::new().unwrap();
    let cases: &[(&str, &[&str])] = &[
        (
            "h-umbilical",
            &[
                "--n",
                "3",
                "--lambda",
                "3",
                "--mu",
                "1",
                "--ambient",
                "complex_lagrangian",
                "--c",
                "4",
            ],
        ),
        (
            "slumbilical",
            &[
                "--n",
                "2",
                "--lambda",
                "2",
                "--theta",
                "0.6",
                "--ambient",
                "complex_slant",
                "--c",
                "-1",
            ],
        ),
        (
            "h-slumbilical",
            &["--n", "4", "--lambda", "1", "--mu", "-0.5", "--theta", "1.2"],
        ),
        (
            "h-umbilical-c-totally-real",
            &[
                "--n",
                "3",
                "--lambda",
                "2",
                "--mu",
                "1",
                "--ambient",
                "sasakian_c_totally_real",
            ],
        ),
        ("totally-umbilical", &["--n", "2", "--h0", "0,1"]),
        (
            "totally-geodesic",
            &["--n", "5", "--bundle", "2", "--ambient", "real_space_form", "--c", "1"],
        ),
    ];
    for (k, (family, extra)) in cases.iter().enumerate() {
        let mut args = vec!["--family", family];
        args.extend_from_slice(extra);
        let path = construct(&dir, &format!("f{k}.json"), &args);
        let out = run(&["check", &path]);
        assert_eq!(out.code, EXIT_OK, "{family}: {}", out.stdout);
        assert_eq!(run(&["report", &path]).code, EXIT_OK);
    }
}

#[test]
fn odd_proper_slant_is_invalid_input() {
    let out = run(&[
        "construct",
        "--family",
        "slumbilical",
        "--n",
        "3",
        "--lambda",
        "1",
        "--theta",
        "0.5",
    ]);
    assert_eq!(out.code, EXIT_INVALID);
}

#[test]
fn nullspace_command() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("n.json");
    let text = r#"{"version": 1, "n": 3, "bundle_dim": 1,
        "zeta": [[[0, 0, 0], [0, 1, 0], [0, 0, 0]]]}"#;
    std::fs::write(&path, text).unwrap();
    let out = run(&["nullspace", path.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["dimension"], 2);
    assert_eq!(v["max_residual"], 0.0);
}

#[test]
fn invalid_files_exit_two() {
    let dir = TempDir::new().unwrap();
    let asym = dir.path().join("asym.json");
    std::fs::write(
        &asym,
        r#"{"version": 1, "n": 2, "bundle_dim": 1, "zeta": [[[1, 0.5], [0.4, 1]]]}"#,
    )
    .unwrap();
    let out = run(&["check", asym.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_INVALID);
    assert!(out.stderr.contains("zeta[0][0][1]"), "{}", out.stderr);

    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{ not json").unwrap();
    let out = run(&["report", garbage.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_INVALID);
    assert!(out.stderr.contains("line 1"));

    assert_eq!(run(&["check", "/definitely/not/here.json"]).code, EXIT_INVALID);
}

#[test]
fn lemma_values_are_checked() {
    let out = run(&["lemma", "--which", "f1", "--n", "3", "--sum", "6", "--values", "4,1,1"]);
    assert_eq!(out.code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["values"]["value"], 6.0);
    assert_eq!(v["values"]["feasible"], true);
    let out = run(&["lemma", "--which", "f2", "--n", "4", "--sum", "8"]);
    assert_eq!(
        json(&out)["closed_form"]["argmax"],
        serde_json::json!([2.0, 2.0, 2.0, 2.0])
    );
}

#[test]
fn sample_is_byte_deterministic() {
    let args = [
        "sample", "--n", "4", "--bundle", "6", "--count", "300", "--seed", "99", "--family", "general",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&[
        "sample", "--n", "4", "--bundle", "6", "--count", "300", "--seed", "100", "--family", "general",
    ]);
    assert_ne!(a.stdout, c.stdout);
    assert_eq!(json(&a)["seed"], 99);
}

#[test]
fn general_samples_are_rarely_symmetric() {
    let out = run(&[
        "sample", "--n", "3", "--bundle", "3", "--count", "1000", "--seed", "3", "--family", "general",
    ]);
    let v = json(&out);
    assert!(v["summary"]["symmetric_fraction"].as_f64().unwrap() <= 0.01);
    let out = run(&[
        "sample",
        "--n",
        "3",
        "--bundle",
        "5",
        "--count",
        "1000",
        "--seed",
        "3",
        "--family",
        "symmetric",
    ]);
    assert_eq!(json(&out)["summary"]["totally_symmetric"], 1000);
}

#[test]
fn constructed_files_round_trip() {
    let dir = TempDir::new().unwrap();
    let path = construct(
        &dir,
        "h.json",
        &[
            "--family",
            "h-slumbilical",
            "--n",
            "2",
            "--lambda",
            "0.1",
            "--mu",
            "0.7",
            "--theta",
            "0.3",
        ],
    );
    let first = std::fs::read_to_string(&path).unwrap();
    let instance = load_instance(&path).unwrap();
    assert_eq!(instance.to_json(), first);
    let report_a = run(&["report", &path]);
    let report_b = run(&["report", &path]);
    assert_eq!(report_a.stdout, report_b.stdout);
}
