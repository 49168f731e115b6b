//! End-to-end exercises of the vsyz binary and its exit-code contract.

use std::path::PathBuf;
use std::process::{Command, Output};

use veronese_syzygy::field::PrimeField;
use veronese_syzygy::json::{complex_to_json_string, load_complex, AnyComplex};

fn vsyz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vsyz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &tempfile::TempDir, name: &str, content: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn resolve_then_verify_fermat_cubic() {
    let dir = tempfile::tempdir().unwrap();
    let curve = write(&dir, "c.curve", "# cubic\nx0^3 + x1^3 + x2^3\n");
    let out_path = dir.path().join("c.json");
    let out = vsyz(&[
        "resolve",
        "--input",
        curve.to_str().unwrap(),
        "--field",
        "fp:32003",
        "--assume-irreducible",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stderr.is_empty(), "attested resolve must not warn");

    let verify = vsyz(&[
        "verify",
        "--input",
        out_path.to_str().unwrap(),
        "--degree-bound",
        "8",
    ]);
    assert_eq!(
        code(&verify),
        0,
        "{}",
        String::from_utf8_lossy(&verify.stdout)
    );
    let stdout = String::from_utf8_lossy(&verify.stdout);
    assert!(stdout.contains("verify: PASS"));
    assert!(verify.stderr.is_empty(), "reports go to stdout only");
}

#[test]
fn resolve_then_verify_fermat_quartic() {
    let dir = tempfile::tempdir().unwrap();
    let curve = write(&dir, "c.curve", "x0^4 + x1^4 + x2^4\n");
    let out_path = dir.path().join("c.json");
    let out = vsyz(&[
        "resolve",
        "--input",
        curve.to_str().unwrap(),
        "--field",
        "fp:32003",
        "--assume-irreducible",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let verify = vsyz(&["verify", "--input", out_path.to_str().unwrap()]);
    assert_eq!(
        code(&verify),
        0,
        "{}",
        String::from_utf8_lossy(&verify.stdout)
    );
}

#[test]
fn unattested_resolve_warns_on_stderr_only() {
    let dir = tempfile::tempdir().unwrap();
    let curve = write(&dir, "c.curve", "x0^3 + x1^3 + x2^3\n");
    let out = vsyz(&["resolve", "--input", curve.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("warning"),
        "expected irreducibility warning"
    );
    // stdout stays clean JSON
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(matches!(load_complex(&stdout), Ok(AnyComplex::Rational(_))));
}

#[test]
fn malformed_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad_curve = write(&dir, "bad.curve", "x0 + * 3\n");
    assert_eq!(
        code(&vsyz(&["resolve", "--input", bad_curve.to_str().unwrap()])),
        2
    );

    let unknown_var = write(&dir, "bad2.curve", "x0 + x00\n");
    assert_eq!(
        code(&vsyz(&[
            "resolve",
            "--input",
            unknown_var.to_str().unwrap()
        ])),
        2
    );

    let truncated = write(&dir, "bad.json", "{ \"format\": 1, \"field\": \"q\"");
    assert_eq!(
        code(&vsyz(&["verify", "--input", truncated.to_str().unwrap()])),
        2
    );

    let missing = dir.path().join("nope.curve");
    assert_eq!(
        code(&vsyz(&["resolve", "--input", missing.to_str().unwrap()])),
        2
    );
}

#[test]
fn precondition_violations_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let linear = write(&dir, "lin.curve", "x0\n");
    assert_eq!(
        code(&vsyz(&["resolve", "--input", linear.to_str().unwrap()])),
        3
    );

    let inhomogeneous = write(&dir, "inh.curve", "x0 + x1^2\n");
    assert_eq!(
        code(&vsyz(&[
            "resolve",
            "--input",
            inhomogeneous.to_str().unwrap()
        ])),
        3
    );

    // prime not exceeding the curve degree
    let cubic = write(&dir, "c.curve", "x0^3 + x1^3 + x2^3\n");
    let out_path = dir.path().join("c.json");
    let out = vsyz(&[
        "resolve",
        "--input",
        cubic.to_str().unwrap(),
        "--field",
        "fp:3",
        "--assume-irreducible",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        code(&vsyz(&["verify", "--input", out_path.to_str().unwrap()])),
        3
    );

    assert_eq!(
        code(&vsyz(&["random-curve", "--degree", "1", "--seed", "4"])),
        3
    );

    let composite = write(&dir, "c2.curve", "x0^2 + x1*x2\n");
    assert_eq!(
        code(&vsyz(&[
            "resolve",
            "--input",
            composite.to_str().unwrap(),
            "--field",
            "fp:32004"
        ])),
        3
    );
}

#[test]
fn hand_mutated_json_fails_verification_with_witness() {
    let fp = PrimeField::new(32003).unwrap();
    let f = veronese_syzygy::parse_poly("x0^3 + x1^3 + x2^3", veronese_syzygy::RingId::Curve, fp)
        .unwrap();
    let complex = veronese_syzygy::build_odd(&f, true).unwrap();
    let flipped = complex.mutate_entry(2, 0, 0, complex.differential(2).entry(0, 0).neg_ref());

    let dir = tempfile::tempdir().unwrap();
    let path = write(&dir, "mutated.json", &complex_to_json_string(&flipped));
    let out = vsyz(&[
        "verify",
        "--input",
        path.to_str().unwrap(),
        "--degree-bound",
        "6",
    ]);
    assert_eq!(code(&out), 1);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("FAIL"), "{stdout}");
    assert!(stdout.contains("composition d.d = 0: FAIL"), "{stdout}");
}

#[test]
fn random_curve_is_deterministic() {
    let a = vsyz(&["random-curve", "--degree", "4", "--seed", "1"]);
    let b = vsyz(&["random-curve", "--degree", "4", "--seed", "1"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = vsyz(&["random-curve", "--degree", "4", "--seed", "2"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn betti_output() {
    let dir = tempfile::tempdir().unwrap();
    let curve = write(&dir, "c.curve", "x0^3 + x1^3 + x2^3\n");
    let out = vsyz(&["betti", "--input", curve.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let stdout = String::from_utf8_lossy(&out.stdout);
    for line in ["(0,0): 1", "(1,2): 9", "(2,3): 16", "(3,4): 9", "(4,6): 1"] {
        assert!(stdout.contains(line), "{stdout}");
    }
}

#[test]
fn oracle_command_counts_koszul_syzygies() {
    let dir = tempfile::tempdir().unwrap();
    let gens = write(&dir, "gens.txt", "x0\nx1\nx2\n");
    let out = vsyz(&[
        "oracle",
        "--gens",
        gens.to_str().unwrap(),
        "--ring",
        "curve",
        "--degree",
        "2",
    ]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("dimension: 3"));
}

#[test]
fn lift_command_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let curve = write(&dir, "c.curve", "x0*x1*x2\n");
    let out = vsyz(&[
        "lift",
        "--input",
        curve.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["parity"], "odd");
    assert_eq!(value["h"][0], "1");
    assert_eq!(value["F"][0], "x00*x12");
}

#[test]
fn verify_round_trip_for_random_curves() {
    // one seeded curve of every degree in 2..=8, through the binary at the
    // default degree bound
    let dir = tempfile::tempdir().unwrap();
    for (d, seed) in
        [("2", "11"), ("3", "12"), ("4", "13"), ("5", "14"), ("6", "15"), ("7", "16"), ("8", "17")]
    {
        let curve_path = dir.path().join(format!("c{d}.curve"));
        let gen = vsyz(&[
            "random-curve",
            "--degree",
            d,
            "--seed",
            seed,
            "--field",
            "fp:32003",
            "--out",
            curve_path.to_str().unwrap(),
        ]);
        assert_eq!(code(&gen), 0);
        let json_path = dir.path().join(format!("c{d}.json"));
        let res = vsyz(&[
            "resolve",
            "--input",
            curve_path.to_str().unwrap(),
            "--field",
            "fp:32003",
            "--assume-irreducible",
            "--out",
            json_path.to_str().unwrap(),
        ]);
        assert_eq!(code(&res), 0);
        let verify = vsyz(&["verify", "--input", json_path.to_str().unwrap()]);
        assert_eq!(
            code(&verify),
            0,
            "{}",
            String::from_utf8_lossy(&verify.stdout)
        );
    }
}
