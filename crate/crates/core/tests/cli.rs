use padic_periods::cli::run_case;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value) {
    let out = run_case(args);
    (out.code, serde_json::from_str(&out.stdout).expect("JSON on stdout"))
}

#[test]
fn envelope_echoes_effective_config() {
    let (code, v) = run(&["--p", "5", "--N", "12", "-m", "1", "padic", "show", "--x", "z+p"]);
    assert_eq!(code, 0);
    let c = &v["config"];
    assert_eq!((c["p"].as_u64(), c["N"].as_i64(), c["m"].as_u64()), (Some(5), Some(12), Some(1)));
    assert_eq!(c["gamma"], "1+p");
    assert_eq!(v["result"]["coeffs"], serde_json::json!(["5", "1", "0", "0"]));
    assert_eq!(v["certified_error_exp"], -12);
}

#[test]
fn precondition_errors_exit_two_with_codes() {
    let cases: [(&[&str], &str); 5] = [
        (&["-m", "1", "padic", "exp", "--x", "z-1"], "EXP_DIVERGES"),
        (&["padic", "log1p", "--x", "2"], "OUTSIDE_DISK"),
        (&["--p", "9", "padic", "show", "--x", "1"], "INVALID_FIELD"),
        (
            &["dist", "include", "--mu", r#"{"level":2,"moments":["1","p"]}"#, "--n2", "1"],
            "LEVEL_MISMATCH",
        ),
        (&["padic", "show", "--x", "z"], "FIELD_TOO_SMALL"),
    ];
    for (args, code) in cases {
        let (status, v) = run(args);
        assert_eq!(status, 2, "{args:?}");
        assert_eq!(v["error"]["code"], code, "{args:?}");
    }
}

#[test]
fn galois_outside_its_subgroup_is_rejected() {
    let (code, v) = run(&[
        "galois",
        "act-dist",
        "--g",
        "2",
        "--mu",
        r#"{"level":1,"moments":["1","p"]}"#,
    ]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["code"], "LEVEL_MISMATCH");
}

#[test]
fn malformed_input_exits_one() {
    for args in [
        &["padic", "add", "--x", "1+*", "--y", "1"][..],
        &["series", "norm", "--f", "{\"level\":0}"][..],
        &["dist", "convolve", "--mu", "[1,", "--nu", "1"][..],
        &["weight"][..],
    ] {
        assert_eq!(run_case(args).code, 1, "{args:?}");
    }
}

#[test]
fn sampling_is_seeded() {
    let a = run_case(&["--seed", "9", "-m", "1", "sample", "dist", "--n", "1"]);
    let b = run_case(&["--seed", "9", "-m", "1", "sample", "dist", "--n", "1"]);
    let c = run_case(&["--seed", "10", "-m", "1", "sample", "dist", "--n", "1"]);
    assert_eq!(a, b);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn dirac_of_a_torsion_point_is_the_identity() {
    let (code, v) = run(&["-m", "2", "--M", "6", "dist", "dirac", "--psi", "z^3-1", "--n", "1"]);
    assert_eq!(code, 0);
    let moments = v["result"]["moments"].as_array().unwrap();
    assert!(moments[1..]
        .iter()
        .all(|m| m["coeffs"].as_array().unwrap().iter().all(|c| c == "0")));
}

#[test]
fn file_arguments_are_read() {
    let dir = std::env::temp_dir().join(format!("padic-periods-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("mu.json");
    std::fs::write(&path, r#"{"level":0,"moments":["1","3","9"]}"#).unwrap();
    let arg = format!("@{}", path.display());
    let (code, v) = run(&["dist", "theta-op", "--mu", &arg]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["moments"][0]["coeffs"][0], "3");
    std::fs::remove_dir_all(&dir).ok();
}
