mod common;

#[test]
fn transcripts_match() {
    let problems = common::check_golden();
    assert!(problems.is_empty(), "{problems:#?}");
}

#[test]
fn transcripts_record_expected_exit_codes() {
    let expect = [
        ("padic_exp_diverges", 2),
        ("dist_cert_violation", 2),
        ("weight_theta", 0),
        ("dist_convolve_dirac", 0),
    ];
    for (name, code) in expect {
        let text = std::fs::read_to_string(common::golden_dir().join(format!("{name}.json"))).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["exit"], code, "{name}");
    }
}
