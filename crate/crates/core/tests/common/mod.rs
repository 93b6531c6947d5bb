use std::path::PathBuf;

use padic_periods::cli::{run_case, GOLDEN_CASES};
use serde_json::{json, Value};

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// The transcript of one golden invocation: arguments, exit status, output.
pub fn transcript(args: &[&str]) -> String {
    let out = run_case(args);
    let stdout: Value = serde_json::from_str(&out.stdout).expect("JSON on stdout");
    let mut s = serde_json::to_string_pretty(&json!({
        "args": args,
        "exit": out.code,
        "stdout": stdout,
    }))
    .unwrap();
    s.push('\n');
    s
}

/// Compares every transcript with its file; `UPDATE_GOLDEN=1` rewrites them.
pub fn check_golden() -> Vec<String> {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut problems = Vec::new();
    for (name, args) in GOLDEN_CASES {
        let path = golden_dir().join(format!("{name}.json"));
        let first = transcript(args);
        let second = transcript(args);
        if first != second {
            problems.push(format!("{name}: output differs between runs"));
        }
        if update {
            std::fs::write(&path, &first).expect("write golden file");
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(stored) if stored == first => {}
            Ok(_) => problems.push(format!("{name}: differs from {}", path.display())),
            Err(e) => problems.push(format!("{name}: {e}")),
        }
    }
    problems
}
