//! One line per acceptance criterion, p = 3 and p = 5, N = 24, D = M = 64.
//!
//! Criterion 11 additionally compares the golden transcripts byte for byte.

mod common;

use padic_periods::selftest::{run_criterion, CRITERIA};

const SEED: u64 = 20240601;

fn main() {
    let mut failed = 0;
    for id in 1..=CRITERIA {
        let mut outcome = run_criterion(id, SEED);
        if id == 11 {
            let problems = common::check_golden();
            if !problems.is_empty() {
                outcome.passed = false;
            }
            outcome.detail = format!(
                "{}; {} golden transcripts{}",
                outcome.detail,
                padic_periods::cli::GOLDEN_CASES.len(),
                if problems.is_empty() {
                    " byte-identical".to_string()
                } else {
                    format!(": {}", problems.join(" | "))
                }
            );
        }
        println!("{}", outcome.line());
        if !outcome.passed {
            failed += 1;
        }
    }
    println!("{} of {CRITERIA} criteria passed", CRITERIA - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
