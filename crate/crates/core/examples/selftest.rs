//! Runs the acceptance suite, or one criterion given on the command line.
use padic_periods::selftest::{run_all, run_criterion};

fn main() {
    let seed = 1;
    let outcomes = match std::env::args().nth(1).and_then(|a| a.parse().ok()) {
        Some(id) => vec![run_criterion(id, seed)],
        None => run_all(seed),
    };
    for o in &outcomes {
        println!("{}", o.line());
    }
}
