//! Runs every acceptance criterion once, in order, and prints one line per
//! criterion. Exits nonzero if any check fails or overruns its budget.

use std::process::ExitCode;

use lowlight::verify::{run_criterion, VerifyConfig, CRITERIA};
use lowlight::Exec;

fn main() -> ExitCode {
    // `cargo test -- --list` and filters are not meaningful here
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let cfg = VerifyConfig {
        exec: Exec::default(),
        ..VerifyConfig::default()
    };
    println!("running {} acceptance criteria (seed {})", CRITERIA.len(), cfg.seed);
    let mut failed = Vec::new();
    for &(id, ..) in CRITERIA.iter() {
        let outcome = run_criterion(id, &cfg).expect("known criterion");
        println!("{}", outcome.line());
        if !outcome.passed() {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", CRITERIA.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
