//! Acceptance criteria, one line per criterion. Exits non-zero if any fails.

use std::process::ExitCode;

use oscbath_cli::verify::{run, Level};

fn main() -> ExitCode {
    let reports = run(Level::Full, false);
    for r in &reports {
        println!("{}", r.line());
    }
    let failed: Vec<u8> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    println!(
        "acceptance: {} of {} criteria pass{}",
        reports.len() - failed.len(),
        reports.len(),
        if failed.is_empty() { String::new() } else { format!("; failing: {failed:?}") }
    );
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
