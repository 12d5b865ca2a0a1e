//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.
//!
//! Set `COTANASYM_ACCEPTANCE=fast` to use the quick figure variant, or list
//! identifiers as arguments (`cargo test --test acceptance -- A1 A4`).

use std::process::ExitCode;

use cotanasym::verify::{check_ids, run_check, SuiteMode};

fn main() -> ExitCode {
    let mode = match std::env::var("COTANASYM_ACCEPTANCE").as_deref() {
        Ok("fast") => SuiteMode::Fast,
        _ => SuiteMode::Full,
    };
    let requested: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let ids: Vec<&str> = check_ids()
        .filter(|id| requested.is_empty() || requested.iter().any(|r| r.eq_ignore_ascii_case(id)))
        .collect();

    let mut failed = 0;
    for id in &ids {
        let outcome = run_check(id, mode).expect("id comes from check_ids");
        println!("{outcome}");
        failed += usize::from(!outcome.passed);
    }
    println!("acceptance: {} passed, {failed} failed", ids.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
