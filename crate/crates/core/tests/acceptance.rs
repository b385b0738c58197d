//! One line per criterion; exits nonzero if any criterion fails.

use std::process::ExitCode;

use wsa::suites;

fn main() -> ExitCode {
    let mut failed = 0;
    for c in 1..=9u8 {
        match suites::run(c) {
            Ok(r) => {
                let verdict = if r.passed() { "PASS" } else { "FAIL" };
                let n = r.checks.len();
                let ok = r.checks.iter().filter(|x| x.passed).count();
                println!(
                    "criterion {c}: {verdict} | {} | {ok}/{n} checks | {:.2}s (limit {}s)",
                    r.title,
                    r.elapsed.as_secs_f64(),
                    r.limit_s
                );
                for x in r.checks.iter().filter(|x| !x.passed) {
                    println!("    failed: {} [{}]", x.name, x.detail);
                }
                if !r.passed() {
                    failed += 1;
                }
            }
            Err(e) => {
                println!("criterion {c}: FAIL | error: {e}");
                failed += 1;
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
