//! Running the verification suites from library code.

use qyd::cli::{run_suite, Depth};

fn main() {
    for name in ["hopf", "coordinates", "collapse", "mk-image"] {
        let r = run_suite(name, Depth::Standard).unwrap();
        println!("{} {}", if r.passed { "PASS" } else { "FAIL" }, r.suite);
        for c in &r.checks {
            println!("  {} {}", if c.passed { "ok  " } else { "fail" }, c.name);
        }
    }
}
