//! The verification sweep behind `quadrance verify`, driven as a library.
//!
//! Runs every exact-identity suite on a reduced grid and prints the
//! outcome table. The binary does the same with the default grid
//! (q <= 9, n <= 4) plus report serialization.
//!
//! Run with: cargo run --release --example full_verification

use quadrance::run::{run_verify, VerifyOptions};

fn main() {
    let opts = VerifyOptions {
        max_q: 5,
        max_n: 3,
        threads: 2,
        ..VerifyOptions::default()
    };
    println!(
        "verifying on the grid q <= {}, n <= {} ...\n",
        opts.max_q, opts.max_n
    );

    let report = run_verify(&opts).unwrap();
    println!("{:<30} {:>10}  result", "suite", "checks");
    for suite in &report.suites {
        println!(
            "{:<30} {:>10}  {}",
            suite.name,
            suite.checks,
            if suite.pass { "pass" } else { "FAIL" }
        );
        for witness in &suite.failures {
            println!("    {witness}");
        }
    }
    println!(
        "\noverall: {}",
        if report.pass {
            "all suites pass"
        } else {
            "FAILURES"
        }
    );
    assert!(report.pass);
}
