//! The extremal constructions that make the size thresholds tight.
//!
//! Run with: cargo run --example sharpness_sets

use quadrance::sharpness;
use quadrance::{Field, Fq};

fn main() {
    println!("=== Sharpness constructions ===\n");

    // Even dimension: q^{d/2} points whose quotient set misses every
    // non-square.
    let f7 = Field::new(7, 1).unwrap();
    let built = sharpness::build_even(&f7, 2, Fq(1)).unwrap();
    let report = sharpness::analyze(&f7, &built).unwrap();
    println!("even construction, q=7 d=2:");
    println!(
        "  |E| = {} (expected {})",
        report.set_size, report.expected_size
    );
    println!("  quotient set = {:?}", report.quotient_set);
    println!("  squares      = {:?}", report.squares);
    println!("  W(r) = 0 for r in {:?}", report.zero_ratio_witnesses);
    assert!(report.quotient_equals_squares && report.nonsquares_unrealized);
    println!();

    // Odd dimension, full line factor: q^{(d+1)/2} points.
    let f5 = Field::new(5, 1).unwrap();
    let built = sharpness::build_odd_full(&f5, 3, Fq(1)).unwrap();
    let report = sharpness::analyze(&f5, &built).unwrap();
    println!("odd-full construction, q=5 d=3:");
    println!("  |E| = {} = q^((d+1)/2)", report.set_size);
    println!(
        "  quotient equals squares: {}",
        report.quotient_equals_squares
    );
    println!();

    // Odd dimension, progression factor: about q^{1/2-δ} per line.
    let f13 = Field::new(13, 1).unwrap();
    let built = sharpness::build_odd_delta(&f13, 3, Fq(1), 0.25).unwrap();
    let info = built.delta.clone().unwrap();
    let report = sharpness::analyze(&f13, &built).unwrap();
    println!("odd-delta construction, q=13 d=3 delta=0.25:");
    println!(
        "  progression length {} -> block {} -> |E| = {}",
        info.progression_len, info.block_len, report.set_size
    );
    println!(
        "  quotient has {} elements vs (q+1)/2 = {} squares (proper subset: {})",
        report.quotient_set.len(),
        report.squares.len(),
        report.quotient_proper_subset_of_squares
    );
    println!("  (the shrinking claim is asymptotic; the report only records the comparison)");
}
