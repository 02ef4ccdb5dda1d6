//! Distance histograms, the quadruple counts M(r) and W(r), and quotient
//! sets.
//!
//! Run with: cargo run --example quadruple_counting

use quadrance::counting;
use quadrance::forms::StandardForm;
use quadrance::fourier::{self, DEFAULT_BUDGET};
use quadrance::points::{encode_point, PointSet};
use quadrance::{Field, Fq};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    println!("=== Quadruple counting ===\n");

    let f5 = Field::new(5, 1).unwrap();
    let form = StandardForm::new(&f5, 2, Fq(1)).unwrap();

    // Two points at distance 1.
    let two = PointSet::from_indices(
        5,
        2,
        &[
            encode_point(5, &[Fq(0), Fq(0)]),
            encode_point(5, &[Fq(1), Fq(0)]),
        ],
    )
    .unwrap();
    let hist = counting::distance_histogram(&f5, &two, &form).unwrap();
    println!("two points at distance 1: w(t) = {:?}", hist.counts());
    let report = counting::w_of_r(&f5, &hist, Fq(1)).unwrap();
    println!(
        "r=1: M = {}, w(0) = {}, W = M - w(0)² = {}\n",
        report.m, report.w0, report.w
    );

    // A random set: distance set, quotient set, and the ratio spectrum.
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let e = PointSet::random_subset(5, 2, 9, &mut rng).unwrap();
    let hist = counting::distance_histogram(&f5, &e, &form).unwrap();
    println!("random |E| = 9 in F_5²:");
    println!("  w(t)           {:?}", hist.counts());
    println!(
        "  distances      {:?}",
        counting::distance_set(&hist)
            .iter()
            .map(|t| t.0)
            .collect::<Vec<_>>()
    );
    println!(
        "  quotient set   {:?}",
        counting::quotient_set(&f5, &hist)
            .unwrap()
            .iter()
            .map(|t| t.0)
            .collect::<Vec<_>>()
    );
    for r in f5.nonzero_elements() {
        let rep = counting::w_of_r(&f5, &hist, r).unwrap();
        println!("  W({r}) = {}", rep.w);
    }
    println!();

    // The exact counting identity: pair count against the Fourier side.
    let sphere = fourier::sphere(&f5, &form, Fq(0)).unwrap();
    let identity = counting::verify_counting_lemma(&f5, &e, &sphere, DEFAULT_BUDGET).unwrap();
    println!(
        "pairs of E differing by a zero-sphere point: {} (Fourier side {}, exact match: {})",
        identity.pair_count, identity.fourier_side, identity.holds
    );
    assert!(identity.holds);
}
