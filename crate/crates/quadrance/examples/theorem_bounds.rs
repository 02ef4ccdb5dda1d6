//! Lower bounds on W(r): the w(0) bound, the unconditional case
//! inequality, and the threshold bounds with their size conditions.
//!
//! Run with: cargo run --example theorem_bounds

use quadrance::bounds::BoundEvaluator;
use quadrance::forms::StandardForm;
use quadrance::fourier::DEFAULT_BUDGET;
use quadrance::points::PointSet;
use quadrance::{Field, Fq};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    println!("=== Lower bounds on W(r) ===\n");

    let f5 = Field::new(5, 1).unwrap();
    let form = StandardForm::new(&f5, 2, Fq(1)).unwrap();

    // |E| = 20 clears the even-dimension threshold 4·q^{d/2} = 20.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let e = PointSet::random_subset(5, 2, 20, &mut rng).unwrap();
    let ev = BoundEvaluator::new(&f5, &e, &form, DEFAULT_BUDGET).unwrap();

    let w0 = ev.w_zero_bound().unwrap();
    println!("random |E| = 20 in F_5², case {:?}", w0.case);
    println!("w(0) = {}  <=  bound {}  ({})\n", w0.w0, w0.bound, w0.holds);

    println!(" r   W(r)      case rhs                 threshold 5|E|⁴/(48q)");
    for r in f5.nonzero_elements() {
        let report = ev.theorem_check(r).unwrap();
        let t = &report.thresholds[0];
        println!(
            " {r}   {:>6}    {:<22}   {} (condition met: {})",
            report.counts.w,
            report.case_bound.to_string(),
            t.lower_bound,
            t.size_condition_met
        );
        assert!(report.case_holds && t.holds);
    }
    println!();

    let quotient = ev.quotient_corollary().unwrap();
    println!(
        "quotient set has {} of {} elements; equals F_q: {}",
        quotient.quotient.len(),
        f5.order(),
        quotient.equals_field
    );

    // An odd-dimension sweep at the all-ratios threshold.
    let f3 = Field::new(3, 1).unwrap();
    let form3 = StandardForm::new(&f3, 3, Fq(1)).unwrap();
    let e3 = PointSet::random_subset(3, 3, 17, &mut rng).unwrap();
    let ev3 = BoundEvaluator::new(&f3, &e3, &form3, DEFAULT_BUDGET).unwrap();
    println!("\nrandom |E| = 17 in F_3³ (6|E| >= 11·q² holds):");
    for r in f3.nonzero_elements() {
        let report = ev3.theorem_check(r).unwrap();
        for t in &report.thresholds {
            println!(
                "  r={r} {:?}: W = {} >= {} ({})",
                t.rule, report.counts.w, t.lower_bound, t.holds
            );
        }
    }
}
