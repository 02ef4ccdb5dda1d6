//! Cross-module exact identities: distance-set invariance under change of
//! basis, and the ordering of the odd-dimension lower bounds.

mod common;

use common::{field, random_set, seeded_rng};
use num_bigint::BigInt;
use num_rational::BigRational;
use quadrance::bounds::BoundEvaluator;
use quadrance::counting;
use quadrance::field::Fq;
use quadrance::forms::{standardize, Matrix, QuadraticForm, StandardForm};
use quadrance::fourier::DEFAULT_BUDGET;
use quadrance::points::space_size;
use rand::Rng;

/// Distances are preserved when a form is standardized and the set is
/// moved by the inverse basis change: Δ_Q(E) = Δ_{Q'}(C^{-1}E).
#[test]
fn distance_sets_are_invariant_under_standardization() {
    for (cfg_idx, (q, d)) in [(3u64, 2usize), (5, 2), (3, 3)].iter().enumerate() {
        let (q, d) = (*q, *d);
        let f = field(q);
        let mut rng = seeded_rng(7001, cfg_idx as u64 + 1);
        let mut tested = 0;
        while tested < 20 {
            let mut data = vec![Fq(0); d * d];
            for i in 0..d {
                for j in i..d {
                    let v = Fq(rng.random_range(0..f.order()));
                    data[i * d + j] = v;
                    data[j * d + i] = v;
                }
            }
            let Ok(form) = QuadraticForm::new(&f, Matrix::new(d, data)) else {
                continue;
            };
            tested += 1;
            let (standard, c) = standardize(&f, &form).unwrap();
            let c_inv = c.inverse(&f).unwrap();

            let space = space_size(f.order(), d as u32).unwrap();
            let size = rng.random_range(1..=space.min(20));
            let e = random_set(&f, d as u32, size, &mut rng);
            let e_moved = e.map_linear(&f, &c_inv).unwrap();

            // Δ_Q(E) by direct evaluation of the original form.
            let pts: Vec<Vec<Fq>> = e.points().collect();
            let mut direct: Vec<Fq> = Vec::new();
            for x in &pts {
                for y in &pts {
                    let diff: Vec<Fq> = x.iter().zip(y).map(|(&a, &b)| f.sub(a, b)).collect();
                    let t = form.evaluate(&f, &diff).unwrap();
                    if !direct.contains(&t) {
                        direct.push(t);
                    }
                }
            }
            direct.sort();

            // Δ_{Q'}(C^{-1}E) through the histogram.
            let hist = counting::distance_histogram(&f, &e_moved, &standard).unwrap();
            let via_standard = counting::distance_set(&hist);
            assert_eq!(direct, via_standard, "q={q} d={d} |E|={size}");
        }
    }
}

/// In odd dimension the fully-estimated lower bound for non-square ratios
/// sits below the one for square ratios, and each exact case bound
/// dominates its estimated version. (The exact per-ratio bounds are not
/// comparable between square classes; the ordering only appears after the
/// weight sums are estimated away.)
#[test]
fn odd_dim_estimated_bounds_are_ordered() {
    let big = |x: u64| BigInt::from(x);
    for (cfg_idx, (q, d)) in [(3u64, 3usize), (5, 3)].iter().enumerate() {
        let (q, d) = (*q, *d);
        let f = field(q);
        for eps in [f.one(), f.smallest_nonsquare()] {
            let form = StandardForm::new(&f, d, eps).unwrap();
            let mut rng = seeded_rng(7002, cfg_idx as u64 + 1);
            for _ in 0..25 {
                let space = space_size(f.order(), d as u32).unwrap();
                let size = rng.random_range(0..=space.min(40));
                let set = random_set(&f, d as u32, size, &mut rng);
                let ev = BoundEvaluator::new(&f, &set, &form, DEFAULT_BUDGET).unwrap();

                let e = BigRational::from(big(size as u64));
                let qb = BigRational::from(big(q));
                let e2 = &e * &e;
                let e4 = &e2 * &e2;
                let q_pow = |k: u32| BigRational::from(big(q).pow(k));
                let tail = {
                    let t = &e2 / &qb + q_pow((d as u32 - 1) / 2) * &e;
                    &t * &t
                };
                // Square ratios keep the zero-frequency term of the weight
                // sum; non-square ratios give the whole sum away.
                let derived_square =
                    &e4 / &qb + &e4 / q_pow(d as u32) - q_pow(d as u32 - 1) * &e2 - &tail;
                let derived_nonsquare =
                    &e4 / &qb - q_pow(d as u32) * &e2 + q_pow(d as u32 - 1) * &e2 - &tail;
                assert!(
                    derived_nonsquare <= derived_square,
                    "q={q} d={d} |E|={size}"
                );

                for r in f.nonzero_elements() {
                    let exact = ev.case_lower_bound(r).unwrap();
                    let derived = if f.eta(r).unwrap() == 1 {
                        &derived_square
                    } else {
                        &derived_nonsquare
                    };
                    assert!(
                        exact >= *derived,
                        "q={q} d={d} eps={eps} |E|={size} r={r}: exact {exact} < derived {derived}"
                    );
                }
            }
        }
    }
}
