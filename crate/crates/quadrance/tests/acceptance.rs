//! Acceptance suite: one test per criterion, every comparison exact.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion pass lines and timings.

mod common;

use common::{field, quadruple_oracle, random_set, seeded_rng};
use num_bigint::BigInt;
use num_rational::BigRational;
use quadrance::bounds::{BoundEvaluator, ThresholdRule};
use quadrance::counting;
use quadrance::field::Fq;
use quadrance::forms::StandardForm;
use quadrance::fourier::{self, RatioSpec, DEFAULT_BUDGET};
use quadrance::points::{decode_point, space_size};
use quadrance::run::{self, RunConfig, VerifyOptions};
use quadrance::sharpness;
use rand::Rng;
use std::time::Instant;

fn pass(criterion: u32, name: &str, started: Instant) {
    println!(
        "criterion {criterion:>2} {name:<38} PASS  ({:.2}s)",
        started.elapsed().as_secs_f64()
    );
}

#[test]
fn c01_gauss_identities() {
    let started = Instant::now();
    for q in [3u64, 5, 7, 9, 11, 13, 25, 27, 49] {
        let f = field(q);
        let g = f.gauss_sum();
        let eta_m1 = f.eta(f.from_int(-1)).unwrap() as i128;
        assert_eq!((&g * &g).as_int(), Some(eta_m1 * q as i128), "G^2 at q={q}");
        assert_eq!(
            (&g * &g.conjugate()).as_int(),
            Some(q as i128),
            "G·conj(G) at q={q}"
        );
    }
    pass(1, "gauss-sum identities", started);
}

#[test]
fn c02_quadratic_character_sums() {
    let started = Instant::now();
    for q in [3u64, 5, 7, 9, 11] {
        let f = field(q);
        let p = f.p() as usize;
        for a in f.nonzero_elements() {
            for b in f.elements() {
                let mut counts = vec![0i128; p];
                for t in f.elements() {
                    let v = f.add(f.mul(a, f.mul(t, t)), f.mul(b, t));
                    counts[f.trace(v) as usize] += 1;
                }
                let brute = quadrance::Cyclotomic::from_zeta_counts(f.p(), &counts);
                assert_eq!(
                    f.completed_square_sum(a, b).unwrap(),
                    brute,
                    "completed square q={q} a={a} b={b}"
                );
            }
        }
        for b in f.nonzero_elements() {
            let mut counts = vec![0i128; p];
            for s in f.nonzero_elements() {
                let arg = f.mul(b, f.inv(s).unwrap());
                counts[f.trace(arg) as usize] += f.eta(s).unwrap() as i128;
            }
            let brute = quadrance::Cyclotomic::from_zeta_counts(f.p(), &counts);
            assert_eq!(
                f.eta_weighted_inverse_sum(b).unwrap(),
                brute,
                "eta-weighted inverse q={q} b={b}"
            );
        }
    }
    pass(2, "completed-square and eta-inverse sums", started);
}

#[test]
fn c03_diagonal_variety_transform() {
    let started = Instant::now();
    for q in [3u64, 5, 7, 9] {
        let f = field(q);
        for n in [2usize, 3, 4] {
            let vectors: Vec<Vec<Fq>> = if q == 3 {
                (0..(1u32 << n))
                    .map(|mask| (0..n).map(|i| Fq(1 + ((mask >> i) & 1))).collect())
                    .collect()
            } else {
                let mut rng = seeded_rng(303, q * 10 + n as u64);
                (0..20)
                    .map(|_| (0..n).map(|_| Fq(rng.random_range(1..f.order()))).collect())
                    .collect()
            };
            for a in vectors {
                let h = fourier::diagonal_variety(&f, &a).unwrap();
                let table = fourier::set_table(&f, &h, DEFAULT_BUDGET).unwrap();
                for (m_idx, brute) in table.iter().enumerate() {
                    let m = decode_point(f.order(), n as u32, m_idx);
                    let closed = fourier::closed_diagonal(&f, &a, &m).unwrap();
                    assert_eq!(closed.value, brute.value, "q={q} n={n} a={a:?} m={m:?}");
                }
            }
        }
    }
    pass(3, "diagonal-variety closed transform", started);
}

#[test]
fn c04_ratio_variety_transform() {
    let started = Instant::now();
    for (q, d) in [(3u64, 2usize), (3, 3), (5, 2)] {
        let f = field(q);
        for eps in [f.one(), f.smallest_nonsquare()] {
            let form = StandardForm::new(&f, d, eps).unwrap();
            for r in f.nonzero_elements() {
                let spec = RatioSpec::new(form.clone(), r).unwrap();
                let v = fourier::product_variety(&f, &spec).unwrap();
                let table = fourier::set_table(&f, &v, DEFAULT_BUDGET).unwrap();
                for (m_idx, brute) in table.iter().enumerate() {
                    let m = decode_point(f.order(), 2 * d as u32, m_idx);
                    let closed = fourier::closed_product_variety(&f, &spec, &m).unwrap();
                    assert_eq!(
                        closed.value, brute.value,
                        "q={q} d={d} eps={eps} r={r} m_idx={m_idx}"
                    );
                }
            }
        }
    }
    pass(4, "ratio-variety closed transform", started);
}

#[test]
fn c05_sphere_zero_transform() {
    let started = Instant::now();
    for q in [3u64, 5, 7] {
        let f = field(q);
        for d in [2usize, 3, 4] {
            for eps in [f.one(), f.smallest_nonsquare()] {
                let form = StandardForm::new(&f, d, eps).unwrap();
                let s0 = fourier::sphere(&f, &form, Fq(0)).unwrap();
                let table = fourier::set_table(&f, &s0, DEFAULT_BUDGET).unwrap();
                for (m_idx, brute) in table.iter().enumerate() {
                    let m = decode_point(f.order(), d as u32, m_idx);
                    let closed = fourier::closed_sphere_zero(&f, &form, &m).unwrap();
                    assert_eq!(closed.value, brute.value, "q={q} d={d} eps={eps} m={m:?}");
                }
            }
        }
    }
    pass(5, "zero-sphere closed transform", started);
}

#[test]
fn c06_counting_identity() {
    let started = Instant::now();
    for (cfg_idx, (q, n)) in [(3u64, 2usize), (3, 3), (5, 2), (5, 3)].iter().enumerate() {
        let (q, n) = (*q, *n);
        let f = field(q);
        let form = StandardForm::new(&f, n, f.one()).unwrap();
        let s0 = fourier::sphere(&f, &form, Fq(0)).unwrap();
        let space = space_size(f.order(), n as u32).unwrap();
        let mut rng = seeded_rng(606, cfg_idx as u64 + 1);
        for _ in 0..50 {
            let size = rng.random_range(1..=space.min(40));
            let e = random_set(&f, n as u32, size, &mut rng);

            let report = counting::verify_counting_lemma(&f, &e, &s0, DEFAULT_BUDGET).unwrap();
            assert!(report.holds, "sphere q={q} n={n} |E|={size}");
            // The w(0) specialization: the sphere pair count is exactly the
            // histogram's zero bucket.
            let hist = counting::distance_histogram(&f, &e, &form).unwrap();
            assert_eq!(hist.w_zero(), report.pair_count, "q={q} n={n}");

            let a: Vec<Fq> = (0..n).map(|_| Fq(rng.random_range(1..f.order()))).collect();
            let h = fourier::diagonal_variety(&f, &a).unwrap();
            let report = counting::verify_counting_lemma(&f, &e, &h, DEFAULT_BUDGET).unwrap();
            assert!(report.holds, "variety q={q} n={n} |E|={size} a={a:?}");
        }
    }
    pass(6, "exact counting identity", started);
}

fn w0_configs() -> Vec<(u64, usize, bool)> {
    // (q, d, use nonsquare eps); spans all three bound cases over the
    // grid {3,5} x {2,3,4}.
    vec![
        (3, 2, false),
        (3, 2, true),
        (5, 2, false),
        (5, 2, true),
        (3, 4, false),
        (3, 4, true),
        (5, 4, false),
        (5, 4, true),
        (3, 3, false),
        (3, 3, true),
        (5, 3, false),
        (5, 3, true),
    ]
}

#[test]
fn c07_w_zero_bounds() {
    let started = Instant::now();
    for (cfg_idx, (q, d, nonsquare)) in w0_configs().into_iter().enumerate() {
        let f = field(q);
        let eps = if nonsquare {
            f.smallest_nonsquare()
        } else {
            f.one()
        };
        let form = StandardForm::new(&f, d, eps).unwrap();
        let space = space_size(f.order(), d as u32).unwrap();
        let mut rng = seeded_rng(707, cfg_idx as u64 + 1);
        for _ in 0..200 {
            let size = rng.random_range(0..=space.min(60));
            let set = random_set(&f, d as u32, size, &mut rng);
            let ev = BoundEvaluator::new(&f, &set, &form, DEFAULT_BUDGET).unwrap();
            let b = ev.w_zero_bound().unwrap();
            assert!(
                b.holds,
                "q={q} d={d} eps={eps} |E|={size}: w0={} bound={}",
                b.w0, b.bound
            );
        }
    }
    pass(7, "w(0) upper bounds, all three cases", started);
}

#[test]
fn c08_case_inequalities() {
    let started = Instant::now();
    for (cfg_idx, (q, d, nonsquare)) in w0_configs().into_iter().enumerate() {
        let f = field(q);
        let eps = if nonsquare {
            f.smallest_nonsquare()
        } else {
            f.one()
        };
        let form = StandardForm::new(&f, d, eps).unwrap();
        let space = space_size(f.order(), d as u32).unwrap();
        let mut rng = seeded_rng(808, cfg_idx as u64 + 1);
        for _ in 0..50 {
            let size = rng.random_range(0..=space.min(60));
            let set = random_set(&f, d as u32, size, &mut rng);
            let ev = BoundEvaluator::new(&f, &set, &form, DEFAULT_BUDGET).unwrap();
            for r in f.nonzero_elements() {
                let report = ev.theorem_check(r).unwrap();
                assert!(
                    report.case_holds,
                    "q={q} d={d} eps={eps} |E|={size} r={r}: W={} rhs={}",
                    report.counts.w, report.case_bound
                );
            }
        }
    }
    pass(8, "case inequalities W(r) >= rhs", started);
}

#[test]
fn c09_threshold_even_dimensions() {
    let started = Instant::now();
    // q=5, d=2, |E| in 20..=25 (threshold 4·q^{d/2} = 20).
    let f5 = field(5);
    let form = StandardForm::new(&f5, 2, Fq(1)).unwrap();
    let mut rng = seeded_rng(909, 1);
    for _ in 0..50 {
        let size = rng.random_range(20..=25);
        let set = random_set(&f5, 2, size, &mut rng);
        let ev = BoundEvaluator::new(&f5, &set, &form, DEFAULT_BUDGET).unwrap();
        for r in f5.nonzero_elements() {
            let report = ev.theorem_check(r).unwrap();
            let t = report
                .thresholds
                .iter()
                .find(|t| t.rule == ThresholdRule::EvenAllRatios)
                .unwrap();
            assert!(t.size_condition_met);
            assert!(t.holds, "q=5 d=2 |E|={size} r={r}");
            // Cleared-denominator re-check: 48·q·W >= 5·|E|^4.
            let lhs = 48u128 * 5 * report.counts.w as u128;
            let rhs = 5u128 * (size as u128).pow(4);
            assert!(lhs >= rhs);
        }
    }
    // q=3, d=4, |E| in 36..=50 (threshold 4·q^{d/2} = 36).
    let f3 = field(3);
    let form = StandardForm::new(&f3, 4, Fq(1)).unwrap();
    let mut rng = seeded_rng(909, 2);
    for _ in 0..50 {
        let size = rng.random_range(36..=50);
        let set = random_set(&f3, 4, size, &mut rng);
        let ev = BoundEvaluator::new(&f3, &set, &form, DEFAULT_BUDGET).unwrap();
        for r in f3.nonzero_elements() {
            let report = ev.theorem_check(r).unwrap();
            let t = &report.thresholds[0];
            assert!(t.size_condition_met);
            assert!(t.holds, "q=3 d=4 |E|={size} r={r}");
        }
    }
    pass(9, "even-dim threshold bound 5|E|^4/(48q)", started);
}

#[test]
fn c10_threshold_odd_square_ratios() {
    let started = Instant::now();
    // q=5, d=3: |E| >= 34 clears |E|² >= 9·q^d = 1125.
    let f5 = field(5);
    let form = StandardForm::new(&f5, 3, Fq(1)).unwrap();
    let mut rng = seeded_rng(1010, 1);
    for _ in 0..50 {
        let size = rng.random_range(34..=60);
        let set = random_set(&f5, 3, size, &mut rng);
        let ev = BoundEvaluator::new(&f5, &set, &form, DEFAULT_BUDGET).unwrap();
        for r in f5.nonzero_elements() {
            if f5.eta(r).unwrap() != 1 {
                continue;
            }
            let report = ev.theorem_check(r).unwrap();
            let t = report
                .thresholds
                .iter()
                .find(|t| t.rule == ThresholdRule::OddSquareRatios)
                .unwrap();
            assert!(t.size_condition_met, "|E|={size}");
            assert!(t.holds, "q=5 d=3 |E|={size} r={r}");
            // 45·q·W >= 2·|E|^4 with q = 5.
            let lhs = 225u128 * report.counts.w as u128;
            let rhs = 2u128 * (size as u128).pow(4);
            assert!(lhs >= rhs, "|E|={size} r={r} W={}", report.counts.w);
        }
    }
    pass(10, "odd-dim square-ratio bound 2|E|^4/(45q)", started);
}

#[test]
fn c11_threshold_odd_all_ratios() {
    let started = Instant::now();
    // q=3, d=3: |E| >= 17 clears 6|E| >= 11·q^{(d+1)/2} = 99.
    let f3 = field(3);
    let form = StandardForm::new(&f3, 3, Fq(1)).unwrap();
    let mut rng = seeded_rng(1111, 1);
    for _ in 0..50 {
        let size = rng.random_range(17..=27);
        let set = random_set(&f3, 3, size, &mut rng);
        let ev = BoundEvaluator::new(&f3, &set, &form, DEFAULT_BUDGET).unwrap();
        for r in f3.nonzero_elements() {
            let report = ev.theorem_check(r).unwrap();
            let t = report
                .thresholds
                .iter()
                .find(|t| t.rule == ThresholdRule::OddAllRatios)
                .unwrap();
            assert!(t.size_condition_met, "|E|={size}");
            assert!(t.holds, "q=3 d=3 |E|={size} r={r}");
            // 363·q·W >= 2·|E|^4 with q = 3.
            let lhs = 1089u128 * report.counts.w as u128;
            let rhs = 2u128 * (size as u128).pow(4);
            assert!(lhs >= rhs);
        }
        // Quotient corollary at this size: the whole field.
        let report = ev.quotient_corollary().unwrap();
        assert!(report.equals_field, "|E|={size}");
        let check = report
            .checks
            .iter()
            .find(|c| c.rule == ThresholdRule::OddAllRatios)
            .unwrap();
        assert!(check.size_condition_met && check.relation_holds);
    }
    pass(11, "odd-dim all-ratio bound 2|E|^4/(363q)", started);
}

#[test]
fn c12_sharpness_constructions() {
    let started = Instant::now();
    for (q, d) in [(5u64, 2usize), (7, 2), (3, 4)] {
        let f = field(q);
        let built = sharpness::build_even(&f, d, Fq(1)).unwrap();
        let report = sharpness::analyze(&f, &built).unwrap();
        assert_eq!(report.set_size, q.pow(d as u32 / 2), "q={q} d={d}");
        assert!(report.size_matches);
        assert!(report.quotient_equals_squares, "q={q} d={d}");
        assert_eq!(report.squares.len() as u64, (q + 1) / 2);
        assert!(report.nonsquares_unrealized, "q={q} d={d}");
        // Every non-square ratio is an explicit W(r) = 0 witness.
        for r in f.nonzero_elements() {
            if f.eta(r).unwrap() == -1 {
                assert!(report.zero_ratio_witnesses.contains(&r.0));
            }
        }
    }
    for (q, d) in [(3u64, 3usize), (5, 3)] {
        let f = field(q);
        let built = sharpness::build_odd_full(&f, d, Fq(1)).unwrap();
        let report = sharpness::analyze(&f, &built).unwrap();
        assert_eq!(report.set_size, q.pow((d as u32 + 1) / 2), "q={q} d={d}");
        assert!(report.size_matches);
        assert!(report.quotient_equals_squares, "q={q} d={d}");
    }
    pass(12, "sharpness constructions", started);
}

#[test]
fn c13_oracle_equivalence() {
    let started = Instant::now();
    for (cfg_idx, (q, d)) in [(3u64, 2usize), (5, 2), (3, 3)].iter().enumerate() {
        let (q, d) = (*q, *d);
        let f = field(q);
        let form = StandardForm::new(&f, d, Fq(1)).unwrap();
        let space = space_size(f.order(), d as u32).unwrap();
        let mut rng = seeded_rng(1313, cfg_idx as u64 + 1);
        for _ in 0..100 {
            let size = rng.random_range(0..=space.min(12));
            let set = random_set(&f, d as u32, size, &mut rng);
            let hist = counting::distance_histogram(&f, &set, &form).unwrap();
            for r in f.nonzero_elements() {
                let fast = counting::w_of_r(&f, &hist, r).unwrap();
                let (m_slow, w_slow) = quadruple_oracle(&f, &set, &form, r);
                assert_eq!(fast.m, m_slow, "M q={q} d={d} |E|={size} r={r}");
                assert_eq!(fast.w, w_slow, "W q={q} d={d} |E|={size} r={r}");
            }
        }
    }
    pass(13, "histogram counts match quadruple oracle", started);
}

#[test]
fn c14_determinism_across_thread_counts() {
    let started = Instant::now();
    let cfg = |threads: usize| RunConfig {
        field: "5".into(),
        form: Some("standard:eps=1".into()),
        set: Some("random:20".into()),
        dim: Some(2),
        seed: 424242,
        threads,
        ..RunConfig::default()
    };
    let a = run::to_json(&run::run_bounds(&cfg(1), 8).unwrap()).unwrap();
    let b = run::to_json(&run::run_bounds(&cfg(4), 8).unwrap()).unwrap();
    assert_eq!(a, b, "bounds sweep must not depend on thread count");

    let verify = |threads: usize| {
        run::to_json(
            &run::run_verify(&VerifyOptions {
                max_q: 3,
                max_n: 2,
                threads,
                ..VerifyOptions::default()
            })
            .unwrap(),
        )
        .unwrap()
    };
    assert_eq!(
        verify(1),
        verify(3),
        "verify sweep must not depend on thread count"
    );
    pass(14, "byte-identical reports across threads", started);
}

/// Exactness guard used by several criteria indirectly: the rational
/// comparisons in the bounds module agree with plain integer arithmetic
/// on a hand-checked case.
#[test]
fn rational_comparison_sanity() {
    let lhs = BigRational::from(BigInt::from(7));
    let rhs = BigRational::new(BigInt::from(48), BigInt::from(7));
    assert!(lhs > rhs);
}
