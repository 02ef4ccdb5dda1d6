//! Exact lower bounds on the quadruple count `W(r)`.
//!
//! Three unconditional case inequalities bound `W(r)` from below in terms
//! of `|E|`, a Fourier weight sum over the dual ratio variety, and (for
//! even dimension with square `ε`) a weight sum over the dual zero sphere.
//! On top of them sit the threshold bounds: once `|E|` clears a size
//! condition, `W(r)` is at least a fixed rational multiple of `|E|⁴/q`.
//!
//! All comparisons clear denominators and happen between
//! arbitrary-precision rationals; thresholds with half-integer exponents
//! (`|E| ≥ c·q^{d/2}` for odd `d`) are squared first so no irrational
//! number is ever formed.

use crate::counting::{self, CountReport, DistanceHistogram};
use crate::cyclotomic::Cyclotomic;
use crate::field::{Field, Fq};
use crate::forms::StandardForm;
use crate::points::{decode_point_into, PointSet};
use crate::{fourier, Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

/// Which unconditional case inequality applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundCase {
    /// Even dimension, `ε` a square.
    EvenSquareEps,
    /// Even dimension, `ε` a non-square.
    EvenNonsquareEps,
    /// Odd dimension.
    Odd,
}

/// Which threshold rule a check refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThresholdRule {
    /// Even `d`, `|E| ≥ 4·q^{d/2}`: `W(r) ≥ 5|E|⁴/(48q)` for every
    /// nonzero `r`.
    EvenAllRatios,
    /// Odd `d`, `|E| ≥ 3·q^{d/2}`: `W(r) ≥ 2|E|⁴/(45q)` for nonzero
    /// square `r`.
    OddSquareRatios,
    /// Odd `d`, `|E| ≥ (11/6)·q^{(d+1)/2}`: `W(r) ≥ 2|E|⁴/(363q)` for
    /// every nonzero `r`.
    OddAllRatios,
}

#[derive(Clone, Debug)]
pub struct WZeroBound {
    pub case: BoundCase,
    pub w0: u64,
    pub bound: BigRational,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct ThresholdCheck {
    pub rule: ThresholdRule,
    pub size_condition_met: bool,
    pub lower_bound: BigRational,
    /// Vacuously true when the size condition is not met.
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct BoundReport {
    pub r: Fq,
    pub case: BoundCase,
    pub counts: CountReport,
    pub case_bound: BigRational,
    pub case_holds: bool,
    pub thresholds: Vec<ThresholdCheck>,
}

#[derive(Clone, Debug)]
pub struct QuotientThresholdCheck {
    pub rule: ThresholdRule,
    pub size_condition_met: bool,
    /// Vacuously true when the size condition is not met.
    pub relation_holds: bool,
}

#[derive(Clone, Debug)]
pub struct QuotientReport {
    pub quotient: Vec<Fq>,
    pub squares: Vec<Fq>,
    pub equals_field: bool,
    pub contains_squares: bool,
    pub checks: Vec<QuotientThresholdCheck>,
}

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

fn qpow_big(q: u32, e: u32) -> BigInt {
    BigInt::from(q).pow(e)
}

fn ratio(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

/// Precomputed per-set state shared by every bound evaluation: the
/// distance histogram, the Fourier weight table `|q^d Ê(m)|²`, and its
/// level sums along the dual form.
pub struct BoundEvaluator<'a> {
    field: &'a Field,
    form: &'a StandardForm,
    set_size: u64,
    hist: DistanceHistogram,
    /// `level_sums[s] = Σ_{Q*(m) = s} |q^d Ê(m)|²` as cyclotomic values;
    /// only sums over full homogeneous varieties reduce to integers.
    level_sums: Vec<Cyclotomic>,
}

impl<'a> BoundEvaluator<'a> {
    pub fn new(
        field: &'a Field,
        set: &'a PointSet,
        form: &'a StandardForm,
        budget: u64,
    ) -> Result<Self> {
        let hist = counting::distance_histogram(field, set, form)?;
        let weights = fourier::weight_table(field, set, budget)?;
        let dual = form.dual(field);
        let q = field.order();
        let mut level_sums = vec![Cyclotomic::zero(field.p()); q as usize];
        let mut m = vec![Fq(0); form.dim()];
        for (idx, w) in weights.iter().enumerate() {
            decode_point_into(q, idx, &mut m);
            let level = dual.evaluate(field, &m)?;
            level_sums[level.0 as usize] += w;
        }
        Ok(BoundEvaluator {
            field,
            form,
            set_size: set.len(),
            hist,
            level_sums,
        })
    }

    pub fn histogram(&self) -> &DistanceHistogram {
        &self.hist
    }

    pub fn case(&self) -> BoundCase {
        let eta_eps = self.field.eta_unchecked(self.form.epsilon());
        if self.form.dim() % 2 == 0 {
            if eta_eps == 1 {
                BoundCase::EvenSquareEps
            } else {
                BoundCase::EvenNonsquareEps
            }
        } else {
            BoundCase::Odd
        }
    }

    /// `T1 = Σ_{m ∈ (S_{Q*})_0} |q^d Ê(m)|²`, reduced to an integer.
    ///
    /// The zero sphere is homogeneous, so the Galois action permutes its
    /// frequencies and the sum is a rational integer even though single
    /// terms need not be.
    fn sphere_zero_weight_sum(&self) -> Result<BigInt> {
        self.level_sums[0]
            .as_int()
            .filter(|&v| v >= 0)
            .map(BigInt::from)
            .ok_or_else(|| {
                Error::Internal(
                    "sphere-zero weight sum did not reduce to a non-negative integer".into(),
                )
            })
    }

    /// `T2 = Σ_{M ∈ V*} |q^d Ê(m)|²·|q^d Ê(m')|²` over the dual ratio
    /// variety `Q*(m) = r^{-1}·Q*(m')`, reduced to an integer.
    fn ratio_variety_weight_sum(&self, r: Fq) -> Result<BigInt> {
        let r_inv = self.field.inv(r)?;
        let mut acc = Cyclotomic::zero(self.field.p());
        for t in self.field.elements() {
            let lhs_level = self.field.mul(r_inv, t);
            acc += &(&self.level_sums[lhs_level.0 as usize] * &self.level_sums[t.0 as usize]);
        }
        acc.as_int()
            .filter(|&v| v >= 0)
            .map(BigInt::from)
            .ok_or_else(|| {
                Error::Internal(
                    "ratio-variety weight sum did not reduce to a non-negative integer".into(),
                )
            })
    }

    /// The applicable upper bound on `w(0)` and whether it holds.
    pub fn w_zero_bound(&self) -> Result<WZeroBound> {
        let d = self.form.dim() as u32;
        let q = self.field.order();
        let e = big(self.set_size);
        let e_sq_over_q = ratio(&e * &e, BigInt::from(q));
        let case = self.case();
        let bound = match case {
            BoundCase::EvenSquareEps => {
                // |E|²/q + q^{3d/2}·Σ_{m∈(S_{Q*})_0} |Ê(m)|²
                //   = |E|²/q + T1 / q^{d/2}.
                let t1 = self.sphere_zero_weight_sum()?;
                e_sq_over_q + ratio(t1, qpow_big(q, d / 2))
            }
            BoundCase::EvenNonsquareEps => {
                e_sq_over_q + BigRational::from(qpow_big(q, (d - 2) / 2) * &e)
            }
            BoundCase::Odd => e_sq_over_q + BigRational::from(qpow_big(q, (d - 1) / 2) * &e),
        };
        let w0 = self.hist.w_zero();
        let holds = BigRational::from(big(w0)) <= bound;
        Ok(WZeroBound {
            case,
            w0,
            bound,
            holds,
        })
    }

    /// The exact right-hand side of the applicable case inequality
    /// `W(r) ≥ rhs`.
    pub fn case_lower_bound(&self, r: Fq) -> Result<BigRational> {
        if r == Fq(0) {
            return Err(Error::Domain("ratio r must be nonzero".into()));
        }
        let d = self.form.dim() as u32;
        let q = self.field.order();
        let e = big(self.set_size);
        let e2 = &e * &e;
        let e4 = &e2 * &e2;
        let q_big = BigInt::from(q);

        let t2 = self.ratio_variety_weight_sum(r)?;
        // q^{3d} · Σ_{M∈V*} |(E×E)^(M)|² = T2 / q^d.
        let variety_term = ratio(t2, qpow_big(q, d));
        let main_term = ratio(e4, q_big.clone());
        let plancherel_term = BigRational::from(qpow_big(q, d - 1) * &e2);

        let rhs = match self.case() {
            BoundCase::EvenSquareEps => {
                let t1 = self.sphere_zero_weight_sum()?;
                let w0_bound = ratio(e2.clone(), q_big) + ratio(t1, qpow_big(q, d / 2));
                main_term + variety_term - plancherel_term - &w0_bound * &w0_bound
            }
            BoundCase::EvenNonsquareEps => {
                let w0_bound =
                    ratio(e2.clone(), q_big) + BigRational::from(qpow_big(q, (d - 2) / 2) * &e);
                main_term + variety_term - plancherel_term - &w0_bound * &w0_bound
            }
            BoundCase::Odd => {
                let sign = BigRational::from(BigInt::from(self.field.eta(r)?));
                let w0_bound =
                    ratio(e2.clone(), q_big) + BigRational::from(qpow_big(q, (d - 1) / 2) * &e);
                main_term + &sign * &(variety_term - plancherel_term) - &w0_bound * &w0_bound
            }
        };
        Ok(rhs)
    }

    /// Size conditions and threshold bounds for a single ratio.
    pub fn theorem_check(&self, r: Fq) -> Result<BoundReport> {
        let d = self.form.dim();
        if d < 2 {
            return Err(Error::Domain(
                "threshold bounds require dimension >= 2".into(),
            ));
        }
        let counts = counting::w_of_r(self.field, &self.hist, r)?;
        let case_bound = self.case_lower_bound(r)?;
        let w_rat = BigRational::from(big(counts.w));
        let case_holds = w_rat >= case_bound;

        let q = self.field.order();
        let e = big(self.set_size);
        let e2 = &e * &e;
        let e4 = &e2 * &e2;
        let mut thresholds = Vec::new();
        let mut push = |rule: ThresholdRule, met: bool, constant: (u64, u64)| {
            let lower_bound = ratio(
                BigInt::from(constant.0) * &e4,
                BigInt::from(constant.1) * BigInt::from(q),
            );
            let holds = !met || w_rat >= lower_bound;
            thresholds.push(ThresholdCheck {
                rule,
                size_condition_met: met,
                lower_bound,
                holds,
            });
        };

        if d % 2 == 0 {
            // |E| >= 4·q^{d/2}, exact in integers since d is even.
            let met = e >= big(4) * qpow_big(q, d as u32 / 2);
            push(ThresholdRule::EvenAllRatios, met, (5, 48));
        } else {
            if self.field.eta(r)? == 1 {
                // |E| >= 3·q^{d/2} squared: |E|² >= 9·q^d.
                let met = e2 >= big(9) * qpow_big(q, d as u32);
                push(ThresholdRule::OddSquareRatios, met, (2, 45));
            }
            // |E| >= (11/6)·q^{(d+1)/2} cleared: 6|E| >= 11·q^{(d+1)/2}.
            let met = big(6) * &e >= big(11) * qpow_big(q, (d as u32 + 1) / 2);
            push(ThresholdRule::OddAllRatios, met, (2, 363));
        }

        Ok(BoundReport {
            r,
            case: self.case(),
            counts,
            case_bound,
            case_holds,
            thresholds,
        })
    }

    /// Quotient-set relations under the threshold size conditions.
    pub fn quotient_corollary(&self) -> Result<QuotientReport> {
        let d = self.form.dim();
        if d < 2 {
            return Err(Error::Domain(
                "quotient corollary requires dimension >= 2".into(),
            ));
        }
        let q = self.field.order();
        let quotient = counting::quotient_set(self.field, &self.hist)?;
        let squares = counting::squares(self.field);
        let equals_field = quotient.len() == q as usize;
        let contains_squares = squares.iter().all(|s| quotient.binary_search(s).is_ok());

        let e = big(self.set_size);
        let mut checks = Vec::new();
        if d % 2 == 0 {
            let met = e >= big(4) * qpow_big(q, d as u32 / 2);
            checks.push(QuotientThresholdCheck {
                rule: ThresholdRule::EvenAllRatios,
                size_condition_met: met,
                relation_holds: !met || equals_field,
            });
        } else {
            let met_sq = &e * &e >= big(9) * qpow_big(q, d as u32);
            checks.push(QuotientThresholdCheck {
                rule: ThresholdRule::OddSquareRatios,
                size_condition_met: met_sq,
                relation_holds: !met_sq || contains_squares,
            });
            let met_all = big(6) * &e >= big(11) * qpow_big(q, (d as u32 + 1) / 2);
            checks.push(QuotientThresholdCheck {
                rule: ThresholdRule::OddAllRatios,
                size_condition_met: met_all,
                relation_holds: !met_all || equals_field,
            });
        }

        Ok(QuotientReport {
            quotient,
            squares,
            equals_field,
            contains_squares,
            checks,
        })
    }

    /// Exact identity for `w(0)` in even dimension:
    /// `w(0) = |E|²/q + η(ε)·(T1/q^{d/2} - q^{(d-2)/2}·|E|)`.
    /// An internal cross-check of the Fourier machinery.
    pub fn w_zero_exact_even(&self) -> Result<Option<bool>> {
        let d = self.form.dim() as u32;
        if d % 2 != 0 {
            return Ok(None);
        }
        let q = self.field.order();
        let e = big(self.set_size);
        let t1 = self.sphere_zero_weight_sum()?;
        let eta_eps = BigInt::from(self.field.eta(self.form.epsilon())?);
        let rhs = ratio(&e * &e, BigInt::from(q))
            + BigRational::from(eta_eps.clone()) * ratio(t1, qpow_big(q, d / 2))
            - BigRational::from(eta_eps * qpow_big(q, (d - 2) / 2) * &e);
        Ok(Some(BigRational::from(big(self.hist.w_zero())) == rhs))
    }
}

/// One-shot helpers mirroring the evaluator methods.
pub fn w_zero_bound(
    field: &Field,
    set: &PointSet,
    form: &StandardForm,
    budget: u64,
) -> Result<WZeroBound> {
    BoundEvaluator::new(field, set, form, budget)?.w_zero_bound()
}

pub fn case_lower_bound(
    field: &Field,
    set: &PointSet,
    form: &StandardForm,
    r: Fq,
    budget: u64,
) -> Result<BigRational> {
    BoundEvaluator::new(field, set, form, budget)?.case_lower_bound(r)
}

pub fn theorem_check(
    field: &Field,
    set: &PointSet,
    form: &StandardForm,
    r: Fq,
    budget: u64,
) -> Result<BoundReport> {
    BoundEvaluator::new(field, set, form, budget)?.theorem_check(r)
}

pub fn quotient_corollary_check(
    field: &Field,
    set: &PointSet,
    form: &StandardForm,
    budget: u64,
) -> Result<QuotientReport> {
    BoundEvaluator::new(field, set, form, budget)?.quotient_corollary()
}
