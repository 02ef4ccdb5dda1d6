//! Distance histograms and quadruple counts for the ratio problem.
//!
//! For `E ⊂ F_q^d` and a standard form `Q`, the histogram `w(t)` counts
//! ordered pairs at quadratic distance `t`. Everything else reduces to it:
//! `M(r) = Σ_t w(r·t)·w(t)` counts quadruples with `Q(x-y) = r·Q(z-w)`,
//! and `W(r) = M(r) - w(0)²` counts those whose denominator distance is
//! nonzero, so `W(r) > 0` iff `r` lies in the quotient set of the distance
//! set. The histogram route turns the O(|E|⁴) definition into O(|E|² + q);
//! an independent quadruple-enumeration oracle lives in the test suite.

use crate::field::{Field, Fq};
use crate::forms::StandardForm;
use crate::points::{space_size, PointSet};
use crate::{fourier, Error, Result};
use serde::{Deserialize, Serialize};

/// Counts `w(t)` of ordered pairs of `E` at each quadratic distance `t`,
/// indexed by the canonical index of `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceHistogram {
    q: u32,
    set_size: u64,
    counts: Vec<u64>,
}

impl DistanceHistogram {
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Cardinality of the underlying set.
    pub fn set_size(&self) -> u64 {
        self.set_size
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, t: Fq) -> u64 {
        self.counts[t.0 as usize]
    }

    /// `w(0)`, the number of ordered pairs at distance zero.
    pub fn w_zero(&self) -> u64 {
        self.counts[0]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Count ordered pairs of `E` at every quadratic distance.
pub fn distance_histogram(
    field: &Field,
    set: &PointSet,
    form: &StandardForm,
) -> Result<DistanceHistogram> {
    if set.dim() as usize != form.dim() {
        return Err(Error::DimensionMismatch {
            expected: form.dim(),
            actual: set.dim() as usize,
        });
    }
    if set.q() != field.order() {
        return Err(Error::InvalidParameter(
            "point set belongs to a different field".into(),
        ));
    }
    let members: Vec<Vec<Fq>> = set.points().collect();
    let coeffs = form.coefficients();
    let mut counts = vec![0u64; field.order() as usize];
    let mut diff = vec![Fq(0); form.dim()];
    for x in &members {
        for y in &members {
            for ((d, &xi), &yi) in diff.iter_mut().zip(x).zip(y) {
                *d = field.sub(xi, yi);
            }
            let mut acc = field.zero();
            for (&a, &di) in coeffs.iter().zip(&diff) {
                acc = field.add(acc, field.mul(a, field.mul(di, di)));
            }
            counts[acc.0 as usize] += 1;
        }
    }
    Ok(DistanceHistogram {
        q: field.order(),
        set_size: set.len(),
        counts,
    })
}

/// `w(0)` for a set, via the histogram.
pub fn w_zero(field: &Field, set: &PointSet, form: &StandardForm) -> Result<u64> {
    Ok(distance_histogram(field, set, form)?.w_zero())
}

/// `M(r) = Σ_t w(r·t)·w(t)`, the quadruples with `Q(x-y) = r·Q(z-w)`.
pub fn m_of_r(field: &Field, hist: &DistanceHistogram, r: Fq) -> Result<u64> {
    if r == Fq(0) {
        return Err(Error::Domain("ratio r must be nonzero".into()));
    }
    let mut acc: u128 = 0;
    for t in field.elements() {
        let rt = field.mul(r, t);
        acc += hist.count(rt) as u128 * hist.count(t) as u128;
    }
    acc.try_into()
        .map_err(|_| Error::Internal("quadruple count exceeds u64".into()))
}

/// One row of quadruple counts for a ratio `r`: `W = M - w0²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    /// Canonical index of the ratio.
    pub r: u32,
    #[serde(rename = "W")]
    pub w: u64,
    #[serde(rename = "M")]
    pub m: u64,
    pub w0: u64,
}

/// `W(r) = M(r) - w(0)²`: quadruples realizing the ratio `r` with a
/// nonzero denominator distance.
pub fn w_of_r(field: &Field, hist: &DistanceHistogram, r: Fq) -> Result<CountReport> {
    let m = m_of_r(field, hist, r)?;
    let w0 = hist.w_zero();
    let w0_sq: u128 = w0 as u128 * w0 as u128;
    let w = (m as u128)
        .checked_sub(w0_sq)
        .ok_or_else(|| Error::Internal("W(r) = M(r) - w0^2 went negative".into()))?;
    Ok(CountReport {
        r: r.0,
        w: w as u64,
        m,
        w0,
    })
}

/// Convenience wrapper building the histogram first.
pub fn count_report(
    field: &Field,
    set: &PointSet,
    form: &StandardForm,
    r: Fq,
) -> Result<CountReport> {
    let hist = distance_histogram(field, set, form)?;
    w_of_r(field, &hist, r)
}

/// The distance set `Δ_Q(E)` as sorted canonical indices.
pub fn distance_set(hist: &DistanceHistogram) -> Vec<Fq> {
    hist.counts
        .iter()
        .enumerate()
        .filter_map(|(t, &c)| (c > 0).then_some(Fq(t as u32)))
        .collect()
}

/// The quotient set `Δ_Q(E)/Δ_Q(E)` as sorted canonical indices.
///
/// A nonzero `r` belongs iff `W(r) > 0`; zero belongs iff the distance
/// set contains some nonzero element (then `0 = Q(x-x)/Q(z-w)`).
pub fn quotient_set(field: &Field, hist: &DistanceHistogram) -> Result<Vec<Fq>> {
    let mut out = Vec::new();
    let has_nonzero_distance = hist.counts[1..].iter().any(|&c| c > 0);
    if has_nonzero_distance {
        out.push(Fq(0));
    }
    for r in field.nonzero_elements() {
        if w_of_r(field, hist, r)?.w > 0 {
            out.push(r);
        }
    }
    Ok(out)
}

/// The set of squares `(F_q)² = {a² : a ∈ F_q}` (including 0), sorted.
pub fn squares(field: &Field) -> Vec<Fq> {
    let mut out: Vec<Fq> = field
        .elements()
        .filter(|&x| x == Fq(0) || field.eta(x).unwrap() == 1)
        .collect();
    out.sort();
    out
}

/// Outcome of the exact counting identity between the pair count and the
/// Fourier-side sum.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CountingLemmaReport {
    pub pair_count: u64,
    pub fourier_side: u64,
    pub holds: bool,
}

/// Verify, exactly, that `#{(x,y) ∈ S² : x-y ∈ V}` equals
/// `q^{-n} · Σ_M (q^n V̂)(M) · |(q^n Ŝ)(M)|²`.
///
/// The right side is accumulated in `Z[ζ_p]` and divided by `q^n` at the
/// end; a non-exact division or a non-integer result is reported as an
/// internal-consistency failure since it can only come from an arithmetic
/// bug.
pub fn verify_counting_lemma(
    field: &Field,
    s: &PointSet,
    v: &PointSet,
    budget: u64,
) -> Result<CountingLemmaReport> {
    if s.dim() != v.dim() || s.q() != v.q() {
        return Err(Error::DimensionMismatch {
            expected: v.dim() as usize,
            actual: s.dim() as usize,
        });
    }
    let q = field.order();
    let n = s.dim();
    let space = space_size(q, n)? as u128;
    if space * space > budget as u128 {
        return Err(Error::BudgetExceeded {
            required: space * space,
            budget: budget as u128,
        });
    }

    let members: Vec<Vec<Fq>> = s.points().collect();
    let mut diff = vec![Fq(0); n as usize];
    let mut pair_count: u64 = 0;
    for x in &members {
        for y in &members {
            for ((d, &xi), &yi) in diff.iter_mut().zip(x).zip(y) {
                *d = field.sub(xi, yi);
            }
            if v.contains_point(&diff) {
                pair_count += 1;
            }
        }
    }

    let v_table = fourier::set_table(field, v, budget)?;
    let s_table = fourier::set_table(field, s, budget)?;
    let mut acc = crate::Cyclotomic::zero(field.p());
    for (vm, sm) in v_table.iter().zip(&s_table) {
        acc += &(&(&vm.value * &sm.value) * &sm.value.conjugate());
    }
    let qn = (q as i128).pow(n);
    let reduced = acc
        .exact_div(qn)
        .ok_or_else(|| Error::Internal("counting identity: q^n does not divide the sum".into()))?;
    let fourier_side = reduced.as_int().filter(|&x| x >= 0).ok_or_else(|| {
        Error::Internal("counting identity: Fourier side is not a non-negative integer".into())
    })?;

    Ok(CountingLemmaReport {
        pair_count,
        fourier_side: fourier_side as u64,
        holds: pair_count as i128 == fourier_side,
    })
}
