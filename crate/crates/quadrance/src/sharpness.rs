//! Extremal set constructions showing the size thresholds are tight.
//!
//! Three builders, all sitting inside a standard form's space:
//!
//! - `even`: for even `d`, a set of exactly `q^{d/2}` points whose
//!   quotient set is only the squares, so `W(r) = 0` for every non-square
//!   ratio.
//! - `odd-full`: for odd `d`, a set of exactly `q^{(d+1)/2}` points with
//!   the same square-only quotient set.
//! - `odd-delta`: for odd `d` and `0 < δ < 1/2`, a set of size about
//!   `q^{d/2-δ}` built from a short arithmetic progression in the prime
//!   subfield; the report compares its quotient set against the squares
//!   (the underlying shrinking argument is asymptotic, so the comparison
//!   is reported, not asserted).
//!
//! The duplicated-coordinate block `{(t₁,t₁,...,t_k,t_k)}` kills the
//! alternating part of the standard form, so only the trailing
//! `±ε·x_d²` coordinate contributes distances.

use crate::counting;
use crate::field::{Field, Fq};
use crate::forms::StandardForm;
use crate::points::{encode_point, PointSet};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SharpnessKind {
    Even,
    OddFull,
    OddDelta,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DeltaInfo {
    pub delta: f64,
    /// Length of the progression `B = {0, ..., b-1}` in the prime field.
    pub progression_len: u64,
    /// `|A| = b^ell`, the block built from the progression on the θ-basis.
    pub block_len: u64,
}

/// A built extremal example: the standard form it lives in, the point
/// set, and (for the δ construction) the progression parameters.
#[derive(Clone, Debug)]
pub struct SharpnessConstruction {
    pub kind: SharpnessKind,
    pub form: StandardForm,
    pub set: PointSet,
    pub expected_size: u64,
    pub delta: Option<DeltaInfo>,
}

/// Points `(t_1, t_1, ..., t_k, t_k)` in `F_q^{2k}`; the alternating sign
/// pattern of the standard form vanishes on every difference of two such
/// points.
fn duplicated_pairs_block(q: u32, half: usize) -> Vec<Vec<Fq>> {
    let mut out = Vec::new();
    let total = (q as u64).pow(half as u32);
    for mut idx in 0..total {
        let mut coords = Vec::with_capacity(2 * half);
        for _ in 0..half {
            let t = Fq((idx % q as u64) as u32);
            idx /= q as u64;
            coords.push(t);
            coords.push(t);
        }
        out.push(coords);
    }
    out
}

/// For even `d`: `q^{d/2}` points whose distances are exactly the squares.
/// `d = 2` uses the line `F_q × {0}`; `d ≥ 4` prefixes the duplicated
/// block.
pub fn build_even(field: &Field, d: usize, epsilon: Fq) -> Result<SharpnessConstruction> {
    if d < 2 || d % 2 != 0 {
        return Err(Error::Domain(format!(
            "even construction requires even dimension >= 2, got {d}"
        )));
    }
    let form = StandardForm::new(field, d, epsilon)?;
    let q = field.order();
    let mut set = PointSet::empty(q, d as u32)?;
    let prefixes: Vec<Vec<Fq>> = if d == 2 {
        vec![Vec::new()]
    } else {
        duplicated_pairs_block(q, (d - 2) / 2)
    };
    for prefix in &prefixes {
        for a in field.elements() {
            let mut coords = prefix.clone();
            coords.push(a);
            coords.push(Fq(0));
            set.insert(encode_point(q, &coords))?;
        }
    }
    let expected_size = (q as u64).pow(d as u32 / 2);
    Ok(SharpnessConstruction {
        kind: SharpnessKind::Even,
        form,
        set,
        expected_size,
        delta: None,
    })
}

/// For odd `d`: the duplicated block times a full line, `q^{(d+1)/2}`
/// points with square-only distances (up to the factor `ε`).
pub fn build_odd_full(field: &Field, d: usize, epsilon: Fq) -> Result<SharpnessConstruction> {
    if d < 3 || d % 2 == 0 {
        return Err(Error::Domain(format!(
            "odd-full construction requires odd dimension >= 3, got {d}"
        )));
    }
    let form = StandardForm::new(field, d, epsilon)?;
    let q = field.order();
    let mut set = PointSet::empty(q, d as u32)?;
    for prefix in &duplicated_pairs_block(q, (d - 1) / 2) {
        for a in field.elements() {
            let mut coords = prefix.clone();
            coords.push(a);
            set.insert(encode_point(q, &coords))?;
        }
    }
    let expected_size = (q as u64).pow((d as u32 + 1) / 2);
    Ok(SharpnessConstruction {
        kind: SharpnessKind::OddFull,
        form,
        set,
        expected_size,
        delta: None,
    })
}

/// For odd `d` and `0 < δ < 1/2`: the duplicated block times the set
/// `A = {b_0 + b_1·θ + ... : b_i ∈ B}` where `B = {0, ..., ⌈p^{1/2-δ}⌉-1}`
/// is an arithmetic progression in the prime field, so `|A| = |B|^ell`.
pub fn build_odd_delta(
    field: &Field,
    d: usize,
    epsilon: Fq,
    delta: f64,
) -> Result<SharpnessConstruction> {
    if d < 3 || d % 2 == 0 {
        return Err(Error::Domain(format!(
            "odd-delta construction requires odd dimension >= 3, got {d}"
        )));
    }
    if !(delta > 0.0 && delta < 0.5) {
        return Err(Error::Domain(format!(
            "delta must lie in (0, 1/2), got {delta}"
        )));
    }
    let form = StandardForm::new(field, d, epsilon)?;
    let q = field.order();
    let p = field.p() as u64;
    let b_len = ((p as f64).powf(0.5 - delta).ceil() as u64).clamp(1, p);

    // Elements whose base-p digits are all < b_len, i.e. the θ-basis block
    // over the progression.
    let mut block = Vec::new();
    for x in field.elements() {
        if field.coefficients(x).iter().all(|&c| (c as u64) < b_len) {
            block.push(x);
        }
    }
    debug_assert_eq!(block.len() as u64, b_len.pow(field.extension_degree()));

    let mut set = PointSet::empty(q, d as u32)?;
    for prefix in &duplicated_pairs_block(q, (d - 1) / 2) {
        for &a in &block {
            let mut coords = prefix.clone();
            coords.push(a);
            set.insert(encode_point(q, &coords))?;
        }
    }
    let block_len = block.len() as u64;
    let expected_size = block_len * (q as u64).pow((d as u32 - 1) / 2);
    Ok(SharpnessConstruction {
        kind: SharpnessKind::OddDelta,
        form,
        set,
        expected_size,
        delta: Some(DeltaInfo {
            delta,
            progression_len: b_len,
            block_len,
        }),
    })
}

/// Everything the extremal example claims, computed directly.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SharpnessReport {
    pub kind: SharpnessKind,
    pub q: u32,
    pub dim: usize,
    pub epsilon: u32,
    pub set_size: u64,
    pub expected_size: u64,
    pub size_matches: bool,
    pub distance_set: Vec<u32>,
    pub quotient_set: Vec<u32>,
    pub squares: Vec<u32>,
    pub quotient_equals_squares: bool,
    /// Strict inclusion in the squares; what the δ construction aims for.
    pub quotient_proper_subset_of_squares: bool,
    /// Nonzero ratios with `W(r) = 0`.
    pub zero_ratio_witnesses: Vec<u32>,
    /// Whether every non-square ratio has `W(r) = 0`.
    pub nonsquares_unrealized: bool,
    pub delta: Option<DeltaInfo>,
}

/// Compute the quotient set, the zero-`W` witnesses, and the square
/// comparison for a built construction.
pub fn analyze(field: &Field, built: &SharpnessConstruction) -> Result<SharpnessReport> {
    let hist = counting::distance_histogram(field, &built.set, &built.form)?;
    let distance_set: Vec<u32> = counting::distance_set(&hist).iter().map(|t| t.0).collect();
    let quotient: Vec<Fq> = counting::quotient_set(field, &hist)?;
    let squares = counting::squares(field);

    let mut zero_ratio_witnesses = Vec::new();
    let mut nonsquares_unrealized = true;
    for r in field.nonzero_elements() {
        let w = counting::w_of_r(field, &hist, r)?.w;
        if w == 0 {
            zero_ratio_witnesses.push(r.0);
        } else if field.eta(r)? == -1 {
            nonsquares_unrealized = false;
        }
    }

    let quotient_equals_squares = quotient == squares;
    let quotient_proper_subset_of_squares =
        !quotient_equals_squares && quotient.iter().all(|r| squares.binary_search(r).is_ok());

    Ok(SharpnessReport {
        kind: built.kind,
        q: field.order(),
        dim: built.form.dim(),
        epsilon: built.form.epsilon().0,
        set_size: built.set.len(),
        expected_size: built.expected_size,
        size_matches: built.set.len() == built.expected_size,
        distance_set,
        quotient_set: quotient.iter().map(|r| r.0).collect(),
        squares: squares.iter().map(|s| s.0).collect(),
        quotient_equals_squares,
        quotient_proper_subset_of_squares,
        zero_ratio_witnesses,
        nonsquares_unrealized,
        delta: built.delta.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> Field {
        Field::parse(&q.to_string()).unwrap()
    }

    #[test]
    fn even_plane_construction() {
        let f7 = f(7);
        let built = build_even(&f7, 2, Fq(1)).unwrap();
        let report = analyze(&f7, &built).unwrap();
        assert_eq!(report.set_size, 7);
        assert!(report.size_matches);
        assert!(report.quotient_equals_squares);
        assert_eq!(report.squares.len() as u64, (7 + 1) / 2);
        assert!(report.nonsquares_unrealized);
        // Every non-square shows up as a zero-W witness.
        for r in f7.nonzero_elements() {
            if f7.eta(r).unwrap() == -1 {
                assert!(report.zero_ratio_witnesses.contains(&r.0));
            }
        }
    }

    #[test]
    fn even_dim_four_construction() {
        let f3 = f(3);
        let built = build_even(&f3, 4, Fq(1)).unwrap();
        let report = analyze(&f3, &built).unwrap();
        assert_eq!(report.set_size, 9);
        assert!(report.size_matches);
        assert!(report.quotient_equals_squares);
        assert!(report.nonsquares_unrealized);
    }

    #[test]
    fn even_rejects_odd_dimension() {
        let f3 = f(3);
        assert!(build_even(&f3, 3, Fq(1)).is_err());
        assert!(build_odd_full(&f3, 2, Fq(1)).is_err());
    }

    #[test]
    fn odd_full_construction() {
        for q in [3u64, 5] {
            let field = f(q);
            let built = build_odd_full(&field, 3, Fq(1)).unwrap();
            let report = analyze(&field, &built).unwrap();
            assert_eq!(report.set_size, q * q);
            assert!(report.size_matches);
            assert!(report.quotient_equals_squares, "q={q}");
            assert!(!report.zero_ratio_witnesses.is_empty());
        }
    }

    #[test]
    fn odd_full_with_nonsquare_epsilon() {
        // Distances become ε·(squares) but the quotient set is still the
        // squares.
        let f5 = f(5);
        let built = build_odd_full(&f5, 3, f5.smallest_nonsquare()).unwrap();
        let report = analyze(&f5, &built).unwrap();
        assert!(report.quotient_equals_squares);
    }

    #[test]
    fn duplicated_block_has_the_claimed_size() {
        let block = duplicated_pairs_block(3, 2);
        assert_eq!(block.len(), 9); // q^{(d-1)/2} with d = 5
        for coords in &block {
            assert_eq!(coords.len(), 4);
            assert_eq!(coords[0], coords[1]);
            assert_eq!(coords[2], coords[3]);
        }
    }

    #[test]
    fn delta_construction_sizes() {
        // p=13, ell=1, d=3, delta=0.25: |B| = ceil(13^{0.25}) = 2,
        // |E| = 13 · 2 = 26.
        let f13 = f(13);
        let built = build_odd_delta(&f13, 3, Fq(1), 0.25).unwrap();
        let info = built.delta.clone().unwrap();
        assert_eq!(info.progression_len, 2);
        assert_eq!(info.block_len, 2);
        assert_eq!(built.set.len(), 26);
        let report = analyze(&f13, &built).unwrap();
        assert!(report.size_matches);
        // The quotient set can only contain squares here.
        assert!(report
            .quotient_set
            .iter()
            .all(|r| report.squares.contains(r)));
    }

    #[test]
    fn delta_block_len_is_progression_power() {
        let f9 = f(9);
        let built = build_odd_delta(&f9, 3, Fq(1), 0.3).unwrap();
        let info = built.delta.clone().unwrap();
        assert_eq!(info.block_len, info.progression_len.pow(2)); // ell = 2
    }

    #[test]
    fn delta_range_is_enforced() {
        let f5 = f(5);
        assert!(build_odd_delta(&f5, 3, Fq(1), 0.0).is_err());
        assert!(build_odd_delta(&f5, 3, Fq(1), 0.5).is_err());
    }

    #[test]
    fn progression_difference_set_is_short() {
        // |B - B| = 2|B| - 1 for the chosen progression.
        let f13 = f(13);
        let built = build_odd_delta(&f13, 3, Fq(1), 0.25).unwrap();
        let b = built.delta.unwrap().progression_len as i64;
        let p = 13i64;
        let mut diffs = std::collections::HashSet::new();
        for x in 0..b {
            for y in 0..b {
                diffs.insert((x - y).rem_euclid(p));
            }
        }
        assert_eq!(diffs.len() as i64, 2 * b - 1);
    }
}
