//! Exact integers in the cyclotomic ring `Z[ζ_p]`, p an odd prime.
//!
//! An element is stored on the power basis `1, ζ, ..., ζ^{p-2}` after
//! reducing with `1 + ζ + ... + ζ^{p-1} = 0`. Because that basis is a free
//! `Z`-basis, the representation is canonical: two elements are equal iff
//! their coefficient vectors are equal, so `==` is exact ring equality.
//!
//! Coefficients are `i128`. Desk-scale sweeps (the budget guard caps
//! character evaluations at `q^{2n} ≤ 10^9`) keep every intermediate far
//! below the `i128` range; products are nevertheless checked and panic on
//! overflow, so a wrong answer can never come out of a wrapped coefficient.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// An exact element of `Z[ζ_p]` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cyclotomic {
    p: u32,
    /// Coefficients of `1, ζ, ..., ζ^{p-2}`.
    coeffs: Vec<i128>,
}

impl Cyclotomic {
    /// The zero element of `Z[ζ_p]`.
    pub fn zero(p: u32) -> Self {
        assert!(p >= 3, "Z[zeta_p] requires an odd prime p");
        Cyclotomic {
            p,
            coeffs: vec![0; (p - 1) as usize],
        }
    }

    pub fn one(p: u32) -> Self {
        Self::from_int(p, 1)
    }

    /// The rational integer `n` as a ring element.
    pub fn from_int(p: u32, n: i128) -> Self {
        let mut c = Self::zero(p);
        c.coeffs[0] = n;
        c
    }

    /// `ζ^k`, reduced into the canonical basis (`k` taken mod `p`).
    pub fn zeta_pow(p: u32, k: u32) -> Self {
        let mut counts = vec![0i128; p as usize];
        counts[(k % p) as usize] = 1;
        Self::from_zeta_counts(p, &counts)
    }

    /// Build from multiplicities of `ζ^0, ..., ζ^{p-1}` (the redundant
    /// basis); `ζ^{p-1}` is folded away via `ζ^{p-1} = -1 - ζ - ... - ζ^{p-2}`.
    ///
    /// This is the natural accumulator for character sums: tally how often
    /// each trace value occurs, then call this once.
    pub fn from_zeta_counts(p: u32, counts: &[i128]) -> Self {
        assert_eq!(counts.len(), p as usize);
        let top = counts[(p - 1) as usize];
        let coeffs = counts[..(p - 1) as usize]
            .iter()
            .map(|&c| c - top)
            .collect();
        Cyclotomic { p, coeffs }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Canonical coefficients on the basis `1, ζ, ..., ζ^{p-2}`.
    pub fn coefficients(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// `Some(n)` iff this element is the rational integer `n`.
    pub fn as_int(&self) -> Option<i128> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    /// Complex conjugation `ζ^k ↦ ζ^{p-k}`.
    pub fn conjugate(&self) -> Self {
        let p = self.p as usize;
        let mut counts = vec![0i128; p];
        for (k, &c) in self.coeffs.iter().enumerate() {
            let target = if k == 0 { 0 } else { p - k };
            counts[target] = c;
        }
        Self::from_zeta_counts(self.p, &counts)
    }

    /// Multiply by a rational integer; overflow panics.
    pub fn scaled(&self, n: i128) -> Self {
        Cyclotomic {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .map(|&c| c.checked_mul(n).expect("cyclotomic coefficient overflow"))
                .collect(),
        }
    }

    /// Exact division by a rational integer; `None` if any coefficient is
    /// not divisible.
    pub fn exact_div(&self, n: i128) -> Option<Self> {
        assert!(n != 0);
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for &c in &self.coeffs {
            if c % n != 0 {
                return None;
            }
            coeffs.push(c / n);
        }
        Some(Cyclotomic { p: self.p, coeffs })
    }

    /// Display-only complex rendering; never used for equality tests.
    pub fn to_complex(&self) -> (f64, f64) {
        let p = self.p as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, &c) in self.coeffs.iter().enumerate() {
            let angle = 2.0 * std::f64::consts::PI * (k as f64) / p;
            re += c as f64 * angle.cos();
            im += c as f64 * angle.sin();
        }
        (re, im)
    }

    fn assert_same_ring(&self, other: &Self) {
        assert_eq!(self.p, other.p, "mixed cyclotomic rings");
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.assert_same_ring(rhs);
        Cyclotomic {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.assert_same_ring(rhs);
        Cyclotomic {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.scaled(-1)
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.assert_same_ring(rhs);
        let p = self.p as usize;
        // Convolve in Z[x]/(x^p - 1), then canonicalize. Products are the
        // one place coefficients can grow fast, so they are checked: an
        // overflow panics instead of silently wrapping.
        let mut counts = vec![0i128; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                let term = a.checked_mul(b).expect("cyclotomic coefficient overflow");
                let slot = &mut counts[(i + j) % p];
                *slot = slot
                    .checked_add(term)
                    .expect("cyclotomic coefficient overflow");
            }
        }
        Cyclotomic::from_zeta_counts(self.p, &counts)
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        self.assert_same_ring(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        self.assert_same_ring(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.unsigned_abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic(p={}, {})", self.p, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn zeta_top_power_reduces() {
        // zeta^{p-1} = -1 - zeta - ... - zeta^{p-2}
        let z = Cyclotomic::zeta_pow(5, 4);
        assert_eq!(z.coefficients(), &[-1, -1, -1, -1]);
    }

    #[test]
    fn zeta_has_order_p() {
        for p in [3u32, 5, 7, 11] {
            let z = Cyclotomic::zeta_pow(p, 1);
            let mut acc = Cyclotomic::one(p);
            for _ in 0..p {
                acc = &acc * &z;
            }
            assert_eq!(acc, Cyclotomic::one(p));
        }
    }

    #[test]
    fn sum_of_all_roots_is_zero() {
        for p in [3u32, 5, 7] {
            let mut acc = Cyclotomic::zero(p);
            for k in 0..p {
                acc += &Cyclotomic::zeta_pow(p, k);
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn conjugation_is_an_involution_and_fixes_integers() {
        let x = Cyclotomic::from_zeta_counts(7, &[3, -1, 4, 0, 2, 0, 5]);
        assert_eq!(x.conjugate().conjugate(), x);
        let n = Cyclotomic::from_int(7, -42);
        assert_eq!(n.conjugate(), n);
    }

    #[test]
    fn as_int_detects_rational_integers() {
        assert_eq!(Cyclotomic::from_int(5, 9).as_int(), Some(9));
        assert_eq!(Cyclotomic::zeta_pow(5, 2).as_int(), None);
        // zeta + zeta^2 + zeta^3 + zeta^4 = -1
        let mut acc = Cyclotomic::zero(5);
        for k in 1..5 {
            acc += &Cyclotomic::zeta_pow(5, k);
        }
        assert_eq!(acc.as_int(), Some(-1));
    }

    #[test]
    fn exact_div_requires_divisibility() {
        let x = Cyclotomic::from_zeta_counts(3, &[6, 9, 0]);
        assert_eq!(
            x.exact_div(3).unwrap(),
            Cyclotomic::from_zeta_counts(3, &[2, 3, 0])
        );
        assert!(x.exact_div(4).is_none());
    }

    fn arb_cyclotomic(p: u32) -> impl Strategy<Value = Cyclotomic> {
        proptest::collection::vec(-50i128..50, (p - 1) as usize)
            .prop_map(move |coeffs| Cyclotomic { p, coeffs })
    }

    proptest! {
        #[test]
        fn additive_inverse(x in arb_cyclotomic(5)) {
            prop_assert!((&x + &(-&x)).is_zero());
        }

        #[test]
        fn mul_commutes_and_distributes(
            a in arb_cyclotomic(7),
            b in arb_cyclotomic(7),
            c in arb_cyclotomic(7),
        ) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn conjugation_is_multiplicative(a in arb_cyclotomic(5), b in arb_cyclotomic(5)) {
            prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
        }

        #[test]
        fn serialization_round_trips(x in arb_cyclotomic(11)) {
            let json = serde_json::to_string(&x).unwrap();
            let back: Cyclotomic = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(&back, &x);
            prop_assert_eq!(serde_json::to_string(&back).unwrap(), json);
        }
    }
}
