//! Spheres and degree-2 diagonal varieties in `F_q^n`, and exact Fourier
//! transforms of their indicator functions.
//!
//! With the normalization `f̂(m) = q^{-n} Σ_x χ(-m·x) f(x)`, every value
//! here is reported in scaled form: a [`ScaledFourierValue`] carries the
//! integer-cyclotomic quantity `q^n · f̂(m)` together with the exponent
//! `n`, so no division ever happens inside the ring. Brute-force sums are
//! the oracle; the closed forms must agree with them exactly at every
//! frequency.

use crate::cyclotomic::Cyclotomic;
use crate::field::{Field, Fq};
use crate::forms::StandardForm;
use crate::points::{decode_point_into, dot, space_size, PointSet};
use crate::{Error, Result};

/// Default cap on `q^{2n}` character evaluations per sweep.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

/// The exact value `q^scale · f̂(m)` of a Fourier coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledFourierValue {
    pub value: Cyclotomic,
    pub scale: u32,
}

/// The ratio form `Q(x) - r·Q(x')` on `F_q^{2d}`, for a standard `Q` and
/// a nonzero ratio `r`.
#[derive(Clone, Debug)]
pub struct RatioSpec {
    form: StandardForm,
    r: Fq,
}

impl RatioSpec {
    pub fn new(form: StandardForm, r: Fq) -> Result<RatioSpec> {
        if r == Fq(0) {
            return Err(Error::Domain("ratio r must be nonzero".into()));
        }
        Ok(RatioSpec { form, r })
    }

    pub fn form(&self) -> &StandardForm {
        &self.form
    }

    pub fn r(&self) -> Fq {
        self.r
    }

    /// Coefficient vector of `Q(x) - r·Q(x')` as a diagonal form on
    /// `F_q^{2d}`: the concatenation `(a, -r·a)`.
    pub fn coefficient_vector(&self, field: &Field) -> Vec<Fq> {
        let a = self.form.coefficients();
        let mut out = Vec::with_capacity(2 * a.len());
        out.extend_from_slice(a);
        let minus_r = field.neg(self.r);
        out.extend(a.iter().map(|&c| field.mul(minus_r, c)));
        out
    }

    /// Coefficient vector of the dual form `Q*(m) - r^{-1}·Q*(m')`; this is
    /// the entrywise inverse of [`Self::coefficient_vector`].
    pub fn dual_coefficient_vector(&self, field: &Field) -> Vec<Fq> {
        let dual = self.form.dual(field);
        let a = dual.coefficients();
        let r_inv = field.inv(self.r).expect("r nonzero");
        let mut out = Vec::with_capacity(2 * a.len());
        out.extend_from_slice(a);
        let minus_r_inv = field.neg(r_inv);
        out.extend(a.iter().map(|&c| field.mul(minus_r_inv, c)));
        out
    }
}

fn qpow(q: u32, e: u32) -> Result<i128> {
    (q as i128).checked_pow(e).ok_or_else(|| {
        Error::InvalidParameter(format!("q^{e} with q = {q} overflows the exact range"))
    })
}

/// `Σ_j a_j x_j²` for a diagonal coefficient vector.
fn diagonal_value(field: &Field, a: &[Fq], x: &[Fq]) -> Fq {
    let mut acc = field.zero();
    for (&c, &xi) in a.iter().zip(x) {
        acc = field.add(acc, field.mul(c, field.mul(xi, xi)));
    }
    acc
}

fn check_nonzero_coefficients(a: &[Fq]) -> Result<()> {
    if a.iter().any(|&c| c == Fq(0)) {
        return Err(Error::Domain(
            "diagonal variety requires all coefficients nonzero".into(),
        ));
    }
    Ok(())
}

/// The sphere `{x : Q(x) = t}` enumerated over `F_q^d`.
pub fn sphere(field: &Field, form: &StandardForm, t: Fq) -> Result<PointSet> {
    let q = field.order();
    let d = form.dim() as u32;
    let mut x = vec![Fq(0); form.dim()];
    PointSet::from_fn(q, d, |idx| {
        decode_point_into(q, idx, &mut x);
        diagonal_value(field, form.coefficients(), &x) == t
    })
}

/// The variety `{x ∈ F_q^n : Σ a_j x_j² = 0}` for nonzero coefficients.
pub fn diagonal_variety(field: &Field, a: &[Fq]) -> Result<PointSet> {
    check_nonzero_coefficients(a)?;
    let q = field.order();
    let n = a.len() as u32;
    let mut x = vec![Fq(0); a.len()];
    PointSet::from_fn(q, n, |idx| {
        decode_point_into(q, idx, &mut x);
        diagonal_value(field, a, &x) == Fq(0)
    })
}

/// The dual variety `{m : Σ a_j^{-1} m_j² = 0}`.
pub fn dual_diagonal_variety(field: &Field, a: &[Fq]) -> Result<PointSet> {
    check_nonzero_coefficients(a)?;
    let inv: Vec<Fq> = a.iter().map(|&c| field.inv(c)).collect::<Result<_>>()?;
    diagonal_variety(field, &inv)
}

/// The zero set of `Q(x) - r·Q(x')` in `F_q^{2d}`, realized exactly as the
/// diagonal variety of the concatenated coefficient vector.
pub fn product_variety(field: &Field, spec: &RatioSpec) -> Result<PointSet> {
    diagonal_variety(field, &spec.coefficient_vector(field))
}

/// The zero set of `Q*(m) - r^{-1}·Q*(m')` in `F_q^{2d}`.
pub fn dual_product_variety(field: &Field, spec: &RatioSpec) -> Result<PointSet> {
    diagonal_variety(field, &spec.dual_coefficient_vector(field))
}

/// Brute-force scaled Fourier coefficient `Σ_{x∈S} χ(-m·x)`.
pub fn bruteforce(field: &Field, set: &PointSet, m: &[Fq]) -> Result<ScaledFourierValue> {
    if m.len() != set.dim() as usize {
        return Err(Error::DimensionMismatch {
            expected: set.dim() as usize,
            actual: m.len(),
        });
    }
    let p = field.p() as usize;
    let mut counts = vec![0i128; p];
    for x in set.points() {
        let e = field.trace(field.neg(dot(field, m, &x)));
        counts[e as usize] += 1;
    }
    Ok(ScaledFourierValue {
        value: Cyclotomic::from_zeta_counts(field.p(), &counts),
        scale: set.dim(),
    })
}

/// Full scaled Fourier table of an indicator set, one entry per frequency
/// index. Guarded by the `q^{2n}` character-evaluation budget.
pub fn set_table(field: &Field, set: &PointSet, budget: u64) -> Result<Vec<ScaledFourierValue>> {
    let q = field.order();
    let n = set.dim();
    let space = space_size(q, n)? as u128;
    let required = space * space;
    if required > budget as u128 {
        return Err(Error::BudgetExceeded {
            required,
            budget: budget as u128,
        });
    }

    let p = field.p() as usize;
    let members: Vec<Vec<Fq>> = set.points().collect();
    let mut table = Vec::with_capacity(space as usize);
    let mut m = vec![Fq(0); n as usize];
    for m_idx in 0..space as usize {
        decode_point_into(q, m_idx, &mut m);
        let mut counts = vec![0i128; p];
        for x in &members {
            let e = field.trace(field.neg(dot(field, &m, x)));
            counts[e as usize] += 1;
        }
        table.push(ScaledFourierValue {
            value: Cyclotomic::from_zeta_counts(field.p(), &counts),
            scale: n,
        });
    }
    Ok(table)
}

/// Squared magnitudes `|q^n Ê(m)|² = (q^n Ê)(m) · conj(...)` for every
/// frequency; cyclotomic values, not yet reduced to integers.
pub fn weight_table(field: &Field, set: &PointSet, budget: u64) -> Result<Vec<Cyclotomic>> {
    let table = set_table(field, set, budget)?;
    Ok(table
        .iter()
        .map(|v| &v.value * &v.value.conjugate())
        .collect())
}

/// Closed form for the scaled Fourier transform of a diagonal variety
/// `H_a` at frequency `m`.
///
/// Even `n`:  `q^n·Ĥ(m) = q^{n-1}δ₀(m) + σ·q^{n/2}·H_{a*}(m) - σ·q^{(n-2)/2}`
/// with `σ = η((-1)^{n/2} Π a_j)`.
///
/// Odd `n`: `q^{n-1}δ₀(m)` when `m ∈ H_{a*}`, otherwise
/// `q^{(n-1)/2} · η((-1)^{(n+3)/2} Π a_j) · η(Σ a_j^{-1} m_j²)`.
pub fn closed_diagonal(field: &Field, a: &[Fq], m: &[Fq]) -> Result<ScaledFourierValue> {
    check_nonzero_coefficients(a)?;
    if m.len() != a.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            actual: m.len(),
        });
    }
    let n = a.len() as u32;
    let q = field.order();
    let delta0 = m.iter().all(|&c| c == Fq(0));

    let mut prod = field.one();
    for &c in a {
        prod = field.mul(prod, c);
    }
    let inv: Vec<Fq> = a.iter().map(|&c| field.inv(c)).collect::<Result<_>>()?;
    let dual_val = diagonal_value(field, &inv, m);

    let val: i128 = if n % 2 == 0 {
        let sign_arg = if (n / 2) % 2 == 1 {
            field.neg(prod)
        } else {
            prod
        };
        let sigma = field.eta(sign_arg)? as i128;
        let member = i128::from(dual_val == Fq(0));
        i128::from(delta0) * qpow(q, n - 1)? + sigma * qpow(q, n / 2)? * member
            - sigma * qpow(q, (n - 2) / 2)?
    } else if dual_val == Fq(0) {
        i128::from(delta0) * qpow(q, n - 1)?
    } else {
        let sign_arg = if ((n + 3) / 2) % 2 == 1 {
            field.neg(prod)
        } else {
            prod
        };
        field.eta(sign_arg)? as i128 * field.eta(dual_val)? as i128 * qpow(q, (n - 1) / 2)?
    };

    Ok(ScaledFourierValue {
        value: Cyclotomic::from_int(field.p(), val),
        scale: n,
    })
}

/// Closed form for the scaled Fourier transform of the ratio variety
/// `V = {Q(x) - r·Q(x') = 0}` at frequency `M ∈ F_q^{2d}`.
///
/// Even `d`: `q^{2d}·V̂(M) = q^{2d-1}δ₀(M) + q^d·V*(M) - q^{d-1}`.
/// Odd `d`:  `q^{2d-1}δ₀(M) + η(r)·q^d·V*(M) - η(r)·q^{d-1}`.
pub fn closed_product_variety(
    field: &Field,
    spec: &RatioSpec,
    m: &[Fq],
) -> Result<ScaledFourierValue> {
    let d = spec.form().dim();
    if m.len() != 2 * d {
        return Err(Error::DimensionMismatch {
            expected: 2 * d,
            actual: m.len(),
        });
    }
    let q = field.order();
    let delta0 = m.iter().all(|&c| c == Fq(0));
    let dual = spec.dual_coefficient_vector(field);
    let member = i128::from(diagonal_value(field, &dual, m) == Fq(0));

    let sign: i128 = if d % 2 == 0 {
        1
    } else {
        field.eta(spec.r())? as i128
    };
    let val = i128::from(delta0) * qpow(q, 2 * d as u32 - 1)? + sign * qpow(q, d as u32)? * member
        - sign * qpow(q, d as u32 - 1)?;

    Ok(ScaledFourierValue {
        value: Cyclotomic::from_int(field.p(), val),
        scale: 2 * d as u32,
    })
}

/// Closed form for the scaled Fourier transform of the zero sphere
/// `(S_Q)_0` at frequency `m`.
///
/// Even `d`: `q^d·Ŝ(m) = q^{d-1}δ₀(m) + η(ε)·q^{d/2}·(S_{Q*})₀(m)
///            - η(ε)·q^{(d-2)/2}`.
/// Odd `d`:  `q^{d-1}δ₀(m)` when `m ∈ (S_{Q*})₀`, otherwise
///            `q^{(d-1)/2}·η(ε)·η(‖m‖_{Q*})`.
pub fn closed_sphere_zero(
    field: &Field,
    form: &StandardForm,
    m: &[Fq],
) -> Result<ScaledFourierValue> {
    let d = form.dim();
    if m.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            actual: m.len(),
        });
    }
    let q = field.order();
    let delta0 = m.iter().all(|&c| c == Fq(0));
    let dual = form.dual(field);
    let dual_val = dual.evaluate(field, m)?;
    let eta_eps = field.eta(form.epsilon())? as i128;

    let val: i128 = if d % 2 == 0 {
        let member = i128::from(dual_val == Fq(0));
        i128::from(delta0) * qpow(q, d as u32 - 1)? + eta_eps * qpow(q, d as u32 / 2)? * member
            - eta_eps * qpow(q, (d as u32 - 2) / 2)?
    } else if dual_val == Fq(0) {
        i128::from(delta0) * qpow(q, d as u32 - 1)?
    } else {
        eta_eps * field.eta(dual_val)? as i128 * qpow(q, (d as u32 - 1) / 2)?
    };

    Ok(ScaledFourierValue {
        value: Cyclotomic::from_int(field.p(), val),
        scale: d as u32,
    })
}
