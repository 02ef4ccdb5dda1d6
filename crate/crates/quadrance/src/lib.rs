//! Exact arithmetic for quadratic distance sets over finite fields.
//!
//! Everything here is computed in exact arithmetic: field elements live in
//! `F_q` (q an odd prime power), character sums live in the cyclotomic ring
//! `Z[ζ_p]`, and bound comparisons are done with arbitrary-precision
//! rationals. No floating point ever enters a verification path; the only
//! `f64` in the crate is a display-only complex rendering of cyclotomic
//! values.
//!
//! The main pieces:
//!
//! - [`field`]: `F_q` as a polynomial quotient ring, the absolute trace,
//!   the canonical additive character `χ`, the quadratic character `η`,
//!   and Gauss sums.
//! - [`cyclotomic`]: exact integers in `Z[ζ_p]`, the value space of all
//!   character sums.
//! - [`forms`]: non-degenerate quadratic forms, congruence reduction to
//!   diagonal standard shape, and dual forms.
//! - [`points`]: subsets of `F_q^n` with fast membership.
//! - [`fourier`]: spheres and degree-2 diagonal varieties, their Fourier
//!   transforms by brute force and by closed form.
//! - [`counting`]: distance histograms, the quadruple counts `M(r)` and
//!   `W(r)`, distance and quotient sets, and an exact counting identity
//!   checker.
//! - [`bounds`]: lower bounds on `W(r)` with exact rational comparisons.
//! - [`sharpness`]: extremal set constructions showing the size thresholds
//!   are tight.
//! - [`run`]: the report-producing drivers behind the `quadrance` binary.
//!
//! See the crate examples (`cargo run --example gauss_sums`, etc.) for a
//! guided tour.

pub mod bounds;
pub mod counting;
pub mod cyclotomic;
pub mod field;
pub mod forms;
pub mod fourier;
pub mod points;
pub mod run;
pub mod sharpness;

pub use cyclotomic::Cyclotomic;
pub use field::{Field, Fq};
pub use forms::{Matrix, QuadraticForm, StandardForm};
pub use fourier::{RatioSpec, ScaledFourierValue, DEFAULT_BUDGET};
pub use points::PointSet;

/// Errors shared by every module in the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A constructor argument violates its precondition (q even, p not
    /// prime, degenerate form, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Multiplicative inverse of zero.
    #[error("division by zero in F_q")]
    DivisionByZero,

    /// An operation was called outside its domain (eta at 0, ratio r = 0,
    /// zero coefficient in a diagonal variety, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Vector or matrix dimensions do not match.
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// A sweep would exceed the configured character-evaluation budget.
    #[error("budget exceeded: requires {required} character evaluations, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    /// An exact identity that must hold by construction failed; this
    /// signals an arithmetic bug, not bad input.
    #[error("internal consistency failure: {0}")]
    Internal(String),

    /// Malformed spec string or input file.
    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
