//! Report-producing drivers behind the `quadrance` binary.
//!
//! Each driver takes a parsed configuration, computes with the library,
//! and returns a serializable report plus a pass flag. Reports embed the
//! field descriptor, seed, and crate version so a report reproduces
//! itself; they never embed the thread count, and all sweeps are
//! partitioned deterministically, so the same configuration and seed give
//! byte-identical output at any parallelism.

use crate::bounds::{BoundCase, BoundEvaluator, ThresholdRule};
use crate::counting::{self, CountReport};
use crate::cyclotomic::Cyclotomic;
use crate::field::{Field, Fq};
use crate::forms::{standardize, Matrix, QuadraticForm, StandardForm};
use crate::fourier::{self, RatioSpec, DEFAULT_BUDGET};
use crate::points::{decode_point, space_size, PointSet};
use crate::sharpness::{self, SharpnessKind, SharpnessReport};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::Parse(format!(
                "unknown output format {other:?} (expected json or csv)"
            ))),
        }
    }
}

/// Semantic run parameters; thread count is excluded from every report so
/// outputs are byte-identical across parallelism levels.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub field: String,
    pub form: Option<String>,
    pub set: Option<String>,
    pub dim: Option<usize>,
    pub seed: u64,
    pub budget: u64,
    pub threads: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            field: String::new(),
            form: None,
            set: None,
            dim: None,
            seed: 0,
            budget: DEFAULT_BUDGET,
            threads: 1,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportHeader {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub field: String,
    pub modulus: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub form: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub set: Option<String>,
    pub seed: u64,
    pub budget: u64,
}

fn header(command: &'static str, field: &Field, cfg: &RunConfig) -> ReportHeader {
    ReportHeader {
        tool: "quadrance",
        version: env!("CARGO_PKG_VERSION"),
        command,
        field: field.spec_string(),
        modulus: field.modulus_string(),
        form: cfg.form.clone(),
        set: cfg.set.clone(),
        seed: cfg.seed,
        budget: cfg.budget,
    }
}

/// Ordered parallel map: results come back in input order, so output does
/// not depend on the number of worker threads.
pub fn map_ordered<T, R, F>(threads: usize, items: Vec<T>, f: F) -> Result<Vec<R>>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    if threads <= 1 || items.len() <= 1 {
        return Ok(items.into_iter().map(f).collect());
    }
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    Ok(pool.install(|| items.into_par_iter().map(f).collect()))
}

/// A standard form plus the change of basis that produced it (absent when
/// the spec named a standard form directly).
pub struct ResolvedForm {
    pub standard: StandardForm,
    pub basis_change: Option<Matrix>,
    pub description: String,
}

/// Parse a form spec: `euclidean`, `standard:eps=<k>`, or a path to a
/// matrix file.
pub fn resolve_form(field: &Field, spec: &str, dim: usize) -> Result<ResolvedForm> {
    if spec == "euclidean" {
        let (standard, c) = standardize(field, &QuadraticForm::euclidean(dim))?;
        let description = format!("euclidean (standardized, eps={})", standard.epsilon().0);
        return Ok(ResolvedForm {
            standard,
            basis_change: Some(c),
            description,
        });
    }
    if let Some(rest) = spec.strip_prefix("standard:eps=") {
        let k: u64 = rest
            .parse()
            .map_err(|_| Error::Parse(format!("bad epsilon index in {spec:?}")))?;
        let standard = StandardForm::new(field, dim, field.element(k)?)?;
        return Ok(ResolvedForm {
            standard,
            basis_change: None,
            description: spec.to_string(),
        });
    }
    let text = std::fs::read_to_string(spec)?;
    let form = QuadraticForm::parse_matrix_text(field, &text)?;
    if form.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            actual: form.dim(),
        });
    }
    let (standard, c) = standardize(field, &form)?;
    let description = format!("file:{spec} (standardized, eps={})", standard.epsilon().0);
    Ok(ResolvedForm {
        standard,
        basis_change: Some(c),
        description,
    })
}

/// Parse a set source: a point-set file path, `random:<size>`, or
/// `sharpness:<kind>[:key=value...]`.
pub fn resolve_set(field: &Field, spec: &str, dim: usize, seed: u64) -> Result<PointSet> {
    if let Some(rest) = spec.strip_prefix("random:") {
        let size: usize = rest
            .parse()
            .map_err(|_| Error::Parse(format!("bad random set size in {spec:?}")))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        return PointSet::random_subset(field.order(), dim as u32, size, &mut rng);
    }
    if spec.starts_with("sharpness:") {
        return Ok(build_sharpness_from_spec(field, spec, dim)?.set);
    }
    let text = std::fs::read_to_string(spec)?;
    let set = PointSet::parse_file_text(&text)?;
    if set.q() != field.order() {
        return Err(Error::Parse(format!(
            "point-set file is over F_{} but the field is F_{}",
            set.q(),
            field.order()
        )));
    }
    if set.dim() as usize != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            actual: set.dim() as usize,
        });
    }
    Ok(set)
}

/// Dimension implied by a set source, when it carries one (a file header).
pub fn set_spec_dimension(spec: &str) -> Result<Option<usize>> {
    if spec.starts_with("random:") {
        return Ok(None);
    }
    if let Some(rest) = spec.strip_prefix("sharpness:") {
        for part in rest.split(':').skip(1) {
            if let Some(v) = part.strip_prefix("d=") {
                let d: usize = v
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad dimension in {spec:?}")))?;
                return Ok(Some(d));
            }
        }
        return Ok(None);
    }
    let text = std::fs::read_to_string(spec)?;
    let set = PointSet::parse_file_text(&text)?;
    Ok(Some(set.dim() as usize))
}

fn build_sharpness_from_spec(
    field: &Field,
    spec: &str,
    default_dim: usize,
) -> Result<sharpness::SharpnessConstruction> {
    let rest = spec
        .strip_prefix("sharpness:")
        .ok_or_else(|| Error::Parse(format!("bad sharpness spec {spec:?}")))?;
    let mut parts = rest.split(':');
    let kind = parts
        .next()
        .ok_or_else(|| Error::Parse("sharpness spec missing kind".into()))?;
    let mut d = default_dim;
    let mut eps = field.one();
    let mut delta = 0.25f64;
    for part in parts {
        if let Some(v) = part.strip_prefix("d=") {
            d = v
                .parse()
                .map_err(|_| Error::Parse(format!("bad dimension {v:?}")))?;
        } else if let Some(v) = part.strip_prefix("eps=") {
            let idx: u64 = v
                .parse()
                .map_err(|_| Error::Parse(format!("bad epsilon index {v:?}")))?;
            eps = field.element(idx)?;
        } else if let Some(v) = part.strip_prefix("delta=") {
            delta = v
                .parse()
                .map_err(|_| Error::Parse(format!("bad delta {v:?}")))?;
        } else {
            return Err(Error::Parse(format!(
                "unknown sharpness parameter {part:?}"
            )));
        }
    }
    if d == 0 {
        return Err(Error::Parse(
            "sharpness spec needs a dimension (d=<n> or --dim)".into(),
        ));
    }
    match kind {
        "even" => sharpness::build_even(field, d, eps),
        "odd-full" => sharpness::build_odd_full(field, d, eps),
        "odd-delta" => sharpness::build_odd_delta(field, d, eps, delta),
        other => Err(Error::Parse(format!(
            "unknown sharpness kind {other:?} (expected even, odd-full, odd-delta)"
        ))),
    }
}

// --------------------------------------------------------------------
// verify
// --------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub max_q: u32,
    pub max_n: u32,
    pub seed: u64,
    pub budget: u64,
    pub threads: usize,
    /// Test mode: deliberately negate closed-form diagonal transforms away
    /// from the zero frequency, to confirm the harness catches sign bugs.
    pub inject_sign_error: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_q: 9,
            max_n: 4,
            seed: 0,
            budget: DEFAULT_BUDGET,
            threads: 1,
            inject_sign_error: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub checks: u64,
    pub failures: Vec<String>,
    pub pass: bool,
}

fn suite_outcome(name: &'static str, parts: Vec<(u64, Vec<String>)>) -> SuiteOutcome {
    let mut checks = 0;
    let mut failures = Vec::new();
    for (c, mut f) in parts {
        checks += c;
        failures.append(&mut f);
    }
    failures.truncate(20);
    SuiteOutcome {
        name,
        checks,
        pass: failures.is_empty(),
        failures,
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub max_q: u32,
    pub max_n: u32,
    pub seed: u64,
    pub budget: u64,
    pub fields: Vec<String>,
    pub suites: Vec<SuiteOutcome>,
    pub pass: bool,
}

fn grid_fields(max_q: u32) -> Vec<Field> {
    (3..=max_q.max(3))
        .filter_map(|q| Field::parse(&q.to_string()).ok())
        .collect()
}

/// Run every exact-identity suite over the configured grid.
pub fn run_verify(opts: &VerifyOptions) -> Result<VerifyReport> {
    let fields = grid_fields(opts.max_q);
    if fields.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "no odd prime powers <= {}",
            opts.max_q
        )));
    }

    let suites = vec![
        suite_additive_orthogonality(&fields, opts)?,
        suite_multiplicative_orthogonality(&fields)?,
        suite_gauss_identities()?,
        suite_quadratic_closed_forms()?,
        suite_diagonal_fourier(&fields, opts)?,
        suite_product_fourier(opts)?,
        suite_sphere_fourier(opts)?,
        suite_counting_identity(opts)?,
    ];

    let pass = suites.iter().all(|s| s.pass);
    Ok(VerifyReport {
        tool: "quadrance",
        version: env!("CARGO_PKG_VERSION"),
        command: "verify",
        max_q: opts.max_q,
        max_n: opts.max_n,
        seed: opts.seed,
        budget: opts.budget,
        fields: fields.iter().map(|f| f.descriptor()).collect(),
        suites,
        pass,
    })
}

fn suite_additive_orthogonality(fields: &[Field], opts: &VerifyOptions) -> Result<SuiteOutcome> {
    let units: Vec<(usize, u32)> = fields
        .iter()
        .enumerate()
        .flat_map(|(i, _)| (1..=opts.max_n.min(3)).map(move |n| (i, n)))
        .collect();
    let parts = map_ordered(opts.threads, units, |(i, n)| {
        let field = &fields[i];
        let q = field.order();
        let space = space_size(q, n)?;
        let mut checks = 0u64;
        let mut failures = Vec::new();
        for m_idx in 0..space {
            let m = decode_point(q, n, m_idx);
            let mut counts = vec![0i128; field.p() as usize];
            let mut x = vec![Fq(0); n as usize];
            for x_idx in 0..space {
                crate::points::decode_point_into(q, x_idx, &mut x);
                counts[field.trace(crate::points::dot(field, &m, &x)) as usize] += 1;
            }
            let total = Cyclotomic::from_zeta_counts(field.p(), &counts);
            let expected = if m_idx == 0 { space as i128 } else { 0 };
            checks += 1;
            if total.as_int() != Some(expected) {
                failures.push(format!("q={q} n={n} m={m:?}: chi sum = {total}"));
            }
        }
        Ok((checks, failures))
    })?
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(suite_outcome("additive-orthogonality", parts))
}

fn suite_multiplicative_orthogonality(fields: &[Field]) -> Result<SuiteOutcome> {
    let mut checks = 0u64;
    let mut failures = Vec::new();
    for field in fields {
        for a in field.nonzero_elements() {
            let total: i64 = field
                .nonzero_elements()
                .map(|t| field.eta(field.mul(a, t)).unwrap() as i64)
                .sum();
            checks += 1;
            if total != 0 {
                failures.push(format!("q={} a={a}: eta sum = {total}", field.order()));
            }
        }
    }
    Ok(suite_outcome(
        "multiplicative-orthogonality",
        vec![(checks, failures)],
    ))
}

/// The Gauss-sum grid is fixed and cheap; it intentionally reaches past
/// the sweep grid.
const GAUSS_Q_LIST: [u64; 9] = [3, 5, 7, 9, 11, 13, 25, 27, 49];

fn suite_gauss_identities() -> Result<SuiteOutcome> {
    let mut checks = 0u64;
    let mut failures = Vec::new();
    for q in GAUSS_Q_LIST {
        let field = Field::parse(&q.to_string())?;
        let g = field.gauss_sum();
        let eta_m1 = field.eta(field.from_int(-1))? as i128;
        checks += 2;
        if (&g * &g).as_int() != Some(eta_m1 * q as i128) {
            failures.push(format!("q={q}: G^2 != eta(-1)·q, got {}", &g * &g));
        }
        if (&g * &g.conjugate()).as_int() != Some(q as i128) {
            failures.push(format!("q={q}: G·conj(G) != q"));
        }
    }
    Ok(suite_outcome("gauss-identities", vec![(checks, failures)]))
}

const QUADRATIC_Q_LIST: [u64; 5] = [3, 5, 7, 9, 11];

fn suite_quadratic_closed_forms() -> Result<SuiteOutcome> {
    let mut checks = 0u64;
    let mut failures = Vec::new();
    for q in QUADRATIC_Q_LIST {
        let field = Field::parse(&q.to_string())?;
        let p = field.p() as usize;
        for a in field.nonzero_elements() {
            for b in field.elements() {
                let mut counts = vec![0i128; p];
                for t in field.elements() {
                    let v = field.add(field.mul(a, field.mul(t, t)), field.mul(b, t));
                    counts[field.trace(v) as usize] += 1;
                }
                let brute = Cyclotomic::from_zeta_counts(field.p(), &counts);
                checks += 1;
                if field.completed_square_sum(a, b)? != brute {
                    failures.push(format!("q={q} a={a} b={b}: completed-square mismatch"));
                }
            }
        }
        for b in field.nonzero_elements() {
            let mut counts = vec![0i128; p];
            for s in field.nonzero_elements() {
                let arg = field.mul(b, field.inv(s)?);
                counts[field.trace(arg) as usize] += field.eta(s)? as i128;
            }
            let brute = Cyclotomic::from_zeta_counts(field.p(), &counts);
            checks += 1;
            if field.eta_weighted_inverse_sum(b)? != brute {
                failures.push(format!("q={q} b={b}: eta-weighted inverse sum mismatch"));
            }
        }
    }
    Ok(suite_outcome(
        "quadratic-closed-forms",
        vec![(checks, failures)],
    ))
}

fn coefficient_samples(field: &Field, n: usize, count: usize, seed: u64) -> Vec<Vec<Fq>> {
    if field.order() == 3 {
        // Exhaustive over (F_3*)^n.
        let mut out = Vec::new();
        for mask in 0..(1u32 << n) {
            out.push((0..n).map(|i| Fq(1 + ((mask >> i) & 1))).collect());
        }
        out
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                (0..n)
                    .map(|_| Fq(rng.random_range(1..field.order())))
                    .collect()
            })
            .collect()
    }
}

fn compare_closed_diagonal(
    field: &Field,
    a: &[Fq],
    budget: u64,
    inject_sign_error: bool,
) -> Result<(u64, Vec<String>)> {
    let n = a.len() as u32;
    let h = fourier::diagonal_variety(field, a)?;
    let table = fourier::set_table(field, &h, budget)?;
    let q = field.order();
    let mut checks = 0u64;
    let mut failures = Vec::new();
    for (m_idx, brute) in table.iter().enumerate() {
        let m = decode_point(q, n, m_idx);
        let mut closed = fourier::closed_diagonal(field, a, &m)?;
        if inject_sign_error && m_idx != 0 {
            closed.value = closed.value.scaled(-1);
        }
        checks += 1;
        if closed.value != brute.value {
            failures.push(format!(
                "q={q} n={n} a={:?} m={:?}: closed={} brute={}",
                a.iter().map(|c| c.0).collect::<Vec<_>>(),
                m.iter().map(|c| c.0).collect::<Vec<_>>(),
                closed.value,
                brute.value
            ));
        }
    }
    Ok((checks, failures))
}

fn suite_diagonal_fourier(fields: &[Field], opts: &VerifyOptions) -> Result<SuiteOutcome> {
    let mut units = Vec::new();
    for (i, field) in fields.iter().enumerate() {
        for n in 2..=opts.max_n.max(2) as usize {
            if space_size(field.order(), n as u32).is_err() {
                continue;
            }
            units.push((i, n));
        }
    }
    let parts = map_ordered(opts.threads, units, |(i, n)| {
        let field = &fields[i];
        let samples = coefficient_samples(field, n, 20, opts.seed ^ (n as u64));
        let mut checks = 0u64;
        let mut failures = Vec::new();
        for a in samples {
            let (c, mut f) =
                compare_closed_diagonal(field, &a, opts.budget, opts.inject_sign_error)?;
            checks += c;
            failures.append(&mut f);
        }
        Ok((checks, failures))
    })?
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(suite_outcome("diagonal-variety-fourier", parts))
}

/// Desk-scale grid for the ratio-variety transform: every frequency in
/// `F_q^{2d}` and every nonzero ratio.
const PRODUCT_GRID: [(u64, usize); 3] = [(3, 2), (3, 3), (5, 2)];

fn suite_product_fourier(opts: &VerifyOptions) -> Result<SuiteOutcome> {
    let units: Vec<(u64, usize)> = PRODUCT_GRID
        .iter()
        .copied()
        .filter(|&(q, _)| q <= opts.max_q.max(5) as u64)
        .collect();
    let parts = map_ordered(opts.threads, units, |(q, d)| {
        let field = Field::parse(&q.to_string())?;
        let mut checks = 0u64;
        let mut failures = Vec::new();
        for eps in [field.one(), field.smallest_nonsquare()] {
            let form = StandardForm::new(&field, d, eps)?;
            for r in field.nonzero_elements() {
                let spec = RatioSpec::new(form.clone(), r).expect("r nonzero");
                let v = fourier::product_variety(&field, &spec)?;
                let table = fourier::set_table(&field, &v, opts.budget)?;
                for (m_idx, brute) in table.iter().enumerate() {
                    let m = decode_point(field.order(), 2 * d as u32, m_idx);
                    let closed = fourier::closed_product_variety(&field, &spec, &m)?;
                    checks += 1;
                    if closed.value != brute.value {
                        failures.push(format!(
                            "q={q} d={d} eps={eps} r={r} m_idx={m_idx}: closed={} brute={}",
                            closed.value, brute.value
                        ));
                    }
                }
            }
        }
        Ok((checks, failures))
    })?
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(suite_outcome("ratio-variety-fourier", parts))
}

const SPHERE_GRID_Q: [u64; 3] = [3, 5, 7];

fn suite_sphere_fourier(opts: &VerifyOptions) -> Result<SuiteOutcome> {
    let mut units = Vec::new();
    for q in SPHERE_GRID_Q {
        if q > opts.max_q.max(7) as u64 {
            continue;
        }
        for d in [2usize, 3, 4] {
            units.push((q, d));
        }
    }
    let parts = map_ordered(opts.threads, units, |(q, d)| {
        let field = Field::parse(&q.to_string())?;
        let mut checks = 0u64;
        let mut failures = Vec::new();
        for eps in [field.one(), field.smallest_nonsquare()] {
            let form = StandardForm::new(&field, d, eps)?;
            let s0 = fourier::sphere(&field, &form, Fq(0))?;
            let table = fourier::set_table(&field, &s0, opts.budget)?;
            for (m_idx, brute) in table.iter().enumerate() {
                let m = decode_point(field.order(), d as u32, m_idx);
                let closed = fourier::closed_sphere_zero(&field, &form, &m)?;
                checks += 1;
                if closed.value != brute.value {
                    failures.push(format!(
                        "q={q} d={d} eps={eps} m={:?}: closed={} brute={}",
                        m.iter().map(|c| c.0).collect::<Vec<_>>(),
                        closed.value,
                        brute.value
                    ));
                }
            }
        }
        Ok((checks, failures))
    })?
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(suite_outcome("sphere-zero-fourier", parts))
}

const COUNTING_GRID: [(u64, usize); 4] = [(3, 2), (3, 3), (5, 2), (5, 3)];

fn suite_counting_identity(opts: &VerifyOptions) -> Result<SuiteOutcome> {
    let units: Vec<(usize, (u64, usize))> = COUNTING_GRID
        .iter()
        .copied()
        .filter(|&(q, _)| q <= opts.max_q.max(5) as u64)
        .enumerate()
        .collect();
    let parts = map_ordered(opts.threads, units, |(unit_idx, (q, n))| {
        let field = Field::parse(&q.to_string())?;
        let mut checks = 0u64;
        let mut failures = Vec::new();
        let form = StandardForm::new(&field, n, field.one())?;
        let s0 = fourier::sphere(&field, &form, Fq(0))?;
        let space = space_size(field.order(), n as u32)?;
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(unit_idx as u64 + 1);
        for _ in 0..50 {
            let size = rng.random_range(1..=space.min(40));
            let e = PointSet::random_subset(field.order(), n as u32, size, &mut rng)?;

            // Against the zero sphere, which also checks the w(0)
            // specialization through the histogram.
            let report = counting::verify_counting_lemma(&field, &e, &s0, opts.budget)?;
            checks += 1;
            if !report.holds {
                failures.push(format!(
                    "q={q} n={n} |E|={size}: sphere pair count {} != fourier {}",
                    report.pair_count, report.fourier_side
                ));
            }
            let hist = counting::distance_histogram(&field, &e, &form)?;
            checks += 1;
            if hist.w_zero() != report.pair_count {
                failures.push(format!(
                    "q={q} n={n} |E|={size}: histogram w(0) disagrees with pair loop"
                ));
            }

            // Against a random diagonal variety.
            let a: Vec<Fq> = (0..n)
                .map(|_| Fq(rng.random_range(1..field.order())))
                .collect();
            let h = fourier::diagonal_variety(&field, &a)?;
            let report = counting::verify_counting_lemma(&field, &e, &h, opts.budget)?;
            checks += 1;
            if !report.holds {
                failures.push(format!(
                    "q={q} n={n} |E|={size} a={:?}: variety pair count {} != fourier {}",
                    a.iter().map(|c| c.0).collect::<Vec<_>>(),
                    report.pair_count,
                    report.fourier_side
                ));
            }
        }
        Ok((checks, failures))
    })?
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(suite_outcome("counting-identity", parts))
}

// --------------------------------------------------------------------
// count
// --------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct CountRunReport {
    pub header: ReportHeader,
    pub form_used: String,
    pub set_transformed: bool,
    pub set_size: u64,
    pub reports: Vec<CountReport>,
}

/// Parse an `r` list: `all` or comma-separated canonical indices.
pub fn parse_ratio_list(field: &Field, spec: &str) -> Result<Vec<Fq>> {
    if spec.trim() == "all" {
        return Ok(field.nonzero_elements().collect());
    }
    let mut out = Vec::new();
    for tok in spec.split(',') {
        let idx: u64 = tok
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad ratio index {tok:?}")))?;
        let r = field.element(idx)?;
        if r == Fq(0) {
            return Err(Error::Domain(
                "r = 0 rejected: W(r) counts quadruples whose denominator distance \
                 Q(z-w) is nonzero"
                    .into(),
            ));
        }
        out.push(r);
    }
    Ok(out)
}

pub fn run_count(cfg: &RunConfig, r_spec: &str) -> Result<CountRunReport> {
    let field = Field::parse(&cfg.field)?;
    let set_spec = cfg
        .set
        .as_deref()
        .ok_or_else(|| Error::Parse("count requires --set".into()))?;
    let dim = match (set_spec_dimension(set_spec)?, cfg.dim) {
        (Some(d), Some(flag)) if d != flag => {
            return Err(Error::DimensionMismatch {
                expected: d,
                actual: flag,
            })
        }
        (Some(d), _) => d,
        (None, Some(flag)) => flag,
        (None, None) => {
            return Err(Error::Parse(
                "set source does not carry a dimension; pass --dim".into(),
            ))
        }
    };
    let form_spec = cfg.form.as_deref().unwrap_or("euclidean");
    let resolved = resolve_form(&field, form_spec, dim)?;
    let mut set = resolve_set(&field, set_spec, dim, cfg.seed)?;

    // A general form was reduced to standard shape: move the set to the
    // standard coordinates so distances are preserved.
    let mut transformed = false;
    if let Some(c) = &resolved.basis_change {
        let c_inv = c.inverse(&field)?;
        set = set.map_linear(&field, &c_inv)?;
        transformed = true;
    }

    let hist = counting::distance_histogram(&field, &set, &resolved.standard)?;
    let ratios = parse_ratio_list(&field, r_spec)?;
    let reports = ratios
        .iter()
        .map(|&r| counting::w_of_r(&field, &hist, r))
        .collect::<Result<Vec<_>>>()?;

    Ok(CountRunReport {
        header: header("count", &field, cfg),
        form_used: resolved.description,
        set_transformed: transformed,
        set_size: set.len(),
        reports,
    })
}

pub fn count_report_to_csv(report: &CountRunReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# quadrance count v{}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(
        out,
        "# field {} modulus {} seed {}",
        report.header.field, report.header.modulus, report.header.seed
    );
    let _ = writeln!(out, "r,W,M,w0");
    for row in &report.reports {
        let _ = writeln!(out, "{},{},{},{}", row.r, row.w, row.m, row.w0);
    }
    out
}

// --------------------------------------------------------------------
// bounds
// --------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct ThresholdRow {
    pub rule: ThresholdRule,
    pub size_condition_met: bool,
    pub lower_bound: String,
    pub holds: bool,
}

#[derive(Debug, Serialize)]
pub struct RatioBoundRow {
    pub r: u32,
    #[serde(rename = "W")]
    pub w: u64,
    #[serde(rename = "M")]
    pub m: u64,
    pub case: BoundCase,
    pub case_bound: String,
    pub case_holds: bool,
    pub thresholds: Vec<ThresholdRow>,
}

#[derive(Debug, Serialize)]
pub struct BoundsTrialReport {
    pub trial: u32,
    pub set_size: u64,
    pub w0: u64,
    pub w0_bound: String,
    pub w0_holds: bool,
    pub quotient_checks_pass: bool,
    pub ratios: Vec<RatioBoundRow>,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct BoundsRunReport {
    pub header: ReportHeader,
    pub form_used: String,
    pub dim: usize,
    pub trials: u32,
    pub trials_detail: Vec<BoundsTrialReport>,
    pub pass: bool,
}

fn bounds_trial(
    field: &Field,
    standard: &StandardForm,
    set: &PointSet,
    trial: u32,
    budget: u64,
) -> Result<BoundsTrialReport> {
    let ev = BoundEvaluator::new(field, set, standard, budget)?;
    let w0 = ev.w_zero_bound()?;
    let quotient = ev.quotient_corollary()?;
    let quotient_ok = quotient.checks.iter().all(|c| c.relation_holds);
    let mut ratios = Vec::new();
    let mut all_ok = w0.holds && quotient_ok;
    for r in field.nonzero_elements() {
        let report = ev.theorem_check(r)?;
        all_ok &= report.case_holds && report.thresholds.iter().all(|t| t.holds);
        ratios.push(RatioBoundRow {
            r: r.0,
            w: report.counts.w,
            m: report.counts.m,
            case: report.case,
            case_bound: report.case_bound.to_string(),
            case_holds: report.case_holds,
            thresholds: report
                .thresholds
                .iter()
                .map(|t| ThresholdRow {
                    rule: t.rule,
                    size_condition_met: t.size_condition_met,
                    lower_bound: t.lower_bound.to_string(),
                    holds: t.holds,
                })
                .collect(),
        });
    }
    Ok(BoundsTrialReport {
        trial,
        set_size: set.len(),
        w0: w0.w0,
        w0_bound: w0.bound.to_string(),
        w0_holds: w0.holds,
        quotient_checks_pass: quotient_ok,
        ratios,
        pass: all_ok,
    })
}

pub fn run_bounds(cfg: &RunConfig, trials: u32) -> Result<BoundsRunReport> {
    let field = Field::parse(&cfg.field)?;
    let set_spec = cfg
        .set
        .as_deref()
        .ok_or_else(|| Error::Parse("bounds requires --set".into()))?;
    let dim = match (set_spec_dimension(set_spec)?, cfg.dim) {
        (Some(d), Some(flag)) if d != flag => {
            return Err(Error::DimensionMismatch {
                expected: d,
                actual: flag,
            })
        }
        (Some(d), _) => d,
        (None, Some(flag)) => flag,
        (None, None) => return Err(Error::Parse("bounds requires --dim".into())),
    };
    let form_spec = cfg.form.as_deref().unwrap_or("standard:eps=1");
    // Random sets are sampled directly in standard coordinates, so only
    // the standardized shape matters for the sweep.
    let resolved = resolve_form(&field, form_spec, dim)?;
    let standard = resolved.standard.clone();

    let detail = if let Some(size_str) = set_spec.strip_prefix("random:") {
        // Seeded sweep: one independent RNG stream per trial, so the
        // partition across workers cannot change the report.
        let size: usize = size_str
            .parse()
            .map_err(|_| Error::Parse(format!("bad random set size in {set_spec:?}")))?;
        let trial_ids: Vec<u32> = (0..trials).collect();
        map_ordered(cfg.threads, trial_ids, |trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(trial as u64 + 1);
            let set = PointSet::random_subset(field.order(), dim as u32, size, &mut rng)?;
            bounds_trial(&field, &standard, &set, trial, cfg.budget)
        })?
    } else {
        // A concrete set (file or construction): a single check.
        let set = resolve_set(&field, set_spec, dim, cfg.seed)?;
        vec![bounds_trial(&field, &standard, &set, 0, cfg.budget)]
    };

    let detail: Vec<BoundsTrialReport> = detail.into_iter().collect::<Result<_>>()?;
    let pass = detail.iter().all(|t| t.pass);
    Ok(BoundsRunReport {
        header: header("bounds", &field, cfg),
        form_used: resolved.description,
        dim,
        trials: detail.len() as u32,
        trials_detail: detail,
        pass,
    })
}

// --------------------------------------------------------------------
// sharpness
// --------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct SharpnessRunReport {
    pub header: ReportHeader,
    pub report: SharpnessReport,
    pub pass: bool,
}

pub fn run_sharpness(cfg: &RunConfig) -> Result<SharpnessRunReport> {
    let field = Field::parse(&cfg.field)?;
    let spec = cfg
        .set
        .as_deref()
        .ok_or_else(|| Error::Parse("sharpness requires --set sharpness:<kind>:d=<n>".into()))?;
    if !spec.starts_with("sharpness:") {
        return Err(Error::Parse(
            "sharpness requires a sharpness:<kind> set source".into(),
        ));
    }
    let built = build_sharpness_from_spec(&field, spec, cfg.dim.unwrap_or(0))?;
    let report = sharpness::analyze(&field, &built)?;
    let pass = report.size_matches
        && match report.kind {
            SharpnessKind::Even => report.quotient_equals_squares && report.nonsquares_unrealized,
            SharpnessKind::OddFull => report.quotient_equals_squares,
            // The δ construction's shrinking claim is asymptotic; at fixed
            // q only the computable facts are checked.
            SharpnessKind::OddDelta => true,
        };
    Ok(SharpnessRunReport {
        header: header("sharpness", &field, cfg),
        report,
        pass,
    })
}

// --------------------------------------------------------------------
// fourier
// --------------------------------------------------------------------

/// What to transform: a point-set source or a named variety.
#[derive(Clone, Debug)]
pub enum FourierTarget {
    Set(String),
    Variety(String),
}

fn build_variety(
    field: &Field,
    spec: &str,
    form: Option<&StandardForm>,
) -> Result<(PointSet, String)> {
    let (kind, args) = spec.split_once(':').unwrap_or((spec, ""));
    let need_form = || {
        form.cloned()
            .ok_or_else(|| Error::Parse("this variety needs --form and --dim to be set".into()))
    };
    match kind {
        "sphere" => {
            let t: u64 = args
                .strip_prefix("t=")
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::Parse(format!("sphere variety needs t=<index>: {spec:?}")))?;
            let form = need_form()?;
            let set = fourier::sphere(field, &form, field.element(t)?)?;
            Ok((set, format!("sphere t={t}")))
        }
        "diagonal" => {
            let list = args.strip_prefix("a=").ok_or_else(|| {
                Error::Parse(format!("diagonal variety needs a=<i,j,...>: {spec:?}"))
            })?;
            let coeffs: Vec<Fq> = list
                .split(',')
                .map(|tok| {
                    let idx: u64 = tok
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad coefficient {tok:?}")))?;
                    field.element(idx)
                })
                .collect::<Result<_>>()?;
            let set = fourier::diagonal_variety(field, &coeffs)?;
            Ok((set, format!("diagonal a={list}")))
        }
        "ratio" | "ratio-dual" => {
            let r: u64 = args
                .strip_prefix("r=")
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::Parse(format!("ratio variety needs r=<index>: {spec:?}")))?;
            let form = need_form()?;
            let ratio_spec = RatioSpec::new(form, field.element(r)?)?;
            let set = if kind == "ratio" {
                fourier::product_variety(field, &ratio_spec)?
            } else {
                fourier::dual_product_variety(field, &ratio_spec)?
            };
            Ok((set, format!("{kind} r={r}")))
        }
        other => Err(Error::Parse(format!(
            "unknown variety kind {other:?} (expected sphere, diagonal, ratio, ratio-dual)"
        ))),
    }
}

/// Dump the exact Fourier table of a set or variety as CSV: frequency
/// index, cyclotomic coefficient vector, and a display-only complex
/// rendering.
pub fn run_fourier(cfg: &RunConfig, target: &FourierTarget) -> Result<String> {
    let field = Field::parse(&cfg.field)?;
    let (set, described) = match target {
        FourierTarget::Set(spec) => {
            let dim = match (set_spec_dimension(spec)?, cfg.dim) {
                (Some(d), _) => d,
                (None, Some(d)) => d,
                (None, None) => {
                    return Err(Error::Parse(
                        "set source does not carry a dimension; pass --dim".into(),
                    ))
                }
            };
            (resolve_set(&field, spec, dim, cfg.seed)?, spec.clone())
        }
        FourierTarget::Variety(spec) => {
            let form = match (&cfg.form, cfg.dim) {
                (Some(fspec), Some(dim)) => Some(resolve_form(&field, fspec, dim)?.standard),
                _ => None,
            };
            build_variety(&field, spec, form.as_ref())?
        }
    };

    let table = fourier::set_table(&field, &set, cfg.budget)?;
    let mut out = String::new();
    let _ = writeln!(out, "# quadrance fourier v{}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(
        out,
        "# field {} modulus {} target {} size {} scale q^{}",
        field.spec_string(),
        field.modulus_string(),
        described,
        set.len(),
        set.dim()
    );
    let _ = writeln!(out, "m_index,coefficients,re,im");
    for (m_idx, v) in table.iter().enumerate() {
        let coeffs: Vec<String> = v
            .value
            .coefficients()
            .iter()
            .map(|c| c.to_string())
            .collect();
        let (re, im) = v.value.to_complex();
        let _ = writeln!(out, "{},{},{re:.6},{im:.6}", m_idx, coeffs.join(";"));
    }
    Ok(out)
}

/// Render a serializable report in the requested format (JSON only for
/// structured reports).
pub fn to_json<T: Serialize>(report: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(report)
        .map_err(|e| Error::Internal(format!("serialization: {e}")))?;
    text.push('\n');
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_list_parsing() {
        let field = Field::parse("5").unwrap();
        assert_eq!(
            parse_ratio_list(&field, "all").unwrap(),
            vec![Fq(1), Fq(2), Fq(3), Fq(4)]
        );
        assert_eq!(parse_ratio_list(&field, "1,3").unwrap(), vec![Fq(1), Fq(3)]);
        let err = parse_ratio_list(&field, "0").unwrap_err().to_string();
        assert!(
            err.contains("denominator distance Q(z-w) is nonzero"),
            "{err}"
        );
        assert!(parse_ratio_list(&field, "9").is_err());
    }

    #[test]
    fn resolve_form_variants() {
        let field = Field::parse("5").unwrap();
        let euclid = resolve_form(&field, "euclidean", 2).unwrap();
        assert!(euclid.basis_change.is_some());
        let std_form = resolve_form(&field, "standard:eps=2", 3).unwrap();
        assert!(std_form.basis_change.is_none());
        assert_eq!(std_form.standard.epsilon(), Fq(2));
        assert!(resolve_form(&field, "standard:eps=bad", 3).is_err());
    }

    #[test]
    fn random_set_resolution_is_seeded() {
        let field = Field::parse("7").unwrap();
        let a = resolve_set(&field, "random:10", 2, 5).unwrap();
        let b = resolve_set(&field, "random:10", 2, 5).unwrap();
        let c = resolve_set(&field, "random:10", 2, 6).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.len(), 10);
    }

    #[test]
    fn sharpness_spec_parsing() {
        let field = Field::parse("5").unwrap();
        let built = build_sharpness_from_spec(&field, "sharpness:even:d=2", 0).unwrap();
        assert_eq!(built.set.len(), 5);
        let built = build_sharpness_from_spec(&field, "sharpness:odd-full:d=3:eps=2", 0).unwrap();
        assert_eq!(built.set.len(), 25);
        assert!(build_sharpness_from_spec(&field, "sharpness:bogus:d=2", 0).is_err());
        assert!(build_sharpness_from_spec(&field, "sharpness:even", 0).is_err());
    }

    #[test]
    fn verify_catches_injected_sign_error() {
        let opts = VerifyOptions {
            max_q: 3,
            max_n: 2,
            inject_sign_error: true,
            ..VerifyOptions::default()
        };
        let report = run_verify(&opts).unwrap();
        assert!(!report.pass);
        let diag = report
            .suites
            .iter()
            .find(|s| s.name == "diagonal-variety-fourier")
            .unwrap();
        assert!(!diag.pass);
        assert!(!diag.failures.is_empty());
    }

    #[test]
    fn tiny_verify_grid_passes() {
        let opts = VerifyOptions {
            max_q: 3,
            max_n: 2,
            ..VerifyOptions::default()
        };
        let report = run_verify(&opts).unwrap();
        assert!(report.pass, "{:?}", report.suites);
    }

    #[test]
    fn count_runs_from_generated_set() {
        let dir = std::env::temp_dir().join("quadrance-count-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("two_points.pts");
        std::fs::write(&path, "2 5\n0 0\n1 0\n").unwrap();
        let cfg = RunConfig {
            field: "5".into(),
            form: Some("standard:eps=1".into()),
            set: Some(path.to_string_lossy().into_owned()),
            ..RunConfig::default()
        };
        let report = run_count(&cfg, "1").unwrap();
        assert_eq!(report.reports.len(), 1);
        assert_eq!(report.reports[0].w, 4);
        let csv = count_report_to_csv(&report);
        assert!(csv.contains("r,W,M,w0"));
        assert!(csv.contains("1,4,8,2"));
    }

    #[test]
    fn count_on_empty_set_file_gives_zero_everywhere() {
        let dir = std::env::temp_dir().join("quadrance-count-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("empty.pts");
        std::fs::write(&path, "2 5\n").unwrap();
        let cfg = RunConfig {
            field: "5".into(),
            set: Some(path.to_string_lossy().into_owned()),
            ..RunConfig::default()
        };
        let report = run_count(&cfg, "all").unwrap();
        assert_eq!(report.set_size, 0);
        assert!(report.reports.iter().all(|r| r.w == 0 && r.m == 0));
    }

    #[test]
    fn verify_propagates_budget_errors() {
        let opts = VerifyOptions {
            max_q: 3,
            max_n: 2,
            budget: 10,
            ..VerifyOptions::default()
        };
        assert!(matches!(
            run_verify(&opts),
            Err(crate::Error::BudgetExceeded { .. })
        ));
    }
}
