//! Non-degenerate quadratic forms over `F_q` and their reduction to the
//! diagonal standard shape `x_1² - x_2² + ... ± ε·x_d²`.
//!
//! Every non-degenerate form is congruent to a standard form whose trailing
//! coefficient is determined (up to squares) by the discriminant; the
//! [`standardize`] routine produces both the standard form and an explicit
//! non-singular change of basis `C` with `Q(C·y) = Q'(y)`, and verifies
//! the identity before returning.

use crate::field::{Field, Fq};
use crate::{Error, Result};

/// A dense square matrix over `F_q`, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    dim: usize,
    data: Vec<Fq>,
}

impl Matrix {
    pub fn new(dim: usize, data: Vec<Fq>) -> Matrix {
        assert_eq!(data.len(), dim * dim, "matrix data must be dim x dim");
        Matrix { dim, data }
    }

    pub fn identity(dim: usize) -> Matrix {
        let mut m = Matrix::new(dim, vec![Fq(0); dim * dim]);
        for i in 0..dim {
            m.set(i, i, Fq(1));
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Fq {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, v: Fq) {
        self.data[row * self.dim + col] = v;
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::new(self.dim, vec![Fq(0); self.dim * self.dim]);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn mul(&self, field: &Field, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim);
        let mut out = Matrix::new(self.dim, vec![Fq(0); self.dim * self.dim]);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut acc = field.zero();
                for k in 0..self.dim {
                    acc = field.add(acc, field.mul(self.get(i, k), rhs.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Matrix-vector product `M·x`.
    pub fn apply(&self, field: &Field, x: &[Fq]) -> Vec<Fq> {
        assert_eq!(x.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                let mut acc = field.zero();
                for (j, &xj) in x.iter().enumerate() {
                    acc = field.add(acc, field.mul(self.get(i, j), xj));
                }
                acc
            })
            .collect()
    }

    /// Exact determinant by Gaussian elimination over `F_q`.
    pub fn determinant(&self, field: &Field) -> Fq {
        let mut m = self.clone();
        let d = self.dim;
        let mut det = field.one();
        for k in 0..d {
            let pivot_row = match (k..d).find(|&i| m.get(i, k) != Fq(0)) {
                Some(r) => r,
                None => return field.zero(),
            };
            if pivot_row != k {
                for j in 0..d {
                    let tmp = m.get(k, j);
                    m.set(k, j, m.get(pivot_row, j));
                    m.set(pivot_row, j, tmp);
                }
                det = field.neg(det);
            }
            let pivot = m.get(k, k);
            det = field.mul(det, pivot);
            let pinv = field.inv(pivot).expect("pivot nonzero");
            for i in k + 1..d {
                let f = field.mul(m.get(i, k), pinv);
                if f == Fq(0) {
                    continue;
                }
                for j in k..d {
                    let v = field.sub(m.get(i, j), field.mul(f, m.get(k, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan elimination; errors on singular input.
    pub fn inverse(&self, field: &Field) -> Result<Matrix> {
        let d = self.dim;
        let mut m = self.clone();
        let mut inv = Matrix::identity(d);
        for k in 0..d {
            let pivot_row = (k..d)
                .find(|&i| m.get(i, k) != Fq(0))
                .ok_or_else(|| Error::InvalidParameter("singular matrix".into()))?;
            if pivot_row != k {
                for j in 0..d {
                    let (a, b) = (m.get(k, j), m.get(pivot_row, j));
                    m.set(k, j, b);
                    m.set(pivot_row, j, a);
                    let (a, b) = (inv.get(k, j), inv.get(pivot_row, j));
                    inv.set(k, j, b);
                    inv.set(pivot_row, j, a);
                }
            }
            let pinv = field.inv(m.get(k, k))?;
            for j in 0..d {
                m.set(k, j, field.mul(m.get(k, j), pinv));
                inv.set(k, j, field.mul(inv.get(k, j), pinv));
            }
            for i in 0..d {
                if i == k {
                    continue;
                }
                let f = m.get(i, k);
                if f == Fq(0) {
                    continue;
                }
                for j in 0..d {
                    m.set(i, j, field.sub(m.get(i, j), field.mul(f, m.get(k, j))));
                    inv.set(i, j, field.sub(inv.get(i, j), field.mul(f, inv.get(k, j))));
                }
            }
        }
        Ok(inv)
    }
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| self.get(i, j).0.to_string())
                .collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// `Q(x) = xᵀ A x` for a symmetric `A` with `det(A) ≠ 0`.
#[derive(Clone, Debug)]
pub struct QuadraticForm {
    dim: usize,
    matrix: Matrix,
}

impl QuadraticForm {
    pub fn new(field: &Field, matrix: Matrix) -> Result<QuadraticForm> {
        let dim = matrix.dim();
        if dim == 0 {
            return Err(Error::InvalidParameter(
                "form dimension must be >= 1".into(),
            ));
        }
        for i in 0..dim {
            for j in i + 1..dim {
                if matrix.get(i, j) != matrix.get(j, i) {
                    return Err(Error::InvalidParameter(
                        "quadratic form matrix must be symmetric".into(),
                    ));
                }
            }
        }
        if matrix.determinant(field) == Fq(0) {
            return Err(Error::InvalidParameter(
                "quadratic form must be non-degenerate (det != 0)".into(),
            ));
        }
        Ok(QuadraticForm { dim, matrix })
    }

    /// The sum-of-squares form `x_1² + ... + x_d²` (identity matrix).
    pub fn euclidean(dim: usize) -> QuadraticForm {
        QuadraticForm {
            dim,
            matrix: Matrix::identity(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Exact evaluation `xᵀ A x`.
    pub fn evaluate(&self, field: &Field, x: &[Fq]) -> Result<Fq> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: x.len(),
            });
        }
        let mut acc = field.zero();
        for i in 0..self.dim {
            for j in 0..self.dim {
                acc = field.add(acc, field.mul(self.matrix.get(i, j), field.mul(x[i], x[j])));
            }
        }
        Ok(acc)
    }

    /// Parse the matrix text format: first line `d`, then `d` lines of `d`
    /// canonical element indices.
    pub fn parse_matrix_text(field: &Field, text: &str) -> Result<QuadraticForm> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let d: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty form file".into()))?
            .trim()
            .parse()
            .map_err(|_| Error::Parse("form file: first line must be the dimension".into()))?;
        let mut data = Vec::with_capacity(d * d);
        for _ in 0..d {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse("form file: missing matrix row".into()))?;
            let row: Vec<u64> = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<u64>()
                        .map_err(|_| Error::Parse(format!("form file: bad entry {t:?}")))
                })
                .collect::<Result<_>>()?;
            if row.len() != d {
                return Err(Error::Parse(format!(
                    "form file: row has {} entries, expected {d}",
                    row.len()
                )));
            }
            for v in row {
                data.push(field.element(v)?);
            }
        }
        QuadraticForm::new(field, Matrix::new(d, data))
    }
}

/// The diagonal standard form: coefficients `(1, -1, ..., 1, -ε)` for even
/// dimension, `(1, -1, ..., 1, -1, ε)` for odd dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardForm {
    dim: usize,
    epsilon: Fq,
    coeffs: Vec<Fq>,
}

impl StandardForm {
    pub fn new(field: &Field, dim: usize, epsilon: Fq) -> Result<StandardForm> {
        if dim == 0 {
            return Err(Error::InvalidParameter(
                "form dimension must be >= 1".into(),
            ));
        }
        if epsilon == Fq(0) {
            return Err(Error::InvalidParameter("epsilon must be nonzero".into()));
        }
        let one = field.one();
        let minus_one = field.neg(one);
        let mut coeffs = Vec::with_capacity(dim);
        for i in 1..dim {
            coeffs.push(if i % 2 == 1 { one } else { minus_one });
        }
        coeffs.push(if dim % 2 == 0 {
            field.neg(epsilon)
        } else {
            epsilon
        });
        Ok(StandardForm {
            dim,
            epsilon,
            coeffs,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn epsilon(&self) -> Fq {
        self.epsilon
    }

    /// The diagonal coefficient vector `a ∈ (F_q*)^d`.
    pub fn coefficients(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn evaluate(&self, field: &Field, x: &[Fq]) -> Result<Fq> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: x.len(),
            });
        }
        let mut acc = field.zero();
        for (&a, &xi) in self.coeffs.iter().zip(x) {
            acc = field.add(acc, field.mul(a, field.mul(xi, xi)));
        }
        Ok(acc)
    }

    /// The dual form: same sign pattern with `ε` replaced by `ε^{-1}`, so
    /// its coefficient vector is the entrywise inverse of this one.
    pub fn dual(&self, field: &Field) -> StandardForm {
        let eps_inv = field.inv(self.epsilon).expect("epsilon nonzero");
        StandardForm::new(field, self.dim, eps_inv).expect("dual of a valid form")
    }

    /// View as a general quadratic form (diagonal matrix).
    pub fn to_quadratic_form(&self, field: &Field) -> QuadraticForm {
        let mut m = Matrix::new(self.dim, vec![Fq(0); self.dim * self.dim]);
        for (i, &a) in self.coeffs.iter().enumerate() {
            m.set(i, i, a);
        }
        QuadraticForm::new(field, m).expect("standard forms are non-degenerate")
    }
}

/// Reduce a non-degenerate form to its standard shape.
///
/// Returns the standard form `Q'` (with the deterministic `ε`: `1` when the
/// discriminant class allows, otherwise the smallest-index non-square) and
/// a non-singular `C` with `Q(C·y) = Q'(y)` for all `y`. The identity is
/// verified on the full space when `q^d ≤ 10^4`, otherwise on 1000
/// deterministic pseudo-random vectors.
pub fn standardize(field: &Field, form: &QuadraticForm) -> Result<(StandardForm, Matrix)> {
    let d = form.dim();
    let det = form.matrix().determinant(field);
    let k = if d % 2 == 0 { d / 2 } else { (d - 1) / 2 };
    let mut class = field.eta(det)?;
    if k % 2 == 1 {
        class *= field.eta(field.from_int(-1))?;
    }
    let epsilon = if class == 1 {
        field.one()
    } else {
        field.smallest_nonsquare()
    };
    let standard = StandardForm::new(field, d, epsilon)?;

    let (c1, diag) = congruence_diagonalize(field, form.matrix())?;
    let (p1, trail1) = diagonal_to_reference(field, &diag)?;
    let (p2, trail2) = diagonal_to_reference(field, standard.coefficients())?;
    if trail1 != trail2 {
        return Err(Error::Internal(
            "discriminant classes diverged during reduction".into(),
        ));
    }
    let c = c1.mul(field, &p1).mul(field, &p2.inverse(field)?);

    verify_change_of_basis(field, form, &standard, &c)?;
    Ok((standard, c))
}

/// Symmetric congruence diagonalization: returns `(C, diag)` with
/// `Q(C·y) = Σ diag_i · y_i²`.
///
/// Zero pivots are repaired deterministically: first swap in the
/// lowest-index nonzero diagonal entry; failing that, fold the lowest-index
/// coordinate with a nonzero off-diagonal entry into the pivot (the rank-2
/// mixing substitution, which works because char(F_q) is odd).
fn congruence_diagonalize(field: &Field, a: &Matrix) -> Result<(Matrix, Vec<Fq>)> {
    let d = a.dim();
    let mut b = a.clone();
    let mut c = Matrix::identity(d);

    let swap_coords = |b: &mut Matrix, c: &mut Matrix, x: usize, y: usize| {
        for j in 0..d {
            let (u, v) = (b.get(x, j), b.get(y, j));
            b.set(x, j, v);
            b.set(y, j, u);
        }
        for i in 0..d {
            let (u, v) = (b.get(i, x), b.get(i, y));
            b.set(i, x, v);
            b.set(i, y, u);
        }
        for i in 0..d {
            let (u, v) = (c.get(i, x), c.get(i, y));
            c.set(i, x, v);
            c.set(i, y, u);
        }
    };

    for k in 0..d {
        if b.get(k, k) == Fq(0) {
            if let Some(i) = (k + 1..d).find(|&i| b.get(i, i) != Fq(0)) {
                swap_coords(&mut b, &mut c, k, i);
            } else if let Some(j) = (k + 1..d).find(|&j| b.get(k, j) != Fq(0)) {
                // col_k += col_j and row_k += row_j: the new diagonal entry
                // is 2·b[k][j] since both diagonal entries vanish.
                for i in 0..d {
                    let v = field.add(b.get(i, k), b.get(i, j));
                    b.set(i, k, v);
                }
                for col in 0..d {
                    let v = field.add(b.get(k, col), b.get(j, col));
                    b.set(k, col, v);
                }
                for i in 0..d {
                    let v = field.add(c.get(i, k), c.get(i, j));
                    c.set(i, k, v);
                }
            } else {
                return Err(Error::Internal(
                    "degenerate block during congruence diagonalization".into(),
                ));
            }
        }
        let pivot = b.get(k, k);
        let pinv = field.inv(pivot)?;
        for i in k + 1..d {
            let f = field.mul(b.get(i, k), pinv);
            if f == Fq(0) {
                continue;
            }
            let nf = field.neg(f);
            for row in 0..d {
                let v = field.add(b.get(row, i), field.mul(nf, b.get(row, k)));
                b.set(row, i, v);
            }
            for col in 0..d {
                let v = field.add(b.get(i, col), field.mul(nf, b.get(k, col)));
                b.set(i, col, v);
            }
            for row in 0..d {
                let v = field.add(c.get(row, i), field.mul(nf, c.get(row, k)));
                c.set(row, i, v);
            }
        }
    }

    let diag = (0..d).map(|i| b.get(i, i)).collect();
    Ok((c, diag))
}

/// Transform a non-degenerate diagonal form into the reference diagonal
/// `(1, ..., 1)` or `(1, ..., 1, s)` with `s` the smallest non-square.
/// Returns `(P, trailing_nonsquare)` with `D(P·z) = reference(z)`.
fn diagonal_to_reference(field: &Field, diag: &[Fq]) -> Result<(Matrix, bool)> {
    let d = diag.len();
    let s = field.smallest_nonsquare();
    let mut p = Matrix::identity(d);
    let mut nonsquare_slot = vec![false; d];

    for (i, &di) in diag.iter().enumerate() {
        if di == Fq(0) {
            return Err(Error::Internal("zero entry in diagonalized form".into()));
        }
        let target = if field.eta(di)? == 1 { field.one() } else { s };
        nonsquare_slot[i] = target == s;
        let ratio = field.mul(target, field.inv(di)?);
        let scale = field
            .sqrt(ratio)
            .ok_or_else(|| Error::Internal("square-class scaling has no root".into()))?;
        for row in 0..d {
            p.set(row, i, field.mul(p.get(row, i), scale));
        }
    }

    // Convert pairs of s-slots into pairs of 1-slots: find g² + h² = s^{-1}
    // and rotate (always solvable: binary forms over F_q are universal).
    let slots: Vec<usize> = (0..d).filter(|&i| nonsquare_slot[i]).collect();
    if slots.len() >= 2 {
        let (g, h) = two_squares(field, field.inv(s)?)?;
        for pair in slots.chunks(2) {
            if pair.len() < 2 {
                break;
            }
            let (i, j) = (pair[0], pair[1]);
            for row in 0..d {
                let (ci, cj) = (p.get(row, i), p.get(row, j));
                p.set(row, i, field.add(field.mul(g, ci), field.mul(h, cj)));
                p.set(
                    row,
                    j,
                    field.add(field.mul(field.neg(h), ci), field.mul(g, cj)),
                );
            }
            nonsquare_slot[i] = false;
            nonsquare_slot[j] = false;
        }
    }

    match (0..d).find(|&i| nonsquare_slot[i]) {
        Some(pos) => {
            if pos != d - 1 {
                for row in 0..d {
                    let (u, v) = (p.get(row, pos), p.get(row, d - 1));
                    p.set(row, pos, v);
                    p.set(row, d - 1, u);
                }
            }
            Ok((p, true))
        }
        None => Ok((p, false)),
    }
}

/// The lexicographically smallest `(g, h)` with `g² + h² = target`.
fn two_squares(field: &Field, target: Fq) -> Result<(Fq, Fq)> {
    for g in field.elements() {
        let rem = field.sub(target, field.mul(g, g));
        if let Some(h) = field.sqrt(rem) {
            return Ok((g, h));
        }
    }
    Err(Error::Internal(
        "sum of two squares must represent every element".into(),
    ))
}

fn verify_change_of_basis(
    field: &Field,
    form: &QuadraticForm,
    standard: &StandardForm,
    c: &Matrix,
) -> Result<()> {
    let d = form.dim();
    let q = field.order() as u64;
    let total = q.checked_pow(d as u32);

    let check = |y: &[Fq]| -> Result<()> {
        let x = c.apply(field, y);
        if form.evaluate(field, &x)? != standard.evaluate(field, y)? {
            return Err(Error::Internal(format!(
                "change of basis fails at y = {y:?}"
            )));
        }
        Ok(())
    };

    match total {
        Some(total) if total <= 10_000 => {
            let mut y = vec![Fq(0); d];
            for idx in 0..total {
                let mut rest = idx;
                for slot in y.iter_mut() {
                    *slot = Fq((rest % q) as u32);
                    rest /= q;
                }
                check(&y)?;
            }
        }
        _ => {
            // Deterministic xorshift stream; coverage, not statistics.
            let mut state = 0x9e3779b97f4a7c15u64;
            for _ in 0..1000 {
                let y: Vec<Fq> = (0..d)
                    .map(|_| {
                        state ^= state << 13;
                        state ^= state >> 7;
                        state ^= state << 17;
                        Fq((state % q) as u32)
                    })
                    .collect();
                check(&y)?;
            }
        }
    }
    Ok(())
}
