//! The finite field `F_q`, `q = p^ell` with `p` an odd prime.
//!
//! `F_q` is realized as the quotient `F_p[θ]/(m(θ))` where `m` is the
//! lexicographically smallest monic irreducible polynomial of degree `ell`
//! (coefficient tuples compared low-degree-first), so every run and every
//! caller sees the same field. Elements are canonical indices in `[0, q)`:
//! the element `c0 + c1·θ + ... + c_{ell-1}·θ^{ell-1}` has index
//! `Σ c_i · p^i`.
//!
//! The [`Field`] context owns the modulus and all lookup tables (negation,
//! inversion, trace, quadratic character, square roots, and — for small
//! `q` — full addition/multiplication tables). It is immutable after
//! construction and safe to share across threads; all operations are pure.

use crate::cyclotomic::Cyclotomic;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A field element, stored as its canonical index in `[0, q)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fq(pub u32);

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fq({})", self.0)
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Largest supported field order. Tables are O(q); sweeps are O(q^{2n}).
pub const MAX_Q: u64 = 1 << 17;

/// Below this order the field carries full q×q add/mul tables.
const OP_TABLE_MAX_Q: u64 = 1024;

pub struct Field {
    p: u32,
    ell: u32,
    q: u32,
    /// Monic modulus, constant term first, length `ell + 1`.
    modulus: Vec<u32>,
    /// `θ^{ell+k}` on the power basis, for `k` in `0..ell-1`.
    reduction: Vec<Vec<u32>>,
    add_table: Option<Vec<u32>>,
    mul_table: Option<Vec<u32>>,
    neg_table: Vec<u32>,
    inv_table: Vec<u32>,
    trace_table: Vec<u32>,
    /// +1 on nonzero squares, -1 on non-squares, 0 at index 0.
    eta_table: Vec<i8>,
    /// Smallest-index square root, or `u32::MAX` for non-squares.
    sqrt_table: Vec<u32>,
    smallest_nonsquare: u32,
    gauss: Cyclotomic,
}

impl Field {
    /// Construct `F_{p^ell}` with the deterministic modulus.
    pub fn new(p: u64, ell: u32) -> Result<Field> {
        if p < 3 || p % 2 == 0 || !is_prime(p) {
            return Err(Error::InvalidParameter(format!(
                "p = {p}: odd prime required"
            )));
        }
        if ell == 0 {
            return Err(Error::InvalidParameter("ell must be >= 1".into()));
        }
        let mut q: u64 = 1;
        for _ in 0..ell {
            q = q.saturating_mul(p);
            if q > MAX_Q {
                return Err(Error::InvalidParameter(format!(
                    "q = {p}^{ell} exceeds the supported maximum {MAX_Q}"
                )));
            }
        }
        let modulus = smallest_irreducible(p as u32, ell);

        let mut field = Field {
            p: p as u32,
            ell,
            q: q as u32,
            reduction: reduction_rows(&modulus, p as u32, ell),
            modulus,
            add_table: None,
            mul_table: None,
            neg_table: Vec::new(),
            inv_table: Vec::new(),
            trace_table: Vec::new(),
            eta_table: Vec::new(),
            sqrt_table: Vec::new(),
            smallest_nonsquare: 0,
            gauss: Cyclotomic::zero(p as u32),
        };
        field.build_tables();
        field.gauss = field.compute_gauss_sum();
        Ok(field)
    }

    /// Parse `"p^ell"` or a bare prime power `"q"`.
    pub fn parse(spec: &str) -> Result<Field> {
        let spec = spec.trim();
        if let Some((p_str, ell_str)) = spec.split_once('^') {
            let p: u64 = p_str
                .parse()
                .map_err(|_| Error::Parse(format!("bad field spec {spec:?}")))?;
            let ell: u32 = ell_str
                .parse()
                .map_err(|_| Error::Parse(format!("bad field spec {spec:?}")))?;
            return Field::new(p, ell)
                .map_err(|_| Error::Parse(format!("{spec}: odd prime power required")));
        }
        let q: u64 = spec
            .parse()
            .map_err(|_| Error::Parse(format!("bad field spec {spec:?}")))?;
        let (p, ell) = factor_prime_power(q)
            .ok_or_else(|| Error::Parse(format!("{spec}: odd prime power required")))?;
        Field::new(p, ell).map_err(|_| Error::Parse(format!("{spec}: odd prime power required")))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// The extension degree `ell` (so `q = p^ell`).
    pub fn extension_degree(&self) -> u32 {
        self.ell
    }

    /// The field order `q`.
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, constant term first, length `ell + 1`.
    pub fn modulus_coeffs(&self) -> &[u32] {
        &self.modulus
    }

    pub fn modulus_string(&self) -> String {
        self.modulus
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// `"p^ell"`.
    pub fn spec_string(&self) -> String {
        format!("{}^{}", self.p, self.ell)
    }

    /// Full serialized form `"p^ell:modulus-coefficients"`.
    pub fn descriptor(&self) -> String {
        format!("{}:{}", self.spec_string(), self.modulus_string())
    }

    #[inline]
    pub fn zero(&self) -> Fq {
        Fq(0)
    }

    #[inline]
    pub fn one(&self) -> Fq {
        Fq(1)
    }

    /// The element with the given canonical index.
    pub fn element(&self, index: u64) -> Result<Fq> {
        if index < self.q as u64 {
            Ok(Fq(index as u32))
        } else {
            Err(Error::InvalidParameter(format!(
                "element index {index} out of range [0, {})",
                self.q
            )))
        }
    }

    /// The image of the rational integer `n` (the element `n · 1`).
    pub fn from_int(&self, n: i64) -> Fq {
        Fq((n.rem_euclid(self.p as i64)) as u32)
    }

    /// Coefficients `c_0, ..., c_{ell-1}` of an element on the θ-basis.
    pub fn coefficients(&self, x: Fq) -> Vec<u32> {
        let mut out = vec![0u32; self.ell as usize];
        self.decode_into(x.0, &mut out);
        out
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.q).map(Fq)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Fq> {
        (1..self.q).map(Fq)
    }

    #[inline]
    fn decode_into(&self, mut idx: u32, out: &mut [u32]) {
        for slot in out.iter_mut() {
            *slot = idx % self.p;
            idx /= self.p;
        }
    }

    fn encode(&self, coeffs: &[u32]) -> Fq {
        let mut idx = 0u32;
        for &c in coeffs.iter().rev() {
            idx = idx * self.p + c;
        }
        Fq(idx)
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        if let Some(t) = &self.add_table {
            t[a.0 as usize * self.q as usize + b.0 as usize].into()
        } else {
            self.slow_add(a, b)
        }
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if let Some(t) = &self.mul_table {
            t[a.0 as usize * self.q as usize + b.0 as usize].into()
        } else {
            self.slow_mul(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        Fq(self.neg_table[a.0 as usize])
    }

    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a.0 == 0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(Fq(self.inv_table[a.0 as usize]))
        }
    }

    pub fn pow(&self, a: Fq, mut e: u64) -> Fq {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The absolute trace `Tr(x) = x + x^p + ... + x^{p^{ell-1}}` as a
    /// residue in `[0, p)`.
    #[inline]
    pub fn trace(&self, x: Fq) -> u32 {
        self.trace_table[x.0 as usize]
    }

    /// The canonical additive character `χ(x) = ζ_p^{Tr(x)}`, exactly.
    pub fn chi(&self, x: Fq) -> Cyclotomic {
        Cyclotomic::zeta_pow(self.p, self.trace(x))
    }

    /// The quadratic character: `+1` on nonzero squares, `-1` otherwise.
    pub fn eta(&self, x: Fq) -> Result<i32> {
        if x.0 == 0 {
            Err(Error::Domain("eta(0) is undefined".into()))
        } else {
            Ok(self.eta_table[x.0 as usize] as i32)
        }
    }

    /// Table lookup without the zero check; callers guarantee `x != 0`.
    #[inline]
    pub(crate) fn eta_unchecked(&self, x: Fq) -> i32 {
        debug_assert!(x.0 != 0);
        self.eta_table[x.0 as usize] as i32
    }

    /// A square root of `x` (the smallest-index one), if it exists.
    pub fn sqrt(&self, x: Fq) -> Option<Fq> {
        let r = self.sqrt_table[x.0 as usize];
        (r != u32::MAX).then_some(Fq(r))
    }

    /// The non-square of smallest canonical index.
    pub fn smallest_nonsquare(&self) -> Fq {
        Fq(self.smallest_nonsquare)
    }

    /// The Gauss sum `Σ_{t≠0} η(t) χ(t)`, an exact element of `Z[ζ_p]`.
    pub fn gauss_sum(&self) -> Cyclotomic {
        self.gauss.clone()
    }

    /// Closed form for `Σ_{t∈F_q} χ(a·t² + b·t)` with `a ≠ 0`:
    /// `η(a) · χ(b²/(-4a)) · G`.
    pub fn completed_square_sum(&self, a: Fq, b: Fq) -> Result<Cyclotomic> {
        if a.0 == 0 {
            return Err(Error::Domain("completed square sum requires a != 0".into()));
        }
        let minus_4a = self.neg(self.mul(self.from_int(4), a));
        let arg = self.mul(self.mul(b, b), self.inv(minus_4a)?);
        let val = &self.chi(arg) * &self.gauss;
        Ok(val.scaled(self.eta_unchecked(a) as i128))
    }

    /// Closed form for `Σ_{s≠0} η(s) χ(b·s^{-1})` with `b ≠ 0`: `η(b) · G`.
    pub fn eta_weighted_inverse_sum(&self, b: Fq) -> Result<Cyclotomic> {
        if b.0 == 0 {
            return Err(Error::Domain(
                "eta-weighted inverse sum requires b != 0".into(),
            ));
        }
        Ok(self.gauss.scaled(self.eta_unchecked(b) as i128))
    }

    fn slow_add(&self, a: Fq, b: Fq) -> Fq {
        let ell = self.ell as usize;
        let mut ca = vec![0u32; ell];
        let mut cb = vec![0u32; ell];
        self.decode_into(a.0, &mut ca);
        self.decode_into(b.0, &mut cb);
        for (x, y) in ca.iter_mut().zip(&cb) {
            *x = (*x + *y) % self.p;
        }
        self.encode(&ca)
    }

    fn slow_mul(&self, a: Fq, b: Fq) -> Fq {
        let ell = self.ell as usize;
        let p = self.p as u64;
        let mut ca = vec![0u32; ell];
        let mut cb = vec![0u32; ell];
        self.decode_into(a.0, &mut ca);
        self.decode_into(b.0, &mut cb);
        // Schoolbook product, degree <= 2·ell - 2.
        let mut prod = vec![0u64; 2 * ell - 1];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // Fold θ^{ell+k} back with the precomputed reduction rows.
        let mut out = vec![0u64; ell];
        out.copy_from_slice(&prod[..ell]);
        for k in 0..ell.saturating_sub(1) {
            let c = prod[ell + k];
            if c == 0 {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(&self.reduction[k]) {
                *o = (*o + c * r as u64) % p;
            }
        }
        let coeffs: Vec<u32> = out.iter().map(|&c| c as u32).collect();
        self.encode(&coeffs)
    }

    fn slow_neg(&self, a: Fq) -> Fq {
        let ell = self.ell as usize;
        let mut c = vec![0u32; ell];
        self.decode_into(a.0, &mut c);
        for x in c.iter_mut() {
            *x = (self.p - *x) % self.p;
        }
        self.encode(&c)
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;

        if (self.q as u64) <= OP_TABLE_MAX_Q {
            let mut add = vec![0u32; q * q];
            let mut mul = vec![0u32; q * q];
            for a in 0..q as u32 {
                for b in a..q as u32 {
                    let s = self.slow_add(Fq(a), Fq(b)).0;
                    let m = self.slow_mul(Fq(a), Fq(b)).0;
                    add[a as usize * q + b as usize] = s;
                    add[b as usize * q + a as usize] = s;
                    mul[a as usize * q + b as usize] = m;
                    mul[b as usize * q + a as usize] = m;
                }
            }
            self.add_table = Some(add);
            self.mul_table = Some(mul);
        }

        self.neg_table = (0..q as u32).map(|a| self.slow_neg(Fq(a)).0).collect();

        // Trace of the basis monomials; Tr is F_p-linear.
        let mut basis_traces = vec![0u32; self.ell as usize];
        for (j, bt) in basis_traces.iter_mut().enumerate() {
            let theta_j = self.encode(
                &(0..self.ell as usize)
                    .map(|i| u32::from(i == j))
                    .collect::<Vec<_>>(),
            );
            let mut term = theta_j;
            let mut acc = self.zero();
            for _ in 0..self.ell {
                acc = self.add(acc, term);
                term = self.pow(term, self.p as u64);
            }
            let coeffs = self.coefficients(acc);
            debug_assert!(coeffs[1..].iter().all(|&c| c == 0), "trace not in F_p");
            *bt = coeffs[0];
        }
        let mut trace = vec![0u32; q];
        let mut digits = vec![0u32; self.ell as usize];
        for (x, tr) in trace.iter_mut().enumerate() {
            self.decode_into(x as u32, &mut digits);
            let mut t = 0u64;
            for (c, b) in digits.iter().zip(&basis_traces) {
                t += *c as u64 * *b as u64;
            }
            *tr = (t % self.p as u64) as u32;
        }
        self.trace_table = trace;

        // Mark squares by sweeping y ↦ y²; remember the smallest root.
        let mut eta = vec![-1i8; q];
        let mut sqrt = vec![u32::MAX; q];
        eta[0] = 0;
        sqrt[0] = 0;
        for y in 1..q as u32 {
            let s = self.mul(Fq(y), Fq(y)).0 as usize;
            eta[s] = 1;
            if y < sqrt[s] {
                sqrt[s] = y;
            }
        }
        self.smallest_nonsquare = (1..q as u32)
            .find(|&x| eta[x as usize] == -1)
            .expect("every F_q with odd q > 1 has a non-square");
        self.eta_table = eta;
        self.sqrt_table = sqrt;

        // Batch inversion: prefix products, one Fermat inversion, unwind.
        let mut prefix = vec![Fq(0); q];
        let mut acc = self.one();
        for x in 1..q as u32 {
            prefix[x as usize] = acc;
            acc = self.mul(acc, Fq(x));
        }
        let mut suffix = self.pow(acc, (self.q - 2) as u64);
        let mut inv = vec![0u32; q];
        for x in (1..q as u32).rev() {
            inv[x as usize] = self.mul(suffix, prefix[x as usize]).0;
            suffix = self.mul(suffix, Fq(x));
        }
        self.inv_table = inv;
    }

    fn compute_gauss_sum(&self) -> Cyclotomic {
        let mut counts = vec![0i128; self.p as usize];
        for t in self.nonzero_elements() {
            counts[self.trace(t) as usize] += self.eta_unchecked(t) as i128;
        }
        Cyclotomic::from_zeta_counts(self.p, &counts)
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.descriptor())
    }
}

impl From<u32> for Fq {
    fn from(v: u32) -> Self {
        Fq(v)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn factor_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 3 || q % 2 == 0 {
        return None;
    }
    let mut p = 3u64;
    while p * p <= q {
        if q % p == 0 {
            let mut rest = q;
            let mut ell = 0u32;
            while rest % p == 0 {
                rest /= p;
                ell += 1;
            }
            return (rest == 1).then_some((p, ell));
        }
        p += 2;
    }
    is_prime(q).then_some((q, 1))
}

/// `θ^{ell+k}` on the power basis for `k` in `0..ell-1`, derived from the
/// monic modulus.
fn reduction_rows(modulus: &[u32], p: u32, ell: u32) -> Vec<Vec<u32>> {
    let ell = ell as usize;
    let mut rows = Vec::with_capacity(ell.saturating_sub(1));
    if ell == 1 {
        return rows;
    }
    // θ^ell = -(m_0 + m_1 θ + ... + m_{ell-1} θ^{ell-1})
    let mut row: Vec<u32> = modulus[..ell].iter().map(|&m| (p - m % p) % p).collect();
    rows.push(row.clone());
    for _ in 1..ell - 1 {
        // Multiply by θ: shift, then fold the overflow with the first row.
        let carry = row[ell - 1];
        for i in (1..ell).rev() {
            row[i] = row[i - 1];
        }
        row[0] = 0;
        if carry != 0 {
            for (r, &m) in row.iter_mut().zip(&rows[0]) {
                *r = ((*r as u64 + carry as u64 * m as u64) % p as u64) as u32;
            }
        }
        rows.push(row.clone());
    }
    rows
}

/// The lexicographically smallest monic irreducible polynomial of degree
/// `ell` over `F_p` (non-leading coefficient tuples compared
/// low-degree-first). For `ell = 1` this is `θ` itself, realizing plain
/// `F_p`.
fn smallest_irreducible(p: u32, ell: u32) -> Vec<u32> {
    let ell = ell as usize;
    let total = (p as u64).pow(ell as u32);
    for n in 0..total {
        // Big-endian digits so that ascending n enumerates tuples in
        // low-degree-first lexicographic order.
        let mut coeffs = vec![0u32; ell + 1];
        coeffs[ell] = 1;
        let mut rest = n;
        for i in (0..ell).rev() {
            coeffs[ell - 1 - i] = (rest / (p as u64).pow(i as u32)) as u32 % p;
            rest %= (p as u64).pow(i as u32);
        }
        if poly_is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p")
}

// --- dense polynomial arithmetic over F_p (constant term first) ---

fn poly_trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of `a` by a monic `f`.
fn poly_rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let df = f.len() - 1;
    if df == 0 {
        // Division by a unit leaves no remainder.
        return vec![0];
    }
    let mut r = a.to_vec();
    while r.len() > df && r.len() > 1 {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - df;
        if lead != 0 {
            for (i, &fc) in f.iter().enumerate() {
                let idx = i + shift;
                r[idx] = (r[idx] + p * p - (lead * fc) % p) % p;
            }
        }
        r.pop();
        poly_trim(&mut r);
    }
    poly_trim(&mut r);
    r
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !(y.len() == 1 && y[0] == 0) {
        // Make y monic so poly_rem applies.
        let lead = *y.last().unwrap();
        let inv = mod_pow(lead, p - 2, p);
        let monic: Vec<u64> = y.iter().map(|&c| c * inv % p).collect();
        let r = poly_rem(&x, &monic, p);
        x = monic;
        y = r;
    }
    x
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn poly_pow_mod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(&poly_mul(&acc, &b, p), f, p);
        }
        b = poly_rem(&poly_mul(&b, &b, p), f, p);
        e >>= 1;
    }
    acc
}

/// Rabin's irreducibility test for a monic polynomial of degree `n`:
/// `x^{p^n} ≡ x (mod f)` and `gcd(x^{p^{n/t}} - x, f) = 1` for every prime
/// `t | n`.
fn poly_is_irreducible(coeffs: &[u32], p: u32) -> bool {
    let n = coeffs.len() - 1;
    if n == 1 {
        return true;
    }
    let p = p as u64;
    let f: Vec<u64> = coeffs.iter().map(|&c| c as u64).collect();
    let x = vec![0u64, 1];

    // Iterated Frobenius: frob[i] = x^{p^i} mod f.
    let mut frob = Vec::with_capacity(n + 1);
    frob.push(poly_rem(&x, &f, p));
    for i in 0..n {
        frob.push(poly_pow_mod(&frob[i], p, &f, p));
    }
    if frob[n] != poly_rem(&x, &f, p) {
        return false;
    }
    for t in prime_divisors(n as u64) {
        let h = &frob[n / t as usize];
        // gcd(h - x, f)
        let mut diff = h.clone();
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        poly_trim(&mut diff);
        let g = poly_gcd(&diff, &f, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn prime_field_has_trivial_modulus() {
        let f = Field::new(3, 1).unwrap();
        assert_eq!(f.order(), 3);
        assert_eq!(f.modulus_coeffs(), &[0, 1]);
        assert_eq!(f.descriptor(), "3^1:0,1");
    }

    #[test]
    fn f9_gets_theta_squared_plus_one() {
        // Independent oracle: walk monic degree-2 polynomials over F_3 in
        // low-degree-first lexicographic order and take the first one with
        // no root.
        let mut expected = None;
        'outer: for c0 in 0..3u32 {
            for c1 in 0..3u32 {
                let has_root = (0..3u32).any(|x| (c0 + c1 * x + x * x) % 3 == 0);
                if !has_root {
                    expected = Some(vec![c0, c1, 1]);
                    break 'outer;
                }
            }
        }
        assert_eq!(expected.as_deref(), Some(&[1, 0, 1][..]));

        let f = Field::new(3, 2).unwrap();
        assert_eq!(f.modulus_coeffs(), expected.unwrap().as_slice());
        assert_eq!(f.descriptor(), "3^2:1,0,1");
    }

    #[test]
    fn even_or_composite_p_is_rejected() {
        assert!(Field::new(2, 1).is_err());
        assert!(Field::new(9, 1).is_err());
        assert!(Field::new(1, 1).is_err());
        assert!(Field::new(3, 0).is_err());
    }

    #[test]
    fn parse_accepts_both_spellings() {
        assert_eq!(Field::parse("3^2").unwrap().order(), 9);
        assert_eq!(Field::parse("27").unwrap().spec_string(), "3^3");
        assert_eq!(Field::parse("13").unwrap().order(), 13);
        let err = Field::parse("2^3").unwrap_err().to_string();
        assert!(err.contains("odd prime power required"), "{err}");
        assert!(Field::parse("12").is_err());
    }

    #[test]
    fn theta_squared_is_minus_one_in_f9() {
        let f = Field::new(3, 2).unwrap();
        let theta = Fq(3); // index p^1
        assert_eq!(f.mul(theta, theta), Fq(2));
    }

    #[test]
    fn inverse_sweeps_the_whole_group() {
        let f = Field::new(3, 5).unwrap();
        assert_eq!(f.inv(f.one()).unwrap(), f.one());
        for x in f.nonzero_elements() {
            assert_eq!(f.mul(x, f.inv(x).unwrap()), f.one());
        }
        assert!(matches!(f.inv(Fq(0)), Err(Error::DivisionByZero)));
    }

    #[test]
    fn trace_examples() {
        let f9 = Field::new(3, 2).unwrap();
        assert_eq!(f9.trace(Fq(0)), 0);
        assert_eq!(f9.trace(f9.one()), 2); // ell · 1 mod p
        assert_eq!(f9.trace(Fq(3)), 0); // θ + θ^3 = θ - θ

        // Additivity on the full field.
        for x in f9.elements() {
            for y in f9.elements() {
                assert_eq!(f9.trace(f9.add(x, y)), (f9.trace(x) + f9.trace(y)) % f9.p());
            }
        }
    }

    #[test]
    fn chi_is_the_canonical_character() {
        let f3 = Field::new(3, 1).unwrap();
        assert_eq!(f3.chi(Fq(0)), Cyclotomic::one(3));
        assert_eq!(f3.chi(Fq(1)), Cyclotomic::zeta_pow(3, 1));

        for q in [3u64, 5, 7, 9, 27] {
            let f = Field::parse(&q.to_string()).unwrap();
            let mut total = Cyclotomic::zero(f.p());
            for x in f.elements() {
                total += &f.chi(x);
            }
            assert!(total.is_zero(), "sum of chi over F_{q} must vanish");
        }
    }

    #[test]
    fn chi_is_multiplicative_over_addition() {
        let f = Field::new(5, 2).unwrap();
        for x in f.elements().step_by(3) {
            for y in f.elements().step_by(2) {
                assert_eq!(f.chi(f.add(x, y)), &f.chi(x) * &f.chi(y));
            }
        }
    }

    #[test]
    fn eta_examples() {
        let f7 = Field::new(7, 1).unwrap();
        assert_eq!(f7.eta(Fq(1)).unwrap(), 1);
        assert_eq!(f7.eta(Fq(2)).unwrap(), 1); // squares mod 7: {1, 2, 4}
        assert!(f7.eta(Fq(0)).is_err());

        // η(-1) = -1 iff q ≡ 3 (mod 4).
        for (q, expect) in [(3u64, -1), (7, -1), (5, 1), (9, 1), (13, 1)] {
            let f = Field::parse(&q.to_string()).unwrap();
            assert_eq!(f.eta(f.from_int(-1)).unwrap(), expect, "eta(-1) in F_{q}");
        }
    }

    #[test]
    fn eta_is_multiplicative_and_balanced() {
        for q in [3u64, 9, 11, 25] {
            let f = Field::parse(&q.to_string()).unwrap();
            for x in f.nonzero_elements() {
                for y in f.nonzero_elements() {
                    assert_eq!(
                        f.eta(f.mul(x, y)).unwrap(),
                        f.eta(x).unwrap() * f.eta(y).unwrap()
                    );
                }
            }
            for a in f.nonzero_elements() {
                let total: i64 = f
                    .nonzero_elements()
                    .map(|t| f.eta(f.mul(a, t)).unwrap() as i64)
                    .sum();
                assert_eq!(total, 0);
            }
        }
    }

    #[test]
    fn gauss_sum_in_f3_is_zeta_minus_zeta_squared() {
        let f = Field::new(3, 1).unwrap();
        let expected = &Cyclotomic::zeta_pow(3, 1) - &Cyclotomic::zeta_pow(3, 2);
        assert_eq!(f.gauss_sum(), expected);
        let sq = &f.gauss_sum() * &f.gauss_sum();
        assert_eq!(sq.as_int(), Some(-3));
    }

    #[test]
    fn gauss_identities_hold_exactly() {
        for q in [3u64, 5, 7, 9, 11, 13, 25, 27] {
            let f = Field::parse(&q.to_string()).unwrap();
            let g = f.gauss_sum();
            let eta_m1 = f.eta(f.from_int(-1)).unwrap() as i128;
            assert_eq!(
                (&g * &g).as_int(),
                Some(eta_m1 * q as i128),
                "G^2 = eta(-1) q in F_{q}"
            );
            assert_eq!(
                (&g * &g.conjugate()).as_int(),
                Some(q as i128),
                "G conj(G) = q in F_{q}"
            );
        }
    }

    fn brute_completed_square(f: &Field, a: Fq, b: Fq) -> Cyclotomic {
        let mut counts = vec![0i128; f.p() as usize];
        for t in f.elements() {
            let v = f.add(f.mul(a, f.mul(t, t)), f.mul(b, t));
            counts[f.trace(v) as usize] += 1;
        }
        Cyclotomic::from_zeta_counts(f.p(), &counts)
    }

    #[test]
    fn completed_square_closed_form_matches_brute_force() {
        for q in [3u64, 5, 7, 9] {
            let f = Field::parse(&q.to_string()).unwrap();
            for a in f.nonzero_elements() {
                for b in f.elements() {
                    assert_eq!(
                        f.completed_square_sum(a, b).unwrap(),
                        brute_completed_square(&f, a, b),
                        "q={q} a={a} b={b}"
                    );
                }
            }
        }
    }

    #[test]
    fn completed_square_examples() {
        let f3 = Field::new(3, 1).unwrap();
        assert_eq!(
            f3.completed_square_sum(Fq(1), Fq(0)).unwrap(),
            f3.gauss_sum()
        );
        // q=3, a=1, b=1: closed form is χ(2)·G since 1/(-4) ≡ 2 (mod 3).
        let expected = &f3.chi(Fq(2)) * &f3.gauss_sum();
        assert_eq!(f3.completed_square_sum(Fq(1), Fq(1)).unwrap(), expected);
        assert!(f3.completed_square_sum(Fq(0), Fq(1)).is_err());
    }

    #[test]
    fn eta_weighted_inverse_sum_matches_brute_force() {
        for q in [3u64, 5, 7, 9, 11] {
            let f = Field::parse(&q.to_string()).unwrap();
            for b in f.nonzero_elements() {
                let mut counts = vec![0i128; f.p() as usize];
                for s in f.nonzero_elements() {
                    let arg = f.mul(b, f.inv(s).unwrap());
                    counts[f.trace(arg) as usize] += f.eta(s).unwrap() as i128;
                }
                let brute = Cyclotomic::from_zeta_counts(f.p(), &counts);
                let closed = f.eta_weighted_inverse_sum(b).unwrap();
                assert_eq!(closed, brute, "q={q} b={b}");
                let sign = f.eta(b).unwrap() as i128;
                assert_eq!(closed, f.gauss_sum().scaled(sign));
            }
        }
        assert!(Field::new(3, 1)
            .unwrap()
            .eta_weighted_inverse_sum(Fq(0))
            .is_err());
    }

    #[test]
    fn slow_path_agrees_with_tables() {
        // F_{3^5} = 243 elements uses tables; exercise the slow path
        // directly against them.
        let f = Field::new(3, 5).unwrap();
        for a in f.elements().step_by(7) {
            for b in f.elements().step_by(11) {
                assert_eq!(f.add(a, b), f.slow_add(a, b));
                assert_eq!(f.mul(a, b), f.slow_mul(a, b));
            }
        }
    }

    proptest! {
        #[test]
        fn field_axioms_in_f27(a in 0u32..27, b in 0u32..27, c in 0u32..27) {
            let f = Field::new(3, 3).unwrap();
            let (a, b, c) = (Fq(a), Fq(b), Fq(c));
            prop_assert_eq!(f.add(a, b), f.add(b, a));
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        }

        #[test]
        fn sqrt_is_consistent(x in 0u32..25) {
            let f = Field::new(5, 2).unwrap();
            let x = Fq(x);
            if let Some(r) = f.sqrt(x) {
                prop_assert_eq!(f.mul(r, r), x);
            } else {
                prop_assert_eq!(f.eta(x).unwrap(), -1);
            }
        }
    }
}
