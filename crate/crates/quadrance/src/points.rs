//! Subsets of `F_q^n` with O(1) membership, plus point index encoding.
//!
//! A point `(x_0, ..., x_{n-1})` is identified with the mixed-radix index
//! `Σ x_i · q^i` (coordinate 0 least significant), where each `x_i` is a
//! canonical element index. Sets are bit tables over the `q^n` indices.

use crate::field::{Field, Fq};
use crate::forms::Matrix;
use crate::{Error, Result};
use rand::Rng;

/// Allocation guard for bit tables over `F_q^n`.
const MAX_SPACE: u64 = 1 << 31;

/// `q^dim`, or an error when the ambient space is too large to enumerate.
pub fn space_size(q: u32, dim: u32) -> Result<usize> {
    let mut total: u64 = 1;
    for _ in 0..dim {
        total = total.saturating_mul(q as u64);
        if total > MAX_SPACE {
            return Err(Error::InvalidParameter(format!(
                "F_{q}^{dim} has more than {MAX_SPACE} points"
            )));
        }
    }
    Ok(total as usize)
}

pub fn encode_point(q: u32, coords: &[Fq]) -> usize {
    let mut idx = 0usize;
    for &c in coords.iter().rev() {
        idx = idx * q as usize + c.0 as usize;
    }
    idx
}

pub fn decode_point(q: u32, dim: u32, index: usize) -> Vec<Fq> {
    let mut out = vec![Fq(0); dim as usize];
    decode_point_into(q, index, &mut out);
    out
}

#[inline]
pub fn decode_point_into(q: u32, mut index: usize, out: &mut [Fq]) {
    for slot in out.iter_mut() {
        *slot = Fq((index % q as usize) as u32);
        index /= q as usize;
    }
}

/// The usual dot product `Σ a_i b_i` in `F_q`.
#[inline]
pub fn dot(field: &Field, a: &[Fq], b: &[Fq]) -> Fq {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = field.zero();
    for (&x, &y) in a.iter().zip(b) {
        acc = field.add(acc, field.mul(x, y));
    }
    acc
}

/// A subset of `F_q^dim`.
#[derive(Clone, PartialEq, Eq)]
pub struct PointSet {
    q: u32,
    dim: u32,
    members: Vec<bool>,
    count: u64,
}

impl PointSet {
    pub fn empty(q: u32, dim: u32) -> Result<PointSet> {
        let size = space_size(q, dim)?;
        Ok(PointSet {
            q,
            dim,
            members: vec![false; size],
            count: 0,
        })
    }

    pub fn full(q: u32, dim: u32) -> Result<PointSet> {
        let size = space_size(q, dim)?;
        Ok(PointSet {
            q,
            dim,
            members: vec![true; size],
            count: size as u64,
        })
    }

    /// Build from a membership predicate over point indices.
    pub fn from_fn(q: u32, dim: u32, mut pred: impl FnMut(usize) -> bool) -> Result<PointSet> {
        let mut set = PointSet::empty(q, dim)?;
        for idx in 0..set.members.len() {
            if pred(idx) {
                set.members[idx] = true;
                set.count += 1;
            }
        }
        Ok(set)
    }

    pub fn from_indices(q: u32, dim: u32, indices: &[usize]) -> Result<PointSet> {
        let mut set = PointSet::empty(q, dim)?;
        for &idx in indices {
            set.insert(idx)?;
        }
        Ok(set)
    }

    /// Uniform random subset of the given cardinality, without replacement.
    pub fn random_subset(q: u32, dim: u32, size: usize, rng: &mut impl Rng) -> Result<PointSet> {
        let space = space_size(q, dim)?;
        if size > space {
            return Err(Error::InvalidParameter(format!(
                "cannot sample {size} points from a space of {space}"
            )));
        }
        let picks = rand::seq::index::sample(rng, space, size);
        let mut set = PointSet::empty(q, dim)?;
        for idx in picks {
            set.members[idx] = true;
        }
        set.count = size as u64;
        Ok(set)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn space(&self) -> usize {
        self.members.len()
    }

    /// Cardinality of the set.
    pub fn len(&self) -> u64 {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    #[inline]
    pub fn contains(&self, index: usize) -> bool {
        self.members[index]
    }

    pub fn contains_point(&self, coords: &[Fq]) -> bool {
        self.contains(encode_point(self.q, coords))
    }

    pub fn insert(&mut self, index: usize) -> Result<()> {
        if index >= self.members.len() {
            return Err(Error::InvalidParameter(format!(
                "point index {index} out of range"
            )));
        }
        if !self.members[index] {
            self.members[index] = true;
            self.count += 1;
        }
        Ok(())
    }

    /// Member indices in ascending order.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
    }

    /// Member coordinate vectors, decoded.
    pub fn points(&self) -> impl Iterator<Item = Vec<Fq>> + '_ {
        self.indices().map(|i| decode_point(self.q, self.dim, i))
    }

    /// The image `{ M·x : x ∈ self }` under a square matrix.
    pub fn map_linear(&self, field: &Field, m: &Matrix) -> Result<PointSet> {
        if m.dim() != self.dim as usize {
            return Err(Error::DimensionMismatch {
                expected: self.dim as usize,
                actual: m.dim(),
            });
        }
        let mut out = PointSet::empty(self.q, self.dim)?;
        for x in self.points() {
            let y = m.apply(field, &x);
            out.insert(encode_point(self.q, &y))?;
        }
        Ok(out)
    }

    /// Serialize in the point-set file format: a `"n q"` header, then one
    /// point per line as `n` canonical indices.
    pub fn to_file_text(&self) -> String {
        let mut out = format!("{} {}\n", self.dim, self.q);
        for pt in self.points() {
            let line: Vec<String> = pt.iter().map(|c| c.0.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_file_text(text: &str) -> Result<PointSet> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty point-set file".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(Error::Parse(
                "point-set file: header must be \"n q\"".into(),
            ));
        }
        let dim: u32 = parts[0]
            .parse()
            .map_err(|_| Error::Parse("point-set file: bad dimension".into()))?;
        let q: u32 = parts[1]
            .parse()
            .map_err(|_| Error::Parse("point-set file: bad field order".into()))?;
        let mut set = PointSet::empty(q, dim)?;
        for line in lines {
            let coords: Vec<Fq> = line
                .split_whitespace()
                .map(|t| {
                    let v: u32 = t
                        .parse()
                        .map_err(|_| Error::Parse(format!("point-set file: bad index {t:?}")))?;
                    if v >= q {
                        return Err(Error::Parse(format!(
                            "point-set file: index {v} out of range [0, {q})"
                        )));
                    }
                    Ok(Fq(v))
                })
                .collect::<Result<_>>()?;
            if coords.len() != dim as usize {
                return Err(Error::Parse(format!(
                    "point-set file: point has {} coordinates, expected {dim}",
                    coords.len()
                )));
            }
            set.insert(encode_point(q, &coords))?;
        }
        Ok(set)
    }
}

impl std::fmt::Debug for PointSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PointSet(q={}, dim={}, |E|={})",
            self.q, self.dim, self.count
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn cardinality_tracks_insertions() {
        let mut set = PointSet::empty(3, 2).unwrap();
        assert!(set.is_empty());
        set.insert(4).unwrap();
        set.insert(4).unwrap();
        set.insert(0).unwrap();
        assert_eq!(set.len(), 2);
        assert_eq!(set.indices().collect::<Vec<_>>(), vec![0, 4]);
        assert!(set.insert(9).is_err());
    }

    #[test]
    fn random_subset_is_exact_and_seeded() {
        let mut rng = StdRng::seed_from_u64(7);
        let a = PointSet::random_subset(5, 2, 11, &mut rng).unwrap();
        assert_eq!(a.len(), 11);
        let mut rng2 = StdRng::seed_from_u64(7);
        let b = PointSet::random_subset(5, 2, 11, &mut rng2).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn file_format_round_trips() {
        let mut set = PointSet::empty(3, 2).unwrap();
        set.insert(encode_point(3, &[Fq(1), Fq(2)])).unwrap();
        set.insert(encode_point(3, &[Fq(0), Fq(0)])).unwrap();
        let text = set.to_file_text();
        assert!(text.starts_with("2 3\n"));
        let back = PointSet::parse_file_text(&text).unwrap();
        assert_eq!(back, set);

        assert!(PointSet::parse_file_text("2 3\n5 0\n").is_err());
        assert!(PointSet::parse_file_text("2 3\n1\n").is_err());
    }

    #[test]
    fn linear_image_preserves_cardinality_for_invertible_maps() {
        let field = Field::new(3, 1).unwrap();
        let mut set = PointSet::empty(3, 2).unwrap();
        for idx in [0usize, 1, 5, 7] {
            set.insert(idx).unwrap();
        }
        let m = Matrix::new(2, vec![Fq(1), Fq(1), Fq(0), Fq(1)]);
        let image = set.map_linear(&field, &m).unwrap();
        assert_eq!(image.len(), set.len());
        let back = image
            .map_linear(&field, &m.inverse(&field).unwrap())
            .unwrap();
        assert_eq!(back, set);
    }

    proptest! {
        #[test]
        fn encode_decode_round_trip(idx in 0usize..625) {
            let coords = decode_point(5, 4, idx);
            prop_assert_eq!(encode_point(5, &coords), idx);
            prop_assert!(coords.iter().all(|c| c.0 < 5));
        }
    }
}
