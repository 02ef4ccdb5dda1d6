//! Shared helpers for the integration suites: the O(|E|^4) quadruple
//! oracle and seeded random sets. The oracle is deliberately independent
//! of the histogram route it is used to check.

use quadrance::field::{Field, Fq};
use quadrance::forms::StandardForm;
use quadrance::points::PointSet;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn field(q: u64) -> Field {
    Field::parse(&q.to_string()).unwrap()
}

pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn random_set(f: &Field, dim: u32, size: usize, rng: &mut ChaCha8Rng) -> PointSet {
    PointSet::random_subset(f.order(), dim, size, rng).unwrap()
}

#[allow(dead_code)]
fn form_distance(f: &Field, form: &StandardForm, x: &[Fq], y: &[Fq]) -> Fq {
    let diff: Vec<Fq> = x.iter().zip(y).map(|(&a, &b)| f.sub(a, b)).collect();
    form.evaluate(f, &diff).unwrap()
}

/// Brute-force `(M(r), W(r))` by enumerating all of `E^4`. Only sensible
/// for |E| <= 12 or so.
#[allow(dead_code)]
pub fn quadruple_oracle(f: &Field, set: &PointSet, form: &StandardForm, r: Fq) -> (u64, u64) {
    assert!(set.len() <= 16, "quadruple oracle is O(|E|^4)");
    let pts: Vec<Vec<Fq>> = set.points().collect();
    let mut m_count = 0u64;
    let mut w_count = 0u64;
    for x in &pts {
        for y in &pts {
            let dxy = form_distance(f, form, x, y);
            for z in &pts {
                for w in &pts {
                    let dzw = form_distance(f, form, z, w);
                    if dxy == f.mul(r, dzw) {
                        m_count += 1;
                        if dzw != Fq(0) {
                            w_count += 1;
                        }
                    }
                }
            }
        }
    }
    (m_count, w_count)
}
