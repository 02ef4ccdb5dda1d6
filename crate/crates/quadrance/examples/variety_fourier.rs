//! Exact Fourier transforms of spheres and degree-2 varieties.
//!
//! Enumerates the zero sphere and a ratio variety over F_3, computes the
//! scaled transform q^n·f̂(m) both by brute force and by the closed
//! formulas, and confirms they agree at every frequency.
//!
//! Run with: cargo run --example variety_fourier

use quadrance::forms::StandardForm;
use quadrance::fourier::{self, RatioSpec, DEFAULT_BUDGET};
use quadrance::points::decode_point;
use quadrance::{Field, Fq};

fn main() {
    println!("=== Fourier transforms of varieties ===\n");

    let f3 = Field::new(3, 1).unwrap();
    let form = StandardForm::new(&f3, 2, Fq(1)).unwrap(); // x² - y²

    let s0 = fourier::sphere(&f3, &form, Fq(0)).unwrap();
    println!("zero sphere of x²-y² over F_3: {} points (2q-1)", s0.len());
    println!("m_index  q²·Ŝ(m)  (brute force = closed form)");
    let table = fourier::set_table(&f3, &s0, DEFAULT_BUDGET).unwrap();
    for (m_idx, brute) in table.iter().enumerate() {
        let m = decode_point(3, 2, m_idx);
        let closed = fourier::closed_sphere_zero(&f3, &form, &m).unwrap();
        assert_eq!(closed.value, brute.value);
        println!("  {m_idx:>2}      {}", brute.value);
    }
    println!();

    // A diagonal variety with an anisotropic coefficient vector.
    let a = [Fq(1), Fq(1)];
    let h = fourier::diagonal_variety(&f3, &a).unwrap();
    println!("x²+y² = 0 over F_3 has only the origin: |H| = {}", h.len());
    for m_idx in 0..9 {
        let m = decode_point(3, 2, m_idx);
        let closed = fourier::closed_diagonal(&f3, &a, &m).unwrap();
        let brute = fourier::bruteforce(&f3, &h, &m).unwrap();
        assert_eq!(closed.value, brute.value);
    }
    println!("closed diagonal transform matches brute force at all 9 frequencies\n");

    // The ratio variety Q(x) - r·Q(x') in dimension 2d = 4.
    let spec = RatioSpec::new(form, Fq(1)).unwrap();
    let v = fourier::product_variety(&f3, &spec).unwrap();
    println!(
        "ratio variety (r=1) in F_3⁴: {} points (q^(2d-1) + q^d - q^(d-1))",
        v.len()
    );
    let table = fourier::set_table(&f3, &v, DEFAULT_BUDGET).unwrap();
    let mut checked = 0;
    for (m_idx, brute) in table.iter().enumerate() {
        let m = decode_point(3, 4, m_idx);
        let closed = fourier::closed_product_variety(&f3, &spec, &m).unwrap();
        assert_eq!(closed.value, brute.value);
        checked += 1;
    }
    println!("closed ratio-variety transform matches at all {checked} frequencies");
    println!(
        "\nvalue at zero frequency is the cardinality: {}",
        table[0].value
    );
}
