//! Reducing quadratic forms to the diagonal standard shape.
//!
//! Takes the sum-of-squares form over F_3 in three variables, reduces it
//! to x² - y² - z² with an explicit change of basis, and shows dual forms
//! and the discriminant condition on ε.
//!
//! Run with: cargo run --example standard_forms

use quadrance::forms::{standardize, Matrix, QuadraticForm, StandardForm};
use quadrance::{Field, Fq};

fn main() {
    println!("=== Standard forms ===\n");

    let f3 = Field::new(3, 1).unwrap();
    let euclid = QuadraticForm::euclidean(3);
    let (standard, c) = standardize(&f3, &euclid).unwrap();

    println!(
        "x₁²+x₂²+x₃² over F_3 reduces to coefficients {:?}",
        idx(standard.coefficients())
    );
    println!(
        "epsilon = {} (a non-square here, since η(-1) = -1 in F_3)",
        standard.epsilon()
    );
    println!("change of basis C (columns are the new coordinates):\n{c:?}");
    println!("det C = {}\n", c.determinant(&f3));

    // Spot-check the defining identity Q(C·y) = Q'(y).
    for y in [[Fq(1), Fq(0), Fq(2)], [Fq(2), Fq(2), Fq(1)]] {
        let x = c.apply(&f3, &y);
        assert_eq!(
            euclid.evaluate(&f3, &x).unwrap(),
            standard.evaluate(&f3, &y).unwrap()
        );
        println!(
            "Q(C·{:?}) = Q'({:?}) = {}",
            idx(&y),
            idx(&y),
            standard.evaluate(&f3, &y).unwrap()
        );
    }
    println!();

    // A form with an off-diagonal matrix: 2·x·y over F_5.
    let f5 = Field::new(5, 1).unwrap();
    let hyperbolic =
        QuadraticForm::new(&f5, Matrix::new(2, vec![Fq(0), Fq(1), Fq(1), Fq(0)])).unwrap();
    let (std5, _) = standardize(&f5, &hyperbolic).unwrap();
    println!(
        "2xy over F_5 reduces to {:?} with epsilon {}",
        idx(std5.coefficients()),
        std5.epsilon()
    );

    // Dual forms invert epsilon entrywise.
    let form = StandardForm::new(&f5, 4, Fq(2)).unwrap();
    let dual = form.dual(&f5);
    println!(
        "\nd=4 eps=2: coefficients {:?}, dual {:?} (2⁻¹ = 3 mod 5)",
        idx(form.coefficients()),
        idx(dual.coefficients())
    );
    assert_eq!(dual.dual(&f5), form);
    println!("dual is an involution");
}

fn idx(v: &[Fq]) -> Vec<u32> {
    v.iter().map(|c| c.0).collect()
}
