//! A certified Hausdorff-dimension lower bound near the accumulation point.
//!
//! Lagrange numbers below 4/sqrt 3 form a discrete set, but just above it
//! the spectrum is already large: inside [0, 4/sqrt 3 + eps) it contains
//! the Lagrange numbers of a full shift on four blocks.  The construction
//! picks a block length m for the requested eps, realizes the four block
//! maps as an iterated function system of Möbius contractions, and solves
//! the Moran equation sum r_i^s = 1 for the similarity dimension with a
//! certified enclosure — a positive lower bound for the Hausdorff
//! dimension.
//!
//! Run with: `cargo run --example dimension_bound`

use h6_spectra::dimension::{dimension_lower_bound, four_over_sqrt3};
use h6_spectra::exact::{AlgebraicReal, Rational};

fn rational_decimal(r: &Rational, sig: usize) -> String {
    AlgebraicReal::from_rational(r.clone()).decimal(sig)
}

fn main() {
    let four = four_over_sqrt3();
    println!("accumulation point 4/sqrt 3 = {}", four.decimal(15));
    println!();
    println!("eps     m   contraction ratios (decimal)             dimension bound");
    for (num, den) in [(1i32, 2i32), (1, 5), (1, 10)] {
        let eps = Rational::new(num.into(), den.into());
        let b = dimension_lower_bound(&eps).expect("construction succeeds");
        let ratios: Vec<String> = b.ratios.iter().map(|r| r.decimal(6)).collect();
        let lo = rational_decimal(&b.root.lower, 12);
        println!("{num}/{den:<4} {:>3}  {}   s >= {lo}", b.m, ratios.join(" "));
    }
    println!();
    println!("each bound is the exact Moran similarity dimension of an");
    println!("explicit four-map system, enclosed from below");
}
