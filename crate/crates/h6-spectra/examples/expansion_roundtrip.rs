//! Digit expansion of quadratic surds and its exact round trip.
//!
//! `expand` runs the cylinder subdivision of `[0, oo)` by first digits:
//! at each step the digit is chosen so that the remaining value stays in
//! the digit's Möbius image, exactly like a continued-fraction algorithm.
//! For a quadratic surd over `Q(sqrt 3)` the expansion is eventually
//! periodic, `expand_to_tail` detects the period, and evaluating the tail
//! recovers the input exactly.
//!
//! Run with: `cargo run --example expansion_roundtrip`

use h6_spectra::exact::{AlgebraicReal, ExtReal};
use h6_spectra::expansion::{cylinder, expand, expand_to_tail, value_tail};

fn surd(num: i64, rad: i64, den: i64) -> AlgebraicReal {
    (AlgebraicReal::from_int(num) * AlgebraicReal::from_int(rad).sqrt().unwrap())
        .checked_div(&AlgebraicReal::from_int(den))
        .unwrap()
}

fn main() {
    // sqrt 7 / 2, sqrt 143 / 10, and (sqrt 3 + sqrt 143)/14.
    let xs = vec![
        ("sqrt 7 / 2", surd(1, 7, 2)),
        (
            "(sqrt 3 + sqrt 143)/10",
            (AlgebraicReal::sqrt3() + surd(1, 143, 1))
                .checked_div(&AlgebraicReal::from_int(10))
                .unwrap(),
        ),
        (
            "(sqrt 3 + sqrt 143)/14",
            (AlgebraicReal::sqrt3() + surd(1, 143, 1))
                .checked_div(&AlgebraicReal::from_int(14))
                .unwrap(),
        ),
    ];
    for (name, x) in xs {
        let digits = expand(&x, 12).expect("positive surd");
        let tail = expand_to_tail(&x).expect("eventually periodic");
        let back = value_tail(&tail).unwrap();
        assert_eq!(back.compare(&x).unwrap(), std::cmp::Ordering::Equal);
        println!("{name:<24} digits {digits}  tail {tail}  (round trip exact)");
    }

    // The first-digit cylinders partition (0, oo): their endpoints chain.
    println!();
    let dec = |v: &ExtReal| match v {
        ExtReal::Finite(x) => x.decimal(6),
        ExtReal::PosInfinity => "oo".to_string(),
    };
    for d in 1..=5u8 {
        let w: h6_spectra::words::Word = d.to_string().parse().unwrap();
        let c = cylinder(&w);
        println!("cylinder {d}: [{}, {}]", dec(&c.low), dec(&c.high));
    }
}
