//! Exact values of infinite digit expansions.
//!
//! Every tail of digits `1..=5` has a value `[d0 d1 d2 ...]` obtained by
//! folding the digit Möbius maps; eventually periodic tails have exact
//! algebraic values in a multi-quadratic extension of `Q(sqrt 3)`.  This
//! example evaluates a handful of classical tails, prints each value as a
//! canonical s-expression and a correctly rounded decimal, and checks two
//! exact identities.
//!
//! Run with: `cargo run --example values`

use h6_spectra::exact::{canonical_sexpr, AlgebraicReal};
use h6_spectra::expansion::value_tail;
use h6_spectra::words::Tail;

fn main() {
    let tails =
        ["(2)*", "(4)*", "(23)*", "(42)*", "(4224)*", "4(23)*", "42(242)*", "4224(34)*"];
    println!("tail            value                                        decimal");
    for s in tails {
        let t: Tail = s.parse().expect("tail syntax");
        let v = value_tail(&t).expect("eventually periodic value");
        println!("{s:<15} {:<44} {}", canonical_sexpr(&v), v.decimal(15));
    }

    // [(2)^oo] is the positive root of 2x^2 = 1 and [(4224)^oo] of 4x^2 = 7.
    let half_sqrt2 = AlgebraicReal::from_int(1)
        .checked_div(&AlgebraicReal::from_int(2).sqrt().unwrap())
        .unwrap();
    let v2 = value_tail(&"(2)*".parse().unwrap()).unwrap();
    assert_eq!(v2.compare(&half_sqrt2).unwrap(), std::cmp::Ordering::Equal);

    let half_sqrt7 = AlgebraicReal::from_int(7)
        .sqrt()
        .unwrap()
        .checked_div(&AlgebraicReal::from_int(2))
        .unwrap();
    let v4224 = value_tail(&"(4224)*".parse().unwrap()).unwrap();
    assert_eq!(v4224.compare(&half_sqrt7).unwrap(), std::cmp::Ordering::Equal);

    println!();
    println!("checked: [(2)*] = 1/sqrt 2 and [(4224)*] = sqrt 7 / 2 exactly");
}
