//! Greedy extremal tails inside a subshift of finite type.
//!
//! Fixing a finite prefix and a list of forbidden factors, the minimal (or
//! maximal) value [prefix ++ continuation] over all admissible infinite
//! continuations is computed by a greedy digit walk: the digit maps are
//! monotone, so at every step the smallest (largest) digit that still
//! admits an infinite continuation is optimal, and the walk closes into a
//! cycle — yielding an exact eventually periodic extremizer.
//!
//! The three runs below tighten the forbidden list around prefix 42 and
//! watch the minimizer walk away from each closed escape route:
//! first through 2242, then through 2243, until the (4224)-cycle itself
//! is minimal.
//!
//! Run with: `cargo run --example extremal_tails`

use h6_spectra::expansion::value_tail;
use h6_spectra::extremize::{extremal_tail, Dir, ExtremalResult, SubshiftSpec};
use h6_spectra::words::{Digit, Word};

fn digits(list: &[u8]) -> Vec<Digit> {
    list.iter().map(|&d| Digit::new(d).unwrap()).collect()
}

fn words(list: &[&str]) -> Vec<Word> {
    list.iter().map(|s| s.parse().unwrap()).collect()
}

fn show_min(prefix: &str, spec: &SubshiftSpec) {
    let p: Word = prefix.parse().unwrap();
    match extremal_tail(&p, spec, Dir::Min).unwrap() {
        ExtremalResult::Attained(t) => {
            let v = value_tail(&t).unwrap();
            println!("  min from {prefix}: {t}  = {}", v.decimal(15));
        }
        other => println!("  min from {prefix}: {other:?}"),
    }
}

fn main() {
    let alphabet = digits(&[2, 3, 4]);
    let base = ["222", "223", "322", "344", "443", "444"];

    println!("forbidden: {base:?}");
    let spec = SubshiftSpec::compile(&alphabet, &words(&base));
    show_min("42", &spec);

    let mut with_4424: Vec<&str> = base.to_vec();
    with_4424.extend(["4424", "2242", "4244", "2422"]);
    println!("forbidden: base + the 4424 conjugates");
    let spec = SubshiftSpec::compile(&alphabet, &words(&with_4424));
    show_min("42", &spec);

    let mut with_4423: Vec<&str> = with_4424.clone();
    with_4423.extend(["4423", "2243", "3244", "3422"]);
    println!("forbidden: base + the 4424 and 4423 conjugates");
    let spec = SubshiftSpec::compile(&alphabet, &words(&with_4423));
    show_min("42", &spec);

    // A maximal continuation, for contrast: the largest no-44 stream.
    println!("forbidden: 44 only (direction Max)");
    let spec = SubshiftSpec::compile(&digits(&[1, 2, 3, 4, 5]), &words(&["44", "55", "45", "54"]));
    let p: Word = "4".parse().unwrap();
    if let ExtremalResult::Attained(t) = extremal_tail(&p, &spec, Dir::Max).unwrap() {
        let v = value_tail(&t).unwrap();
        println!("  max from 4: {t}  = {}", v.decimal(15));
    }
}
