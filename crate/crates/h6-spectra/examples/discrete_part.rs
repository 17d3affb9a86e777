//! The discrete part of the Markoff spectrum and its accumulation points.
//!
//! Below the first accumulation point 4/sqrt 3 the spectrum is a strictly
//! increasing sequence of isolated values, attained by periodic sequences
//! alternating 4s and 2s with sparser and sparser 3s.  This example prints
//! the ten smallest values with the exact difference check between
//! neighbours, then follows three witness families that accumulate on the
//! endpoints of the longest gap and on 4/sqrt 3 itself.
//!
//! Run with: `cargo run --example discrete_part`

use h6_spectra::gaps::{accumulation_witnesses, longest_gap_check, Accumulation};
use h6_spectra::spectra::markoff;
use h6_spectra::words::BiSeq;

fn main() {
    let report = longest_gap_check().expect("exact table");
    println!("ten smallest Markoff values:");
    for (seq, dec) in &report.values {
        println!("  {seq:<16} {dec}");
    }
    println!("difference checks against the gap width sqrt 7 - sqrt 143/5:");
    for row in &report.rows {
        println!("  {:<28} {:<18} within: {}", row.label, row.difference_decimal, row.within);
    }

    println!();
    println!("k   M(*((42)^k 3)*) increasing to 4/sqrt 3 = 2.309401076758503...");
    for k in [1usize, 2, 4, 8, 12] {
        let s: BiSeq = format!("*({}3)*", "42".repeat(k)).parse().unwrap();
        let m = markoff(&s).unwrap();
        println!("{k:>2}  {}  {s}", m.value.decimal(15));
    }

    println!();
    println!("j   M(*(3)(43)^j(3)*) increasing to sqrt 143/5 = 2.391652146942922...");
    for j in [2usize, 4, 8, 12] {
        let (seq, v) = accumulation_witnesses(Accumulation::Low, j, 0).unwrap();
        println!("{j:>2}  {}  {seq}", v.decimal(15));
    }

    println!();
    println!("k   M(*(4224)4(23)^k(3)*) decreasing to 2.648834164820634...");
    for k in [1usize, 2, 4, 8] {
        let (seq, v) = accumulation_witnesses(Accumulation::High, k, 0).unwrap();
        println!("{k:>2}  {}  {seq}", v.decimal(15));
    }

    // The family *(43)(4224)^k 4(23)* climbs to the same value from
    // below — the spectrum accumulates on it from both sides.
    println!();
    println!("k   M(*(43)(4224)^k 4(23)*) increasing to the same value");
    for k in 1..=4usize {
        let center = "4224".repeat(k) + "4";
        let s: BiSeq = format!("*(43){center}(23)*").parse().unwrap();
        let m = markoff(&s).unwrap();
        println!("{k:>2}  {}  {s}", m.value.decimal(15));
    }
}
