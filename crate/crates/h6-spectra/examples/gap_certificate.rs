//! Certifying a maximal gap of the Markoff spectrum — and refusing one.
//!
//! The certifier maintains the set of alive length-n windows, prunes a
//! window (with its reversal/complement conjugates) when every sequence
//! through it provably has a section value reaching the upper endpoint b,
//! and succeeds once every surviving section bound drops to the lower
//! endpoint a.  The emitted certificate carries one exact inequality per
//! pruned window and replays in an independent checker.
//!
//! The first run certifies the gap (sqrt 143/5, sqrt 7) at window length
//! four.  The second run attempts the interval directly above it,
//! (sqrt 7, (13 sqrt 3 + 13 sqrt 7 + sqrt 143)/26), and reports
//! Inconclusive — necessarily so, because that interval is *not* a gap:
//! the sequence *(43)42244(23)* has its Markoff number strictly inside,
//! as the final exact computation shows.
//!
//! Run with: `cargo run --example gap_certificate`

use h6_spectra::gaps::{certify_gap, replay_certificate, GapClaim, GapOutcome};
use h6_spectra::spectra::markoff;
use h6_spectra::words::BiSeq;

fn main() {
    let claim = GapClaim::first_gap();
    println!(
        "claim 1: ({}, {}) attained by {} and {}",
        claim.a.decimal(15),
        claim.b.decimal(15),
        claim.witness_a,
        claim.witness_b
    );
    match certify_gap(&claim, 6).unwrap() {
        GapOutcome::Certified(cert) => {
            println!(
                "  certified at window {} after {} rounds, {} windows pruned",
                cert.window_length,
                cert.rounds,
                cert.pruned.len()
            );
            println!("  surviving sup = {} (= a exactly)", cert.surviving_sup_decimal);
            for e in cert.pruned.iter().take(4) {
                println!("    pruned {} at cut {} (dual {}): bound {}", e.word, e.cut, e.dual, e.bound_decimal);
            }
            let report = replay_certificate(&cert).unwrap();
            println!(
                "  replay: verified, {} survivors at window {}",
                report.survivors.len(),
                report.window_length
            );
        }
        GapOutcome::Inconclusive { .. } => unreachable!("claim 1 certifies"),
    }

    println!();
    let claim = GapClaim::second_gap();
    println!(
        "claim 2: ({}, {}) attained by {} and {}",
        claim.a.decimal(15),
        claim.b.decimal(15),
        claim.witness_a,
        claim.witness_b
    );
    match certify_gap(&claim, 8).unwrap() {
        GapOutcome::Certified(_) => unreachable!("claim 2 is refuted below"),
        GapOutcome::Inconclusive { window_length, survivors, sup_decimal } => {
            println!(
                "  inconclusive at window {window_length}: {} survivors, surviving sup {sup_decimal} > a",
                survivors.len()
            );
        }
    }

    // The reason it can never certify: the claimed interval contains a
    // Markoff number.  Both endpoints of the comparison are exact.
    let g: BiSeq = "*(43)42244(23)*".parse().unwrap();
    let m = markoff(&g).unwrap();
    println!("  counterexample {g}: M = {}", m.value.decimal(15));
    let inside = m.value.compare(&claim.a).unwrap() == std::cmp::Ordering::Greater
        && m.value.compare(&claim.b).unwrap() == std::cmp::Ordering::Less;
    assert!(inside);
    println!("  a < M < b holds exactly: the interval is not a gap");
}
