//! Brute-force oracle for Markoff numbers.
//!
//! Independently of the section machinery, M(A) is the supremum of
//! sqrt(disc f)/|f(g)| over the group orbit of the binary quadratic form f
//! attached to A's geodesic.  Enumerating all group elements up to a
//! word-length depth (in free product normal form, so the stream is
//! duplicate-free), prefiltering in floating point, and re-evaluating the
//! shortlist exactly yields a certified lower bound: monotone in depth,
//! never above M(A), and equal to it once the optimal element is in range.
//!
//! Run with: `cargo run --example brute_force`

use h6_spectra::spectra::{brute_force_markoff, markoff};
use h6_spectra::words::BiSeq;

fn main() {
    // The two endpoints of the longest gap and two further periodic
    // sequences: the depth-8 oracle agrees with the exact supremum on all.
    let seqs = ["*(43)*", "*(51)*", "*(4224)4(23)*", "*(534132)*"];
    println!("{:<16} {:>18} {:>18}  equal", "sequence", "exact M", "brute force @8");
    for s in seqs {
        let a: BiSeq = s.parse().unwrap();
        let exact = markoff(&a).unwrap().value;
        let lb = brute_force_markoff(&a, 8).unwrap();
        let eq = lb.compare(&exact).unwrap() == std::cmp::Ordering::Equal;
        println!("{s:<16} {:>18} {:>18}  {eq}", exact.decimal(15), lb.decimal(15));
        assert!(eq, "oracle disagrees with the exact value");
    }

    // Monotone in depth and never above the exact value.
    let a: BiSeq = "*(4224)4(23)*".parse().unwrap();
    let exact = markoff(&a).unwrap().value;
    let mut last = None::<h6_spectra::exact::AlgebraicReal>;
    for depth in 0..=6 {
        let lb = brute_force_markoff(&a, depth).unwrap();
        assert_ne!(lb.compare(&exact).unwrap(), std::cmp::Ordering::Greater);
        if let Some(prev) = &last {
            assert_ne!(lb.compare(prev).unwrap(), std::cmp::Ordering::Less);
        }
        last = Some(lb);
    }
    println!();
    println!("depth sweep 0..=6 on *(4224)4(23)*: monotone, never above exact");
}
