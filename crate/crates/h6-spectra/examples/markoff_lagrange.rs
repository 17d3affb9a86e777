//! Markoff and Lagrange numbers of bi-infinite digit sequences.
//!
//! The Markoff number M(A) of a bi-infinite sequence is the supremum of
//! section values L(P*|Q) = [P] + [Q] over all ways of cutting A or its
//! complement A∨ into a left and a right tail; the Lagrange number
//! replaces the supremum over cuts by the limsup as the cut runs right.
//! Both are invariant under the shift, reversal, and complement.
//!
//! Run with: `cargo run --example markoff_lagrange`

use h6_spectra::spectra::{lagrange, markoff};
use h6_spectra::words::BiSeq;

fn main() {
    let seqs = [
        "*(42)*",          // periodic: M = L = sqrt 13 / sqrt 3
        "*(51)*",          // periodic: M = L = sqrt 7
        "*(4224)4(23)*",   // two periodic ends joined through a center
        "*(42)3(42)*",     // one digit inserted into a periodic stream
        "*(43)42244(23)*", // a 44-core between opposite transition lands
    ];
    println!(
        "{:<20} {:>18} {:>18}  attained(M)  witness section",
        "sequence", "Markoff", "Lagrange"
    );
    for s in seqs {
        let a: BiSeq = s.parse().expect("sequence syntax");
        let m = markoff(&a).expect("Markoff value");
        let l = lagrange(&a).expect("Lagrange value");
        println!(
            "{s:<20} {:>18} {:>18}  {:<11}  {}",
            m.value.decimal(15),
            l.value.decimal(15),
            m.attained,
            m.witness
        );
    }

    // Invariance under complement and reversal, checked exactly.
    let a: BiSeq = "*(4224)4(23)*".parse().unwrap();
    let m = markoff(&a).unwrap().value;
    for (name, b) in [("complement", a.vee()), ("reversal", a.star())] {
        let mb = markoff(&b).unwrap().value;
        assert_eq!(m.compare(&mb).unwrap(), std::cmp::Ordering::Equal);
        println!("M invariant under {name}: {b}");
    }
}
