//! Exact Markoff and Lagrange spectra for the Hecke group `H6`.
//!
//! The Hecke group `H6` is the subgroup of `PSL(2, R)` generated by the
//! inversion `S: z -> -1/z` and the translation `T: z -> z + sqrt(3)`.
//! Geodesics on the quotient orbifold are coded by bi-infinite sequences of
//! digits `1..=5`, and the classical theory of the Markoff and Lagrange
//! spectra — how badly a number can be approximated by orbit points of the
//! group — carries over with the digit shift replacing the Gauss map.
//!
//! This crate computes in that world with exact arithmetic throughout:
//!
//! * [`exact`] — the number tower: rationals, `Q(sqrt 3)`, multi-quadratic
//!   extensions `Q(sqrt m1, ..., sqrt mk)`, and lazily refined algebraic
//!   reals with decidable comparison.
//! * [`words`] — digit alphabets, finite words, the star involution, and
//!   bi-infinite sequence presentations (periodic and eventually periodic).
//! * [`expansion`] — digit matrices, values of infinite expansions, and the
//!   continued-fraction-like expansion of quadratic surds over `Q(sqrt 3)`.
//! * [`spectra`] — Markoff and Lagrange numbers of presented sequences, and
//!   a brute-force scan over the group for small certificates.
//! * [`extremize`] — lexicographic/value extremal tails inside a subshift of
//!   finite type given by forbidden factors.
//! * [`gaps`] — a certifying search that proves maximal gaps of the Markoff
//!   spectrum, emitting machine-checkable certificates, plus the independent
//!   replay checker.
//! * [`dimension`] — certified lower bounds for the Hausdorff dimension of
//!   the set of sequences whose Markoff number lies below a cutoff, via an
//!   explicit iterated-function-system construction.
//! * [`cli`] — the `h6` command-line front end over all of the above.

pub mod cli;
pub mod dimension;
pub mod exact;
pub mod expansion;
pub mod extremize;
pub mod gaps;
pub mod spectra;
pub mod words;
