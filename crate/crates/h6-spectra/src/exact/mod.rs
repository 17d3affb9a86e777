//! Exact arithmetic for the real algebraic numbers arising from `H6`
//! expansions.
//!
//! The layers, bottom to top:
//!
//! * [`dyadic`] — arbitrary-precision dyadic interval arithmetic with
//!   outward rounding; the refinement substrate for every numeric query.
//! * [`qs3`] — the quadratic field `Q(sqrt 3)` housing all matrix entries.
//! * [`multiquad`] — normal forms in multi-quadratic towers
//!   `Q(sqrt m1, …, sqrt mk)` with decidable (symbolic) sign; this is what
//!   certifies equality of spectrum values.
//! * [`real`] — [`AlgebraicReal`], an expression DAG with cached isolating
//!   intervals and a cached tower normal form: decidable sign, comparison,
//!   and correctly rounded decimal output.
//! * [`sexpr`] — a tiny language-neutral s-expression serialization of
//!   exact values, used by certificates and machine-readable output.
//! * [`elementary`] — certified interval `ln`/`exp`/powers for the one
//!   place the library leaves the algebraic world (the Moran equation).

pub mod dyadic;
pub mod elementary;
pub mod multiquad;
pub mod qs3;
pub mod real;
pub mod sexpr;

pub use dyadic::{Dyadic, DyadicInterval};
pub use multiquad::MultiQuad;
pub use qs3::{QS3, Rational};
pub use real::{mobius_ext, AlgebraicReal, ExtReal};
pub use sexpr::{canonical_sexpr, format_sexpr, parse_sexpr};

use std::fmt;

/// Errors raised by exact-arithmetic operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactError {
    /// The value left the supported tower and interval refinement hit the
    /// precision ceiling without separating it from zero.
    UndecidableSign { precision_bits: u32 },
    /// Attempt to take a square root of a provably negative value.
    NegativeSqrt,
    /// Attempt to divide by an exact zero.
    DivisionByZero,
    /// A malformed s-expression (position in bytes).
    Parse { position: usize, message: String },
}

impl fmt::Display for ExactError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactError::UndecidableSign { precision_bits } => write!(
                f,
                "sign undecidable at precision ceiling of {precision_bits} bits \
                 (value outside the supported tower)"
            ),
            ExactError::NegativeSqrt => write!(f, "square root of a negative value"),
            ExactError::DivisionByZero => write!(f, "division by zero"),
            ExactError::Parse { position, message } => {
                write!(f, "parse error at byte {position}: {message}")
            }
        }
    }
}

impl std::error::Error for ExactError {}
