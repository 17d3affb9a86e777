//! Exact real numbers as lazy expression trees with two evaluation modes.
//!
//! An [`AlgebraicReal`] is a shared, immutable node in a directed acyclic
//! graph built from constants in Z[√3]'s fraction field and the operations
//! +, −, ×, ÷, √.  Each node carries two caches:
//!
//! * a **normal form** in a multiquadratic tower ([`MultiQuad`]), computed
//!   lazily once; when present, signs and comparisons are decided *exactly*;
//! * an **interval enclosure** at the highest precision requested so far,
//!   refined monotonically (new enclosures are intersected with old ones).
//!
//! All digit-pipeline values have rational discriminants, so their normal
//! forms exist and every sign query is exact.  The interval fallback covers
//! values that escape the tower cap; a sign query that stays undecided at the
//! precision ceiling (environment variable `H6_PRECISION_CEILING`, in bits)
//! reports [`ExactError::UndecidableSign`] instead of guessing.
//!
//! [`ExtReal`] adjoins the point +∞, which is where a Möbius map with a
//! vanishing denominator sends its pole; all matrices in this crate have
//! nonnegative entries acting on nonnegative values, so −∞ never occurs.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;

use super::dyadic::{decimal_of_interval, decimal_of_rational, DyadicInterval};
use super::multiquad::MultiQuad;
use super::qs3::{Rational, QS3};
use super::ExactError;

const DEFAULT_PRECISION_CEILING: u32 = 4096;

fn precision_ceiling() -> u32 {
    match std::env::var("H6_PRECISION_CEILING") {
        Ok(s) => s.parse().unwrap_or(DEFAULT_PRECISION_CEILING),
        Err(_) => DEFAULT_PRECISION_CEILING,
    }
}

pub(crate) enum Node {
    Const(QS3),
    Add(AlgebraicReal, AlgebraicReal),
    Sub(AlgebraicReal, AlgebraicReal),
    Mul(AlgebraicReal, AlgebraicReal),
    Div(AlgebraicReal, AlgebraicReal),
    Sqrt(AlgebraicReal),
}

struct Inner {
    node: Node,
    enclosure: Mutex<Option<(DyadicInterval, u32)>>,
    nf: OnceLock<Option<MultiQuad>>,
}

/// A real algebraic number, exact and immutable.  Cloning is cheap (shared
/// reference); all caches are thread-safe.
#[derive(Clone)]
pub struct AlgebraicReal(Arc<Inner>);

impl AlgebraicReal {
    fn wrap(node: Node) -> Self {
        AlgebraicReal(Arc::new(Inner {
            node,
            enclosure: Mutex::new(None),
            nf: OnceLock::new(),
        }))
    }

    pub(crate) fn node(&self) -> &Node {
        &self.0.node
    }

    pub fn from_qs3(q: QS3) -> Self {
        Self::wrap(Node::Const(q))
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_qs3(QS3::from_rational(r))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_qs3(QS3::from_int(n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn sqrt3() -> Self {
        Self::from_qs3(QS3::sqrt3())
    }

    /// Principal square root.  Rejects arguments that are provably negative;
    /// an argument whose sign cannot be decided is accepted on the caller's
    /// word (the digit pipelines only take roots of nonnegative rationals).
    pub fn sqrt(&self) -> Result<Self, ExactError> {
        if let Ok(-1) = self.sign() {
            return Err(ExactError::NegativeSqrt);
        }
        Ok(Self::wrap(Node::Sqrt(self.clone())))
    }

    /// Division that reports a provably zero divisor instead of panicking.
    pub fn checked_div(&self, divisor: &Self) -> Result<Self, ExactError> {
        if let Ok(0) = divisor.sign() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::wrap(Node::Div(self.clone(), divisor.clone())))
    }

    /// Lazy tower normal form; `None` when a subexpression escapes the
    /// generator cap (exact sign decisions then fall back to intervals).
    pub fn nf(&self) -> Option<&MultiQuad> {
        self.0
            .nf
            .get_or_init(|| match &self.0.node {
                Node::Const(q) => Some(MultiQuad::from_qs3(q)),
                Node::Add(a, b) => a.nf().and_then(|x| b.nf().and_then(|y| x.add(y))),
                Node::Sub(a, b) => a.nf().and_then(|x| b.nf().and_then(|y| x.sub(y))),
                Node::Mul(a, b) => a.nf().and_then(|x| b.nf().and_then(|y| x.mul(y))),
                Node::Div(a, b) => a.nf().and_then(|x| {
                    b.nf()
                        .and_then(|y| y.inverse())
                        .and_then(|yi| x.mul(&yi))
                }),
                Node::Sqrt(a) => a.nf().and_then(|x| x.sqrt()),
            })
            .as_ref()
    }

    /// Interval enclosure computed at working precision `wp`, cached and
    /// monotonically refined.
    fn enclose(&self, wp: u32) -> DyadicInterval {
        {
            let cache = self.0.enclosure.lock().unwrap();
            if let Some((iv, at)) = cache.as_ref() {
                if *at >= wp {
                    return iv.clone();
                }
            }
        }
        let fresh = match &self.0.node {
            Node::Const(q) => q.to_interval(wp),
            Node::Add(a, b) => a.enclose(wp).add(&b.enclose(wp), wp),
            Node::Sub(a, b) => a.enclose(wp).sub(&b.enclose(wp), wp),
            Node::Mul(a, b) => a.enclose(wp).mul(&b.enclose(wp), wp),
            Node::Div(a, b) => {
                let mut p = wp;
                loop {
                    let den = b.enclose(p);
                    if let Some(q) = a.enclose(p).div(&den, wp) {
                        break q;
                    }
                    assert!(
                        p < (1 << 22),
                        "divisor enclosure still straddles zero at {p} bits"
                    );
                    p *= 2;
                }
            }
            Node::Sqrt(a) => {
                let mut p = wp;
                loop {
                    if let Some(r) = a.enclose(p).sqrt(wp) {
                        break r;
                    }
                    assert!(
                        p < (1 << 22),
                        "square-root argument enclosure stays negative at {p} bits"
                    );
                    p *= 2;
                }
            }
        };
        let mut cache = self.0.enclosure.lock().unwrap();
        let refined = match cache.take() {
            Some((old, _)) => old.intersect(&fresh),
            None => fresh,
        };
        *cache = Some((refined.clone(), wp));
        refined
    }

    /// An enclosure of width at most 2⁻ᵖʳᵉᶜ.
    pub fn approx(&self, prec: u32) -> DyadicInterval {
        let mut wp = prec + 16;
        loop {
            let iv = match self.nf() {
                Some(m) => m.to_interval(wp),
                None => self.enclose(wp),
            };
            if iv.width_below(prec) {
                return iv;
            }
            wp = wp.saturating_mul(2);
        }
    }

    /// Exact sign where a normal form exists; otherwise interval refinement
    /// up to the precision ceiling.
    pub fn sign(&self) -> Result<i8, ExactError> {
        if let Some(m) = self.nf() {
            return Ok(m.sign());
        }
        let ceiling = precision_ceiling();
        let mut wp = 64;
        loop {
            if let Some(s) = self.enclose(wp).sign() {
                return Ok(s);
            }
            if wp >= ceiling {
                return Err(ExactError::UndecidableSign {
                    precision_bits: ceiling,
                });
            }
            wp = (wp * 2).min(ceiling);
        }
    }

    pub fn is_zero(&self) -> Result<bool, ExactError> {
        Ok(self.sign()? == 0)
    }

    pub fn compare(&self, other: &Self) -> Result<Ordering, ExactError> {
        Ok(match (self - other).sign()? {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }

    pub fn min_of(a: &Self, b: &Self) -> Result<Self, ExactError> {
        Ok(if a.compare(b)? == Ordering::Greater {
            b.clone()
        } else {
            a.clone()
        })
    }

    pub fn max_of(a: &Self, b: &Self) -> Result<Self, ExactError> {
        Ok(if a.compare(b)? == Ordering::Less {
            b.clone()
        } else {
            a.clone()
        })
    }

    pub fn to_f64(&self) -> f64 {
        self.approx(60).to_f64()
    }

    /// `Some(r)` iff the value is provably rational (requires a normal form).
    pub fn as_rational(&self) -> Option<Rational> {
        self.nf().and_then(|m| m.as_rational().cloned())
    }

    /// Correctly rounded decimal string with `sig` significant digits.
    pub fn decimal(&self, sig: usize) -> String {
        if let Some(r) = self.as_rational() {
            return decimal_of_rational(&r, sig);
        }
        let mut prec = (sig as u32) * 4 + 32;
        loop {
            if let Some(s) = decimal_of_interval(&self.approx(prec), sig) {
                return s;
            }
            prec = prec.saturating_mul(2);
        }
    }

    /// Integer coefficients of the minimal polynomial, ascending degree.
    /// `None` when the value has no tower normal form.
    pub fn minimal_polynomial(&self) -> Option<Vec<BigInt>> {
        self.nf().map(MultiQuad::minimal_polynomial)
    }
}

impl fmt::Debug for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraicReal(≈{})", self.to_f64())
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.decimal(12))
    }
}

macro_rules! binary_op {
    ($trait:ident, $method:ident, $node:ident) => {
        impl std::ops::$trait for &AlgebraicReal {
            type Output = AlgebraicReal;
            fn $method(self, rhs: &AlgebraicReal) -> AlgebraicReal {
                AlgebraicReal::wrap(Node::$node(self.clone(), rhs.clone()))
            }
        }
        impl std::ops::$trait for AlgebraicReal {
            type Output = AlgebraicReal;
            fn $method(self, rhs: AlgebraicReal) -> AlgebraicReal {
                AlgebraicReal::wrap(Node::$node(self, rhs))
            }
        }
        impl std::ops::$trait<&AlgebraicReal> for AlgebraicReal {
            type Output = AlgebraicReal;
            fn $method(self, rhs: &AlgebraicReal) -> AlgebraicReal {
                AlgebraicReal::wrap(Node::$node(self, rhs.clone()))
            }
        }
    };
}

binary_op!(Add, add, Add);
binary_op!(Sub, sub, Sub);
binary_op!(Mul, mul, Mul);

impl std::ops::Div for &AlgebraicReal {
    type Output = AlgebraicReal;
    /// Panics when the divisor is provably zero; see [`AlgebraicReal::checked_div`].
    fn div(self, rhs: &AlgebraicReal) -> AlgebraicReal {
        self.checked_div(rhs).expect("division by exact zero")
    }
}

impl std::ops::Div for AlgebraicReal {
    type Output = AlgebraicReal;
    fn div(self, rhs: AlgebraicReal) -> AlgebraicReal {
        (&self).div(&rhs)
    }
}

impl std::ops::Div<&AlgebraicReal> for AlgebraicReal {
    type Output = AlgebraicReal;
    fn div(self, rhs: &AlgebraicReal) -> AlgebraicReal {
        (&self).div(rhs)
    }
}

impl std::ops::Neg for &AlgebraicReal {
    type Output = AlgebraicReal;
    fn neg(self) -> AlgebraicReal {
        &AlgebraicReal::zero() - self
    }
}

impl std::ops::Neg for AlgebraicReal {
    type Output = AlgebraicReal;
    fn neg(self) -> AlgebraicReal {
        -&self
    }
}

/// A point of [0, +∞]: either a finite algebraic real or +∞.
#[derive(Clone, Debug)]
pub enum ExtReal {
    Finite(AlgebraicReal),
    PosInfinity,
}

impl ExtReal {
    pub fn finite(&self) -> Option<&AlgebraicReal> {
        match self {
            ExtReal::Finite(x) => Some(x),
            ExtReal::PosInfinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtReal::PosInfinity)
    }

    pub fn compare(&self, other: &ExtReal) -> Result<Ordering, ExactError> {
        match (self, other) {
            (ExtReal::PosInfinity, ExtReal::PosInfinity) => Ok(Ordering::Equal),
            (ExtReal::PosInfinity, ExtReal::Finite(_)) => Ok(Ordering::Greater),
            (ExtReal::Finite(_), ExtReal::PosInfinity) => Ok(Ordering::Less),
            (ExtReal::Finite(x), ExtReal::Finite(y)) => x.compare(y),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtReal::Finite(x) => x.to_f64(),
            ExtReal::PosInfinity => f64::INFINITY,
        }
    }
}

/// Applies the Möbius map x ↦ (ax + b)/(cx + d) on [0, +∞].  The matrices in
/// this crate have nonnegative entries in Z[√3] and determinant 1, so the map
/// sends [0, +∞] to itself: a vanishing denominator means the image is +∞,
/// and the image of +∞ is a/c (or +∞ when c = 0).
pub fn mobius_ext(a: &QS3, b: &QS3, c: &QS3, d: &QS3, x: &ExtReal) -> ExtReal {
    let lift = |q: &QS3| AlgebraicReal::from_qs3(q.clone());
    match x {
        ExtReal::PosInfinity => {
            if c.is_zero() {
                ExtReal::PosInfinity
            } else {
                ExtReal::Finite(&lift(a) / &lift(c))
            }
        }
        ExtReal::Finite(v) => {
            let den = &(&lift(c) * v) + &lift(d);
            match den.sign() {
                Ok(0) => ExtReal::PosInfinity,
                _ => ExtReal::Finite(&(&(&lift(a) * v) + &lift(b)) / &den),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::qs3::rat;
    use super::*;

    fn sqrt_int(n: i64) -> AlgebraicReal {
        AlgebraicReal::from_int(n).sqrt().unwrap()
    }

    fn ratio(n: i64, d: i64) -> AlgebraicReal {
        AlgebraicReal::from_rational(rat(n, d))
    }

    #[test]
    fn conjugate_tail_sum_is_exact() {
        let s3 = AlgebraicReal::sqrt3();
        let s143 = sqrt_int(143);
        let a = &(&s3 + &s143) / &AlgebraicReal::from_int(10);
        let b = &(&s143 - &s3) / &AlgebraicReal::from_int(10);
        let sum = &a + &b;
        let expect = &s143 / &AlgebraicReal::from_int(5);
        assert_eq!(sum.compare(&expect).unwrap(), Ordering::Equal);
    }

    #[test]
    fn doubled_42_tail_sits_inside_the_gap() {
        // x = (√3 + 2√2)/(1 + √6);  √143/5 < 2x < √7.
        let num = &AlgebraicReal::sqrt3() + &(&AlgebraicReal::from_int(2) * &sqrt_int(2));
        let den = &AlgebraicReal::one() + &sqrt_int(6);
        let twice = &AlgebraicReal::from_int(2) * &(&num / &den);
        let low = &sqrt_int(143) / &AlgebraicReal::from_int(5);
        assert_eq!(twice.compare(&low).unwrap(), Ordering::Greater);
        assert_eq!(twice.compare(&sqrt_int(7)).unwrap(), Ordering::Less);
    }

    #[test]
    fn mobius_fixes_sqrt2() {
        // (√3·x + 2)/(x + √3) fixes √2.
        let a = QS3::sqrt3();
        let b = QS3::from_int(2);
        let c = QS3::from_int(1);
        let d = QS3::sqrt3();
        let img = mobius_ext(&a, &b, &c, &d, &ExtReal::Finite(sqrt_int(2)));
        let y = img.finite().expect("finite image");
        assert_eq!(y.compare(&sqrt_int(2)).unwrap(), Ordering::Equal);
    }

    #[test]
    fn mobius_at_infinity() {
        // Upper-triangular: ∞ stays at ∞.
        let img = mobius_ext(
            &QS3::from_int(1),
            &QS3::sqrt3(),
            &QS3::from_int(0),
            &QS3::from_int(1),
            &ExtReal::PosInfinity,
        );
        assert!(img.is_infinite());
        // Lower-triangular: ∞ maps to a/c = 1/√3.
        let img = mobius_ext(
            &QS3::from_int(1),
            &QS3::from_int(0),
            &QS3::sqrt3(),
            &QS3::from_int(1),
            &ExtReal::PosInfinity,
        );
        let expect = &AlgebraicReal::one() / &AlgebraicReal::sqrt3();
        assert_eq!(
            img.finite().unwrap().compare(&expect).unwrap(),
            Ordering::Equal
        );
    }

    #[test]
    fn periodic_block_value_simplifies() {
        // √12096/(48√3) = √7/2.
        let lhs = &sqrt_int(12096) / &(&AlgebraicReal::from_int(48) * &AlgebraicReal::sqrt3());
        let rhs = &sqrt_int(7) / &AlgebraicReal::from_int(2);
        assert_eq!(lhs.compare(&rhs).unwrap(), Ordering::Equal);
    }

    #[test]
    fn sign_of_tiny_difference_is_exact() {
        // (13√3 + 13√7 + √143)/26 − √7 is positive but ≈ 3.08e-3.
        let b2 = &(&(&AlgebraicReal::from_int(13)
            * &(&AlgebraicReal::sqrt3() + &sqrt_int(7)))
            + &sqrt_int(143))
            / &AlgebraicReal::from_int(26);
        let d = &b2 - &sqrt_int(7);
        assert_eq!(d.sign().unwrap(), 1);
        assert!(d.to_f64() < 0.004);
    }

    #[test]
    #[should_panic(expected = "division by exact zero")]
    fn division_by_provable_zero_panics() {
        let s3 = AlgebraicReal::sqrt3();
        let zero = &(&s3 * &s3) - &AlgebraicReal::from_int(3);
        let _ = &AlgebraicReal::one() / &zero;
    }

    #[test]
    fn decimal_uses_exact_tower_path() {
        let low = &sqrt_int(143) / &AlgebraicReal::from_int(5);
        assert_eq!(low.decimal(15), "2.39165214862028");
        assert_eq!(low.decimal(16), "2.391652148620280");
        assert_eq!(ratio(1, 3).decimal(4), "0.3333");
    }

    #[test]
    fn negative_sqrt_is_rejected() {
        let neg = &AlgebraicReal::zero() - &AlgebraicReal::one();
        assert!(matches!(neg.sqrt(), Err(ExactError::NegativeSqrt)));
    }

    #[test]
    fn min_max_and_rational_extraction() {
        let a = ratio(3, 2);
        let b = &sqrt_int(2) * &sqrt_int(2); // exactly 2
        assert_eq!(b.as_rational(), Some(rat(2, 1)));
        let m = AlgebraicReal::max_of(&a, &b).unwrap();
        assert_eq!(m.compare(&b).unwrap(), Ordering::Equal);
        let poly = a.minimal_polynomial().unwrap();
        let as_i64: Vec<i64> = poly.iter().map(|c| i64::try_from(c).unwrap()).collect();
        assert_eq!(as_i64, vec![-3, 2]); // 2x − 3
    }
}
