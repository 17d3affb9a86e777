//! The real quadratic field `Q(sqrt 3)`.
//!
//! Every `H6` digit matrix has entries in `Z[sqrt 3]`, and products of digit
//! matrices stay in `Z[sqrt 3]`; `QS3` is the exact closed-form home for all
//! of them (with rational coefficients, so inverses are available too).
//! Sign is decided symbolically by comparing `a^2` with `3 b^2`, which makes
//! `QS3` a totally ordered field with no approximation anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::dyadic::{Dyadic, DyadicInterval};

/// Arbitrary-precision rational numbers (reduced, positive denominator).
pub type Rational = BigRational;

/// An element `a + b*sqrt(3)` of `Q(sqrt 3)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QS3 {
    pub a: Rational,
    pub b: Rational,
}

pub fn rat_i(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl QS3 {
    pub fn new(a: Rational, b: Rational) -> Self {
        QS3 { a, b }
    }

    pub fn zero() -> Self {
        QS3::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        QS3::new(Rational::one(), Rational::zero())
    }

    pub fn sqrt3() -> Self {
        QS3::new(Rational::zero(), Rational::one())
    }

    pub fn from_rational(a: Rational) -> Self {
        QS3::new(a, Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        QS3::from_rational(rat_i(n))
    }

    /// `(a, b)` as integers, when both coordinates are integral.
    pub fn to_int_pair(&self) -> Option<(BigInt, BigInt)> {
        if self.a.is_integer() && self.b.is_integer() {
            Some((self.a.to_integer(), self.b.to_integer()))
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.b.is_zero() { Some(&self.a) } else { None }
    }

    /// Galois conjugate `a - b*sqrt(3)`.
    pub fn conj(&self) -> Self {
        QS3::new(self.a.clone(), -self.b.clone())
    }

    /// Field norm `a^2 - 3 b^2` (a rational).
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - rat_i(3) * &self.b * &self.b
    }

    pub fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero in Q(sqrt 3)");
        let n = self.norm();
        QS3::new(&self.a / &n, -&self.b / &n)
    }

    /// Exact sign via the `a^2` versus `3 b^2` comparison.
    pub fn sign(&self) -> i8 {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // Opposite signs: |a| versus |b|*sqrt(3) decides.
        let t = rational_sign(&self.norm());
        sa * t
    }

    pub fn cmp_qs3(&self, other: &QS3) -> Ordering {
        match (self.clone() - other.clone()).sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    /// Enclosing dyadic interval at `prec` bits.
    pub fn to_interval(&self, prec: u32) -> DyadicInterval {
        let ia = DyadicInterval::from_rational(&self.a, prec);
        if self.b.is_zero() {
            return ia;
        }
        let s3 = sqrt3_interval(prec);
        let ib = DyadicInterval::from_rational(&self.b, prec);
        ia.add(&ib.mul(&s3, prec), prec)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_interval(60).to_f64()
    }
}

pub fn rational_sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// An enclosure of `sqrt(3)` at `prec` bits.
pub fn sqrt3_interval(prec: u32) -> DyadicInterval {
    let three = Dyadic::from_int(3);
    DyadicInterval::new(three.sqrt_down(prec), three.sqrt_up(prec))
}

impl PartialOrd for QS3 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_qs3(other))
    }
}

impl Ord for QS3 {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_qs3(other)
    }
}

impl Add for QS3 {
    type Output = QS3;
    fn add(self, o: QS3) -> QS3 {
        QS3::new(self.a + o.a, self.b + o.b)
    }
}

impl<'a> Add<&'a QS3> for &'a QS3 {
    type Output = QS3;
    fn add(self, o: &QS3) -> QS3 {
        QS3::new(&self.a + &o.a, &self.b + &o.b)
    }
}

impl Sub for QS3 {
    type Output = QS3;
    fn sub(self, o: QS3) -> QS3 {
        QS3::new(self.a - o.a, self.b - o.b)
    }
}

impl<'a> Sub<&'a QS3> for &'a QS3 {
    type Output = QS3;
    fn sub(self, o: &QS3) -> QS3 {
        QS3::new(&self.a - &o.a, &self.b - &o.b)
    }
}

impl Mul for QS3 {
    type Output = QS3;
    fn mul(self, o: QS3) -> QS3 {
        (&self).mul(&o)
    }
}

impl<'a> Mul<&'a QS3> for &'a QS3 {
    type Output = QS3;
    fn mul(self, o: &QS3) -> QS3 {
        // (a + b s)(c + d s) = ac + 3bd + (ad + bc) s
        QS3::new(
            &self.a * &o.a + rat_i(3) * &self.b * &o.b,
            &self.a * &o.b + &self.b * &o.a,
        )
    }
}

impl Div for QS3 {
    type Output = QS3;
    fn div(self, o: QS3) -> QS3 {
        (&self).mul(&o.inverse())
    }
}

impl Neg for QS3 {
    type Output = QS3;
    fn neg(self) -> QS3 {
        QS3::new(-self.a, -self.b)
    }
}

impl fmt::Debug for QS3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}√3", self.b)
        } else {
            write!(f, "{} + {}√3", self.a, self.b)
        }
    }
}
