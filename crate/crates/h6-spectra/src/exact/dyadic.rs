//! Arbitrary-precision dyadic numbers and outward-rounded interval
//! arithmetic.
//!
//! A [`Dyadic`] is `mant * 2^exp` with a `BigInt` mantissa; a
//! [`DyadicInterval`] is a pair of dyadics `lo <= hi` that provably encloses
//! a real number. Interval operations round the lower endpoint down and the
//! upper endpoint up to a working precision, so enclosures stay sound while
//! mantissas stay bounded.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// A dyadic rational `mant * 2^exp`, normalized so that `mant` is odd or the
/// number is zero (with `exp = 0`).
#[derive(Clone, PartialEq, Eq)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mant, self.exp)
    }
}

fn shr_floor(n: &BigInt, k: u64) -> BigInt {
    // Floor division by 2^k, independent of the Shr sign convention.
    n.div_floor(&(BigInt::one() << k))
}

fn shr_ceil(n: &BigInt, k: u64) -> BigInt {
    n.div_ceil(&(BigInt::one() << k))
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { mant: BigInt::one(), exp: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic::new(BigInt::from(n), 0)
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant = shr_floor(&self.mant, tz);
            self.exp += tz as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn sign(&self) -> i8 {
        match self.mant.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    pub fn neg(&self) -> Self {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    /// Number of significant bits of the mantissa.
    pub fn mant_bits(&self) -> u64 {
        self.mant.bits()
    }

    pub fn add(&self, other: &Dyadic) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, other: &Dyadic) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Dyadic) -> Self {
        Dyadic::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    /// Exact multiplication by 2^k.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.mant.is_zero() {
            return Dyadic::zero();
        }
        Dyadic::new(self.mant.clone(), self.exp + k)
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    /// Largest dyadic with at most `prec` mantissa bits that is `<= self`.
    pub fn round_down(&self, prec: u32) -> Self {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let k = bits - prec as u64;
        Dyadic::new(shr_floor(&self.mant, k), self.exp + k as i64)
    }

    /// Smallest dyadic with at most `prec` mantissa bits that is `>= self`.
    pub fn round_up(&self, prec: u32) -> Self {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let k = bits - prec as u64;
        Dyadic::new(shr_ceil(&self.mant, k), self.exp + k as i64)
    }

    /// A lower bound of `self / other` (`other > 0`) accurate to about
    /// `prec` bits.
    pub fn div_down(&self, other: &Dyadic, prec: u32) -> Self {
        assert!(other.sign() != 0, "dyadic division by zero");
        if other.sign() < 0 {
            return self.neg().div_up(&other.neg(), prec).neg();
        }
        if self.is_zero() {
            return Dyadic::zero();
        }
        let shift = prec as u64 + other.mant.bits() + 2;
        let num = &self.mant << shift;
        let q = num.div_floor(&other.mant);
        Dyadic::new(q, self.exp - other.exp - shift as i64)
    }

    /// An upper bound of `self / other` (`other > 0`) accurate to about
    /// `prec` bits.
    pub fn div_up(&self, other: &Dyadic, prec: u32) -> Self {
        assert!(other.sign() != 0, "dyadic division by zero");
        if other.sign() < 0 {
            return self.neg().div_down(&other.neg(), prec).neg();
        }
        if self.is_zero() {
            return Dyadic::zero();
        }
        let shift = prec as u64 + other.mant.bits() + 2;
        let num = &self.mant << shift;
        let q = num.div_ceil(&other.mant);
        Dyadic::new(q, self.exp - other.exp - shift as i64)
    }

    /// A lower bound of `sqrt(self)` (`self >= 0`) accurate to about `prec`
    /// bits.
    pub fn sqrt_down(&self, prec: u32) -> Self {
        assert!(self.sign() >= 0, "dyadic sqrt of a negative value");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let (n, g) = self.sqrt_scaled(prec);
        let s = num_integer::Roots::sqrt(&n);
        Dyadic::new(s, g)
    }

    /// An upper bound of `sqrt(self)` (`self >= 0`) accurate to about `prec`
    /// bits.
    pub fn sqrt_up(&self, prec: u32) -> Self {
        assert!(self.sign() >= 0, "dyadic sqrt of a negative value");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let (n, g) = self.sqrt_scaled(prec);
        let s = num_integer::Roots::sqrt(&n);
        if &s * &s == n {
            Dyadic::new(s, g)
        } else {
            Dyadic::new(s + 1, g)
        }
    }

    /// Rewrite `self = n * 4^g` with `n` big enough for `prec` result bits,
    /// returning `(n, g)` so that `sqrt(self) = sqrt(n) * 2^g`.
    fn sqrt_scaled(&self, prec: u32) -> (BigInt, i64) {
        let bits = self.mant.bits() as i64;
        let mut t = (2 * (prec as i64 + 2) - bits).max(0);
        if (self.exp - t) % 2 != 0 {
            t += 1;
        }
        let n = &self.mant << t as u64;
        (n, (self.exp - t) / 2)
    }

    pub fn cmp_dyadic(&self, other: &Dyadic) -> Ordering {
        let d = self.sub(other);
        match d.sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    pub fn min_dy(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a.cmp_dyadic(b) == Ordering::Greater { b.clone() } else { a.clone() }
    }

    pub fn max_dy(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a.cmp_dyadic(b) == Ordering::Less { b.clone() } else { a.clone() }
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Lower bound of a rational at `prec` bits.
    pub fn from_rational_down(r: &BigRational, prec: u32) -> Self {
        let shift = prec as u64 + r.denom().bits() + 2;
        let q = (r.numer() << shift).div_floor(r.denom());
        Dyadic::new(q, -(shift as i64))
    }

    /// Upper bound of a rational at `prec` bits.
    pub fn from_rational_up(r: &BigRational, prec: u32) -> Self {
        let shift = prec as u64 + r.denom().bits() + 2;
        let q = (r.numer() << shift).div_ceil(r.denom());
        Dyadic::new(q, -(shift as i64))
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        // Reduce to <= 64 mantissa bits first so the conversion cannot
        // overflow BigInt-to-f64 for huge mantissas.
        let r = self.round_down(64);
        let m = r.mant.to_f64().unwrap_or(if r.sign() > 0 { f64::MAX } else { f64::MIN });
        let e = r.exp.clamp(-2000, 2000) as i32;
        m * 2f64.powi(e)
    }
}

/// A closed interval with dyadic endpoints, `lo <= hi`.
#[derive(Clone, Debug)]
pub struct DyadicInterval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl DyadicInterval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        debug_assert!(lo.cmp_dyadic(&hi) != Ordering::Greater, "inverted interval");
        DyadicInterval { lo, hi }
    }

    pub fn point(d: Dyadic) -> Self {
        DyadicInterval { lo: d.clone(), hi: d }
    }

    pub fn zero() -> Self {
        DyadicInterval::point(Dyadic::zero())
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        DyadicInterval {
            lo: Dyadic::from_rational_down(r, prec),
            hi: Dyadic::from_rational_up(r, prec),
        }
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    /// `Some(sign)` if the interval certifies one; `None` if it straddles 0.
    pub fn sign(&self) -> Option<i8> {
        if self.lo.sign() > 0 {
            Some(1)
        } else if self.hi.sign() < 0 {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.sign() <= 0 && self.hi.sign() >= 0
    }

    pub fn neg(&self) -> Self {
        DyadicInterval { lo: self.hi.neg(), hi: self.lo.neg() }
    }

    pub fn add(&self, other: &Self, prec: u32) -> Self {
        DyadicInterval {
            lo: self.lo.add(&other.lo).round_down(prec),
            hi: self.hi.add(&other.hi).round_up(prec),
        }
    }

    pub fn sub(&self, other: &Self, prec: u32) -> Self {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &Self, prec: u32) -> Self {
        let cands = [
            self.lo.mul(&other.lo),
            self.lo.mul(&other.hi),
            self.hi.mul(&other.lo),
            self.hi.mul(&other.hi),
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            lo = Dyadic::min_dy(&lo, c);
            hi = Dyadic::max_dy(&hi, c);
        }
        DyadicInterval { lo: lo.round_down(prec), hi: hi.round_up(prec) }
    }

    /// Interval division; `None` when the divisor interval contains zero
    /// (the caller should refine the divisor first).
    pub fn div(&self, other: &Self, prec: u32) -> Option<Self> {
        if other.contains_zero() {
            return None;
        }
        let quotients_lo = [
            self.lo.div_down(&other.lo, prec),
            self.lo.div_down(&other.hi, prec),
            self.hi.div_down(&other.lo, prec),
            self.hi.div_down(&other.hi, prec),
        ];
        let quotients_hi = [
            self.lo.div_up(&other.lo, prec),
            self.lo.div_up(&other.hi, prec),
            self.hi.div_up(&other.lo, prec),
            self.hi.div_up(&other.hi, prec),
        ];
        let mut lo = quotients_lo[0].clone();
        for c in &quotients_lo[1..] {
            lo = Dyadic::min_dy(&lo, c);
        }
        let mut hi = quotients_hi[0].clone();
        for c in &quotients_hi[1..] {
            hi = Dyadic::max_dy(&hi, c);
        }
        Some(DyadicInterval { lo, hi })
    }

    /// Interval square root. The lower endpoint is clamped to zero, so a
    /// slightly negative lower bound on a provably nonnegative value is
    /// tolerated; `None` if the whole interval is negative.
    pub fn sqrt(&self, prec: u32) -> Option<Self> {
        if self.hi.sign() < 0 {
            return None;
        }
        let lo = if self.lo.sign() <= 0 { Dyadic::zero() } else { self.lo.sqrt_down(prec) };
        Some(DyadicInterval { lo, hi: self.hi.sqrt_up(prec) })
    }

    /// Intersection of two enclosures of the same number.
    pub fn intersect(&self, other: &Self) -> Self {
        let lo = Dyadic::max_dy(&self.lo, &other.lo);
        let hi = Dyadic::min_dy(&self.hi, &other.hi);
        if lo.cmp_dyadic(&hi) == Ordering::Greater {
            // Outward rounding should prevent this; fall back defensively to
            // the tighter of the two original enclosures.
            if self.width().cmp_dyadic(&other.width()) == Ordering::Less {
                self.clone()
            } else {
                other.clone()
            }
        } else {
            DyadicInterval { lo, hi }
        }
    }

    pub fn to_f64(&self) -> f64 {
        0.5 * (self.lo.to_f64() + self.hi.to_f64())
    }

    /// True if `width <= 2^-bits`.
    pub fn width_below(&self, bits: u32) -> bool {
        let w = self.width();
        if w.is_zero() {
            return true;
        }
        // w = m * 2^e <= 2^-bits  iff  bitlen(m) + e <= -bits.
        (w.mant.bits() as i64) + w.exp <= -(bits as i64)
    }
}

/// Correctly rounded decimal rendering of a nonzero rational with `sig`
/// significant digits (round half away from zero). Returns the digit string,
/// the decimal exponent of the leading digit, and the sign.
fn decimal_digits(r: &BigRational, sig: usize) -> (String, i64, bool) {
    let neg = r.is_negative();
    let p = r.numer().abs();
    let q = r.denom().clone();
    let ten = BigInt::from(10);

    // e = floor(log10 |r|): start from digit-count estimate, then adjust.
    let mut e = p.to_string().len() as i64 - q.to_string().len() as i64;
    let pow = |k: i64| -> (BigInt, BigInt) {
        // Returns multipliers (pn, qn) with |r| * 10^-e = (p*pn)/(q*qn).
        if k >= 0 {
            (BigInt::one(), ten.pow(k as u32))
        } else {
            (ten.pow((-k) as u32), BigInt::one())
        }
    };
    loop {
        // |r| >= 10^(e+1) ?
        let (pn, qn) = pow(e + 1);
        if &p * &pn >= &q * &qn {
            e += 1;
            continue;
        }
        let (pn, qn) = pow(e);
        if &p * &pn < &q * &qn {
            e -= 1;
            continue;
        }
        break;
    }

    // scaled = round(|r| * 10^(sig-1-e)), half away from zero.
    let k = sig as i64 - 1 - e;
    let (num, den) = if k >= 0 { (&p * ten.pow(k as u32), q) } else { (p, &q * ten.pow((-k) as u32)) };
    let (mut n, rem) = num.div_rem(&den);
    if &rem * 2 >= den {
        n += 1;
    }
    let mut digits = n.to_string();
    if digits.len() > sig {
        // 999.. overflowed to 1000..; renormalize.
        digits.truncate(sig);
        e += 1;
    }
    (digits, e, neg)
}

/// Render `digits` (a `sig`-length significant-digit string for value
/// `0.digits * 10^(e+1)`) in plain or scientific notation.
fn render_decimal(digits: &str, e: i64, neg: bool) -> String {
    let sign = if neg { "-" } else { "" };
    let sig = digits.len() as i64;
    if e >= 0 && e < 21 {
        if e + 1 >= sig {
            // Integer with possible trailing zeros.
            let zeros = "0".repeat((e + 1 - sig) as usize);
            format!("{sign}{digits}{zeros}")
        } else {
            let (int, frac) = digits.split_at((e + 1) as usize);
            format!("{sign}{int}.{frac}")
        }
    } else if e < 0 && e >= -5 {
        let zeros = "0".repeat((-e - 1) as usize);
        format!("{sign}0.{zeros}{digits}")
    } else {
        let (first, rest) = digits.split_at(1);
        if rest.is_empty() {
            format!("{sign}{first}e{e}")
        } else {
            format!("{sign}{first}.{rest}e{e}")
        }
    }
}

/// Correctly rounded decimal string of a rational at `sig` significant
/// digits.
pub fn decimal_of_rational(r: &BigRational, sig: usize) -> String {
    assert!(sig >= 1);
    if r.is_zero() {
        return "0".to_string();
    }
    let (digits, e, neg) = decimal_digits(r, sig);
    render_decimal(&digits, e, neg)
}

/// Decimal strings of both endpoints; equal strings certify the correctly
/// rounded decimal of any number in the interval (decimal rounding is
/// monotone).
pub fn decimal_of_interval(iv: &DyadicInterval, sig: usize) -> Option<String> {
    let lo = decimal_of_rational(&iv.lo.to_rational(), sig);
    let hi = decimal_of_rational(&iv.hi.to_rational(), sig);
    if lo == hi { Some(lo) } else { None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn dyadic_basic_arithmetic() {
        let a = Dyadic::new(BigInt::from(3), -1); // 1.5
        let b = Dyadic::new(BigInt::from(5), -2); // 1.25
        assert_eq!(a.add(&b).to_f64(), 2.75);
        assert_eq!(a.sub(&b).to_f64(), 0.25);
        assert_eq!(a.mul(&b).to_f64(), 1.875);
        assert_eq!(a.cmp_dyadic(&b), Ordering::Greater);
    }

    #[test]
    fn rounding_is_outward() {
        let pi_ish = Dyadic::new(BigInt::from(0x3243f6a8885a3i64), -48);
        let down = pi_ish.round_down(20);
        let up = pi_ish.round_up(20);
        assert!(down.cmp_dyadic(&pi_ish) != Ordering::Greater);
        assert!(up.cmp_dyadic(&pi_ish) != Ordering::Less);
        assert!(down.mant_bits() <= 20);
        assert!(up.mant_bits() <= 21); // carry can add one bit
    }

    #[test]
    fn sqrt_bounds_enclose() {
        for n in [2i64, 3, 5, 7, 143, 299, 2803333] {
            let d = Dyadic::from_int(n);
            let lo = d.sqrt_down(80);
            let hi = d.sqrt_up(80);
            assert!(lo.mul(&lo).cmp_dyadic(&d) != Ordering::Greater);
            assert!(hi.mul(&hi).cmp_dyadic(&d) != Ordering::Less);
            let w = hi.sub(&lo);
            assert!(w.to_f64() < 1e-20);
        }
    }

    #[test]
    fn division_bounds_enclose() {
        let a = Dyadic::from_int(1);
        let b = Dyadic::from_int(3);
        let lo = a.div_down(&b, 60);
        let hi = a.div_up(&b, 60);
        let third = rat(1, 3);
        assert!(lo.to_rational() <= third);
        assert!(hi.to_rational() >= third);
        assert!(hi.sub(&lo).to_f64() < 1e-17);
    }

    #[test]
    fn interval_sqrt_of_two() {
        let two = DyadicInterval::from_rational(&rat(2, 1), 64);
        let s = two.sqrt(64).unwrap();
        let v = std::f64::consts::SQRT_2;
        assert!(s.lo.to_f64() <= v && v <= s.hi.to_f64());
        assert!(s.width_below(60));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal_of_rational(&rat(1, 2), 3), "0.500");
        assert_eq!(decimal_of_rational(&rat(2, 1), 1), "2");
        assert_eq!(decimal_of_rational(&rat(-1, 8), 4), "-0.1250");
        assert_eq!(decimal_of_rational(&rat(9999, 10), 3), "1000");
        assert_eq!(decimal_of_rational(&rat(1, 3), 5), "0.33333");
        assert_eq!(decimal_of_rational(&rat(2, 3), 5), "0.66667");
        assert_eq!(decimal_of_rational(&rat(1, 1000000), 3), "1.00e-6");
        let big = BigRational::from_f64(2.391652148620280).unwrap();
        assert_eq!(&decimal_of_rational(&big, 8), "2.3916521");
    }

    #[test]
    fn decimal_of_tight_interval() {
        let lo = Dyadic::from_rational_down(&rat(23916521, 10000000), 64);
        let hi = Dyadic::from_rational_up(&rat(23916522, 10000000), 64);
        let iv = DyadicInterval::new(lo, hi);
        assert_eq!(decimal_of_interval(&iv, 4), Some("2.392".to_string()));
        assert_eq!(decimal_of_interval(&iv, 9), None);
    }
}
