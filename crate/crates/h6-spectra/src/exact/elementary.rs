//! Certified enclosures of ln, exp, and real powers.
//!
//! The Hausdorff-dimension bound needs one transcendental step: solving
//! Moran's equation Σ Cᵢˢ = 1, where the contraction ratios Cᵢ are algebraic.
//! Everything here returns *enclosing intervals* with directed rounding, so a
//! sign decided from them is a theorem, not an estimate.
//!
//! * `ln` reduces its argument to m·2ᵉ with m ∈ [1, 2) and sums the series
//!   ln m = 2·atanh(t), t = (m−1)/(m+1) ∈ [0, 1/3), whose tail after the
//!   k-th term is at most t^{2k+3}/(2k+3) · 9/8;
//! * `exp` subtracts the nearest multiple of ln 2 so the remainder r has
//!   |r| < 3/4, then sums Σ rʲ/j! with the tail bounded by twice the first
//!   omitted term;
//! * `pow` composes the two: bˢ = exp(s·ln b).
//!
//! All series run in interval arithmetic at a working precision a few guard
//! bits above the request, and every tail bound is added to the enclosure
//! rather than dropped.

use super::dyadic::{Dyadic, DyadicInterval};
use super::qs3::Rational;
use num_bigint::BigInt;

fn shift2(iv: &DyadicInterval, k: i64) -> DyadicInterval {
    DyadicInterval::new(iv.lo.mul_pow2(k), iv.hi.mul_pow2(k))
}

fn rational_point(n: i64, d: i64, wp: u32) -> DyadicInterval {
    DyadicInterval::from_rational(&Rational::new(BigInt::from(n), BigInt::from(d)), wp)
}

/// Enclosure of atanh(t) for exact rational t ∈ [0, 1/2).
fn atanh_series(t: &Rational, wp: u32) -> DyadicInterval {
    let tv = DyadicInterval::from_rational(t, wp);
    let t2 = tv.mul(&tv, wp);
    let mut power = tv.clone();
    let mut sum = tv.clone();
    let threshold = Dyadic::new(BigInt::from(1), -((wp + 2) as i64));
    let mut k = 1u32;
    loop {
        // Tail after the term with exponent 2k−1 is ≤ t^{2k+1}/(2k+1)·(9/8).
        let tail = power
            .hi
            .mul(&t2.hi)
            .mul(&Dyadic::new(BigInt::from(9), 0))
            .mul_pow2(-3)
            .round_up(wp);
        if tail.cmp_dyadic(&threshold) == std::cmp::Ordering::Less {
            let hi = sum.hi.add(&tail);
            return DyadicInterval::new(sum.lo.clone(), hi);
        }
        power = power.mul(&t2, wp);
        let term = power.mul(&rational_point(1, 2 * k as i64 + 1, wp), wp);
        sum = sum.add(&term, wp);
        k += 1;
    }
}

/// Enclosure of ln 2 = 2·atanh(1/3).
pub fn ln2_interval(wp: u32) -> DyadicInterval {
    shift2(&atanh_series(&Rational::new(BigInt::from(1), BigInt::from(3)), wp), 1)
}

/// Enclosure of ln d for an exact dyadic d > 0.
fn ln_dyadic(d: &Dyadic, wp: u32) -> DyadicInterval {
    assert!(d.sign() > 0, "ln needs a positive argument");
    // d = m·2^e with m ∈ [1, 2): the mantissa scaled to its own bit length.
    let bits = d.mant_bits() as i64;
    let e = d_exp(d) + bits - 1;
    let m = d.mul_pow2(-e);
    let t = (m.to_rational() - Rational::from_integer(BigInt::from(1)))
        / (m.to_rational() + Rational::from_integer(BigInt::from(1)));
    let ln_m = shift2(&atanh_series(&t, wp), 1);
    if e == 0 {
        return ln_m;
    }
    let scaled = mul_int(&ln2_interval(wp), e, wp);
    ln_m.add(&scaled, wp)
}

fn d_exp(d: &Dyadic) -> i64 {
    // The normalized exponent; reconstructed from value and mantissa length.
    // Dyadic exposes mant_bits but not exp directly, so recover it by
    // comparison-free arithmetic: d / 2^(bits-1) ∈ [1,2) ⟺ exp = e-(bits-1).
    d.exponent()
}

fn mul_int(iv: &DyadicInterval, n: i64, wp: u32) -> DyadicInterval {
    let point = DyadicInterval::point(Dyadic::from_int(n));
    iv.mul(&point, wp)
}

/// Enclosure of { ln x : x ∈ iv }; the interval must be strictly positive.
pub fn ln_interval(iv: &DyadicInterval, prec: u32) -> DyadicInterval {
    assert!(iv.lo.sign() > 0, "ln needs a strictly positive interval");
    let wp = prec + 16;
    let lo = ln_dyadic(&iv.lo, wp);
    let hi = ln_dyadic(&iv.hi, wp);
    DyadicInterval::new(lo.lo, hi.hi)
}

/// Enclosure of { exp x : x ∈ iv }.
pub fn exp_interval(iv: &DyadicInterval, prec: u32) -> DyadicInterval {
    let wp = prec + 24;
    let ln2 = ln2_interval(wp);
    // Nearest integer multiple of ln 2; accuracy of the estimate is
    // irrelevant for soundness, only for the series length.
    let n = (iv.to_f64() / std::f64::consts::LN_2).round();
    let n = if n.is_finite() { n as i64 } else { 0 };
    let r = iv.sub(&mul_int(&ln2, n, wp), wp);
    let r_mag = Dyadic::max_dy(&r.lo.abs(), &r.hi.abs());
    assert!(
        r_mag.cmp_dyadic(&Dyadic::new(BigInt::from(3), -2)) != std::cmp::Ordering::Greater
            || n == 0,
        "range reduction left |r| > 3/4"
    );
    let one = DyadicInterval::point(Dyadic::one());
    let mut sum = one.clone();
    let mut power = one;
    // Upper bound on |r|^j / j!, maintained with upward rounding.
    let mut mag = Dyadic::one();
    let threshold = Dyadic::new(BigInt::from(1), -((wp + 2) as i64));
    let mut j = 1i64;
    loop {
        mag = mag.mul(&r_mag).div_up(&Dyadic::from_int(j), wp);
        let tail = mag.mul_pow2(1).round_up(wp);
        power = power.mul(&r, wp).mul(&rational_point(1, j, wp), wp);
        sum = sum.add(&power, wp);
        if tail.cmp_dyadic(&threshold) == std::cmp::Ordering::Less {
            let lo = sum.lo.sub(&tail);
            let hi = sum.hi.add(&tail);
            return shift2(&DyadicInterval::new(lo, hi), n);
        }
        j += 1;
    }
}

/// Enclosure of { bˢ : b ∈ base, s ∈ expo } for a strictly positive base.
pub fn pow_interval(base: &DyadicInterval, expo: &DyadicInterval, prec: u32) -> DyadicInterval {
    let wp = prec + 16;
    let ln_b = ln_interval(base, wp);
    exp_interval(&expo.mul(&ln_b, wp), prec)
}
