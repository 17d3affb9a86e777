//! Normal forms in real multiquadratic fields Q(√g₁, …, √g_k).
//!
//! Every value produced by the digit pipelines lives in a field obtained from
//! the rationals by adjoining finitely many square roots of positive integers.
//! An element is stored as a coefficient vector over the 2^k monomial basis
//! { ∏_{i∈M} √gᵢ : M ⊆ {1..k} }, which is linearly independent over Q as long
//! as no subset product of the generators is a perfect square.  That
//! independence is maintained by construction: a new radicand is adjoined only
//! after checking, for every subset of the current generators, that the
//! combined product is not a perfect square — so membership in an existing
//! square class is always detected and rewritten instead of duplicated.
//!
//! Consequences of the representation:
//!
//! * the zero test is syntactic (all coefficients zero), hence exact;
//! * the sign of a nonzero element is decided recursively by splitting off the
//!   top generator, x = A + B√g, and comparing A² against gB² one level down;
//! * inversion uses the conjugate: 1/x = (A − B√g)/(A² − gB²), recursing on
//!   the denominator, which lies in the smaller tower.
//!
//! The tower is capped at [`MAX_RADS`] generators (field degree 16).  Any
//! operation that would need a fifth independent square class reports `None`,
//! and callers fall back to certified interval arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::dyadic::DyadicInterval;
use super::qs3::{rational_sign, Rational, QS3};

/// Maximum number of independent square-root generators (degree-16 ceiling).
pub const MAX_RADS: usize = 4;

/// An element of Q(√g₁, …, √g_k) in coordinates over the monomial basis.
///
/// `rads` holds the generators: positive integers, none a perfect square, no
/// subset product a perfect square.  `co` has length `1 << rads.len()`; the
/// entry at index `m` is the rational coefficient of ∏_{i : bit i of m} √gᵢ.
#[derive(Clone, Debug)]
pub struct MultiQuad {
    rads: Vec<BigInt>,
    co: Vec<Rational>,
}

fn subset_prod(rads: &[BigInt], mask: usize) -> BigInt {
    let mut p = BigInt::one();
    for (i, g) in rads.iter().enumerate() {
        if mask & (1 << i) != 0 {
            p *= g;
        }
    }
    p
}

/// Integer square root that certifies exactness: `Some(s)` iff `s·s == n`.
fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    if &(&s * &s) == n {
        Some(s)
    } else {
        None
    }
}

/// Searches for a subset `M` of the generators and a rational `c` with
/// √r = c · ∏_{i∈M} √gᵢ, i.e. decides whether r lies in a square class
/// already spanned by the tower.  For r = p/q the test for mask `M` is
/// whether p·q·∏_{i∈M} gᵢ is a perfect square s², which gives
/// c = s / (q·∏_{i∈M} gᵢ).
fn express_sqrt(rads: &[BigInt], r: &Rational) -> Option<(usize, Rational)> {
    debug_assert!(r.is_positive());
    let p = r.numer().clone();
    let q = r.denom().clone();
    let base = &p * &q;
    for mask in 0..(1usize << rads.len()) {
        let prod = subset_prod(rads, mask);
        if let Some(s) = exact_sqrt(&(&base * &prod)) {
            let c = Rational::new(s, q.clone() * prod);
            return Some((mask, c));
        }
    }
    None
}

/// Coefficient-vector product inside a fixed tower: masks combine by XOR and
/// the overlap contributes the rational factor ∏_{i∈m₁∩m₂} gᵢ.
fn mul_vec(rads: &[BigInt], a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = 1usize << rads.len();
    let mut out = vec![Rational::zero(); n];
    for (m1, c1) in a.iter().enumerate() {
        if c1.is_zero() {
            continue;
        }
        for (m2, c2) in b.iter().enumerate() {
            if c2.is_zero() {
                continue;
            }
            let mut c = c1 * c2;
            let overlap = m1 & m2;
            if overlap != 0 {
                c *= Rational::from_integer(subset_prod(rads, overlap));
            }
            out[m1 ^ m2] += c;
        }
    }
    out
}

/// Exact sign by splitting off the top generator: x = A + B√g with A, B in
/// the smaller tower.  When the signs of A and B disagree, the sign of x is
/// sign(A) · sign(A² − gB²), again decided one level down.
fn sign_rec(rads: &[BigInt], co: &[Rational]) -> i8 {
    if co.iter().all(Rational::is_zero) {
        return 0;
    }
    if rads.is_empty() {
        return rational_sign(&co[0]);
    }
    let k = rads.len();
    let half = 1usize << (k - 1);
    let sub = &rads[..k - 1];
    let a = &co[..half];
    let b = &co[half..];
    let sa = sign_rec(sub, a);
    let sb = sign_rec(sub, b);
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    let a2 = mul_vec(sub, a, a);
    let b2 = mul_vec(sub, b, b);
    let g = Rational::from_integer(rads[k - 1].clone());
    let d: Vec<Rational> = a2
        .iter()
        .zip(b2.iter())
        .map(|(x, y)| x - &(&g * y))
        .collect();
    sa * sign_rec(sub, &d)
}

/// Exact inverse via the conjugate.  Returns `None` only for zero: a zero
/// denominator A² − gB² with x ≠ 0 would force √g into the smaller field,
/// contradicting generator independence.
fn inv_rec(rads: &[BigInt], co: &[Rational]) -> Option<Vec<Rational>> {
    if co.iter().all(Rational::is_zero) {
        return None;
    }
    if rads.is_empty() {
        return Some(vec![co[0].recip()]);
    }
    let k = rads.len();
    let half = 1usize << (k - 1);
    let sub = &rads[..k - 1];
    let a = &co[..half];
    let b = &co[half..];
    if b.iter().all(Rational::is_zero) {
        let mut out = inv_rec(sub, a)?;
        out.extend(std::iter::repeat(Rational::zero()).take(half));
        return Some(out);
    }
    let a2 = mul_vec(sub, a, a);
    let b2 = mul_vec(sub, b, b);
    let g = Rational::from_integer(rads[k - 1].clone());
    let d: Vec<Rational> = a2
        .iter()
        .zip(b2.iter())
        .map(|(x, y)| x - &(&g * y))
        .collect();
    let di = inv_rec(sub, &d)?;
    let mut out = mul_vec(sub, a, &di);
    out.extend(mul_vec(sub, b, &di).into_iter().map(|c| -c));
    Some(out)
}

impl MultiQuad {
    pub fn from_rational(r: Rational) -> Self {
        MultiQuad {
            rads: Vec::new(),
            co: vec![r],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// Embeds a + b√3 as a tower element (generator 3 when b ≠ 0).
    pub fn from_qs3(q: &QS3) -> Self {
        if q.b.is_zero() {
            return Self::from_rational(q.a.clone());
        }
        normalize(vec![BigInt::from(3)], vec![q.a.clone(), q.b.clone()])
    }

    pub fn is_zero(&self) -> bool {
        self.co.iter().all(Rational::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.co[1..].iter().all(Rational::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.is_rational() {
            Some(&self.co[0])
        } else {
            None
        }
    }

    /// Exact sign: −1, 0, or +1.
    pub fn sign(&self) -> i8 {
        sign_rec(&self.rads, &self.co)
    }

    pub fn neg(&self) -> Self {
        MultiQuad {
            rads: self.rads.clone(),
            co: self.co.iter().map(|c| -c).collect(),
        }
    }

    /// Re-expresses both operands over a common tower.  `None` when the union
    /// of square classes would need more than [`MAX_RADS`] generators.
    fn merged_with(&self, other: &MultiQuad) -> Option<(Vec<BigInt>, Vec<Rational>, Vec<Rational>)> {
        let mut rads = self.rads.clone();
        let mut bmap: Vec<(usize, Rational)> = Vec::new();
        for g in &other.rads {
            let gr = Rational::from_integer(g.clone());
            match express_sqrt(&rads, &gr) {
                Some((mask, c)) => bmap.push((mask, c)),
                None => {
                    if rads.len() == MAX_RADS {
                        return None;
                    }
                    rads.push(g.clone());
                    bmap.push((1 << (rads.len() - 1), Rational::one()));
                }
            }
        }
        let n = 1usize << rads.len();
        let mut ca = vec![Rational::zero(); n];
        for (m, c) in self.co.iter().enumerate() {
            if !c.is_zero() {
                ca[m] = c.clone();
            }
        }
        let mut cb = vec![Rational::zero(); n];
        for (m, c) in other.co.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut acc_mask = 0usize;
            let mut acc = c.clone();
            for (j, (gm, cf)) in bmap.iter().enumerate() {
                if m & (1 << j) == 0 {
                    continue;
                }
                let overlap = acc_mask & gm;
                if overlap != 0 {
                    acc *= Rational::from_integer(subset_prod(&rads, overlap));
                }
                acc *= cf;
                acc_mask ^= gm;
            }
            cb[acc_mask] += acc;
        }
        Some((rads, ca, cb))
    }

    pub fn add(&self, other: &MultiQuad) -> Option<MultiQuad> {
        let (rads, ca, cb) = self.merged_with(other)?;
        let co = ca.iter().zip(cb.iter()).map(|(x, y)| x + y).collect();
        Some(normalize(rads, co))
    }

    pub fn sub(&self, other: &MultiQuad) -> Option<MultiQuad> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MultiQuad) -> Option<MultiQuad> {
        let (rads, ca, cb) = self.merged_with(other)?;
        Some(normalize(rads.clone(), mul_vec(&rads, &ca, &cb)))
    }

    /// `None` for zero; never grows the tower.
    pub fn inverse(&self) -> Option<MultiQuad> {
        let co = inv_rec(&self.rads, &self.co)?;
        Some(normalize(self.rads.clone(), co))
    }

    /// Square root of a *rational* tower element.  Nonnegative rationals only;
    /// irrational elements report `None` (no nested radicals arise in the
    /// digit pipelines, where every discriminant is a rational integer).
    pub fn sqrt(&self) -> Option<MultiQuad> {
        let r = self.as_rational()?;
        match rational_sign(r) {
            -1 => None,
            0 => Some(MultiQuad::zero()),
            _ => {
                let p = r.numer().clone();
                let q = r.denom().clone();
                let base = &p * &q;
                if let Some(s) = exact_sqrt(&base) {
                    return Some(MultiQuad::from_rational(Rational::new(s, q)));
                }
                Some(MultiQuad {
                    rads: vec![base],
                    co: vec![
                        Rational::zero(),
                        Rational::new(BigInt::one(), q),
                    ],
                })
            }
        }
    }

    /// Outward-rounded enclosure of the real value.
    /// The nonzero terms as `(radicand, coefficient)` pairs: the element is
    /// Σ c·√r over the list, with `r = 1` marking the rational part.
    /// Radicands are subset products of the generators, in increasing order.
    pub fn terms(&self) -> Vec<(BigInt, Rational)> {
        let mut out: Vec<(BigInt, Rational)> = self
            .co
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (subset_prod(&self.rads, m), c.clone()))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    pub fn to_interval(&self, prec: u32) -> DyadicInterval {
        let wp = prec + 16;
        let roots: Vec<DyadicInterval> = self
            .rads
            .iter()
            .map(|g| {
                DyadicInterval::from_rational(&Rational::from_integer(g.clone()), wp)
                    .sqrt(wp)
                    .expect("generators are positive")
            })
            .collect();
        let mut sum = DyadicInterval::zero();
        for (m, c) in self.co.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut term = DyadicInterval::from_rational(c, wp);
            for (i, root) in roots.iter().enumerate() {
                if m & (1 << i) != 0 {
                    term = term.mul(root, wp);
                }
            }
            sum = sum.add(&term, wp);
        }
        sum
    }

    pub fn to_f64(&self) -> f64 {
        self.to_interval(64).to_f64()
    }

    /// Minimal polynomial over Q, as integer coefficients in ascending degree
    /// order, content-free, with positive leading coefficient.  Conjugates are
    /// the sign flips of the generators; duplicates (which appear exactly when
    /// the element lies in a proper subfield) are removed, so the product over
    /// the distinct conjugates is irreducible.
    pub fn minimal_polynomial(&self) -> Vec<BigInt> {
        let k = self.rads.len();
        let mut conjugates: Vec<Vec<Rational>> = Vec::new();
        for flips in 0..(1usize << k) {
            let v: Vec<Rational> = self
                .co
                .iter()
                .enumerate()
                .map(|(m, c)| {
                    if ((m & flips).count_ones()) % 2 == 1 {
                        -c
                    } else {
                        c.clone()
                    }
                })
                .collect();
            if !conjugates.contains(&v) {
                conjugates.push(v);
            }
        }
        // Product of (X − conjugate), coefficients as tower elements.
        let n = 1usize << k;
        let mut poly: Vec<Vec<Rational>> = vec![{
            let mut one = vec![Rational::zero(); n];
            one[0] = Rational::one();
            one
        }];
        for conj in &conjugates {
            let mut next: Vec<Vec<Rational>> = vec![vec![Rational::zero(); n]; poly.len() + 1];
            for (i, coeff) in poly.iter().enumerate() {
                for (slot, val) in next[i + 1].iter_mut().zip(coeff.iter()) {
                    *slot += val;
                }
                let prod = mul_vec(&self.rads, conj, coeff);
                for (slot, val) in next[i].iter_mut().zip(prod.iter()) {
                    *slot -= val;
                }
            }
            poly = next;
        }
        let rational_coeffs: Vec<Rational> = poly
            .into_iter()
            .map(|v| {
                assert!(
                    v[1..].iter().all(Rational::is_zero),
                    "conjugate product must have rational coefficients"
                );
                v.into_iter().next().unwrap()
            })
            .collect();
        let mut denom_lcm = BigInt::one();
        for c in &rational_coeffs {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = rational_coeffs
            .iter()
            .map(|c| c.numer() * (&denom_lcm / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for c in &ints {
            content = content.gcd(c);
        }
        if !content.is_zero() && !content.is_one() {
            for c in ints.iter_mut() {
                *c /= &content;
            }
        }
        ints
    }
}

/// Drops generators no nonzero coefficient uses, then sorts the survivors so
/// equal towers built in different orders coincide.
fn normalize(rads: Vec<BigInt>, co: Vec<Rational>) -> MultiQuad {
    let mut used = 0usize;
    for (m, c) in co.iter().enumerate() {
        if !c.is_zero() {
            used |= m;
        }
    }
    let mut kept: Vec<(usize, BigInt)> = rads
        .into_iter()
        .enumerate()
        .filter(|(i, _)| used & (1 << i) != 0)
        .collect();
    kept.sort_by(|a, b| a.1.cmp(&b.1));
    let mut bit_of = vec![usize::MAX; 8 * std::mem::size_of::<usize>()];
    for (new_bit, (old_idx, _)) in kept.iter().enumerate() {
        bit_of[*old_idx] = new_bit;
    }
    let new_rads: Vec<BigInt> = kept.into_iter().map(|(_, g)| g).collect();
    let mut new_co = vec![Rational::zero(); 1 << new_rads.len()];
    for (m, c) in co.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut nm = 0usize;
        let mut rest = m;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            nm |= 1 << bit_of[i];
            rest &= rest - 1;
        }
        new_co[nm] += c;
    }
    MultiQuad {
        rads: new_rads,
        co: new_co,
    }
}

#[cfg(test)]
mod tests {
    use super::super::qs3::rat;
    use super::*;

    fn sqrt_of(n: i64) -> MultiQuad {
        MultiQuad::from_int(n).sqrt().expect("nonnegative")
    }

    #[test]
    fn sqrt2_squares_to_two() {
        let s = sqrt_of(2);
        let two = s.mul(&s).unwrap();
        assert_eq!(two.as_rational(), Some(&rat(2, 1)));
    }

    #[test]
    fn square_classes_collapse_without_factoring() {
        // √8·√2 = 4 even though 8 is stored unreduced.
        let p = sqrt_of(8).mul(&sqrt_of(2)).unwrap();
        assert_eq!(p.as_rational(), Some(&rat(4, 1)));
        // √7 = (1/72)·√3·√12096 because 3·7·12096 = 504².
        let lhs = sqrt_of(3).mul(&sqrt_of(12096)).unwrap();
        let rhs = sqrt_of(7).mul(&MultiQuad::from_int(72)).unwrap();
        assert!(lhs.sub(&rhs).unwrap().is_zero());
    }

    #[test]
    fn golden_ratio_inverse() {
        let half = MultiQuad::from_rational(rat(1, 2));
        let phi = sqrt_of(5)
            .add(&MultiQuad::one())
            .unwrap()
            .mul(&half)
            .unwrap();
        // 1/φ = φ − 1.
        let inv = phi.inverse().unwrap();
        let expect = phi.sub(&MultiQuad::one()).unwrap();
        assert!(inv.sub(&expect).unwrap().is_zero());
    }

    #[test]
    fn conjugate_tail_sum_collapses() {
        // (√3+√143)/10 + (√143−√3)/10 = √143/5.
        let tenth = MultiQuad::from_rational(rat(1, 10));
        let a = sqrt_of(3).add(&sqrt_of(143)).unwrap().mul(&tenth).unwrap();
        let b = sqrt_of(143).sub(&sqrt_of(3)).unwrap().mul(&tenth).unwrap();
        let sum = a.add(&b).unwrap();
        let expect = sqrt_of(143)
            .mul(&MultiQuad::from_rational(rat(1, 5)))
            .unwrap();
        assert!(sum.sub(&expect).unwrap().is_zero());
        assert!(sum.is_rational() == false);
    }

    #[test]
    fn sign_separates_close_values() {
        // √2 + √3 < √10 because (√2+√3)² = 5 + 2√6 and (2√6)² = 24 < 25.
        let d = sqrt_of(2)
            .add(&sqrt_of(3))
            .unwrap()
            .sub(&sqrt_of(10))
            .unwrap();
        assert_eq!(d.sign(), -1);
        // (13√3 + 13√7 + √143)/26 > √7.
        let num = sqrt_of(3)
            .add(&sqrt_of(7))
            .unwrap()
            .mul(&MultiQuad::from_int(13))
            .unwrap()
            .add(&sqrt_of(143))
            .unwrap();
        let b2 = num.mul(&MultiQuad::from_rational(rat(1, 26))).unwrap();
        assert_eq!(b2.sub(&sqrt_of(7)).unwrap().sign(), 1);
    }

    #[test]
    fn tower_cap_reports_overflow() {
        let mut x = sqrt_of(2);
        for g in [3, 5, 7] {
            x = x.mul(&sqrt_of(g)).unwrap();
        }
        assert!(x.mul(&sqrt_of(11)).is_none());
        assert!(x.mul(&sqrt_of(6)).is_some()); // 6 = 2·3 stays in the tower
    }

    #[test]
    fn minimal_polynomials() {
        let x = sqrt_of(2).add(&sqrt_of(3)).unwrap();
        let coeffs: Vec<i64> = x
            .minimal_polynomial()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect();
        assert_eq!(coeffs, vec![1, 0, -10, 0, 1]); // x⁴ − 10x² + 1
        let phi = sqrt_of(5)
            .add(&MultiQuad::one())
            .unwrap()
            .mul(&MultiQuad::from_rational(rat(1, 2)))
            .unwrap();
        let coeffs: Vec<i64> = phi
            .minimal_polynomial()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect();
        assert_eq!(coeffs, vec![-1, -1, 1]); // x² − x − 1
    }

    #[test]
    fn interval_encloses_value() {
        let num = sqrt_of(3)
            .add(&sqrt_of(7))
            .unwrap()
            .mul(&MultiQuad::from_int(13))
            .unwrap()
            .add(&sqrt_of(143))
            .unwrap();
        let b2 = num.mul(&MultiQuad::from_rational(rat(1, 26))).unwrap();
        let iv = b2.to_interval(80);
        let v = 2.648834164820634_f64;
        assert!(iv.lo.to_f64() <= v && v <= iv.hi.to_f64());
        assert!(iv.width().to_f64() < 1e-20);
    }

    #[test]
    fn qs3_embedding_matches_field_arithmetic() {
        let q = QS3::new(rat(5, 2), rat(-1, 3));
        let m = MultiQuad::from_qs3(&q);
        assert_eq!(m.sign(), q.sign());
        let prod = m.mul(&m).unwrap();
        let sq = &q * &q;
        assert!(prod.sub(&MultiQuad::from_qs3(&sq)).unwrap().is_zero());
    }
}
