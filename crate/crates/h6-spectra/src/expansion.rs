//! The H₆ digit system: digit matrices, values of eventually periodic
//! sequences, cylinder intervals, and expansion of real numbers into digits.
//!
//! Every positive real outside the countable set √3·ℚ has a unique expansion
//! x = [d₀, d₁, …] determined by the nested cylinders N_{d₀}⋯N_{d_k}·(0,∞).
//! Eventually periodic expansions have quadratic values computed exactly
//! here; conversely [`expand_to_tail`] recovers the tail of a quadratic
//! input by detecting an exact repeat among its residuals.
//!
//! Parabolic digit streams (ending in 1^∞ or 5^∞, equivalently words whose
//! matrix has c = 0 or Δ = 0) have endpoint values 0/∞ in √3·ℚ; value
//! operations reject them with [`ExpansionError::ParabolicWord`], and
//! boundary hits during expansion surface as
//! [`ExpansionError::ParabolicPoint`].

use std::fmt;
use std::sync::OnceLock;


use crate::exact::{mobius_ext, AlgebraicReal, ExactError, ExtReal, Rational, QS3};
use crate::exact::qs3::{rat, rat_i, rational_sign};
use crate::words::{Digit, Tail, Word};

/// Errors from value computation and digit expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpansionError {
    /// The word's matrix is parabolic (c = 0 or Tr² = 4): its fixed point
    /// lies in √3·ℚ and is not a spectrum value.
    ParabolicWord,
    /// The point (or one of its residuals) lies on a cylinder boundary,
    /// hence in √3·ℚ.
    ParabolicPoint,
    /// No exact residual repeat within the step budget.
    NoPeriodFound,
    /// The input is not a positive real number.
    OutOfDomain,
    Exact(ExactError),
}

impl fmt::Display for ExpansionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpansionError::ParabolicWord => write!(f, "parabolic word: value lies in √3·Q"),
            ExpansionError::ParabolicPoint => {
                write!(f, "parabolic point: expansion hits a cylinder boundary")
            }
            ExpansionError::NoPeriodFound => {
                write!(f, "no exact period detected within the step budget")
            }
            ExpansionError::OutOfDomain => write!(f, "expansion requires a positive real input"),
            ExpansionError::Exact(e) => write!(f, "exact arithmetic failure: {e}"),
        }
    }
}

impl std::error::Error for ExpansionError {}

impl From<ExactError> for ExpansionError {
    fn from(e: ExactError) -> Self {
        ExpansionError::Exact(e)
    }
}

/// A 2×2 matrix over ℚ(√3); products of digit matrices are unimodular with
/// nonnegative entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitMatrix {
    pub a: QS3,
    pub b: QS3,
    pub c: QS3,
    pub d: QS3,
}

impl DigitMatrix {
    pub fn identity() -> DigitMatrix {
        DigitMatrix {
            a: QS3::one(),
            b: QS3::zero(),
            c: QS3::zero(),
            d: QS3::one(),
        }
    }

    pub fn mul(&self, o: &DigitMatrix) -> DigitMatrix {
        DigitMatrix {
            a: &(&self.a * &o.a) + &(&self.b * &o.c),
            b: &(&self.a * &o.b) + &(&self.b * &o.d),
            c: &(&self.c * &o.a) + &(&self.d * &o.c),
            d: &(&self.c * &o.b) + &(&self.d * &o.d),
        }
    }

    pub fn det(&self) -> QS3 {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn trace(&self) -> QS3 {
        &self.a + &self.d
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse_unimodular(&self) -> DigitMatrix {
        DigitMatrix {
            a: self.d.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: self.a.clone(),
        }
    }

    /// The Möbius action on the extended positive axis.
    pub fn apply(&self, x: &ExtReal) -> ExtReal {
        mobius_ext(&self.a, &self.b, &self.c, &self.d, x)
    }
}

/// The digit matrix N_d = R^d S.
pub fn digit_matrix(d: Digit) -> DigitMatrix {
    let i = |n: i64| QS3::from_int(n);
    let s = |n: i64| QS3::new(rat_i(0), rat_i(n));
    match d.value() {
        1 => DigitMatrix { a: i(1), b: i(0), c: s(1), d: i(1) },
        2 => DigitMatrix { a: s(1), b: i(1), c: i(2), d: s(1) },
        3 => DigitMatrix { a: i(2), b: s(1), c: s(1), d: i(2) },
        4 => DigitMatrix { a: s(1), b: i(2), c: i(1), d: s(1) },
        5 => DigitMatrix { a: i(1), b: s(1), c: i(0), d: i(1) },
        _ => unreachable!("digits are 1..=5"),
    }
}

/// The ordered product N_{d₁}⋯N_{d_k}; the identity for the empty word.
pub fn matrix_of(digits: &[Digit]) -> DigitMatrix {
    let mut m = DigitMatrix::identity();
    for &d in digits {
        m = m.mul(&digit_matrix(d));
    }
    m
}

/// Tr(N_w)² − 4 as an exact rational.  The trace of a digit-matrix product
/// is always an integer or an integer multiple of √3, so the square is a
/// rational integer.
pub fn discriminant(m: &DigitMatrix) -> Rational {
    let t = m.trace();
    let t2 = &t * &t;
    let r = t2
        .as_rational()
        .expect("trace of a digit-matrix product is n or n·√3, so its square is rational")
        .clone();
    r - rat_i(4)
}

/// The value [w^∞] = (a − d + √Δ)/(2c) of a purely periodic sequence.
pub fn value_periodic(w: &Word) -> Result<AlgebraicReal, ExpansionError> {
    if w.is_empty() {
        return Err(ExpansionError::ParabolicWord);
    }
    let m = matrix_of(w.digits());
    if m.c.is_zero() {
        return Err(ExpansionError::ParabolicWord);
    }
    let delta = discriminant(&m);
    if rational_sign(&delta) <= 0 {
        return Err(ExpansionError::ParabolicWord);
    }
    let num = AlgebraicReal::from_qs3(&m.a - &m.d) + AlgebraicReal::from_rational(delta).sqrt()?;
    let den = AlgebraicReal::from_qs3(&m.c * &QS3::from_int(2));
    Ok(num.checked_div(&den)?)
}

/// The value of an eventually periodic tail: the preperiod matrix applied to
/// the periodic value.
pub fn value_tail(t: &Tail) -> Result<AlgebraicReal, ExpansionError> {
    let v = value_periodic(t.period())?;
    let m = matrix_of(t.preperiod().digits());
    match m.apply(&ExtReal::Finite(v)) {
        ExtReal::Finite(x) => Ok(x),
        ExtReal::PosInfinity => Err(ExpansionError::ParabolicWord),
    }
}

/// The interval of values of sequences beginning with `word`.
#[derive(Debug, Clone)]
pub struct CylinderInterval {
    pub low: ExtReal,
    pub high: ExtReal,
    pub word: Word,
}

/// The cylinder (N_w·0, N_w·∞); nested under extension and, for a fixed
/// length, ordered like the words themselves.
pub fn cylinder(w: &Word) -> CylinderInterval {
    let m = matrix_of(w.digits());
    CylinderInterval {
        low: m.apply(&ExtReal::Finite(AlgebraicReal::zero())),
        high: m.apply(&ExtReal::PosInfinity),
        word: w.clone(),
    }
}

/// Interior boundaries between the five digit cylinders:
/// 1/√3, √3/2, 2/√3, √3.
fn digit_boundaries() -> &'static [AlgebraicReal; 4] {
    static CELL: OnceLock<[AlgebraicReal; 4]> = OnceLock::new();
    CELL.get_or_init(|| {
        [
            AlgebraicReal::from_qs3(QS3::new(rat_i(0), rat(1, 3))),
            AlgebraicReal::from_qs3(QS3::new(rat_i(0), rat(1, 2))),
            AlgebraicReal::from_qs3(QS3::new(rat_i(0), rat(2, 3))),
            AlgebraicReal::sqrt3(),
        ]
    })
}

fn leading_digit(r: &AlgebraicReal) -> Result<Digit, ExpansionError> {
    match r.sign()? {
        0 => return Err(ExpansionError::ParabolicPoint),
        s if s < 0 => return Err(ExpansionError::OutOfDomain),
        _ => {}
    }
    for (i, b) in digit_boundaries().iter().enumerate() {
        match r.compare(b)? {
            std::cmp::Ordering::Less => return Ok(Digit::new(i as u8 + 1).unwrap()),
            std::cmp::Ordering::Equal => return Err(ExpansionError::ParabolicPoint),
            std::cmp::Ordering::Greater => {}
        }
    }
    Ok(Digit::new(5).unwrap())
}

fn step_residual(r: &AlgebraicReal, d: Digit) -> Result<AlgebraicReal, ExpansionError> {
    let inv = digit_matrix(d).inverse_unimodular();
    match inv.apply(&ExtReal::Finite(r.clone())) {
        ExtReal::Finite(x) => Ok(x),
        ExtReal::PosInfinity => Err(ExpansionError::ParabolicPoint),
    }
}

/// The first `n` digits of the expansion of `x`.
pub fn expand(x: &AlgebraicReal, n: usize) -> Result<Word, ExpansionError> {
    let mut r = x.clone();
    let mut digits = Word::empty();
    for _ in 0..n {
        let d = leading_digit(&r)?;
        digits.push(d);
        r = step_residual(&r, d)?;
    }
    Ok(digits)
}

/// Expands `x` until a residual exactly repeats, returning the recovered
/// eventually periodic tail.  The step budget is ten times the bit height of
/// the input's minimal polynomial.
pub fn expand_to_tail(x: &AlgebraicReal) -> Result<Tail, ExpansionError> {
    let height = x
        .minimal_polynomial()
        .map(|cs| cs.iter().map(|c| c.bits()).max().unwrap_or(1))
        .unwrap_or(6);
    let cap = (10 * height as usize).max(20);
    let mut residuals: Vec<AlgebraicReal> = vec![x.clone()];
    let mut digits: Vec<Digit> = Vec::new();
    for _ in 0..cap {
        let r = residuals.last().unwrap().clone();
        let d = leading_digit(&r)?;
        digits.push(d);
        let next = step_residual(&r, d)?;
        for (j, old) in residuals.iter().enumerate() {
            if next.compare(old)? == std::cmp::Ordering::Equal {
                let pre = Word::new(digits[..j].to_vec());
                let per = Word::new(digits[j..].to_vec());
                return Ok(Tail::new(pre, per).expect("period nonempty"));
            }
        }
        residuals.push(next);
    }
    Err(ExpansionError::NoPeriodFound)
}

/// Checks the duality identity [d₁^∨, d₂^∨, …]·[d₁, d₂, …] = 1 exactly.
pub fn identity_check_vee(t: &Tail) -> Result<bool, ExpansionError> {
    let v = value_tail(t)?;
    let w = value_tail(&t.vee())?;
    let prod = v * w;
    Ok((prod - AlgebraicReal::one()).is_zero()?)
}

/// Möbius action of a matrix on the extended positive axis.
pub fn mobius(m: &DigitMatrix, x: &ExtReal) -> ExtReal {
    m.apply(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn ar_sqrt(n: i64) -> AlgebraicReal {
        AlgebraicReal::from_int(n).sqrt().unwrap()
    }

    fn assert_exact_eq(x: &AlgebraicReal, y: &AlgebraicReal) {
        assert_eq!(
            x.compare(y).unwrap(),
            std::cmp::Ordering::Equal,
            "expected {} = {}",
            x.decimal(20),
            y.decimal(20)
        );
    }

    #[test]
    fn digit_matrix_constants() {
        let n5 = digit_matrix(Digit::new(5).unwrap());
        assert_eq!(n5.a, QS3::one());
        assert_eq!(n5.b, QS3::sqrt3());
        assert_eq!(n5.c, QS3::zero());
        let m = matrix_of(w("43").digits());
        assert_eq!(m.a, QS3::new(rat_i(0), rat_i(4)));
        assert_eq!(m.b, QS3::from_int(7));
        assert_eq!(m.c, QS3::from_int(5));
        assert_eq!(m.d, QS3::new(rat_i(0), rat_i(3)));
        assert_eq!(matrix_of(&[]), DigitMatrix::identity());
    }

    #[test]
    fn products_are_unimodular_nonnegative() {
        let mut state = 0x9E3779B97F4A7C15u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as usize
        };
        for _ in 0..50 {
            let len = 1 + next() % 7;
            let word = Word::new(
                (0..len)
                    .map(|_| Digit::new(1 + (next() % 5) as u8).unwrap())
                    .collect(),
            );
            let m = matrix_of(word.digits());
            assert_eq!(m.det(), QS3::one(), "det ≠ 1 for {word}");
            for e in [&m.a, &m.b, &m.c, &m.d] {
                assert!(e.sign() >= 0, "negative entry for {word}");
            }
        }
    }

    #[test]
    fn periodic_values() {
        let v43 = value_periodic(&w("43")).unwrap();
        let expect = (AlgebraicReal::sqrt3() + ar_sqrt(143))
            .checked_div(&AlgebraicReal::from_int(10))
            .unwrap();
        assert_exact_eq(&v43, &expect);

        let v2 = value_periodic(&w("2")).unwrap();
        let expect = AlgebraicReal::one().checked_div(&ar_sqrt(2)).unwrap();
        assert_exact_eq(&v2, &expect);

        let v4 = value_periodic(&w("4")).unwrap();
        assert_exact_eq(&v4, &ar_sqrt(2));

        let v3 = value_periodic(&w("3")).unwrap();
        assert_exact_eq(&v3, &AlgebraicReal::one());

        for parabolic in ["5", "1", "55"] {
            assert!(matches!(
                value_periodic(&w(parabolic)),
                Err(ExpansionError::ParabolicWord)
            ));
        }
    }

    #[test]
    fn tail_values() {
        let t: Tail = "5(13)*".parse().unwrap();
        let v = value_tail(&t).unwrap();
        let expect = (ar_sqrt(5) + AlgebraicReal::from_int(5))
            .checked_div(&(AlgebraicReal::from_int(2) * AlgebraicReal::sqrt3()))
            .unwrap();
        assert_exact_eq(&v, &expect);

        let t: Tail = "(31)*".parse().unwrap();
        let v = value_tail(&t).unwrap();
        let expect = (ar_sqrt(5) + AlgebraicReal::one())
            .checked_div(&(AlgebraicReal::from_int(2) * AlgebraicReal::sqrt3()))
            .unwrap();
        assert_exact_eq(&v, &expect);

        let t: Tail = "4(2)*".parse().unwrap();
        let v = value_tail(&t).unwrap();
        let half = AlgebraicReal::one().checked_div(&ar_sqrt(2)).unwrap();
        let expect = (AlgebraicReal::sqrt3() * &half + AlgebraicReal::from_int(2))
            .checked_div(&(half + AlgebraicReal::sqrt3()))
            .unwrap();
        assert_exact_eq(&v, &expect);
    }

    #[test]
    fn fixed_point_property() {
        let mut state = 0xDEADBEEF12345678u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as usize
        };
        let mut checked = 0;
        while checked < 25 {
            let len = 1 + next() % 6;
            let word = Word::new(
                (0..len)
                    .map(|_| Digit::new(1 + (next() % 5) as u8).unwrap())
                    .collect(),
            );
            let Ok(v) = value_periodic(&word) else { continue };
            let m = matrix_of(word.digits());
            let image = m.apply(&ExtReal::Finite(v.clone()));
            let image = image.finite().expect("hyperbolic fixed point is finite");
            assert_exact_eq(image, &v);
            // The fixed point lies inside the word's cylinder.
            let cyl = cylinder(&word);
            let lo = match &cyl.low {
                ExtReal::Finite(x) => x.compare(&v).unwrap(),
                ExtReal::PosInfinity => unreachable!(),
            };
            assert_eq!(lo, std::cmp::Ordering::Less, "cylinder low for {word}");
            if let ExtReal::Finite(hi) = &cyl.high {
                assert_eq!(hi.compare(&v).unwrap(), std::cmp::Ordering::Greater);
            }
            checked += 1;
        }
    }

    #[test]
    fn cylinders() {
        let c1 = cylinder(&w("1"));
        assert!(matches!(&c1.low, ExtReal::Finite(x) if x.is_zero().unwrap()));
        let third = AlgebraicReal::from_qs3(QS3::new(rat_i(0), rat(1, 3)));
        assert_exact_eq(c1.high.finite().unwrap(), &third);

        let c5 = cylinder(&w("5"));
        assert_exact_eq(c5.low.finite().unwrap(), &AlgebraicReal::sqrt3());
        assert!(c5.high.is_infinite());

        let ce = cylinder(&Word::empty());
        assert!(matches!(&ce.low, ExtReal::Finite(x) if x.is_zero().unwrap()));
        assert!(ce.high.is_infinite());

        // Nesting and length-2 ordering.
        let outer = cylinder(&w("4"));
        let inner = cylinder(&w("43"));
        assert_eq!(
            outer.low.compare(&inner.low).unwrap(),
            std::cmp::Ordering::Less
        );
        assert_eq!(
            outer.high.compare(&inner.high).unwrap(),
            std::cmp::Ordering::Greater
        );
        let mut prev: Option<ExtReal> = None;
        for a in 1..=5u8 {
            for b in 1..=5u8 {
                let word = Word::new(vec![
                    Digit::new(a).unwrap(),
                    Digit::new(b).unwrap(),
                ]);
                let cyl = cylinder(&word);
                assert_eq!(
                    cyl.low.compare(&cyl.high).unwrap(),
                    std::cmp::Ordering::Less
                );
                if let Some(p) = prev {
                    assert_ne!(
                        p.compare(&cyl.low).unwrap(),
                        std::cmp::Ordering::Greater,
                        "cylinders out of order at {word}"
                    );
                }
                prev = Some(cyl.high);
            }
        }
    }

    #[test]
    fn expansion_digits() {
        assert_eq!(expand(&ar_sqrt(2), 6).unwrap(), w("444444"));
        let x = (AlgebraicReal::sqrt3() + ar_sqrt(143))
            .checked_div(&AlgebraicReal::from_int(10))
            .unwrap();
        assert_eq!(expand(&x, 6).unwrap(), w("434343"));
        let y = AlgebraicReal::sqrt3() + ar_sqrt(2);
        assert_eq!(expand(&y, 3).unwrap(), w("544"));
        assert_eq!(expand(&AlgebraicReal::one(), 4).unwrap(), w("3333"));
        assert!(matches!(
            expand(&AlgebraicReal::sqrt3(), 2),
            Err(ExpansionError::ParabolicPoint)
        ));
        assert!(matches!(
            expand(&(AlgebraicReal::zero() - AlgebraicReal::one()), 1),
            Err(ExpansionError::OutOfDomain)
        ));
    }

    #[test]
    fn expansion_recovers_tails() {
        for text in ["(43)*", "5(13)*", "(4)*", "35(42)*", "(31)*", "2(243)*"] {
            let t: Tail = text.parse().unwrap();
            let v = value_tail(&t).unwrap();
            let back = expand_to_tail(&v).unwrap();
            assert_eq!(back, t, "round trip failed for {text}");
        }
    }

    #[test]
    fn vee_identity() {
        for text in ["(4)*", "(43)*", "5(13)*", "24(315)*"] {
            let t: Tail = text.parse().unwrap();
            assert!(identity_check_vee(&t).unwrap(), "failed for {text}");
        }
    }

    #[test]
    fn shift_by_five_translates() {
        for text in ["(43)*", "(2)*", "13(24)*"] {
            let t: Tail = text.parse().unwrap();
            let five = Word::new(vec![Digit::new(5).unwrap()]);
            let shifted = value_tail(&t.prepend(&five)).unwrap();
            let expect = AlgebraicReal::sqrt3() + value_tail(&t).unwrap();
            assert_exact_eq(&shifted, &expect);
        }
    }
}
