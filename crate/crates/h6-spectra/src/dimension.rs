//! Positive Hausdorff dimension just above the first accumulation point.
//!
//! Below `4/√3` the Lagrange spectrum is a discrete set, yet for every
//! `ε > 0` the window `[0, 4/√3 + ε)` already contains a set of spectrum
//! values of positive Hausdorff dimension.  The witness is a family of
//! tails built from two blocks `u = (42)^{m+1}3` and `w = (42)^m 3`: the
//! values `[P]` of all concatenations `P = w^{m₁}u^{n₁}w^{m₂}u^{n₂}⋯` with
//! exponents in `{1, 2}` form an invariant set of an iterated function
//! system whose four maps prepend `w²u`, `w²u²`, `wu`, `wu²`.  A Moran
//! counting argument bounds the dimension of that set from below by the
//! root `s` of `ΣCᵢˢ = 1`, where `Cᵢ` is a certified contraction ratio of
//! the `i`-th map, and a section analysis turns each `[P]` into the
//! Lagrange number `[(w*)^∞] + [u³wP]` of an explicit bi-infinite
//! sequence, all of which land below `4/√3 + ε`.
//!
//! Everything is exact except the Moran root itself, which is bracketed by
//! bisection with certified interval `ln`/`exp`; the returned lower end of
//! the bracket is a true lower bound for the dimension.

use crate::exact::dyadic::{Dyadic, DyadicInterval};
use crate::exact::elementary::pow_interval;
use crate::exact::qs3::{rat, rat_i, Rational};
use crate::exact::{AlgebraicReal, ExactError, QS3};
use crate::expansion::{cylinder, matrix_of, value_periodic, value_tail, DigitMatrix, ExpansionError};
use crate::words::{Tail, Word, WordsError};
use std::cmp::Ordering;

/// Errors from the dimension construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DimensionError {
    /// The block index m must be at least 1.
    InvalidBlock(String),
    /// An exponent pattern outside {1,2} or empty.
    InvalidPattern(String),
    /// ε must be positive.
    InvalidEps,
    /// The Moran bisection could not certify a comparison.
    Undecided(String),
    Exact(ExactError),
    Expansion(ExpansionError),
    Words(WordsError),
}

impl std::fmt::Display for DimensionError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DimensionError::InvalidBlock(m) => write!(f, "invalid block system: {m}"),
            DimensionError::InvalidPattern(m) => write!(f, "invalid exponent pattern: {m}"),
            DimensionError::InvalidEps => write!(f, "epsilon must be positive"),
            DimensionError::Undecided(m) => write!(f, "bisection could not certify: {m}"),
            DimensionError::Exact(e) => write!(f, "{e}"),
            DimensionError::Expansion(e) => write!(f, "{e}"),
            DimensionError::Words(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for DimensionError {}

impl From<ExactError> for DimensionError {
    fn from(e: ExactError) -> Self {
        DimensionError::Exact(e)
    }
}

impl From<ExpansionError> for DimensionError {
    fn from(e: ExpansionError) -> Self {
        DimensionError::Expansion(e)
    }
}

impl From<WordsError> for DimensionError {
    fn from(e: WordsError) -> Self {
        DimensionError::Words(e)
    }
}

fn word(s: &str) -> Word {
    s.parse().expect("fixed digit string")
}

/// The block `u = (42)^{m+1} 3`.
fn block_u(m: usize) -> Word {
    word("42").repeat(m + 1).concat(&word("3"))
}

/// The block `w = (42)^m 3`.
fn block_w(m: usize) -> Word {
    word("42").repeat(m).concat(&word("3"))
}

/// The exact first accumulation point `4/√3`.
pub fn four_over_sqrt3() -> AlgebraicReal {
    AlgebraicReal::from_qs3(QS3::new(rat_i(0), rat(4, 3)))
}

/// The right endpoint of the cylinder of `v`: the value `N_v · ∞`,
/// a strict upper bound for `[vP]` over every continuation `P`.
fn cylinder_sup(v: &Word) -> AlgebraicReal {
    cylinder(v)
        .high
        .finite()
        .expect("nonempty cylinder endpoint is finite")
        .clone()
}

/// The minimal `m ≥ 1` for which every value `[3(24)^m P] + [(42)^{m+1} Q]`
/// stays below `4/√3 + ε`, certified against the cylinder right endpoints
/// (the suprema over unconstrained continuations, themselves unattained).
pub fn choose_m(eps: &Rational) -> Result<usize, DimensionError> {
    if eps <= &rat_i(0) {
        return Err(DimensionError::InvalidEps);
    }
    let target = four_over_sqrt3() + AlgebraicReal::from_rational(eps.clone());
    let mut m = 1usize;
    loop {
        let left = cylinder_sup(&word("3").concat(&word("24").repeat(m)));
        let right = cylinder_sup(&word("42").repeat(m + 1));
        if (left + right).compare(&target)? == Ordering::Less {
            return Ok(m);
        }
        m += 1;
    }
}

/// One of the four IFS maps: the tail-prepending word and its matrix.
#[derive(Debug, Clone)]
pub struct BlockMap {
    pub word: Word,
    pub matrix: DigitMatrix,
}

impl BlockMap {
    /// The Möbius action of the map on a value.
    pub fn apply(&self, x: &AlgebraicReal) -> AlgebraicReal {
        let num = AlgebraicReal::from_qs3(self.matrix.a.clone()) * x.clone()
            + AlgebraicReal::from_qs3(self.matrix.b.clone());
        let den = AlgebraicReal::from_qs3(self.matrix.c.clone()) * x.clone()
            + AlgebraicReal::from_qs3(self.matrix.d.clone());
        num / den
    }
}

/// The block system for a given `m`: the two blocks, the extreme values
/// `α = [(w²u)^∞]` and `β = [(wu²)^∞]` of the invariant set, and the four
/// maps prepending `w²u`, `w²u²`, `wu`, `wu²`.
#[derive(Debug, Clone)]
pub struct BlockSystem {
    pub m: usize,
    pub u: Word,
    pub w: Word,
    pub alpha: AlgebraicReal,
    pub beta: AlgebraicReal,
    pub maps: [BlockMap; 4],
}

impl BlockSystem {
    pub fn new(m: usize) -> Result<BlockSystem, DimensionError> {
        if m == 0 {
            return Err(DimensionError::InvalidBlock("m must be at least 1".into()));
        }
        let u = block_u(m);
        let w = block_w(m);
        let alpha = value_periodic(&w.repeat(2).concat(&u))?;
        let beta = value_periodic(&w.concat(&u.repeat(2)))?;
        assert_eq!(alpha.sign()?, 1, "alpha must be positive");
        assert_eq!(alpha.compare(&beta)?, Ordering::Less, "alpha < beta");
        let map_words = [
            w.repeat(2).concat(&u),
            w.repeat(2).concat(&u.repeat(2)),
            w.concat(&u),
            w.concat(&u.repeat(2)),
        ];
        let maps = map_words.map(|v| BlockMap {
            matrix: matrix_of(v.digits()),
            word: v,
        });
        for map in &maps {
            for entry in [&map.matrix.a, &map.matrix.b, &map.matrix.c, &map.matrix.d] {
                assert_eq!(entry.sign(), 1, "map matrix entries must be positive");
            }
        }
        Ok(BlockSystem { m, u, w, alpha, beta, maps })
    }
}

/// A periodic exponent pattern: pairs `(mᵢ, nᵢ) ∈ {1,2}²` describing
/// `P = w^{m₁}u^{n₁}w^{m₂}u^{n₂}⋯`, repeated forever.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EPattern {
    pairs: Vec<(u32, u32)>,
}

impl EPattern {
    pub fn new(pairs: Vec<(u32, u32)>) -> Result<EPattern, DimensionError> {
        if pairs.is_empty() {
            return Err(DimensionError::InvalidPattern("empty pattern".into()));
        }
        for &(mi, ni) in &pairs {
            if !(1..=2).contains(&mi) || !(1..=2).contains(&ni) {
                return Err(DimensionError::InvalidPattern(format!(
                    "exponent pair ({mi}, {ni}) outside {{1,2}}"
                )));
            }
        }
        Ok(EPattern { pairs })
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    /// One period of `P` as a digit word.
    pub fn period_word(&self, sys: &BlockSystem) -> Word {
        let mut out = Word::empty();
        for &(mi, ni) in &self.pairs {
            out = out
                .concat(&sys.w.repeat(mi as usize))
                .concat(&sys.u.repeat(ni as usize));
        }
        out
    }
}

/// The certified contraction ratios `Cᵢ = 1/(cᵢβ + dᵢ)²` of the four maps.
pub fn ifs_ratios(sys: &BlockSystem) -> Result<[AlgebraicReal; 4], DimensionError> {
    let one = AlgebraicReal::one();
    let mut out: Vec<AlgebraicReal> = Vec::with_capacity(4);
    for map in &sys.maps {
        let denom = AlgebraicReal::from_qs3(map.matrix.c.clone()) * sys.beta.clone()
            + AlgebraicReal::from_qs3(map.matrix.d.clone());
        let c = one.clone().checked_div(&(denom.clone() * denom))?;
        assert_eq!(c.sign()?, 1, "ratio must be positive");
        assert_eq!(c.compare(&one)?, Ordering::Less, "ratio must contract");
        out.push(c);
    }
    Ok(out.try_into().expect("four ratios"))
}

/// A certified bracket of the Moran root: the sum `ΣCᵢˢ` is ≥ 1 at `lower`
/// and ≤ 1 at `upper`, so the true root lies in `[lower, upper]` and
/// `lower` is a valid Hausdorff dimension lower bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoranRoot {
    pub lower: Rational,
    pub upper: Rational,
}

impl MoranRoot {
    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }
}

/// Certified comparison of `ΣCᵢˢ` with 1 at a dyadic `s`, or `None` when
/// the enclosure still straddles 1 at this working precision.
fn moran_cmp(ratios: &[AlgebraicReal; 4], s: &Rational, prec: u32) -> Option<Ordering> {
    let s_iv = DyadicInterval::from_rational(s, prec);
    let mut sum = DyadicInterval::point(Dyadic::zero());
    for c in ratios {
        let base = c.approx(prec);
        if base.lo.sign() <= 0 {
            return None;
        }
        sum = sum.add(&pow_interval(&base, &s_iv, prec), prec);
    }
    let one = Dyadic::one();
    if sum.lo.cmp_dyadic(&one) == Ordering::Greater {
        Some(Ordering::Greater)
    } else if sum.hi.cmp_dyadic(&one) == Ordering::Less {
        Some(Ordering::Less)
    } else {
        None
    }
}

/// Certified comparison with escalating precision.
fn moran_side(ratios: &[AlgebraicReal; 4], s: &Rational) -> Option<Ordering> {
    for prec in [64u32, 128, 256, 512, 1024] {
        if let Some(o) = moran_cmp(ratios, s, prec) {
            return Some(o);
        }
    }
    None
}

/// The exact sum `ΣCᵢˢ` at s = 1 or s = 1/2 (`half = true`); used to catch
/// roots that land exactly on those probes, where interval bisection alone
/// could not certify a side.
fn exact_sum(ratios: &[AlgebraicReal; 4], half: bool) -> Result<AlgebraicReal, DimensionError> {
    let mut sum = AlgebraicReal::zero();
    for c in ratios {
        let term = if half { c.sqrt()? } else { c.clone() };
        sum = sum + term;
    }
    Ok(sum)
}

/// The root of `C₁ˢ + C₂ˢ + C₃ˢ + C₄ˢ = 1`, the Moran similarity dimension
/// of the block IFS.  The map `s ↦ ΣCᵢˢ` is strictly decreasing, so the
/// root is unique; it is bracketed by bisection to width `10⁻⁸`, each side
/// move certified by interval `ln`/`exp` with outward rounding.
pub fn solve_s(ratios: &[AlgebraicReal; 4]) -> Result<MoranRoot, DimensionError> {
    let one = AlgebraicReal::one();
    for c in ratios {
        if c.sign()? != 1 || c.compare(&one)? != Ordering::Less {
            return Err(DimensionError::InvalidBlock(
                "ratios must lie strictly between 0 and 1".into(),
            ));
        }
    }
    // Exact roots at the two dyadic probes a test is entitled to hit.
    let sum_one = exact_sum(ratios, false)?;
    if sum_one.compare(&one)? == Ordering::Equal {
        return Ok(MoranRoot { lower: rat_i(1), upper: rat_i(1) });
    }
    if exact_sum(ratios, true)?.compare(&one)? == Ordering::Equal {
        return Ok(MoranRoot { lower: rat(1, 2), upper: rat(1, 2) });
    }
    // Bracket: ΣCᵢ⁰ = 4 > 1, and the sum dies off as s grows.
    let mut lo = rat_i(0);
    let mut hi = rat_i(1);
    if sum_one.compare(&one)? == Ordering::Greater {
        loop {
            hi = &hi * &rat_i(2);
            match moran_side(ratios, &hi) {
                Some(Ordering::Less) => break,
                Some(_) => continue,
                None => {
                    return Err(DimensionError::Undecided(format!(
                        "sum straddles 1 at s = {hi}"
                    )))
                }
            }
        }
    }
    let width_target = rat(1, 100_000_000);
    let probes = [rat(1, 2), rat(5, 8), rat(3, 8)];
    while &(&hi - &lo) > &width_target || lo == rat_i(0) {
        let gap = &hi - &lo;
        let mut moved = false;
        for frac in &probes {
            let mid = &lo + &(&gap * frac);
            match moran_side(ratios, &mid) {
                Some(Ordering::Greater) => {
                    lo = mid;
                    moved = true;
                    break;
                }
                Some(Ordering::Less) => {
                    hi = mid;
                    moved = true;
                    break;
                }
                Some(Ordering::Equal) => unreachable!("interval compare is strict"),
                None => continue,
            }
        }
        if !moved {
            return Err(DimensionError::Undecided(format!(
                "no probe in ({lo}, {hi}) could be certified"
            )));
        }
    }
    Ok(MoranRoot { lower: lo, upper: hi })
}

/// The Lagrange number of the block sequence `A_P`: exactly
/// `[(w*)^∞] + [u³wP]`, with `P` the periodic tail described by `pat`.
/// The result is certified below the cylinder bound
/// `N_{3(24)^m}·∞ + N_{(42)^{m+1}}·∞`, hence below `4/√3 + ε` whenever `m`
/// came from [`choose_m`].
pub fn construction_value(
    sys: &BlockSystem,
    pat: &EPattern,
) -> Result<AlgebraicReal, DimensionError> {
    let left = value_periodic(&sys.w.star())?;
    let prefix = sys.u.repeat(3).concat(&sys.w);
    let tail = Tail::new(prefix, pat.period_word(sys))?;
    let right = value_tail(&tail)?;
    let left_bound = cylinder_sup(&word("3").concat(&word("24").repeat(sys.m)));
    let right_bound = cylinder_sup(&word("42").repeat(sys.m + 1));
    assert_eq!(
        left.compare(&left_bound)?,
        Ordering::Less,
        "left part must stay below its cylinder endpoint"
    );
    assert_eq!(
        right.compare(&right_bound)?,
        Ordering::Less,
        "right part must stay below its cylinder endpoint"
    );
    Ok(left + right)
}

/// A dimension lower bound, with the data that produced it.
#[derive(Debug, Clone)]
pub struct DimensionBound {
    pub m: usize,
    pub ratios: [AlgebraicReal; 4],
    pub root: MoranRoot,
}

/// Composes the whole construction: pick `m` for `ε`, build the block
/// system and its ratios, and solve the Moran equation.  The returned
/// `root.lower` is a certified positive lower bound for the Hausdorff
/// dimension of the Lagrange spectrum inside `[0, 4/√3 + ε)`.
pub fn dimension_lower_bound(eps: &Rational) -> Result<DimensionBound, DimensionError> {
    let m = choose_m(eps)?;
    let sys = BlockSystem::new(m)?;
    let ratios = ifs_ratios(&sys)?;
    let root = solve_s(&ratios)?;
    assert!(root.lower > rat_i(0), "root bracket must certify s > 0");
    Ok(DimensionBound { m, ratios, root })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Digit;

    fn lcg(state: &mut u64) -> u64 {
        *state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        *state >> 33
    }

    fn random_word(state: &mut u64, len: usize, alphabet: &[u8]) -> Word {
        let digits: Vec<Digit> = (0..len)
            .map(|_| {
                let d = alphabet[(lcg(state) as usize) % alphabet.len()];
                Digit::new(d).unwrap()
            })
            .collect();
        Word::new(digits)
    }

    #[test]
    fn choose_m_examples() {
        assert_eq!(choose_m(&rat(1, 5)).unwrap(), 1);
        // Decreasing ε never decreases m.
        let grid = [rat(1, 2), rat(1, 5), rat(1, 10), rat(1, 20), rat(1, 50)];
        let ms: Vec<usize> = grid.iter().map(|e| choose_m(e).unwrap()).collect();
        for pair in ms.windows(2) {
            assert!(pair[0] <= pair[1], "m must be nondecreasing as eps shrinks");
        }
        assert!(choose_m(&rat(0, 1)).is_err());
        // Independent interval check of the defining inequality at m = 1.
        let sum = cylinder_sup(&word("324")) + cylinder_sup(&word("4242"));
        let target = four_over_sqrt3() + AlgebraicReal::from_rational(rat(1, 5));
        let diff = (target - sum).approx(60);
        assert!(diff.lo.sign() > 0, "cylinder bound must clear the target");
    }

    #[test]
    fn accumulation_point_identity() {
        // [3(24)^∞] + [(42)^∞] = 4/√3 exactly.
        let a = value_tail(&Tail::new(word("3"), word("24")).unwrap()).unwrap();
        let b = value_periodic(&word("42")).unwrap();
        let sum = a + b;
        assert_eq!(sum.compare(&four_over_sqrt3()).unwrap(), Ordering::Equal);
    }

    #[test]
    fn block_system_shape() {
        let sys = BlockSystem::new(1).unwrap();
        assert_eq!(sys.u.to_string(), "42423");
        assert_eq!(sys.w.to_string(), "423");
        assert_eq!(sys.maps[0].word.to_string(), "42342342423");
        assert_eq!(sys.maps[3].word.to_string(), "4234242342423");
        assert_eq!(sys.alpha.compare(&sys.beta).unwrap(), Ordering::Less);
        assert!(BlockSystem::new(0).is_err());
    }

    #[test]
    fn ratios_are_contractions() {
        let sys = BlockSystem::new(1).unwrap();
        let ratios = ifs_ratios(&sys).unwrap();
        let one = AlgebraicReal::one();
        for c in &ratios {
            assert_eq!(c.sign().unwrap(), 1);
            assert_eq!(c.compare(&one).unwrap(), Ordering::Less);
        }
        // |f(x) − f(y)| ≥ C|x − y| and < |x−y|/(α+1)² on sample pairs.
        let mid = (sys.alpha.clone() + sys.beta.clone()) / AlgebraicReal::from_int(2);
        let upper_den = {
            let t = sys.alpha.clone() + one.clone();
            t.clone() * t
        };
        let pairs = [
            (sys.alpha.clone(), sys.beta.clone()),
            (sys.alpha.clone(), mid.clone()),
            (mid, sys.beta.clone()),
        ];
        for (i, map) in sys.maps.iter().enumerate() {
            for (x, y) in &pairs {
                let gap = y.clone() - x.clone();
                let image_gap = map.apply(y) - map.apply(x);
                let lower = ratios[i].clone() * gap.clone();
                let upper = gap.checked_div(&upper_den).unwrap();
                assert_ne!(
                    image_gap.compare(&lower).unwrap(),
                    Ordering::Less,
                    "map {i} contracts harder than its certified ratio"
                );
                assert_eq!(
                    image_gap.compare(&upper).unwrap(),
                    Ordering::Less,
                    "map {i} must contract strictly"
                );
            }
        }
    }

    #[test]
    fn images_fixed_and_disjoint() {
        let sys = BlockSystem::new(1).unwrap();
        // f_i([α, β]) ⊂ [α, β], endpoints exact.
        let mut intervals: Vec<(AlgebraicReal, AlgebraicReal)> = Vec::new();
        for map in &sys.maps {
            let lo = map.apply(&sys.alpha);
            let hi = map.apply(&sys.beta);
            assert_ne!(lo.compare(&sys.alpha).unwrap(), Ordering::Less);
            assert_ne!(sys.beta.compare(&hi).unwrap(), Ordering::Less);
            intervals.push((lo, hi));
        }
        // The four images are pairwise disjoint: in map order f₁ < f₂ < f₃ < f₄.
        for pair in intervals.windows(2) {
            let (_, hi) = &pair[0];
            let (lo, _) = &pair[1];
            assert_eq!(hi.compare(lo).unwrap(), Ordering::Less, "images must not touch");
        }
    }

    #[test]
    fn moran_special_cases() {
        let quarter = AlgebraicReal::from_rational(rat(1, 4));
        let ratios = [quarter.clone(), quarter.clone(), quarter.clone(), quarter];
        let root = solve_s(&ratios).unwrap();
        assert_eq!(root.lower, rat_i(1));
        assert_eq!(root.upper, rat_i(1));
        let sixteenth = AlgebraicReal::from_rational(rat(1, 16));
        let ratios = [
            sixteenth.clone(),
            sixteenth.clone(),
            sixteenth.clone(),
            sixteenth,
        ];
        let root = solve_s(&ratios).unwrap();
        assert_eq!(root.lower, rat(1, 2));
        assert_eq!(root.upper, rat(1, 2));
    }

    #[test]
    fn moran_root_for_m1() {
        let sys = BlockSystem::new(1).unwrap();
        let ratios = ifs_ratios(&sys).unwrap();
        let root = solve_s(&ratios).unwrap();
        assert!(root.lower > rat_i(0));
        assert!(root.upper < rat_i(1));
        assert!(root.width() <= rat(1, 100_000_000));
        // Residual: ΣC^s ≥ 1 at the lower end and ≤ 1 at the upper end.
        assert_eq!(moran_side(&ratios, &root.lower), Some(Ordering::Greater));
        assert_eq!(moran_side(&ratios, &root.upper), Some(Ordering::Less));
    }

    #[test]
    fn block_dominance() {
        let sys = BlockSystem::new(1).unwrap();
        let mut state = 0x6a09_e667_f3bc_c908u64;
        let mut checked = 0;
        while checked < 20 {
            let q = random_word(&mut state, 5, &[1, 2, 3, 4, 5]);
            let r = random_word(&mut state, 5, &[1, 2, 3, 4, 5]);
            let uq = match Tail::new(sys.u.clone(), q).and_then(|t| Ok(value_tail(&t))) {
                Ok(Ok(v)) => v,
                _ => continue,
            };
            let wr = match Tail::new(sys.w.clone(), r).and_then(|t| Ok(value_tail(&t))) {
                Ok(Ok(v)) => v,
                _ => continue,
            };
            assert_eq!(
                uq.compare(&wr).unwrap(),
                Ordering::Greater,
                "[uQ] must dominate [wR]"
            );
            checked += 1;
        }
    }

    #[test]
    fn construction_values() {
        let sys = BlockSystem::new(1).unwrap();
        let all_one = EPattern::new(vec![(1, 1)]).unwrap();
        let all_two = EPattern::new(vec![(2, 2)]).unwrap();
        let v1 = construction_value(&sys, &all_one).unwrap();
        let v2 = construction_value(&sys, &all_two).unwrap();
        assert_ne!(v1.compare(&v2).unwrap(), Ordering::Equal);
        let bound = four_over_sqrt3() + AlgebraicReal::from_rational(rat(1, 5));
        assert_eq!(v1.compare(&bound).unwrap(), Ordering::Less);
        assert_eq!(v2.compare(&bound).unwrap(), Ordering::Less);
        assert!(EPattern::new(vec![(0, 1)]).is_err());
        assert!(EPattern::new(vec![(1, 3)]).is_err());
        assert!(EPattern::new(vec![]).is_err());
        // Sandwich: α ≤ [P] ≤ β for pattern-generated periodic P.
        for pat in [&all_one, &all_two, &EPattern::new(vec![(1, 2), (2, 1)]).unwrap()] {
            let p = value_periodic(&pat.period_word(&sys)).unwrap();
            assert_ne!(p.compare(&sys.alpha).unwrap(), Ordering::Less);
            assert_ne!(sys.beta.compare(&p).unwrap(), Ordering::Less);
        }
    }

    #[test]
    fn construction_value_matches_numeric_limsup() {
        let sys = BlockSystem::new(1).unwrap();
        let pat = EPattern::new(vec![(1, 2), (2, 1)]).unwrap();
        let exact = construction_value(&sys, &pat).unwrap();
        // Assemble a long truncation of A_P = ∞w u³wv₁ w²u³wv₂ w³u³wv₃ ⋯
        let mut digits: Vec<u8> = Vec::new();
        let push_word = |digits: &mut Vec<u8>, v: &Word| {
            for d in v.digits() {
                digits.push(d.value());
            }
        };
        for _ in 0..30 {
            push_word(&mut digits, &sys.w);
        }
        let pairs = pat.pairs();
        let mut v_k = Word::empty();
        for k in 1..=7usize {
            let (mi, ni) = pairs[(k - 1) % pairs.len()];
            v_k = v_k
                .concat(&sys.w.repeat(mi as usize))
                .concat(&sys.u.repeat(ni as usize));
            if k > 1 {
                push_word(&mut digits, &sys.w.repeat(k));
            }
            push_word(&mut digits, &sys.u.repeat(3));
            push_word(&mut digits, &sys.w);
            push_word(&mut digits, &v_k);
        }
        // Float section values: fold tail values in from both ends.
        let s3 = 3f64.sqrt();
        let mats = [
            [1.0, 0.0, s3, 1.0],
            [s3, 1.0, 2.0, s3],
            [2.0, s3, s3, 2.0],
            [s3, 2.0, 1.0, s3],
            [1.0, s3, 0.0, 1.0],
        ];
        let apply = |d: u8, x: f64| {
            let m = &mats[(d - 1) as usize];
            (m[0] * x + m[1]) / (m[2] * x + m[3])
        };
        let n = digits.len();
        let mut left = vec![0.0; n + 1];
        let mut right = vec![0.0; n + 1];
        left[0] = 1.0;
        for i in 0..n {
            left[i + 1] = apply(digits[i], left[i]);
        }
        right[n] = 1.0;
        for i in (0..n).rev() {
            right[i] = apply(digits[i], right[i + 1]);
        }
        let mut sup = f64::NEG_INFINITY;
        for cut in 60..n - 60 {
            sup = sup.max(left[cut] + right[cut]);
        }
        let err = (sup - exact.to_f64()).abs();
        assert!(err <= 1e-6, "numeric limsup off by {err}");
    }

    #[test]
    fn full_bound_for_eps() {
        let bound = dimension_lower_bound(&rat(1, 5)).unwrap();
        assert_eq!(bound.m, 1);
        assert!(bound.root.lower > rat_i(0));
        assert!(bound.root.upper < rat_i(1));
        // A smaller ε still certifies positive dimension, with a larger m.
        let finer = dimension_lower_bound(&rat(1, 20)).unwrap();
        assert!(finer.m >= bound.m);
        assert!(finer.root.lower > rat_i(0));
    }
}
