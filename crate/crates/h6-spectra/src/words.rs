//! Digits, words, one-sided tails, and bi-infinite sequences over {1,…,5},
//! together with the two involutions of the theory and the sequence parser.
//!
//! Two symmetries act on everything here: `star` reverses reading order and
//! `vee` replaces each digit d by 6 − d.  They commute, and both preserve
//! Markoff numbers, so downstream code works with the 4-element orbit
//! {A, A*, A^∨, (A*)^∨}.
//!
//! All types carry a *canonical form*:
//!
//! * a [`Tail`] stores a primitive period and the shortest possible
//!   preperiod (digits that belong to the periodic part are absorbed, with
//!   the period rotated to compensate);
//! * a [`BiSeq`] identifies presentations that denote the same bi-infinite
//!   sequence up to shift.  The two-tailed canonical form places the right
//!   cut at the leftmost position from which the remaining sequence reads as
//!   the lexicographically least rotation of the right period, and the left
//!   cut at the rightmost compatible position to its left; a sequence that
//!   is secretly periodic collapses to [`BiSeq::Periodic`].
//!
//! The left tail of a two-tailed sequence is stored as the *outward-reading*
//! word, so its value as a one-sided sequence is immediate; the display
//! grammar `*(L)c(R)*` applies the reversal convention at parse/format time.

use std::fmt;

/// Errors from digit/word construction and sequence parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordsError {
    EmptyPeriod,
    Parse { position: usize, message: String },
}

impl fmt::Display for WordsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordsError::EmptyPeriod => write!(f, "period word must be nonempty"),
            WordsError::Parse { position, message } => {
                write!(f, "parse error at byte {position}: {message}")
            }
        }
    }
}

impl std::error::Error for WordsError {}

/// A digit of the H₆ expansion: an integer in {1, 2, 3, 4, 5}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Digit(u8);

impl Digit {
    pub fn new(d: u8) -> Option<Digit> {
        (1..=5).contains(&d).then_some(Digit(d))
    }

    pub fn value(self) -> u8 {
        self.0
    }

    /// The dual digit 6 − d.
    pub fn vee(self) -> Digit {
        Digit(6 - self.0)
    }
}

impl fmt::Display for Digit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite word over the digit alphabet (possibly empty).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Digit>);

impl Word {
    pub fn new(digits: Vec<Digit>) -> Word {
        Word(digits)
    }

    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn digits(&self) -> &[Digit] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Reading-order reversal.
    pub fn star(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Digitwise dual d ↦ 6 − d.
    pub fn vee(&self) -> Word {
        Word(self.0.iter().map(|d| d.vee()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn repeat(&self, k: usize) -> Word {
        let mut v = Vec::with_capacity(self.0.len() * k);
        for _ in 0..k {
            v.extend_from_slice(&self.0);
        }
        Word(v)
    }

    /// The rotation starting at position `i` (cyclic).
    pub fn rotation(&self, i: usize) -> Word {
        let n = self.0.len();
        if n == 0 {
            return Word::empty();
        }
        let i = i % n;
        let mut v = self.0[i..].to_vec();
        v.extend_from_slice(&self.0[..i]);
        Word(v)
    }

    /// The shortest word whose repetition gives `self`.
    pub fn primitive_root(&self) -> Word {
        let n = self.0.len();
        for p in 1..=n {
            if n % p != 0 {
                continue;
            }
            if (p..n).all(|i| self.0[i] == self.0[i - p]) {
                return Word(self.0[..p].to_vec());
            }
        }
        Word(self.0.clone())
    }

    /// The lexicographically least rotation (digit order 1 < … < 5).
    pub fn lex_least_rotation(&self) -> Word {
        let n = self.0.len();
        let mut best = self.rotation(0);
        for i in 1..n {
            let cand = self.rotation(i);
            if cand < best {
                best = cand;
            }
        }
        best
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    pub fn push(&mut self, d: Digit) {
        self.0.push(d);
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Word {
    type Err = WordsError;
    fn from_str(s: &str) -> Result<Word, WordsError> {
        let mut v = Vec::with_capacity(s.len());
        for (i, c) in s.char_indices() {
            let d = c
                .to_digit(10)
                .and_then(|d| u8::try_from(d).ok())
                .and_then(Digit::new)
                .ok_or_else(|| WordsError::Parse {
                    position: i,
                    message: format!("expected a digit 1-5, found {c:?}"),
                })?;
            v.push(d);
        }
        Ok(Word(v))
    }
}

/// A one-sided eventually periodic sequence `preperiod · period^∞`, stored in
/// normal form: primitive period, shortest preperiod.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tail {
    preperiod: Word,
    period: Word,
}

impl Tail {
    pub fn new(preperiod: Word, period: Word) -> Result<Tail, WordsError> {
        if period.is_empty() {
            return Err(WordsError::EmptyPeriod);
        }
        let mut pre = preperiod.0;
        let mut per = period.primitive_root().0;
        // Absorb preperiod digits that already belong to the periodic part:
        // a·x·(q·x)^∞ = a·(x·q)^∞, so a trailing digit equal to the period's
        // last digit moves into the period by rotating it one step right.
        while let Some(&last) = pre.last() {
            if last == *per.last().unwrap() {
                pre.pop();
                per.rotate_right(1);
            } else {
                break;
            }
        }
        Ok(Tail {
            preperiod: Word(pre),
            period: Word(per),
        })
    }

    pub fn periodic(period: Word) -> Result<Tail, WordsError> {
        Tail::new(Word::empty(), period)
    }

    pub fn preperiod(&self) -> &Word {
        &self.preperiod
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    /// The digit at position `i` (0-based).
    pub fn digit_at(&self, i: usize) -> Digit {
        if i < self.preperiod.len() {
            self.preperiod.0[i]
        } else {
            let j = (i - self.preperiod.len()) % self.period.len();
            self.period.0[j]
        }
    }

    /// Digitwise dual; commutes with normalization.
    pub fn vee(&self) -> Tail {
        Tail {
            preperiod: self.preperiod.vee(),
            period: self.period.vee(),
        }
    }

    /// The tail obtained by prepending a word.
    pub fn prepend(&self, w: &Word) -> Tail {
        Tail::new(w.concat(&self.preperiod), self.period.clone()).expect("period preserved")
    }
}

impl fmt::Display for Tail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})*", self.preperiod, self.period)
    }
}

impl std::str::FromStr for Tail {
    type Err = WordsError;
    fn from_str(s: &str) -> Result<Tail, WordsError> {
        parse_tail(s)
    }
}

/// A bi-infinite eventually periodic sequence, canonical up to shift.
///
/// `TwoTailed { left, center, right }` denotes `⋯ left* left* center right
/// right ⋯` read left to right — i.e. `left` is the outward-reading period of
/// the left tail.  Construct through [`BiSeq::periodic`] / [`BiSeq::two_tailed`]
/// to obtain the canonical representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BiSeq {
    Periodic(Word),
    TwoTailed { left: Word, center: Word, right: Word },
}

fn has_period(w: &[Digit], p: usize) -> bool {
    (p..w.len()).all(|i| w[i] == w[i - p])
}

impl BiSeq {
    pub fn periodic(period: Word) -> Result<BiSeq, WordsError> {
        if period.is_empty() {
            return Err(WordsError::EmptyPeriod);
        }
        Ok(BiSeq::Periodic(
            period.primitive_root().lex_least_rotation(),
        ))
    }

    /// Canonical two-tailed sequence from any presentation.  `left` is the
    /// outward-reading left period.
    ///
    /// The canonical cut positions are intrinsic to the sequence: the right
    /// cut is the leftmost position from which the rest of the sequence reads
    /// exactly as `(lex-least rotation of right)^∞`, and the left cut is the
    /// rightmost position ≤ the right cut from which the outward reading is
    /// exactly `(lex-least rotation of left)^∞`.  Presentations of the same
    /// sequence therefore canonicalize identically, and a sequence that is
    /// globally periodic collapses to `Periodic`.
    pub fn two_tailed(left: Word, center: Word, right: Word) -> Result<BiSeq, WordsError> {
        if left.is_empty() || right.is_empty() {
            return Err(WordsError::EmptyPeriod);
        }
        let l = left.primitive_root();
        let r = right.primitive_root();
        let lp = l.len();
        let rp = r.len();
        let l_canon = l.lex_least_rotation();
        let r_canon = r.lex_least_rotation();
        let l_rev = l.star();
        // Global periodicity: equal rotation classes of the left-to-right
        // periods, and the junction consistent across a two-copy probe.
        if l_rev.lex_least_rotation() == r_canon {
            let probe = l_rev.repeat(2).concat(&center).concat(&r.repeat(2));
            if has_period(probe.digits(), rp) {
                return Ok(BiSeq::Periodic(r_canon));
            }
        }
        // Window of the sequence around the center, wide enough that both
        // intrinsic cuts and a full extra period of context fit inside.
        let margin = 3 * (lp + rp) + center.len() + 8;
        let kl = margin / lp + 3;
        let kr = margin / rp + 3;
        let mut w: Vec<Digit> = Vec::new();
        for _ in 0..kl {
            w.extend_from_slice(l_rev.digits());
        }
        let cs = w.len();
        w.extend_from_slice(center.digits());
        let ce = w.len();
        for _ in 0..kr {
            w.extend_from_slice(r.digits());
        }
        let wlen = w.len();
        let rc = r_canon.digits();
        let lc = l_canon.digits();
        // Leftmost right cut: overlap of the two periodic regions in a
        // non-periodic sequence is < lp + rp (Fine–Wilf), so the scan range
        // below is guaranteed to contain it.
        let lo = cs - (lp + rp + 2).min(cs);
        let mut p_r = None;
        'scan_r: for p in lo..=(ce + rp) {
            for i in 0..(wlen - p) {
                if w[p + i] != rc[i % rp] {
                    continue 'scan_r;
                }
            }
            p_r = Some(p);
            break;
        }
        let p_r = p_r.expect("right-period phase always occurs within one period of the center");
        // Rightmost left cut not beyond the right cut.
        let mut q_l = None;
        'scan_l: for q in (0..=p_r).rev() {
            for i in 0..q {
                if w[q - 1 - i] != lc[i % lp] {
                    continue 'scan_l;
                }
            }
            q_l = Some(q);
            break;
        }
        let q_l = q_l.expect("left-period phase always occurs within one period of the right cut");
        Ok(BiSeq::TwoTailed {
            left: l_canon,
            center: Word(w[q_l..p_r].to_vec()),
            right: r_canon,
        })
    }

    /// Orientation reversal (shift classes are preserved, tails swap roles).
    pub fn star(&self) -> BiSeq {
        match self {
            BiSeq::Periodic(w) => BiSeq::periodic(w.star()).expect("nonempty"),
            BiSeq::TwoTailed { left, center, right } => {
                BiSeq::two_tailed(right.clone(), center.star(), left.clone()).expect("nonempty")
            }
        }
    }

    /// Digitwise dual.
    pub fn vee(&self) -> BiSeq {
        match self {
            BiSeq::Periodic(w) => BiSeq::periodic(w.vee()).expect("nonempty"),
            BiSeq::TwoTailed { left, center, right } => {
                BiSeq::two_tailed(left.vee(), center.vee(), right.vee()).expect("nonempty")
            }
        }
    }
}

impl fmt::Display for BiSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BiSeq::Periodic(w) => write!(f, "*({w})*"),
            BiSeq::TwoTailed { left, center, right } => {
                write!(f, "*({}){}({})*", left.star(), center, right)
            }
        }
    }
}

impl std::str::FromStr for BiSeq {
    type Err = WordsError;
    fn from_str(s: &str) -> Result<BiSeq, WordsError> {
        parse_biseq(s)
    }
}

/// A section `P*|Q` of a bi-infinite sequence: the cut splits it into the
/// outward-reading left tail `P` and the right tail `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub left: Tail,
    pub right: Tail,
}

impl Section {
    pub fn new(left: Tail, right: Tail) -> Section {
        Section { left, right }
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "*({}){}|{}({})*",
            self.left.period().star(),
            self.left.preperiod().star(),
            self.right.preperiod(),
            self.right.period()
        )
    }
}

/// Result of the umbrella parser: whichever shape the expression has.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeqExper {
    Word(Word),
    Tail(Tail),
    BiSeq(BiSeq),
}

fn expect_digits(s: &str, from: usize, to: usize) -> Result<Word, WordsError> {
    if from == to {
        return Ok(Word::empty());
    }
    let mut v = Vec::new();
    for (off, c) in s[from..to].char_indices() {
        let d = c
            .to_digit(10)
            .and_then(|d| u8::try_from(d).ok())
            .and_then(Digit::new)
            .ok_or_else(|| WordsError::Parse {
                position: from + off,
                message: format!("expected a digit 1-5, found {c:?}"),
            })?;
        v.push(d);
    }
    Ok(Word(v))
}

/// Parses `word? '(' word ')' '*'` into a normalized [`Tail`].
pub fn parse_tail(s: &str) -> Result<Tail, WordsError> {
    let open = s.find('(').ok_or_else(|| WordsError::Parse {
        position: s.len(),
        message: "expected '(' introducing the period".into(),
    })?;
    let close = s.find(')').ok_or_else(|| WordsError::Parse {
        position: s.len(),
        message: "expected ')' closing the period".into(),
    })?;
    if close < open || !s[close + 1..].eq("*") {
        return Err(WordsError::Parse {
            position: close,
            message: "tail must end with ')*'".into(),
        });
    }
    let pre = expect_digits(s, 0, open)?;
    let per = expect_digits(s, open + 1, close)?;
    if per.is_empty() {
        return Err(WordsError::Parse {
            position: open + 1,
            message: "period must be nonempty".into(),
        });
    }
    Tail::new(pre, per)
}

/// Parses `*(L)c(R)*` or `*(w)*` into a canonical [`BiSeq`].  A single
/// display bar `|` inside the center is accepted and ignored.
pub fn parse_biseq(s: &str) -> Result<BiSeq, WordsError> {
    if !s.starts_with("*(") {
        return Err(WordsError::Parse {
            position: 0,
            message: "bi-infinite sequence must start with '*('".into(),
        });
    }
    let close = s.find(')').ok_or_else(|| WordsError::Parse {
        position: s.len(),
        message: "missing ')' after the left period".into(),
    })?;
    let left_disp = expect_digits(s, 2, close)?;
    if left_disp.is_empty() {
        return Err(WordsError::Parse {
            position: 2,
            message: "left period must be nonempty".into(),
        });
    }
    let after = close + 1;
    if &s[after..] == "*" {
        return BiSeq::periodic(left_disp);
    }
    let open2 = s[after..].find('(').map(|i| after + i).ok_or_else(|| WordsError::Parse {
        position: s.len(),
        message: "expected '(' introducing the right period".into(),
    })?;
    let close2 = s[open2..].find(')').map(|i| open2 + i).ok_or_else(|| WordsError::Parse {
        position: s.len(),
        message: "missing ')' after the right period".into(),
    })?;
    if !s[close2 + 1..].eq("*") {
        return Err(WordsError::Parse {
            position: close2,
            message: "bi-infinite sequence must end with ')*'".into(),
        });
    }
    let center_text = &s[after..open2];
    if center_text.matches('|').count() > 1 {
        return Err(WordsError::Parse {
            position: after,
            message: "at most one display bar allowed in the center".into(),
        });
    }
    let center = {
        let mut v = Vec::new();
        for (off, c) in center_text.char_indices() {
            if c == '|' {
                continue;
            }
            let d = c
                .to_digit(10)
                .and_then(|d| u8::try_from(d).ok())
                .and_then(Digit::new)
                .ok_or_else(|| WordsError::Parse {
                    position: after + off,
                    message: format!("expected a digit 1-5, found {c:?}"),
                })?;
            v.push(d);
        }
        Word(v)
    };
    let right = expect_digits(s, open2 + 1, close2)?;
    if right.is_empty() {
        return Err(WordsError::Parse {
            position: open2 + 1,
            message: "right period must be nonempty".into(),
        });
    }
    BiSeq::two_tailed(left_disp.star(), center, right)
}

/// Umbrella parser: bi-infinite sequences start with `*(`, tails contain a
/// period marker, anything else is a plain word.
pub fn parse_seq(s: &str) -> Result<SeqExper, WordsError> {
    if s.starts_with("*(") {
        Ok(SeqExper::BiSeq(parse_biseq(s)?))
    } else if s.contains('(') {
        Ok(SeqExper::Tail(parse_tail(s)?))
    } else {
        Ok(SeqExper::Word(s.parse()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn star_and_vee_basics() {
        assert_eq!(w("234").star(), w("432"));
        assert_eq!(w("4224").vee(), w("2442"));
        assert_eq!(w("43").vee(), w("23"));
        let x = w("15243");
        assert_eq!(x.star().star(), x);
        assert_eq!(x.vee().vee(), x);
        assert_eq!(x.star().vee(), x.vee().star());
    }

    #[test]
    fn tail_normalization_absorbs_period_copies() {
        let a = Tail::new(w("35"), w("42")).unwrap();
        let b = Tail::new(w("3542"), w("42")).unwrap();
        assert_eq!(a, b);
        let c = Tail::new(w(""), w("4242")).unwrap();
        assert_eq!(c.period(), &w("42"));
        assert!(c.preperiod().is_empty());
        // Absorption rotates: 2(32)* = (23)*.
        let d = Tail::new(w("2"), w("32")).unwrap();
        assert_eq!(d, Tail::periodic(w("23")).unwrap());
    }

    #[test]
    fn periodic_canonical_forms() {
        assert_eq!(
            BiSeq::periodic(w("51")).unwrap(),
            BiSeq::periodic(w("15")).unwrap()
        );
        assert_eq!(
            BiSeq::periodic(w("424242")).unwrap(),
            BiSeq::Periodic(w("24"))
        );
        let p = BiSeq::periodic(w("51")).unwrap();
        assert_eq!(p.star(), p);
        assert_eq!(p.vee(), p);
    }

    #[test]
    fn two_tailed_presentations_coincide() {
        // Shifting whole periods in or out of the center is invisible.
        let a = BiSeq::two_tailed(w("42"), w("3"), w("51")).unwrap();
        let b = BiSeq::two_tailed(w("42"), w("243"), w("51")).unwrap();
        let c = BiSeq::two_tailed(w("24"), w("435"), w("15")).unwrap();
        let d = BiSeq::two_tailed(w("42"), w("35"), w("15")).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a, d);
        // A center made of whole period copies collapses to Periodic.
        let p = BiSeq::two_tailed(w("24"), w("4242"), w("42")).unwrap();
        assert_eq!(p, BiSeq::Periodic(w("24")));
        // Overlapping periodic regions still canonicalize identically: the
        // sequence *(211)(12)* can also be cut one digit further right.
        let x = BiSeq::two_tailed(w("211"), w(""), w("12")).unwrap();
        let y = BiSeq::two_tailed(w("121"), w(""), w("21")).unwrap();
        assert_eq!(x, y);
        assert_eq!(
            x,
            BiSeq::TwoTailed { left: w("112"), center: w("21"), right: w("12") }
        );
    }

    #[test]
    fn involutions_on_biseqs() {
        let a: BiSeq = "*(4224)4(23)*".parse().unwrap();
        assert_eq!(a.star().star(), a);
        assert_eq!(a.vee().vee(), a);
        assert_eq!(a.star().vee(), a.vee().star());
        let p: BiSeq = "*(51)*".parse().unwrap();
        assert_eq!(p, BiSeq::Periodic(w("15")));
    }

    #[test]
    fn parse_examples() {
        let a: BiSeq = "*(4224)4(23)*".parse().unwrap();
        match &a {
            BiSeq::TwoTailed { left, center, right } => {
                assert_eq!(left, &w("2244"));
                assert_eq!(center, &w("44"));
                assert_eq!(right, &w("23"));
            }
            other => panic!("expected two-tailed, got {other:?}"),
        }
        let t: Tail = "(43)*".parse().unwrap();
        assert!(t.preperiod().is_empty());
        assert_eq!(t.period(), &w("43"));
        let t: Tail = "5(13)*".parse().unwrap();
        assert_eq!(t.preperiod(), &w("5"));
        assert_eq!(t.period(), &w("13"));
    }

    #[test]
    fn format_parse_round_trip() {
        for text in [
            "*(43)*",
            "*(4224)4(23)*",
            "*(42)3(42)*",
            "*(112)21(12)*",
            "5(13)*",
            "(31)*",
            "35(42)*",
        ] {
            match parse_seq(text).unwrap() {
                SeqExper::BiSeq(b) => {
                    let again: BiSeq = b.to_string().parse().unwrap();
                    assert_eq!(again, b, "round trip failed for {text}");
                }
                SeqExper::Tail(t) => {
                    let again: Tail = t.to_string().parse().unwrap();
                    assert_eq!(again, t, "round trip failed for {text}");
                }
                SeqExper::Word(word) => {
                    let again: Word = word.to_string().parse().unwrap();
                    assert_eq!(again, word);
                }
            }
        }
    }

    #[test]
    fn parse_errors_have_positions() {
        assert!(matches!(
            "*(6)*".parse::<BiSeq>(),
            Err(WordsError::Parse { position: 2, .. })
        ));
        assert!("".parse::<BiSeq>().is_err());
        assert!("4(".parse::<Tail>().is_err());
        assert!("*(5)(".parse::<BiSeq>().is_err());
        assert!(matches!(
            "12x4".parse::<Word>(),
            Err(WordsError::Parse { position: 2, .. })
        ));
    }

    #[test]
    fn random_round_trips() {
        // Deterministic LCG over random presentations: canonicalization must
        // be stable under re-parsing its own display.
        let mut state = 0x243F6A8885A308D3u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as usize
        };
        for _ in 0..500 {
            let mut rand_word = |max_len: usize, min_len: usize| {
                let len = min_len + next() % (max_len - min_len + 1);
                Word::new(
                    (0..len)
                        .map(|_| Digit::new(1 + (next() % 5) as u8).unwrap())
                        .collect(),
                )
            };
            let l = rand_word(4, 1);
            let c = rand_word(5, 0);
            let r = rand_word(4, 1);
            let b = BiSeq::two_tailed(l.clone(), c.clone(), r.clone()).unwrap();
            let again: BiSeq = b.to_string().parse().unwrap();
            assert_eq!(again, b, "round trip failed for {l}/{c}/{r}");
            // Shift invariance: pushing a period copy into the center.
            let shifted = BiSeq::two_tailed(l.clone(), l.star().concat(&c), r.clone()).unwrap();
            assert_eq!(shifted, b, "left shift changed {l}/{c}/{r}");
            let shifted = BiSeq::two_tailed(l.clone(), c.concat(&r), r.clone()).unwrap();
            assert_eq!(shifted, b, "right shift changed {l}/{c}/{r}");
            // Symmetries are involutions and commute.
            assert_eq!(b.star().star(), b);
            assert_eq!(b.vee().vee(), b);
            assert_eq!(b.star().vee(), b.vee().star());
        }
    }
}
