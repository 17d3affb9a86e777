//! Certified maximal gaps of the Markoff spectrum.
//!
//! The certifier shows that an open interval (a, b) contains no Markoff
//! number: it maintains the set of *alive* length-n windows, prunes a window
//! (together with its reversal and complement conjugates) whenever every
//! bi-infinite sequence through it provably has a section value ≥ b, and
//! deepens n until the supremum of section values over all-alive completions
//! drops to ≤ a.  Pruning bounds are exact infima over completions within
//! the current alive language; the round structure makes every bound
//! conditional only on earlier prunes, so the emitted certificate replays
//! independently.  Endpoint membership is checked by recomputing the Markoff
//! values of the witness sequences.

mod certificate;
mod replay;

pub use certificate::{ClaimBody, GapCertificate, PrunedEntry};
pub use replay::{replay_certificate, ReplayReport};

use std::collections::BTreeSet;

use crate::exact::{format_sexpr, AlgebraicReal, ExactError, ExtReal};
use crate::expansion::ExpansionError;
use crate::extremize::{
    window_bounds_with, ContinuationTable, Dir, ExtremizeError, SubshiftSpec,
};
use crate::spectra::{markoff, SpectraError};
use crate::words::{BiSeq, Digit, Word, WordsError};

/// Significant digits used for decimal annotations in certificates/reports.
const SIG: usize = 15;

/// Errors from gap certification.
#[derive(Debug)]
pub enum GapsError {
    /// The claim's endpoints or witnesses failed recomputation.
    InvalidClaim(String),
    /// An exact inequality asserted by a report failed.
    AssertionFailure(String),
    /// A certificate is malformed or fails replay.
    Certificate(String),
    Exact(ExactError),
    Expansion(ExpansionError),
    Extremize(ExtremizeError),
    Spectra(SpectraError),
    Words(WordsError),
}

impl std::fmt::Display for GapsError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GapsError::InvalidClaim(m) => write!(f, "invalid claim: {m}"),
            GapsError::AssertionFailure(m) => write!(f, "assertion failure: {m}"),
            GapsError::Certificate(m) => write!(f, "certificate error: {m}"),
            GapsError::Exact(e) => write!(f, "{e}"),
            GapsError::Expansion(e) => write!(f, "{e}"),
            GapsError::Extremize(e) => write!(f, "{e}"),
            GapsError::Spectra(e) => write!(f, "{e}"),
            GapsError::Words(e) => write!(f, "{e}"),
        }
    }
}

macro_rules! from_err {
    ($v:ident, $t:ty) => {
        impl From<$t> for GapsError {
            fn from(e: $t) -> Self {
                GapsError::$v(e)
            }
        }
    };
}
from_err!(Exact, ExactError);
from_err!(Expansion, ExpansionError);
from_err!(Extremize, ExtremizeError);
from_err!(Spectra, SpectraError);
from_err!(Words, WordsError);

impl std::error::Error for GapsError {}

/// A claimed maximal gap (a, b) with sequences attaining the endpoints.
#[derive(Debug, Clone)]
pub struct GapClaim {
    pub a: AlgebraicReal,
    pub b: AlgebraicReal,
    pub witness_a: BiSeq,
    pub witness_b: BiSeq,
}

fn sqrt_int(n: i64) -> AlgebraicReal {
    AlgebraicReal::from_int(n).sqrt().expect("nonnegative")
}

impl GapClaim {
    pub fn new(a: AlgebraicReal, b: AlgebraicReal, witness_a: BiSeq, witness_b: BiSeq) -> GapClaim {
        GapClaim { a, b, witness_a, witness_b }
    }

    /// The gap (√143/5, √7) with endpoints attained by *(43)* and *(51)*.
    pub fn first_gap() -> GapClaim {
        GapClaim::new(
            sqrt_int(143).checked_div(&AlgebraicReal::from_int(5)).unwrap(),
            sqrt_int(7),
            "*(43)*".parse().unwrap(),
            "*(51)*".parse().unwrap(),
        )
    }

    /// The gap (√7, (13√3+13√7+√143)/26) with endpoints attained by *(51)*
    /// and *(4224)4(23)*.
    pub fn second_gap() -> GapClaim {
        let b = ((AlgebraicReal::from_int(13) * AlgebraicReal::sqrt3())
            + (AlgebraicReal::from_int(13) * sqrt_int(7))
            + sqrt_int(143))
        .checked_div(&AlgebraicReal::from_int(26))
        .unwrap();
        GapClaim::new(
            sqrt_int(7),
            b,
            "*(51)*".parse().unwrap(),
            "*(4224)4(23)*".parse().unwrap(),
        )
    }

    /// The further gap (2√506/19, 2√2803333/1405) attained by *(433)* and
    /// *(4323243)* — a stretch target for the certifier.
    pub fn remark_gap() -> GapClaim {
        GapClaim::new(
            (AlgebraicReal::from_int(2) * sqrt_int(506))
                .checked_div(&AlgebraicReal::from_int(19))
                .unwrap(),
            (AlgebraicReal::from_int(2) * sqrt_int(2_803_333))
                .checked_div(&AlgebraicReal::from_int(1405))
                .unwrap(),
            "*(433)*".parse().unwrap(),
            "*(4323243)*".parse().unwrap(),
        )
    }

    /// Recomputes both endpoint values and checks a < b.
    pub fn verify(&self) -> Result<(), GapsError> {
        if self.a.compare(&self.b)? != std::cmp::Ordering::Less {
            return Err(GapsError::InvalidClaim("endpoints not ordered a < b".into()));
        }
        let ma = markoff(&self.witness_a)?;
        if ma.value.compare(&self.a)? != std::cmp::Ordering::Equal {
            return Err(GapsError::InvalidClaim(format!(
                "witness {} has Markoff value {}, claim says {}",
                self.witness_a,
                ma.value.decimal(SIG),
                self.a.decimal(SIG)
            )));
        }
        let mb = markoff(&self.witness_b)?;
        if mb.value.compare(&self.b)? != std::cmp::Ordering::Equal {
            return Err(GapsError::InvalidClaim(format!(
                "witness {} has Markoff value {}, claim says {}",
                self.witness_b,
                mb.value.decimal(SIG),
                self.b.decimal(SIG)
            )));
        }
        Ok(())
    }
}

/// Result of a certification attempt.
#[derive(Debug)]
pub enum GapOutcome {
    Certified(Box<GapCertificate>),
    /// The window budget was exhausted with the surviving supremum above a.
    Inconclusive {
        window_length: usize,
        survivors: Vec<Word>,
        sup_decimal: String,
    },
}

// ---------------------------------------------------------------------------
// Alive-window bookkeeping shared by the certifier and the replayer.
// ---------------------------------------------------------------------------

pub(crate) fn key_of(w: &Word) -> Vec<u8> {
    w.digits().iter().map(|d| d.value()).collect()
}

pub(crate) fn word_of(key: &[u8]) -> Word {
    Word::new(key.iter().map(|&d| Digit::new(d).expect("digit")).collect())
}

fn key_star(k: &[u8]) -> Vec<u8> {
    k.iter().rev().copied().collect()
}

fn key_vee(k: &[u8]) -> Vec<u8> {
    k.iter().map(|&d| 6 - d).collect()
}

/// The conjugate orbit {w, w*, w∨, (w∨)*} without duplicates.
pub(crate) fn orbit_keys(k: &[u8]) -> Vec<Vec<u8>> {
    let mut out = vec![k.to_vec(), key_star(k), key_vee(k), key_star(&key_vee(k))];
    out.sort();
    out.dedup();
    out
}

/// The alive set of length-n windows, with the sweeps and the extension
/// step used by iterative deepening.
#[derive(Debug, Clone)]
pub(crate) struct AliveSet {
    pub n: usize,
    pub words: BTreeSet<Vec<u8>>,
}

impl AliveSet {
    /// All 25 two-digit windows over {1..5}.
    pub fn initial() -> AliveSet {
        let mut words = BTreeSet::new();
        for a in 1..=5u8 {
            for b in 1..=5u8 {
                words.insert(vec![a, b]);
            }
        }
        AliveSet { n: 2, words }
    }

    /// Removes windows not lying on any bi-infinite path of the de Bruijn
    /// graph (greatest fixpoint of "has an alive successor and an alive
    /// predecessor").
    pub fn sweep(&mut self) {
        loop {
            let mut dead: Vec<Vec<u8>> = Vec::new();
            for w in &self.words {
                let has_succ = (1..=5u8).any(|d| {
                    let mut s = w[1..].to_vec();
                    s.push(d);
                    self.words.contains(&s)
                });
                let has_pred = has_succ
                    && (1..=5u8).any(|d| {
                        let mut p = vec![d];
                        p.extend_from_slice(&w[..self.n - 1]);
                        self.words.contains(&p)
                    });
                if !has_pred {
                    dead.push(w.clone());
                }
            }
            if dead.is_empty() {
                return;
            }
            for w in dead {
                self.words.remove(&w);
            }
        }
    }

    /// Length n+1 windows both of whose length-n factors are alive.
    pub fn extend(&mut self) {
        let mut out = BTreeSet::new();
        for w in &self.words {
            for d in 1..=5u8 {
                let mut x = w.clone();
                x.push(d);
                if self.words.contains(&x[1..]) {
                    out.insert(x);
                }
            }
        }
        self.n += 1;
        self.words = out;
    }

    pub fn spec(&self) -> SubshiftSpec {
        let words: Vec<Word> = self.words.iter().map(|k| word_of(k)).collect();
        SubshiftSpec::from_allowed_windows(self.n, &words)
    }

    pub fn is_symmetry_closed(&self) -> bool {
        self.words.iter().all(|k| {
            self.words.contains(&key_star(k)) && self.words.contains(&key_vee(k))
        })
    }
}

// ---------------------------------------------------------------------------
// Exact cut bounds.
// ---------------------------------------------------------------------------

/// The exact extremal section value through `word` split at `cut`, as a
/// canonically ordered sum of the two half-bounds (so that the expression
/// tree — hence its s-expression — is invariant under reversal symmetry).
pub(crate) fn cut_bound(
    word: &Word,
    cut: usize,
    spec: &SubshiftSpec,
    table: &ContinuationTable,
) -> Result<ExtReal, ExtremizeError> {
    let left = word.slice(0..cut);
    let right = word.slice(cut..word.len());
    let (l, r) = window_bounds_with(&left, &right, spec, table)?;
    Ok(ext_add_canonical(&l, &r))
}

pub(crate) fn ext_add_canonical(l: &ExtReal, r: &ExtReal) -> ExtReal {
    match (l, r) {
        (ExtReal::Finite(x), ExtReal::Finite(y)) => {
            if format_sexpr(x) <= format_sexpr(y) {
                ExtReal::Finite(x + y)
            } else {
                ExtReal::Finite(y + x)
            }
        }
        _ => ExtReal::PosInfinity,
    }
}

pub(crate) fn ext_sexpr(v: &ExtReal) -> String {
    match v {
        ExtReal::Finite(x) => format_sexpr(x),
        ExtReal::PosInfinity => "oo".to_string(),
    }
}

pub(crate) fn ext_decimal(v: &ExtReal) -> String {
    match v {
        ExtReal::Finite(x) => x.decimal(SIG),
        ExtReal::PosInfinity => "oo".to_string(),
    }
}

pub(crate) fn ext_ge(v: &ExtReal, t: &AlgebraicReal) -> Result<bool, ExactError> {
    match v {
        ExtReal::PosInfinity => Ok(true),
        ExtReal::Finite(x) => Ok(x.compare(t)? != std::cmp::Ordering::Less),
    }
}

pub(crate) fn ext_le(v: &ExtReal, t: &AlgebraicReal) -> Result<bool, ExactError> {
    match v {
        ExtReal::PosInfinity => Ok(false),
        ExtReal::Finite(x) => Ok(x.compare(t)? != std::cmp::Ordering::Greater),
    }
}

// ---------------------------------------------------------------------------
// f64 enclosure prefilter.
//
// Every exact cut bound is shadowed by a closed f64 interval that provably
// contains it: table entries are seeded from certified dyadic enclosures,
// digit applications use the monotonicity of the (all-nonnegative-entry)
// Möbius maps with the endpoints pushed outward by a relative slop that
// dominates f64 rounding by two orders of magnitude, and √3 enters only as
// a hard-coded two-sided constant.  The filter is used exclusively to SKIP
// exact work whose outcome the interval already decides in the negative
// direction (certainly below a threshold); every positive decision — a
// prune, a violation, the running maximum — is still confirmed exactly, so
// filtered scans return byte-identical results to unfiltered ones.
// ---------------------------------------------------------------------------

/// Relative outward slop per interval operation; f64 rounding contributes
/// < 1e-15 per apply on this domain (positive values, no cancellation).
const ENC_SLOP: f64 = 1e-13;

const SQRT3_LO: f64 = 1.732_050_807_568_876_7;
const SQRT3_HI: f64 = 1.732_050_807_568_877_9;

/// A closed interval `[lo, hi]` enclosing one extended-real value; the
/// infinite value is `[+∞, +∞]`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Enc {
    lo: f64,
    hi: f64,
}

impl Enc {
    fn infinite() -> Enc {
        Enc { lo: f64::INFINITY, hi: f64::INFINITY }
    }

    fn is_infinite(&self) -> bool {
        self.lo.is_infinite()
    }
}

/// Digit matrix rows as two-sided constants `(a, b, c, d)`.
fn enc_matrix(d: u8) -> ([f64; 2], [f64; 2], [f64; 2], [f64; 2]) {
    let e0 = [0.0, 0.0];
    let e1 = [1.0, 1.0];
    let e2 = [2.0, 2.0];
    let es = [SQRT3_LO, SQRT3_HI];
    match d {
        1 => (e1, e0, es, e1),
        2 => (es, e1, e2, es),
        3 => (e2, es, es, e2),
        4 => (es, e2, e1, es),
        _ => (e1, es, e0, e1),
    }
}

/// Enclosure of `N_d(x)` for `x ⊆ [0, ∞]`.  The map is strictly increasing
/// there (determinant 1, nonnegative entries), so the images of the
/// endpoints — each bracketed with the constants rounded against it and the
/// quotient pushed outward — bracket the image.
fn enc_apply(d: u8, x: Enc) -> Enc {
    let (a, b, c, dd) = enc_matrix(d);
    if x.is_infinite() {
        if c[0] == 0.0 {
            return Enc::infinite();
        }
        return Enc {
            lo: a[0] / c[1] * (1.0 - ENC_SLOP),
            hi: a[1] / c[0] * (1.0 + ENC_SLOP),
        };
    }
    Enc {
        lo: (a[0] * x.lo + b[0]) / (c[1] * x.lo + dd[1]) * (1.0 - ENC_SLOP),
        hi: (a[1] * x.hi + b[1]) / (c[0] * x.hi + dd[0]) * (1.0 + ENC_SLOP),
    }
}

fn enc_of_ext(v: &ExtReal) -> Enc {
    match v {
        ExtReal::PosInfinity => Enc::infinite(),
        ExtReal::Finite(x) => {
            let m = x.approx(48).to_f64();
            let w = m.abs() * 1e-10 + 1e-10;
            Enc { lo: m - w, hi: m + w }
        }
    }
}

/// Per-state enclosures of a continuation table's exact values.
pub(crate) struct EncTable {
    enc: Vec<Option<Enc>>,
}

impl EncTable {
    pub fn new(spec: &SubshiftSpec, table: &ContinuationTable) -> EncTable {
        let enc = (0..spec.state_count())
            .map(|s| table.value(s).map(|(v, _)| enc_of_ext(v)))
            .collect();
        EncTable { enc }
    }
}

/// Enclosure of the exact `cut_bound`, mirroring its two context
/// applications digit by digit (contexts apply right-to-left).  `None`
/// falls back to the exact path.
fn enc_cut_bound(word: &Word, cut: usize, spec: &SubshiftSpec, et: &EncTable) -> Option<Enc> {
    let digits: Vec<u8> = word.digits().iter().map(|d| d.value()).collect();
    let q = spec.state_after(word)?;
    let mut right = et.enc[q]?;
    for &d in digits[cut..].iter().rev() {
        right = enc_apply(d, right);
    }
    let rev = word.star();
    let p = spec.state_after(&rev)?;
    let mut left = et.enc[p]?;
    for &d in digits[..cut].iter() {
        left = enc_apply(d, left);
    }
    if left.is_infinite() || right.is_infinite() {
        return Some(Enc::infinite());
    }
    Some(Enc {
        lo: (left.lo + right.lo) * (1.0 - ENC_SLOP),
        hi: (left.hi + right.hi) * (1.0 + ENC_SLOP),
    })
}

/// A strict f64 lower bound of an exact threshold value.
fn enc_floor(t: &AlgebraicReal) -> f64 {
    enc_of_ext(&ExtReal::Finite(t.clone())).lo
}

/// Searches the orbit of `rep` for a pruning certificate: the first
/// interior cut (primal before dual at each cut) whose completion infimum
/// reaches `b` exactly or beyond.  Soundness needs any such cut, not the
/// best one, and first-found keeps every bound comparison against the fixed
/// endpoint rather than against other cut bounds.  Cuts whose enclosure is
/// certainly below `b` are skipped without exact work.
fn find_pruning_cut(
    rep: &[u8],
    n: usize,
    spec: &SubshiftSpec,
    table: &ContinuationTable,
    et: &EncTable,
    b: &AlgebraicReal,
    b_floor: f64,
) -> Result<Option<(ExtReal, usize, bool)>, GapsError> {
    let w = word_of(rep);
    let wv = word_of(&key_vee(rep));
    for cut in 1..n {
        for (word, dual) in [(&w, false), (&wv, true)] {
            if let Some(e) = enc_cut_bound(word, cut, spec, et) {
                if e.hi < b_floor {
                    continue;
                }
            }
            let v = cut_bound(word, cut, spec, table)?;
            if ext_ge(&v, b)? {
                return Ok(Some((v, cut, dual)));
            }
        }
    }
    Ok(None)
}

/// Fast gate for a certification attempt: checks that every alive window's
/// sup-completion bound stays ≤ a, stopping at the first violation.  Words
/// are skipped when their reversal was already checked (both have the same
/// set of cut-bound values).  Avoids the expensive exact maximum purely for
/// levels that cannot certify yet.
fn all_bounded_by(
    alive: &AliveSet,
    spec: &SubshiftSpec,
    table: &ContinuationTable,
    et: &EncTable,
    a: &AlgebraicReal,
    a_floor: f64,
) -> Result<Option<(Vec<u8>, usize)>, GapsError> {
    let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
    for key in &alive.words {
        if seen.contains(key) {
            continue;
        }
        seen.insert(key_star(key));
        let w = word_of(key);
        for cut in 1..alive.n {
            if let Some(e) = enc_cut_bound(&w, cut, spec, et) {
                if e.hi <= a_floor {
                    continue;
                }
            }
            let v = cut_bound(&w, cut, spec, table)?;
            if !ext_le(&v, a)? {
                return Ok(Some((key.clone(), cut)));
            }
        }
    }
    Ok(None)
}

/// The supremum of section values over all-alive completions: max over all
/// alive windows and interior cuts of the sup-completion bound.  (Dual cuts
/// are covered because the alive set is closed under complement.)  Returns
/// the value together with its canonical expression string and decimal.
fn surviving_sup(
    alive: &AliveSet,
    spec: &SubshiftSpec,
    table: &ContinuationTable,
    et: &EncTable,
) -> Result<(ExtReal, String, String), GapsError> {
    // First pass: enclose every cut bound; any entry whose upper end falls
    // below the largest lower end cannot attain the maximum.  Entries with
    // no enclosure stay candidates.  The surviving candidates contain every
    // argmax, so the exact first-maximum scan below — run in the same
    // enumeration order — returns exactly what the unfiltered scan would.
    let mut encs: Vec<(&Vec<u8>, usize, Option<Enc>)> = Vec::new();
    let mut floor = f64::NEG_INFINITY;
    for key in &alive.words {
        let w = word_of(key);
        for cut in 1..alive.n {
            let e = enc_cut_bound(&w, cut, spec, et);
            if let Some(e) = &e {
                if e.lo > floor {
                    floor = e.lo;
                }
            }
            encs.push((key, cut, e));
        }
    }
    let mut best: Option<ExtReal> = None;
    for (key, cut, e) in encs {
        if let Some(e) = e {
            if e.hi < floor {
                continue;
            }
        }
        let w = word_of(key);
        let v = cut_bound(&w, cut, spec, table)?;
        let better = match &best {
            None => true,
            Some(b) => v.compare(b)? == std::cmp::Ordering::Greater,
        };
        if better {
            best = Some(v);
        }
    }
    let ub = best.ok_or_else(|| GapsError::Certificate("alive language is empty".into()))?;
    let expr = ext_sexpr(&ub);
    let dec = ext_decimal(&ub);
    Ok((ub, expr, dec))
}

// ---------------------------------------------------------------------------
// The certifier.
// ---------------------------------------------------------------------------

/// Certifies that (claim.a, claim.b) contains no Markoff number, by
/// iterative deepening over window lengths up to `n_max`.
pub fn certify_gap(claim: &GapClaim, n_max: usize) -> Result<GapOutcome, GapsError> {
    claim.verify()?;
    let trace = std::env::var_os("H6_GAP_TRACE").is_some();
    let started = std::time::Instant::now();
    let a_floor = enc_floor(&claim.a);
    let b_floor = enc_floor(&claim.b);
    let mut alive = AliveSet::initial();
    let mut round = 0usize;
    let mut entries: Vec<PrunedEntry> = Vec::new();
    loop {
        // Pruning rounds to a fixpoint at the current window length.  Each
        // round evaluates all orbits against the same snapshot (so bounds
        // depend only on earlier rounds) and removes the pruned orbits
        // together.
        loop {
            alive.sweep();
            if alive.words.is_empty() {
                return Err(GapsError::Certificate(
                    "alive language emptied; claim endpoints cannot both be attained".into(),
                ));
            }
            if trace {
                eprintln!(
                    "[gap {:.1?}] n={} alive={} scanning after round {round}",
                    started.elapsed(),
                    alive.n,
                    alive.words.len()
                );
            }
            let spec = alive.spec();
            let table = ContinuationTable::new(&spec, Dir::Min)?;
            let et = EncTable::new(&spec, &table);
            let mut claimed: BTreeSet<Vec<u8>> = BTreeSet::new();
            let mut prunes: Vec<(Vec<u8>, usize, bool, ExtReal)> = Vec::new();
            for key in &alive.words {
                if claimed.contains(key) {
                    continue;
                }
                for m in orbit_keys(key) {
                    claimed.insert(m);
                }
                if let Some((lb, cut, dual)) =
                    find_pruning_cut(key, alive.n, &spec, &table, &et, &claim.b, b_floor)?
                {
                    prunes.push((key.clone(), cut, dual, lb));
                }
            }
            if prunes.is_empty() {
                break;
            }
            round += 1;
            if trace {
                eprintln!(
                    "[gap {:.1?}] n={} round {round}: pruning {} orbits",
                    started.elapsed(),
                    alive.n,
                    prunes.len()
                );
            }
            for (rep, cut, dual, bound) in prunes {
                let bound_s = ext_sexpr(&bound);
                let bound_d = ext_decimal(&bound);
                for (member, mcut, mdual) in member_entries(&rep, cut, dual, alive.n) {
                    if alive.words.remove(&member) {
                        entries.push(PrunedEntry {
                            word: word_of(&member).to_string(),
                            cut: mcut,
                            dual: mdual,
                            round,
                            bound: bound_s.clone(),
                            bound_decimal: bound_d.clone(),
                        });
                    }
                }
            }
        }
        // Certification attempt at this window length.  A cheap early-exit
        // scan decides whether every bound is ≤ a; the exact supremum (used
        // in the certificate and the inconclusive report) is only computed
        // once that holds, or when the window budget runs out.
        let spec = alive.spec();
        let table = ContinuationTable::new(&spec, Dir::Max)?;
        let et = EncTable::new(&spec, &table);
        let violation = all_bounded_by(&alive, &spec, &table, &et, &claim.a, a_floor)?;
        if trace {
            match &violation {
                None => eprintln!(
                    "[gap {:.1?}] n={} fixpoint: alive={} all bounds ≤ a",
                    started.elapsed(),
                    alive.n,
                    alive.words.len()
                ),
                Some((key, cut)) => eprintln!(
                    "[gap {:.1?}] n={} fixpoint: alive={} exceeds a at {}|{cut}",
                    started.elapsed(),
                    alive.n,
                    alive.words.len(),
                    word_of(key)
                ),
            }
        }
        if violation.is_none() {
            let (_ub, ub_expr, ub_dec) = surviving_sup(&alive, &spec, &table, &et)?;
            entries.sort_by(|x, y| (x.round, &x.word).cmp(&(y.round, &y.word)));
            let mut cert = GapCertificate {
                format: certificate::FORMAT.to_string(),
                claim: ClaimBody {
                    a: format_sexpr(&claim.a),
                    a_decimal: claim.a.decimal(SIG),
                    b: format_sexpr(&claim.b),
                    b_decimal: claim.b.decimal(SIG),
                    witness_a: claim.witness_a.to_string(),
                    witness_b: claim.witness_b.to_string(),
                },
                window_length: alive.n,
                rounds: round,
                pruned: entries,
                surviving_sup: ub_expr,
                surviving_sup_decimal: ub_dec,
                checksum: None,
            };
            cert.seal();
            return Ok(GapOutcome::Certified(Box::new(cert)));
        }
        if alive.n >= n_max {
            let (ub, _, _) = surviving_sup(&alive, &spec, &table, &et)?;
            return Ok(GapOutcome::Inconclusive {
                window_length: alive.n,
                survivors: alive.words.iter().map(|k| word_of(k)).collect(),
                sup_decimal: ext_decimal(&ub),
            });
        }
        alive.extend();
    }
}

/// The certificate entries for the four orbit members of a pruned window:
/// the winning (cut, dual) transported through reversal (mirror the cut)
/// and complement (flip the dual flag).
fn member_entries(rep: &[u8], cut: usize, dual: bool, n: usize) -> Vec<(Vec<u8>, usize, bool)> {
    let mut out: Vec<(Vec<u8>, usize, bool)> = Vec::new();
    let candidates = [
        (rep.to_vec(), cut, dual),
        (key_star(rep), n - cut, dual),
        (key_vee(rep), cut, !dual),
        (key_star(&key_vee(rep)), n - cut, !dual),
    ];
    for (k, c, d) in candidates {
        if !out.iter().any(|(k2, _, _)| *k2 == k) {
            out.push((k, c, d));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Endpoint and table reports.
// ---------------------------------------------------------------------------

/// Checks exactly whether markoff(a) = v.
pub fn verify_endpoint(a: &BiSeq, v: &AlgebraicReal) -> Result<bool, GapsError> {
    let m = markoff(a)?;
    Ok(m.value.compare(v)? == std::cmp::Ordering::Equal)
}

/// Which accumulation family to produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Accumulation {
    Low,
    High,
}

/// Sequences witnessing accumulation at the two ends of the longest gap:
/// low = ^∞3(43)^{k+l}3^∞ with Markoff value below √143/5 and increasing
/// to it; high = ^∞(4224)4(23)^k3^∞ decreasing to (13√3+13√7+√143)/26.
pub fn accumulation_witnesses(
    which: Accumulation,
    k: usize,
    l: usize,
) -> Result<(BiSeq, AlgebraicReal), GapsError> {
    if k == 0 && which == Accumulation::High {
        return Err(GapsError::InvalidClaim("k must be ≥ 1".into()));
    }
    if k + l == 0 {
        return Err(GapsError::InvalidClaim("k + l must be ≥ 1".into()));
    }
    let a = match which {
        Accumulation::Low => {
            let mut text = String::from("*(3)");
            for _ in 0..k + l {
                text.push_str("43");
            }
            text.push_str("(3)*");
            text.parse::<BiSeq>()?
        }
        Accumulation::High => {
            let mut text = String::from("*(4224)4");
            for _ in 0..k {
                text.push_str("23");
            }
            text.push_str("(3)*");
            text.parse::<BiSeq>()?
        }
    };
    let m = markoff(&a)?;
    Ok((a, m.value))
}

/// One row of the longest-gap report.
#[derive(Debug, Clone)]
pub struct GapReportRow {
    pub label: String,
    pub difference_decimal: String,
    pub within: bool,
}

/// The longest-gap report: the ten discrete-part sequences, their exact
/// Markoff values, and the eleven exact difference comparisons against the
/// gap width √7 − √143/5.
#[derive(Debug, Clone)]
pub struct GapReport {
    pub values: Vec<(String, String)>,
    pub rows: Vec<GapReportRow>,
}

/// Recomputes the ten smallest Markoff values and certifies that every
/// difference between neighbours (including the wraparound against √3 and
/// the defining gap width itself) is at most √7 − √143/5.
pub fn longest_gap_check() -> Result<GapReport, GapsError> {
    let two = AlgebraicReal::from_int(2);
    let table: [(&str, AlgebraicReal); 10] = [
        ("*(42)*", sqrt_int(13).checked_div(&AlgebraicReal::sqrt3()).unwrap()),
        ("*(42)3(42)*", AlgebraicReal::from_int(4).checked_div(&AlgebraicReal::sqrt3()).unwrap()),
        ("*(43)*", sqrt_int(143).checked_div(&AlgebraicReal::from_int(5)).unwrap()),
        ("*(4224)*", sqrt_int(7)),
        ("*(4)*", sqrt_int(8)),
        ("*(51522)*", (AlgebraicReal::from_int(4) * sqrt_int(26)).checked_div(&AlgebraicReal::from_int(7)).unwrap()),
        ("*(522)*", sqrt_int(10)),
        ("*(5252)*", sqrt_int(11)),
        ("*(534132)*", sqrt_int(435).checked_div(&AlgebraicReal::from_int(6)).unwrap()),
        ("*(5214)*", (&two * &sqrt_int(10)).checked_div(&AlgebraicReal::sqrt3()).unwrap()),
    ];
    let width = sqrt_int(7) - sqrt_int(143).checked_div(&AlgebraicReal::from_int(5)).unwrap();
    let mut values: Vec<(String, String)> = Vec::new();
    let mut ms: Vec<AlgebraicReal> = Vec::new();
    for (text, expected) in &table {
        let a: BiSeq = text.parse()?;
        let m = markoff(&a)?;
        if m.value.compare(expected)? != std::cmp::Ordering::Equal {
            return Err(GapsError::AssertionFailure(format!(
                "Markoff value of {text} is {}, expected {}",
                m.value.decimal(SIG),
                expected.decimal(SIG)
            )));
        }
        values.push((text.to_string(), m.value.decimal(SIG)));
        ms.push(m.value);
    }
    let mut rows: Vec<GapReportRow> = Vec::new();
    let mut check = |label: String, diff: AlgebraicReal| -> Result<(), GapsError> {
        let within = diff.compare(&width)? != std::cmp::Ordering::Greater;
        rows.push(GapReportRow {
            label: label.clone(),
            difference_decimal: diff.decimal(SIG),
            within,
        });
        if !within {
            return Err(GapsError::AssertionFailure(format!(
                "difference {label} = {} exceeds the gap width {}",
                diff.decimal(SIG),
                width.decimal(SIG)
            )));
        }
        Ok(())
    };
    for j in 0..9 {
        let diff = &ms[j + 1] - &ms[j];
        check(format!("M(A{}) - M(A{})", j + 2, j + 1), diff)?;
    }
    check(
        "M(A1) + sqrt3 - M(A10)".to_string(),
        &(&ms[0] + &AlgebraicReal::sqrt3()) - &ms[9],
    )?;
    check("sqrt7 - sqrt143/5 (the gap itself)".to_string(), width.clone())?;
    Ok(GapReport { values, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::value_tail;
    use crate::words::Tail;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn first_gap_certifies_at_window_four() {
        let claim = GapClaim::first_gap();
        let outcome = certify_gap(&claim, 6).unwrap();
        let cert = match outcome {
            GapOutcome::Certified(c) => c,
            GapOutcome::Inconclusive { window_length, survivors, sup_decimal } => panic!(
                "inconclusive at n={window_length} with {} survivors, sup {}",
                survivors.len(),
                sup_decimal
            ),
        };
        assert_eq!(cert.window_length, 4);
        assert_eq!(cert.claim.a_decimal, "2.39165214862028");
        assert_eq!(cert.claim.b_decimal, "2.64575131106459");
        assert!(cert.verify_checksum());
        // The (51)-cycle is pruned exactly at b.
        let fifteen = cert
            .pruned
            .iter()
            .find(|e| e.word == "51")
            .expect("51 pruned");
        assert_eq!(fifteen.bound_decimal, "2.64575131106459");
        // Survivors avoid 22 and 44 entirely: those windows are gone.
        for word in ["22", "44"] {
            assert!(
                cert.pruned.iter().all(|e| e.word != word),
                "{word} should die by liveness, not by a bound"
            );
        }
        // Replay from the serialized bytes alone.
        let json = cert.to_json();
        let parsed = GapCertificate::from_json(&json).unwrap();
        let report = replay_certificate(&parsed).unwrap();
        assert_eq!(report.window_length, 4);
        assert_eq!(report.survivors.len(), 41);
        assert!(report
            .survivors
            .iter()
            .all(|s| !s.to_string().contains("22") && !s.to_string().contains("44")));
        assert!(report.survivors.iter().all(|s| {
            s.digits().iter().all(|d| (2..=4).contains(&d.value()))
        }));
        // The surviving sup is exactly a = √143/5, attained by *(43)*.
        let sup: AlgebraicReal = crate::exact::parse_sexpr(&cert.surviving_sup).unwrap();
        assert_eq!(
            sup.compare(&claim.a).unwrap(),
            std::cmp::Ordering::Equal
        );
    }

    #[test]
    fn tampered_certificates_fail_replay() {
        let claim = GapClaim::first_gap();
        let cert = match certify_gap(&claim, 6).unwrap() {
            GapOutcome::Certified(c) => *c,
            _ => panic!("expected certificate"),
        };
        // Checksum tamper.
        let mut bad = cert.clone();
        bad.checksum = Some("0".repeat(64));
        assert!(replay_certificate(&bad).is_err());
        // Bound tamper (reseal so the checksum passes; replay must still
        // catch the wrong expression).
        let mut bad = cert.clone();
        bad.pruned[0].bound = "7".to_string();
        bad.seal();
        assert!(replay_certificate(&bad).is_err());
        // Dropping an entry breaks orbit closure or bound recomputation.
        let mut bad = cert.clone();
        bad.pruned.remove(0);
        bad.seal();
        assert!(replay_certificate(&bad).is_err());
    }

    #[test]
    fn claim_validation_rejects_wrong_witness() {
        let mut claim = GapClaim::first_gap();
        claim.witness_a = "*(4224)*".parse().unwrap();
        match certify_gap(&claim, 4) {
            Err(GapsError::InvalidClaim(_)) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn endpoint_checks() {
        let a: BiSeq = "*(433)*".parse().unwrap();
        let v = (AlgebraicReal::from_int(2) * sqrt_int(506))
            .checked_div(&AlgebraicReal::from_int(19))
            .unwrap();
        assert!(verify_endpoint(&a, &v).unwrap());

        let a: BiSeq = "*(43)*".parse().unwrap();
        assert!(!verify_endpoint(&a, &sqrt_int(7)).unwrap());

        let a: BiSeq = "*(4323243)*".parse().unwrap();
        let v = (AlgebraicReal::from_int(2) * sqrt_int(2_803_333))
            .checked_div(&AlgebraicReal::from_int(1405))
            .unwrap();
        assert!(verify_endpoint(&a, &v).unwrap());
    }

    #[test]
    fn accumulation_families() {
        let a143 = sqrt_int(143)
            .checked_div(&AlgebraicReal::from_int(5))
            .unwrap();
        let (_, v2) = accumulation_witnesses(Accumulation::Low, 1, 1).unwrap();
        assert_eq!(v2.compare(&a143).unwrap(), std::cmp::Ordering::Less);
        let (_, v10) = accumulation_witnesses(Accumulation::Low, 5, 5).unwrap();
        assert_eq!(v10.compare(&v2).unwrap(), std::cmp::Ordering::Greater);
        assert_eq!(v10.compare(&a143).unwrap(), std::cmp::Ordering::Less);

        // High family: M(A_k) = [(4224)^∞] + [4(23)^k 3^∞] exactly.
        let (_, v3) = accumulation_witnesses(Accumulation::High, 3, 0).unwrap();
        let left = value_tail(&Tail::periodic(w("4224")).unwrap()).unwrap();
        let right = value_tail(
            &Tail::new(w("4").concat(&w("23").repeat(3)), w("3")).unwrap(),
        )
        .unwrap();
        let expect = left + right;
        assert_eq!(v3.compare(&expect).unwrap(), std::cmp::Ordering::Equal);
        // Decreasing towards b₂ from above.
        let b2 = GapClaim::second_gap().b;
        let (_, v5) = accumulation_witnesses(Accumulation::High, 5, 0).unwrap();
        assert_eq!(v5.compare(&v3).unwrap(), std::cmp::Ordering::Less);
        assert_eq!(v5.compare(&b2).unwrap(), std::cmp::Ordering::Greater);
    }

    #[test]
    fn longest_gap_report() {
        let report = longest_gap_check().unwrap();
        assert_eq!(report.values.len(), 10);
        assert_eq!(report.rows.len(), 11);
        assert!(report.rows.iter().all(|r| r.within));
        // The A3 → A4 difference is the gap width itself.
        assert_eq!(
            report.rows[2].difference_decimal,
            report.rows[10].difference_decimal
        );
    }

    #[test]
    fn soundness_sampling_first_gap() {
        let claim = GapClaim::first_gap();
        let cert = match certify_gap(&claim, 6).unwrap() {
            GapOutcome::Certified(c) => *c,
            _ => panic!("expected certificate"),
        };
        let report = replay_certificate(&cert).unwrap();
        let survivors: Vec<Vec<u8>> = report.survivors.iter().map(|s| key_of(s)).collect();
        let n = report.window_length;
        let mut rng: u64 = 0x1234_5678_9abc_def0;
        let mut step = |bound: usize| {
            rng = rng
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((rng >> 33) as usize) % bound
        };
        // Alive sequences have Markoff value ≤ a.
        let mut done = 0;
        while done < 100 {
            let start = survivors[step(survivors.len())].clone();
            let mut word = start.clone();
            let mut ok = true;
            for _ in 0..step(6) + 1 {
                let succs: Vec<u8> = (1..=5u8)
                    .filter(|&d| {
                        let mut s = word[word.len() - (n - 1)..].to_vec();
                        s.push(d);
                        survivors.contains(&s)
                    })
                    .collect();
                if succs.is_empty() {
                    ok = false;
                    break;
                }
                word.push(succs[step(succs.len())]);
            }
            if !ok {
                continue;
            }
            // Close into a period if the wrap windows are alive too.
            let mut wrapped = word.clone();
            wrapped.extend_from_slice(&word[..n - 1]);
            let all_alive = wrapped.windows(n).all(|win| survivors.contains(&win.to_vec()));
            if !all_alive {
                continue;
            }
            let a = BiSeq::periodic(word_of(&word)).unwrap();
            let m = markoff(&a).unwrap();
            assert_ne!(
                m.value.compare(&claim.a).unwrap(),
                std::cmp::Ordering::Greater,
                "alive sequence {a} exceeds a"
            );
            done += 1;
        }
        // Sequences through a pruned window have Markoff value ≥ b.
        let mut done = 0;
        let pruned: Vec<&PrunedEntry> = cert
            .pruned
            .iter()
            .filter(|e| {
                let ds: Vec<char> = e.word.chars().collect();
                !ds.iter().all(|&c| c == '1') && !ds.iter().all(|&c| c == '5')
            })
            .collect();
        while done < 100 {
            let e = pruned[step(pruned.len())];
            let word: Word = e.word.parse().unwrap();
            let a = match BiSeq::periodic(word.clone()) {
                Ok(a) => a,
                Err(_) => continue,
            };
            let m = match markoff(&a) {
                Ok(m) => m,
                Err(_) => continue,
            };
            assert_ne!(
                m.value.compare(&claim.b).unwrap(),
                std::cmp::Ordering::Less,
                "pruned periodic {a} is below b"
            );
            done += 1;
        }
    }

    #[test]
    #[ignore]
    fn debug_second_gap_landscape() {
        let claim = GapClaim::second_gap();
        let target: usize = std::env::var("H6_DEBUG_N")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(9);
        let mut alive = AliveSet::initial();
        let mut round = 0usize;
        loop {
            loop {
                alive.sweep();
                let spec = alive.spec();
                let table = ContinuationTable::new(&spec, Dir::Min).unwrap();
                let et = EncTable::new(&spec, &table);
                let b_floor = enc_floor(&claim.b);
                let mut claimed: BTreeSet<Vec<u8>> = BTreeSet::new();
                let mut prunes: Vec<(Vec<u8>, usize, bool)> = Vec::new();
                for key in &alive.words {
                    if claimed.contains(key) {
                        continue;
                    }
                    for m in orbit_keys(key) {
                        claimed.insert(m);
                    }
                    if let Some((_, cut, dual)) =
                        find_pruning_cut(key, alive.n, &spec, &table, &et, &claim.b, b_floor)
                            .unwrap()
                    {
                        prunes.push((key.clone(), cut, dual));
                    }
                }
                if prunes.is_empty() {
                    break;
                }
                round += 1;
                for (rep, cut, dual) in prunes {
                    for (member, _, _) in member_entries(&rep, cut, dual, alive.n) {
                        if alive.words.remove(&member) {
                            eprintln!("n={} round {}: pruned {}", alive.n, round, word_of(&member));
                        }
                    }
                }
            }
            eprintln!("n={} fixpoint alive={}", alive.n, alive.words.len());
            if alive.n >= target {
                break;
            }
            alive.extend();
        }
        let spec = alive.spec();
        let table = ContinuationTable::new(&spec, Dir::Max).unwrap();
        let mut offenders = 0usize;
        for key in &alive.words {
            let w = word_of(key);
            let mut worst: Option<(usize, ExtReal)> = None;
            for cut in 1..alive.n {
                let v = cut_bound(&w, cut, &spec, &table).unwrap();
                if !ext_le(&v, &claim.a).unwrap() {
                    let replace = match &worst {
                        None => true,
                        Some((_, cur)) => v.compare(cur).unwrap() == std::cmp::Ordering::Greater,
                    };
                    if replace {
                        worst = Some((cut, v));
                    }
                }
            }
            if let Some((cut, v)) = worst {
                offenders += 1;
                eprintln!("  offender {} | cut {} sup-bound {}", w, cut, ext_decimal(&v));
            }
        }
        eprintln!("total offenders above a: {offenders} (of {} alive)", alive.words.len());
    }
}
