//! Markoff and Lagrange numbers of eventually periodic bi-infinite
//! sequences, the 5^k shift law, and a brute-force group-enumeration oracle.
//!
//! The Markoff number ℳ(A) is the supremum of L(P*|Q) = [P] + [Q] over all
//! sections of A together with the dual sections of A^∨.  For eventually
//! periodic A this supremum is computed *exactly* by a finite procedure:
//!
//! * periodic A: one section per cut phase, all attained;
//! * two-tailed A: one section per center cut, plus — for cuts sliding into
//!   a tail — per-phase families whose left values move monotonically in
//!   one direction (prepending a fixed word is an increasing Möbius map,
//!   so the direction is decided by a single exact comparison).  Each
//!   family's supremum is therefore either its first member or its limit,
//!   the corresponding cut of the periodic tail sequence; limits are
//!   reported with `attained = false`.
//!
//! Cuts in the left tail are cuts in the right tail of the reversal, and
//! dual sections are sections of the explicit dual, so the search runs over
//! the four-element symmetry orbit of A.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::exact::{AlgebraicReal, ExactError};
use crate::expansion::{matrix_of, value_tail, ExpansionError};
use crate::words::{BiSeq, Digit, Section, Tail, Word};

/// Errors from spectrum computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpectraError {
    Expansion(ExpansionError),
    /// The supplied section is not extremal for its sequence.
    NotExtremal,
}

impl std::fmt::Display for SpectraError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpectraError::Expansion(e) => write!(f, "{e}"),
            SpectraError::NotExtremal => {
                write!(f, "the given section does not attain the Markoff number")
            }
        }
    }
}

impl std::error::Error for SpectraError {}

impl From<ExpansionError> for SpectraError {
    fn from(e: ExpansionError) -> Self {
        SpectraError::Expansion(e)
    }
}

impl From<ExactError> for SpectraError {
    fn from(e: ExactError) -> Self {
        SpectraError::Expansion(ExpansionError::Exact(e))
    }
}

/// A spectrum value together with the section where it is attained or
/// approached.
#[derive(Debug, Clone)]
pub struct SpectrumValue {
    pub value: AlgebraicReal,
    pub witness: Section,
    pub attained: bool,
}

/// L(P*|Q) = [P] + [Q].
pub fn section_value(s: &Section) -> Result<AlgebraicReal, SpectraError> {
    Ok(value_tail(&s.left)? + value_tail(&s.right)?)
}

/// Dedup key: the unordered pair of tails (L is symmetric in them).
type TailKey = (Vec<u8>, Vec<u8>);

fn tail_key(t: &Tail) -> TailKey {
    (
        t.preperiod().digits().iter().map(|d| d.value()).collect(),
        t.period().digits().iter().map(|d| d.value()).collect(),
    )
}

fn section_key(s: &Section) -> (TailKey, TailKey) {
    let a = tail_key(&s.left);
    let b = tail_key(&s.right);
    if a <= b { (a, b) } else { (b, a) }
}

struct Candidate {
    value: AlgebraicReal,
    witness: Section,
    attained: bool,
}

/// Sections of a periodic sequence: one per cut phase, all attained.
fn periodic_candidates(w: &Word, out: &mut Vec<Candidate>) -> Result<(), SpectraError> {
    for i in 0..w.len() {
        let rot = w.rotation(i);
        let left = Tail::periodic(rot.star()).expect("nonempty");
        let right = Tail::periodic(rot).expect("nonempty");
        let s = Section::new(left, right);
        let value = section_value(&s)?;
        out.push(Candidate { value, witness: s, attained: true });
    }
    Ok(())
}

/// Sections of a two-tailed sequence at center cuts and right-tail cuts.
/// (Left-tail cuts are covered by running this on the reversal.)
fn two_tailed_candidates(
    l: &Word,
    c: &Word,
    r: &Word,
    out: &mut Vec<Candidate>,
) -> Result<(), SpectraError> {
    // Center cuts j = 0..=|c|: P reads the first j center digits outward,
    // then the left period.
    for j in 0..=c.len() {
        let left = Tail::new(c.slice(0..j).star(), l.clone())?;
        let right = Tail::new(c.slice(j..c.len()), r.clone())?;
        let s = Section::new(left, right);
        let value = section_value(&s)?;
        out.push(Candidate { value, witness: s, attained: true });
    }
    // Cuts inside the right tail, at phase t after m ≥ 0 whole periods.
    // [Q] is constant in m; [P] moves monotonically, in the direction of a
    // single comparison (independent of t and m: a common prefix is an
    // increasing Möbius map).
    let gamma = Tail::new(c.star(), l.clone())?;
    let rho_gamma = Tail::new(r.star().concat(&c.star()), l.clone())?;
    let increasing = matches!(
        value_tail(&rho_gamma)?.compare(&value_tail(&gamma)?)?,
        std::cmp::Ordering::Greater
    );
    if increasing {
        // Per-phase suprema are the limits: sections of the periodic
        // right-tail sequence, approached but not attained.
        for t in 0..r.len() {
            let rot = r.rotation(t);
            let left = Tail::periodic(rot.star()).expect("nonempty");
            let right = Tail::periodic(rot).expect("nonempty");
            let s = Section::new(left, right);
            let value = section_value(&s)?;
            out.push(Candidate { value, witness: s, attained: false });
        }
    } else {
        // Per-phase suprema at m = 0; t = 0 is the last center cut above.
        for t in 1..r.len() {
            let left = Tail::new(r.slice(0..t).star().concat(&c.star()), l.clone())?;
            let right = Tail::new(r.slice(t..r.len()), r.clone())?;
            let s = Section::new(left, right);
            let value = section_value(&s)?;
            out.push(Candidate { value, witness: s, attained: true });
        }
    }
    Ok(())
}

fn best_candidate(cands: Vec<Candidate>) -> Result<SpectrumValue, SpectraError> {
    let mut seen: HashSet<(TailKey, TailKey)> = HashSet::new();
    let mut best: Option<Candidate> = None;
    for cand in cands {
        if !seen.insert(section_key(&cand.witness)) {
            continue;
        }
        best = Some(match best.take() {
            None => cand,
            Some(b) => match cand.value.compare(&b.value)? {
                std::cmp::Ordering::Greater => cand,
                std::cmp::Ordering::Equal if cand.attained && !b.attained => cand,
                _ => b,
            },
        });
    }
    let b = best.expect("at least one section exists");
    Ok(SpectrumValue {
        value: b.value,
        witness: b.witness,
        attained: b.attained,
    })
}

/// The Markoff number ℳ(A): the exact supremum of section values over A and
/// its dual, with a witness section.
pub fn markoff(a: &BiSeq) -> Result<SpectrumValue, SpectraError> {
    let mut cands = Vec::new();
    match a {
        BiSeq::Periodic(w) => {
            periodic_candidates(w, &mut cands)?;
            periodic_candidates(&w.vee(), &mut cands)?;
        }
        BiSeq::TwoTailed { .. } => {
            for b in [a.clone(), a.star(), a.vee(), a.vee().star()] {
                match b {
                    BiSeq::TwoTailed { left, center, right } => {
                        two_tailed_candidates(&left, &center, &right, &mut cands)?;
                    }
                    BiSeq::Periodic(_) => unreachable!("orbit preserves the two-tailed shape"),
                }
            }
        }
    }
    best_candidate(cands)
}

/// The Lagrange number ℒ(A): for periodic A it equals ℳ(A); for a two-tailed
/// sequence only the two tail limits survive the limsup.
pub fn lagrange(a: &BiSeq) -> Result<SpectrumValue, SpectraError> {
    match a {
        BiSeq::Periodic(_) => markoff(a),
        BiSeq::TwoTailed { left, right, .. } => {
            let ml = markoff(&BiSeq::periodic(left.clone())?)?;
            let mr = markoff(&BiSeq::periodic(right.clone())?)?;
            let best = match ml.value.compare(&mr.value)? {
                std::cmp::Ordering::Less => mr,
                _ => ml,
            };
            Ok(SpectrumValue { attained: false, ..best })
        }
    }
}

impl From<crate::words::WordsError> for SpectraError {
    fn from(_: crate::words::WordsError) -> Self {
        SpectraError::Expansion(ExpansionError::ParabolicWord)
    }
}

/// Rebuilds the bi-infinite sequence a section cuts through.
fn sequence_of_section(s: &Section) -> Result<BiSeq, SpectraError> {
    let center = s.left.preperiod().star().concat(s.right.preperiod());
    Ok(BiSeq::two_tailed(
        s.left.period().clone(),
        center,
        s.right.period().clone(),
    )?)
}

/// Inserts 5^k at the bar of an extremal section and returns the Markoff
/// number of the new sequence: ℳ(P* 5^k Q) = ℳ(A) + √3·k.
pub fn shift_5k(s: &Section, k: usize) -> Result<SpectrumValue, SpectraError> {
    let a = sequence_of_section(s)?;
    let m = markoff(&a)?;
    let given = section_value(s)?;
    if given.compare(&m.value)? != std::cmp::Ordering::Equal {
        return Err(SpectraError::NotExtremal);
    }
    if k == 0 {
        return Ok(m);
    }
    let five = Word::new(vec![Digit::new(5).unwrap(); k]);
    let center = s
        .left
        .preperiod()
        .star()
        .concat(&five)
        .concat(s.right.preperiod());
    let shifted = BiSeq::two_tailed(
        s.left.period().clone(),
        center,
        s.right.period().clone(),
    )?;
    markoff(&shifted)
}

const SQRT3_F64: f64 = 1.732_050_807_568_877_2;

fn digit_matrix_f64(d: u8) -> [f64; 4] {
    match d {
        1 => [1.0, 0.0, SQRT3_F64, 1.0],
        2 => [SQRT3_F64, 1.0, 2.0, SQRT3_F64],
        3 => [2.0, SQRT3_F64, SQRT3_F64, 2.0],
        4 => [SQRT3_F64, 2.0, 1.0, SQRT3_F64],
        5 => [1.0, SQRT3_F64, 0.0, 1.0],
        _ => unreachable!(),
    }
}

fn mat_mul_f64(m: &[f64; 4], n: &[f64; 4]) -> [f64; 4] {
    [
        m[0] * n[0] + m[1] * n[2],
        m[0] * n[1] + m[1] * n[3],
        m[2] * n[0] + m[3] * n[2],
        m[2] * n[1] + m[3] * n[3],
    ]
}

/// |f(x, y)| for f = (x + [P]y)(x − [Q]y).
fn form_abs(x: f64, y: f64, p: f64, q: f64) -> f64 {
    ((x + p * y) * (x - q * y)).abs()
}

/// The four first columns realized by S^e N_w S^f for e, f ∈ {0, 1}:
/// (a, c), (b, d), (−c, a), (−d, b).
fn family_abs(m: &[f64; 4], fam: u8, p: f64, q: f64) -> f64 {
    match fam {
        0 => form_abs(m[0], m[2], p, q),
        1 => form_abs(m[1], m[3], p, q),
        2 => form_abs(-m[2], m[0], p, q),
        3 => form_abs(-m[3], m[1], p, q),
        _ => unreachable!(),
    }
}

struct TaskResult {
    min_abs: f64,
    // (digits, family, |f|)
    candidates: Vec<(Vec<u8>, u8, f64)>,
}

const SLACK: f64 = 1e-6;

fn push_candidate(res: &mut TaskResult, digits: &[u8], fam: u8, v: f64) {
    if v < res.min_abs {
        res.min_abs = v;
    }
    if v <= res.min_abs * (1.0 + SLACK) + 1e-12 {
        res.candidates.push((digits.to_vec(), fam, v));
        if res.candidates.len() > 4096 {
            let cut = res.min_abs * (1.0 + SLACK) + 1e-12;
            res.candidates.retain(|(_, _, x)| *x <= cut);
        }
    }
}

fn dfs(
    m: &[f64; 4],
    digits: &mut Vec<u8>,
    depth: usize,
    p: f64,
    q: f64,
    res: &mut TaskResult,
) {
    for fam in 0..4u8 {
        let v = family_abs(m, fam, p, q);
        push_candidate(res, digits, fam, v);
    }
    if digits.len() >= depth {
        return;
    }
    for d in 1..=5u8 {
        let child = mat_mul_f64(m, &digit_matrix_f64(d));
        digits.push(d);
        dfs(&child, digits, depth, p, q, res);
        digits.pop();
    }
}

/// A section of `a` whose form f_{P*|Q} defines ℳ(A) = sup √Δ(f)/|f(g)|.
fn defining_section(a: &BiSeq) -> Section {
    match a {
        BiSeq::Periodic(w) => Section::new(
            Tail::periodic(w.star()).expect("nonempty"),
            Tail::periodic(w.clone()).expect("nonempty"),
        ),
        BiSeq::TwoTailed { left, center, right } => Section::new(
            Tail::periodic(left.clone()).expect("nonempty"),
            Tail::new(center.clone(), right.clone()).expect("nonempty"),
        ),
    }
}

/// Brute-force lower approximation of ℳ(A): enumerates the group elements
/// S^e N_w S^f with |w| ≤ depth (each element exactly once up to sign),
/// evaluates √Δ(f)/|f(g)| for the defining section's form in floating
/// point, then re-evaluates the shortlisted near-minimal |f(g)| exactly and
/// returns the exact maximum found.  Monotone in depth; never exceeds ℳ(A).
pub fn brute_force_markoff(a: &BiSeq, depth: usize) -> Result<AlgebraicReal, SpectraError> {
    let s0 = defining_section(a);
    let p = value_tail(&s0.left)?;
    let q = value_tail(&s0.right)?;
    let l = p.clone() + q.clone();
    let (p64, q64) = (p.to_f64(), q.to_f64());

    // Root families: the empty word gives only the identity (value √Δ/1)
    // and S (|f(0,1)| = [P][Q]); S^e ε S^f duplicates them.
    let mut shortlist: Vec<(Vec<u8>, u8, f64)> = vec![
        (Vec::new(), 0, 1.0),
        (Vec::new(), 2, form_abs(0.0, 1.0, p64, q64)),
    ];
    let mut min_abs = shortlist
        .iter()
        .map(|&(_, _, v)| v)
        .fold(f64::INFINITY, f64::min);

    if depth >= 1 {
        let mut prefixes: Vec<Vec<u8>> = Vec::new();
        for d1 in 1..=5u8 {
            if depth == 1 {
                prefixes.push(vec![d1]);
            } else {
                for d2 in 1..=5u8 {
                    prefixes.push(vec![d1, d2]);
                }
            }
        }
        // Length-1 words when depth ≥ 2 (the tasks start at length 2).
        if depth >= 2 {
            for d1 in 1..=5u8 {
                let m = digit_matrix_f64(d1);
                for fam in 0..4u8 {
                    let v = family_abs(&m, fam, p64, q64);
                    if v < min_abs {
                        min_abs = v;
                    }
                    shortlist.push((vec![d1], fam, v));
                }
            }
        }
        let results: Vec<TaskResult> = prefixes
            .par_iter()
            .map(|prefix| {
                let mut m = [1.0, 0.0, 0.0, 1.0];
                for &d in prefix {
                    m = mat_mul_f64(&m, &digit_matrix_f64(d));
                }
                let mut res = TaskResult { min_abs: f64::INFINITY, candidates: Vec::new() };
                let mut digits = prefix.clone();
                dfs(&m, &mut digits, depth, p64, q64, &mut res);
                res
            })
            .collect();
        for r in results {
            min_abs = min_abs.min(r.min_abs);
            shortlist.extend(r.candidates);
        }
    }

    let cut = min_abs * (1.0 + SLACK) + 1e-12;
    let mut best = l.clone(); // identity: |f| = 1 exactly
    for (digits, fam, approx) in shortlist {
        if approx > cut {
            continue;
        }
        let word: Vec<Digit> = digits.iter().map(|&d| Digit::new(d).unwrap()).collect();
        let m = matrix_of(&word);
        let (x, y) = match fam {
            0 => (
                AlgebraicReal::from_qs3(m.a.clone()),
                AlgebraicReal::from_qs3(m.c.clone()),
            ),
            1 => (
                AlgebraicReal::from_qs3(m.b.clone()),
                AlgebraicReal::from_qs3(m.d.clone()),
            ),
            2 => (
                AlgebraicReal::from_qs3(-m.c.clone()),
                AlgebraicReal::from_qs3(m.a.clone()),
            ),
            3 => (
                AlgebraicReal::from_qs3(-m.d.clone()),
                AlgebraicReal::from_qs3(m.b.clone()),
            ),
            _ => unreachable!(),
        };
        let f_exact = (x.clone() + p.clone() * y.clone()) * (x - q.clone() * y);
        let f_abs = match f_exact.sign()? {
            0 => continue, // |f(g)| = 0 cannot occur for hyperbolic forms
            s if s < 0 => AlgebraicReal::zero() - f_exact,
            _ => f_exact,
        };
        let value = l.checked_div(&f_abs)?;
        if value.compare(&best)? == std::cmp::Ordering::Greater {
            best = value;
        }
    }
    Ok(best)
}
