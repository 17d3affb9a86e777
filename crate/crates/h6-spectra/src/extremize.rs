//! Exact extremal tails over factor-avoidance subshifts.
//!
//! A subshift is given by an alphabet and a finite set of forbidden factors
//! (or directly by its set of allowed windows).  Because every digit map is
//! increasing on the positive reals, the minimizer or maximizer of [P] over
//! all admissible continuations of a prefix is found greedily: at each
//! automaton state take the smallest (or largest) digit that still admits an
//! infinite continuation.  The greedy walk repeats a state within finitely
//! many steps, so extremizers are eventually periodic; runs that fall into
//! the all-1 or all-5 cycle yield a parabolic cylinder endpoint instead,
//! reported as an unattained supremum or infimum.

use std::collections::HashMap;

use crate::exact::{AlgebraicReal, ExtReal};
use crate::expansion::{digit_matrix, matrix_of, value_tail, DigitMatrix, ExpansionError};
use crate::words::{Digit, Tail, Word};

/// Errors from subshift extremization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtremizeError {
    /// A context word is empty or walks outside the language.
    EmptyContext,
    Expansion(ExpansionError),
}

impl std::fmt::Display for ExtremizeError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExtremizeError::EmptyContext => {
                write!(f, "context is empty or inadmissible in the subshift")
            }
            ExtremizeError::Expansion(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ExtremizeError {}

impl From<ExpansionError> for ExtremizeError {
    fn from(e: ExpansionError) -> Self {
        ExtremizeError::Expansion(e)
    }
}

/// Direction of extremization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dir {
    Min,
    Max,
}

/// A compiled factor-avoidance subshift: a deterministic automaton over the
/// alphabet together with its live states (states from which an infinite
/// admissible continuation exists, the greatest fixpoint of "has an
/// admissible edge into the set").
#[derive(Debug, Clone)]
pub struct SubshiftSpec {
    alphabet: Vec<Digit>,
    start: usize,
    next: Vec<[Option<usize>; 5]>,
    live: Vec<bool>,
}

fn greatest_live_fixpoint(next: &[[Option<usize>; 5]]) -> Vec<bool> {
    let mut live = vec![true; next.len()];
    loop {
        let mut changed = false;
        for s in 0..next.len() {
            if live[s] {
                let ok = next[s]
                    .iter()
                    .any(|t| matches!(t, Some(u) if live[*u]));
                if !ok {
                    live[s] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            return live;
        }
    }
}

impl SubshiftSpec {
    /// Compiles a forbidden-factor list into a pattern automaton whose
    /// states are the proper prefixes of forbidden words, with failure
    /// transitions to the longest matching suffix.
    pub fn compile(alphabet: &[Digit], forbidden: &[Word]) -> SubshiftSpec {
        let mut alphabet: Vec<Digit> = alphabet.to_vec();
        alphabet.sort();
        alphabet.dedup();
        let forb: Vec<Vec<u8>> = forbidden
            .iter()
            .map(|w| w.digits().iter().map(|d| d.value()).collect())
            .collect();
        let mut states: Vec<Vec<u8>> = vec![Vec::new()];
        for w in &forb {
            for k in 1..w.len() {
                let p = w[..k].to_vec();
                if !states.contains(&p) {
                    states.push(p);
                }
            }
        }
        let is_forbidden_suffix = |t: &[u8]| -> bool {
            forb.iter()
                .any(|w| t.len() >= w.len() && t[t.len() - w.len()..] == w[..])
        };
        let mut next = Vec::with_capacity(states.len());
        for s in &states {
            let mut row = [None; 5];
            for d in &alphabet {
                let mut t = s.clone();
                t.push(d.value());
                if is_forbidden_suffix(&t) {
                    continue;
                }
                // Longest suffix of t that is a state.
                let target = (0..=t.len())
                    .find_map(|k| states.iter().position(|s2| s2[..] == t[k..]))
                    .expect("the empty state matches");
                row[(d.value() - 1) as usize] = Some(target);
            }
            next.push(row);
        }
        let live = greatest_live_fixpoint(&next);
        SubshiftSpec { alphabet, start: 0, next, live }
    }

    /// Builds the subshift whose admissible sequences are exactly those all
    /// of whose length-n factors belong to `windows`.
    pub fn from_allowed_windows(n: usize, windows: &[Word]) -> SubshiftSpec {
        assert!(n >= 2, "window length must be at least 2");
        assert!(windows.iter().all(|w| w.len() == n));
        let wins: Vec<Vec<u8>> = windows
            .iter()
            .map(|w| w.digits().iter().map(|d| d.value()).collect())
            .collect();
        let mut alphabet: Vec<Digit> = Vec::new();
        for w in windows {
            for d in w.digits() {
                if !alphabet.contains(d) {
                    alphabet.push(*d);
                }
            }
        }
        alphabet.sort();
        // States: digit strings of length < n (partial history) capped at
        // n−1 (the sliding gram).  BFS from the empty history.
        let mut index: HashMap<Vec<u8>, usize> = HashMap::new();
        let mut states: Vec<Vec<u8>> = vec![Vec::new()];
        index.insert(Vec::new(), 0);
        let mut next: Vec<[Option<usize>; 5]> = Vec::new();
        let mut q = 0;
        while q < states.len() {
            let s = states[q].clone();
            let mut row = [None; 5];
            for d in &alphabet {
                let mut t = s.clone();
                t.push(d.value());
                if t.len() == n {
                    if !wins.contains(&t) {
                        continue;
                    }
                    t.remove(0);
                }
                let target = *index.entry(t.clone()).or_insert_with(|| {
                    states.push(t.clone());
                    states.len() - 1
                });
                row[(d.value() - 1) as usize] = Some(target);
            }
            next.push(row);
            q += 1;
        }
        let live = greatest_live_fixpoint(&next);
        SubshiftSpec { alphabet, start: 0, next, live }
    }

    pub fn alphabet(&self) -> &[Digit] {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.next.len()
    }

    /// Walks a word from the start state; None if it leaves the language.
    pub fn state_after(&self, w: &Word) -> Option<usize> {
        let mut s = self.start;
        for d in w.digits() {
            s = self.next[s][(d.value() - 1) as usize]?;
        }
        Some(s)
    }

    pub fn is_live(&self, state: usize) -> bool {
        self.live[state]
    }

    /// True when the language contains at least one infinite sequence.
    pub fn has_live_start(&self) -> bool {
        self.live[self.start]
    }

    /// The greedy extremal successor of a live state: the best admissible
    /// digit whose target is live.
    fn greedy_step(&self, s: usize, dir: Dir) -> (Digit, usize) {
        let pick = |d: &Digit| -> Option<(Digit, usize)> {
            match self.next[s][(d.value() - 1) as usize] {
                Some(t) if self.live[t] => Some((*d, t)),
                _ => None,
            }
        };
        let found = match dir {
            Dir::Min => self.alphabet.iter().find_map(pick),
            Dir::Max => self.alphabet.iter().rev().find_map(pick),
        };
        found.expect("a live state has a live successor")
    }

    /// Greedy digits from a live state: (preperiod, cycle).
    fn greedy_digits(&self, from: usize, dir: Dir) -> (Vec<Digit>, Vec<Digit>) {
        let mut seen: HashMap<usize, usize> = HashMap::new();
        let mut digits: Vec<Digit> = Vec::new();
        let mut s = from;
        loop {
            if let Some(&k) = seen.get(&s) {
                let cycle = digits.split_off(k);
                return (digits, cycle);
            }
            seen.insert(s, digits.len());
            let (d, t) = self.greedy_step(s, dir);
            digits.push(d);
            s = t;
        }
    }
}

/// An exact extremizer of [prefix-continuations] over a subshift.
#[derive(Debug, Clone)]
pub enum ExtremalResult {
    /// The extremum is attained by this admissible eventually periodic tail.
    Attained(Tail),
    /// The greedy run enters the all-1 or all-5 parabolic cycle; the
    /// extremum is this cylinder endpoint, approached but never attained.
    UnattainedSup(ExtReal),
    /// The prefix admits no infinite continuation.
    Empty,
}

fn uniform_cycle(cycle: &[Digit], v: u8) -> bool {
    cycle.iter().all(|d| d.value() == v)
}

fn tail_value_of_run(
    pre: &Word,
    cycle: Vec<Digit>,
) -> Result<(ExtReal, bool), ExtremizeError> {
    if uniform_cycle(&cycle, 5) {
        let m = matrix_of(pre.digits());
        Ok((m.apply(&ExtReal::PosInfinity), false))
    } else if uniform_cycle(&cycle, 1) {
        let m = matrix_of(pre.digits());
        Ok((m.apply(&ExtReal::Finite(AlgebraicReal::zero())), false))
    } else {
        let t = Tail::new(pre.clone(), Word::new(cycle)).expect("nonempty cycle");
        Ok((ExtReal::Finite(value_tail(&t)?), true))
    }
}

/// The exact minimizer or maximizer of [P] over admissible continuations P
/// of `prefix`.
pub fn extremal_tail(
    prefix: &Word,
    spec: &SubshiftSpec,
    dir: Dir,
) -> Result<ExtremalResult, ExtremizeError> {
    let state = match spec.state_after(prefix) {
        Some(s) if spec.is_live(s) => s,
        _ => return Ok(ExtremalResult::Empty),
    };
    let (pre, cycle) = spec.greedy_digits(state, dir);
    let full_pre = prefix.concat(&Word::new(pre));
    if uniform_cycle(&cycle, 5) {
        let m = matrix_of(full_pre.digits());
        Ok(ExtremalResult::UnattainedSup(m.apply(&ExtReal::PosInfinity)))
    } else if uniform_cycle(&cycle, 1) {
        let m = matrix_of(full_pre.digits());
        Ok(ExtremalResult::UnattainedSup(
            m.apply(&ExtReal::Finite(AlgebraicReal::zero())),
        ))
    } else {
        let t = Tail::new(full_pre, Word::new(cycle)).expect("nonempty cycle");
        Ok(ExtremalResult::Attained(t))
    }
}

/// Memoized extremal continuation values for every live state of a spec.
/// Built once per (spec, dir); greedy successors form a functional graph,
/// so each state needs one Möbius application past its successor.
pub struct ContinuationTable {
    values: Vec<Option<(ExtReal, bool)>>,
}

impl ContinuationTable {
    pub fn new(spec: &SubshiftSpec, dir: Dir) -> Result<ContinuationTable, ExtremizeError> {
        let n = spec.state_count();
        let mut values: Vec<Option<(ExtReal, bool)>> = vec![None; n];
        for s0 in 0..n {
            if !spec.is_live(s0) || values[s0].is_some() {
                continue;
            }
            // Walk the greedy functional graph until a computed state or a
            // repeat within the current path.
            let mut path: Vec<(usize, Digit)> = Vec::new();
            let mut pos: HashMap<usize, usize> = HashMap::new();
            let mut s = s0;
            while values[s].is_none() && !pos.contains_key(&s) {
                pos.insert(s, path.len());
                let (d, t) = spec.greedy_step(s, dir);
                path.push((s, d));
                s = t;
            }
            let mut boundary = path.len();
            if values[s].is_none() {
                // Close the cycle: states path[pos[s]..].
                let k = pos[&s];
                let cycle: Vec<Digit> = path[k..].iter().map(|&(_, d)| d).collect();
                for (j, &(state, _)) in path[k..].iter().enumerate() {
                    let mut rot = cycle[j..].to_vec();
                    rot.extend_from_slice(&cycle[..j]);
                    values[state] = Some(tail_value_of_run(&Word::empty(), rot)?);
                }
                boundary = k;
            }
            // Unwind the tree part backwards.
            for j in (0..boundary).rev() {
                let (state, d) = path[j];
                let succ = if j + 1 < path.len() { path[j + 1].0 } else { s };
                let (v, att) = values[succ].clone().expect("successor computed");
                let nv = digit_matrix(d).apply(&v);
                values[state] = Some((nv, att));
            }
        }
        Ok(ContinuationTable { values })
    }

    pub fn value(&self, state: usize) -> Option<&(ExtReal, bool)> {
        self.values[state].as_ref()
    }
}

fn context_part(
    context: &Word,
    state: usize,
    spec: &SubshiftSpec,
    table: &ContinuationTable,
) -> Result<ExtReal, ExtremizeError> {
    if !spec.is_live(state) {
        return Err(ExtremizeError::EmptyContext);
    }
    let (v, _) = table.value(state).ok_or(ExtremizeError::EmptyContext)?;
    let m: DigitMatrix = matrix_of(context.digits());
    Ok(m.apply(v))
}

/// Exact extremal values of the two halves of a section through a window:
/// the first component extremizes [left* ++ leftward continuation], the
/// second [right ++ rightward continuation], both over completions keeping
/// the whole window admissible.  Leftward continuations run in the reversed
/// language, so the spec must be closed under reversal.
pub fn window_bounds(
    left: &Word,
    right: &Word,
    spec: &SubshiftSpec,
    dir: Dir,
) -> Result<(ExtReal, ExtReal), ExtremizeError> {
    let table = ContinuationTable::new(spec, dir)?;
    window_bounds_with(left, right, spec, &table)
}

/// As `window_bounds`, with a precomputed continuation table for the same
/// spec and direction.
pub fn window_bounds_with(
    left: &Word,
    right: &Word,
    spec: &SubshiftSpec,
    table: &ContinuationTable,
) -> Result<(ExtReal, ExtReal), ExtremizeError> {
    if left.is_empty() || right.is_empty() {
        return Err(ExtremizeError::EmptyContext);
    }
    let whole = left.concat(right);
    let q = spec.state_after(&whole).ok_or(ExtremizeError::EmptyContext)?;
    let right_part = context_part(right, q, spec, table)?;
    let rev = right.star().concat(&left.star());
    let p = spec.state_after(&rev).ok_or(ExtremizeError::EmptyContext)?;
    let left_part = context_part(&left.star(), p, spec, table)?;
    Ok((left_part, right_part))
}
