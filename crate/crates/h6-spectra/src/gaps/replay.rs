//! Independent replay verification of gap certificates.
//!
//! Replay trusts nothing in the certificate beyond the schedule it encodes:
//! it checks the checksum, re-verifies the claim endpoints against freshly
//! computed Markoff values, re-runs the alive-set evolution round by round,
//! recomputes every pruning bound from scratch (byte-identical s-expression
//! and decimal), re-checks each exact inequality against the claimed upper
//! endpoint, and finally recomputes the surviving supremum and compares it
//! against the lower endpoint.  Any discrepancy is an error.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::exact::parse_sexpr;
use crate::extremize::{ContinuationTable, Dir};
use crate::spectra::markoff;
use crate::words::{BiSeq, Word};

use super::{
    cut_bound, ext_decimal, ext_ge, ext_le, ext_sexpr, key_of, orbit_keys, surviving_sup, EncTable,
    word_of, AliveSet, GapCertificate, GapsError, PrunedEntry, SIG,
};

/// Summary of a successful replay.
#[derive(Debug, Clone)]
pub struct ReplayReport {
    pub window_length: usize,
    /// The alive windows remaining after all certified prunes and sweeps.
    pub survivors: Vec<Word>,
    pub ub_decimal: String,
}

fn fail(m: String) -> GapsError {
    GapsError::Certificate(m)
}

/// Sweeps, erroring out if the alive language dies (a valid certificate
/// never empties it: the claim's witnesses are alive forever).
fn sweep_nonempty(alive: &mut AliveSet) -> Result<(), GapsError> {
    alive.sweep();
    if alive.words.is_empty() {
        return Err(fail("alive language emptied during replay".into()));
    }
    Ok(())
}

/// Verifies `cert` from scratch.  Returns the surviving windows at the
/// certified length on success.
pub fn replay_certificate(cert: &GapCertificate) -> Result<ReplayReport, GapsError> {
    if cert.format != super::certificate::FORMAT {
        return Err(fail(format!("unsupported format {:?}", cert.format)));
    }
    if !cert.verify_checksum() {
        return Err(fail("checksum mismatch".into()));
    }
    if cert.rounds > 100_000 || cert.window_length > 64 {
        return Err(fail("implausible round or window count".into()));
    }

    // Endpoints: exact values, ordering, decimal annotations, witnesses.
    let a = parse_sexpr(&cert.claim.a)?;
    let b = parse_sexpr(&cert.claim.b)?;
    if a.compare(&b)? != Ordering::Less {
        return Err(fail("claim endpoints not ordered a < b".into()));
    }
    if cert.claim.a_decimal != a.decimal(SIG) || cert.claim.b_decimal != b.decimal(SIG) {
        return Err(fail("claim decimal annotations do not match the exact endpoints".into()));
    }
    let wa: BiSeq = cert.claim.witness_a.parse()?;
    if markoff(&wa)?.value.compare(&a)? != Ordering::Equal {
        return Err(fail(format!("witness {wa} does not attain the endpoint a")));
    }
    let wb: BiSeq = cert.claim.witness_b.parse()?;
    if markoff(&wb)?.value.compare(&b)? != Ordering::Equal {
        return Err(fail(format!("witness {wb} does not attain the endpoint b")));
    }

    // Group the pruned entries by round, preserving the round structure.
    let mut groups: Vec<Vec<&PrunedEntry>> = vec![Vec::new(); cert.rounds];
    for e in &cert.pruned {
        if e.round == 0 || e.round > cert.rounds {
            return Err(fail(format!("entry {} has round {} outside 1..={}", e.word, e.round, cert.rounds)));
        }
        groups[e.round - 1].push(e);
    }
    if let Some(r) = groups.iter().position(|g| g.is_empty()) {
        return Err(fail(format!("round {} has no entries", r + 1)));
    }

    let mut alive = AliveSet::initial();
    for (i, group) in groups.iter().enumerate() {
        let round = i + 1;
        let words: Vec<Word> = group
            .iter()
            .map(|e| e.word.parse::<Word>())
            .collect::<Result<_, _>>()?;
        let glen = words[0].len();
        if words.iter().any(|w| w.len() != glen) {
            return Err(fail(format!("round {round} mixes window lengths")));
        }
        if glen < alive.n {
            return Err(fail(format!("round {round} regresses to window length {glen}")));
        }
        // Catch up with the deepening schedule: at every intermediate
        // length the certificate claims no prunes, so the alive set just
        // sweeps and extends.
        while alive.n < glen {
            sweep_nonempty(&mut alive)?;
            alive.extend();
        }
        sweep_nonempty(&mut alive)?;

        // All bounds in a round are evaluated against the same snapshot.
        let spec = alive.spec();
        let table = ContinuationTable::new(&spec, Dir::Min)?;
        let group_keys: BTreeSet<Vec<u8>> = words.iter().map(key_of).collect();
        if group_keys.len() != words.len() {
            return Err(fail(format!("round {round} repeats a window")));
        }
        for (e, w) in group.iter().zip(&words) {
            let key = key_of(w);
            if !alive.words.contains(&key) {
                return Err(fail(format!("round {round}: window {} is not alive", e.word)));
            }
            for m in orbit_keys(&key) {
                if !group_keys.contains(&m) {
                    return Err(fail(format!(
                        "round {round}: window {} pruned without its conjugate {}",
                        e.word,
                        word_of(&m)
                    )));
                }
            }
            if e.cut == 0 || e.cut >= glen {
                return Err(fail(format!("round {round}: window {} has cut {} outside the interior", e.word, e.cut)));
            }
            let target = if e.dual { w.vee() } else { w.clone() };
            let bound = cut_bound(&target, e.cut, &spec, &table)?;
            if ext_sexpr(&bound) != e.bound {
                return Err(fail(format!(
                    "round {round}: recomputed bound for {} is {}, certificate says {}",
                    e.word,
                    ext_sexpr(&bound),
                    e.bound
                )));
            }
            if ext_decimal(&bound) != e.bound_decimal {
                return Err(fail(format!("round {round}: decimal annotation mismatch for {}", e.word)));
            }
            if !ext_ge(&bound, &b)? {
                return Err(fail(format!("round {round}: bound for {} is below b", e.word)));
            }
        }
        for k in &group_keys {
            alive.words.remove(k);
        }
    }

    // Reach the certified window length and take the final sweep.
    if cert.window_length < alive.n {
        return Err(fail("window_length is shorter than the last pruned round".into()));
    }
    while alive.n < cert.window_length {
        sweep_nonempty(&mut alive)?;
        alive.extend();
    }
    sweep_nonempty(&mut alive)?;
    if !alive.is_symmetry_closed() {
        return Err(fail("surviving language is not closed under reversal and complement".into()));
    }

    // Recompute the supremum over the survivors and compare with a.
    let spec = alive.spec();
    let table = ContinuationTable::new(&spec, Dir::Max)?;
    let et = EncTable::new(&spec, &table);
    let (ub, ub_expr, ub_dec) = surviving_sup(&alive, &spec, &table, &et)?;
    if ub_expr != cert.surviving_sup {
        return Err(fail(format!(
            "recomputed surviving supremum {ub_expr} differs from certificate {}",
            cert.surviving_sup
        )));
    }
    if ub_dec != cert.surviving_sup_decimal {
        return Err(fail("surviving supremum decimal annotation mismatch".into()));
    }
    if !ext_le(&ub, &a)? {
        return Err(fail(format!("surviving supremum {ub_dec} exceeds a")));
    }

    Ok(ReplayReport {
        window_length: alive.n,
        survivors: alive.words.iter().map(|k| word_of(k)).collect(),
        ub_decimal: ub_dec,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{certify_gap, GapClaim, GapOutcome};
    use super::*;

    fn first_gap_cert() -> GapCertificate {
        match certify_gap(&GapClaim::first_gap(), 6).unwrap() {
            GapOutcome::Certified(c) => *c,
            _ => panic!("expected certificate"),
        }
    }

    #[test]
    fn rounds_field_must_match_entries() {
        let mut cert = first_gap_cert();
        cert.rounds += 1;
        cert.seal();
        assert!(replay_certificate(&cert).is_err());
    }

    #[test]
    fn duplicated_entries_are_rejected() {
        let mut cert = first_gap_cert();
        let e = cert.pruned[0].clone();
        cert.pruned.insert(0, e);
        cert.seal();
        assert!(replay_certificate(&cert).is_err());
    }

    #[test]
    fn format_is_enforced() {
        let mut cert = first_gap_cert();
        cert.format = "h6-gap-certificate/0".into();
        cert.seal();
        assert!(replay_certificate(&cert).is_err());
    }
}
