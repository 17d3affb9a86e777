//! The gap-certificate file format.
//!
//! Certificates are canonical JSON: fixed key order (struct declaration
//! order), compact separators, entries sorted by (round, word), and a
//! sha-256 checksum over the body serialized with the checksum field
//! absent.  All bounds are exact s-expressions; decimal fields are display
//! annotations only and never participate in verification arithmetic
//! (replay recomputes and compares them too, as a formatting check).

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub(crate) const FORMAT: &str = "h6-gap-certificate/1";

/// The claimed gap, in exact s-expression form, with witness sequences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimBody {
    pub a: String,
    pub a_decimal: String,
    pub b: String,
    pub b_decimal: String,
    pub witness_a: String,
    pub witness_b: String,
}

/// One pruned window: the bound is the exact infimum of section values over
/// completions at `cut` — of the window itself when `dual` is false, of its
/// digitwise complement when `dual` is true (a section of the complemented
/// sequence bounds the same Markoff value).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrunedEntry {
    pub word: String,
    pub cut: usize,
    pub dual: bool,
    pub round: usize,
    pub bound: String,
    pub bound_decimal: String,
}

/// A complete, replayable gap certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapCertificate {
    pub format: String,
    pub claim: ClaimBody,
    pub window_length: usize,
    pub rounds: usize,
    pub pruned: Vec<PrunedEntry>,
    pub surviving_sup: String,
    pub surviving_sup_decimal: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub checksum: Option<String>,
}

impl GapCertificate {
    /// The canonical body bytes: the certificate serialized with the
    /// checksum field absent.
    pub fn canonical_body(&self) -> String {
        let mut c = self.clone();
        c.checksum = None;
        serde_json::to_string(&c).expect("certificate serializes")
    }

    pub fn compute_checksum(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.canonical_body().as_bytes());
        let digest = h.finalize();
        let mut out = String::with_capacity(64);
        for byte in digest {
            out.push_str(&format!("{byte:02x}"));
        }
        out
    }

    pub fn seal(&mut self) {
        self.checksum = None;
        self.checksum = Some(self.compute_checksum());
    }

    pub fn verify_checksum(&self) -> bool {
        match &self.checksum {
            Some(c) => *c == self.compute_checksum(),
            None => false,
        }
    }

    /// Canonical JSON including the checksum; byte-identical across runs.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<GapCertificate, String> {
        let cert: GapCertificate =
            serde_json::from_str(s).map_err(|e| format!("malformed certificate JSON: {e}"))?;
        if cert.format != FORMAT {
            return Err(format!(
                "unsupported certificate format {:?} (expected {FORMAT:?})",
                cert.format
            ));
        }
        Ok(cert)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> GapCertificate {
        GapCertificate {
            format: FORMAT.to_string(),
            claim: ClaimBody {
                a: "(/ (sqrt 143) 5)".into(),
                a_decimal: "2.39165214862028".into(),
                b: "(sqrt 7)".into(),
                b_decimal: "2.64575131106459".into(),
                witness_a: "*(43)*".into(),
                witness_b: "*(51)*".into(),
            },
            window_length: 4,
            rounds: 3,
            pruned: vec![PrunedEntry {
                word: "55".into(),
                cut: 1,
                dual: false,
                round: 1,
                bound: "(* 2 (sqrt 3))".into(),
                bound_decimal: "3.46410161513775".into(),
            }],
            surviving_sup: "(/ (sqrt 143) 5)".into(),
            surviving_sup_decimal: "2.39165214862028".into(),
            checksum: None,
        }
    }

    #[test]
    fn checksum_round_trip() {
        let mut c = sample();
        assert!(!c.verify_checksum());
        c.seal();
        assert!(c.verify_checksum());
        let json = c.to_json();
        let back = GapCertificate::from_json(&json).unwrap();
        assert_eq!(back, c);
        assert!(back.verify_checksum());
        // Canonical bytes are stable.
        assert_eq!(back.to_json(), json);
        // Any body change invalidates the checksum.
        let mut tampered = back.clone();
        tampered.rounds = 4;
        assert!(!tampered.verify_checksum());
    }

    #[test]
    fn format_field_is_checked() {
        let mut c = sample();
        c.format = "h6-gap-certificate/2".into();
        c.seal();
        assert!(GapCertificate::from_json(&c.to_json()).is_err());
    }

    #[test]
    fn key_order_is_declaration_order() {
        let mut c = sample();
        c.seal();
        let json = c.to_json();
        let format_pos = json.find("\"format\"").unwrap();
        let claim_pos = json.find("\"claim\"").unwrap();
        let pruned_pos = json.find("\"pruned\"").unwrap();
        let checksum_pos = json.find("\"checksum\"").unwrap();
        assert!(format_pos < claim_pos && claim_pos < pruned_pos && pruned_pos < checksum_pos);
    }
}
