//! Unexpectedness: every line arrangement satisfying the incidences is a pencil.
//!
//! An arrangement satisfying the incidences either realizes the structure
//! exactly or makes some points coincide, and then realizes the closure of
//! that coincidence. So we walk the coarsenings reachable by repeated pair
//! merges: pencils are fine, every other coarsening must fail to realize.
//! Closure is exact; realizability failure is randomized evidence.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::realize::{generic_realizability, RealizabilityVerdict, Witness};
use super::{coarsening_scan, collapse_closure, IncidenceStructure, ScanReport, StructureJson};
use crate::error::{Error, Result};

/// Coarsenings explored before giving up.
const MAX_COARSENINGS: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertificateVerdict {
    #[serde(rename = "UNEXPECTED")]
    Unexpected,
    #[serde(rename = "NOT_UNEXPECTED")]
    NotUnexpected,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl std::fmt::Display for CertificateVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Unexpected => "UNEXPECTED",
            Self::NotUnexpected => "NOT_UNEXPECTED",
            Self::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: CertificateVerdict,
    /// Every single pair merge closes up to a pencil.
    pub all_collapse: bool,
    pub scan: ScanReport,
    /// Realizability of the structure itself.
    pub exact: RealizabilityVerdict,
    /// Non-pencil proper coarsenings visited (all failed unless a witness is given).
    pub coarsenings_tested: usize,
    pub realized_structure: Option<StructureJson>,
    pub witness: Option<Witness>,
    pub evidence: String,
}

fn key(s: &IncidenceStructure) -> Vec<Vec<usize>> {
    let mut p = s.points.clone();
    p.sort();
    p
}

pub fn unexpected_certify(s: &IncidenceStructure, seed: u64, trials: usize) -> Result<Certificate> {
    if s.is_pencil() {
        return Err(Error::Domain("input is a pencil".into()));
    }
    let scan = coarsening_scan(s);
    let exact = generic_realizability(s, seed, trials);
    let mut cert = Certificate {
        verdict: CertificateVerdict::Inconclusive,
        all_collapse: scan.all_collapse,
        scan,
        exact: exact.clone(),
        coarsenings_tested: 0,
        realized_structure: None,
        witness: None,
        evidence: String::new(),
    };
    match &exact {
        RealizabilityVerdict::Realizable { witness } => {
            cert.verdict = CertificateVerdict::NotUnexpected;
            cert.witness = Some(witness.clone());
            cert.evidence = "the structure itself has a rational realization".into();
            return Ok(cert);
        }
        RealizabilityVerdict::Unknown { reason } => {
            cert.evidence = format!("realizability undecided: {reason}");
            return Ok(cert);
        }
        RealizabilityVerdict::GenericFail { .. } => {}
    }

    let mut seen: BTreeSet<Vec<Vec<usize>>> = BTreeSet::from([key(s)]);
    let mut queue: VecDeque<IncidenceStructure> = VecDeque::from([s.clone()]);
    while let Some(t) = queue.pop_front() {
        // Children of `t`, smallest coarsenings first.
        let mut kids: Vec<(usize, (usize, usize), IncidenceStructure)> = Vec::new();
        let n = t.points.len();
        for a in 0..n {
            for b in a + 1..n {
                let c = collapse_closure(&t, &[(a, b)])?;
                if c.is_pencil || !seen.insert(key(&c.structure)) {
                    continue;
                }
                let absorbed = c.classes.iter().map(|g| g.len()).sum();
                kids.push((absorbed, (a, b), c.structure));
            }
        }
        kids.sort_by_key(|(k, pair, _)| (*k, *pair));
        for (_, _, u) in kids {
            cert.coarsenings_tested += 1;
            if cert.coarsenings_tested > MAX_COARSENINGS {
                cert.evidence = format!("more than {MAX_COARSENINGS} non-pencil coarsenings; search stopped");
                return Ok(cert);
            }
            if let RealizabilityVerdict::Realizable { witness } = generic_realizability(&u, seed, trials) {
                cert.verdict = CertificateVerdict::NotUnexpected;
                cert.realized_structure = Some(u.to_json());
                cert.witness = Some(witness);
                cert.evidence = "a non-pencil coarsening has a rational realization".into();
                return Ok(cert);
            }
            queue.push_back(u);
        }
    }
    cert.verdict = CertificateVerdict::Unexpected;
    cert.evidence = if cert.all_collapse {
        format!(
            "all {} point-pair merges close up to a pencil (exact); no realization on {trials} random seeds (probabilistic)",
            cert.scan.pairs
        )
    } else {
        format!(
            "{} of {} point-pair merges avoid the pencil; those and all {} non-pencil coarsenings reachable from them, and the structure itself, have no realization on {trials} random seeds (probabilistic)",
            cert.scan.survivors.len(),
            cert.scan.pairs,
            cert.coarsenings_tested
        )
    };
    Ok(cert)
}
