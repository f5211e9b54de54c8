//! Planar mapping classes of the disk with `m` holes, modeled as pairs
//! (pure braid, per-hole boundary twist counts).
//!
//! The Dehn twist about the curve `β(A_J)` is recorded as
//! `(βΔ_J²β⁻¹, indicator of the holes it encloses)`, and records compose
//! componentwise. Two factorizations give the same mapping class rel boundary
//! exactly when their records agree.

use serde::{Deserialize, Serialize};

use crate::braid::{consecutive_bounds, half_twist_range, BraidWord, NormalForm, NormalFormJson};
use crate::error::{Error, Result};

/// The curve `β(A_J)`, the image under `β` of the convex curve around the
/// consecutive holes `J = lo..=hi` (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Curve {
    pub m: usize,
    pub conjugator: BraidWord,
    pub lo: usize,
    pub hi: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveJson {
    pub m: usize,
    pub beta: Vec<i32>,
    pub core: Vec<usize>,
}

impl Curve {
    pub fn new(conjugator: BraidWord, core: &[usize]) -> Result<Self> {
        let m = conjugator.strands;
        let (lo, hi) = consecutive_bounds(m, core)?;
        Ok(Self { m, conjugator, lo, hi })
    }

    /// Convex curve around `lo..=hi` (identity conjugator).
    pub fn convex(m: usize, lo: usize, hi: usize) -> Self {
        debug_assert!(1 <= lo && lo <= hi && hi <= m);
        Self { m, conjugator: BraidWord::identity(m), lo, hi }
    }

    pub fn core(&self) -> Vec<usize> {
        (self.lo..=self.hi).collect()
    }

    pub fn size(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn from_json(c: &CurveJson) -> Result<Self> {
        Self::new(BraidWord::new(c.m, c.beta.clone())?, &c.core)
    }

    pub fn to_json(&self) -> CurveJson {
        CurveJson { m: self.m, beta: self.conjugator.letters.clone(), core: self.core() }
    }

    /// Holes enclosed by the curve: `perm(β)(J)`, sorted, 1-based.
    pub fn enclosed_holes(&self) -> Vec<usize> {
        self.conjugator.apply_to_set(&self.core())
    }

    /// `βΔ_J²β⁻¹` as a word.
    pub fn twist_word(&self) -> BraidWord {
        let d = half_twist_range(self.m, self.lo, self.hi);
        self.conjugator
            .compose(&d)
            .compose(&d)
            .compose(&self.conjugator.inverse())
    }

    pub fn twist_braid(&self) -> NormalForm {
        self.twist_word().normal_form()
    }

    /// Conjugate the curve: `γ(β(A_J))`.
    pub fn conjugated_by(&self, gamma: &BraidWord) -> Curve {
        Curve { conjugator: gamma.compose(&self.conjugator), ..self.clone() }
    }
}

fn same_m(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::Domain(format!("hole counts differ: {a} vs {b}")))
    }
}

/// Isotopy test via twist equality (with the hole itself compared for `|J| = 1`).
pub fn curve_equal(c1: &Curve, c2: &Curve) -> Result<bool> {
    same_m(c1.m, c2.m)?;
    if c1.size() != c2.size() {
        return Ok(false);
    }
    if c1.size() == 1 {
        return Ok(c1.enclosed_holes() == c2.enclosed_holes());
    }
    Ok(c1.twist_braid() == c2.twist_braid())
}

/// Disjointness up to isotopy: the two twists commute.
pub fn curves_disjoint(c1: &Curve, c2: &Curve) -> Result<bool> {
    same_m(c1.m, c2.m)?;
    Ok(c1.twist_braid().commutes_with(&c2.twist_braid()))
}

/// A planar mapping class rel boundary: pure braid plus boundary twist counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MappingClassRecord {
    pub m: usize,
    pub braid_part: NormalForm,
    pub twist_counts: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordJson {
    pub braid: NormalFormJson,
    pub word: Vec<i32>,
    pub counts: Vec<i64>,
}

impl MappingClassRecord {
    pub fn identity(m: usize) -> Self {
        Self { m, braid_part: NormalForm::identity(m), twist_counts: vec![0; m] }
    }

    pub fn new(braid_part: NormalForm, twist_counts: Vec<i64>) -> Result<Self> {
        let m = braid_part.strands;
        if twist_counts.len() != m {
            return Err(Error::Structure(format!(
                "expected {m} twist counts, got {}",
                twist_counts.len()
            )));
        }
        if !braid_part.is_pure() {
            return Err(Error::Domain("braid part of a record must be pure".into()));
        }
        Ok(Self { m, braid_part, twist_counts })
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &MappingClassRecord) -> MappingClassRecord {
        debug_assert_eq!(self.m, other.m);
        MappingClassRecord {
            m: self.m,
            braid_part: self.braid_part.mul(&other.braid_part),
            twist_counts: self
                .twist_counts
                .iter()
                .zip(&other.twist_counts)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn to_json(&self) -> RecordJson {
        RecordJson {
            braid: (&self.braid_part).into(),
            word: self.braid_part.to_word().letters,
            counts: self.twist_counts.clone(),
        }
    }
}

pub fn dehn_twist_record(c: &Curve) -> MappingClassRecord {
    let braid_part = c.twist_braid();
    debug_assert!(braid_part.is_pure());
    let mut twist_counts = vec![0; c.m];
    for h in c.enclosed_holes() {
        twist_counts[h - 1] = 1;
    }
    MappingClassRecord { m: c.m, braid_part, twist_counts }
}

/// `τ_{V_n} ∘ … ∘ τ_{V_1}`: the first curve of the list acts first.
pub fn product_record(m: usize, cycles: &[Curve]) -> Result<MappingClassRecord> {
    let mut acc = MappingClassRecord::identity(m);
    for c in cycles {
        same_m(m, c.m)?;
        acc = dehn_twist_record(c).compose(&acc);
    }
    Ok(acc)
}

pub fn records_equal(r1: &MappingClassRecord, r2: &MappingClassRecord) -> bool {
    r1.m == r2.m && r1.braid_part == r2.braid_part && r1.twist_counts == r2.twist_counts
}

/// Curves replacing `γ(A_{a,a+1,a+2})` in the lantern relation:
/// `γ(A_{a+1,a+2})`, `γσ_{a+1}(A_{a,a+1})`, `γ(A_{a,a+1})`, in application order.
/// Their product equals the twist about the triple curve composed with the
/// three boundary twists around its holes.
pub fn lantern_pieces(triple: &Curve) -> Result<[Curve; 3]> {
    if triple.size() != 3 {
        return Err(Error::Precondition(format!(
            "lantern substitution needs a curve around 3 holes, got {}",
            triple.size()
        )));
    }
    let (a, m, g) = (triple.lo, triple.m, &triple.conjugator);
    let mid = g.compose(&BraidWord { strands: m, letters: vec![a as i32 + 1] });
    Ok([
        Curve { m, conjugator: g.clone(), lo: a + 1, hi: a + 2 },
        Curve { m, conjugator: mid, lo: a, hi: a + 1 },
        Curve { m, conjugator: g.clone(), lo: a, hi: a + 1 },
    ])
}
