//! Braided wiring diagrams: braids interleaved with marked-point events.
//!
//! A diagram is `β₀, J₁, β₁, …, J_n, β_n` read in time order. Braids act in
//! the functional convention of [`crate::braid`], so passing an event and then
//! the braid after it contributes `β_j ∘ Δ_j⁻¹` to the reference marking
//! `φ_{j+1} = β_j Δ_j⁻¹ ⋯ β₁ Δ₁⁻¹ β₀`. The vanishing cycle of event `j` is
//! `φ_j⁻¹(A_{J_j})`. A trailing braid changes only the final marking and does
//! not enter the vanishing cycles.

use serde::{Deserialize, Serialize};

use crate::braid::{consecutive_bounds, half_twist_range, BraidWord};
use crate::error::{Error, Result};
use crate::lefschetz::LefschetzFibration;
use crate::mcg::{Curve, MappingClassRecord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WiringDiagram {
    pub strands: usize,
    /// `β₀..β_n`; always one more than the number of events.
    pub braids: Vec<BraidWord>,
    /// Events `J_1..J_n` as inclusive 1-based bounds.
    pub events: Vec<(usize, usize)>,
    /// Incidence row (0-based) of the wire starting at each position.
    pub labels: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub enum EventJson {
    #[serde(rename = "braid")]
    Braid(Vec<i32>),
    #[serde(rename = "point")]
    Point(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WiringJson {
    pub strands: usize,
    pub events: Vec<EventJson>,
    /// 1-based row of each starting wire; identity if absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<usize>>,
}

impl WiringDiagram {
    pub fn new(
        strands: usize,
        braids: Vec<BraidWord>,
        events: Vec<(usize, usize)>,
        labels: Option<Vec<usize>>,
    ) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Structure("a wiring diagram needs at least one strand".into()));
        }
        if braids.len() != events.len() + 1 {
            return Err(Error::Structure(format!(
                "{} events need {} braids, got {}",
                events.len(),
                events.len() + 1,
                braids.len()
            )));
        }
        if let Some(b) = braids.iter().find(|b| b.strands != strands) {
            return Err(Error::Domain(format!("braid on {} strands in a diagram with {strands}", b.strands)));
        }
        for &(lo, hi) in &events {
            if lo == 0 || lo > hi || hi > strands {
                return Err(Error::Domain(format!("event {lo}..{hi} is not a consecutive subset of 1..{strands}")));
            }
        }
        let labels = labels.unwrap_or_else(|| (0..strands).collect());
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        if sorted != (0..strands).collect::<Vec<_>>() {
            return Err(Error::Structure("wire labels must be a permutation".into()));
        }
        Ok(Self { strands, braids, events, labels })
    }

    /// Consecutive braids merge (the later one acts last); a missing leading
    /// or trailing braid is empty.
    pub fn from_json(w: &WiringJson) -> Result<Self> {
        let m = w.strands;
        let mut braids = vec![BraidWord::identity(m)];
        let mut events = Vec::new();
        for e in &w.events {
            match e {
                EventJson::Braid(l) => {
                    let b = BraidWord::new(m, l.clone())?;
                    let last = braids.last_mut().expect("non-empty");
                    *last = b.compose(last);
                }
                EventJson::Point(set) => {
                    events.push(consecutive_bounds(m, set)?);
                    braids.push(BraidWord::identity(m));
                }
            }
        }
        let labels = match &w.labels {
            Some(l) => {
                if l.len() != m || l.contains(&0) {
                    return Err(Error::Structure(format!("labels must be {m} values in 1..={m}")));
                }
                Some(l.iter().map(|x| x - 1).collect())
            }
            None => None,
        };
        Self::new(m, braids, events, labels)
    }

    pub fn to_json(&self) -> WiringJson {
        let mut events = Vec::new();
        for (k, b) in self.braids.iter().enumerate() {
            if !b.is_empty() || k == 0 {
                events.push(EventJson::Braid(b.letters.clone()));
            }
            if let Some(&(lo, hi)) = self.events.get(k) {
                events.push(EventJson::Point((lo..=hi).collect()));
            }
        }
        let identity = self.labels.iter().enumerate().all(|(i, &l)| i == l);
        WiringJson {
            strands: self.strands,
            events,
            labels: (!identity).then(|| self.labels.iter().map(|l| l + 1).collect()),
        }
    }

    pub fn n(&self) -> usize {
        self.events.len()
    }

    fn delta(&self, k: usize) -> BraidWord {
        let (lo, hi) = self.events[k];
        half_twist_range(self.strands, lo, hi)
    }

    /// `V_j = φ_j⁻¹(A_{J_j})` in event order.
    pub fn vanishing_cycles(&self) -> Vec<Curve> {
        let mut phi = self.braids[0].clone();
        let mut out = Vec::with_capacity(self.n());
        for (k, &(lo, hi)) in self.events.iter().enumerate() {
            out.push(Curve { m: self.strands, conjugator: phi.inverse(), lo, hi });
            phi = self.braids[k + 1].compose(&self.delta(k).inverse()).compose(&phi);
        }
        out
    }

    /// Position of each starting wire just before every event, then at the end.
    pub fn position_flow(&self) -> Vec<Vec<usize>> {
        let apply = |b: &BraidWord, cur: &mut Vec<usize>| {
            let p = b.permutation();
            for x in cur.iter_mut() {
                *x = p[*x];
            }
        };
        let mut cur: Vec<usize> = (0..self.strands).collect();
        apply(&self.braids[0], &mut cur);
        let mut out = vec![cur.clone()];
        for (k, &(lo, hi)) in self.events.iter().enumerate() {
            for x in cur.iter_mut() {
                if (lo - 1..hi).contains(x) {
                    *x = lo - 1 + hi - 1 - *x;
                }
            }
            apply(&self.braids[k + 1], &mut cur);
            out.push(cur.clone());
        }
        out
    }

    /// Number of events each starting wire passes through, by wire position.
    pub fn event_counts(&self) -> Vec<i64> {
        let flow = self.position_flow();
        let mut counts = vec![0i64; self.strands];
        for (k, &(lo, hi)) in self.events.iter().enumerate() {
            for (h, &p) in flow[k].iter().enumerate() {
                if (lo - 1..hi).contains(&p) {
                    counts[h] += 1;
                }
            }
        }
        counts
    }

    /// Monodromy around all events, evaluated from the closed formula
    /// `β₀⁻¹Δ₁β₁⁻¹⋯Δ_{n−1}β_{n−1}⁻¹Δ_n²β_{n−1}Δ_{n−1}⋯β₁Δ₁β₀`.
    pub fn circumnavigation_monodromy(&self) -> MappingClassRecord {
        let m = self.strands;
        let n = self.n();
        let mut w = BraidWord::identity(m);
        if n > 0 {
            // Build the right half β_{n−1}Δ_{n−1}⋯Δ₁β₀ and mirror it.
            let mut right = self.braids[0].clone();
            for k in 0..n - 1 {
                right = self.braids[k + 1].compose(&self.delta(k)).compose(&right);
            }
            let mut left = self.braids[0].inverse();
            for k in 0..n - 1 {
                left = left.compose(&self.delta(k)).compose(&self.braids[k + 1].inverse());
            }
            let d = self.delta(n - 1);
            w = left.compose(&d).compose(&d).compose(&right);
        }
        MappingClassRecord { m, braid_part: w.normal_form(), twist_counts: self.event_counts() }
    }

    pub fn to_lefschetz(&self) -> LefschetzFibration {
        LefschetzFibration::with_labels(self.strands, self.vanishing_cycles(), self.labels.clone())
            .expect("diagram is valid")
    }

    /// Row sums of the incidence matrix, indexed by wire label.
    pub fn hole_weights(&self) -> Vec<i64> {
        self.to_lefschetz().incidence_matrix().row_sums()
    }
}
