//! Disjoint-cycle fibrations attached to a rational singularity: the Scott
//! deformation of its curvetta germ and the Gay–Mark fibration of its graph.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::germ::{derive_germ, validate_germ, DecoratedGerm};
use crate::lefschetz::{matrices_equivalent, IncidenceMatrix, LefschetzFibration};
use crate::mcg::{records_equal, Curve};
use crate::plumbing::PlumbingGraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub level: i64,
    /// 1-based branch labels.
    pub set: Vec<usize>,
}

/// Nested tangency classes of a germ, laid out along a hole order in which
/// every block is an interval.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaminarFamily {
    /// Branch label at each hole position, 1-based.
    pub order: Vec<usize>,
    pub blocks: Vec<Block>,
    /// `(branch, number of boundary cycles)`.
    pub free: Vec<(usize, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScottOutput {
    pub family: LaminarFamily,
    pub fibration: LefschetzFibration,
    pub incidence: IncidenceMatrix,
}

/// Classes of `set` (0-based) under tangency `≥ level`, each sorted, ordered by least element.
fn classes(g: &DecoratedGerm, set: &[usize], level: i64) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for &i in set {
        match out.iter_mut().find(|c| g.tangency[c[0]][i] >= level) {
            Some(c) => c.push(i),
            None => out.push(vec![i]),
        }
    }
    out
}

fn hole_order(g: &DecoratedGerm, set: Vec<usize>, level: i64, out: &mut Vec<usize>) {
    if set.len() == 1 {
        out.push(set[0]);
        return;
    }
    for c in classes(g, &set, level + 1) {
        hole_order(g, c, level + 1, out);
    }
}

pub fn scott_deformation(g: &DecoratedGerm) -> Result<ScottOutput> {
    let report = validate_germ(g);
    if !report.valid {
        return Err(Error::Domain(format!("germ fails validation: {report:?}")));
    }
    let m = g.m;
    if m == 0 {
        return Err(Error::Domain("germ has no branches".into()));
    }
    let mut order = Vec::with_capacity(m);
    hole_order(g, (0..m).collect(), 0, &mut order);
    let mut pos = vec![0; m];
    for (p, &b) in order.iter().enumerate() {
        pos[b] = p;
    }
    let top = (0..m).map(|i| g.max_tangency(i)).max().unwrap_or(0);
    let mut blocks = Vec::new();
    let mut cycles = Vec::new();
    for level in 1..=top {
        let mut cls: Vec<Vec<usize>> =
            classes(g, &order, level).into_iter().filter(|c| c.len() >= 2).collect();
        cls.sort_by_key(|c| c.iter().map(|&b| pos[b]).min());
        for c in cls {
            let lo = c.iter().map(|&b| pos[b]).min().unwrap();
            let hi = c.iter().map(|&b| pos[b]).max().unwrap();
            if hi - lo + 1 != c.len() {
                return Err(Error::Inconsistent(format!("block {c:?} is not an interval")));
            }
            cycles.push(Curve::convex(m, lo + 1, hi + 1));
            let mut set: Vec<usize> = c.iter().map(|b| b + 1).collect();
            set.sort_unstable();
            blocks.push(Block { level, set });
        }
    }
    let mut free = Vec::with_capacity(m);
    for (p, &b) in order.iter().enumerate() {
        let k = g.weights[b] - g.max_tangency(b);
        free.push((b + 1, k));
        for _ in 0..k {
            cycles.push(Curve::convex(m, p + 1, p + 1));
        }
    }
    let fibration = LefschetzFibration::with_labels(m, cycles, order.clone())?;
    let incidence = fibration.incidence_matrix();
    Ok(ScottOutput {
        family: LaminarFamily { order: order.iter().map(|b| b + 1).collect(), blocks, free },
        fibration,
        incidence,
    })
}

/// Gay–Mark cycles as hole subsets (holes = slots other than `outer`, in slot order).
///
/// The first set is the outer-boundary cycle around all holes; then one set
/// per edge (the holes beyond it, seen from the outer vertex) in BFS order;
/// then one boundary cycle per hole.
pub fn gay_mark(g: &PlumbingGraph, outer: usize) -> Result<(usize, Vec<Vec<usize>>)> {
    let report = g.validate_reduced_cycle();
    if !report.reduced_cycle {
        return Err(Error::Domain(format!("graph fails validation: {report:?}")));
    }
    if let Some(v) = g.vertices().iter().find(|v| v.self_int == -1) {
        return Err(Error::Domain(format!("vertex {} has self-intersection −1", v.id)));
    }
    let slots = g.slot_list();
    if outer >= slots.len() {
        return Err(Error::Domain(format!(
            "outer slot {outer} out of range (graph has {} slots)",
            slots.len()
        )));
    }
    let root = slots[outer].0;
    let mut hole_vertex = Vec::new();
    for (k, &(v, _)) in slots.iter().enumerate() {
        if k != outer {
            hole_vertex.push(v);
        }
    }
    let m = hole_vertex.len();
    let parents = g.parents(root);
    let mut sets = vec![(1..=m).collect::<Vec<_>>()];
    for v in g.bfs_order(root).into_iter().skip(1) {
        let set: Vec<usize> = (0..m)
            .filter(|&h| g.root_path(&parents, hole_vertex[h]).contains(&v))
            .map(|h| h + 1)
            .collect();
        sets.push(set);
    }
    sets.extend((1..=m).map(|h| vec![h]));
    Ok((m, sets))
}

/// Lay hole subsets out along a hole order as convex curves, if every set is an interval.
pub fn layout(m: usize, sets: &[Vec<usize>], order: &[usize]) -> Option<LefschetzFibration> {
    let mut pos = vec![0; m + 1];
    for (p, &h) in order.iter().enumerate() {
        pos[h] = p + 1;
    }
    let mut cycles = Vec::with_capacity(sets.len());
    for s in sets {
        let lo = s.iter().map(|&h| pos[h]).min()?;
        let hi = s.iter().map(|&h| pos[h]).max()?;
        if hi - lo + 1 != s.len() {
            return None;
        }
        cycles.push(Curve::convex(m, lo, hi));
    }
    LefschetzFibration::with_labels(m, cycles, order.iter().map(|h| h - 1).collect()).ok()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotAgreement {
    pub outer: usize,
    pub intervals: bool,
    pub records_equal: bool,
    pub matrices_equivalent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgreementReport {
    pub agree: bool,
    pub slots: Vec<SlotAgreement>,
}

/// For every outer choice, compare the Scott fibration of the curvetta germ
/// with the Gay–Mark fibration laid out in the Scott hole order.
pub fn artin_agreement(g: &PlumbingGraph) -> Result<AgreementReport> {
    let exts = g.enumerate_extensions()?;
    let mut slots = Vec::with_capacity(exts.len());
    for (k, e) in exts.iter().enumerate() {
        let scott = scott_deformation(&derive_germ(e)?)?;
        let (m, sets) = gay_mark(g, k)?;
        let laid = layout(m, &sets, &scott.family.order);
        let (rec, mat) = match &laid {
            Some(f) => (
                records_equal(&f.monodromy(), &scott.fibration.monodromy()),
                matrices_equivalent(&f.incidence_matrix(), &scott.incidence),
            ),
            None => (false, false),
        };
        slots.push(SlotAgreement {
            outer: k,
            intervals: laid.is_some(),
            records_equal: rec,
            matrices_equivalent: mat,
        });
    }
    Ok(AgreementReport {
        agree: slots.iter().all(|s| s.intervals && s.records_equal && s.matrices_equivalent),
        slots,
    })
}
