//! Incidence structures of line and pseudoline arrangements: pencil collapse,
//! generic realizability, unexpectedness certificates and bundling.
//!
//! Lines are 0-based internally and 1-based in JSON.

mod builtin;
mod bundle;
mod certify;
mod realize;

pub use builtin::{builtin, grid_qk, orevkov_q, pappus_p, pseudo_pappus, BUILTIN_NAMES};
pub use bundle::{bundle_extend, BundleOutput, CurveArrangement};
pub use certify::{unexpected_certify, Certificate, CertificateVerdict};
pub use realize::{check_witness, generic_realizability, RealizabilityVerdict, Witness};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lefschetz::IncidenceMatrix;
use crate::wiring::WiringDiagram;

/// Marked points of an arrangement in which every two lines meet exactly once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceStructure {
    pub m: usize,
    /// Intersection points, each a sorted set of at least two lines.
    pub points: Vec<Vec<usize>>,
    /// The line carrying each free marked point.
    pub free: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureJson {
    pub lines: usize,
    pub points: Vec<Vec<usize>>,
    #[serde(default)]
    pub free: Vec<Vec<usize>>,
}

impl IncidenceStructure {
    pub fn new(m: usize, points: Vec<Vec<usize>>, free: Vec<usize>) -> Result<Self> {
        let mut pts = Vec::with_capacity(points.len());
        for mut p in points {
            p.sort_unstable();
            p.dedup();
            if p.len() < 2 {
                return Err(Error::Structure(format!("point {p:?} lies on fewer than two lines")));
            }
            if p.iter().any(|&l| l >= m) {
                return Err(Error::Structure(format!("point {p:?} names a line outside 0..{m}")));
            }
            pts.push(p);
        }
        if let Some(&l) = free.iter().find(|&&l| l >= m) {
            return Err(Error::Structure(format!("free point on missing line {l}")));
        }
        let s = Self { m, points: pts, free };
        let mut missing = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                match s.points.iter().filter(|p| p.contains(&i) && p.contains(&j)).count() {
                    1 => {}
                    0 => missing.push((i + 1, j + 1)),
                    _ => {
                        return Err(Error::Structure(format!(
                            "lines {} and {} meet at more than one point",
                            i + 1,
                            j + 1
                        )))
                    }
                }
            }
        }
        if !missing.is_empty() {
            return Err(Error::Structure(format!(
                "line pairs without a common point: {missing:?}"
            )));
        }
        Ok(s)
    }

    /// Fill in a double point for every pair of lines not covered by `multi`.
    pub fn with_doubles(m: usize, multi: Vec<Vec<usize>>, free: Vec<usize>) -> Result<Self> {
        let mut points = multi;
        for i in 0..m {
            for j in i + 1..m {
                if !points.iter().any(|p| p.contains(&i) && p.contains(&j)) {
                    points.push(vec![i, j]);
                }
            }
        }
        Self::new(m, points, free)
    }

    pub fn from_json(j: &StructureJson) -> Result<Self> {
        let shift = |v: &[usize]| -> Result<Vec<usize>> {
            v.iter()
                .map(|&l| {
                    if l == 0 || l > j.lines {
                        Err(Error::Structure(format!("line {l} outside 1..={}", j.lines)))
                    } else {
                        Ok(l - 1)
                    }
                })
                .collect()
        };
        let points = j.points.iter().map(|p| shift(p)).collect::<Result<Vec<_>>>()?;
        let mut free = Vec::with_capacity(j.free.len());
        for f in &j.free {
            if f.len() != 1 {
                return Err(Error::Structure(format!("free point {f:?} must name one line")));
            }
            free.push(shift(f)?[0]);
        }
        Self::new(j.lines, points, free)
    }

    pub fn to_json(&self) -> StructureJson {
        StructureJson {
            lines: self.m,
            points: self.points.iter().map(|p| p.iter().map(|l| l + 1).collect()).collect(),
            free: self.free.iter().map(|l| vec![l + 1]).collect(),
        }
    }

    /// Points of a wiring diagram's events, read through its wire labels.
    pub fn from_wiring(w: &WiringDiagram) -> Result<Self> {
        let im = w.to_lefschetz().incidence_matrix();
        let mut points = Vec::new();
        let mut free = Vec::new();
        for c in im.columns {
            if c.len() == 1 {
                free.push(c[0]);
            } else {
                points.push(c);
            }
        }
        Self::new(w.strands, points, free)
    }

    /// Number of marked points on each line.
    pub fn weights(&self) -> Vec<i64> {
        let mut w = vec![0i64; self.m];
        for p in &self.points {
            for &l in p {
                w[l] += 1;
            }
        }
        for &l in &self.free {
            w[l] += 1;
        }
        w
    }

    /// Columns: intersection points in order, then free points.
    pub fn incidence_matrix(&self) -> IncidenceMatrix {
        let columns = self
            .points
            .iter()
            .cloned()
            .chain(self.free.iter().map(|&l| vec![l]))
            .collect();
        IncidenceMatrix { m: self.m, columns }
    }

    pub fn is_pencil(&self) -> bool {
        self.points.iter().any(|p| p.len() == self.m)
    }

    /// Add free points until every line carries `target` marked points.
    pub fn padded_to(&self, target: i64) -> Result<Self> {
        let w = self.weights();
        let mut free = self.free.clone();
        for (l, &x) in w.iter().enumerate() {
            if x > target {
                return Err(Error::Domain(format!(
                    "line {} already carries {x} > {target} points",
                    l + 1
                )));
            }
            free.extend(std::iter::repeat_n(l, (target - x) as usize));
        }
        free.sort_unstable();
        Ok(Self { free, ..self.clone() })
    }

    /// Index of the point through lines `i` and `j`.
    pub fn point_of(&self, i: usize, j: usize) -> usize {
        self.points
            .iter()
            .position(|p| p.contains(&i) && p.contains(&j))
            .expect("every pair of lines meets")
    }
}

/// Result of merging points and closing under the triangle rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closure {
    pub structure: IncidenceStructure,
    pub is_pencil: bool,
    /// Original point indices absorbed into each merged point of size > 1.
    pub classes: Vec<Vec<usize>>,
}

/// Merge the given point pairs, then keep merging: whenever a class of
/// points covers two lines, their common point joins the class.
pub fn collapse_closure(s: &IncidenceStructure, merges: &[(usize, usize)]) -> Result<Closure> {
    let n = s.points.len();
    if let Some(&(a, b)) = merges.iter().find(|&&(a, b)| a >= n || b >= n) {
        return Err(Error::Domain(format!("merge ({a}, {b}) names a missing point")));
    }
    let mut pair = vec![vec![usize::MAX; s.m]; s.m];
    for (k, p) in s.points.iter().enumerate() {
        for &i in p {
            for &j in p {
                pair[i][j] = k;
            }
        }
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = x;
        while parent[c] != r {
            let next = parent[c];
            parent[c] = r;
            c = next;
        }
        r
    }
    for &(a, b) in merges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra.max(rb)] = ra.min(rb);
    }
    loop {
        let mut lines: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for k in 0..n {
            let r = find(&mut parent, k);
            lines[r].extend(s.points[k].iter().copied());
        }
        let mut changed = false;
        for r in 0..n {
            if find(&mut parent, r) != r {
                continue;
            }
            let ls: Vec<usize> = lines[r].iter().copied().collect();
            for (x, &i) in ls.iter().enumerate() {
                for &j in &ls[x + 1..] {
                    let q = find(&mut parent, pair[i][j]);
                    if q != r {
                        parent[q.max(r)] = q.min(r);
                        changed = true;
                    }
                }
            }
            if changed {
                break;
            }
        }
        if !changed {
            break;
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_slot = vec![usize::MAX; n];
    for k in 0..n {
        let r = find(&mut parent, k);
        if root_slot[r] == usize::MAX {
            root_slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[root_slot[r]].push(k);
    }
    let points: Vec<Vec<usize>> = groups
        .iter()
        .map(|g| {
            let set: BTreeSet<usize> = g.iter().flat_map(|&k| s.points[k].iter().copied()).collect();
            set.into_iter().collect()
        })
        .collect();
    let structure = IncidenceStructure { m: s.m, points, free: s.free.clone() };
    Ok(Closure {
        is_pencil: structure.is_pencil(),
        structure,
        classes: groups.into_iter().filter(|g| g.len() > 1).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub pairs: usize,
    pub collapsing: usize,
    pub all_collapse: bool,
    /// Point pairs (0-based) whose closure is not a pencil.
    pub survivors: Vec<(usize, usize)>,
}

/// Merge every unordered pair of distinct points and record which closures are pencils.
pub fn coarsening_scan(s: &IncidenceStructure) -> ScanReport {
    let n = s.points.len();
    let mut survivors = Vec::new();
    let mut pairs = 0;
    for a in 0..n {
        for b in a + 1..n {
            pairs += 1;
            let c = collapse_closure(s, &[(a, b)]).expect("indices in range");
            if !c.is_pencil {
                survivors.push((a, b));
            }
        }
    }
    ScanReport { pairs, collapsing: pairs - survivors.len(), all_collapse: survivors.is_empty(), survivors }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn generic(m: usize) -> IncidenceStructure {
        IncidenceStructure::with_doubles(m, vec![], vec![]).unwrap()
    }

    #[test]
    fn pair_count_identity() {
        for s in [pappus_p(), orevkov_q(), pseudo_pappus(), generic(5)] {
            let total: usize = s.points.iter().map(|p| p.len() * (p.len() - 1) / 2).sum();
            assert_eq!(total, s.m * (s.m - 1) / 2);
        }
    }

    #[test]
    fn strict_validation() {
        assert!(IncidenceStructure::new(3, vec![vec![0, 1]], vec![]).is_err());
        assert!(IncidenceStructure::new(3, vec![vec![0, 1, 2], vec![0, 1]], vec![]).is_err());
        assert!(IncidenceStructure::new(3, vec![vec![0, 1, 2]], vec![5]).is_err());
        let j: StructureJson = serde_json::from_str(r#"{"lines":3,"points":[[1,2,3]],"free":[[3],[3]]}"#).unwrap();
        let s = IncidenceStructure::from_json(&j).unwrap();
        assert_eq!(s.weights(), vec![1, 1, 3]);
        assert!(s.is_pencil());
        assert_eq!(IncidenceStructure::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn closure_basics() {
        let s = generic(4);
        let c = collapse_closure(&s, &[]).unwrap();
        assert_eq!(c.structure, s);
        assert!(!c.is_pencil);
        // Two points on a common line: a triple point appears, nothing more.
        let a = s.point_of(0, 1);
        let b = s.point_of(0, 2);
        let c = collapse_closure(&s, &[(a, b)]).unwrap();
        assert!(!c.is_pencil);
        assert!(c.structure.points.contains(&vec![0, 1, 2]));
        // Opposite vertices of the quadrilateral pull in everything.
        let c = collapse_closure(&s, &[(s.point_of(0, 1), s.point_of(2, 3))]).unwrap();
        assert!(c.is_pencil);
        let scan = coarsening_scan(&s);
        assert_eq!(scan.pairs, 15);
        assert!(!scan.all_collapse);
    }

    #[test]
    fn figure_merges_collapse() {
        let p = pappus_p();
        let x = p.points.iter().position(|q| q == &vec![2, 4, 9]).unwrap();
        let y = p.points.iter().position(|q| q == &vec![3, 6, 9]).unwrap();
        assert!(collapse_closure(&p, &[(x, y)]).unwrap().is_pencil);
        let q = orevkov_q();
        let v = q.points.iter().position(|t| t == &vec![0, 1, 2, 3, 4]).unwrap();
        let h = q.points.iter().position(|t| t == &vec![0, 5, 6, 7]).unwrap();
        assert!(collapse_closure(&q, &[(v, h)]).unwrap().is_pencil);
    }
}
