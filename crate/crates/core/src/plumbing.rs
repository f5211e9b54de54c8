//! Plumbing (resolution) graphs, the reduced fundamental cycle condition and
//! the extensions `G → G′` by (−1)-leaves.
//!
//! A vertex `v` carries its self-intersection `v·v`; `a(v)` is its valency.
//! The graph has a reduced fundamental cycle when it is a negative definite
//! tree with `a(v) ≤ −v·v` everywhere. Each vertex then has
//! `−(v·v + a(v))` free *slots*, and the multiplicity is the total slot count.

use std::collections::{BTreeMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = u64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub id: VertexId,
    pub self_int: i64,
}

/// JSON layout of a plumbing graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<[VertexId; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<VertexId>,
}

/// Weighted graph; vertices are kept sorted by id and addressed by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlumbingGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    root: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub tree: bool,
    pub negative_definite: bool,
    pub reduced_cycle: bool,
    /// Vertices with `a(v) > −v·v`.
    pub violations: Vec<VertexId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FundamentalCycle {
    pub coefficients: BTreeMap<VertexId, i64>,
    pub multiplicity: i64,
}

impl PlumbingGraph {
    pub fn new(
        mut vertices: Vec<Vertex>,
        edges: Vec<(VertexId, VertexId)>,
        root: Option<VertexId>,
    ) -> Result<Self> {
        vertices.sort_by_key(|v| v.id);
        if let Some(w) = vertices.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(Error::Structure(format!("duplicate vertex id {}", w[0].id)));
        }
        if let Some(v) = vertices.iter().find(|v| v.self_int > -1) {
            return Err(Error::Structure(format!(
                "vertex {} has self-intersection {} (must be ≤ −1)",
                v.id, v.self_int
            )));
        }
        let index: BTreeMap<VertexId, usize> =
            vertices.iter().enumerate().map(|(i, v)| (v.id, i)).collect();
        let lookup = |id: VertexId| {
            index
                .get(&id)
                .copied()
                .ok_or_else(|| Error::Structure(format!("unknown vertex id {id}")))
        };
        let mut seen = HashSet::new();
        let mut es = Vec::with_capacity(edges.len());
        let mut adj = vec![Vec::new(); vertices.len()];
        for (a, b) in edges {
            if a == b {
                return Err(Error::Structure(format!("self-loop at vertex {a}")));
            }
            let (i, j) = (lookup(a)?, lookup(b)?);
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(Error::Structure(format!("multi-edge between {a} and {b}")));
            }
            es.push((i, j));
            adj[i].push(j);
            adj[j].push(i);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        let root = root.map(lookup).transpose()?;
        Ok(Self { vertices, edges: es, adj, root })
    }

    pub fn from_json(g: &GraphJson) -> Result<Self> {
        Self::new(
            g.vertices.clone(),
            g.edges.iter().map(|e| (e[0], e[1])).collect(),
            g.root,
        )
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self.vertices.clone(),
            edges: self.edges.iter().map(|&(i, j)| [self.id(i), self.id(j)]).collect(),
            root: self.root.map(|r| self.id(r)),
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Edges as index pairs.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn id(&self, idx: usize) -> VertexId {
        self.vertices[idx].id
    }

    pub fn index_of(&self, id: VertexId) -> Option<usize> {
        self.vertices.binary_search_by_key(&id, |v| v.id).ok()
    }

    pub fn self_int(&self, idx: usize) -> i64 {
        self.vertices[idx].self_int
    }

    pub fn valency(&self, idx: usize) -> usize {
        self.adj[idx].len()
    }

    pub fn neighbors(&self, idx: usize) -> &[usize] {
        &self.adj[idx]
    }

    pub fn root(&self) -> Option<usize> {
        self.root
    }

    pub fn with_root(&self, root: Option<usize>) -> Self {
        let mut g = self.clone();
        g.root = root;
        g
    }

    /// `−(v·v + a(v))`, the number of (−1)-leaves a vertex receives in `G″`.
    pub fn slots(&self, idx: usize) -> i64 {
        -(self.self_int(idx) + self.valency(idx) as i64)
    }

    pub fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        let mut m = vec![vec![0; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = self.self_int(i);
        }
        for &(i, j) in &self.edges {
            m[i][j] = 1;
            m[j][i] = 1;
        }
        m
    }

    pub fn is_tree(&self) -> bool {
        let n = self.len();
        if n == 0 || self.edges.len() != n - 1 {
            return false;
        }
        self.bfs_order(0).len() == n
    }

    pub fn is_negative_definite(&self) -> bool {
        is_negative_definite(&self.intersection_matrix())
    }

    pub fn validate_reduced_cycle(&self) -> ValidationReport {
        let tree = self.is_tree();
        let negative_definite = self.is_negative_definite();
        let violations: Vec<VertexId> = (0..self.len())
            .filter(|&i| self.slots(i) < 0)
            .map(|i| self.id(i))
            .collect();
        ValidationReport {
            tree,
            negative_definite,
            reduced_cycle: tree && negative_definite && violations.is_empty(),
            violations,
        }
    }

    fn require_valid(&self) -> Result<()> {
        let r = self.validate_reduced_cycle();
        if r.reduced_cycle {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "graph fails the reduced fundamental cycle test (tree: {}, negative definite: {}, violations: {:?})",
                r.tree, r.negative_definite, r.violations
            )))
        }
    }

    pub fn fundamental_cycle(&self) -> Result<FundamentalCycle> {
        self.require_valid()?;
        Ok(FundamentalCycle {
            coefficients: self.vertices.iter().map(|v| (v.id, 1)).collect(),
            multiplicity: (0..self.len()).map(|i| self.slots(i)).sum(),
        })
    }

    /// Slot list of `G″`: `(vertex index, slot number)`, by increasing vertex id.
    pub fn slot_list(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| (0..self.slots(i).max(0) as usize).map(move |s| (i, s)))
            .collect()
    }

    /// One extension per deleted (−1)-leaf of `G″`, in slot order.
    pub fn enumerate_extensions(&self) -> Result<Vec<ExtendedGraph>> {
        self.require_valid()?;
        if let Some(v) = self.vertices.iter().find(|v| v.self_int == -1) {
            return Err(Error::Domain(format!(
                "vertex {} has self-intersection −1; blow it down first",
                v.id
            )));
        }
        let slots = self.slot_list();
        (0..slots.len())
            .map(|k| self.extension_for_slot(k))
            .collect()
    }

    /// The extension obtained by deleting slot `k` of `G″`.
    pub fn extension_for_slot(&self, k: usize) -> Result<ExtendedGraph> {
        let slots = self.slot_list();
        if k >= slots.len() {
            return Err(Error::Domain(format!(
                "slot {k} out of range (graph has {} slots)",
                slots.len()
            )));
        }
        let attached: Vec<VertexId> = slots
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, &(v, _))| self.id(v))
            .collect();
        ExtendedGraph::new(self.with_root(Some(slots[k].0)), attached)
    }

    pub fn bfs_order(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut order = Vec::new();
        let mut q = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = q.pop_front() {
            order.push(v);
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
        order
    }

    /// Parent pointers of a BFS tree from `root` (`None` at the root).
    pub fn parents(&self, root: usize) -> Vec<Option<usize>> {
        let mut parent = vec![None; self.len()];
        for v in self.bfs_order(root) {
            for &w in &self.adj[v] {
                if w != root && parent[w].is_none() && parent[v] != Some(w) {
                    parent[w] = Some(v);
                }
            }
        }
        parent
    }

    /// Vertices on the path `root → v`, inclusive, starting at the root.
    pub fn root_path(&self, parents: &[Option<usize>], v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = parents[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    fn centers(&self) -> Vec<usize> {
        let n = self.len();
        if n <= 2 {
            return (0..n).collect();
        }
        let mut deg: Vec<usize> = (0..n).map(|i| self.valency(i)).collect();
        let mut layer: Vec<usize> = (0..n).filter(|&i| deg[i] <= 1).collect();
        let mut left = n;
        while left > 2 {
            left -= layer.len();
            let mut next = Vec::new();
            for &v in &layer {
                for &w in &self.adj[v] {
                    if deg[w] == 0 {
                        continue;
                    }
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        next.push(w);
                    }
                }
                deg[v] = 0;
            }
            layer = next;
        }
        layer.sort_unstable();
        layer
    }

    fn rooted_code(&self, v: usize, parent: Option<usize>) -> String {
        let mut kids: Vec<String> = self.adj[v]
            .iter()
            .filter(|&&w| Some(w) != parent)
            .map(|&w| self.rooted_code(w, Some(v)))
            .collect();
        kids.sort();
        format!("({}{})", self.self_int(v), kids.concat())
    }

    /// Canonical string of the weighted tree up to isomorphism (ids ignored).
    pub fn canonical_code(&self) -> String {
        self.centers()
            .into_iter()
            .map(|c| self.rooted_code(c, None))
            .min()
            .unwrap_or_default()
    }

    /// Weighted tree isomorphism ignoring ids and roots.
    pub fn isomorphic(&self, other: &PlumbingGraph) -> bool {
        self.len() == other.len()
            && self.is_tree()
            && other.is_tree()
            && self.canonical_code() == other.canonical_code()
    }
}

/// Negative definiteness by exact leading principal minors (fraction-free elimination).
pub fn is_negative_definite(m: &[Vec<i64>]) -> bool {
    leading_minors(m)
        .iter()
        .enumerate()
        .all(|(k, d)| if k % 2 == 0 { d.is_negative() } else { d.is_positive() })
}

/// Determinant of the leading `s × s` block (Bareiss with row swaps).
fn determinant(m: &[Vec<i64>], s: usize) -> BigInt {
    let mut a: Vec<Vec<BigInt>> =
        m[..s].iter().map(|r| r[..s].iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..s {
        let Some(p) = (k..s).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..s {
            for j in k + 1..s {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * prev
}

/// Leading principal minors `det M_1, …, det M_n` via Bareiss elimination.
pub fn leading_minors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut out = Vec::with_capacity(n);
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if a[k][k].is_zero() {
            // Elimination order breaks down; finish minor by minor with pivoting.
            out.extend((k + 1..=n).map(|s| determinant(m, s)));
            return out;
        }
        out.push(a[k][k].clone());
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    out
}

/// A minus-one leaf of `G′`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Leaf {
    pub attached_to: VertexId,
    pub leaf_id: VertexId,
}

/// `G′`: the base graph with one (−1)-leaf per curvetta.
///
/// Leaf `k` (0-based) carries curvetta label `k + 1`. The root `v₀` is the
/// unique base vertex with `v·v + a(v) = −1` in `G′`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedGraph {
    pub base: PlumbingGraph,
    pub minus_one_leaves: Vec<Leaf>,
    pub curvetta_labels: Vec<VertexId>,
    root: usize,
    attached: Vec<usize>,
}

impl ExtendedGraph {
    /// Attach one (−1)-leaf per entry of `attached` (in label order).
    pub fn new(base: PlumbingGraph, attached: Vec<VertexId>) -> Result<Self> {
        let mut idx = Vec::with_capacity(attached.len());
        for &a in &attached {
            idx.push(
                base.index_of(a)
                    .ok_or_else(|| Error::Structure(format!("unknown vertex id {a}")))?,
            );
        }
        let mut extra = vec![0i64; base.len()];
        for &i in &idx {
            extra[i] += 1;
        }
        let defect: Vec<i64> = (0..base.len())
            .map(|i| base.self_int(i) + base.valency(i) as i64 + extra[i])
            .collect();
        let roots: Vec<usize> = (0..base.len()).filter(|&i| defect[i] == -1).collect();
        let ok = roots.len() == 1 && defect.iter().all(|&d| d == 0 || d == -1);
        if !ok {
            return Err(Error::Domain(format!(
                "leaf placement does not leave exactly one vertex with v·v + a(v) = −1 (defects {defect:?})"
            )));
        }
        if !base.is_tree() {
            return Err(Error::Domain("base graph is not a tree".into()));
        }
        let root = roots[0];
        let next = base.vertices().iter().map(|v| v.id).max().unwrap_or(0) + 1;
        let minus_one_leaves: Vec<Leaf> = attached
            .iter()
            .enumerate()
            .map(|(k, &a)| Leaf { attached_to: a, leaf_id: next + k as u64 })
            .collect();
        let curvetta_labels = minus_one_leaves.iter().map(|l| l.leaf_id).collect();
        let base = base.with_root(Some(root));
        Ok(Self { base, minus_one_leaves, curvetta_labels, root, attached: idx })
    }

    /// Number of curvettas `m`.
    pub fn m(&self) -> usize {
        self.attached.len()
    }

    /// Index of `v₀` in the base graph.
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn root_id(&self) -> VertexId {
        self.base.id(self.root)
    }

    /// Base-graph index carrying the leaf of curvetta `label` (1-based).
    pub fn attached_index(&self, label: usize) -> Result<usize> {
        if label == 0 || label > self.m() {
            return Err(Error::Domain(format!(
                "curvetta label {label} out of range 1..={}",
                self.m()
            )));
        }
        Ok(self.attached[label - 1])
    }

    pub fn attached_indices(&self) -> &[usize] {
        &self.attached
    }

    /// `(l(v₀, v_i), ρ(v_i, v_j; v₀))` for 1-based labels.
    pub fn length_overlap(&self, i: usize, j: usize) -> Result<(usize, usize)> {
        let (vi, vj) = (self.attached_index(i)?, self.attached_index(j)?);
        let parents = self.base.parents(self.root);
        let pi = self.base.root_path(&parents, vi);
        let pj = self.base.root_path(&parents, vj);
        let rho = pi.iter().zip(&pj).take_while(|(a, b)| a == b).count();
        Ok((pi.len(), rho))
    }

    /// Rooted canonical code (root, weights and leaf positions), for grouping
    /// extensions that differ only by a graph symmetry.
    pub fn canonical_code(&self) -> String {
        let parents = self.base.parents(self.root);
        let mut leaves = vec![0usize; self.base.len()];
        for &a in &self.attached {
            leaves[a] += 1;
        }
        fn code(
            g: &PlumbingGraph,
            parents: &[Option<usize>],
            leaves: &[usize],
            v: usize,
        ) -> String {
            let mut kids: Vec<String> = g
                .neighbors(v)
                .iter()
                .filter(|&&w| parents[w] == Some(v))
                .map(|&w| code(g, parents, leaves, w))
                .collect();
            kids.sort();
            format!("({}:{}{})", g.self_int(v), leaves[v], kids.concat())
        }
        code(&self.base, &parents, &leaves, self.root)
    }
}

/// Group indices of extensions into isomorphism classes (class ids in order of first appearance).
pub fn isomorphism_classes(exts: &[ExtendedGraph]) -> Vec<usize> {
    let mut seen: Vec<String> = Vec::new();
    exts.iter()
        .map(|e| {
            let c = e.canonical_code();
            match seen.iter().position(|s| *s == c) {
                Some(k) => k,
                None => {
                    seen.push(c);
                    seen.len() - 1
                }
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(id: u64, s: i64) -> Vertex {
        Vertex { id, self_int: s }
    }

    /// Star with a center of weight `c` and legs of (−2)-chains of the given lengths.
    pub(crate) fn star(c: i64, legs: &[usize]) -> PlumbingGraph {
        let mut vs = vec![v(0, c)];
        let mut es = Vec::new();
        let mut next = 1;
        for &len in legs {
            let mut prev = 0;
            for _ in 0..len {
                vs.push(v(next, -2));
                es.push((prev, next));
                prev = next;
                next += 1;
            }
        }
        PlumbingGraph::new(vs, es, Some(0)).unwrap()
    }

    #[test]
    fn single_vertex() {
        let g = PlumbingGraph::new(vec![v(0, -3)], vec![], None).unwrap();
        let r = g.validate_reduced_cycle();
        assert!(r.tree && r.negative_definite && r.reduced_cycle);
        assert_eq!(g.fundamental_cycle().unwrap().multiplicity, 3);
        let exts = g.enumerate_extensions().unwrap();
        assert_eq!(exts.len(), 3);
        assert!(exts.iter().all(|e| e.m() == 2));
        assert_eq!(exts[0].length_overlap(1, 2).unwrap(), (1, 1));
    }

    #[test]
    fn pencil_star() {
        let g = star(-11, &[3; 10]);
        assert!(g.validate_reduced_cycle().reduced_cycle);
        assert_eq!(g.fundamental_cycle().unwrap().multiplicity, 11);
        let exts = g.enumerate_extensions().unwrap();
        assert_eq!(exts.len(), 11);
        // Slot 0 is the center's own slot; the curvettas then sit at leg ends.
        let e = &exts[0];
        assert_eq!(e.root_id(), 0);
        assert_eq!(e.length_overlap(1, 2).unwrap(), (4, 1));
        let g4 = star(-11, &[4; 10]);
        assert_eq!(g4.extension_for_slot(0).unwrap().length_overlap(3, 7).unwrap(), (5, 1));
    }

    #[test]
    fn chain_examples() {
        let g = PlumbingGraph::new(vec![v(0, -2), v(1, -2)], vec![(0, 1)], None).unwrap();
        assert_eq!(g.fundamental_cycle().unwrap().multiplicity, 2);
        let exts = g.enumerate_extensions().unwrap();
        assert_eq!(exts.len(), 2);
        assert!(exts.iter().all(|e| e.m() == 1));
        // root - a - b with both leaves at b.
        let g = PlumbingGraph::new(
            vec![v(0, -2), v(1, -2), v(2, -3)],
            vec![(0, 1), (1, 2)],
            None,
        )
        .unwrap();
        let e = ExtendedGraph::new(g, vec![2, 2]).unwrap();
        assert_eq!(e.root_id(), 0);
        assert_eq!(e.length_overlap(1, 2).unwrap(), (3, 3));
    }

    #[test]
    fn violations_reported() {
        let g = PlumbingGraph::new(
            vec![v(0, -2), v(1, -2), v(2, -2), v(3, -2)],
            vec![(0, 1), (0, 2), (0, 3)],
            None,
        )
        .unwrap();
        let r = g.validate_reduced_cycle();
        assert!(!r.reduced_cycle);
        assert_eq!(r.violations, vec![0]);
        assert!(g.fundamental_cycle().is_err());
    }

    #[test]
    fn structural_errors() {
        assert!(PlumbingGraph::new(vec![v(0, -2), v(0, -3)], vec![], None).is_err());
        assert!(PlumbingGraph::new(vec![v(0, -2)], vec![(0, 0)], None).is_err());
        assert!(PlumbingGraph::new(
            vec![v(0, -2), v(1, -2)],
            vec![(0, 1), (1, 0)],
            None
        )
        .is_err());
        assert!(PlumbingGraph::new(vec![v(0, 2)], vec![], None).is_err());
    }

    #[test]
    fn minus_one_vertex_rejected_for_extensions() {
        let g = PlumbingGraph::new(vec![v(0, -1)], vec![], None).unwrap();
        assert!(g.enumerate_extensions().is_err());
    }

    #[test]
    fn not_negative_definite() {
        // −2 chain closing up an affine D̃4 is only semidefinite.
        let g = PlumbingGraph::new(
            vec![v(0, -2), v(1, -2), v(2, -2), v(3, -2), v(4, -2)],
            vec![(0, 1), (0, 2), (0, 3), (0, 4)],
            None,
        )
        .unwrap();
        assert!(!g.is_negative_definite());
        assert!(!g.validate_reduced_cycle().reduced_cycle);
    }

    #[test]
    fn isomorphism_ignores_ids() {
        let a = PlumbingGraph::new(vec![v(0, -3), v(1, -2), v(2, -4)], vec![(0, 1), (1, 2)], None)
            .unwrap();
        let b = PlumbingGraph::new(vec![v(7, -4), v(5, -2), v(9, -3)], vec![(9, 5), (5, 7)], None)
            .unwrap();
        let c = PlumbingGraph::new(vec![v(0, -3), v(1, -4), v(2, -2)], vec![(0, 1), (1, 2)], None)
            .unwrap();
        assert!(a.isomorphic(&b));
        assert!(!a.isomorphic(&c));
    }

    #[test]
    fn symmetric_extensions_grouped() {
        let g = PlumbingGraph::new(
            vec![v(0, -3), v(1, -3), v(2, -3)],
            vec![(0, 1), (1, 2)],
            None,
        )
        .unwrap();
        let exts = g.enumerate_extensions().unwrap();
        assert_eq!(exts.len(), 5);
        assert_eq!(isomorphism_classes(&exts), vec![0, 0, 1, 0, 0]);
    }
}
