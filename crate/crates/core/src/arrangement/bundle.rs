//! Replace lines of an arrangement by bundles of curves read off rooted trees
//! hung from the legs of the star-shaped graph.
//!
//! Inside a bundle the curves meet many times, so the output is a curve
//! arrangement (points as sets of curves) rather than an incidence structure.

use serde::{Deserialize, Serialize};

use super::IncidenceStructure;
use crate::error::{Error, Result};
use crate::germ::{derive_germ, DecoratedGerm};
use crate::lefschetz::IncidenceMatrix;
use crate::plumbing::{ExtendedGraph, GraphJson, PlumbingGraph, Vertex, VertexId};

/// Curves with marked points; a point is the set of curves through it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveArrangement {
    pub curves: usize,
    /// Original line (0-based) each curve replaces.
    pub line_of: Vec<usize>,
    pub points: Vec<Vec<usize>>,
}

impl CurveArrangement {
    pub fn weights(&self) -> Vec<i64> {
        let mut w = vec![0; self.curves];
        for p in &self.points {
            for &c in p {
                w[c] += 1;
            }
        }
        w
    }

    pub fn intersections(&self, x: usize, y: usize) -> i64 {
        self.points.iter().filter(|p| p.contains(&x) && p.contains(&y)).count() as i64
    }

    /// Weights and pairwise intersection counts as a germ.
    pub fn germ(&self) -> DecoratedGerm {
        let n = self.curves;
        let mut t = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                if x != y {
                    t[x][y] = self.intersections(x, y);
                }
            }
        }
        DecoratedGerm { m: n, weights: self.weights(), tangency: t }
    }

    pub fn incidence_matrix(&self) -> IncidenceMatrix {
        IncidenceMatrix { m: self.curves, columns: self.points.clone() }
    }
}

#[derive(Clone, Debug)]
pub struct BundleOutput {
    pub arrangement: CurveArrangement,
    /// Germ from the closed weight and tangency formulas.
    pub germ: DecoratedGerm,
    /// `H` with one curvetta leaf per curve, in curve order.
    pub extended: ExtendedGraph,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleJson {
    pub arrangement: CurveArrangement,
    pub germ: DecoratedGerm,
    pub graph: GraphJson,
    /// Vertex carrying each curve's (−1)-leaf.
    pub curvetta_vertices: Vec<VertexId>,
}

impl BundleOutput {
    pub fn to_json(&self) -> BundleJson {
        let b = &self.extended.base;
        BundleJson {
            arrangement: self.arrangement.clone(),
            germ: self.germ.clone(),
            graph: b.to_json(),
            curvetta_vertices: self.extended.attached_indices().iter().map(|&i| b.id(i)).collect(),
        }
    }
}

enum Node {
    /// A single curve after `r` further (−2)-vertices; its leaf sits on `slot` (index in `H`).
    Leaf { r: usize, slot: usize },
    /// `r` (−2)-vertices, then a vertex splitting into subbundles.
    Split { r: usize, children: Vec<Node> },
}

/// Walk up from `start` (index in `H`) away from `parent`.
fn grow(h: &PlumbingGraph, start: Option<usize>, parent: usize) -> Node {
    let Some(mut cur) = start else {
        return Node::Leaf { r: 0, slot: parent };
    };
    let mut prev = parent;
    let mut r = 0;
    loop {
        let kids: Vec<usize> = h.neighbors(cur).iter().copied().filter(|&x| x != prev).collect();
        let s = -h.self_int(cur);
        if s == 2 {
            r += 1;
            match kids.as_slice() {
                [] => return Node::Leaf { r, slot: cur },
                [k] => {
                    prev = cur;
                    cur = *k;
                }
                _ => unreachable!("(−2)-vertex with two children violates the slot condition"),
            }
        } else {
            let mut children: Vec<Node> = kids.iter().map(|&k| grow(h, Some(k), cur)).collect();
            let empty = (s as usize - 1).saturating_sub(kids.len());
            children.extend((0..empty).map(|_| grow(h, None, cur)));
            return Node::Split { r, children };
        }
    }
}

/// A curve's route: split `r`s from stage 0 on, split node ids, final chain length, leaf slot.
struct Route {
    splits: Vec<(usize, usize)>,
    last: usize,
    slot: usize,
}

fn routes(node: &Node, prefix: &mut Vec<(usize, usize)>, counter: &mut usize, out: &mut Vec<Route>) {
    match node {
        Node::Leaf { r, slot } => out.push(Route { splits: prefix.clone(), last: *r, slot: *slot }),
        Node::Split { r, children } => {
            let id = *counter;
            *counter += 1;
            prefix.push((id, *r));
            for c in children {
                routes(c, prefix, counter, out);
            }
            prefix.pop();
        }
    }
}

/// Hang rooted trees from the legs and bundle the corresponding lines.
///
/// `trees` pairs a 0-based line with a rooted tree; lines not listed keep a single curve.
pub fn bundle_extend(s: &IncidenceStructure, trees: &[(usize, PlumbingGraph)]) -> Result<BundleOutput> {
    let m = s.m;
    let w = s.weights();
    if let Some(i) = (0..m).find(|&i| w[i] < 2) {
        return Err(Error::Domain(format!("line {} carries fewer than two points", i + 1)));
    }
    let mut seen = vec![false; m];
    for (line, g) in trees {
        if *line >= m || std::mem::replace(&mut seen[*line], true) {
            return Err(Error::Domain(format!("tree for missing or repeated line {}", line + 1)));
        }
        if g.root().is_none() {
            return Err(Error::Structure(format!("tree for line {} has no root", line + 1)));
        }
        if !g.is_empty() && (!g.is_tree() || !g.is_negative_definite()) {
            return Err(Error::Domain(format!("tree for line {} is not a negative definite tree", line + 1)));
        }
        if g.vertices().iter().any(|v| v.self_int > -2) {
            return Err(Error::Domain(format!("tree for line {} has a vertex with v·v > −2", line + 1)));
        }
    }

    // Star: center, then each leg as a chain of (w_i − 2) vertices.
    let mut vertices = vec![Vertex { id: 0, self_int: -(m as i64 + 1) }];
    let mut edges: Vec<(u64, u64)> = Vec::new();
    let mut u = vec![0u64; m];
    for i in 0..m {
        let mut prev = 0u64;
        for _ in 0..w[i] - 2 {
            let id = vertices.len() as u64;
            vertices.push(Vertex { id, self_int: -2 });
            edges.push((prev, id));
            prev = id;
        }
        u[i] = prev;
    }
    let mut roots = vec![None; m];
    for (line, g) in trees {
        let offset = vertices.len() as u64;
        for v in g.vertices() {
            vertices.push(Vertex { id: offset + g.index_of(v.id).unwrap() as u64, self_int: v.self_int });
        }
        for &(a, b) in g.edges() {
            edges.push((offset + a as u64, offset + b as u64));
        }
        let r = offset + g.root().unwrap() as u64;
        edges.push((u[*line], r));
        roots[*line] = Some(r);
    }
    let h = PlumbingGraph::new(vertices, edges, Some(0))?;
    let report = h.validate_reduced_cycle();
    if !(report.tree && report.negative_definite && report.reduced_cycle) {
        return Err(Error::Domain(format!("extended graph fails validation: {report:?}")));
    }

    let mut line_of = Vec::new();
    let mut curve_routes: Vec<Route> = Vec::new();
    let mut bundles: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut points: Vec<Vec<usize>> = Vec::new();
    let mut free_marks: Vec<(usize, usize)> = Vec::new();
    for i in 0..m {
        let ui = h.index_of(u[i]).unwrap();
        let tree = roots[i].map(|r| grow(&h, h.index_of(r), ui));
        let mut rs = Vec::new();
        match &tree {
            None => rs.push(Route { splits: vec![], last: 0, slot: ui }),
            Some(t) => routes(t, &mut Vec::new(), &mut 0, &mut rs),
        }
        let first = curve_routes.len();
        for r in rs {
            bundles[i].push(curve_routes.len());
            line_of.push(i);
            curve_routes.push(r);
        }
        // Shared points of each split node; stage 0 also gives every curve one free point.
        let mut nodes: Vec<(usize, usize, usize)> = Vec::new();
        for r in &curve_routes[first..] {
            for (stage, &(id, len)) in r.splits.iter().enumerate() {
                if !nodes.iter().any(|n| n.0 == id) {
                    nodes.push((id, len, stage));
                }
            }
        }
        for (id, len, stage) in nodes {
            let members: Vec<usize> = (first..curve_routes.len())
                .filter(|&c| curve_routes[c].splits.iter().any(|x| x.0 == id))
                .collect();
            let shared = if stage == 0 { len } else { len + 1 };
            points.extend(std::iter::repeat_n(members, shared));
        }
        for c in first..curve_routes.len() {
            let r = &curve_routes[c];
            let extra = r.last + usize::from(!r.splits.is_empty());
            free_marks.push((c, extra));
        }
    }
    for &(c, k) in &free_marks {
        points.extend(std::iter::repeat_n(vec![c], k));
    }
    for p in &s.points {
        let mut set: Vec<usize> = p.iter().flat_map(|&l| bundles[l].iter().copied()).collect();
        set.sort_unstable();
        points.push(set);
    }
    for &l in &s.free {
        points.push(bundles[l].clone());
    }
    let n = curve_routes.len();
    let arrangement = CurveArrangement { curves: n, line_of: line_of.clone(), points };

    // Closed formulas.
    let mut weights = vec![0i64; n];
    let mut tangency = vec![vec![0i64; n]; n];
    for x in 0..n {
        let rx = &curve_routes[x];
        let base = w[line_of[x]];
        weights[x] = base
            + rx.last as i64
            + rx.splits.iter().map(|&(_, r)| r as i64 + 1).sum::<i64>();
        for y in 0..n {
            if x == y {
                continue;
            }
            if line_of[x] != line_of[y] {
                tangency[x][y] = 1;
                continue;
            }
            let ry = &curve_routes[y];
            let common = rx.splits.iter().zip(&ry.splits).take_while(|(a, b)| a.0 == b.0).count();
            // Curves of one bundle part ways right after split `common − 1`.
            tangency[x][y] = base
                + rx.splits[0].1 as i64
                + rx.splits[1..common].iter().map(|&(_, r)| r as i64 + 1).sum::<i64>();
        }
    }
    let germ = DecoratedGerm { m: n, weights, tangency };
    let attached = curve_routes.iter().map(|r| h.id(r.slot)).collect();
    let extended = ExtendedGraph::new(h, attached)?;

    let from_graph = derive_germ(&extended)?;
    if from_graph != germ || arrangement.germ() != germ {
        return Err(Error::Inconsistent(
            "bundle formulas, curve arrangement and graph germ disagree".into(),
        ));
    }
    Ok(BundleOutput { arrangement, germ, extended })
}
