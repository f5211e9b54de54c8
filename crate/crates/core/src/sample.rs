//! Random inputs for property tests and timing runs.

use rand::Rng;

use crate::braid::BraidWord;
use crate::plumbing::{ExtendedGraph, PlumbingGraph, Vertex};
use crate::wiring::WiringDiagram;

/// Random tree on `1..=max_vertices` vertices with `a(v) ≤ −v·v` and `v·v ≤ −2`.
///
/// Every such tree is negative definite: leaves make the diagonal dominance strict.
pub fn reduced_tree<R: Rng>(rng: &mut R, max_vertices: usize) -> PlumbingGraph {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut val = vec![0i64; n];
    for v in 1..n {
        let p = rng.gen_range(0..v);
        edges.push((p as u64, v as u64));
        val[p] += 1;
        val[v] += 1;
    }
    let vertices = (0..n)
        .map(|v| {
            let extra = rng.gen_range(0..=2);
            Vertex { id: v as u64, self_int: -(val[v] + extra).max(2) }
        })
        .collect();
    PlumbingGraph::new(vertices, edges, None).expect("random tree is well formed")
}

/// Rooted tree to hang from a leg: the root's valency counts the edge to the leg.
pub fn attachment_tree<R: Rng>(rng: &mut R, max_vertices: usize) -> PlumbingGraph {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let mut edges = Vec::with_capacity(n - 1);
    let mut val = vec![0i64; n];
    val[0] = 1;
    for v in 1..n {
        let p = rng.gen_range(0..v);
        edges.push((p as u64, v as u64));
        val[p] += 1;
        val[v] += 1;
    }
    let vertices = (0..n)
        .map(|v| Vertex { id: v as u64, self_int: -(val[v] + rng.gen_range(0..=2)).max(2) })
        .collect();
    PlumbingGraph::new(vertices, edges, Some(0)).expect("random tree is well formed")
}

/// Random tree together with a random outer slot.
pub fn extended_graph<R: Rng>(rng: &mut R, max_vertices: usize) -> ExtendedGraph {
    let g = reduced_tree(rng, max_vertices);
    let k = rng.gen_range(0..g.slot_list().len());
    g.extension_for_slot(k).expect("slot in range")
}

fn braid<R: Rng>(rng: &mut R, m: usize, max_len: usize) -> BraidWord {
    if m < 2 {
        return BraidWord::identity(m);
    }
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..m as i32);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    BraidWord { strands: m, letters }
}

pub fn wiring_diagram<R: Rng>(
    rng: &mut R,
    max_strands: usize,
    max_events: usize,
    max_braid_len: usize,
) -> WiringDiagram {
    let m = rng.gen_range(1..=max_strands.max(1));
    let n = rng.gen_range(0..=max_events);
    let braids = (0..=n).map(|_| braid(rng, m, max_braid_len)).collect();
    let events = (0..n)
        .map(|_| {
            let lo = rng.gen_range(1..=m);
            let hi = rng.gen_range(lo..=m);
            (lo, hi)
        })
        .collect();
    WiringDiagram::new(m, braids, events, None).expect("random diagram is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn trees_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let g = reduced_tree(&mut rng, 10);
            let r = g.validate_reduced_cycle();
            assert!(r.tree && r.negative_definite && r.reduced_cycle, "{r:?}");
        }
    }
}
