//! Planar Lefschetz fibrations, their incidence matrices and the integral
//! invariants of the total space.
//!
//! For a fibration with fiber the disk with `m` holes and `n` vanishing
//! cycles, the incidence matrix `I` (holes × cycles) gives
//! `0 → H₂ → Zⁿ → Zᵐ → H₁ → 0`, so `H₂ = ker I`, `H₁ = coker I`, the
//! intersection form is `−BBᵀ` on a kernel basis `B`, and `χ = 1 − m + n`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mcg::{lantern_pieces, product_record, Curve, CurveJson, MappingClassRecord};
use crate::plumbing::{PlumbingGraph, Vertex};

/// Fiber with `m` holes and an ordered list of vanishing cycles.
///
/// `labels[p]` is the incidence-matrix row (0-based) of the hole at position
/// `p + 1`; it is the identity unless the holes carry external names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LefschetzFibration {
    pub m: usize,
    pub cycles: Vec<Curve>,
    pub labels: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationJson {
    pub m: usize,
    pub cycles: Vec<CurveJson>,
    pub labels: Vec<usize>,
}

impl LefschetzFibration {
    pub fn new(m: usize, cycles: Vec<Curve>) -> Result<Self> {
        Self::with_labels(m, cycles, (0..m).collect())
    }

    pub fn with_labels(m: usize, cycles: Vec<Curve>, labels: Vec<usize>) -> Result<Self> {
        if let Some(c) = cycles.iter().find(|c| c.m != m) {
            return Err(Error::Domain(format!("cycle on {} holes in a fiber with {m}", c.m)));
        }
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        if sorted != (0..m).collect::<Vec<_>>() {
            return Err(Error::Structure(format!("labels {labels:?} are not a permutation of 0..{m}")));
        }
        Ok(Self { m, cycles, labels })
    }

    /// Realize each column of an incidence matrix by a curve around its holes.
    ///
    /// The conjugator is the positive permutation braid sliding holes
    /// `1..=k` onto the column's holes, so only the homology classes of the
    /// cycles are prescribed.
    pub fn from_incidence(im: &IncidenceMatrix) -> Self {
        let m = im.m;
        let cycles = im
            .columns
            .iter()
            .map(|col| {
                let mut target: Vec<usize> = col.clone();
                target.extend((0..m).filter(|r| !col.contains(r)));
                let word = positive_word_for(&target);
                Curve {
                    m,
                    conjugator: crate::braid::BraidWord { strands: m, letters: word },
                    lo: 1,
                    hi: col.len(),
                }
            })
            .collect();
        Self { m, cycles, labels: (0..m).collect() }
    }

    pub fn to_json(&self) -> FibrationJson {
        FibrationJson {
            m: self.m,
            cycles: self.cycles.iter().map(|c| c.to_json()).collect(),
            labels: self.labels.iter().map(|l| l + 1).collect(),
        }
    }

    pub fn from_json(f: &FibrationJson) -> Result<Self> {
        let cycles = f.cycles.iter().map(Curve::from_json).collect::<Result<Vec<_>>>()?;
        let labels = if f.labels.is_empty() {
            (0..f.m).collect()
        } else {
            f.labels.iter().map(|l| l.wrapping_sub(1)).collect()
        };
        Self::with_labels(f.m, cycles, labels)
    }

    pub fn incidence_matrix(&self) -> IncidenceMatrix {
        let columns = self
            .cycles
            .iter()
            .map(|c| {
                let mut col: Vec<usize> =
                    c.enclosed_holes().iter().map(|&h| self.labels[h - 1]).collect();
                col.sort_unstable();
                col
            })
            .collect();
        IncidenceMatrix { m: self.m, columns }
    }

    /// Total monodromy as a record, holes in position order.
    pub fn monodromy(&self) -> MappingClassRecord {
        product_record(self.m, &self.cycles).expect("cycles share the fiber")
    }

    /// Replace a cycle around three holes and one boundary cycle around each
    /// of those holes by the three lantern curves.
    pub fn lantern_substitute(&self, cycle: usize) -> Result<LefschetzFibration> {
        let triple = self
            .cycles
            .get(cycle)
            .ok_or_else(|| Error::Domain(format!("no cycle {cycle}")))?;
        let pieces = lantern_pieces(triple)?;
        let mut drop = Vec::new();
        for h in triple.enclosed_holes() {
            let k = (0..self.cycles.len())
                .find(|&k| {
                    k != cycle
                        && !drop.contains(&k)
                        && self.cycles[k].size() == 1
                        && self.cycles[k].enclosed_holes() == [h]
                })
                .ok_or_else(|| {
                    Error::Precondition(format!("no boundary cycle around hole {h}"))
                })?;
            drop.push(k);
        }
        let mut cycles = Vec::with_capacity(self.cycles.len() - 1);
        for (k, c) in self.cycles.iter().enumerate() {
            if k == cycle {
                cycles.extend(pieces.iter().cloned());
            } else if !drop.contains(&k) {
                cycles.push(c.clone());
            }
        }
        Ok(LefschetzFibration { m: self.m, cycles, labels: self.labels.clone() })
    }
}

/// Positive word whose permutation sends position `p` to `target[p]` (0-based).
fn positive_word_for(target: &[usize]) -> Vec<i32> {
    // Bubble sort to the identity; the swaps, read backwards, spell the word.
    let mut t = target.to_vec();
    let mut swaps = Vec::new();
    while let Some(i) = (0..t.len().saturating_sub(1)).find(|&i| t[i] > t[i + 1]) {
        t.swap(i, i + 1);
        swaps.push(i as i32 + 1);
    }
    swaps.reverse();
    swaps
}

/// 0/1 matrix of holes (rows) against cycles (columns), stored by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceMatrix {
    pub m: usize,
    /// Each column as its sorted 0-based row support.
    pub columns: Vec<Vec<usize>>,
}

impl IncidenceMatrix {
    pub fn new(m: usize, columns: Vec<Vec<usize>>) -> Result<Self> {
        let mut cols = Vec::with_capacity(columns.len());
        for mut c in columns {
            c.sort_unstable();
            c.dedup();
            if c.is_empty() {
                return Err(Error::Structure("zero column in incidence matrix".into()));
            }
            if c.iter().any(|&r| r >= m) {
                return Err(Error::Structure(format!("row index out of range 0..{m}")));
            }
            cols.push(c);
        }
        Ok(Self { m, columns: cols })
    }

    /// From a dense row-major 0/1 matrix.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Structure("ragged incidence matrix".into()));
        }
        if rows.iter().flatten().any(|&x| x != 0 && x != 1) {
            return Err(Error::Structure("incidence entries must be 0 or 1".into()));
        }
        let columns = (0..n)
            .map(|j| (0..m).filter(|&i| rows[i][j] == 1).collect())
            .collect();
        Self::new(m, columns)
    }

    pub fn n(&self) -> usize {
        self.columns.len()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        let mut rows = vec![vec![0; self.n()]; self.m];
        for (j, c) in self.columns.iter().enumerate() {
            for &i in c {
                rows[i][j] = 1;
            }
        }
        rows
    }

    pub fn row_sums(&self) -> Vec<i64> {
        let mut s = vec![0; self.m];
        for c in &self.columns {
            for &i in c {
                s[i] += 1;
            }
        }
        s
    }

    pub fn rank(&self) -> usize {
        smith_normal_form(&to_big(&self.to_rows())).rank()
    }

    /// Columns sorted: the canonical representative up to column permutation.
    pub fn sorted_columns(&self) -> Vec<Vec<usize>> {
        let mut c = self.columns.clone();
        c.sort();
        c
    }
}

pub fn matrices_equivalent(a: &IncidenceMatrix, b: &IncidenceMatrix) -> bool {
    a.m == b.m && a.sorted_columns() == b.sorted_columns()
}

fn to_big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// `U·M·V = D` with `D` diagonal and `d_k | d_{k+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub diagonal: Vec<BigInt>,
    pub d: Vec<Vec<BigInt>>,
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|x| !x.is_zero()).count()
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn smith_normal_form(m: &[Vec<BigInt>]) -> Snf {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);

    let row_axpy = |a: &mut Vec<Vec<BigInt>>, u: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, q: &BigInt| {
        for j in 0..a[0].len() {
            let t = &a[src][j] * q;
            a[dst][j] -= t;
        }
        for j in 0..u[0].len() {
            let t = &u[src][j] * q;
            u[dst][j] -= t;
        }
    };
    let col_axpy = |a: &mut Vec<Vec<BigInt>>, v: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, q: &BigInt| {
        for row in a.iter_mut() {
            let t = &row[src] * q;
            row[dst] -= t;
        }
        for row in v.iter_mut() {
            let t = &row[src] * q;
            row[dst] -= t;
        }
    };

    for t in 0..rows.min(cols) {
        loop {
            // Pivot: smallest nonzero absolute value in the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            a.swap(t, pi);
            u.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            let mut dirty = false;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    row_axpy(&mut a, &mut u, i, t, &q);
                    dirty |= !a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    col_axpy(&mut a, &mut v, j, t, &q);
                    dirty |= !a[t][j].is_zero();
                }
            }
            if dirty {
                continue;
            }
            // Divisibility of the trailing block by the pivot.
            let bad = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut a, &mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if t < rows && a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    let diagonal = (0..rows.min(cols)).map(|k| a[k][k].clone()).collect();
    Snf { diagonal, d: a, u, v }
}

/// Row-style Hermite normal form of a full-row-rank integer matrix.
pub fn hermite_rows(b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut a = b.to_vec();
    let k = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..n {
        if r == k {
            break;
        }
        loop {
            let piv = (r..k)
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&x, &y| a[x][c].abs().cmp(&a[y][c].abs()));
            let Some(p) = piv else { break };
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..k {
                if !a[i][c].is_zero() {
                    let q = a[i][c].div_floor(&a[r][c]);
                    for j in 0..n {
                        let t = &a[r][j] * &q;
                        a[i][j] -= t;
                    }
                    done &= a[i][c].is_zero();
                }
            }
            if done {
                break;
            }
        }
        if r < k && !a[r][c].is_zero() {
            if a[r][c].is_negative() {
                for x in a[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            for i in 0..r {
                let q = a[i][c].div_floor(&a[r][c]);
                if !q.is_zero() {
                    for j in 0..n {
                        let t = &a[r][j] * &q;
                        a[i][j] -= t;
                    }
                }
            }
            r += 1;
        }
    }
    a
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Homology {
    pub torsion: Vec<i64>,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillingInvariants {
    pub h1: Homology,
    pub h2_rank: usize,
    /// Kernel basis of the incidence matrix, one row per generator of H₂.
    pub h2_basis: Vec<Vec<i64>>,
    pub form: Vec<Vec<i64>>,
    pub c1: Vec<i64>,
    pub euler: i64,
    pub b1_zero: bool,
    /// Cokernel of the intersection form; this is H₁ of the boundary when H₁ vanishes.
    pub boundary_h1: Option<Homology>,
}

fn big_to_i64(x: &BigInt) -> i64 {
    x.to_i64().expect("invariant entry exceeds i64")
}

fn homology_from_snf(snf: &Snf, rows: usize) -> Homology {
    let rank = snf.rank();
    Homology {
        torsion: snf
            .diagonal
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .map(big_to_i64)
            .collect(),
        rank: rows - rank,
    }
}

pub fn invariants(im: &IncidenceMatrix) -> FillingInvariants {
    let m = im.m;
    let n = im.n();
    let snf = smith_normal_form(&to_big(&im.to_rows()));
    let rank = snf.rank();
    let h1 = homology_from_snf(&snf, m);
    let kernel: Vec<Vec<BigInt>> = (rank..n)
        .map(|j| (0..n).map(|i| snf.v[i][j].clone()).collect())
        .collect();
    let basis = hermite_rows(&kernel);
    let h2_basis: Vec<Vec<i64>> =
        basis.iter().map(|r| r.iter().map(big_to_i64).collect()).collect();
    let k = h2_basis.len();
    let mut form = vec![vec![0i64; k]; k];
    for i in 0..k {
        for j in 0..k {
            form[i][j] = -h2_basis[i].iter().zip(&h2_basis[j]).map(|(a, b)| a * b).sum::<i64>();
        }
    }
    let c1 = h2_basis.iter().map(|r| r.iter().sum()).collect();
    let boundary_h1 = if h1.torsion.is_empty() && h1.rank == 0 {
        let fs = smith_normal_form(&to_big(&form));
        Some(homology_from_snf(&fs, k))
    } else {
        None
    };
    FillingInvariants {
        h1,
        h2_rank: k,
        h2_basis,
        form,
        c1,
        euler: 1 - m as i64 + n as i64,
        b1_zero: rank == m,
        boundary_h1,
    }
}

/// Every hole has a boundary-parallel cycle (sufficient for `π₁ = 1`).
pub fn simply_connected_sufficient(im: &IncidenceMatrix) -> bool {
    (0..im.m).all(|i| im.columns.iter().any(|c| c.as_slice() == [i]))
}

/// Replace a triple column and one boundary column for each of its rows by
/// the three pairwise columns.
pub fn lantern_substitute(im: &IncidenceMatrix, triple_col: usize) -> Result<IncidenceMatrix> {
    let col = im
        .columns
        .get(triple_col)
        .ok_or_else(|| Error::Domain(format!("no column {triple_col}")))?;
    if col.len() != 3 {
        return Err(Error::Precondition(format!(
            "column {triple_col} has {} ones, expected 3",
            col.len()
        )));
    }
    let (i, j, k) = (col[0], col[1], col[2]);
    let mut drop = vec![triple_col];
    for &r in &[i, j, k] {
        let f = (0..im.n())
            .find(|&c| !drop.contains(&c) && im.columns[c].as_slice() == [r])
            .ok_or_else(|| {
                Error::Precondition(format!("no boundary column e_{} to absorb", r + 1))
            })?;
        drop.push(f);
    }
    let mut columns: Vec<Vec<usize>> = im
        .columns
        .iter()
        .enumerate()
        .filter(|(c, _)| !drop.contains(c))
        .map(|(_, c)| c.clone())
        .collect();
    columns.extend([vec![i, j], vec![i, k], vec![j, k]]);
    Ok(IncidenceMatrix { m: im.m, columns })
}

/// Reconstruct the plumbing graph of a fibration whose cycles are pairwise
/// disjoint, given as hole subsets (1-based) forming a laminar family.
///
/// Regions of the fiber cut along the cycles become vertices: the annulus
/// between two parallel copies of a cycle, and the region just inside the
/// innermost copy of each non-singleton set. The collar outside the outermost
/// copy of the full set and the collars inside the innermost copy of each
/// singleton are not vertices.
pub fn artin_recognize(m: usize, family: &[Vec<usize>]) -> Result<PlumbingGraph> {
    let mut counts: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for s in family {
        let mut s = s.clone();
        s.sort_unstable();
        s.dedup();
        if s.is_empty() || s.iter().any(|&h| h == 0 || h > m) {
            return Err(Error::Structure(format!("bad hole set {s:?} for m = {m}")));
        }
        *counts.entry(s).or_default() += 1;
    }
    let sets: Vec<Vec<usize>> = counts.keys().cloned().collect();
    for (x, a) in sets.iter().enumerate() {
        for b in &sets[x + 1..] {
            let inter = a.iter().filter(|h| b.contains(h)).count();
            if inter != 0 && inter != a.len() && inter != b.len() {
                return Err(Error::Precondition(format!(
                    "hole sets {a:?} and {b:?} cross; the family is not laminar"
                )));
            }
        }
    }
    let full: Vec<usize> = (1..=m).collect();
    if m == 0 || !counts.contains_key(&full) {
        return Err(Error::Precondition("no cycle encloses all holes".into()));
    }
    if let Some(h) = (1..=m).find(|h| !counts.contains_key(&vec![*h])) {
        return Err(Error::Precondition(format!("hole {h} has no boundary-parallel cycle")));
    }
    // Children in the laminar tree: maximal proper subsets.
    let parent_of = |s: &Vec<usize>| -> Option<Vec<usize>> {
        sets.iter()
            .filter(|t| t.len() > s.len() && s.iter().all(|h| t.contains(h)))
            .min_by_key(|t| t.len())
            .cloned()
    };
    let mut children: BTreeMap<Vec<usize>, Vec<Vec<usize>>> = BTreeMap::new();
    for s in &sets {
        if let Some(p) = parent_of(s) {
            children.entry(p).or_default().push(s.clone());
        }
    }
    for c in children.values_mut() {
        c.sort_by_key(|s| s[0]);
    }

    // Regions: annuli (set, t) for t in 1..k and inner regions of non-singletons.
    let mut weights: Vec<i64> = Vec::new();
    let mut annulus: BTreeMap<(Vec<usize>, usize), usize> = BTreeMap::new();
    let mut inner: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut stack = vec![full.clone()];
    while let Some(s) = stack.pop() {
        let k = counts[&s];
        for t in 1..k {
            annulus.insert((s.clone(), t), weights.len());
            weights.push(-2);
        }
        let kids = children.get(&s).cloned().unwrap_or_default();
        if s.len() > 1 {
            inner.insert(s.clone(), weights.len());
            weights.push(-(1 + kids.len() as i64));
        }
        for c in kids.into_iter().rev() {
            stack.push(c);
        }
    }
    if weights.is_empty() {
        return Err(Error::Precondition("family bounds no region (too few cycles)".into()));
    }
    // Each cycle copy joins the regions on its two sides.
    let mut edges = Vec::new();
    for s in &sets {
        let k = counts[s];
        for t in 1..=k {
            let inside = if t < k { annulus.get(&(s.clone(), t)).copied() } else { inner.get(s).copied() };
            let outside = if t > 1 {
                annulus.get(&(s.clone(), t - 1)).copied()
            } else {
                parent_of(s).and_then(|p| inner.get(&p).copied())
            };
            if let (Some(a), Some(b)) = (inside, outside) {
                edges.push((a as u64, b as u64));
            }
        }
    }
    let vertices =
        weights.iter().enumerate().map(|(i, &w)| Vertex { id: i as u64, self_int: w }).collect();
    let g = PlumbingGraph::new(vertices, edges, Some(0))?;
    if !g.validate_reduced_cycle().reduced_cycle {
        return Err(Error::Inconsistent(
            "recognized graph fails the reduced fundamental cycle test".into(),
        ));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let n = b.first().map_or(0, |r| r.len());
        a.iter()
            .map(|r| {
                (0..n)
                    .map(|j| r.iter().zip(b).map(|(x, row)| x * &row[j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn snf_examples() {
        let s = smith_normal_form(&big(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(6)]);
        let m = big(&[&[1, 1, 0], &[1, 0, 1]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(1)]);
        assert_eq!(mat_mul(&mat_mul(&s.u, &m), &s.v), s.d);
        let id = big(&[&[1, 0], &[0, 1]]);
        assert_eq!(smith_normal_form(&id).diagonal, vec![BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn cone_invariants() {
        let im = IncidenceMatrix::from_rows(&[vec![1, 1, 0], vec![1, 0, 1]]).unwrap();
        let inv = invariants(&im);
        assert_eq!(inv.h2_rank, 1);
        assert_eq!(inv.h2_basis, vec![vec![1, -1, -1]]);
        assert_eq!(inv.form, vec![vec![-3]]);
        assert_eq!(inv.c1, vec![-1]);
        assert_eq!(inv.h1, Homology { torsion: vec![], rank: 0 });
        assert_eq!(inv.boundary_h1, Some(Homology { torsion: vec![3], rank: 0 }));
        assert_eq!(inv.euler, 2);
        assert!(inv.b1_zero);
    }

    #[test]
    fn identity_invariants() {
        let im = IncidenceMatrix::new(3, vec![vec![0], vec![1], vec![2]]).unwrap();
        let inv = invariants(&im);
        assert_eq!(inv.h2_rank, 0);
        assert_eq!(inv.euler, 1);
        assert!(simply_connected_sufficient(&im));
    }

    #[test]
    fn pencil_scott_rank() {
        // Pencil of 3 lines with weights (2, 3, 4): one triple column plus free columns.
        let mut cols = vec![vec![0, 1, 2]];
        for (r, w) in [(0, 2), (1, 3), (2, 4)] {
            cols.extend(std::iter::repeat_n(vec![r], w - 1));
        }
        let im = IncidenceMatrix::new(3, cols).unwrap();
        assert_eq!(invariants(&im).h2_rank, 1 + 1 + 2 + 3 - 3);
        let pencil = IncidenceMatrix::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert!(!simply_connected_sufficient(&pencil));
    }

    #[test]
    fn lantern_matrix() {
        let im = IncidenceMatrix::new(3, vec![vec![0, 1, 2], vec![0], vec![1], vec![2]]).unwrap();
        let out = lantern_substitute(&im, 0).unwrap();
        let expect = IncidenceMatrix::new(3, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        assert!(matrices_equivalent(&out, &expect));
        assert_eq!(invariants(&im).euler - invariants(&out).euler, 1);
        assert!(lantern_substitute(&out, 0).is_err());
    }

    #[test]
    fn recognize_cone() {
        let g = artin_recognize(2, &[vec![1, 2], vec![1], vec![2]]).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.self_int(0), -3);
        assert!(artin_recognize(2, &[vec![1], vec![2]]).is_err());
        assert!(artin_recognize(3, &[vec![1, 2, 3], vec![1, 2], vec![2, 3], vec![1], vec![2], vec![3]]).is_err());
    }

    #[test]
    fn recognize_chain_single_hole() {
        let g = artin_recognize(1, &[vec![1], vec![1], vec![1]]).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g.edges().len(), 1);
        assert!((0..2).all(|i| g.self_int(i) == -2));
    }

    #[test]
    fn fibration_from_incidence_roundtrip() {
        let im = IncidenceMatrix::new(4, vec![vec![0, 2, 3], vec![1], vec![1, 3], vec![0, 1, 2, 3]]).unwrap();
        let f = LefschetzFibration::from_incidence(&im);
        assert_eq!(f.incidence_matrix(), im);
    }
}
