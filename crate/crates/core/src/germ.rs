//! Decorated curvetta germs: branch weights and pairwise tangencies.
//!
//! [`derive_germ`] uses the path formulas on the extended graph
//! (`w_i = 1 + l(v₀, v_i)`, `tang(i, j) = ρ(v_i, v_j; v₀)`), while
//! [`blowdown_oracle`] contracts the whole configuration one (−1)-curve at a
//! time and reads the same data off the proper transforms of the curvettas.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::plumbing::ExtendedGraph;

/// Weights and tangency matrix of `m` smooth branches (diagonal unused, stored as 0).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecoratedGerm {
    pub m: usize,
    pub weights: Vec<i64>,
    pub tangency: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GermReport {
    pub valid: bool,
    /// 1-based branches with `w_i ≤ t(C_i)`.
    pub weight_violations: Vec<usize>,
    /// 1-based triples `(i, j, k)` with `tang(i,k) < min(tang(i,j), tang(j,k))`.
    pub ultrametric_violations: Vec<[usize; 3]>,
}

impl DecoratedGerm {
    pub fn new(weights: Vec<i64>, tangency: Vec<Vec<i64>>) -> Result<Self> {
        let m = weights.len();
        if tangency.len() != m || tangency.iter().any(|r| r.len() != m) {
            return Err(Error::Structure(format!(
                "tangency matrix must be {m}×{m}"
            )));
        }
        let mut tangency = tangency;
        for i in 0..m {
            tangency[i][i] = 0;
            for j in 0..i {
                if tangency[i][j] != tangency[j][i] {
                    return Err(Error::Structure(format!(
                        "tangency matrix not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Self { m, weights, tangency })
    }

    /// `t(C_i)`: the largest tangency of branch `i` (0-based) with another branch.
    pub fn max_tangency(&self, i: usize) -> i64 {
        (0..self.m)
            .filter(|&j| j != i)
            .map(|j| self.tangency[i][j])
            .max()
            .unwrap_or(0)
    }
}

pub fn validate_germ(g: &DecoratedGerm) -> GermReport {
    let m = g.m;
    let weight_violations: Vec<usize> = (0..m)
        .filter(|&i| g.weights[i] <= g.max_tangency(i) || g.weights[i] < 1)
        .map(|i| i + 1)
        .collect();
    let mut ultrametric_violations = Vec::new();
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                if i == j || j == k || i == k {
                    continue;
                }
                let t = &g.tangency;
                if t[i][k] < t[i][j].min(t[j][k]) {
                    ultrametric_violations.push([i + 1, j + 1, k + 1]);
                }
            }
        }
    }
    let positive = (0..m).all(|i| (0..m).all(|j| i == j || g.tangency[i][j] >= 1));
    GermReport {
        valid: weight_violations.is_empty() && ultrametric_violations.is_empty() && positive,
        weight_violations,
        ultrametric_violations,
    }
}

/// Closed-form germ of an extended graph.
pub fn derive_germ(e: &ExtendedGraph) -> Result<DecoratedGerm> {
    let m = e.m();
    let mut weights = vec![0; m];
    let mut tangency = vec![vec![0; m]; m];
    for i in 1..=m {
        for j in 1..=m {
            let (l, rho) = e.length_overlap(i, j)?;
            if i == j {
                weights[i - 1] = 1 + l as i64;
            } else {
                tangency[i - 1][j - 1] = rho as i64;
            }
        }
    }
    let g = DecoratedGerm { m, weights, tangency };
    let report = validate_germ(&g);
    if !report.valid {
        return Err(Error::Inconsistent(format!("derived germ is invalid: {report:?}")));
    }
    Ok(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Exceptional,
    Curvetta,
}

/// Iterated blow-down of `G′` with curvettas on its leaves.
pub fn blowdown_oracle(e: &ExtendedGraph) -> Result<DecoratedGerm> {
    let g = &e.base;
    let n = g.len();
    let m = e.m();
    let total = n + 2 * m;
    let mut kind = vec![Kind::Exceptional; n + m];
    kind.extend(std::iter::repeat_n(Kind::Curvetta, m));
    let mut x = vec![vec![0i64; total]; total];
    for (i, row) in x.iter_mut().enumerate().take(n) {
        row[i] = g.self_int(i);
    }
    for &(a, b) in g.edges() {
        x[a][b] = 1;
        x[b][a] = 1;
    }
    let parents = g.parents(e.root());
    let mut depth: Vec<usize> = (0..n).map(|v| g.root_path(&parents, v).len() - 1).collect();
    for (k, &a) in e.attached_indices().iter().enumerate() {
        let leaf = n + k;
        let curve = n + m + k;
        x[leaf][leaf] = -1;
        x[leaf][a] = 1;
        x[a][leaf] = 1;
        x[leaf][curve] = 1;
        x[curve][leaf] = 1;
        depth.push(depth[a] + 1);
    }
    let mut alive = vec![true; total];
    let mut weights = vec![0i64; m];
    let mut steps = 0;
    loop {
        let remaining = (0..n + m).filter(|&c| alive[c]).count();
        if remaining == 0 {
            break;
        }
        let pick = (0..n + m)
            .filter(|&c| alive[c] && x[c][c] == -1)
            .max_by_key(|&c| (depth[c], std::cmp::Reverse(c)));
        let Some(ex) = pick else {
            return Err(Error::Inconsistent(format!(
                "blow-down stuck with {remaining} exceptional curves and no (−1)-curve"
            )));
        };
        alive[ex] = false;
        steps += 1;
        let touching: Vec<(usize, i64)> = (0..total)
            .filter(|&c| alive[c] && x[c][ex] != 0)
            .map(|c| (c, x[c][ex]))
            .collect();
        for &(a, ea) in &touching {
            if kind[a] == Kind::Curvetta {
                if ea > 1 {
                    return Err(Error::Inconsistent(format!(
                        "curvetta {} meets an exceptional curve with multiplicity {ea}",
                        a - n - m + 1
                    )));
                }
                weights[a - n - m] += 1;
            }
            for &(b, eb) in &touching {
                if a == b {
                    if kind[a] == Kind::Exceptional {
                        x[a][a] += ea * ea;
                    }
                } else {
                    x[a][b] += ea * eb;
                }
            }
        }
        for c in 0..total {
            x[c][ex] = 0;
            x[ex][c] = 0;
        }
    }
    if steps != n + m {
        return Err(Error::Inconsistent(format!(
            "performed {steps} blow-downs, expected {}",
            n + m
        )));
    }
    let mut tangency = vec![vec![0; m]; m];
    for i in 0..m {
        for j in 0..m {
            if i != j {
                tangency[i][j] = x[n + m + i][n + m + j];
            }
        }
    }
    Ok(DecoratedGerm { m, weights, tangency })
}
