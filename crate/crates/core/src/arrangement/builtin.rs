//! Named arrangements, written 1-based as in the usual figures.

use super::IncidenceStructure;
use crate::error::{Error, Result};

pub const BUILTIN_NAMES: &[&str] = &["pappus_P", "orevkov_Q", "pseudo_pappus", "grid_Qk:N:k"];

fn from_one_based(m: usize, multi: &[&[usize]]) -> IncidenceStructure {
    let multi = multi.iter().map(|p| p.iter().map(|l| l - 1).collect()).collect();
    IncidenceStructure::with_doubles(m, multi, vec![]).expect("builtin is consistent")
}

/// Pappus configuration on lines 1..8, with line 9 through C and line 10
/// through X and Y meeting line 8 on line 9 instead of on line 6.
pub fn pappus_p() -> IncidenceStructure {
    from_one_based(
        10,
        &[
            &[1, 3, 4],
            &[1, 5, 6],
            &[1, 7, 8],
            &[2, 5, 7],
            &[2, 3, 8],
            &[2, 4, 6, 9],
            &[3, 5, 10],
            &[4, 7, 10],
            &[8, 9, 10],
        ],
    )
}

/// Pappus configuration with line 9 through X and Y, missing the third point.
pub fn pseudo_pappus() -> IncidenceStructure {
    from_one_based(
        9,
        &[
            &[1, 3, 4],
            &[1, 5, 6],
            &[1, 7, 8],
            &[2, 5, 7],
            &[2, 3, 8],
            &[2, 4, 6],
            &[3, 5, 9],
            &[4, 7, 9],
        ],
    )
}

const OREVKOV: &[&[usize]] = &[
    &[0, 1, 2, 3, 4],
    &[0, 5, 6, 7],
    &[0, 8, 9],
    &[1, 7, 8],
    &[2, 6, 8],
    &[3, 5, 8],
    &[2, 7, 9],
    &[3, 6, 9, 10],
    &[4, 5, 9],
    &[1, 5, 10],
    &[4, 7, 10],
];

/// Eleven lines indexed from 0: four verticals 1..4 through V, three
/// horizontals 5, 6, 7 through H, diagonals 8 and 9 through P, the line at
/// infinity 0 through V, H, P, and the bent line 10.
pub fn orevkov_q() -> IncidenceStructure {
    let multi = OREVKOV.iter().map(|p| p.to_vec()).collect();
    IncidenceStructure::with_doubles(11, multi, vec![]).expect("builtin is consistent")
}

/// The arrangement above with `n` verticals and `n` horizontals plus a
/// diagonal through P. It passes through `n` grid crossings, except that
/// the first `k` of them are split into three double points. Every line is
/// padded with free points to weight `2n + 5`.
///
/// Lines: 0..=10 as above, then verticals 5..=n, then horizontals 4..=n, then the diagonal.
pub fn grid_qk(n: usize, k: usize) -> Result<IncidenceStructure> {
    if n < 4 || k > n {
        return Err(Error::Domain(format!("grid needs n ≥ 4 and k ≤ n, got n = {n}, k = {k}")));
    }
    let m = 2 * n + 5;
    let vertical = |i: usize| if i <= 4 { i } else { 11 + i - 5 };
    let horizontal = |i: usize| match i {
        1 => 7,
        2 => 6,
        3 => 5,
        _ => 11 + (n - 4) + i - 4,
    };
    let lambda = m - 1;
    let mut multi: Vec<Vec<usize>> = OREVKOV.iter().map(|p| p.to_vec()).collect();
    multi[0].extend((5..=n).map(vertical));
    multi[1].extend((4..=n).map(horizontal));
    multi[2].push(lambda);
    let crossings: Vec<(usize, usize)> = [(1, 2), (2, 3), (3, 1), (4, 4)]
        .into_iter()
        .chain((5..=n).map(|i| (i, i)))
        .collect();
    for &(v, h) in &crossings[k..] {
        multi.push(vec![vertical(v), horizontal(h), lambda]);
    }
    IncidenceStructure::with_doubles(m, multi, vec![])?.padded_to(m as i64)
}

/// Builtins by name; the grid is addressed as `grid_Qk:N:k` (default `N = 4`, `k = 0`).
pub fn builtin(name: &str) -> Result<IncidenceStructure> {
    match name {
        "pappus_P" => Ok(pappus_p()),
        "orevkov_Q" => Ok(orevkov_q()),
        "pseudo_pappus" => Ok(pseudo_pappus()),
        _ if name.starts_with("grid_Qk") => {
            let parts: Vec<&str> = name.split(':').collect();
            let num = |i: usize, d: usize| -> Result<usize> {
                parts.get(i).map_or(Ok(d), |s| {
                    s.parse().map_err(|_| Error::Domain(format!("bad grid parameter {s:?}")))
                })
            };
            if parts[0] != "grid_Qk" || parts.len() > 3 {
                return Err(Error::Domain(format!("unknown builtin {name:?}")));
            }
            grid_qk(num(1, 4)?, num(2, 0)?)
        }
        _ => Err(Error::Domain(format!(
            "unknown builtin {name:?}; expected one of {BUILTIN_NAMES:?}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_weights() {
        assert_eq!(pappus_p().weights(), vec![6, 5, 6, 5, 6, 6, 6, 6, 6, 6]);
        let mut q = orevkov_q().weights();
        assert_eq!(q, vec![4, 5, 5, 4, 5, 5, 5, 5, 6, 5, 6]);
        q.sort_unstable();
        assert_eq!(q, vec![4, 4, 5, 5, 5, 5, 5, 5, 5, 6, 6]);
        assert_eq!(pseudo_pappus().m, 9);
    }

    #[test]
    fn grid_family() {
        for k in 0..=4 {
            let g = grid_qk(4, k).unwrap();
            assert_eq!(g.m, 13);
            assert!(g.weights().iter().all(|&w| w == 13));
            let triples = g.points.iter().filter(|p| p.len() == 3 && p.contains(&12)).count();
            assert_eq!(triples, 4 - k);
        }
        assert!(grid_qk(3, 0).is_err());
        assert!(grid_qk(5, 6).is_err());
        assert_eq!(builtin("grid_Qk:5:2").unwrap(), grid_qk(5, 2).unwrap());
        assert!(builtin("nope").is_err());
    }
}
