//! Randomized exact realizability over Q.
//!
//! Lines and points of multiplicity ≥ 3 are placed one at a time in
//! homogeneous integer coordinates. An object with two placed neighbors is
//! forced (join or meet); every further placed neighbor is an exact
//! incidence check. Free choices use random integers, so a failure on every
//! seed is strong evidence, not proof, that no realization exists.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::IncidenceStructure;

type V3 = [BigInt; 3];

const RANGE: i64 = 1_000_000;

fn cross(a: &V3, b: &V3) -> V3 {
    normalize([
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ])
}

fn dot(a: &V3, b: &V3) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

fn is_zero(v: &V3) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Divide by the gcd and make the first nonzero entry positive.
fn normalize(v: V3) -> V3 {
    let g = v[0].gcd(&v[1]).gcd(&v[2]);
    if g.is_zero() {
        return v;
    }
    let sign = if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) { -1 } else { 1 };
    let g = g * sign;
    [&v[0] / &g, &v[1] / &g, &v[2] / &g]
}

fn random_v3(rng: &mut ChaCha8Rng) -> V3 {
    loop {
        let v = [(); 3].map(|_| BigInt::from(rng.gen_range(-RANGE..=RANGE)));
        if !is_zero(&v) {
            return normalize(v);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Step {
    /// Meet or join of two placed objects.
    Forced(usize, usize),
    /// Random object incident to one placed object.
    OnOne(usize),
    Free,
}

/// Objects `0..m` are lines, `m..` are the points of multiplicity ≥ 3.
struct Plan {
    m: usize,
    order: Vec<(usize, Step)>,
    neighbors: Vec<Vec<usize>>,
}

fn plan(s: &IncidenceStructure) -> Plan {
    let m = s.m;
    let big: Vec<&Vec<usize>> = s.points.iter().filter(|p| p.len() >= 3).collect();
    let n = m + big.len();
    let mut neighbors = vec![Vec::new(); n];
    for (k, p) in big.iter().enumerate() {
        for &l in p.iter() {
            neighbors[m + k].push(l);
            neighbors[l].push(m + k);
        }
    }
    let placed_count = |placed: &[bool], o: usize| neighbors[o].iter().filter(|&&x| placed[x]).count();
    // Number of objects forced once `placed` is closed under two-neighbor steps.
    let cascade = |placed: &mut Vec<bool>| -> usize {
        let mut count = 0;
        while let Some(o) = (0..n).find(|&o| !placed[o] && placed_count(placed, o) >= 2) {
            placed[o] = true;
            count += 1;
        }
        count
    };
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        if let Some(o) = (0..n).find(|&o| !placed[o] && placed_count(&placed, o) >= 2) {
            let mut it = neighbors[o].iter().copied().filter(|&x| placed[x]);
            let (a, b) = (it.next().unwrap(), it.next().unwrap());
            placed[o] = true;
            order.push((o, Step::Forced(a, b)));
            continue;
        }
        // Lookahead: the free choice that forces the most objects, fewer degrees of freedom first.
        let best = (0..n)
            .filter(|&o| !placed[o])
            .map(|o| {
                let mut trial = placed.clone();
                trial[o] = true;
                let gain = cascade(&mut trial);
                (gain, placed_count(&placed, o), std::cmp::Reverse(o))
            })
            .max()
            .expect("unplaced object exists");
        let o = best.2 .0;
        let step = match neighbors[o].iter().copied().find(|&x| placed[x]) {
            Some(a) => Step::OnOne(a),
            None => Step::Free,
        };
        placed[o] = true;
        order.push((o, step));
    }
    Plan { m, order, neighbors }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Failure {
    /// A third placed neighbor is not incident.
    Check,
    /// Two determining objects coincided, or lines/points coincide at the end.
    Coincidence,
    /// The finished configuration has an incidence the structure does not list.
    Extra,
}

fn run(s: &IncidenceStructure, p: &Plan, seed: u64) -> Result<Vec<V3>, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = p.neighbors.len();
    let mut coord: Vec<Option<V3>> = vec![None; n];
    for &(o, step) in &p.order {
        let v = match step {
            Step::Forced(a, b) => cross(coord[a].as_ref().unwrap(), coord[b].as_ref().unwrap()),
            Step::OnOne(a) => cross(coord[a].as_ref().unwrap(), &random_v3(&mut rng)),
            Step::Free => random_v3(&mut rng),
        };
        if is_zero(&v) {
            return Err(Failure::Coincidence);
        }
        for &x in &p.neighbors[o] {
            if let Some(c) = &coord[x] {
                if !dot(c, &v).is_zero() {
                    return Err(Failure::Check);
                }
            }
        }
        coord[o] = Some(v);
    }
    let lines: Vec<V3> = coord[..p.m].iter().map(|c| c.clone().unwrap()).collect();
    for (i, li) in lines.iter().enumerate() {
        for j in i + 1..p.m {
            let meet = cross(li, &lines[j]);
            if is_zero(&meet) {
                return Err(Failure::Coincidence);
            }
            let through: Vec<usize> = (0..p.m).filter(|&l| dot(&meet, &lines[l]).is_zero()).collect();
            if through != s.points[s.point_of(i, j)] {
                return Err(Failure::Extra);
            }
        }
    }
    Ok(lines)
}

/// Exact line coefficients, scaled so the first nonzero one is 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub seed: u64,
    pub lines: Vec<[String; 3]>,
}

fn witness(seed: u64, lines: &[V3]) -> Witness {
    let lines = lines
        .iter()
        .map(|l| {
            let lead = l.iter().find(|x| !x.is_zero()).unwrap().clone();
            l.clone().map(|x| {
                let r = BigRational::new(x, lead.clone());
                if r.denom() == &BigInt::from(1) {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            })
        })
        .collect();
    Witness { seed, lines }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status")]
pub enum RealizabilityVerdict {
    #[serde(rename = "REALIZABLE")]
    Realizable { witness: Witness },
    #[serde(rename = "GENERIC_FAIL")]
    GenericFail {
        seeds: usize,
        check_failures: usize,
        coincidences: usize,
        extra_incidences: usize,
    },
    #[serde(rename = "UNKNOWN")]
    Unknown { reason: String },
}

impl RealizabilityVerdict {
    pub fn is_realizable(&self) -> bool {
        matches!(self, Self::Realizable { .. })
    }

    pub fn is_generic_fail(&self) -> bool {
        matches!(self, Self::GenericFail { .. })
    }
}

/// Try seeds `seed, seed + 1, …`; the first success is returned as a witness.
pub fn generic_realizability(s: &IncidenceStructure, seed: u64, trials: usize) -> RealizabilityVerdict {
    if trials == 0 {
        return RealizabilityVerdict::Unknown { reason: "no seeds requested".into() };
    }
    let p = plan(s);
    let (mut check, mut coinc, mut extra) = (0, 0, 0);
    for t in 0..trials as u64 {
        let sd = seed.wrapping_add(t);
        match run(s, &p, sd) {
            Ok(lines) => return RealizabilityVerdict::Realizable { witness: witness(sd, &lines) },
            Err(Failure::Check) => check += 1,
            Err(Failure::Coincidence) => coinc += 1,
            Err(Failure::Extra) => extra += 1,
        }
    }
    RealizabilityVerdict::GenericFail {
        seeds: trials,
        check_failures: check,
        coincidences: coinc,
        extra_incidences: extra,
    }
}

/// Verify a witness against a structure exactly.
pub fn check_witness(s: &IncidenceStructure, w: &Witness) -> bool {
    let parse = |x: &str| -> Option<BigRational> {
        match x.split_once('/') {
            Some((a, b)) => Some(BigRational::new(a.parse().ok()?, b.parse().ok()?)),
            None => Some(BigRational::from_integer(x.parse().ok()?)),
        }
    };
    if w.lines.len() != s.m {
        return false;
    }
    let mut lines = Vec::with_capacity(s.m);
    for l in &w.lines {
        let Some(r) = l.iter().map(|x| parse(x)).collect::<Option<Vec<_>>>() else {
            return false;
        };
        let den = r.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
        let v: Vec<BigInt> = r.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
        lines.push(normalize([v[0].clone(), v[1].clone(), v[2].clone()]));
    }
    for i in 0..s.m {
        for j in i + 1..s.m {
            let meet = cross(&lines[i], &lines[j]);
            if is_zero(&meet) {
                return false;
            }
            let through: Vec<usize> = (0..s.m).filter(|&l| dot(&meet, &lines[l]).is_zero()).collect();
            if through != s.points[s.point_of(i, j)] {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pencil_and_generic_are_realizable() {
        let pencil = IncidenceStructure::new(4, vec![vec![0, 1, 2, 3]], vec![]).unwrap();
        let v = generic_realizability(&pencil, 0, 4);
        let RealizabilityVerdict::Realizable { witness } = v else { panic!("{v:?}") };
        assert!(check_witness(&pencil, &witness));
        let generic = IncidenceStructure::with_doubles(5, vec![], vec![]).unwrap();
        assert!(generic_realizability(&generic, 3, 4).is_realizable());
    }

    #[test]
    fn zero_trials_unknown() {
        let s = IncidenceStructure::with_doubles(3, vec![], vec![]).unwrap();
        assert!(matches!(generic_realizability(&s, 0, 0), RealizabilityVerdict::Unknown { .. }));
    }

    #[test]
    fn witness_strings() {
        let w = witness(0, &[[BigInt::from(2), BigInt::from(-3), BigInt::from(4)]]);
        assert_eq!(w.lines[0], ["1".to_string(), "-3/2".to_string(), "2".to_string()]);
    }
}
