//! Braid groups on `m` strands: words, Garside left normal form, word problem.
//!
//! Words use functional notation. The word `[l1, l2, ..., lk]` is the braid
//! `σ_{l1} ∘ σ_{l2} ∘ … ∘ σ_{lk}`: the rightmost letter acts first and the
//! product of two words is their concatenation. A positive letter `i` is
//! `σ_i`, a negative letter `-i` is `σ_i^{-1}`.
//!
//! Permutations are one-line arrays over `0..m` (`p[x]` is the image of `x`)
//! and `perm(a ∘ b) = perm(a) ∘ perm(b)`, with `σ_i` swapping positions `i`
//! and `i + 1` (1-based).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One-line permutation of `0..m`.
pub type Perm = Vec<usize>;

/// A word in the Artin generators of the braid group on `strands` strands.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    pub strands: usize,
    pub letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Structure("braid needs at least one strand".into()));
        }
        if let Some(bad) = letters
            .iter()
            .find(|&&l| l == 0 || l.unsigned_abs() as usize >= strands)
        {
            return Err(Error::Structure(format!(
                "letter {bad} is not a generator of B_{strands}"
            )));
        }
        Ok(Self { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        Self { strands, letters: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &BraidWord) -> BraidWord {
        debug_assert_eq!(self.strands, other.strands);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { strands: self.strands, letters }
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn permutation(&self) -> Perm {
        let mut p: Perm = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            p.swap(i, i + 1);
        }
        p
    }

    pub fn is_pure(&self) -> bool {
        self.permutation().iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Image of a set of 1-based positions under the underlying permutation, sorted.
    pub fn apply_to_set(&self, set: &[usize]) -> Vec<usize> {
        let p = self.permutation();
        let mut out: Vec<usize> = set.iter().map(|&i| p[i - 1] + 1).collect();
        out.sort_unstable();
        out
    }

    pub fn normal_form(&self) -> NormalForm {
        NormalForm::from_word(self)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&l| if l > 0 { format!("s{l}") } else { format!("s{}^-1", -l) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Half twist `Δ_J` on the consecutive 1-based strands `lo..=hi`.
///
/// Built as the descending product of ascending runs
/// `(σ_lo … σ_{hi-1})(σ_lo … σ_{hi-2}) … (σ_lo)`; a single strand gives the empty word.
pub fn half_twist_range(strands: usize, lo: usize, hi: usize) -> BraidWord {
    debug_assert!(1 <= lo && lo <= hi && hi <= strands);
    let mut letters = Vec::new();
    for top in (lo..hi).rev() {
        letters.extend((lo..=top).map(|i| i as i32));
    }
    BraidWord { strands, letters }
}

/// Half twist on a set of strands that must be consecutive.
pub fn half_twist(strands: usize, set: &[usize]) -> Result<BraidWord> {
    let (lo, hi) = consecutive_bounds(strands, set)?;
    Ok(half_twist_range(strands, lo, hi))
}

/// Bounds `(lo, hi)` of a consecutive 1-based set, or a domain error.
pub fn consecutive_bounds(strands: usize, set: &[usize]) -> Result<(usize, usize)> {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.is_empty() || s.len() != set.len() {
        return Err(Error::Domain(format!("{set:?} is not a nonempty set")));
    }
    let (lo, hi) = (s[0], s[s.len() - 1]);
    if lo == 0 || hi > strands || hi - lo + 1 != s.len() {
        return Err(Error::Domain(format!(
            "{set:?} is not a consecutive subset of 1..={strands}"
        )));
    }
    Ok((lo, hi))
}

/// Garside left normal form `Δ^infimum · A_1 ⋯ A_r`.
///
/// Each `A_k` is a permutation braid stored as its permutation; no factor is
/// trivial or equal to `Δ`, and consecutive pairs are left-weighted. Two words
/// represent the same braid iff their normal forms are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub strands: usize,
    pub infimum: i64,
    pub factors: Vec<Perm>,
}

fn compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&x| a[x]).collect()
}

fn invert(p: &[usize]) -> Perm {
    let mut q = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        q[x] = i;
    }
    q
}

fn longest(n: usize) -> Perm {
    (0..n).rev().collect()
}

fn is_identity(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i == x)
}

fn is_longest(p: &[usize]) -> bool {
    let n = p.len();
    p.iter().enumerate().all(|(i, &x)| x == n - 1 - i)
}

/// `Δ X Δ^{-1}` on permutation braids.
fn flip(p: &[usize]) -> Perm {
    let n = p.len();
    (0..n).map(|x| n - 1 - p[n - 1 - x]).collect()
}

/// `X^{-1} Δ`, again a permutation braid.
fn right_complement(p: &[usize]) -> Perm {
    compose(&invert(p), &longest(p.len()))
}

/// Does `σ_{i+1}` (0-based `i`) divide `p` on the left?
fn starts_with(p: &[usize], i: usize) -> bool {
    let q = invert(p);
    q[i + 1] < q[i]
}

/// Does `σ_{i+1}` (0-based `i`) divide `p` on the right?
fn ends_with(p: &[usize], i: usize) -> bool {
    p[i] > p[i + 1]
}

/// Make the pair `(a, b)` left-weighted by sliding letters from `b` to `a`.
fn left_weight(a: &mut Perm, b: &mut Perm) -> bool {
    let n = a.len();
    let mut changed = false;
    loop {
        let Some(i) = (0..n.saturating_sub(1)).find(|&i| starts_with(b, i) && !ends_with(a, i))
        else {
            return changed;
        };
        a.swap(i, i + 1);
        for x in b.iter_mut() {
            if *x == i {
                *x = i + 1;
            } else if *x == i + 1 {
                *x = i;
            }
        }
        changed = true;
    }
}

fn perm_to_positive_word(p: &[usize]) -> Vec<i32> {
    let mut q = p.to_vec();
    let mut rev = Vec::new();
    while let Some(i) = (0..q.len().saturating_sub(1)).find(|&i| q[i] > q[i + 1]) {
        q.swap(i, i + 1);
        rev.push(i as i32 + 1);
    }
    rev.reverse();
    rev
}

impl NormalForm {
    pub fn identity(strands: usize) -> Self {
        Self { strands, infimum: 0, factors: Vec::new() }
    }

    pub fn from_word(w: &BraidWord) -> Self {
        let mut nf = Self::identity(w.strands);
        for &l in &w.letters {
            nf.push_letter(l);
        }
        nf
    }

    /// Right multiplication by a single signed generator.
    pub fn push_letter(&mut self, l: i32) {
        let i = l.unsigned_abs() as usize - 1;
        let mut s: Perm = (0..self.strands).collect();
        s.swap(i, i + 1);
        if l > 0 {
            self.push_simple(s);
        } else {
            self.mul_delta_power(-1);
            self.push_simple(flip(&right_complement(&s)));
        }
    }

    /// Right multiplication by `Δ^k`.
    pub fn mul_delta_power(&mut self, k: i64) {
        self.infimum += k;
        if k % 2 != 0 {
            for f in &mut self.factors {
                *f = flip(f);
            }
        }
    }

    /// Right multiplication by a permutation braid.
    pub fn push_simple(&mut self, p: Perm) {
        debug_assert_eq!(p.len(), self.strands);
        self.factors.push(p);
        self.settle();
    }

    fn settle(&mut self) {
        loop {
            let mut changed = false;
            for j in (0..self.factors.len().saturating_sub(1)).rev() {
                let (l, r) = self.factors.split_at_mut(j + 1);
                if left_weight(&mut l[j], &mut r[0]) {
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let lead = self.factors.iter().take_while(|f| is_longest(f)).count();
        if lead > 0 {
            self.factors.drain(..lead);
            self.infimum += lead as i64;
        }
        while self.factors.last().is_some_and(|f| is_identity(f)) {
            self.factors.pop();
        }
    }

    /// `self · other`.
    pub fn mul(&self, other: &NormalForm) -> NormalForm {
        debug_assert_eq!(self.strands, other.strands);
        let mut out = self.clone();
        out.mul_delta_power(other.infimum);
        for f in &other.factors {
            out.push_simple(f.clone());
        }
        out
    }

    pub fn inverse(&self) -> NormalForm {
        let mut out = NormalForm::identity(self.strands);
        for f in self.factors.iter().rev() {
            out.mul_delta_power(-1);
            out.push_simple(flip(&right_complement(f)));
        }
        out.mul_delta_power(-self.infimum);
        out
    }

    pub fn is_identity(&self) -> bool {
        self.infimum == 0 && self.factors.is_empty()
    }

    pub fn permutation(&self) -> Perm {
        let mut p: Perm = if self.infimum.rem_euclid(2) == 1 {
            longest(self.strands)
        } else {
            (0..self.strands).collect()
        };
        for f in &self.factors {
            p = compose(&p, f);
        }
        p
    }

    pub fn is_pure(&self) -> bool {
        is_identity(&self.permutation())
    }

    pub fn commutes_with(&self, other: &NormalForm) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// A word representing this braid.
    pub fn to_word(&self) -> BraidWord {
        let delta = half_twist_range(self.strands, 1, self.strands);
        let mut letters = Vec::new();
        let unit = if self.infimum >= 0 { delta.letters.clone() } else { delta.inverse().letters };
        for _ in 0..self.infimum.unsigned_abs() {
            letters.extend_from_slice(&unit);
        }
        for f in &self.factors {
            letters.extend(perm_to_positive_word(f));
        }
        BraidWord { strands: self.strands, letters }
    }
}

/// JSON form of a normal form with 1-based permutation factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalFormJson {
    pub strands: usize,
    pub infimum: i64,
    pub factors: Vec<Vec<usize>>,
}

impl From<&NormalForm> for NormalFormJson {
    fn from(nf: &NormalForm) -> Self {
        Self {
            strands: nf.strands,
            infimum: nf.infimum,
            factors: nf
                .factors
                .iter()
                .map(|f| f.iter().map(|x| x + 1).collect())
                .collect(),
        }
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D^{}", self.infimum)?;
        for p in &self.factors {
            let s: Vec<String> = p.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, " [{}]", s.join(","))?;
        }
        Ok(())
    }
}
