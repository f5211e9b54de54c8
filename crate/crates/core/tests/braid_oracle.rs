//! Word problem cross-check against the Artin action of B_n on the free group F_n.

use curvetta::braid::BraidWord;
use proptest::prelude::*;

/// Freely reduced word in F_n; letters are ±(1..=n).
type FreeWord = Vec<i32>;

fn reduce(w: FreeWord) -> FreeWord {
    let mut out: FreeWord = Vec::with_capacity(w.len());
    for x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

fn invert(w: &[i32]) -> FreeWord {
    w.iter().rev().map(|x| -x).collect()
}

/// Image of a single free generator x_j (j may be negative) under σ_l^{±1}.
fn image(l: i32, x: i32) -> FreeWord {
    let i = l.abs();
    let j = x.abs();
    let img: FreeWord = if l > 0 {
        if j == i {
            vec![i, i + 1, -i]
        } else if j == i + 1 {
            vec![i]
        } else {
            vec![j]
        }
    } else if j == i {
        vec![i + 1]
    } else if j == i + 1 {
        vec![-(i + 1), i, i + 1]
    } else {
        vec![j]
    };
    if x > 0 {
        img
    } else {
        invert(&img)
    }
}

/// The automorphism of a braid word, as the images of x_1..x_n.
fn artin_images(b: &BraidWord) -> Vec<FreeWord> {
    (1..=b.strands as i32)
        .map(|j| {
            let mut cur = vec![j];
            for &l in b.letters.iter().rev() {
                cur = reduce(cur.iter().flat_map(|&x| image(l, x)).collect());
            }
            cur
        })
        .collect()
}

fn oracle_equal(a: &BraidWord, b: &BraidWord) -> bool {
    artin_images(a) == artin_images(b)
}

fn word(n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    let gens = (1..n as i32).flat_map(|i| [i, -i]).collect::<Vec<_>>();
    proptest::collection::vec(proptest::sample::select(gens), 0..=max_len)
        .prop_map(move |letters| BraidWord::new(n, letters).unwrap())
}

/// Apply random defining relations to a word, producing an equal braid.
fn scramble(b: &BraidWord, seeds: &[u32]) -> BraidWord {
    let n = b.strands as i32;
    let mut l = b.letters.clone();
    for &s in seeds {
        let pos = if l.is_empty() { 0 } else { s as usize % (l.len() + 1) };
        let g = ((s / 7) % (n as u32 - 1).max(1)) as i32 + 1;
        match s % 4 {
            0 => {
                l.splice(pos..pos, [g, -g]);
            }
            1 if g + 1 < n => {
                l.splice(pos..pos, [g, g + 1, g, -(g + 1), -g, -(g + 1)]);
            }
            2 if pos + 1 < l.len() && (l[pos].abs() - l[pos + 1].abs()).abs() >= 2 => {
                l.swap(pos, pos + 1);
            }
            _ => {
                l.splice(pos..pos, [-g, g]);
            }
        }
    }
    BraidWord::new(b.strands, l).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn normal_form_agrees_with_artin_action(
        n in 2usize..=5,
        seed_a in proptest::collection::vec(any::<u32>(), 0..4),
        a_len in 0usize..=12,
        b_len in 0usize..=12,
        raw in proptest::collection::vec(any::<i32>(), 24),
    ) {
        let gens = |k: usize, off: usize| -> Vec<i32> {
            (0..k).map(|t| {
                let r = raw[(t + off) % raw.len()];
                let g = r.rem_euclid(n as i32 - 1) + 1;
                if r % 2 == 0 { g } else { -g }
            }).collect()
        };
        let a = BraidWord::new(n, gens(a_len, 0)).unwrap();
        let b = BraidWord::new(n, gens(b_len, 12)).unwrap();
        prop_assert_eq!(a.normal_form() == b.normal_form(), oracle_equal(&a, &b));
        let c = scramble(&a, &seed_a);
        prop_assert!(oracle_equal(&a, &c));
        prop_assert_eq!(a.normal_form(), c.normal_form());
    }

    #[test]
    fn normal_form_is_idempotent_and_multiplicative(a in word(4, 12), b in word(4, 12)) {
        let na = a.normal_form();
        let nb = b.normal_form();
        prop_assert_eq!(na.to_word().normal_form(), na.clone());
        prop_assert_eq!(na.mul(&nb), a.compose(&b).normal_form());
        prop_assert_eq!(na.inverse(), a.inverse().normal_form());
        prop_assert!(oracle_equal(&na.to_word(), &a));
        prop_assert_eq!(na.permutation(), a.permutation());
    }

    #[test]
    fn sub_disk_full_twist_commutes_inside(lo in 1usize..4, len in 1usize..4, inner in word(6, 10)) {
        let hi = (lo + len).min(6);
        let d = curvetta::braid::half_twist_range(6, lo, hi);
        let d2 = d.compose(&d);
        let supported: Vec<i32> = inner.letters.iter().copied()
            .filter(|l| (l.unsigned_abs() as usize) >= lo && (l.unsigned_abs() as usize) < hi)
            .collect();
        let x = BraidWord::new(6, supported).unwrap();
        prop_assert!(d2.is_pure());
        prop_assert_eq!(d2.compose(&x).normal_form(), x.compose(&d2).normal_form());
    }
}

#[test]
fn oracle_sanity() {
    let a = BraidWord::new(3, vec![1, 2, 1]).unwrap();
    let b = BraidWord::new(3, vec![2, 1, 2]).unwrap();
    assert!(oracle_equal(&a, &b));
    let c = BraidWord::new(3, vec![1, 2]).unwrap();
    assert!(!oracle_equal(&a, &c));
}
