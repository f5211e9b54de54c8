use curvetta::germ::{blowdown_oracle, derive_germ, validate_germ};
use curvetta::lefschetz::{artin_recognize, invariants, smith_normal_form, IncidenceMatrix};
use curvetta::mcg::{curves_disjoint, product_record, records_equal};
use curvetta::plumbing::leading_minors;
use curvetta::sample;
use curvetta::scott::{artin_agreement, gay_mark, scott_deformation};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Cofactor expansion; only for tiny matrices.
fn det(m: &[Vec<i64>]) -> i64 {
    if m.is_empty() {
        return 1;
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                .collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] * det(&minor)
        })
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn closed_form_germ_matches_blowdown(seed in any::<u64>()) {
        let e = sample::extended_graph(&mut rng(seed), 9);
        let g = derive_germ(&e).unwrap();
        prop_assert!(validate_germ(&g).valid);
        prop_assert_eq!(blowdown_oracle(&e).unwrap(), g);
    }

    #[test]
    fn wiring_two_way_identity(seed in any::<u64>()) {
        let w = sample::wiring_diagram(&mut rng(seed), 5, 6, 5);
        let v = w.vanishing_cycles();
        for (c, &(lo, hi)) in v.iter().zip(&w.events) {
            prop_assert_eq!(c.enclosed_holes().len(), hi - lo + 1);
        }
        prop_assert!(records_equal(
            &w.circumnavigation_monodromy(),
            &product_record(w.strands, &v).unwrap()
        ));
    }

    #[test]
    fn scott_disjoint_and_weighted(seed in any::<u64>()) {
        let e = sample::extended_graph(&mut rng(seed), 7);
        let g = derive_germ(&e).unwrap();
        let s = scott_deformation(&g).unwrap();
        prop_assert_eq!(s.incidence.row_sums(), g.weights.clone());
        let c = &s.fibration.cycles;
        for i in 0..c.len() {
            for j in 0..i {
                prop_assert!(curves_disjoint(&c[i], &c[j]).unwrap());
            }
        }
        // Shared columns between two rows count their tangency.
        let rows = s.incidence.to_rows();
        for i in 0..g.m {
            for j in 0..i {
                let shared = rows[i].iter().zip(&rows[j]).filter(|(a, b)| **a == 1 && **b == 1).count();
                prop_assert_eq!(shared as i64, g.tangency[i][j]);
            }
        }
    }

    #[test]
    fn gay_mark_round_trip(seed in any::<u64>()) {
        let g = sample::reduced_tree(&mut rng(seed), 8);
        prop_assert!(artin_agreement(&g).unwrap().agree);
        for k in 0..g.slot_list().len() {
            let (m, sets) = gay_mark(&g, k).unwrap();
            prop_assert!(artin_recognize(m, &sets).unwrap().isomorphic(&g));
        }
    }

    #[test]
    fn smith_form_is_a_factorization(rows in proptest::collection::vec(proptest::collection::vec(-6i64..=6, 4), 1..5)) {
        let m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let s = smith_normal_form(&m);
        let mul = |a: &[Vec<BigInt>], b: &[Vec<BigInt>]| -> Vec<Vec<BigInt>> {
            a.iter().map(|r| (0..b[0].len()).map(|j| r.iter().zip(b).map(|(x, row)| x * &row[j]).sum()).collect()).collect()
        };
        prop_assert_eq!(mul(&mul(&s.u, &m), &s.v), s.d.clone());
        for w in s.diagonal.windows(2) {
            if !w[1].is_zero_like() {
                prop_assert!((&w[1] % &w[0]) == BigInt::from(0));
            }
        }
    }

    #[test]
    fn leading_minors_match_cofactor_expansion(rows in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 5), 5)) {
        let minors = leading_minors(&rows);
        for k in 1..=5 {
            let sub: Vec<Vec<i64>> = rows[..k].iter().map(|r| r[..k].to_vec()).collect();
            prop_assert_eq!(minors[k - 1].clone(), BigInt::from(det(&sub)));
        }
    }

    #[test]
    fn euler_characteristic_matches_ranks(cols in proptest::collection::vec(proptest::collection::btree_set(0usize..5, 1..=5), 1..9)) {
        let im = IncidenceMatrix::new(5, cols.into_iter().map(|s| s.into_iter().collect()).collect()).unwrap();
        let inv = invariants(&im);
        let b1 = inv.h1.rank as i64;
        prop_assert_eq!(inv.euler, 1 - b1 + inv.h2_rank as i64);
        for (row, c) in inv.h2_basis.iter().zip(&inv.c1) {
            prop_assert_eq!(*c, row.iter().sum::<i64>());
        }
    }
}

trait ZeroLike {
    fn is_zero_like(&self) -> bool;
}

impl ZeroLike for BigInt {
    fn is_zero_like(&self) -> bool {
        *self == BigInt::from(0)
    }
}
