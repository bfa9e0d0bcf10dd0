//! Independent computation paths for sphere and ball sizes must agree.

use kendall_perfect::mahonian::{self, SphereTable};
use kendall_perfect::oracle;
use kendall_perfect::perm::{enumerate_sn, Permutation};
use num_bigint::BigUint;
use num_traits::One;
use proptest::prelude::*;

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

#[test]
fn small_radius_pivot_matches_table() {
    let table = SphereTable::build(60).unwrap();
    for n in 5..=60 {
        for i in 4..n {
            assert_eq!(
                mahonian::sphere_size_lemma4(&table, n, i).unwrap(),
                table.sphere_size(n, i as i64).unwrap(),
                "n={n} i={i}"
            );
        }
    }
}

#[test]
fn large_radius_pivot_matches_table() {
    // rows up to floor(C(40,2)/2) - 1, truncated to the columns the recursion reads
    let max_n = 40;
    let half = mahonian::max_distance(max_n) / 2;
    let table = SphereTable::build_truncated(half - 1, half).unwrap();
    for n in 5..=max_n {
        for i in n..=mahonian::max_distance(n) / 2 {
            assert_eq!(
                mahonian::sphere_size_lemma6(&table, n, i).unwrap(),
                table.sphere_size(n, i as i64).unwrap(),
                "n={n} i={i}"
            );
        }
    }
}

#[test]
fn column_sweep_matches_table() {
    let max_n = 16;
    let rows = mahonian::sphere_rows_by_lemmas(max_n).unwrap();
    let table = SphereTable::build(max_n).unwrap();
    for n in 2..=max_n {
        assert_eq!(rows[n - 2], table.sphere_row(n).unwrap(), "n={n}");
    }
}

#[test]
fn rows_sum_to_factorial_and_are_symmetric_unimodal() {
    let table = SphereTable::build(60).unwrap();
    for n in 2..=60 {
        let row = table.sphere_row(n).unwrap();
        assert_eq!(row.iter().sum::<BigUint>(), factorial(n), "n={n}");
        assert!(row.iter().eq(row.iter().rev()), "n={n}");
        let mid = row.len() / 2;
        assert!(row[..=mid].windows(2).all(|w| w[0] <= w[1]), "n={n}");
        let balls: Vec<BigUint> = (0..row.len() as u64)
            .map(|r| table.ball_size(n, r).unwrap().value)
            .collect();
        assert!(balls.windows(2).all(|w| w[0] < w[1]), "n={n}");
        assert_eq!(*balls.last().unwrap(), factorial(n));
    }
}

#[test]
fn truncated_table_agrees_with_full_table() {
    let full = SphereTable::build(30).unwrap();
    let cut = SphereTable::build_truncated(30, 7).unwrap();
    for n in 2..=30 {
        let top = mahonian::max_distance(n) as u64;
        for r in (0..=top.min(7)).chain(top.saturating_sub(8)..=top + 2) {
            assert_eq!(
                cut.ball_size(n, r).unwrap(),
                full.ball_size(n, r).unwrap(),
                "n={n} r={r}"
            );
        }
    }
}

#[test]
fn ball_census_is_center_independent() {
    let table = SphereTable::build(6).unwrap();
    for n in 2..=6usize {
        let centers: Vec<Permutation> = enumerate_sn(n).unwrap().step_by(7).collect();
        for r in 0..=mahonian::max_distance(n) as u64 {
            let expected = table.ball_size(n, r).unwrap().value;
            for c in &centers {
                assert_eq!(
                    oracle::ball_census(n, r, c).unwrap(),
                    expected,
                    "n={n} r={r} center={c}"
                );
            }
        }
    }
}

proptest! {
    #[test]
    fn census_at_random_center_n7(seed in proptest::collection::vec(0usize..7, 7), r in 0u64..=21) {
        // random center via a sequence of swaps
        let mut entries: Vec<usize> = (1..=7).collect();
        for (k, s) in seed.iter().enumerate() {
            entries.swap(k, *s);
        }
        let center = Permutation::new(&entries).unwrap();
        let table = SphereTable::build(7).unwrap();
        prop_assert_eq!(oracle::ball_census(7, r, &center).unwrap(), table.ball_size(7, r).unwrap().value);
    }

    #[test]
    fn closed_forms_hold_far_beyond_the_table(n in 61u64..100_000, r in 0usize..=5) {
        // exact n! / ball is not needed; compare against the sphere forms summed
        let ball = mahonian::ball_closed_form(n, r).unwrap();
        let summed: BigUint = (0..=r).map(|i| mahonian::sphere_closed_form(n, i).unwrap()).sum();
        prop_assert_eq!(ball, summed);
    }
}
