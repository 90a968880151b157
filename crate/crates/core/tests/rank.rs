//! The rank function against a brute-force reading of its definition:
//! `r(B)` is the largest `n - dim ∩C` over central subsets `C ⊆ B`.

use num_traits::Zero;
use proptest::prelude::*;
use tutte_core::arrangement::{Arrangement, Hyperplane};
use tutte_core::rational::Rational;

/// Row-reduces `rows` in place; returns the rank.
fn eliminate(mut rows: Vec<Vec<Rational>>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = &rows[r][col] / &rows[rank][col];
                let pivot = rows[rank].clone();
                for (v, pv) in rows[r].iter_mut().zip(&pivot) {
                    *v -= &f * pv;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn coefficient_rank(hs: &[&Hyperplane]) -> usize {
    eliminate(hs.iter().map(|h| h.coeffs().to_vec()).collect())
}

fn is_central(hs: &[&Hyperplane]) -> bool {
    coefficient_rank(hs) == eliminate(hs.iter().map(|h| h.augmented_row()).collect())
}

fn subsets(len: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << len).map(move |mask| (0..len).filter(|&i| mask >> i & 1 == 1).collect())
}

fn brute_force_rank(arr: &Arrangement, members: &[usize]) -> usize {
    subsets(members.len())
        .map(|pick| pick.iter().map(|&i| &arr.hyperplanes()[members[i]]).collect::<Vec<_>>())
        .filter(|hs| is_central(hs))
        .map(|hs| coefficient_rank(&hs))
        .max()
        .unwrap_or(0)
}

fn arrangement_strategy() -> impl Strategy<Value = Arrangement> {
    (2usize..=4).prop_flat_map(|dim| {
        prop::collection::vec((prop::collection::vec(-2i64..=2, dim), -2i64..=2), 0..=8).prop_map(move |rows| {
            let hs: Vec<Hyperplane> = rows
                .iter()
                .filter_map(|(c, b)| Hyperplane::from_integers(c, *b).ok())
                .collect();
            Arrangement::new(dim, hs).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_matches_definition(arr in arrangement_strategy()) {
        let all: Vec<usize> = (0..arr.len()).collect();
        prop_assert_eq!(arr.rank(), brute_force_rank(&arr, &all));
    }

    #[test]
    fn subset_ranks_match_elimination(arr in arrangement_strategy()) {
        for members in subsets(arr.len()) {
            let hs: Vec<&Hyperplane> = members.iter().map(|&i| &arr.hyperplanes()[i]).collect();
            let sr = arr.system_rank(&members);
            prop_assert_eq!(sr.coeff, coefficient_rank(&hs));
            prop_assert_eq!(sr.is_consistent(), is_central(&hs));
            let sub = arr.subarrangement(members.clone()).unwrap();
            prop_assert_eq!(sub.is_central(), is_central(&hs));
        }
    }
}

#[test]
fn ten_hyperplanes_in_three_space() {
    let rows: &[(&[i64], i64)] = &[
        (&[1, 0, 0], 0),
        (&[0, 1, 0], 0),
        (&[0, 0, 1], 0),
        (&[1, 1, 0], 1),
        (&[1, 1, 0], 0),
        (&[0, 1, 1], 2),
        (&[1, 0, 1], -1),
        (&[1, 1, 1], 1),
        (&[1, -1, 0], 0),
        (&[2, 1, 0], 3),
    ];
    let hs: Vec<Hyperplane> = rows.iter().map(|(c, b)| Hyperplane::from_integers(c, *b).unwrap()).collect();
    let arr = Arrangement::new(3, hs).unwrap();
    let all: Vec<usize> = (0..arr.len()).collect();
    assert_eq!(arr.rank(), brute_force_rank(&arr, &all));
    for members in subsets(arr.len()).step_by(7) {
        let sub = arr.subarrangement(members.clone()).unwrap();
        if sub.is_central() {
            assert_eq!(sub.rank(), brute_force_rank(&arr, &members));
        }
    }
}

#[test]
fn parallel_lines_have_rank_one() {
    let arr = Arrangement::new(
        2,
        (0..4).map(|b| Hyperplane::from_integers(&[1, -1], b).unwrap()).collect::<Vec<_>>(),
    )
    .unwrap();
    assert_eq!(arr.rank(), 1);
    assert_eq!(brute_force_rank(&arr, &[0, 1, 2, 3]), 1);
}
