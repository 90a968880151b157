use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tutte_core::arrangement::{Arrangement, Hyperplane, Permutation};
use tutte_core::families::Family;
use tutte_core::symmetric::extract_representatives;

fn random_permutation(n: usize, rng: &mut ChaCha8Rng) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Permutation::new(images).unwrap()
}

#[test]
fn families_are_fixed_by_random_permutations() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for family in Family::ALL {
        for n in 2..=6 {
            let arr = family.arrangement(n).unwrap();
            assert!(arr.is_symmetric());
            for _ in 0..50 {
                let sigma = random_permutation(n, &mut rng);
                assert_eq!(arr.act(&sigma).unwrap(), arr, "{} n={n} σ={sigma}", family.name());
            }
        }
    }
}

#[test]
fn representatives_regenerate_the_family() {
    for family in Family::ALL {
        for n in 2..=5 {
            let arr = family.arrangement(n).unwrap();
            let reps: Vec<Hyperplane> = extract_representatives(&arr)
                .unwrap()
                .iter()
                .map(|r| r.equation().clone())
                .collect();
            assert_eq!(Arrangement::from_orbits(n, &reps).unwrap(), arr);
        }
    }
}

#[test]
fn family_sizes() {
    for n in 2..=6 {
        let pairs = n * (n - 1) / 2;
        assert_eq!(Family::WeylA.arrangement(n).unwrap().len(), pairs);
        assert_eq!(Family::Catalan.arrangement(n).unwrap().len(), 3 * pairs);
        assert_eq!(Family::ShiThreshold.arrangement(n).unwrap().len(), 2 * pairs);
        assert_eq!(Family::IArrangement.arrangement(n).unwrap().len(), 2 * n + pairs);
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn orbits_are_closed(
        coeffs in prop::collection::vec(-3i64..=3, 4),
        rhs in -2i64..=2,
        seed in any::<u64>(),
    ) {
        prop_assume!(coeffs.iter().any(|&c| c != 0));
        let h = Hyperplane::from_integers(&coeffs, rhs).unwrap();
        let orbit = h.orbit_in(4).unwrap();
        prop_assert!(orbit.contains(&h));
        prop_assert_eq!(factorial(4) % orbit.len(), 0);
        let arr = Arrangement::new(4, orbit.iter().cloned()).unwrap();
        prop_assert!(arr.is_symmetric());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..5 {
            let sigma = random_permutation(4, &mut rng);
            prop_assert!(orbit.contains(&h.act(&sigma).unwrap()));
        }
        prop_assert_eq!(extract_representatives(&arr).unwrap().len(), 1);
    }

    #[test]
    fn action_is_a_group_action(
        coeffs in prop::collection::vec(-3i64..=3, 4),
        rhs in -2i64..=2,
        seed in any::<u64>(),
    ) {
        prop_assume!(coeffs.iter().any(|&c| c != 0));
        let h = Hyperplane::from_integers(&coeffs, rhs).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (s, t) = (random_permutation(4, &mut rng), random_permutation(4, &mut rng));
        prop_assert_eq!(h.act(&t).unwrap().act(&s).unwrap(), h.act(&s.compose(&t)).unwrap());
        prop_assert_eq!(h.act(&s).unwrap().act(&s.inverse()).unwrap(), h);
    }
}
