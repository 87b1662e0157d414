mod common;

use common::*;
use num_bigint::BigUint;
use ordercheck::gen::{encode_digraph6, parse_digraph6};
use ordercheck::poset::{
    canonical_form, canonical_labeling, canonical_poset, count_linear_extensions, is_canonical, linear_extensions,
    order_ideals, transitive_closure, CanonicalForm,
};
use ordercheck::{Poset, PosetError};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn invariants_hold(poset in poset_strategy(12)) {
        prop_assert!(poset.check_invariants());
        for (i, j) in poset.cover_pairs() {
            prop_assert!(i < j);
        }
    }

    #[test]
    fn extension_count_matches_permutation_search(poset in poset_strategy(6)) {
        prop_assert_eq!(count_linear_extensions(&poset), brute_linear_extensions(&poset));
        let listed: Vec<_> = linear_extensions(&poset).map(|e| e.into_word()).collect();
        prop_assert_eq!(BigUint::from(listed.len()), count_linear_extensions(&poset));
        prop_assert!(listed.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(listed.iter().all(|w| is_extension(&poset, w)));
    }

    #[test]
    fn ideal_count_matches_subset_search(poset in poset_strategy(10)) {
        let lattice = order_ideals(&poset);
        prop_assert_eq!(lattice.len(), brute_ideal_count(&poset));
        let ideals = lattice.ideals();
        prop_assert_eq!(ideals[0], 0);
        prop_assert_eq!(*ideals.last().unwrap(), (1u32 << poset.len()) - 1);
        prop_assert!(ideals.windows(2).all(|w| w[0] < w[1]));
        for i in 0..lattice.len() {
            for (x, k) in lattice.covers(i) {
                prop_assert_eq!(ideals[k], ideals[i] | 1 << x);
            }
        }
    }

    #[test]
    fn canonical_form_ignores_labels(poset in poset_strategy(9), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (0..poset.len()).collect();
        perm.shuffle(&mut rng);
        let other = Poset::from_arcs(poset.len(), &permuted_arcs(&poset, &perm)).unwrap();
        let form = canonical_form(&poset);
        prop_assert_eq!(&canonical_form(&other), &form);
        let canon = canonical_poset(&poset);
        prop_assert!(is_canonical(&canon));
        prop_assert_eq!(CanonicalForm::from_bytes(form.as_bytes()).unwrap(), canon);
        prop_assert_eq!(canonical_labeling(&poset).len(), poset.len());
    }

    #[test]
    fn narrow_means_width_at_most_two(poset in poset_strategy(8)) {
        prop_assert_eq!(poset.is_narrow(), brute_width(&poset) <= 2);
    }

    #[test]
    fn graded_matches_chain_walk(poset in poset_strategy(8)) {
        prop_assert_eq!(poset.is_graded(), brute_is_graded(&poset));
    }

    #[test]
    fn digraph6_round_trip(poset in poset_strategy(16)) {
        let line = encode_digraph6(&poset);
        prop_assert_eq!(parse_digraph6(line.as_bytes()).unwrap(), poset);
    }

    #[test]
    fn closure_of_cover_matrix_is_identity(poset in poset_strategy(12)) {
        prop_assert_eq!(transitive_closure(&poset.cover_matrix()).unwrap(), poset);
        prop_assert_eq!(transitive_closure(&poset.relation_matrix()).unwrap(), poset);
    }
}

#[test]
fn closure_errors() {
    assert!(matches!(transitive_closure(&[]), Err(PosetError::Empty)));
    let cyc = vec![vec![false, true], vec![true, false]];
    assert!(matches!(transitive_closure(&cyc), Err(PosetError::CyclicInput(_))));
    let refl = vec![vec![true]];
    assert!(matches!(transitive_closure(&refl), Err(PosetError::ReflexiveInput(0))));
    assert!(Poset::antichain(17).is_err());
}

#[test]
fn relabeling_example() {
    // Only 3 ≺ 1 among three points: relabeled so that the old 3 precedes the old 1.
    let mut rel = vec![vec![false; 3]; 3];
    rel[2][0] = true;
    let p = transitive_closure(&rel).unwrap();
    assert!(p.less(0, 1));
    assert_eq!(p.relation_count(), 1);
    assert_eq!(p.hasse_diagram(), "1 < 2\n");
}
