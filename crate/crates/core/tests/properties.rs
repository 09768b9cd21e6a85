mod common;

use std::sync::Arc;

use proptest::prelude::*;

use fibcat_core::corr::{
    associator, collage, corr_to_profunctor, find_profunctor_iso, left_unitor, right_unitor,
};
use fibcat_core::fib::{is_cocartesian_fibration, is_discrete_opfibration, is_left_fibration};
use fibcat_core::gen::Gen;
use fibcat_core::homology::homology;
use fibcat_core::io::{
    category_from_json, category_to_json, profunctor_from_json, profunctor_to_json,
};
use fibcat_core::transport::{
    cocart_replacement, find_natural_iso, lfib_replacement, straighten_discrete_opfib, unstraighten,
};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn homology_agrees_with_the_boundary_oracle(seed in any::<u64>()) {
        let c = Gen::new(seed).category(4, 9);
        let top = 2;
        let simplices: usize = (0..=top + 1).map(|k| common::simplices(&c, k).len()).sum();
        prop_assume!(simplices <= 200);
        let ours = homology(&c, top).unwrap();
        let theirs = common::homology(&c, top);
        for (g, (rank, torsion)) in ours.groups.iter().zip(theirs) {
            prop_assert_eq!(g.rank, rank, "degree {}", g.degree);
            let torsion: Vec<u64> = torsion.iter().map(|&t| t as u64).collect();
            prop_assert_eq!(&g.torsion, &torsion, "degree {}", g.degree);
        }
    }

    #[test]
    fn homology_is_invariant_under_renumbering(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let c = g.category(4, 9);
        let d = g.shuffled(&c);
        prop_assert_eq!(homology(&c, 2).unwrap().groups, homology(&d, 2).unwrap().groups);
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let c = g.category(4, 10);
        let text = category_to_json(&c);
        let back = category_from_json(&text).unwrap();
        prop_assert!(back.validate().is_ok());
        prop_assert_eq!(category_to_json(&back), text);
        let p = g.bounded_profunctor(3, 8);
        let text = profunctor_to_json(&p);
        prop_assert_eq!(profunctor_to_json(&profunctor_from_json(&text).unwrap()), text);
    }

    #[test]
    fn straightening_inverts_unstraightening(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let base = Arc::new(g.category(3, 7));
        let Some(f) = g.set_functor(&base, 2).unwrap() else { return Ok(()) };
        let pi = unstraighten(&f).projection;
        prop_assert!(is_discrete_opfibration(&pi).holds);
        let back = straighten_discrete_opfib(&pi).unwrap();
        prop_assert!(find_natural_iso(&f, &back).is_some());
    }

    #[test]
    fn replacements_land_in_their_classes(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let n = 1 + g.index(2);
        let pi = g.over_interval(n, 10);
        prop_assert!(is_cocartesian_fibration(&cocart_replacement(&pi).unwrap().projection).holds);
        prop_assert!(is_left_fibration(&lfib_replacement(&pi).total.projection).holds);
    }

    #[test]
    fn collage_recovers_the_profunctor(seed in any::<u64>()) {
        let p = Gen::new(seed).bounded_profunctor(3, 8);
        prop_assert!(find_profunctor_iso(&p, &corr_to_profunctor(&collage(&p))).is_some());
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn coend_composition_is_unital_and_associative(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let a = Arc::new(g.category(2, 5));
        let b = Arc::new(g.category(2, 5));
        let c = Arc::new(g.category(2, 5));
        let d = Arc::new(g.category(2, 5));
        let (p, q, r) = (g.profunctor(&a, &b), g.profunctor(&b, &c), g.profunctor(&c, &d));
        prop_assert!(left_unitor(&p).is_ok());
        prop_assert!(right_unitor(&p).is_ok());
        prop_assert!(associator(&p, &q, &r).is_ok());
    }
}
