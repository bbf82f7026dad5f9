//! Cross-module invariants beyond the acceptance criteria: the two
//! classification routes agree exhaustively on small targets, and the
//! reflexive classifier matches the general one on reflexive inputs.

use minhom_core::*;

#[test]
fn dichotomy_routes_agree_exhaustively_up_to_four_vertices() {
    let mut checked = 0usize;
    for n in 1..=4 {
        for h in all_semicomplete_wpl(n) {
            let direct = classify_wpl(&h).unwrap();
            let composed = classify_via_composition(&h).unwrap();
            assert_eq!(direct.is_polynomial(), composed, "disagreement on {h:?}");
            checked += 1;
        }
    }
    assert_eq!(checked, 2 + 12 + 216 + 11_664);
}

#[test]
fn dichotomy_routes_agree_on_sampled_larger_targets() {
    for seed in 0..400u64 {
        let n = 5 + (seed as usize) % 2;
        let h = random_semicomplete_wpl(seed ^ 0xA11CE, n, 0.35, 0.4);
        let direct = classify_wpl(&h).unwrap();
        let composed = classify_via_composition(&h).unwrap();
        assert_eq!(direct.is_polynomial(), composed, "seed {seed}");
        if let Classification::PolynomialMinMax { ordering } = &direct {
            assert_eq!(check_minmax(&h, ordering), None, "seed {seed}");
            assert!(slices_are_intervals(&h, ordering), "seed {seed}");
        }
    }
}

#[test]
fn reflexive_classifier_matches_general_route() {
    // exhaustively on 3-vertex reflexive targets, sampled beyond
    for h in all_semicomplete_wpl(3) {
        if !h.is_reflexive() {
            continue;
        }
        let reflexive = classify_reflexive(&h).unwrap();
        let general = classify_wpl(&h).unwrap();
        assert_eq!(
            reflexive.is_polynomial(),
            general.is_polynomial(),
            "verdicts differ on {h:?}"
        );
        reflexive.verify(&h).unwrap();
    }
    for seed in 0..150u64 {
        let n = 2 + (seed as usize) % 5;
        let h = random_semicomplete_wpl(seed ^ 0xF1E7, n, 0.4, 1.0);
        let reflexive = classify_reflexive(&h).unwrap();
        let general = classify_wpl(&h).unwrap();
        assert_eq!(reflexive.is_polynomial(), general.is_polynomial(), "seed {seed}");
        reflexive.verify(&h).unwrap();
    }
}
