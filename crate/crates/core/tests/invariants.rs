//! Cross-module invariants checked on random inputs.

use cantor_core::scenario::oracle_language;
use cantor_core::{
    generate_language, ActionKind, Budget, FiniteGroup, GroupAction, LetterMap,
    SubstitutionSequence,
};
use proptest::prelude::*;

fn cyclic_seq(m: usize, schedule: Vec<Vec<usize>>) -> (GroupAction, SubstitutionSequence) {
    let action =
        GroupAction::new(FiniteGroup::cyclic(m).unwrap(), ActionKind::LeftTranslation).unwrap();
    let seq = SubstitutionSequence::from_action_schedule(&action, &schedule).unwrap();
    (action, seq)
}

/// A nested symmetric schedule for Z/m: `0` followed by a growing number of
/// inverse pairs `x, m - x` taken in random order.
fn schedule(m: usize) -> impl Strategy<Value = (usize, Vec<Vec<usize>>)> {
    let pairs: Vec<usize> = (1..=m / 2).collect();
    (
        Just(pairs).prop_shuffle(),
        prop::collection::vec(1usize..=m / 2, 1..4),
    )
        .prop_map(move |(order, mut cuts)| {
            cuts.sort_unstable();
            let sched = cuts
                .into_iter()
                .map(|k| {
                    let mut gens = vec![0];
                    for &x in &order[..k] {
                        gens.push(x);
                        if m - x != x {
                            gens.push(m - x);
                        }
                    }
                    gens
                })
                .collect();
            (m, sched)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generator_matches_oracle((m, sched) in (2usize..6).prop_flat_map(schedule), seed in 0usize..6, max_len in 1usize..8, depth in 0usize..4) {
        let (_, seq) = cyclic_seq(m, sched);
        let seed = seed % m;
        let budget = Budget::default();
        let g = generate_language(&seq, seed, max_len, depth, &budget).unwrap();
        let o = oracle_language(&seq, seed, max_len, depth, &budget).unwrap();
        prop_assert_eq!(g, o);
    }

    #[test]
    fn languages_grow_with_depth(m in 2usize..6, seed in 0usize..6, max_len in 1usize..8, depth in 0usize..4) {
        let (action, _) = cyclic_seq(m, vec![vec![0]]);
        let gens = action.group().default_symmetric_generators();
        let seq = SubstitutionSequence::from_action_schedule(&action, &[gens]).unwrap();
        let seed = seed % m;
        let budget = Budget::default();
        let a = generate_language(&seq, seed, max_len, depth, &budget).unwrap();
        let b = generate_language(&seq, seed, max_len, depth + 1, &budget).unwrap();
        for len in 1..=max_len {
            prop_assert!(a.stratum(len).is_subset(b.stratum(len)));
        }
    }

    #[test]
    fn translations_commute_with_left_action(m in 1usize..9, c in 0usize..9, g in 0usize..9, x in 0usize..9) {
        let (c, g, x) = (c % m, g % m, x % m);
        let action = GroupAction::new(FiniteGroup::cyclic(m).unwrap(), ActionKind::LeftTranslation).unwrap();
        let phi = LetterMap::new((0..m).map(|a| (a + c) % m).collect(), "phi").unwrap();
        prop_assert_eq!(phi.apply(action.act(g, x)), action.act(g, phi.apply(x)));
    }

    #[test]
    fn symmetric_group_axioms(a in 0usize..24, b in 0usize..24, c in 0usize..24) {
        let s4 = FiniteGroup::symmetric(4).unwrap();
        prop_assert_eq!(s4.mul(s4.mul(a, b), c), s4.mul(a, s4.mul(b, c)));
        prop_assert_eq!(s4.mul(a, s4.inv(a)), s4.identity());
    }
}
