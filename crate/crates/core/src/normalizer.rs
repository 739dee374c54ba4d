//! Classification of letter bijections that normalize a group action, and
//! the kernel/image bookkeeping around the map `h ↦ α_h`.

use std::collections::BTreeSet;

use crate::action::GroupAction;
use crate::automorphism::{AutomorphismError, LetterMap, SlidingAutomorphism};
use crate::group::Elem;
use crate::language::Language;
use crate::word::Letter;

/// Why no group automorphism `α` with `h(g·a) = α(g)·h(a)` exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rejection {
    /// No element `k` satisfies `h(g·a) = k·h(a)` for all letters; `letter`
    /// is where the last remaining candidate failed.
    NoCompatibleElement { element: Elem, letter: Letter },
    /// Two elements are forced to the same image.
    AlphaNotBijective { a: Elem, b: Elem },
    /// `α(a·b) ≠ α(a)·α(b)`.
    AlphaNotMultiplicative { a: Elem, b: Elem },
    /// The action is not faithful and no choice among the compatible
    /// elements is a bijective homomorphism.
    NoConsistentChoice,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalizerVerdict {
    Accepted {
        /// `alpha[g]` is the element with `h∘T^g = T^{alpha[g]}∘h`.
        alpha: Vec<Elem>,
        /// Holds when the action is faithful.
        unique: bool,
    },
    Rejected(Rejection),
}

impl NormalizerVerdict {
    pub fn alpha(&self) -> Option<&[Elem]> {
        match self {
            NormalizerVerdict::Accepted { alpha, .. } => Some(alpha),
            NormalizerVerdict::Rejected(_) => None,
        }
    }

    pub fn is_accepted(&self) -> bool {
        self.alpha().is_some()
    }
}

fn check_alphabet(h: &LetterMap, action: &GroupAction) -> Result<(), AutomorphismError> {
    if h.alphabet_size() != action.alphabet_size() {
        return Err(AutomorphismError::AlphabetMismatch {
            expected: action.alphabet_size(),
            found: h.alphabet_size(),
        });
    }
    Ok(())
}

/// True iff `h(g·a) = alpha(g)·h(a)` for every `g` and `a`.
pub fn satisfies_relation(h: &LetterMap, action: &GroupAction, alpha: &[Elem]) -> bool {
    action.group().elements().all(|g| {
        (0..action.alphabet_size())
            .all(|a| h.apply(action.act(g, a)) == action.act(alpha[g], h.apply(a)))
    })
}

/// True iff `h` commutes with every `T^g`.
pub fn commutes_with_action(h: &LetterMap, action: &GroupAction) -> bool {
    action.group().elements().all(|g| {
        (0..action.alphabet_size()).all(|a| h.apply(action.act(g, a)) == action.act(g, h.apply(a)))
    })
}

pub fn classify_normalizer(
    h: &LetterMap,
    action: &GroupAction,
) -> Result<NormalizerVerdict, AutomorphismError> {
    check_alphabet(h, action)?;
    let group = action.group();
    let n = group.order();

    // Candidates for α(g), filtered one letter at a time. `g` itself is
    // listed first so that commuting maps get α = id on unfaithful actions.
    let mut candidates: Vec<Vec<Elem>> = Vec::with_capacity(n);
    for g in group.elements() {
        let mut pool: Vec<Elem> = std::iter::once(g)
            .chain(group.elements().filter(|&k| k != g))
            .collect();
        for a in 0..action.alphabet_size() {
            let target = h.apply(action.act(g, a));
            let ha = h.apply(a);
            let before = pool.len();
            pool.retain(|&k| action.act(k, ha) == target);
            if pool.is_empty() {
                debug_assert!(before > 0);
                return Ok(NormalizerVerdict::Rejected(
                    Rejection::NoCompatibleElement {
                        element: g,
                        letter: a,
                    },
                ));
            }
        }
        candidates.push(pool);
    }

    let unique = action.diagnostics().faithful();
    if candidates.iter().all(|c| c.len() == 1) {
        let alpha: Vec<Elem> = candidates.iter().map(|c| c[0]).collect();
        let mut preimage = vec![usize::MAX; n];
        for g in group.elements() {
            let prev = std::mem::replace(&mut preimage[alpha[g]], g);
            if prev != usize::MAX {
                return Ok(NormalizerVerdict::Rejected(Rejection::AlphaNotBijective {
                    a: prev,
                    b: g,
                }));
            }
        }
        for a in group.elements() {
            for b in group.elements() {
                if alpha[group.mul(a, b)] != group.mul(alpha[a], alpha[b]) {
                    return Ok(NormalizerVerdict::Rejected(
                        Rejection::AlphaNotMultiplicative { a, b },
                    ));
                }
            }
        }
        return Ok(NormalizerVerdict::Accepted { alpha, unique });
    }

    let mut alpha = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if search_alpha(action, &candidates, 0, &mut alpha, &mut used) {
        Ok(NormalizerVerdict::Accepted { alpha, unique })
    } else {
        Ok(NormalizerVerdict::Rejected(Rejection::NoConsistentChoice))
    }
}

/// Backtracking over compatible elements, keeping the partial assignment
/// injective and multiplicative wherever all three values are assigned.
fn search_alpha(
    action: &GroupAction,
    candidates: &[Vec<Elem>],
    g: Elem,
    alpha: &mut [Elem],
    used: &mut [bool],
) -> bool {
    let group = action.group();
    if g == candidates.len() {
        return true;
    }
    for &k in &candidates[g] {
        if used[k] {
            continue;
        }
        alpha[g] = k;
        let consistent = (0..=g).all(|x| {
            let checks = [(x, g), (g, x)];
            checks.iter().all(|&(p, q)| {
                let pq = group.mul(p, q);
                pq > g || alpha[pq] == group.mul(alpha[p], alpha[q])
            })
        });
        if consistent {
            used[k] = true;
            if search_alpha(action, candidates, g + 1, alpha, used) {
                return true;
            }
            used[k] = false;
        }
    }
    alpha[g] = usize::MAX;
    false
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifiedCandidate {
    pub label: String,
    pub verdict: NormalizerVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSequenceReport {
    pub classified: Vec<ClassifiedCandidate>,
    /// Accepted candidates with `α = id`.
    pub kernel: Vec<String>,
    /// Candidates commuting with every `T^g`, found by direct evaluation.
    pub commuting: Vec<String>,
    /// Distinct automorphisms `α_h`, sorted.
    pub image: Vec<Vec<Elem>>,
    /// First accepted pair `(h₁, h₂)` where `α_{h₁∘h₂} ≠ α_{h₁}∘α_{h₂}`.
    pub homomorphism_failure: Option<(String, String)>,
    /// Set when the acting group is cyclic: whether the image has at most
    /// two elements.
    pub index_at_most_two: Option<bool>,
    /// Every accepted `α` re-verified against the defining relation.
    pub relations_verified: bool,
}

impl ExactSequenceReport {
    pub fn kernel_matches_commutant(&self) -> bool {
        self.kernel == self.commuting
    }

    pub fn is_homomorphism(&self) -> bool {
        self.homomorphism_failure.is_none()
    }
}

pub fn exact_sequence_report(
    candidates: &[LetterMap],
    action: &GroupAction,
) -> Result<ExactSequenceReport, AutomorphismError> {
    let group = action.group();
    let identity: Vec<Elem> = group.elements().collect();
    let mut classified = Vec::with_capacity(candidates.len());
    for h in candidates {
        classified.push(ClassifiedCandidate {
            label: h.label().to_string(),
            verdict: classify_normalizer(h, action)?,
        });
    }

    let accepted: Vec<(&LetterMap, &[Elem])> = candidates
        .iter()
        .zip(&classified)
        .filter_map(|(h, c)| c.verdict.alpha().map(|a| (h, a)))
        .collect();

    let kernel = accepted
        .iter()
        .filter(|(_, a)| *a == identity.as_slice())
        .map(|(h, _)| h.label().to_string())
        .collect();
    let commuting = accepted
        .iter()
        .filter(|(h, _)| commutes_with_action(h, action))
        .map(|(h, _)| h.label().to_string())
        .collect();
    let image: Vec<Vec<Elem>> = accepted
        .iter()
        .map(|(_, a)| a.to_vec())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let relations_verified = accepted
        .iter()
        .all(|(h, a)| satisfies_relation(h, action, a));

    let faithful = action.diagnostics().faithful();
    let mut homomorphism_failure = None;
    'outer: for (h1, a1) in &accepted {
        for (h2, a2) in &accepted {
            let composed: Vec<Elem> = group.elements().map(|g| a1[a2[g]]).collect();
            let h = h1.compose(h2);
            let ok = match classify_normalizer(&h, action)? {
                NormalizerVerdict::Accepted { alpha, .. } if faithful => alpha == composed,
                NormalizerVerdict::Accepted { .. } => satisfies_relation(&h, action, &composed),
                NormalizerVerdict::Rejected(_) => false,
            };
            if !ok {
                homomorphism_failure = Some((h1.label().to_string(), h2.label().to_string()));
                break 'outer;
            }
        }
    }

    let cyclic = group
        .elements()
        .any(|g| group.element_order(g) == group.order());
    Ok(ExactSequenceReport {
        classified,
        kernel,
        commuting,
        index_at_most_two: cyclic.then_some(image.len() <= 2),
        image,
        homomorphism_failure,
        relations_verified,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FreenessVerdict {
    /// No letter of the language is fixed, so no sequence is fixed.
    Free,
    /// Fixed letters occur in the language; freeness is not decided.
    FixedLetters(Vec<Letter>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreenessReport {
    pub entries: Vec<(String, FreenessVerdict)>,
    pub skipped_identity: usize,
}

impl FreenessReport {
    pub fn all_free(&self) -> bool {
        self.entries
            .iter()
            .all(|(_, v)| *v == FreenessVerdict::Free)
    }
}

pub fn freeness_check(accepted: &[SlidingAutomorphism], lang: &Language) -> FreenessReport {
    let occurring: BTreeSet<Letter> = lang.letters().into_iter().collect();
    let mut report = FreenessReport {
        entries: Vec::new(),
        skipped_identity: 0,
    };
    for aut in accepted {
        if aut.is_identity() {
            report.skipped_identity += 1;
            continue;
        }
        let fixed: Vec<Letter> = aut
            .base()
            .fixed_letters()
            .into_iter()
            .filter(|a| occurring.contains(a))
            .collect();
        let verdict = if fixed.is_empty() {
            FreenessVerdict::Free
        } else {
            FreenessVerdict::FixedLetters(fixed)
        };
        report
            .entries
            .push((aut.base().label().to_string(), verdict));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::ActionKind;
    use crate::automorphism::lift_letter_map;
    use crate::group::FiniteGroup;
    use crate::language::{generate_language, Budget};
    use crate::substitution::{Substitution, SubstitutionSequence};

    fn left(group: FiniteGroup) -> GroupAction {
        GroupAction::new(group, ActionKind::LeftTranslation).unwrap()
    }

    fn right_translation(g: &FiniteGroup, c: Elem) -> LetterMap {
        LetterMap::new(g.elements().map(|x| g.mul(x, c)).collect(), format!("R{c}")).unwrap()
    }

    fn conjugation(g: &FiniteGroup, k: Elem) -> LetterMap {
        LetterMap::new(
            g.elements().map(|x| g.conjugate(k, x)).collect(),
            format!("C{k}"),
        )
        .unwrap()
    }

    /// Independent oracle: all bijections α with the defining relation,
    /// by brute force over every element for every g.
    fn brute_alpha(h: &LetterMap, action: &GroupAction) -> Vec<Vec<Elem>> {
        let g = action.group();
        g.elements()
            .map(|x| {
                g.elements()
                    .filter(|&k| {
                        (0..action.alphabet_size())
                            .all(|a| h.apply(action.act(x, a)) == action.act(k, h.apply(a)))
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn s3_right_translations_have_identity_alpha() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let action = left(s3.clone());
        for c in s3.elements() {
            let h = right_translation(&s3, c);
            let v = classify_normalizer(&h, &action).unwrap();
            let id: Vec<Elem> = s3.elements().collect();
            assert_eq!(
                v,
                NormalizerVerdict::Accepted {
                    alpha: id,
                    unique: true
                }
            );
        }
    }

    #[test]
    fn s3_conjugations_give_inner_automorphisms() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let action = left(s3.clone());
        for k in s3.elements() {
            let h = conjugation(&s3, k);
            let alpha = classify_normalizer(&h, &action)
                .unwrap()
                .alpha()
                .unwrap()
                .to_vec();
            let expect: Vec<Elem> = s3.elements().map(|g| s3.conjugate(k, g)).collect();
            assert_eq!(alpha, expect);
            let oracle = brute_alpha(&h, &action);
            assert!(oracle.iter().zip(&alpha).all(|(c, &a)| c == &vec![a]));
            assert!(satisfies_relation(&h, &action, &alpha));
        }
    }

    #[test]
    fn z4_negation_has_alpha_negation() {
        let action = left(FiniteGroup::cyclic(4).unwrap());
        let neg = LetterMap::new(vec![0, 3, 2, 1], "neg").unwrap();
        let v = classify_normalizer(&neg, &action).unwrap();
        assert_eq!(v.alpha().unwrap(), &[0, 3, 2, 1]);
    }

    #[test]
    fn non_normalizing_map_rejected_with_witness() {
        let action = left(FiniteGroup::cyclic(4).unwrap());
        let swap = LetterMap::new(vec![0, 2, 1, 3], "(1 2)").unwrap();
        match classify_normalizer(&swap, &action).unwrap() {
            NormalizerVerdict::Rejected(Rejection::NoCompatibleElement { element, letter }) => {
                let oracle = brute_alpha(&swap, &action);
                assert!(oracle[element].is_empty());
                assert!(letter < 4);
            }
            other => panic!("{other:?}"),
        }
        assert!(classify_normalizer(&LetterMap::identity(3), &action).is_err());
    }

    #[test]
    fn unfaithful_action_prefers_identity_alpha() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let action = GroupAction::new(
            z4,
            ActionKind::Quotient {
                quotient: z2,
                projection: vec![0, 1, 0, 1],
            },
        )
        .unwrap();
        let flip = LetterMap::new(vec![1, 0], "flip").unwrap();
        match classify_normalizer(&flip, &action).unwrap() {
            NormalizerVerdict::Accepted { alpha, unique } => {
                assert!(!unique);
                assert_eq!(alpha, vec![0, 1, 2, 3]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn s3_exact_sequence() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let action = left(s3.clone());
        let mut cands: Vec<LetterMap> = s3.elements().map(|c| right_translation(&s3, c)).collect();
        cands.extend(s3.elements().map(|k| conjugation(&s3, k)));
        let r = exact_sequence_report(&cands, &action).unwrap();
        let rights: Vec<String> = (0..6).map(|c| format!("R{c}")).collect();
        // conjugation by the identity is the identity map, also in the kernel
        let mut expected_kernel = rights.clone();
        expected_kernel.push("C0".into());
        assert_eq!(r.kernel, expected_kernel);
        assert!(r.kernel_matches_commutant());
        assert!(r.is_homomorphism());
        assert!(r.relations_verified);
        // inner automorphisms of S3: six distinct ones, S3 has trivial center
        let inner: BTreeSet<Vec<Elem>> = s3
            .elements()
            .map(|k| s3.elements().map(|g| s3.conjugate(k, g)).collect())
            .collect();
        assert_eq!(r.image, inner.into_iter().collect::<Vec<_>>());
        assert_eq!(r.index_at_most_two, None);
    }

    #[test]
    fn identity_only_sequence() {
        let action = left(FiniteGroup::cyclic(4).unwrap());
        let r = exact_sequence_report(&[LetterMap::identity(4)], &action).unwrap();
        assert_eq!(r.kernel, vec!["id".to_string()]);
        assert_eq!(r.image, vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn z4_translations_and_negation_image_order_two() {
        let action = left(FiniteGroup::cyclic(4).unwrap());
        let mut cands: Vec<LetterMap> = (0..4)
            .map(|c| {
                LetterMap::new((0..4).map(|a| (a + c) % 4).collect(), format!("+{c}")).unwrap()
            })
            .collect();
        cands.push(LetterMap::new(vec![0, 3, 2, 1], "neg").unwrap());
        let r = exact_sequence_report(&cands, &action).unwrap();
        assert_eq!(r.image.len(), 2);
        assert_eq!(r.index_at_most_two, Some(true));
        assert_eq!(r.kernel.len(), 4);
        assert!(r.kernel_matches_commutant() && r.is_homomorphism());
    }

    #[test]
    fn freeness() {
        let action = left(FiniteGroup::cyclic(4).unwrap());
        let sub = Substitution::from_action(&action, &[0, 1, 3]).unwrap();
        let lang = generate_language(
            &SubstitutionSequence::stationary(sub),
            0,
            4,
            4,
            &Budget::default(),
        )
        .unwrap();
        let lifts: Vec<SlidingAutomorphism> = (0..4)
            .map(|c| {
                lift_letter_map(
                    &LetterMap::new((0..4).map(|a| (a + c) % 4).collect(), format!("+{c}"))
                        .unwrap(),
                )
            })
            .collect();
        let r = freeness_check(&lifts, &lang);
        assert_eq!(r.skipped_identity, 1);
        assert_eq!(r.entries.len(), 3);
        assert!(r.all_free());

        let swap = lift_letter_map(&LetterMap::new(vec![0, 2, 1, 3], "(1 2)").unwrap());
        let r = freeness_check(&[swap], &lang);
        assert_eq!(r.entries[0].1, FreenessVerdict::FixedLetters(vec![0, 3]));
        assert!(!r.all_free());
    }
}
