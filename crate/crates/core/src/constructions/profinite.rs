//! A finite level of a profinite group acting on itself by left
//! translation, with right translations as centralizer elements and
//! conjugations as normalizer elements.

use super::ConstructionError;
use crate::action::{ActionKind, GroupAction};
use crate::automorphism::LetterMap;
use crate::group::FiniteGroup;
use crate::normalizer::{classify_normalizer, NormalizerVerdict};
use crate::tower::QuotientTower;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfiniteReport {
    pub order: usize,
    /// Right translations accepted with `α = id`.
    pub centralizer_count: usize,
    /// Right translations that were rejected or got a nontrivial `α`.
    pub misclassified: Vec<String>,
    /// No non-identity right translation fixes a letter.
    pub free: bool,
    /// The right translations move the identity to every letter.
    pub transitive: bool,
    /// Conjugations accepted with a nontrivial `α`.
    pub proper_normalizer: Vec<String>,
    /// Conjugations that are centralizer elements (`α = id`).
    pub central_conjugations: usize,
    pub rejected_conjugations: Vec<String>,
}

impl ProfiniteReport {
    pub fn passed(&self) -> bool {
        self.centralizer_count == self.order
            && self.misclassified.is_empty()
            && self.free
            && self.transitive
            && self.rejected_conjugations.is_empty()
    }
}

pub fn right_translations(group: &FiniteGroup) -> Vec<LetterMap> {
    group
        .elements()
        .map(|c| {
            LetterMap::new(
                group.elements().map(|x| group.mul(x, c)).collect(),
                format!("R{c}"),
            )
            .expect("right translation is a bijection")
        })
        .collect()
}

pub fn conjugations(group: &FiniteGroup) -> Vec<LetterMap> {
    group
        .elements()
        .map(|k| {
            LetterMap::new(
                group.elements().map(|x| group.conjugate(k, x)).collect(),
                format!("C{k}"),
            )
            .expect("conjugation is a bijection")
        })
        .collect()
}

/// Classifies the right translations and conjugations of `group` against
/// its left-translation action.
pub fn classify_translation_family(
    group: &FiniteGroup,
) -> Result<(GroupAction, Vec<LetterMap>, ProfiniteReport), ConstructionError> {
    let action = GroupAction::new(group.clone(), ActionKind::LeftTranslation)?;
    let identity: Vec<usize> = group.elements().collect();
    let rights = right_translations(group);
    let mut centralizer_count = 0;
    let mut misclassified = Vec::new();
    for h in &rights {
        match classify_normalizer(h, &action)? {
            NormalizerVerdict::Accepted { alpha, .. } if alpha == identity => {
                centralizer_count += 1
            }
            _ => misclassified.push(h.label().to_string()),
        }
    }
    let free = rights.iter().skip(1).all(|h| h.fixed_letters().is_empty());
    let mut reached = vec![false; group.order()];
    for h in &rights {
        reached[h.apply(group.identity())] = true;
    }
    let mut proper_normalizer = Vec::new();
    let mut central_conjugations = 0;
    let mut rejected_conjugations = Vec::new();
    for h in conjugations(group) {
        match classify_normalizer(&h, &action)? {
            NormalizerVerdict::Accepted { alpha, .. } if alpha == identity => {
                central_conjugations += 1
            }
            NormalizerVerdict::Accepted { .. } => proper_normalizer.push(h.label().to_string()),
            NormalizerVerdict::Rejected(_) => rejected_conjugations.push(h.label().to_string()),
        }
    }
    let report = ProfiniteReport {
        order: group.order(),
        centralizer_count,
        misclassified,
        free,
        transitive: reached.iter().all(|&r| r),
        proper_normalizer,
        central_conjugations,
        rejected_conjugations,
    };
    Ok((action, rights, report))
}

/// The level-`depth` group of `tower` (1-based).
pub fn build_profinite_realization(
    tower: &QuotientTower,
    depth: usize,
) -> Result<(GroupAction, Vec<LetterMap>, ProfiniteReport), ConstructionError> {
    if depth == 0 || depth > tower.depth() {
        return Err(ConstructionError::DepthOutOfRange {
            requested: depth,
            height: tower.depth(),
        });
    }
    classify_translation_family(tower.level(depth))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_tower_levels() {
        let t = QuotientTower::cyclic_chain(&[2, 4, 8]).unwrap();
        let (_, maps, r) = build_profinite_realization(&t, 3).unwrap();
        assert_eq!(maps.len(), 8);
        assert_eq!(r.centralizer_count, 8);
        assert!(r.passed() && r.free && r.transitive);
        assert!(r.proper_normalizer.is_empty());
        assert_eq!(r.central_conjugations, 8);
        let (_, _, r1) = build_profinite_realization(&t, 1).unwrap();
        assert_eq!(r1.centralizer_count, 2);
        assert!(build_profinite_realization(&t, 4).is_err());
        assert!(build_profinite_realization(&t, 0).is_err());
    }

    #[test]
    fn s3_conjugations_are_proper_normalizer_elements() {
        let (_, _, r) = classify_translation_family(&FiniteGroup::symmetric(3).unwrap()).unwrap();
        assert_eq!(r.centralizer_count, 6);
        assert!(r.passed());
        assert_eq!(r.proper_normalizer.len(), 5);
        assert_eq!(r.central_conjugations, 1);
    }
}
