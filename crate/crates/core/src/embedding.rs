//! The centralizer embedding `φ ↦ φ̄`: letter maps commuting with the action
//! become letterwise automorphisms of the generated subshift.

use crate::action::GroupAction;
use crate::automorphism::{
    lift_letter_map, verify_equivariance, AutomorphismError, LetterMap, SlidingAutomorphism,
};
use crate::group::Elem;
use crate::language::{Language, SubshiftError};
use crate::substitution::Substitution;
use crate::word::Letter;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingReport {
    /// `(label, first failing letter)` for maps that are not equivariant.
    pub equivariance_failures: Vec<(String, Letter)>,
    /// Two lifts that agree on every single letter.
    pub duplicate: Option<(String, String)>,
    /// A pair whose composite lift differs from the composition of lifts.
    pub composition_failure: Option<(String, String)>,
    /// `table[i][j] = k` when `φ_i∘φ_j = φ_k`; `None` if the set is not
    /// closed under composition.
    pub composition_table: Option<Vec<Vec<usize>>>,
    /// A map whose powers exhaust the set, if any.
    pub cyclic_generator: Option<String>,
    /// `(label, length)` of the first stratum not mapped onto itself.
    pub language_failure: Option<(String, usize)>,
    pub lift_count: usize,
}

impl EmbeddingReport {
    pub fn injective(&self) -> bool {
        self.duplicate.is_none()
    }

    pub fn passed(&self) -> bool {
        self.equivariance_failures.is_empty()
            && self.duplicate.is_none()
            && self.composition_failure.is_none()
            && self.language_failure.is_none()
    }
}

pub fn embed_centralizer(
    action: &GroupAction,
    gens: &[Elem],
    auts: &[LetterMap],
    lang: &Language,
) -> Result<EmbeddingReport, SubshiftError> {
    let sub = Substitution::from_action(action, gens)?;
    let n = sub.alphabet_size();
    let mut equivariance_failures = Vec::new();
    for phi in auts {
        match verify_equivariance(&sub, phi) {
            Ok(()) => {}
            Err(AutomorphismError::NotEquivariant { letter, .. }) => {
                equivariance_failures.push((phi.label().to_string(), letter))
            }
            Err(_) => {
                return Err(SubshiftError::AlphabetMismatch {
                    expected: n,
                    found: phi.alphabet_size(),
                })
            }
        }
    }

    let lifts: Vec<SlidingAutomorphism> = auts.iter().map(lift_letter_map).collect();
    let letters: Vec<Letter> = (0..n).collect();
    let on_letters: Vec<_> = lifts.iter().map(|l| l.apply(&letters)).collect();

    let mut duplicate = None;
    'dup: for i in 0..lifts.len() {
        for j in i + 1..lifts.len() {
            if on_letters[i] == on_letters[j] {
                duplicate = Some((auts[i].label().to_string(), auts[j].label().to_string()));
                break 'dup;
            }
        }
    }

    let mut composition_failure = None;
    let mut table = Some(vec![vec![0; lifts.len()]; lifts.len()]);
    for i in 0..lifts.len() {
        for j in 0..lifts.len() {
            let composite = lift_letter_map(&auts[i].compose(&auts[j])).apply(&letters);
            if composition_failure.is_none()
                && composite != lifts[i].apply(&lifts[j].apply(&letters))
            {
                composition_failure =
                    Some((auts[i].label().to_string(), auts[j].label().to_string()));
            }
            match (
                on_letters.iter().position(|w| *w == composite),
                table.as_mut(),
            ) {
                (Some(k), Some(t)) => t[i][j] = k,
                _ => table = None,
            }
        }
    }

    let cyclic_generator = table.as_ref().and_then(|t| {
        let id = on_letters
            .iter()
            .position(|w| w.letters() == letters.as_slice())?;
        (0..lifts.len())
            .find(|&g| {
                let mut seen = vec![false; lifts.len()];
                let mut cur = id;
                for _ in 0..lifts.len() {
                    seen[cur] = true;
                    cur = t[g][cur];
                }
                seen.iter().all(|&s| s)
            })
            .map(|g| auts[g].label().to_string())
    });

    let mut language_failure = None;
    'lang: for (phi, lift) in auts.iter().zip(&lifts) {
        for len in 1..=lang.max_len() {
            let stratum = lang.stratum(len);
            let image: std::collections::BTreeSet<_> =
                stratum.iter().map(|w| lift.apply(w)).collect();
            if image != *stratum {
                language_failure = Some((phi.label().to_string(), len));
                break 'lang;
            }
        }
    }

    Ok(EmbeddingReport {
        equivariance_failures,
        duplicate,
        composition_failure,
        composition_table: table,
        cyclic_generator,
        language_failure,
        lift_count: lifts.len(),
    })
}
