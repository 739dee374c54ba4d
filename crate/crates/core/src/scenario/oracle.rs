//! Brute-force language oracle and factor complexity.

use std::collections::BTreeSet;

use crate::language::{Budget, Language, SubshiftError};
use crate::substitution::SubstitutionSequence;
use crate::word::{Letter, Word};

/// Factors of length `<= max_len` of the explicit words
/// `τ_0 ∘ ... ∘ τ_j(seed)`, `j <= depth`, read by sliding windows.
pub fn oracle_language(
    seq: &SubstitutionSequence,
    seed: Letter,
    max_len: usize,
    depth: usize,
    budget: &Budget,
) -> Result<Language, SubshiftError> {
    if max_len == 0 {
        return Err(SubshiftError::ZeroHorizon);
    }
    let n = seq.alphabet_size();
    if seed >= n {
        return Err(SubshiftError::LetterOutOfRange {
            letter: seed,
            alphabet_size: n,
        });
    }
    let mut strata = vec![BTreeSet::new(); max_len];
    for j in 0..=depth {
        let word = expand_explicitly(seq, seed, j, budget)?;
        for len in 1..=max_len.min(word.len()) {
            for w in word.windows(len) {
                strata[len - 1].insert(Word::from(w));
            }
        }
    }
    Ok(Language::from_strata(strata))
}

fn expand_explicitly(
    seq: &SubstitutionSequence,
    seed: Letter,
    j: usize,
    budget: &Budget,
) -> Result<Vec<Letter>, SubshiftError> {
    let mut cur = vec![seed];
    for level in (0..=j).rev() {
        let sub = seq.get(level);
        let needed: usize = cur.iter().map(|&a| sub.image(a).len()).sum();
        if needed > budget.max_letters {
            return Err(SubshiftError::BudgetExceeded {
                stage: "oracle expansion",
                needed,
                budget: budget.max_letters,
            });
        }
        let mut next = Vec::with_capacity(needed);
        for &a in &cur {
            next.extend_from_slice(sub.image(a));
        }
        cur = next;
    }
    Ok(cur)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexityProfile {
    /// `counts[l - 1] = p(l)`.
    pub counts: Vec<usize>,
    /// First `l` with `p(l + 1) < p(l)`; a horizon artifact when present.
    pub decrease_at: Option<usize>,
}

impl ComplexityProfile {
    pub fn nondecreasing(&self) -> bool {
        self.decrease_at.is_none()
    }
}

pub fn complexity_profile(lang: &Language) -> ComplexityProfile {
    let counts = lang.counts();
    let decrease_at = counts.windows(2).position(|w| w[1] < w[0]).map(|i| i + 1);
    ComplexityProfile {
        counts,
        decrease_at,
    }
}
