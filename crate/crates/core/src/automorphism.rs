//! Letter bijections and their letterwise lifts to words.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::language::Language;
use crate::substitution::Substitution;
use crate::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomorphismError {
    #[error("map `{label}` is not a bijection of 0..{alphabet_size}")]
    NotBijective { label: String, alphabet_size: usize },
    #[error("alphabet size mismatch: expected {expected}, found {found}")]
    AlphabetMismatch { expected: usize, found: usize },
    #[error(
        "`{label}` is not equivariant at letter {letter}: τ(φ(a)) = {lhs} but φ̄(τ(a)) = {rhs}"
    )]
    NotEquivariant {
        label: String,
        letter: Letter,
        lhs: Word,
        rhs: Word,
    },
    #[error("candidate file line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// A bijection of the alphabet `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LetterMap {
    map: Vec<Letter>,
    label: String,
}

impl LetterMap {
    pub fn new(map: Vec<Letter>, label: impl Into<String>) -> Result<Self, AutomorphismError> {
        let label = label.into();
        let n = map.len();
        let mut seen = vec![false; n];
        for &b in &map {
            if b >= n || std::mem::replace(&mut seen[b], true) {
                return Err(AutomorphismError::NotBijective {
                    label,
                    alphabet_size: n,
                });
            }
        }
        Ok(LetterMap { map, label })
    }

    pub fn identity(n: usize) -> Self {
        LetterMap {
            map: (0..n).collect(),
            label: "id".into(),
        }
    }

    pub fn apply(&self, a: Letter) -> Letter {
        self.map[a]
    }

    pub fn as_slice(&self) -> &[Letter] {
        &self.map
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn alphabet_size(&self) -> usize {
        self.map.len()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &LetterMap) -> LetterMap {
        assert_eq!(self.alphabet_size(), other.alphabet_size());
        LetterMap {
            map: other.map.iter().map(|&a| self.map[a]).collect(),
            label: format!("{}∘{}", self.label, other.label),
        }
    }

    pub fn inverse(&self) -> LetterMap {
        let mut inv = vec![0; self.map.len()];
        for (a, &b) in self.map.iter().enumerate() {
            inv[b] = a;
        }
        LetterMap {
            map: inv,
            label: format!("{}⁻¹", self.label),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(a, &b)| a == b)
    }

    pub fn fixed_letters(&self) -> Vec<Letter> {
        (0..self.map.len()).filter(|&a| self.map[a] == a).collect()
    }

    /// Same underlying permutation, ignoring labels.
    pub fn same_map(&self, other: &LetterMap) -> bool {
        self.map == other.map
    }
}

/// Anything that maps finite windows to finite windows.
pub trait WordMap {
    fn map_word(&self, w: &[Letter]) -> Word;
}

/// A letter bijection applied coordinatewise to words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlidingAutomorphism {
    base: LetterMap,
}

impl SlidingAutomorphism {
    pub fn base(&self) -> &LetterMap {
        &self.base
    }

    pub fn apply(&self, w: &[Letter]) -> Word {
        w.iter().map(|&a| self.base.apply(a)).collect()
    }

    pub fn compose(&self, other: &SlidingAutomorphism) -> SlidingAutomorphism {
        lift_letter_map(&self.base.compose(&other.base))
    }

    pub fn is_identity(&self) -> bool {
        self.base.is_identity()
    }

    /// Images of every word in every stratum.
    pub fn image_of(&self, lang: &Language) -> Language {
        let strata = (1..=lang.max_len())
            .map(|l| {
                lang.stratum(l)
                    .iter()
                    .map(|w| self.apply(w))
                    .collect::<BTreeSet<_>>()
            })
            .collect();
        Language::from_strata(strata)
    }
}

impl WordMap for SlidingAutomorphism {
    fn map_word(&self, w: &[Letter]) -> Word {
        self.apply(w)
    }
}

pub fn lift_letter_map(phi: &LetterMap) -> SlidingAutomorphism {
    SlidingAutomorphism { base: phi.clone() }
}

/// Checks `τ(φ(a)) = φ̄(τ(a))` for every letter.
pub fn verify_equivariance(sub: &Substitution, phi: &LetterMap) -> Result<(), AutomorphismError> {
    if sub.alphabet_size() != phi.alphabet_size() {
        return Err(AutomorphismError::AlphabetMismatch {
            expected: sub.alphabet_size(),
            found: phi.alphabet_size(),
        });
    }
    let lift = lift_letter_map(phi);
    for a in 0..sub.alphabet_size() {
        let lhs = sub.image(phi.apply(a));
        let rhs = lift.apply(sub.image(a));
        if *lhs != rhs {
            return Err(AutomorphismError::NotEquivariant {
                label: phi.label().to_string(),
                letter: a,
                lhs: lhs.clone(),
                rhs,
            });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftCommutation {
    pub holds: bool,
    /// Top-stratum word on which `h(w)` shifted by one disagrees with
    /// `h(w shifted by one)`.
    pub witness: Option<Word>,
    /// The top stratum was empty.
    pub vacuous: bool,
}

/// For each top-stratum word `w`, compares `h(w)` shifted left by one with
/// `h(w[1..])` on their overlap.
pub fn verify_shift_commutation(h: &impl WordMap, lang: &Language) -> ShiftCommutation {
    let top = lang.stratum(lang.max_len());
    for w in top {
        let whole = h.map_word(w);
        let shifted = h.map_word(&w[1..]);
        let overlap = whole.len().saturating_sub(1).min(shifted.len());
        if whole.is_empty() || whole[1..1 + overlap] != shifted[..overlap] {
            return ShiftCommutation {
                holds: false,
                witness: Some(w.clone()),
                vacuous: false,
            };
        }
    }
    ShiftCommutation {
        holds: true,
        witness: None,
        vacuous: top.is_empty(),
    }
}

/// Candidate file: a header line `labels: l1 l2 ...` followed by one
/// bijection per line as its space-separated image list.
pub fn read_letter_maps(text: &str) -> Result<Vec<LetterMap>, AutomorphismError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or(AutomorphismError::Parse {
        line: 1,
        reason: "missing labels header".into(),
    })?;
    let labels: Vec<&str> = header
        .strip_prefix("labels:")
        .ok_or(AutomorphismError::Parse {
            line: 1,
            reason: "header must start with `labels:`".into(),
        })?
        .split_whitespace()
        .collect();
    let mut maps = Vec::new();
    for (i, line) in lines {
        let image: Word = line.parse().map_err(|_| AutomorphismError::Parse {
            line: i + 1,
            reason: format!("bad image list `{line}`"),
        })?;
        let label = labels.get(maps.len()).ok_or(AutomorphismError::Parse {
            line: i + 1,
            reason: "more maps than labels".into(),
        })?;
        maps.push(LetterMap::new(image.into_letters(), *label)?);
    }
    if maps.len() != labels.len() {
        return Err(AutomorphismError::Parse {
            line: 1,
            reason: format!("{} labels for {} maps", labels.len(), maps.len()),
        });
    }
    Ok(maps)
}

pub fn write_letter_maps(maps: &[LetterMap]) -> String {
    let labels: Vec<&str> = maps.iter().map(LetterMap::label).collect();
    let mut out = format!("labels: {}\n", labels.join(" "));
    for m in maps {
        out.push_str(&Word::from(m.as_slice()).to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{ActionKind, GroupAction};
    use crate::group::FiniteGroup;
    use crate::language::{generate_language, Budget};
    use crate::substitution::SubstitutionSequence;
    use proptest::prelude::*;

    fn translation(m: usize, c: usize) -> LetterMap {
        LetterMap::new((0..m).map(|a| (a + c) % m).collect(), format!("+{c}")).unwrap()
    }

    fn z4_tau() -> Substitution {
        let a =
            GroupAction::new(FiniteGroup::cyclic(4).unwrap(), ActionKind::LeftTranslation).unwrap();
        Substitution::from_action(&a, &[0, 1, 3]).unwrap()
    }

    /// All words over `0..k` of length `0..=max_len`.
    fn all_words(k: usize, max_len: usize) -> Vec<Vec<Letter>> {
        let mut out = vec![vec![]];
        let mut layer = vec![vec![]];
        for _ in 0..max_len {
            layer = layer
                .iter()
                .flat_map(|w: &Vec<Letter>| {
                    (0..k).map(move |a| {
                        let mut v = w.clone();
                        v.push(a);
                        v
                    })
                })
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    #[test]
    fn lift_examples() {
        let id = lift_letter_map(&LetterMap::identity(4));
        assert_eq!(id.apply(&[3, 1, 2]), Word::new(vec![3, 1, 2]));
        let plus1 = lift_letter_map(&translation(4, 1));
        assert_eq!(plus1.apply(&[0, 1, 3]), Word::new(vec![1, 2, 0]));
        let composite = lift_letter_map(&translation(4, 1).compose(&translation(4, 2)));
        let plus3 = lift_letter_map(&translation(4, 3));
        let plus2 = lift_letter_map(&translation(4, 2));
        for w in all_words(4, 3) {
            assert_eq!(composite.apply(&w), plus3.apply(&w));
            assert_eq!(plus1.apply(&plus2.apply(&w)), plus3.apply(&w));
        }
    }

    #[test]
    fn non_bijective_rejected() {
        assert!(matches!(
            LetterMap::new(vec![0, 0, 2], "bad"),
            Err(AutomorphismError::NotBijective { .. })
        ));
        assert!(LetterMap::new(vec![0, 3], "bad").is_err());
    }

    #[test]
    fn translations_are_equivariant() {
        let t = z4_tau();
        for c in 0..4 {
            verify_equivariance(&t, &translation(4, c)).unwrap();
        }
        verify_equivariance(&t, &LetterMap::identity(4)).unwrap();
    }

    #[test]
    fn transposition_is_not_equivariant() {
        let swap = LetterMap::new(vec![0, 2, 1, 3], "(1 2)").unwrap();
        match verify_equivariance(&z4_tau(), &swap) {
            Err(AutomorphismError::NotEquivariant {
                letter, lhs, rhs, ..
            }) => {
                assert_eq!(letter, 0);
                assert_eq!(lhs, Word::new(vec![0, 1, 3]));
                assert_eq!(rhs, Word::new(vec![0, 2, 3]));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            verify_equivariance(&z4_tau(), &LetterMap::identity(3)),
            Err(AutomorphismError::AlphabetMismatch { .. })
        ));
    }

    /// Adds the position index to each letter: not shift-commuting.
    struct PositionTwist(usize);

    impl WordMap for PositionTwist {
        fn map_word(&self, w: &[Letter]) -> Word {
            w.iter()
                .enumerate()
                .map(|(i, &a)| (a + i) % self.0)
                .collect()
        }
    }

    /// Radius-1 block map `y_i = x_i + x_{i+1}`: shift-commuting.
    struct PairSum(usize);

    impl WordMap for PairSum {
        fn map_word(&self, w: &[Letter]) -> Word {
            w.windows(2).map(|p| (p[0] + p[1]) % self.0).collect()
        }
    }

    #[test]
    fn shift_commutation() {
        let seq = SubstitutionSequence::stationary(z4_tau());
        let lang = generate_language(&seq, 0, 6, 4, &Budget::default()).unwrap();
        let r = verify_shift_commutation(&lift_letter_map(&translation(4, 1)), &lang);
        assert!(r.holds && !r.vacuous);
        assert!(verify_shift_commutation(&PairSum(4), &lang).holds);
        let bad = verify_shift_commutation(&PositionTwist(4), &lang);
        assert!(!bad.holds);
        assert!(bad.witness.is_some());
        let empty = Language::from_strata(vec![Default::default(); 3]);
        let v = verify_shift_commutation(&lift_letter_map(&translation(4, 1)), &empty);
        assert!(v.holds && v.vacuous);
    }

    #[test]
    fn candidate_file_roundtrip() {
        let maps = vec![
            translation(4, 1),
            LetterMap::new(vec![0, 3, 2, 1], "neg").unwrap(),
        ];
        let text = write_letter_maps(&maps);
        assert_eq!(text, "labels: +1 neg\n1 2 3 0\n0 3 2 1\n");
        assert_eq!(read_letter_maps(&text).unwrap(), maps);
        assert!(read_letter_maps("labels: a b\n0 1\n").is_err());
        assert!(read_letter_maps("0 1\n").is_err());
    }

    #[test]
    fn equivariant_maps_preserve_language() {
        let seq = SubstitutionSequence::stationary(z4_tau());
        let lang = generate_language(&seq, 0, 8, 6, &Budget::default()).unwrap();
        for c in 0..4 {
            assert_eq!(lift_letter_map(&translation(4, c)).image_of(&lang), lang);
        }
    }

    fn perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
        Just((0..n).collect::<Vec<_>>()).prop_shuffle()
    }

    proptest! {
        #[test]
        fn lift_is_functorial(
            (p, q, w) in (1usize..=8).prop_flat_map(|n| (perm(n), perm(n), prop::collection::vec(0..n, 0..=6)))
        ) {
            let phi = LetterMap::new(p, "p").unwrap();
            let psi = LetterMap::new(q, "q").unwrap();
            let lhs = lift_letter_map(&phi.compose(&psi)).apply(&w);
            let rhs = lift_letter_map(&phi).apply(&lift_letter_map(&psi).apply(&w));
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(lift_letter_map(&LetterMap::identity(phi.alphabet_size())).apply(&w), Word::from(w.as_slice()));
        }
    }
}
