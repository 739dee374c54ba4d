//! Substitutions built from group actions and their incidence matrices.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::action::GroupAction;
use crate::group::Elem;
use crate::word::{Letter, Word};
use crate::SubshiftError;

/// A letter-to-word map extended to words by concatenation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    alphabet_size: usize,
    images: Vec<Word>,
    constant_length: Option<usize>,
}

impl Substitution {
    pub fn new(alphabet_size: usize, images: Vec<Word>) -> Result<Self, SubshiftError> {
        if images.len() != alphabet_size {
            return Err(SubshiftError::AlphabetMismatch {
                expected: alphabet_size,
                found: images.len(),
            });
        }
        for (a, img) in images.iter().enumerate() {
            if img.is_empty() {
                return Err(SubshiftError::EmptyImage { letter: a });
            }
            if let Some(&bad) = img.iter().find(|&&b| b >= alphabet_size) {
                return Err(SubshiftError::LetterOutOfRange {
                    letter: bad,
                    alphabet_size,
                });
            }
        }
        let d = images.first().map(|w| w.len());
        let constant_length = d.filter(|&d| images.iter().all(|w| w.len() == d));
        Ok(Substitution {
            alphabet_size,
            images,
            constant_length,
        })
    }

    /// `a -> (s_1 . a)(s_2 . a)...(s_d . a)` for the generators in the given
    /// order. Requires `gens[0]` to be the identity, no repeats, and closure
    /// under inverses.
    pub fn from_action(action: &GroupAction, gens: &[Elem]) -> Result<Self, SubshiftError> {
        validate_generators(action, gens)?;
        let images = (0..action.alphabet_size())
            .map(|a| gens.iter().map(|&s| action.act(s, a)).collect())
            .collect();
        Self::new(action.alphabet_size(), images)
    }

    pub fn identity(alphabet_size: usize) -> Self {
        Substitution {
            alphabet_size,
            images: (0..alphabet_size).map(|a| Word::new(vec![a])).collect(),
            constant_length: Some(1),
        }
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn image(&self, a: Letter) -> &Word {
        &self.images[a]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn constant_length(&self) -> Option<usize> {
        self.constant_length
    }

    pub fn min_image_len(&self) -> usize {
        self.images.iter().map(|w| w.len()).min().unwrap_or(0)
    }

    pub fn apply(&self, w: &[Letter]) -> Result<Word, SubshiftError> {
        if let Some(&bad) = w.iter().find(|&&a| a >= self.alphabet_size) {
            return Err(SubshiftError::LetterOutOfRange {
                letter: bad,
                alphabet_size: self.alphabet_size,
            });
        }
        Ok(self.apply_unchecked(w))
    }

    pub(crate) fn apply_unchecked(&self, w: &[Letter]) -> Word {
        let len = w.iter().map(|&a| self.images[a].len()).sum();
        let mut out = Vec::with_capacity(len);
        for &a in w {
            out.extend_from_slice(&self.images[a]);
        }
        Word::new(out)
    }

    /// `M[a][b]` = number of occurrences of `a` in the image of `b`.
    pub fn incidence_matrix(&self) -> IncidenceMatrix {
        let n = self.alphabet_size;
        let mut m = IncidenceMatrix::zero(n);
        for (b, img) in self.images.iter().enumerate() {
            for &a in img.iter() {
                m.entries[a * n + b] += 1u32;
            }
        }
        m
    }
}

/// Same as [`Substitution::apply`].
pub fn apply_substitution(sub: &Substitution, w: &[Letter]) -> Result<Word, SubshiftError> {
    sub.apply(w)
}

fn validate_generators(action: &GroupAction, gens: &[Elem]) -> Result<(), SubshiftError> {
    let group = action.group();
    let first = *gens.first().ok_or(SubshiftError::EmptyGenerators)?;
    if first != group.identity() {
        return Err(SubshiftError::FirstGeneratorNotIdentity { found: first });
    }
    for (i, &g) in gens.iter().enumerate() {
        if g >= group.order() {
            return Err(SubshiftError::UnknownElement { element: g });
        }
        if gens[..i].contains(&g) {
            return Err(SubshiftError::DuplicateGenerator { element: g });
        }
    }
    if let Some(&g) = gens.iter().find(|&&g| !gens.contains(&group.inv(g))) {
        return Err(SubshiftError::NotSymmetric { element: g });
    }
    Ok(())
}

/// A finite schedule `τ_0, ..., τ_K`; index `n > K` repeats the last entry.
#[derive(Debug, Clone)]
pub struct SubstitutionSequence {
    seq: Vec<Substitution>,
    nested: bool,
}

impl SubstitutionSequence {
    pub fn new(seq: Vec<Substitution>) -> Result<Self, SubshiftError> {
        let first = seq.first().ok_or(SubshiftError::EmptySequence)?;
        let n = first.alphabet_size;
        if let Some(s) = seq.iter().find(|s| s.alphabet_size != n) {
            return Err(SubshiftError::AlphabetMismatch {
                expected: n,
                found: s.alphabet_size,
            });
        }
        let nested = seq
            .windows(2)
            .all(|w| (0..n).all(|a| w[1].images[a].starts_with(&w[0].images[a])));
        Ok(SubstitutionSequence { seq, nested })
    }

    pub fn stationary(sub: Substitution) -> Self {
        SubstitutionSequence {
            seq: vec![sub],
            nested: true,
        }
    }

    /// One substitution per generating set. Each set must extend the previous
    /// one as an ordered list so the resulting images are nested.
    pub fn from_action_schedule(
        action: &GroupAction,
        schedule: &[Vec<Elem>],
    ) -> Result<Self, SubshiftError> {
        for (i, w) in schedule.windows(2).enumerate() {
            if !w[1].starts_with(&w[0]) {
                return Err(SubshiftError::NotNested { level: i + 1 });
            }
        }
        let seq = schedule
            .iter()
            .map(|gens| Substitution::from_action(action, gens))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(seq)
    }

    pub fn get(&self, n: usize) -> &Substitution {
        &self.seq[n.min(self.seq.len() - 1)]
    }

    pub fn alphabet_size(&self) -> usize {
        self.seq[0].alphabet_size
    }

    pub fn schedule_len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_nested(&self) -> bool {
        self.nested
    }

    /// `τ_0 ∘ τ_1 ∘ ... ∘ τ_depth` applied to `w` (`τ_depth` acts first).
    pub fn expand(&self, depth: usize, w: &[Letter]) -> Result<Word, SubshiftError> {
        let mut cur = Word::from(w);
        for n in (0..=depth).rev() {
            cur = self.get(n).apply(&cur)?;
        }
        Ok(cur)
    }
}

/// Square matrix of exact nonnegative counts, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    n: usize,
    entries: Vec<BigUint>,
}

impl IncidenceMatrix {
    fn zero(n: usize) -> Self {
        IncidenceMatrix {
            n,
            entries: vec![BigUint::zero(); n * n],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &BigUint {
        &self.entries[row * self.n + col]
    }

    pub fn mul(&self, other: &IncidenceMatrix) -> IncidenceMatrix {
        let n = self.n;
        let mut out = IncidenceMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_positive(&self) -> bool {
        self.entries.iter().all(|x| !x.is_zero())
    }

    /// Every column has a positive entry in one of `rows`.
    pub fn columns_hit(&self, rows: &[Letter]) -> bool {
        (0..self.n).all(|j| rows.iter().any(|&i| !self.get(i, j).is_zero()))
    }

    pub fn column_sum(&self, col: usize) -> BigUint {
        (0..self.n).map(|i| self.get(i, col)).sum()
    }

    pub fn rows(&self) -> Vec<Vec<String>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct PrimitivityReport {
    pub primitive: bool,
    /// Least `k <= n²` with `M^k` entrywise positive.
    pub power: Option<usize>,
    /// Least `k <= n²` such that every column of `M^k` hits the target rows.
    pub target_power: Option<usize>,
    /// `M^1, ..., M^j` where `j` is the last power examined.
    pub trail: Vec<IncidenceMatrix>,
}

/// Searches `k = 1..=n²` for an entrywise positive power of the incidence
/// matrix, and the least power whose every column meets `target` (default:
/// the whole alphabet).
pub fn primitivity_check(sub: &Substitution, target: Option<&[Letter]>) -> PrimitivityReport {
    let n = sub.alphabet_size();
    let all: Vec<Letter> = (0..n).collect();
    let target = target.unwrap_or(&all);
    let m = sub.incidence_matrix();
    let mut power = None;
    let mut target_power = None;
    let mut trail = Vec::new();
    let mut cur = m.clone();
    for k in 1..=n * n {
        if target_power.is_none() && cur.columns_hit(target) {
            target_power = Some(k);
        }
        if power.is_none() && cur.is_positive() {
            power = Some(k);
        }
        let done = power.is_some() && target_power.is_some();
        let next = if done || k == n * n {
            None
        } else {
            Some(cur.mul(&m))
        };
        trail.push(cur);
        match next {
            Some(x) => cur = x,
            None => break,
        }
    }
    PrimitivityReport {
        primitive: power.is_some(),
        power,
        target_power,
        trail,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::ActionKind;
    use crate::group::FiniteGroup;
    use proptest::prelude::*;

    pub(crate) fn z4_translation() -> GroupAction {
        GroupAction::new(FiniteGroup::cyclic(4).unwrap(), ActionKind::LeftTranslation).unwrap()
    }

    fn w(s: &str) -> Word {
        s.chars()
            .map(|c| c.to_digit(10).unwrap() as usize)
            .collect()
    }

    #[test]
    fn z4_images() {
        let t = Substitution::from_action(&z4_translation(), &[0, 1, 3]).unwrap();
        assert_eq!(t.image(0), &w("013"));
        assert_eq!(t.image(1), &w("120"));
        assert_eq!(t.image(2), &w("231"));
        assert_eq!(t.image(3), &w("302"));
        assert_eq!(t.constant_length(), Some(3));
    }

    #[test]
    fn identity_generator_only() {
        let t = Substitution::from_action(&z4_translation(), &[0]).unwrap();
        assert_eq!(t, Substitution::identity(4));
    }

    #[test]
    fn generator_preconditions() {
        let a = z4_translation();
        assert_eq!(
            Substitution::from_action(&a, &[1, 0, 3]).unwrap_err(),
            SubshiftError::FirstGeneratorNotIdentity { found: 1 }
        );
        assert_eq!(
            Substitution::from_action(&a, &[0, 1]).unwrap_err(),
            SubshiftError::NotSymmetric { element: 1 }
        );
        assert_eq!(
            Substitution::from_action(&a, &[0, 2, 2]).unwrap_err(),
            SubshiftError::DuplicateGenerator { element: 2 }
        );
        assert_eq!(
            Substitution::from_action(&a, &[]).unwrap_err(),
            SubshiftError::EmptyGenerators
        );
    }

    #[test]
    fn two_step_iteration() {
        let t = Substitution::from_action(&z4_translation(), &[0, 1, 3]).unwrap();
        let once = t.apply(&w("0")).unwrap();
        assert_eq!(t.apply(&once).unwrap(), w("013120302"));
        let seq = SubstitutionSequence::stationary(t.clone());
        assert_eq!(seq.expand(1, &w("0")).unwrap(), w("013120302"));
        assert_eq!(t.apply(&[]).unwrap(), Word::empty());
        assert_eq!(
            Substitution::identity(4).apply(&w("3120")).unwrap(),
            w("3120")
        );
        assert!(matches!(
            t.apply(&[4]),
            Err(SubshiftError::LetterOutOfRange { letter: 4, .. })
        ));
    }

    #[test]
    fn z4_incidence_and_primitivity() {
        let t = Substitution::from_action(&z4_translation(), &[0, 1, 3]).unwrap();
        let m = t.incidence_matrix();
        let col0: Vec<u32> = (0..4)
            .map(|i| u32::try_from(m.get(i, 0)).unwrap())
            .collect();
        assert_eq!(col0, vec![1, 1, 0, 1]);
        // circulant
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(m.get(i, j), m.get((i + 1) % 4, (j + 1) % 4));
            }
        }
        let r = primitivity_check(&t, None);
        assert!(r.primitive);
        assert_eq!(r.power, Some(2));
        assert!(!r.trail[0].is_positive());
        assert!(r.trail[1].is_positive());
        let r0 = primitivity_check(&t, Some(&[0]));
        assert_eq!(r0.target_power, Some(2));
    }

    #[test]
    fn identity_is_not_primitive() {
        let r = primitivity_check(&Substitution::identity(3), None);
        assert!(!r.primitive);
        assert_eq!(r.power, None);
        assert_eq!(r.trail.len(), 9);
        let single = primitivity_check(&Substitution::identity(1), None);
        assert!(single.primitive);
    }

    #[test]
    fn nested_schedule() {
        let z8 =
            GroupAction::new(FiniteGroup::cyclic(8).unwrap(), ActionKind::LeftTranslation).unwrap();
        let seq =
            SubstitutionSequence::from_action_schedule(&z8, &[vec![0, 1, 7], vec![0, 1, 7, 2, 6]])
                .unwrap();
        assert!(seq.is_nested());
        for a in 0..8 {
            assert!(seq.get(1).image(a).starts_with(seq.get(0).image(a)));
            assert_eq!(seq.get(5).image(a), seq.get(1).image(a));
        }
        assert_eq!(
            SubstitutionSequence::from_action_schedule(&z8, &[vec![0, 1, 7], vec![0, 2, 6]])
                .unwrap_err(),
            SubshiftError::NotNested { level: 1 }
        );
        let unnested = SubstitutionSequence::new(vec![
            Substitution::from_action(&z8, &[0, 1, 7]).unwrap(),
            Substitution::from_action(&z8, &[0, 7, 1]).unwrap(),
        ])
        .unwrap();
        assert!(!unnested.is_nested());
    }

    proptest! {
        #[test]
        fn length_is_additive(u in prop::collection::vec(0usize..4, 0..12), v in prop::collection::vec(0usize..4, 0..12)) {
            let t = Substitution::from_action(&z4_translation(), &[0, 1, 3]).unwrap();
            let uv: Vec<usize> = u.iter().chain(&v).copied().collect();
            prop_assert_eq!(t.apply(&uv).unwrap().len(), t.apply(&u).unwrap().len() + t.apply(&v).unwrap().len());
        }

        #[test]
        fn constant_length_columns_sum_to_length(m in 2usize..9, extra in 0usize..3) {
            let g = FiniteGroup::cyclic(m).unwrap();
            let a = GroupAction::new(g, ActionKind::LeftTranslation).unwrap();
            let mut gens = vec![0];
            for s in 1..=extra.min((m - 1) / 2) {
                gens.push(s);
                gens.push(m - s);
            }
            let t = Substitution::from_action(&a, &gens).unwrap();
            let d = t.constant_length().unwrap();
            let mat = t.incidence_matrix();
            for col in 0..m {
                prop_assert_eq!(mat.column_sum(col), BigUint::from(d));
            }
        }
    }
}
