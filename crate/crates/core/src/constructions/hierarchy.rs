//! Block hierarchies `B₁ ⊂ A, B₂, …, B_N` whose words have the shape
//! `w₁…wₙ x_{s(1)}…x_{s(kₙ)}` with `wᵢ ∈ Bₙ₋₁` and the markers `x` permuted
//! by `s`. Levels too large to store are kept implicit and unranked on
//! demand.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ConstructionError;
use crate::action::GroupAction;
use crate::group::Elem;
use crate::metric::{word_distance, AlphabetMetric};
use crate::word::{Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HierarchyCaps {
    pub levels: usize,
    /// Largest allowed marker count `kₙ`.
    pub marker_cap: usize,
    /// Largest word set stored explicitly.
    pub enumeration_cap: usize,
}

impl Default for HierarchyCaps {
    fn default() -> Self {
        HierarchyCaps {
            levels: 2,
            marker_cap: 5,
            enumeration_cap: 200_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct HierarchyLevel {
    pub n: usize,
    pub block_len: usize,
    pub markers: Vec<Word>,
    /// Requested density, if any.
    pub target: Option<BigRational>,
    /// Exact density of the markers in `Bₙ₋₁Bₙ₋₁`, or `None` when that set
    /// was too large to scan.
    pub density: Option<BigRational>,
    pub count: BigUint,
    words: Option<Vec<Word>>,
    word_set: Option<HashSet<Word>>,
}

impl HierarchyLevel {
    pub fn marker_count(&self) -> usize {
        self.markers.len()
    }

    pub fn words(&self) -> Option<&[Word]> {
        self.words.as_deref()
    }

    pub fn is_enumerated(&self) -> bool {
        self.words.is_some()
    }
}

#[derive(Debug, Clone)]
pub struct BlockHierarchy {
    action: GroupAction,
    metric: AlphabetMetric,
    caps: HierarchyCaps,
    levels: Vec<HierarchyLevel>,
}

fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

/// Permutation of `0..k` with the given lexicographic rank.
fn unrank_permutation(k: usize, mut rank: BigUint) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..k).collect();
    let mut out = Vec::with_capacity(k);
    for i in (0..k).rev() {
        let f = factorial(i);
        let digit = (&rank / &f).to_usize().expect("digit below k");
        rank %= &f;
        out.push(pool.remove(digit));
    }
    out
}

fn act_word(action: &GroupAction, g: Elem, w: &[Letter]) -> Word {
    w.iter().map(|&a| action.act(g, a)).collect()
}

/// Diagonal orbits of `words`, each sorted, ordered by least element.
fn orbits(action: &GroupAction, words: &[Word]) -> Vec<Vec<Word>> {
    let sorted: BTreeSet<&Word> = words.iter().collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for w in sorted {
        if seen.contains(w) {
            continue;
        }
        let orbit: BTreeSet<Word> = action
            .group()
            .elements()
            .map(|g| act_word(action, g, w))
            .collect();
        seen.extend(orbit.iter().cloned());
        out.push(orbit.into_iter().collect());
    }
    out
}

/// `max_v min_x dist(v, x)`.
fn density(metric: &AlphabetMetric, ambient: &[Word], markers: &[Word]) -> BigRational {
    ambient
        .iter()
        .map(|v| {
            markers
                .iter()
                .map(|x| word_distance(metric, v, x))
                .min()
                .expect("marker set is nonempty")
        })
        .max()
        .unwrap_or_else(BigRational::zero)
}

pub fn build_block_hierarchy(
    action: &GroupAction,
    metric: AlphabetMetric,
    caps: HierarchyCaps,
    densities: &[Option<BigRational>],
) -> Result<BlockHierarchy, ConstructionError> {
    if let Some((a, b)) = action.diagnostics().non_faithful {
        return Err(ConstructionError::NotFaithful(a, b));
    }
    if caps.levels == 0 {
        return Err(ConstructionError::NoLevels);
    }
    let letters: Vec<Word> = (0..action.alphabet_size())
        .map(|a| Word::new(vec![a]))
        .collect();
    let mut levels = vec![HierarchyLevel {
        n: 1,
        block_len: 1,
        markers: Vec::new(),
        target: None,
        density: None,
        count: BigUint::from(letters.len()),
        word_set: Some(letters.iter().cloned().collect()),
        words: Some(letters),
    }];
    let mut h = BlockHierarchy {
        action: action.clone(),
        metric,
        caps,
        levels: Vec::new(),
    };

    for n in 2..=caps.levels {
        let prev = levels.last().expect("level 1 exists");
        let target = densities.get(n - 2).cloned().flatten();
        if let Some(t) = &target {
            if *t <= BigRational::zero() || *t > BigRational::one() {
                return Err(ConstructionError::BadDensity {
                    level: n,
                    value: t.to_string(),
                });
            }
        }
        let ambient_count = &prev.count * &prev.count;
        let (markers, achieved) = match prev.words.as_deref() {
            Some(words) if ambient_count <= BigUint::from(caps.enumeration_cap) => {
                let ambient: Vec<Word> = words
                    .iter()
                    .flat_map(|u| words.iter().map(move |v| u.concat(v)))
                    .collect();
                choose_markers(&h, n, &ambient, target.as_ref())?
            }
            _ => {
                let w0 = h.unrank_in(&levels, n - 1, &BigUint::zero());
                let markers: Vec<Word> = orbits(action, &[w0.concat(&w0)]).remove(0);
                let bound = h.metric.diameter(action.alphabet_size());
                if target.as_ref().is_some_and(|t| *t < bound) || markers.len() > caps.marker_cap {
                    return Err(ConstructionError::CapExceeded {
                        what: "marker ambient set",
                        needed: ambient_count.to_string(),
                        cap: caps.enumeration_cap,
                    });
                }
                (markers, None)
            }
        };
        let k = markers.len();
        let block_len = (n + 2 * k) * prev.block_len;
        let count = prev.count.pow(n as u32) * factorial(k);
        let level = HierarchyLevel {
            n,
            block_len,
            markers,
            target,
            density: achieved,
            count,
            words: None,
            word_set: None,
        };
        if prev.words.is_some() && level.count <= BigUint::from(caps.enumeration_cap) {
            levels.push(level);
            let total = levels[n - 1].count.to_usize().expect("below cap");
            let words: Vec<Word> = (0..total)
                .map(|i| h.unrank_in(&levels, n, &BigUint::from(i)))
                .collect();
            let last = levels.last_mut().expect("just pushed");
            last.word_set = Some(words.iter().cloned().collect());
            last.words = Some(words);
        } else {
            levels.push(level);
        }
    }
    h.levels = levels;
    Ok(h)
}

/// Default rule: every orbit if they fit under the marker cap, else the
/// orbit of the least word. With a target density: orbits in canonical
/// order, each added only if it covers a word not yet within the target.
fn choose_markers(
    h: &BlockHierarchy,
    n: usize,
    ambient: &[Word],
    target: Option<&BigRational>,
) -> Result<(Vec<Word>, Option<BigRational>), ConstructionError> {
    let orbit_list = orbits(&h.action, ambient);
    let cap = h.caps.marker_cap;
    let markers: Vec<Word> = match target {
        None if ambient.len() <= cap => orbit_list.concat(),
        None => orbit_list[0].clone(),
        Some(eps) => {
            let mut chosen: Vec<Word> = Vec::new();
            let mut uncovered: Vec<&Word> = ambient.iter().collect();
            for orbit in &orbit_list {
                if uncovered.is_empty() {
                    break;
                }
                let before = uncovered.len();
                uncovered.retain(|v| orbit.iter().all(|x| word_distance(&h.metric, v, x) > *eps));
                if uncovered.len() < before {
                    chosen.extend(orbit.iter().cloned());
                }
            }
            chosen
        }
    };
    if markers.len() > cap {
        let mut within: Vec<Word> = Vec::new();
        for orbit in &orbit_list {
            if within.len() + orbit.len() <= cap {
                within.extend(orbit.iter().cloned());
            }
        }
        let best = if within.is_empty() {
            "none (every orbit exceeds the cap)".to_string()
        } else {
            density(&h.metric, ambient, &within).to_string()
        };
        return Err(ConstructionError::MarkerCap {
            level: n,
            target: target.map_or_else(|| "default".into(), ToString::to_string),
            needed: markers.len(),
            cap,
            best,
        });
    }
    let achieved = density(&h.metric, ambient, &markers);
    Ok((markers, Some(achieved)))
}

impl BlockHierarchy {
    pub fn levels(&self) -> &[HierarchyLevel] {
        &self.levels
    }

    pub fn level(&self, n: usize) -> &HierarchyLevel {
        &self.levels[n - 1]
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn caps(&self) -> HierarchyCaps {
        self.caps
    }

    /// The word of `Bₙ` at canonical index `idx`: prefix choices in
    /// mixed radix `|Bₙ₋₁|`, then the marker permutation rank.
    pub fn word(&self, n: usize, idx: &BigUint) -> Word {
        self.unrank_in(&self.levels, n, idx)
    }

    fn unrank_in(&self, levels: &[HierarchyLevel], n: usize, idx: &BigUint) -> Word {
        let level = &levels[n - 1];
        if let Some(words) = &level.words {
            return words[idx.to_usize().expect("index within enumerated level")].clone();
        }
        if n == 1 {
            return Word::new(vec![idx.to_usize().expect("letter index")]);
        }
        let k = level.markers.len();
        let fk = factorial(k);
        let perm = unrank_permutation(k, idx % &fk);
        let mut prefix = idx / &fk;
        let base = &levels[n - 2].count;
        let mut digits = vec![BigUint::zero(); n];
        for d in digits.iter_mut().rev() {
            *d = &prefix % base;
            prefix /= base;
        }
        let mut letters = Vec::with_capacity(level.block_len);
        for d in &digits {
            letters.extend_from_slice(&self.unrank_in(levels, n - 1, d));
        }
        for &s in &perm {
            letters.extend_from_slice(&level.markers[s]);
        }
        Word::new(letters)
    }

    /// Membership in `Bₙ` by decomposition along the canonical block grid.
    pub fn contains(&self, n: usize, w: &[Letter]) -> bool {
        let level = &self.levels[n - 1];
        if w.len() != level.block_len {
            return false;
        }
        if let Some(set) = &level.word_set {
            return set.contains(w);
        }
        let prev_len = self.levels[n - 2].block_len;
        let (prefix, tail) = w.split_at(n * prev_len);
        if !prefix.chunks(prev_len).all(|b| self.contains(n - 1, b)) {
            return false;
        }
        let mut used = vec![false; level.markers.len()];
        tail.chunks(2 * prev_len).all(|b| {
            match level.markers.iter().position(|x| x.letters() == b) {
                Some(i) if !used[i] => {
                    used[i] = true;
                    true
                }
                _ => false,
            }
        })
    }

    /// Header `n=… ln=… kn=… |Bn|=…`, then the markers, then the words of
    /// enumerated levels.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for level in &self.levels {
            out.push_str(&format!(
                "n={} ln={} kn={} |Bn|={}\n",
                level.n,
                level.block_len,
                level.markers.len(),
                level.count
            ));
            out.push_str("markers:\n");
            for x in &level.markers {
                out.push_str(&format!("{x}\n"));
            }
            if let Some(words) = &level.words {
                out.push_str("words:\n");
                for w in words {
                    out.push_str(&format!("{w}\n"));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimCheck {
    /// Level whose words `u` are scanned.
    pub level: usize,
    /// Largest, over tested `u` and `v`, of the least distance from `v` to
    /// a factor of `u`.
    pub worst: BigRational,
    /// Achieved marker density, or the alphabet diameter when it was not
    /// computed.
    pub bound: BigRational,
    pub pairs: usize,
    pub exhaustive: bool,
    pub witness: Option<(Word, Word)>,
}

impl ClaimCheck {
    pub fn holds(&self) -> bool {
        self.worst <= self.bound
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HierarchyChecks {
    /// `(n, ℓₙ expected, length found)` for a recursion or length mismatch.
    pub length_failure: Option<(usize, usize, usize)>,
    /// A level whose enumerated words are not all distinct or do not
    /// decompose on the block grid.
    pub decomposition_failure: Option<(usize, Word)>,
    /// `(n, γ, marker)` where the marker set is not invariant or a marker is
    /// not in `Bₙ₋₁Bₙ₋₁`.
    pub marker_failure: Option<(usize, Elem, Word)>,
    /// `(n, γ, word)` with `γ(word) ∉ Bₙ`.
    pub invariance_failure: Option<(usize, Elem, Word)>,
    pub invariance_exhaustive: bool,
    pub invariance_tests: usize,
    pub claims: Vec<ClaimCheck>,
    /// For each non-identity `γ`: a marker letter it moves, or `None`.
    pub faithfulness: Vec<(Elem, Option<(Letter, Word)>)>,
}

impl HierarchyChecks {
    pub fn faithful(&self) -> bool {
        self.faithfulness.iter().all(|(_, w)| w.is_some())
    }

    pub fn passed(&self) -> bool {
        self.length_failure.is_none()
            && self.decomposition_failure.is_none()
            && self.marker_failure.is_none()
            && self.invariance_failure.is_none()
            && self.claims.iter().all(ClaimCheck::holds)
            && self.faithful()
    }
}

fn sample_words(
    h: &BlockHierarchy,
    n: usize,
    budget: usize,
    rng: &mut ChaCha8Rng,
) -> (Vec<Word>, bool) {
    let level = h.level(n);
    match level.words() {
        Some(words) if words.len() <= budget => (words.to_vec(), true),
        _ => {
            let bytes = level.count.to_bytes_le();
            let words = (0..budget)
                .map(|_| {
                    let buf: Vec<u8> = (0..bytes.len() + 8).map(|_| rng.gen()).collect();
                    let idx = BigUint::from_bytes_le(&buf) % &level.count;
                    h.word(n, &idx)
                })
                .collect();
            (words, false)
        }
    }
}

/// Structural, invariance, windowed-claim and faithfulness checks. Levels
/// larger than `sample_budget` are sampled with `seed`, and the claim check
/// draws at most `sample_budget` word pairs unless all pairs fit.
pub fn hierarchy_checks(h: &BlockHierarchy, sample_budget: usize, seed: u64) -> HierarchyChecks {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let group = h.action.group();
    let nonidentity: Vec<Elem> = group
        .elements()
        .filter(|&g| g != group.identity())
        .collect();
    let mut r = HierarchyChecks {
        length_failure: None,
        decomposition_failure: None,
        marker_failure: None,
        invariance_failure: None,
        invariance_exhaustive: true,
        invariance_tests: 0,
        claims: Vec::new(),
        faithfulness: Vec::new(),
    };

    for level in &h.levels[1..] {
        let n = level.n;
        let prev = h.level(n - 1);
        let expected = (n + 2 * level.markers.len()) * prev.block_len;
        if level.block_len != expected && r.length_failure.is_none() {
            r.length_failure = Some((n, expected, level.block_len));
        }
        if let Some(words) = level.words() {
            if let Some(w) = words.iter().find(|w| w.len() != level.block_len) {
                r.length_failure
                    .get_or_insert((n, level.block_len, w.len()));
            }
            let distinct: HashSet<&Word> = words.iter().collect();
            if distinct.len() != words.len() {
                r.decomposition_failure.get_or_insert((n, Word::empty()));
            }
        }
        let marker_set: HashSet<&Word> = level.markers.iter().collect();
        for x in &level.markers {
            let (a, b) = x.split_at(x.len() / 2);
            if x.len() != 2 * prev.block_len || !h.contains(n - 1, a) || !h.contains(n - 1, b) {
                r.marker_failure
                    .get_or_insert((n, group.identity(), x.clone()));
            }
            for &g in &nonidentity {
                if !marker_set.contains(&act_word(&h.action, g, x)) {
                    r.marker_failure.get_or_insert((n, g, x.clone()));
                }
            }
        }

        let (words, exhaustive) = sample_words(h, n, sample_budget, &mut rng);
        r.invariance_exhaustive &= exhaustive;
        if !exhaustive {
            for w in &words {
                if !h.contains(n, w) {
                    r.decomposition_failure.get_or_insert((n, w.clone()));
                }
            }
        }
        'inv: for &g in &nonidentity {
            for w in &words {
                r.invariance_tests += 1;
                let image = act_word(&h.action, g, w);
                if !h.contains(n, &image) {
                    r.invariance_failure = Some((n, g, w.clone()));
                    break 'inv;
                }
            }
        }
    }

    for n in 2..=h.levels.len() {
        let level = h.level(n);
        let (us, us_all) = sample_words(h, n, sample_budget, &mut rng);
        let (halves, halves_all) = sample_words(h, n - 1, sample_budget, &mut rng);
        let full = us
            .len()
            .saturating_mul(halves.len())
            .saturating_mul(halves.len());
        let exhaustive = us_all && halves_all && full <= sample_budget;
        let pairs: Vec<(&Word, Word)> = if exhaustive {
            let mut all = Vec::with_capacity(full);
            for u in &us {
                for a in &halves {
                    for b in &halves {
                        all.push((u, a.concat(b)));
                    }
                }
            }
            all
        } else {
            (0..sample_budget.min(full))
                .map(|_| {
                    let u = &us[rng.gen_range(0..us.len())];
                    let a = &halves[rng.gen_range(0..halves.len())];
                    let b = &halves[rng.gen_range(0..halves.len())];
                    (u, a.concat(b))
                })
                .collect()
        };
        let mut worst = BigRational::zero();
        let mut witness = None;
        for (u, v) in &pairs {
            let best = u
                .windows(v.len())
                .map(|f| word_distance(&h.metric, f, v))
                .min()
                .unwrap_or_else(|| h.metric.diameter(h.action.alphabet_size()));
            if witness.is_none() || best > worst {
                worst = best;
                witness = Some(((*u).clone(), v.clone()));
            }
        }
        r.claims.push(ClaimCheck {
            level: n,
            worst,
            // any nonempty marker set is dense up to the diameter
            bound: level
                .density
                .clone()
                .unwrap_or_else(|| h.metric.diameter(h.action.alphabet_size())),
            pairs: pairs.len(),
            exhaustive,
            witness,
        });
    }

    for &g in &nonidentity {
        let found = h.levels.iter().flat_map(|l| &l.markers).find_map(|x| {
            x.iter()
                .find(|&&a| h.action.act(g, a) != a)
                .map(|&a| (a, x.clone()))
        });
        r.faithfulness.push((g, found));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::ActionKind;
    use crate::group::FiniteGroup;

    fn z4() -> GroupAction {
        GroupAction::new(FiniteGroup::cyclic(4).unwrap(), ActionKind::LeftTranslation).unwrap()
    }

    fn caps(levels: usize) -> HierarchyCaps {
        HierarchyCaps {
            levels,
            ..HierarchyCaps::default()
        }
    }

    #[test]
    fn base_level() {
        let h = build_block_hierarchy(&z4(), AlphabetMetric::Discrete, caps(1), &[]).unwrap();
        assert_eq!(h.levels().len(), 1);
        assert_eq!(h.level(1).block_len, 1);
        assert_eq!(h.level(1).words().unwrap().len(), 4);
    }

    #[test]
    fn z4_second_level() {
        let h = build_block_hierarchy(&z4(), AlphabetMetric::Discrete, caps(2), &[]).unwrap();
        let l2 = h.level(2);
        let w = |v: Vec<usize>| Word::new(v);
        assert_eq!(
            l2.markers,
            vec![w(vec![0, 0]), w(vec![1, 1]), w(vec![2, 2]), w(vec![3, 3])]
        );
        assert_eq!(l2.block_len, 10);
        assert_eq!(l2.count, BigUint::from(384u32));
        assert_eq!(l2.density, Some(BigRational::one()));

        // independent enumeration: prefixes × marker permutations
        let mut expect = BTreeSet::new();
        for a in 0..4 {
            for b in 0..4 {
                for p in crate::group::permutations_lex(4) {
                    let mut v = vec![a, b];
                    for s in p {
                        v.extend([s, s]);
                    }
                    expect.insert(Word::new(v));
                }
            }
        }
        let got: BTreeSet<Word> = l2.words().unwrap().iter().cloned().collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn z4_checks_pass() {
        let h = build_block_hierarchy(&z4(), AlphabetMetric::Discrete, caps(2), &[]).unwrap();
        let r = hierarchy_checks(&h, 10_000, 0);
        assert!(r.passed(), "{r:?}");
        assert!(r.invariance_exhaustive);
        assert_eq!(r.invariance_tests, 3 * 384);
        assert!(r.claims[0].exhaustive);
        assert_eq!(r.claims[0].pairs, 384 * 16);
        assert_eq!(r.faithfulness.len(), 3);
        let (g, witness) = &r.faithfulness[1];
        assert_eq!(*g, 2);
        assert_eq!(witness.as_ref().unwrap().0, 0);
    }

    #[test]
    fn all_orbits_give_exact_occurrence() {
        let z2 =
            GroupAction::new(FiniteGroup::cyclic(2).unwrap(), ActionKind::LeftTranslation).unwrap();
        let h = build_block_hierarchy(&z2, AlphabetMetric::Discrete, caps(2), &[]).unwrap();
        assert_eq!(h.level(2).marker_count(), 4);
        assert_eq!(h.level(2).density, Some(BigRational::zero()));
        let r = hierarchy_checks(&h, 100_000, 0);
        assert!(r.passed());
        assert_eq!(r.claims[0].worst, BigRational::zero());
    }

    #[test]
    fn dense_target_beyond_cap_fails() {
        let half = BigRational::new(1.into(), 2.into());
        let err = build_block_hierarchy(&z4(), AlphabetMetric::Discrete, caps(2), &[Some(half)])
            .unwrap_err();
        match err {
            ConstructionError::MarkerCap {
                needed, cap, best, ..
            } => {
                assert_eq!(needed, 16);
                assert_eq!(cap, 5);
                assert_eq!(best, "1");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn implicit_levels_unrank_and_decompose() {
        let c = HierarchyCaps {
            levels: 3,
            marker_cap: 5,
            enumeration_cap: 1000,
        };
        let h = build_block_hierarchy(&z4(), AlphabetMetric::Discrete, c, &[]).unwrap();
        let l3 = h.level(3);
        assert!(!l3.is_enumerated());
        assert_eq!(l3.marker_count(), 4);
        assert_eq!(l3.block_len, (3 + 8) * 10);
        assert_eq!(l3.count, BigUint::from(384u32).pow(3) * 24u32);
        for idx in [0u64, 1, 23, 24, 1_000_000] {
            let w = h.word(3, &BigUint::from(idx));
            assert_eq!(w.len(), 110);
            assert!(h.contains(3, &w));
        }
        let last = h.word(3, &(&l3.count - 1u32));
        assert!(h.contains(3, &last));
        let mut bad = last.into_letters();
        bad[109] = (bad[109] + 1) % 4;
        assert!(!h.contains(3, &bad));
        let r = hierarchy_checks(&h, 200, 5);
        assert!(!r.invariance_exhaustive);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn permutation_unranking_is_lexicographic() {
        let all = crate::group::permutations_lex(4);
        for (i, p) in all.iter().enumerate() {
            assert_eq!(&unrank_permutation(4, BigUint::from(i)), p);
        }
    }

    #[test]
    fn unfaithful_action_rejected() {
        let a = GroupAction::new(
            FiniteGroup::cyclic(2).unwrap(),
            ActionKind::Trivial { alphabet_size: 2 },
        )
        .unwrap();
        assert!(matches!(
            build_block_hierarchy(&a, AlphabetMetric::Discrete, caps(2), &[]),
            Err(ConstructionError::NotFaithful(..))
        ));
    }

    #[test]
    fn dump_header() {
        let h = build_block_hierarchy(&z4(), AlphabetMetric::Discrete, caps(2), &[]).unwrap();
        let d = h.dump();
        assert!(d.starts_with("n=1 ln=1 kn=0 |Bn|=4\nmarkers:\nwords:\n0\n1\n2\n3\nn=2 ln=10 kn=4 |Bn|=384\nmarkers:\n0 0\n"));
        assert_eq!(d.lines().count(), 1 + 1 + 1 + 4 + 1 + 1 + 4 + 1 + 384);
    }
}
