//! Stratified factor languages at finite horizon, generated from substitution
//! sequences, and the diagnostics run on them.

use std::collections::{BTreeSet, HashSet};

use thiserror::Error;

use crate::substitution::{Substitution, SubstitutionSequence};
use crate::word::{contains_factor, Letter, Word};

/// Environment variable overriding [`Budget::default`], in letters.
pub const BUDGET_ENV: &str = "CANTOR_BUDGET";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubshiftError {
    #[error("letter {letter} out of range for alphabet of size {alphabet_size}")]
    LetterOutOfRange {
        letter: Letter,
        alphabet_size: usize,
    },
    #[error("alphabet size mismatch: expected {expected}, found {found}")]
    AlphabetMismatch { expected: usize, found: usize },
    #[error("image of letter {letter} is empty")]
    EmptyImage { letter: Letter },
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("first generator must be the identity, found {found}")]
    FirstGeneratorNotIdentity { found: usize },
    #[error("generator {element} appears twice")]
    DuplicateGenerator { element: usize },
    #[error("generator set is not symmetric: inverse of {element} missing")]
    NotSymmetric { element: usize },
    #[error("element {element} is not in the group")]
    UnknownElement { element: usize },
    #[error("generating set {level} does not extend set {}", level - 1)]
    NotNested { level: usize },
    #[error("substitution sequence is empty")]
    EmptySequence,
    #[error("{stage}: needs {needed} letters, budget is {budget}")]
    BudgetExceeded {
        stage: &'static str,
        needed: usize,
        budget: usize,
    },
    #[error("horizon {requested} exceeds available length {available}")]
    InsufficientHorizon { requested: usize, available: usize },
    #[error("maximum length must be at least 1")]
    ZeroHorizon,
    #[error("word `{0}` is not in the language")]
    WordNotInLanguage(Word),
    #[error("stratum {length} is empty")]
    EmptyStratum { length: usize },
    #[error("window shapes differ: {left} vs {right} letters")]
    ShapeMismatch { left: usize, right: usize },
    #[error("language dump line {line}: {reason}")]
    Dump { line: usize, reason: String },
}

/// Memory budget for word expansion, counted in stored letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_letters: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_letters: 1 << 24,
        }
    }
}

impl Budget {
    /// The default, overridden by `CANTOR_BUDGET` when set to an integer.
    pub fn from_env() -> Self {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(|max_letters| Budget { max_letters })
            .unwrap_or_default()
    }

    pub(crate) fn charge(&self, stage: &'static str, needed: usize) -> Result<(), SubshiftError> {
        if needed > self.max_letters {
            Err(SubshiftError::BudgetExceeded {
                stage,
                needed,
                budget: self.max_letters,
            })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Provenance {
    pub seed: Letter,
    pub depth: usize,
}

/// Words of length `1..=max_len`, one sorted set per length.
#[derive(Debug, Clone)]
pub struct Language {
    strata: Vec<BTreeSet<Word>>,
    provenance: Option<Provenance>,
}

impl PartialEq for Language {
    fn eq(&self, other: &Self) -> bool {
        self.strata == other.strata
    }
}

impl Eq for Language {}

impl Language {
    /// `strata[i]` holds the words of length `i + 1`.
    pub fn from_strata(strata: Vec<BTreeSet<Word>>) -> Self {
        Language {
            strata,
            provenance: None,
        }
    }

    /// All factors of length `<= max_len` of the given words.
    pub fn from_words<'a>(words: impl IntoIterator<Item = &'a Word>, max_len: usize) -> Self {
        let mut strata = vec![BTreeSet::new(); max_len];
        for w in words {
            for (l, stratum) in strata.iter_mut().enumerate() {
                stratum.extend(w.factors(l + 1).map(Word::from));
            }
        }
        Language::from_strata(strata)
    }

    /// Every word over `0..k`.
    pub fn full_shift(k: usize, max_len: usize) -> Self {
        let mut strata: Vec<BTreeSet<Word>> = Vec::with_capacity(max_len);
        let mut layer: Vec<Vec<Letter>> = vec![vec![]];
        for _ in 0..max_len {
            layer = layer
                .iter()
                .flat_map(|w| {
                    (0..k).map(move |a| {
                        let mut v = w.clone();
                        v.push(a);
                        v
                    })
                })
                .collect();
            strata.push(layer.iter().cloned().map(Word::new).collect());
        }
        Language::from_strata(strata)
    }

    /// Factors of the periodic sequence `u^ω`.
    pub fn periodic(u: &Word, max_len: usize) -> Self {
        assert!(!u.is_empty());
        let reps = max_len / u.len() + 2;
        Language::from_words([&u.power(reps)], max_len)
    }

    pub fn max_len(&self) -> usize {
        self.strata.len()
    }

    /// The strata of length at most `len`.
    pub fn truncated(&self, len: usize) -> Language {
        Language {
            strata: self.strata.iter().take(len).cloned().collect(),
            provenance: self.provenance,
        }
    }

    pub fn provenance(&self) -> Option<Provenance> {
        self.provenance
    }

    /// Words of length `len`; empty for `len == 0` or beyond `max_len`.
    pub fn stratum(&self, len: usize) -> &BTreeSet<Word> {
        static EMPTY: BTreeSet<Word> = BTreeSet::new();
        if len == 0 {
            return &EMPTY;
        }
        self.strata.get(len - 1).unwrap_or(&EMPTY)
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        self.stratum(w.len()).contains(&Word::from(w))
    }

    pub fn letters(&self) -> Vec<Letter> {
        self.stratum(1).iter().map(|w| w[0]).collect()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.strata.iter().map(BTreeSet::len).collect()
    }

    /// Longest length with a nonempty stratum.
    pub fn top_nonempty(&self) -> usize {
        self.strata
            .iter()
            .rposition(|s| !s.is_empty())
            .map_or(0, |i| i + 1)
    }

    pub fn iter_words(&self) -> impl Iterator<Item = &Word> {
        self.strata.iter().flatten()
    }

    /// A word whose prefix or suffix of one letter less is missing.
    pub fn factor_closure_violation(&self) -> Option<(usize, Word)> {
        for len in 2..=self.max_len() {
            let below = self.stratum(len - 1);
            for w in self.stratum(len) {
                if !below.contains(&Word::from(&w[..len - 1]))
                    || !below.contains(&Word::from(&w[1..]))
                {
                    return Some((len, w.clone()));
                }
            }
        }
        None
    }

    /// Smallest length at which the two languages differ, with the least word
    /// of the symmetric difference and whether it belongs to `self`.
    pub fn first_difference(&self, other: &Language) -> Option<(usize, Word, bool)> {
        let top = self.max_len().max(other.max_len());
        for len in 1..=top {
            let (a, b) = (self.stratum(len), other.stratum(len));
            if a != b {
                let w = a.symmetric_difference(b).next().unwrap().clone();
                let in_self = a.contains(&w);
                return Some((len, w, in_self));
            }
        }
        None
    }

    /// Stratumwise inclusion.
    pub fn is_subset_of(&self, other: &Language) -> bool {
        (1..=self.max_len()).all(|l| self.stratum(l).is_subset(other.stratum(l)))
    }

    /// Text dump: for each length a header `len=ℓ count=c`, then the words of
    /// that stratum in lexicographic order, one per line.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, s) in self.strata.iter().enumerate() {
            out.push_str(&format!("len={} count={}\n", i + 1, s.len()));
            for w in s {
                out.push_str(&w.to_string());
                out.push('\n');
            }
        }
        out
    }

    pub fn parse_dump(text: &str) -> Result<Self, SubshiftError> {
        let mut strata: Vec<BTreeSet<Word>> = Vec::new();
        let mut lines = text.lines().enumerate().peekable();
        while let Some((i, header)) = lines.next() {
            let err = |reason: String| SubshiftError::Dump {
                line: i + 1,
                reason,
            };
            let (len, count) =
                parse_header(header).ok_or_else(|| err(format!("bad header `{header}`")))?;
            if len != strata.len() + 1 {
                return Err(err(format!(
                    "expected len={}, found len={len}",
                    strata.len() + 1
                )));
            }
            let mut stratum = BTreeSet::new();
            for _ in 0..count {
                let (j, line) = lines
                    .next()
                    .ok_or_else(|| err("truncated stratum".into()))?;
                let w: Word = line.parse().map_err(|_| SubshiftError::Dump {
                    line: j + 1,
                    reason: format!("bad word `{line}`"),
                })?;
                if w.len() != len {
                    return Err(SubshiftError::Dump {
                        line: j + 1,
                        reason: format!("word of length {} in stratum {len}", w.len()),
                    });
                }
                stratum.insert(w);
            }
            strata.push(stratum);
        }
        Ok(Language::from_strata(strata))
    }
}

fn parse_header(line: &str) -> Option<(usize, usize)> {
    let rest = line.strip_prefix("len=")?;
    let (len, count) = rest.split_once(" count=")?;
    Some((len.parse().ok()?, count.parse().ok()?))
}

/// Factors of length `<= max_len` of `τ_0 ∘ ... ∘ τ_j(seed)` for all
/// `j <= depth`.
///
/// Works on the set of longest tracked factors only, expanding short windows.
/// Shorter strata are read off as prefixes and suffixes.
pub fn generate_language(
    seq: &SubstitutionSequence,
    seed: Letter,
    max_len: usize,
    depth: usize,
    budget: &Budget,
) -> Result<Language, SubshiftError> {
    let n = seq.alphabet_size();
    if seed >= n {
        return Err(SubshiftError::LetterOutOfRange {
            letter: seed,
            alphabet_size: n,
        });
    }
    if max_len == 0 {
        return Err(SubshiftError::ZeroHorizon);
    }
    // every recorded word has all its factors recorded, so only new words
    // need to be cut down
    let mut strata: Vec<HashSet<Word>> = vec![HashSet::new(); max_len];
    let mut record = |top: HashSet<Word>| {
        let top_len = top.iter().next().map_or(0, |w| w.len());
        let mut layer = top;
        for len in (1..=top_len).rev() {
            layer.retain(|w| !strata[len - 1].contains(w));
            if layer.is_empty() {
                break;
            }
            let next: HashSet<Word> = if len > 1 {
                layer
                    .iter()
                    .flat_map(|w| [Word::from(&w[..len - 1]), Word::from(&w[1..])])
                    .collect()
            } else {
                HashSet::new()
            };
            strata[len - 1].extend(layer);
            layer = next;
        }
    };
    if seq.schedule_len() == 1 {
        // τ^{j+1}(seed) = τ(τ^j(seed)): one step per depth
        let tau = seq.get(0);
        let mut cur = HashSet::from([Word::new(vec![seed])]);
        let mut recorded: Option<HashSet<Word>> = None;
        for _ in 0..=depth {
            cur = expand_factors(tau, &cur, max_len, budget)?;
            if recorded.as_ref() != Some(&cur) {
                record(cur.clone());
                recorded = Some(cur.clone());
            }
        }
    } else {
        for j in 0..=depth {
            let mut cur = HashSet::from([Word::new(vec![seed])]);
            for i in (0..=j).rev() {
                cur = expand_factors(seq.get(i), &cur, max_len, budget)?;
            }
            record(cur);
        }
    }
    Ok(Language {
        strata: strata
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect(),
        provenance: Some(Provenance { seed, depth }),
    })
}

/// Longest tracked factors of `τ(W)`, given those of `W`: the whole image
/// while it fits in `max_len`, else its factors of length `max_len`.
///
/// With every image of length at least `d`, a factor of length `L` of `τ(W)`
/// spans at most `⌈(L-1)/d⌉ + 1` images, so only windows of `W` of that
/// length need expanding.
fn expand_factors(
    tau: &Substitution,
    cur: &HashSet<Word>,
    max_len: usize,
    budget: &Budget,
) -> Result<HashSet<Word>, SubshiftError> {
    let cur_len = cur.iter().next().map_or(0, |w| w.len());
    let mut next = HashSet::new();
    if cur_len < max_len {
        // cur holds the whole word
        for v in cur {
            let img = tau.apply_unchecked(v);
            budget.charge("generate_language", img.len() + next.len() * max_len)?;
            if img.len() <= max_len {
                next.insert(img);
            } else {
                next.extend(img.factors(max_len).map(Word::from));
            }
        }
        return Ok(next);
    }
    let span = ((max_len - 1).div_ceil(tau.min_image_len()) + 1).min(cur_len);
    let windows: HashSet<&[Letter]> = cur.iter().flat_map(|w| w.windows(span)).collect();
    for v in windows {
        let img = tau.apply_unchecked(v);
        budget.charge("generate_language", img.len() + next.len() * max_len)?;
        next.extend(img.factors(max_len).map(Word::from));
    }
    Ok(next)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Independence {
    /// `reflexive` is set when both seeds were the same letter.
    Equal { reflexive: bool },
    /// First length where the languages differ, the least differing word,
    /// and the seed whose language contains it.
    Differs {
        length: usize,
        word: Word,
        only_in: Letter,
    },
}

/// Compares the languages generated from seeds `a` and `b`.
pub fn language_independence_check(
    seq: &SubstitutionSequence,
    a: Letter,
    b: Letter,
    max_len: usize,
    depth: usize,
    budget: &Budget,
) -> Result<Independence, SubshiftError> {
    let la = generate_language(seq, a, max_len, depth, budget)?;
    if a == b {
        return Ok(Independence::Equal { reflexive: true });
    }
    let lb = generate_language(seq, b, max_len, depth, budget)?;
    Ok(match la.first_difference(&lb) {
        None => Independence::Equal { reflexive: false },
        Some((length, word, in_a)) => Independence::Differs {
            length,
            word,
            only_in: if in_a { a } else { b },
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recurrence {
    /// Least `R` such that every language word of length `R` contains `w`.
    Bounded(usize),
    /// No such `R` up to the horizon. The witness is a word of the longest
    /// examined length avoiding `w`; `None` when that stratum is empty.
    NotWithin {
        horizon: usize,
        witness: Option<Word>,
    },
}

/// Least `R <= horizon` such that every word of length `R` in `lang`
/// contains `w`.
pub fn recurrence_profile(
    lang: &Language,
    w: &[Letter],
    horizon: usize,
) -> Result<Recurrence, SubshiftError> {
    if horizon > lang.max_len() {
        return Err(SubshiftError::InsufficientHorizon {
            requested: horizon,
            available: lang.max_len(),
        });
    }
    if !lang.contains(w) {
        return Err(SubshiftError::WordNotInLanguage(Word::from(w)));
    }
    let avoider = |r: usize| lang.stratum(r).iter().find(|u| !contains_factor(u, w));
    // within nonempty strata, "every word of length R contains w" is monotone
    // in R by factor closure
    let hi = horizon.min(lang.top_nonempty());
    if hi < w.len() {
        return Ok(Recurrence::NotWithin {
            horizon,
            witness: None,
        });
    }
    if let Some(u) = avoider(hi) {
        return Ok(Recurrence::NotWithin {
            horizon,
            witness: Some(u.clone()),
        });
    }
    let (mut lo, mut hi) = (w.len(), hi);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if avoider(mid).is_none() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(Recurrence::Bounded(lo))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Periodicity {
    Aperiodic,
    /// `u^ω` is compatible with the language at its top stratum.
    PossiblyPeriodic {
        period: usize,
        word: Word,
    },
}

/// Looks for a word `u` with `|u| <= p_max` such that the truncated powers of
/// `u` lie in the language and the top stratum consists only of factors of
/// `u^ω`.
pub fn aperiodicity_check(lang: &Language, p_max: usize) -> Result<Periodicity, SubshiftError> {
    let top = lang.max_len();
    if top < 2 * p_max {
        return Err(SubshiftError::InsufficientHorizon {
            requested: 2 * p_max,
            available: top,
        });
    }
    let top_words = lang.stratum(top);
    if top_words.is_empty() {
        return Err(SubshiftError::EmptyStratum { length: top });
    }
    for p in 1..=p_max {
        for u in lang.stratum(p) {
            let power: Word = u.iter().copied().cycle().take(top).collect();
            if !top_words.contains(&power) {
                continue;
            }
            if top_words.iter().all(|t| is_factor_of_periodic(t, u)) {
                return Ok(Periodicity::PossiblyPeriodic {
                    period: p,
                    word: u.clone(),
                });
            }
        }
    }
    Ok(Periodicity::Aperiodic)
}

fn is_factor_of_periodic(t: &[Letter], u: &[Letter]) -> bool {
    let p = u.len();
    (0..p).any(|shift| t.iter().enumerate().all(|(i, &x)| x == u[(i + shift) % p]))
}
