//! Finite words over `0..alphabet_size` and the plain-text word file format
//! (one word per line, decimal letter ids separated by single spaces).

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use thiserror::Error;

pub type Letter = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: cannot parse `{token}` as a letter id")]
pub struct ParseWordError {
    pub line: usize,
    pub token: String,
}

/// Words order lexicographically, with a proper prefix before its extensions.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn power(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    /// Length-`len` factors, left to right, with repetition.
    pub fn factors(&self, len: usize) -> impl Iterator<Item = &[Letter]> {
        let count = if len == 0 || len > self.len() {
            0
        } else {
            self.len() - len + 1
        };
        (0..count).map(move |i| &self.0[i..i + len])
    }

    pub fn contains_factor(&self, w: &[Letter]) -> bool {
        contains_factor(&self.0, w)
    }

    pub fn max_letter(&self) -> Option<Letter> {
        self.0.iter().copied().max()
    }
}

pub(crate) fn contains_factor(haystack: &[Letter], needle: &[Letter]) -> bool {
    needle.is_empty() || haystack.windows(needle.len()).any(|w| w == needle)
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

// Hashing and ordering of `Word` are those of the underlying slice.
impl std::borrow::Borrow<[Letter]> for Word {
    fn borrow(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl From<&[Letter]> for Word {
    fn from(v: &[Letter]) -> Self {
        Word(v.to_vec())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = ParseWordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_line(s, 1)
    }
}

fn parse_line(s: &str, line: usize) -> Result<Word, ParseWordError> {
    s.split_whitespace()
        .map(|t| {
            t.parse().map_err(|_| ParseWordError {
                line,
                token: t.to_string(),
            })
        })
        .collect()
}

/// Parses a word file. Every line is one word; an empty line is the empty word.
/// A single trailing newline does not add a word.
pub fn read_words(text: &str) -> Result<Vec<Word>, ParseWordError> {
    text.lines()
        .enumerate()
        .map(|(i, l)| parse_line(l, i + 1))
        .collect()
}

pub fn write_words<'a>(words: impl IntoIterator<Item = &'a Word>) -> String {
    let mut out = String::new();
    for w in words {
        out.push_str(&w.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display_and_parse() {
        let w = Word::new(vec![0, 1, 13]);
        assert_eq!(w.to_string(), "0 1 13");
        assert_eq!("0 1 13".parse::<Word>().unwrap(), w);
        assert!("0 x".parse::<Word>().is_err());
    }

    #[test]
    fn factors_and_power() {
        let w = Word::new(vec![0, 1]).power(3);
        assert_eq!(w.letters(), &[0, 1, 0, 1, 0, 1]);
        assert_eq!(w.factors(5).count(), 2);
        assert_eq!(w.factors(7).count(), 0);
        assert!(w.contains_factor(&[1, 0]));
        assert!(!w.contains_factor(&[0, 0]));
    }

    #[test]
    fn ordering_is_lexicographic() {
        let a = Word::new(vec![0, 1]);
        let b = Word::new(vec![0, 1, 0]);
        let c = Word::new(vec![1]);
        assert!(a < b && b < c);
    }

    #[test]
    fn word_file_with_empty_word() {
        let text = "0 1 3\n\n2\n";
        let words = read_words(text).unwrap();
        assert_eq!(words.len(), 3);
        assert!(words[1].is_empty());
        assert_eq!(write_words(&words), text);
        let err = read_words("1\n2 y\n").unwrap_err();
        assert_eq!(err.line, 2);
    }

    proptest! {
        #[test]
        fn word_file_roundtrip(words in prop::collection::vec(prop::collection::vec(0usize..20, 0..8), 0..10)) {
            let words: Vec<Word> = words.into_iter().map(Word::new).collect();
            prop_assert_eq!(read_words(&write_words(&words)).unwrap(), words);
        }
    }
}
