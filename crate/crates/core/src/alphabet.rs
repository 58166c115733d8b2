//! Ordered finite alphabets.
//!
//! Letters are dense indices into an [`Alphabet`]; the alphabet owns the
//! printable names. Most alphabets in practice are single characters, in
//! which case words print as plain strings (`aac`). Alphabets built from
//! blocks or classes have longer names and words print space-separated.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Letter = usize;

/// A finite word over some alphabet.
pub type Word = Vec<Letter>;

/// A total map from an alphabet to itself, stored as an image table.
pub type LetterMap = Vec<Letter>;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize, schemars::JsonSchema)]
#[serde(transparent)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidSubstitution("empty alphabet".into()));
        }
        let mut seen = BTreeMap::new();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || n.chars().any(|c| c.is_whitespace() || c == '#') {
                return Err(Error::InvalidSubstitution(format!("bad letter name {n:?}")));
            }
            if seen.insert(n.as_str(), i).is_some() {
                return Err(Error::InvalidSubstitution(format!("duplicate letter {n:?}")));
            }
        }
        Ok(Alphabet { names })
    }

    /// Alphabet whose letters are the characters of `chars`, in order.
    pub fn from_chars(chars: &str) -> Result<Self> {
        Alphabet::new(chars.chars().map(String::from))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.names[letter]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.names.iter().position(|n| n == name)
    }

    pub fn letters(&self) -> std::ops::Range<Letter> {
        0..self.names.len()
    }

    /// True when every name is one character, so words can print unseparated.
    pub fn is_compact(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    pub fn render(&self, word: &[Letter]) -> String {
        let sep = if self.is_compact() { "" } else { " " };
        word.iter()
            .map(|&l| self.names[l].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    pub fn render_set(&self, set: &[Letter]) -> String {
        let inner: Vec<&str> = set.iter().map(|&l| self.name(l)).collect();
        format!("{{{}}}", inner.join(","))
    }

    /// Parses a word. Whitespace-separated tokens are letter names; a single
    /// token over a compact alphabet is read one character per letter.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        self.parse_word_at(text, 1, 1)
    }

    pub(crate) fn parse_word_at(&self, text: &str, line: usize, column: usize) -> Result<Word> {
        let mut out = Vec::new();
        for (offset, token) in tokens(text) {
            if self.is_compact() && token.chars().count() > 1 {
                for (i, ch) in token.char_indices() {
                    let letter = self.letter(&ch.to_string()).ok_or_else(|| {
                        Error::parse(line, column + offset + i, format!("unknown letter {ch:?}"))
                    })?;
                    out.push(letter);
                }
            } else {
                let letter = self.letter(token).ok_or_else(|| {
                    Error::parse(line, column + offset, format!("unknown letter {token:?}"))
                })?;
                out.push(letter);
            }
        }
        Ok(out)
    }
}

/// Whitespace tokens of `text` with their byte offsets.
pub(crate) fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.split_whitespace()
        .map(move |t| (t.as_ptr() as usize - text.as_ptr() as usize, t))
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.names)
    }
}

/// Composes letter maps: `(outer ∘ inner)(a) = outer(inner(a))`.
pub fn compose(outer: &[Letter], inner: &[Letter]) -> LetterMap {
    inner.iter().map(|&a| outer[a]).collect()
}

pub fn identity_map(n: usize) -> LetterMap {
    (0..n).collect()
}

pub fn is_permutation(map: &[Letter]) -> bool {
    let mut seen = vec![false; map.len()];
    for &a in map {
        if a >= map.len() || seen[a] {
            return false;
        }
        seen[a] = true;
    }
    true
}

pub fn invert(map: &[Letter]) -> LetterMap {
    let mut inv = vec![0; map.len()];
    for (a, &b) in map.iter().enumerate() {
        inv[b] = a;
    }
    inv
}

/// Order of a permutation under composition.
pub fn permutation_order(map: &[Letter]) -> usize {
    let mut order = 1;
    let mut seen = vec![false; map.len()];
    for start in 0..map.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut a = start;
        while !seen[a] {
            seen[a] = true;
            a = map[a];
            len += 1;
        }
        order = num_integer::lcm(order, len);
    }
    order
}

/// Cycle notation over the given alphabet, e.g. `(ae)(bf)`; `id` for identity.
pub fn cycle_notation(map: &[Letter], alphabet: &Alphabet) -> String {
    let mut out = String::new();
    let mut seen = vec![false; map.len()];
    for start in 0..map.len() {
        if seen[start] || map[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut a = start;
        while !seen[a] {
            seen[a] = true;
            cycle.push(a);
            a = map[a];
        }
        let sep = if alphabet.is_compact() { "" } else { " " };
        let names: Vec<&str> = cycle.iter().map(|&l| alphabet.name(l)).collect();
        out.push('(');
        out.push_str(&names.join(sep));
        out.push(')');
    }
    if out.is_empty() {
        "id".into()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_compact_and_spaced() {
        let a = Alphabet::from_chars("abc").unwrap();
        assert_eq!(a.parse_word("acb").unwrap(), vec![0, 2, 1]);
        assert_eq!(a.parse_word("a c b").unwrap(), vec![0, 2, 1]);
        let err = a.parse_word("abx").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 1,
                column: 3,
                message: "unknown letter 'x'".into()
            }
        );

        let blocks = Alphabet::new(["ab", "ba"]).unwrap();
        assert!(!blocks.is_compact());
        assert_eq!(blocks.parse_word("ba ab").unwrap(), vec![1, 0]);
        assert_eq!(blocks.render(&[1, 0]), "ba ab");
    }

    #[test]
    fn rejects_duplicates() {
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
    }

    #[test]
    fn cycles() {
        let a = Alphabet::from_chars("abcd").unwrap();
        assert_eq!(cycle_notation(&[1, 0, 3, 2], &a), "(ab)(cd)");
        assert_eq!(cycle_notation(&[0, 1, 2, 3], &a), "id");
        assert_eq!(permutation_order(&[1, 2, 0, 3]), 3);
        assert_eq!(invert(&[1, 2, 0]), vec![2, 0, 1]);
    }
}
