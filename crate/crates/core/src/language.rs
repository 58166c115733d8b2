//! Exact finite languages of substitution shifts.
//!
//! Every legal two-letter word of a primitive substitution shift occurs
//! inside `θ(a)` or across a boundary `θ(b)θ(c)` with `bc` legal, so the
//! two-letter language is a closure. Longer words are read off `θ^n(bc)`
//! once `r^n + 1` covers the window.

use std::collections::{BTreeSet, HashSet};

use crate::alphabet::{Letter, Word};
use crate::error::{Error, Result};
use crate::substitution::Substitution;

pub type WordSet = BTreeSet<Word>;

/// Smallest `k ≤ |A|²` such that every `θ^k(a)` contains every letter.
pub fn primitivity_exponent(theta: &Substitution) -> Option<usize> {
    let n = theta.size();
    // reach[a] = letters of θ^k(a)
    let mut reach: Vec<Vec<bool>> = (0..n)
        .map(|a| {
            let mut v = vec![false; n];
            v[a] = true;
            v
        })
        .collect();
    for k in 1..=n * n {
        reach = (0..n)
            .map(|a| {
                let mut v = vec![false; n];
                for &b in theta.image(a) {
                    for (c, &hit) in reach[b].iter().enumerate() {
                        v[c] |= hit;
                    }
                }
                v
            })
            .collect();
        if reach.iter().all(|v| v.iter().all(|&x| x)) {
            return Some(k);
        }
    }
    None
}

pub fn is_primitive(theta: &Substitution) -> bool {
    primitivity_exponent(theta).is_some()
}

fn require_primitive(theta: &Substitution) -> Result<()> {
    if is_primitive(theta) {
        Ok(())
    } else {
        Err(Error::NotPrimitive)
    }
}

/// The legal two-letter words.
pub fn two_words(theta: &Substitution) -> Result<WordSet> {
    require_primitive(theta)?;
    let mut set = WordSet::new();
    for a in theta.alphabet().letters() {
        for w in theta.image(a).windows(2) {
            set.insert(w.to_vec());
        }
    }
    let mut frontier: Vec<Word> = set.iter().cloned().collect();
    while let Some(bc) = frontier.pop() {
        let img = theta.apply(&bc);
        for w in img.windows(2) {
            if set.insert(w.to_vec()) {
                frontier.push(w.to_vec());
            }
        }
    }
    Ok(set)
}

/// The exact set of legal words of length `len`.
pub fn language(theta: &Substitution, len: usize) -> Result<WordSet> {
    if len == 0 {
        return Ok(std::iter::once(Vec::new()).collect());
    }
    require_primitive(theta)?;
    if len == 1 {
        return Ok(theta.alphabet().letters().map(|a| vec![a]).collect());
    }
    let l2 = two_words(theta)?;
    if len == 2 {
        return Ok(l2);
    }
    let r = theta.length();
    let mut n = 1;
    let mut span = r;
    while span + 1 < len {
        span *= r;
        n += 1;
    }
    let mut out = WordSet::new();
    for bc in &l2 {
        let w = theta.iterate(bc, n);
        for win in w.windows(len) {
            out.insert(win.to_vec());
        }
    }
    Ok(out)
}

/// Languages of every length up to a bound, kept for repeated membership
/// queries.
#[derive(Clone, Debug)]
pub struct LanguageTable {
    sets: Vec<HashSet<Word>>,
}

impl LanguageTable {
    pub fn new(theta: &Substitution, max_len: usize) -> Result<Self> {
        let top = language(theta, max_len)?;
        let mut sets = vec![HashSet::new(); max_len + 1];
        sets[0].insert(Vec::new());
        for w in &top {
            for l in 1..=max_len {
                for s in w.windows(l) {
                    sets[l].insert(s.to_vec());
                }
            }
        }
        Ok(LanguageTable { sets })
    }

    pub fn max_len(&self) -> usize {
        self.sets.len() - 1
    }

    pub fn contains(&self, word: &[Letter]) -> bool {
        match self.sets.get(word.len()) {
            Some(s) => s.contains(word),
            None => panic!("word of length {} beyond table bound {}", word.len(), self.max_len()),
        }
    }

    pub fn words(&self, len: usize) -> &HashSet<Word> {
        &self.sets[len]
    }

    /// Legal words of a given length in sorted order.
    pub fn sorted(&self, len: usize) -> Vec<Word> {
        let mut v: Vec<Word> = self.sets[len].iter().cloned().collect();
        v.sort();
        v
    }
}

/// Number of legal words of each length `1..=max_len`.
pub fn complexity(theta: &Substitution, max_len: usize) -> Result<Vec<usize>> {
    let t = LanguageTable::new(theta, max_len)?;
    Ok((1..=max_len).map(|l| t.words(l).len()).collect())
}

/// A primitive shift is finite (periodic) iff its complexity is bounded,
/// which shows up as `p(L) ≤ L` for some `L`. Infinite shifts have
/// `p(L) ≥ L + 1` for every `L`.
pub fn is_finite(theta: &Substitution) -> Result<bool> {
    require_primitive(theta)?;
    let n = theta.size();
    let bound = (theta.length() * n * n).max(8);
    let mut len = 2;
    loop {
        let words = language(theta, len)?;
        if words.len() <= len {
            return Ok(true);
        }
        if len >= bound {
            return Ok(false);
        }
        len = (len * 2).min(bound);
    }
}

/// Finite-image test for a coded shift: the number of coded words of length
/// `L` stops growing and stays at most `L`.
pub fn coded_is_finite(theta: &Substitution, coding: &[Letter]) -> Result<bool> {
    require_primitive(theta)?;
    let n = theta.size();
    let bound = (theta.length() * n * n).max(8);
    let mut len = 2;
    loop {
        let words: BTreeSet<Word> = language(theta, len)?
            .into_iter()
            .map(|w| w.iter().map(|&a| coding[a]).collect())
            .collect();
        if words.len() <= len {
            return Ok(true);
        }
        if len >= bound {
            return Ok(false);
        }
        len = (len * 2).min(bound);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(theta: &Substitution, set: &WordSet) -> Vec<String> {
        set.iter().map(|w| theta.alphabet().render(w)).collect()
    }

    /// Subwords of a long expansion from every letter.
    fn expansion_oracle(theta: &Substitution, len: usize, depth: usize) -> WordSet {
        let mut out = WordSet::new();
        for a in theta.alphabet().letters() {
            let w = theta.iterate(&[a], depth);
            for s in w.windows(len) {
                out.insert(s.to_vec());
            }
        }
        out
    }

    #[test]
    fn small_languages() {
        let t = Substitution::from_images("xy", &["xy", "xx"]).unwrap();
        assert_eq!(words(&t, &language(&t, 2).unwrap()), ["xx", "xy", "yx"]);
        assert_eq!(language(&t, 1).unwrap().len(), 2);

        let tm = Substitution::from_images("ab", &["ab", "ba"]).unwrap();
        assert_eq!(
            words(&tm, &language(&tm, 3).unwrap()),
            ["aab", "aba", "abb", "baa", "bab", "bba"]
        );
    }

    #[test]
    fn matches_expansion() {
        for (letters, imgs) in [
            ("abc", vec!["aac", "bca", "bba"]),
            ("abc", vec!["abb", "bac", "cca"]),
            ("abcd", vec!["abd", "aad", "add", "acd"]),
            ("abcd", vec!["ac", "bd", "ab", "ba"]),
        ] {
            let t = Substitution::from_images(letters, &imgs).unwrap();
            for len in 1..=7 {
                assert_eq!(language(&t, len).unwrap(), expansion_oracle(&t, len, 7));
            }
        }
    }

    #[test]
    fn primitivity() {
        let tm = Substitution::from_images("ab", &["ab", "ba"]).unwrap();
        assert_eq!(primitivity_exponent(&tm), Some(1));
        let t = Substitution::from_images("ab", &["aa", "bb"]).unwrap();
        assert_eq!(primitivity_exponent(&t), None);
        assert_eq!(language(&t, 2).unwrap_err(), Error::NotPrimitive);
        let t = Substitution::from_images("abc", &["abb", "bac", "cca"]).unwrap();
        assert_eq!(primitivity_exponent(&t), Some(2));
    }

    #[test]
    fn finiteness() {
        let tm = Substitution::from_images("ab", &["ab", "ba"]).unwrap();
        assert!(!is_finite(&tm).unwrap());
        let per = Substitution::from_images("ab", &["ab", "ab"]).unwrap();
        assert!(is_finite(&per).unwrap());
        assert!(coded_is_finite(&tm, &[0, 0]).unwrap());
        assert!(!coded_is_finite(&tm, &[0, 1]).unwrap());
    }
}
