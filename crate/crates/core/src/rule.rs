//! Sliding block codes given by local rules on language windows.
//!
//! A rule with left radius `ℓ` and right radius `ρ` sends a point `x` to
//! the point whose `i`-th letter is `f(x[i−ℓ, i+ρ])`. Radii are
//! non-negative; shifts are expressed by reading an off-centre letter.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::alphabet::{tokens, Alphabet, Letter, LetterMap, Word};
use crate::error::{Error, Result};
use crate::language::{language, WordSet};
use crate::substitution::Substitution;

/// Anything with an alphabet and exact finite languages.
pub trait ShiftLanguage {
    fn alphabet(&self) -> &Alphabet;
    fn words(&self, len: usize) -> Result<WordSet>;
}

impl ShiftLanguage for Substitution {
    fn alphabet(&self) -> &Alphabet {
        Substitution::alphabet(self)
    }

    fn words(&self, len: usize) -> Result<WordSet> {
        language(self, len)
    }
}

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalRule {
    pub left: usize,
    pub right: usize,
    pub source: Alphabet,
    pub target: Alphabet,
    /// Outputs by full window.
    #[serde(with = "window_pairs")]
    pub table: BTreeMap<Word, Letter>,
    /// Outputs that depend on the centre letter only; consulted when the
    /// window is missing from `table`.
    pub by_center: BTreeMap<Letter, Letter>,
}

/// Window tables as `[window, output]` pairs; JSON keys must be strings.
mod window_pairs {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::alphabet::{Letter, Word};

    pub fn serialize<S: Serializer>(table: &BTreeMap<Word, Letter>, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(&Word, &Letter)> = table.iter().collect();
        pairs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<Word, Letter>, D::Error> {
        Ok(Vec::<(Word, Letter)>::deserialize(d)?.into_iter().collect())
    }
}

impl LocalRule {
    pub fn new(left: usize, right: usize, source: Alphabet, target: Alphabet) -> Self {
        LocalRule {
            left,
            right,
            source,
            target,
            table: BTreeMap::new(),
            by_center: BTreeMap::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.left + self.right + 1
    }

    /// Radius-0 rule of a letter map.
    pub fn from_letter_map(source: &Alphabet, target: &Alphabet, map: &[Letter]) -> Self {
        let mut rule = LocalRule::new(0, 0, source.clone(), target.clone());
        rule.by_center = map.iter().copied().enumerate().collect();
        rule
    }

    pub fn identity(alphabet: &Alphabet) -> Self {
        let map: LetterMap = alphabet.letters().collect();
        LocalRule::from_letter_map(alphabet, alphabet, &map)
    }

    /// `σ^m`: reads the letter `m` places to the right of the centre.
    pub fn shift(lang: &impl ShiftLanguage, m: isize) -> Result<Self> {
        let k = m.unsigned_abs();
        let (left, right) = if m >= 0 { (0, k) } else { (k, 0) };
        let alphabet = lang.alphabet();
        let mut rule = LocalRule::new(left, right, alphabet.clone(), alphabet.clone());
        let at = if m >= 0 { k } else { 0 };
        for w in lang.words(k + 1)? {
            let v = w[at];
            rule.table.insert(w, v);
        }
        Ok(rule)
    }

    /// Output on one window of width `left + right + 1`.
    pub fn eval(&self, window: &[Letter]) -> Option<Letter> {
        debug_assert_eq!(window.len(), self.width());
        self.table
            .get(window)
            .or_else(|| self.by_center.get(&window[self.left]))
            .copied()
    }

    /// Image of a word; `left + right` letters shorter.
    pub fn apply(&self, word: &[Letter]) -> Option<Word> {
        if word.len() < self.width() {
            return Some(Vec::new());
        }
        word.windows(self.width()).map(|w| self.eval(w)).collect()
    }

    /// Legal windows without an output.
    pub fn missing(&self, lang: &impl ShiftLanguage) -> Result<Vec<Word>> {
        Ok(lang
            .words(self.width())?
            .into_iter()
            .filter(|w| self.eval(w).is_none())
            .collect())
    }

    pub fn check_total(&self, lang: &impl ShiftLanguage) -> Result<()> {
        let missing = self.missing(lang)?.len();
        if missing > 0 {
            return Err(Error::RuleNotTotal { missing });
        }
        Ok(())
    }

    /// The same rule as an explicit table over the legal windows.
    pub fn materialize(&self, lang: &impl ShiftLanguage) -> Result<LocalRule> {
        let mut out = LocalRule::new(self.left, self.right, self.source.clone(), self.target.clone());
        for w in lang.words(self.width())? {
            let v = self.eval(&w).ok_or(Error::RuleNotTotal { missing: 1 })?;
            out.table.insert(w, v);
        }
        Ok(out)
    }

    /// The same map read on wider windows.
    pub fn widen(&self, left: usize, right: usize, lang: &impl ShiftLanguage) -> Result<LocalRule> {
        if left < self.left || right < self.right {
            return Err(Error::pre("cannot widen to smaller radii"));
        }
        let mut out = LocalRule::new(left, right, self.source.clone(), self.target.clone());
        let lo = left - self.left;
        for w in lang.words(left + right + 1)? {
            let v = self
                .eval(&w[lo..lo + self.width()])
                .ok_or(Error::RuleNotTotal { missing: 1 })?;
            out.table.insert(w, v);
        }
        Ok(out)
    }

    /// `outer ∘ inner`, where `outer` reads the language produced by `inner`.
    pub fn then(&self, outer: &LocalRule, lang: &impl ShiftLanguage) -> Result<LocalRule> {
        let left = self.left + outer.left;
        let right = self.right + outer.right;
        let mut out = LocalRule::new(left, right, self.source.clone(), outer.target.clone());
        for w in lang.words(left + right + 1)? {
            let mid = self.apply(&w).ok_or(Error::RuleNotTotal { missing: 1 })?;
            let v = outer
                .eval(&mid)
                .ok_or_else(|| Error::Verification("composed rule leaves the language".into()))?;
            out.table.insert(w, v);
        }
        Ok(out)
    }

    /// `Φ^k` for a rule from the shift to itself.
    pub fn pow(&self, k: usize, lang: &impl ShiftLanguage) -> Result<LocalRule> {
        let mut acc = LocalRule::identity(&self.source);
        for _ in 0..k {
            acc = acc.then(self, lang)?;
        }
        Ok(acc)
    }

    /// Drops outer window letters the output does not depend on.
    pub fn trim(&self, lang: &impl ShiftLanguage) -> Result<LocalRule> {
        let mut rule = self.materialize(lang)?;
        loop {
            if rule.left > 0 {
                if let Some(t) = drop_side(&rule, true) {
                    rule = t;
                    continue;
                }
            }
            if rule.right > 0 {
                if let Some(t) = drop_side(&rule, false) {
                    rule = t;
                    continue;
                }
            }
            return Ok(rule);
        }
    }

    /// Same sliding block code on the shift.
    pub fn equivalent(&self, other: &LocalRule, lang: &impl ShiftLanguage) -> Result<bool> {
        let left = self.left.max(other.left);
        let right = self.right.max(other.right);
        Ok(self.widen(left, right, lang)?.table == other.widen(left, right, lang)?.table)
    }

    /// Radius-0 letter map, when the rule has one.
    pub fn letter_map(&self, lang: &impl ShiftLanguage) -> Result<Option<LetterMap>> {
        let t = self.trim(lang)?;
        if t.width() != 1 {
            return Ok(None);
        }
        Ok(Some(self.source.letters().map(|a| t.table[&vec![a]]).collect()))
    }
}

fn drop_side(rule: &LocalRule, left: bool) -> Option<LocalRule> {
    let (l, r) = if left {
        (rule.left - 1, rule.right)
    } else {
        (rule.left, rule.right - 1)
    };
    let mut out = LocalRule::new(l, r, rule.source.clone(), rule.target.clone());
    for (w, &v) in &rule.table {
        let key = if left { w[1..].to_vec() } else { w[..w.len() - 1].to_vec() };
        if *out.table.entry(key).or_insert(v) != v {
            return None;
        }
    }
    Some(out)
}

// ---------------------------------------------------------------- text format

impl LocalRule {
    /// Parses a rule table:
    ///
    /// ```text
    /// radius 1 0
    /// center y => x
    ///     a b c
    /// a   z y x
    /// b   y . z
    /// ```
    ///
    /// The first row lists the last window letter, each later row starts
    /// with the rest of the window; `.` marks a window outside the
    /// language. `center` lines give outputs that only depend on the centre
    /// letter. The source alphabet must have one-character letters. Without
    /// a target alphabet the outputs form one, in sorted order.
    pub fn parse(text: &str, source: &Alphabet, target: Option<&Alphabet>) -> Result<LocalRule> {
        if !source.is_compact() {
            return Err(Error::pre("rule tables need one-character letter names"));
        }
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
            .filter(|(_, l)| !l.trim().is_empty());
        let (ln, head) = lines.next().ok_or_else(|| Error::parse(1, 1, "empty rule file"))?;
        let radii: Vec<_> = tokens(head).collect();
        if radii.len() != 3 || radii[0].1 != "radius" {
            return Err(Error::parse(ln, 1, "expected `radius LEFT RIGHT`"));
        }
        let num = |(col, t): (usize, &str)| {
            t.parse::<usize>()
                .map_err(|_| Error::parse(ln, col + 1, format!("bad radius {t:?}")))
        };
        let (left, right) = (num(radii[1])?, num(radii[2])?);
        let width = left + right + 1;

        let mut outputs: Vec<(usize, usize, String)> = Vec::new();
        let mut centers: Vec<(Letter, usize, usize, String)> = Vec::new();
        let mut cells: Vec<(Word, usize, usize, String)> = Vec::new();
        let mut columns: Option<Vec<Letter>> = None;
        for (ln, line) in lines {
            let toks: Vec<_> = tokens(line).collect();
            if toks[0].1 == "center" {
                if toks.len() != 4 || toks[2].1 != "=>" {
                    return Err(Error::parse(ln, 1, "expected `center LETTER => OUTPUT`"));
                }
                let a = source
                    .letter(toks[1].1)
                    .ok_or_else(|| Error::parse(ln, toks[1].0 + 1, "unknown letter"))?;
                centers.push((a, ln, toks[3].0 + 1, toks[3].1.to_string()));
                continue;
            }
            let Some(cols) = &columns else {
                columns = Some(
                    toks.iter()
                        .map(|&(c, t)| {
                            source
                                .letter(t)
                                .ok_or_else(|| Error::parse(ln, c + 1, format!("unknown letter {t:?}")))
                        })
                        .collect::<Result<_>>()?,
                );
                continue;
            };
            let (c0, label) = toks[0];
            let prefix = if label == "_" {
                Vec::new()
            } else {
                source.parse_word_at(label, ln, c0 + 1)?
            };
            if prefix.len() + 1 != width {
                return Err(Error::parse(
                    ln,
                    c0 + 1,
                    format!("row label has length {}, expected {}", prefix.len(), width - 1),
                ));
            }
            if toks.len() != cols.len() + 1 {
                return Err(Error::parse(ln, 1, format!("expected {} cells", cols.len())));
            }
            for (&(c, t), &last) in toks[1..].iter().zip(cols) {
                if t == "." {
                    continue;
                }
                let mut w = prefix.clone();
                w.push(last);
                cells.push((w, ln, c + 1, t.to_string()));
            }
        }
        outputs.extend(centers.iter().map(|(_, l, c, t)| (*l, *c, t.clone())));
        outputs.extend(cells.iter().map(|(_, l, c, t)| (*l, *c, t.clone())));
        let target = match target {
            Some(t) => t.clone(),
            None => {
                let mut names: Vec<&str> = outputs.iter().map(|o| o.2.as_str()).collect();
                names.sort_unstable();
                names.dedup();
                Alphabet::new(names)?
            }
        };
        let out_letter = |ln: usize, c: usize, t: &str| {
            target
                .letter(t)
                .ok_or_else(|| Error::parse(ln, c, format!("unknown output letter {t:?}")))
        };
        let mut rule = LocalRule::new(left, right, source.clone(), target.clone());
        for (a, ln, c, t) in centers {
            rule.by_center.insert(a, out_letter(ln, c, &t)?);
        }
        for (w, ln, c, t) in cells {
            let v = out_letter(ln, c, &t)?;
            if rule.table.insert(w, v).is_some() {
                return Err(Error::parse(ln, c, "window listed twice"));
            }
        }
        Ok(rule)
    }
}

impl fmt::Display for LocalRule {
    /// Writes the table format read by [`LocalRule::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "radius {} {}", self.left, self.right)?;
        for (&a, &v) in &self.by_center {
            writeln!(f, "center {} => {}", self.source.name(a), self.target.name(v))?;
        }
        if self.table.is_empty() {
            return Ok(());
        }
        let mut rows: Vec<&[Letter]> = self.table.keys().map(|w| &w[..w.len() - 1]).collect();
        rows.dedup();
        let label_width = (self.width() - 1).max(1);
        let cell_width = self.target.names().iter().map(String::len).max().unwrap_or(1);
        write!(f, "{:label_width$}", "")?;
        for a in self.source.letters() {
            write!(f, " {:>cell_width$}", self.source.name(a))?;
        }
        writeln!(f)?;
        for row in rows {
            let label = if row.is_empty() {
                "_".to_string()
            } else {
                self.source.render(row)
            };
            write!(f, "{label:label_width$}")?;
            for a in self.source.letters() {
                let mut w = row.to_vec();
                w.push(a);
                let cell = self.table.get(&w).map_or(".", |&v| self.target.name(v));
                write!(f, " {cell:>cell_width$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LocalRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LocalRule(")?;
        fmt::Display::fmt(self, f)?;
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(letters: &str, imgs: &[&str]) -> Substitution {
        Substitution::from_images(letters, imgs).unwrap()
    }

    const TABLE2: &str = "radius 1 0\n  a b c\na z y x\nb y x z\nc x z y\n";

    #[test]
    fn parse_and_print() {
        let t = sub("abc", &["abb", "bac", "cca"]);
        let rule = LocalRule::parse(TABLE2, t.alphabet(), None).unwrap();
        assert_eq!(rule.target.names(), &["x", "y", "z"]);
        assert_eq!(rule.table.len(), 9);
        let again = LocalRule::parse(&rule.to_string(), t.alphabet(), Some(&rule.target)).unwrap();
        assert_eq!(again, rule);
        // a is the row, b the column
        assert_eq!(rule.eval(&[0, 1]), Some(1));
    }

    #[test]
    fn parse_errors_have_positions() {
        let t = sub("abc", &["abb", "bac", "cca"]);
        let err = LocalRule::parse("radius 1 0\n  a b c\na z y q\n", t.alphabet(), Some(&Alphabet::from_chars("xyz").unwrap()))
            .unwrap_err();
        assert_eq!(err, Error::parse(3, 7, "unknown output letter \"q\""));
        let err = LocalRule::parse("radius 1 0\n  a b c\nab z y x\n", t.alphabet(), None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, column: 1, .. }));
        assert!(LocalRule::parse("radius one 0\n", t.alphabet(), None).is_err());
    }

    #[test]
    fn center_lines() {
        let t = sub("ab", &["ab", "ba"]);
        let rule = LocalRule::parse("radius 1 1\ncenter b => a\n   a b\naa  . b\n", t.alphabet(), None).unwrap();
        assert_eq!(rule.eval(&[0, 1, 1]), Some(0));
        assert_eq!(rule.eval(&[0, 0, 1]), Some(1));
        assert_eq!(rule.eval(&[1, 0, 1]), None);
        assert!(rule.check_total(&t).is_err());
    }

    #[test]
    fn shifts_compose_and_trim() {
        let t = sub("abc", &["aac", "bca", "bba"]);
        let s = LocalRule::shift(&t, 1).unwrap();
        let back = LocalRule::shift(&t, -1).unwrap();
        let id = s.then(&back, &t).unwrap().trim(&t).unwrap();
        assert_eq!(id.width(), 1);
        assert!(id.equivalent(&LocalRule::identity(t.alphabet()), &t).unwrap());
        let s3 = s.pow(3, &t).unwrap();
        assert_eq!((s3.left, s3.right), (0, 3));
        for w in t.words(7).unwrap() {
            assert_eq!(s3.apply(&w).unwrap(), w[3..].to_vec());
        }
        assert_eq!(s3.trim(&t).unwrap().width(), 4);
    }

    #[test]
    fn letter_maps() {
        let t = sub("ab", &["ab", "ba"]);
        let swap = LocalRule::from_letter_map(t.alphabet(), t.alphabet(), &[1, 0]);
        let wide = swap.widen(1, 1, &t).unwrap();
        assert_eq!(wide.letter_map(&t).unwrap(), Some(vec![1, 0]));
        assert_eq!(LocalRule::shift(&t, 1).unwrap().letter_map(&t).unwrap(), None);
    }

    #[test]
    fn json_round_trip() {
        let t = sub("abc", &["abb", "bac", "cca"]);
        let mut rule = LocalRule::parse(TABLE2, t.alphabet(), None).unwrap();
        rule.by_center.insert(2, 0);
        let text = serde_json::to_string(&rule).unwrap();
        assert_eq!(serde_json::from_str::<LocalRule>(&text).unwrap(), rule);
    }
}
