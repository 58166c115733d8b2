//! Constant-length substitutions and letter codings.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::alphabet::{tokens, Alphabet, Letter, LetterMap, Word};
use crate::error::{Error, Result};

/// Largest image length we are willing to materialise when taking powers.
pub const MAX_IMAGE_LEN: usize = 1 << 22;

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize, schemars::JsonSchema)]
pub struct Substitution {
    alphabet: Alphabet,
    length: usize,
    images: Vec<Word>,
}

impl Substitution {
    pub fn new(alphabet: Alphabet, images: Vec<Word>) -> Result<Self> {
        if images.len() != alphabet.len() {
            return Err(Error::InvalidSubstitution(format!(
                "{} images for {} letters",
                images.len(),
                alphabet.len()
            )));
        }
        let length = images[0].len();
        if length < 2 {
            return Err(Error::InvalidSubstitution("length must be at least 2".into()));
        }
        for (a, img) in images.iter().enumerate() {
            if img.len() != length {
                return Err(Error::InvalidSubstitution(format!(
                    "image of {} has length {}, expected {length}",
                    alphabet.name(a),
                    img.len()
                )));
            }
            if let Some(&bad) = img.iter().find(|&&b| b >= alphabet.len()) {
                return Err(Error::UnknownLetter(bad));
            }
        }
        Ok(Substitution {
            alphabet,
            length,
            images,
        })
    }

    /// Builds a substitution over single-character letters from image
    /// strings, one per letter in alphabet order: `from_images("ab", &["ab", "ba"])`.
    pub fn from_images(letters: &str, images: &[&str]) -> Result<Self> {
        let alphabet = Alphabet::from_chars(letters)?;
        let words = images
            .iter()
            .map(|s| alphabet.parse_word(s))
            .collect::<Result<Vec<_>>>()?;
        Substitution::new(alphabet, words)
    }

    /// Parses `a -> aac` lines. The alphabet is ordered by rule heads.
    pub fn parse(text: &str) -> Result<Self> {
        let mut heads: Vec<(usize, String, usize, &str)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = strip_comment(raw);
            if line.trim().is_empty() {
                continue;
            }
            let Some(arrow) = line.find("->") else {
                return Err(Error::parse(i + 1, 1, "expected `letter -> image`"));
            };
            let head = line[..arrow].trim();
            if head.is_empty() || head.split_whitespace().count() != 1 {
                return Err(Error::parse(i + 1, 1, "rule head must be a single letter"));
            }
            heads.push((i + 1, head.to_string(), arrow + 2, &line[arrow + 2..]));
        }
        if heads.is_empty() {
            return Err(Error::parse(1, 1, "no rules found"));
        }
        let mut seen = BTreeMap::new();
        for (line, head, _, _) in &heads {
            if let Some(first) = seen.insert(head.clone(), *line) {
                return Err(Error::parse(
                    *line,
                    1,
                    format!("letter {head:?} already has a rule on line {first}"),
                ));
            }
        }
        let alphabet = Alphabet::new(heads.iter().map(|h| h.1.clone()))
            .map_err(|e| Error::parse(heads[0].0, 1, e.to_string()))?;
        let mut images = Vec::with_capacity(heads.len());
        for (line, _, col, body) in &heads {
            let word = alphabet.parse_word_at(body, *line, col + 1)?;
            if word.is_empty() {
                return Err(Error::parse(*line, col + 1, "empty image"));
            }
            if let Some(first) = images.first() {
                let first: &Word = first;
                if word.len() != first.len() {
                    return Err(Error::parse(
                        *line,
                        col + 1,
                        format!("image has length {}, expected {}", word.len(), first.len()),
                    ));
                }
            }
            images.push(word);
        }
        if images[0].len() < 2 {
            return Err(Error::parse(heads[0].0, heads[0].2 + 1, "length must be at least 2"));
        }
        Substitution::new(alphabet, images)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// The common image length `r`.
    pub fn length(&self) -> usize {
        self.length
    }

    /// Number of letters.
    pub fn size(&self) -> usize {
        self.alphabet.len()
    }

    pub fn image(&self, a: Letter) -> &[Letter] {
        &self.images[a]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// The column map `θ_j`, sending `a` to the `j`-th letter of `θ(a)`.
    pub fn column(&self, j: usize) -> LetterMap {
        self.images.iter().map(|img| img[j]).collect()
    }

    #[inline]
    pub fn col(&self, j: usize, a: Letter) -> Letter {
        self.images[a][j]
    }

    pub fn apply(&self, word: &[Letter]) -> Word {
        let mut out = Vec::with_capacity(word.len() * self.length);
        for &a in word {
            out.extend_from_slice(&self.images[a]);
        }
        out
    }

    pub fn iterate(&self, word: &[Letter], n: usize) -> Word {
        let mut w = word.to_vec();
        for _ in 0..n {
            w = self.apply(&w);
        }
        w
    }

    /// `θ^n` as a substitution of length `r^n`.
    pub fn power(&self, n: usize) -> Result<Substitution> {
        if n == 0 {
            return Err(Error::pre("power exponent must be positive"));
        }
        let len = checked_pow(self.length, n)
            .filter(|&l| l <= MAX_IMAGE_LEN)
            .ok_or_else(|| Error::BoundExceeded(format!("image length {}^{n}", self.length)))?;
        let images = self.alphabet.letters().map(|a| self.iterate(&[a], n)).collect();
        Ok(Substitution {
            alphabet: self.alphabet.clone(),
            length: len,
            images,
        })
    }

    /// The map `a ↦ θ^n(a)_j` where the digits of `j` in base `r` are given
    /// most significant first.
    pub fn column_map(&self, digits_msb_first: &[usize]) -> Result<LetterMap> {
        let mut map: LetterMap = self.alphabet.letters().collect();
        for &d in digits_msb_first {
            if d >= self.length {
                return Err(Error::DigitOutOfRange {
                    digit: d,
                    length: self.length,
                });
            }
            for x in map.iter_mut() {
                *x = self.images[*x][d];
            }
        }
        Ok(map)
    }

    /// Digits of `j < r^n` in base `r`, most significant first.
    pub fn digits(&self, mut j: usize, n: usize) -> Vec<usize> {
        let mut d = vec![0; n];
        for slot in d.iter_mut().rev() {
            *slot = j % self.length;
            j /= self.length;
        }
        d
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.images.iter().all(|img| seen.insert(img))
    }

    pub fn is_bijective(&self) -> bool {
        (0..self.length).all(|j| crate::alphabet::is_permutation(&self.column(j)))
    }

    /// Quotient by a partition of the letters. `class_of[a]` is the class
    /// index of `a`; classes must be compatible with every column.
    pub fn quotient(&self, class_of: &[usize]) -> Result<(Substitution, LetterCoding)> {
        let n = class_of.iter().max().map_or(0, |m| m + 1);
        let mut members = vec![Vec::new(); n];
        for (a, &k) in class_of.iter().enumerate() {
            members[k].push(a);
        }
        if members.iter().any(Vec::is_empty) {
            return Err(Error::pre("class indices must be contiguous"));
        }
        let names: Vec<String> = members
            .iter()
            .map(|m| class_name(&self.alphabet, m))
            .collect();
        let alphabet = Alphabet::new(names)?;
        let mut images = Vec::with_capacity(n);
        for m in &members {
            let img: Word = self.images[m[0]].iter().map(|&b| class_of[b]).collect();
            for &a in &m[1..] {
                let other: Word = self.images[a].iter().map(|&b| class_of[b]).collect();
                if other != img {
                    return Err(Error::pre(format!(
                        "partition is not compatible with the substitution at {}",
                        self.alphabet.name(a)
                    )));
                }
            }
            images.push(img);
        }
        let quotient = Substitution {
            alphabet: alphabet.clone(),
            length: self.length,
            images,
        };
        let coding = LetterCoding {
            source: self.alphabet.clone(),
            target: alphabet,
            map: class_of.to_vec(),
        };
        Ok((quotient, coding))
    }

    /// Merges letters with identical images until the substitution is
    /// injective. Returns the quotient and the merging coding.
    pub fn injectivize(&self) -> Result<(Substitution, LetterCoding)> {
        let mut class_of: Vec<usize> = self.alphabet.letters().collect();
        loop {
            let mut index: BTreeMap<Word, usize> = BTreeMap::new();
            let mut next = vec![0; self.size()];
            for a in self.alphabet.letters() {
                let img: Word = self.images[a].iter().map(|&b| class_of[b]).collect();
                let len = index.len();
                next[a] = *index.entry(img).or_insert(len);
            }
            // Classes only ever merge, so an unchanged count means a fixpoint.
            let before = class_of.iter().max().unwrap() + 1;
            let after = index.len();
            class_of = canonical_classes(&next);
            if after == before {
                break;
            }
        }
        if class_of.iter().all(|&k| k == 0) {
            return Err(Error::FiniteShift);
        }
        self.quotient(&class_of)
    }

    /// Renames letters so that the result uses `alphabet`, via `map[a]`.
    pub fn relabel(&self, alphabet: Alphabet, map: &[Letter]) -> Result<Substitution> {
        if !crate::alphabet::is_permutation(map) || map.len() != self.size() {
            return Err(Error::pre("relabelling must be a bijection"));
        }
        let mut images = vec![Vec::new(); self.size()];
        for a in self.alphabet.letters() {
            images[map[a]] = self.images[a].iter().map(|&b| map[b]).collect();
        }
        Substitution::new(alphabet, images)
    }
}

/// Renumbers classes in order of first appearance so that equal partitions
/// have equal vectors.
pub fn canonical_classes(class_of: &[usize]) -> Vec<usize> {
    let mut rename = BTreeMap::new();
    class_of
        .iter()
        .map(|&k| {
            let n = rename.len();
            *rename.entry(k).or_insert(n)
        })
        .collect()
}

/// Letter name for a merged class: the member itself when alone,
/// otherwise `{a,c}`.
pub fn class_name(alphabet: &Alphabet, members: &[Letter]) -> String {
    if members.len() == 1 {
        alphabet.name(members[0]).to_string()
    } else {
        alphabet.render_set(members)
    }
}

/// Letter name for a block of letters: plain concatenation over compact
/// alphabets, otherwise `[x,y]`.
pub fn block_name(alphabet: &Alphabet, block: &[Letter]) -> String {
    if alphabet.is_compact() {
        alphabet.render(block)
    } else {
        let names: Vec<&str> = block.iter().map(|&l| alphabet.name(l)).collect();
        format!("[{}]", names.join(","))
    }
}

pub(crate) fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in self.alphabet.letters() {
            writeln!(
                f,
                "{} -> {}",
                self.alphabet.name(a),
                self.alphabet.render(&self.images[a])
            )?;
        }
        Ok(())
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rules: Vec<String> = self
            .alphabet
            .letters()
            .map(|a| format!("{}->{}", self.alphabet.name(a), self.alphabet.render(&self.images[a])))
            .collect();
        write!(f, "[{}]", rules.join(", "))
    }
}

/// A letter-to-letter map between alphabets, presenting a factor of a
/// substitution shift.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize, schemars::JsonSchema)]
pub struct LetterCoding {
    pub source: Alphabet,
    pub target: Alphabet,
    pub map: Vec<Letter>,
}

impl LetterCoding {
    pub fn new(source: Alphabet, target: Alphabet, map: Vec<Letter>) -> Result<Self> {
        if map.len() != source.len() {
            return Err(Error::pre("coding must be total on the source alphabet"));
        }
        let mut hit = vec![false; target.len()];
        for &b in &map {
            if b >= target.len() {
                return Err(Error::UnknownLetter(b));
            }
            hit[b] = true;
        }
        if hit.iter().any(|h| !h) {
            return Err(Error::pre("coding must be onto the target alphabet"));
        }
        Ok(LetterCoding { source, target, map })
    }

    pub fn identity(alphabet: &Alphabet) -> Self {
        LetterCoding {
            source: alphabet.clone(),
            target: alphabet.clone(),
            map: alphabet.letters().collect(),
        }
    }

    /// Parses `a => x` lines against a known source alphabet. Target letters
    /// are ordered by first appearance.
    pub fn parse(text: &str, source: &Alphabet) -> Result<Self> {
        let mut map: Vec<Option<Letter>> = vec![None; source.len()];
        let mut targets: Vec<String> = Vec::new();
        let mut last_line = 0;
        for (i, raw) in text.lines().enumerate() {
            last_line = i + 1;
            let line = strip_comment(raw);
            if line.trim().is_empty() {
                continue;
            }
            let Some(arrow) = line.find("=>") else {
                return Err(Error::parse(i + 1, 1, "expected `letter => letter`"));
            };
            let lhs: Vec<_> = tokens(&line[..arrow]).collect();
            let rhs: Vec<_> = tokens(&line[arrow + 2..]).collect();
            if lhs.len() != 1 {
                return Err(Error::parse(i + 1, 1, "expected one source letter"));
            }
            if rhs.len() != 1 {
                return Err(Error::parse(i + 1, arrow + 3, "expected one target letter"));
            }
            let (col, name) = lhs[0];
            let a = source
                .letter(name)
                .ok_or_else(|| Error::parse(i + 1, col + 1, format!("unknown letter {name:?}")))?;
            if map[a].is_some() {
                return Err(Error::parse(i + 1, col + 1, format!("letter {name:?} mapped twice")));
            }
            let target = rhs[0].1;
            if target.contains('{') || target.contains('}') {
                return Err(Error::parse(i + 1, arrow + 3 + rhs[0].0, "braces are reserved"));
            }
            let t = match targets.iter().position(|n| n == target) {
                Some(t) => t,
                None => {
                    targets.push(target.to_string());
                    targets.len() - 1
                }
            };
            map[a] = Some(t);
        }
        if let Some(a) = map.iter().position(Option::is_none) {
            return Err(Error::parse(
                last_line + 1,
                1,
                format!("no image for letter {:?}", source.name(a)),
            ));
        }
        let target = Alphabet::new(targets)?;
        LetterCoding::new(source.clone(), target, map.into_iter().map(Option::unwrap).collect())
    }

    pub fn apply(&self, word: &[Letter]) -> Word {
        word.iter().map(|&a| self.map[a]).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.source.len() == self.target.len()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &LetterCoding) -> LetterCoding {
        LetterCoding {
            source: self.source.clone(),
            target: other.target.clone(),
            map: self.map.iter().map(|&b| other.map[b]).collect(),
        }
    }
}

impl fmt::Display for LetterCoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in self.source.letters() {
            writeln!(f, "{} => {}", self.source.name(a), self.target.name(self.map[a]))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LetterCoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .source
            .letters()
            .map(|a| format!("{}=>{}", self.source.name(a), self.target.name(self.map[a])))
            .collect();
        write!(f, "[{}]", pairs.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tm() -> Substitution {
        Substitution::from_images("ab", &["ab", "ba"]).unwrap()
    }

    #[test]
    fn power_by_hand() {
        let t = Substitution::from_images("xy", &["xy", "xx"]).unwrap();
        let t2 = t.power(2).unwrap();
        assert_eq!(t2.alphabet().render(t2.image(0)), "xyxx");
        assert_eq!(t2.alphabet().render(t2.image(1)), "xyxy");
        assert_eq!(t.power(1).unwrap(), t);

        let t = Substitution::from_images("abc", &["abb", "bac", "cca"]).unwrap();
        let t2 = t.power(2).unwrap();
        assert_eq!(t2.length(), 9);
        assert_eq!(t2.alphabet().render(t2.image(0)), "abbbacbac");
    }

    #[test]
    fn column_maps() {
        let t = Substitution::from_images("abc", &["aac", "bca", "bba"]).unwrap();
        assert_eq!(t.column_map(&[0]).unwrap(), vec![0, 1, 1]);
        assert_eq!(t.column_map(&[2]).unwrap(), vec![2, 0, 0]);
        assert_eq!(t.column_map(&[]).unwrap(), vec![0, 1, 2]);
        assert!(matches!(
            t.column_map(&[3]),
            Err(Error::DigitOutOfRange { digit: 3, length: 3 })
        ));
        // against direct expansion
        for n in 1..=3 {
            let p = t.power(n).unwrap();
            for j in 0..p.length() {
                let map = t.column_map(&t.digits(j, n)).unwrap();
                for a in 0..3 {
                    assert_eq!(map[a], p.image(a)[j]);
                }
            }
        }
    }

    #[test]
    fn parse_round_trip() {
        let text = "# comment\na -> aac\n\nb -> bca  # trailing\nc -> bba\n";
        let t = Substitution::parse(text).unwrap();
        assert_eq!(t, Substitution::from_images("abc", &["aac", "bca", "bba"]).unwrap());
        assert_eq!(Substitution::parse(&t.to_string()).unwrap(), t);

        let spaced = Substitution::parse("ab -> ab ba\nba -> ba ab").unwrap();
        assert_eq!(spaced.size(), 2);
        assert_eq!(Substitution::parse(&spaced.to_string()).unwrap(), spaced);
    }

    #[test]
    fn parse_errors_have_positions() {
        let err = Substitution::parse("a -> ab\nb -> bx\n").unwrap_err();
        assert_eq!(err, Error::parse(2, 7, "unknown letter 'x'"));
        let err = Substitution::parse("a -> ab\nb -> b\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = Substitution::parse("a -> a\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = Substitution::parse("a ab\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, column: 1, .. }));
    }

    #[test]
    fn injectivize_cases() {
        let t = Substitution::from_images("abc", &["ac", "ac", "cb"]).unwrap();
        let (q, coding) = t.injectivize().unwrap();
        assert_eq!(q.size(), 2);
        assert_eq!(coding.map, vec![0, 0, 1]);
        assert!(q.is_injective());
        // idempotent
        let (q2, c2) = q.injectivize().unwrap();
        assert_eq!(q2, q);
        assert_eq!(c2.map, vec![0, 1]);

        let t = Substitution::from_images("ab", &["ab", "ab"]).unwrap();
        assert_eq!(t.injectivize().unwrap_err(), Error::FiniteShift);

        let (q, c) = tm().injectivize().unwrap();
        assert_eq!(q, tm());
        assert_eq!(c.map, vec![0, 1]);
    }

    #[test]
    fn coding_parse() {
        let src = Alphabet::from_chars("abcd").unwrap();
        let c = LetterCoding::parse("a => x\nb => y\nc => x\nd => z\n", &src).unwrap();
        assert_eq!(c.map, vec![0, 1, 0, 2]);
        assert_eq!(c.target.names(), &["x", "y", "z"]);
        assert_eq!(LetterCoding::parse(&c.to_string(), &src).unwrap(), c);
        let err = LetterCoding::parse("a => x\nq => y\n", &src).unwrap_err();
        assert_eq!(err, Error::parse(2, 1, "unknown letter \"q\""));
        assert!(LetterCoding::parse("a => x\n", &src).is_err());
    }
}
