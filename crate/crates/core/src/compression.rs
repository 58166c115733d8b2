//! Block rewritings of a substitution: `k`-compressions, twists by letter
//! automorphisms, constant suspensions and the pure base.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::alphabet::{compose, is_permutation, Alphabet, Letter, LetterMap, Word};
use crate::error::{Error, Result};
use crate::fixed_points::{fixed_point_prefix, height, right_seeds};
use crate::language::{two_words, LanguageTable};
use crate::substitution::{block_name, checked_pow, Substitution};

/// A substitution on blocks of length `k` together with the block words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Compression {
    pub k: usize,
    pub theta: Substitution,
    /// `blocks[b]` is the word of the original alphabet behind block letter `b`.
    pub blocks: Vec<Word>,
}

impl Compression {
    /// Concatenates the blocks behind a block word.
    pub fn decompress(&self, word: &[Letter]) -> Word {
        word.iter().flat_map(|&b| self.blocks[b].iter().copied()).collect()
    }

    pub fn block_letter(&self, block: &[Letter]) -> Option<Letter> {
        self.blocks.iter().position(|b| b == block)
    }
}

/// The `k`-compression. Blocks are the length-`k` words at positions
/// divisible by `k` in the periodic points grown from the first right seed;
/// they are found as the closure of the initial blocks under the
/// compressed substitution. Block letters are named by their words and
/// sorted.
pub fn compress(theta: &Substitution, k: usize) -> Result<Compression> {
    if k == 0 {
        return Err(Error::pre("block length must be positive"));
    }
    let first = theta.column(0);
    let s = right_seeds(theta)[0];
    let mut seeds = vec![s];
    let mut x = first[s];
    while x != s {
        seeds.push(x);
        x = first[x];
    }
    let mut found: BTreeMap<Word, ()> = BTreeMap::new();
    let mut frontier = Vec::new();
    for &seed in &seeds {
        let b = fixed_point_prefix(theta, seed, k)?;
        if found.insert(b.clone(), ()).is_none() {
            frontier.push(b);
        }
    }
    while let Some(b) = frontier.pop() {
        let img = theta.apply(&b);
        for piece in img.chunks(k) {
            if found.insert(piece.to_vec(), ()).is_none() {
                frontier.push(piece.to_vec());
            }
        }
    }
    let blocks: Vec<Word> = found.into_keys().collect();
    let index: BTreeMap<&Word, Letter> = blocks.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let names: Vec<String> = blocks.iter().map(|b| block_name(theta.alphabet(), b)).collect();
    let alphabet = Alphabet::new(names)?;
    let images = blocks
        .iter()
        .map(|b| {
            theta
                .apply(b)
                .chunks(k)
                .map(|piece| index[&piece.to_vec()])
                .collect()
        })
        .collect();
    Ok(Compression {
        k,
        theta: Substitution::new(alphabet, images)?,
        blocks,
    })
}

/// The pure base of a substitution of height at least 2: its compression
/// by the height.
pub fn pure_base(theta: &Substitution) -> Result<Compression> {
    let h = height(theta)?;
    if h < 2 {
        return Err(Error::Height(h, "at least 2".into()));
    }
    compress(theta, h)
}

/// Smallest `n ≤ max_n` with `τ∘θ^n = θ^n∘τ` letterwise, provided `τ` also
/// keeps two-letter words legal. Together these make `τ` a radius-0
/// automorphism: every legal word sits inside some `θ^{nm}(bc)`.
pub fn language_automorphism_exponent(
    theta: &Substitution,
    tau: &[Letter],
    max_n: usize,
) -> Result<Option<usize>> {
    if tau.len() != theta.size() || !is_permutation(tau) {
        return Err(Error::pre("expected a permutation of the alphabet"));
    }
    let l2 = two_words(theta)?;
    if l2.iter().any(|w| !l2.contains(&vec![tau[w[0]], tau[w[1]]])) {
        return Ok(None);
    }
    for n in 1..=max_n {
        match checked_pow(theta.length(), n) {
            Some(len) if len <= 1 << 20 => {}
            _ => break,
        }
        let ok = theta.alphabet().letters().all(|a| {
            let lhs: Word = theta.iterate(&[a], n).iter().map(|&b| tau[b]).collect();
            lhs == theta.iterate(&[tau[a]], n)
        });
        if ok {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Letterwise image of every legal word up to `window` stays legal.
pub fn preserves_language(theta: &Substitution, tau: &[Letter], window: usize) -> Result<bool> {
    let table = LanguageTable::new(theta, window)?;
    Ok(table
        .words(window)
        .iter()
        .all(|w| table.contains(&w.iter().map(|&a| tau[a]).collect::<Word>())))
}

/// `θ_τ(α)_j = τ^j(θ(α)_j)`. `τ` must satisfy `τ^r = τ` and be a
/// radius-0 automorphism (certified by commutation with a power of `θ`).
pub fn twist(theta: &Substitution, tau: &[Letter]) -> Result<Substitution> {
    let n = theta.size();
    if tau.len() != n || !is_permutation(tau) {
        return Err(Error::pre("twist needs a permutation of the alphabet"));
    }
    let r = theta.length();
    let mut powers: Vec<LetterMap> = vec![(0..n).collect()];
    for j in 1..=r {
        powers.push(compose(tau, &powers[j - 1]));
    }
    if powers[r] != tau {
        return Err(Error::pre("twist needs τ^r = τ"));
    }
    if language_automorphism_exponent(theta, tau, 8)?.is_none() {
        return Err(Error::pre("τ is not a certified radius-0 automorphism"));
    }
    let images = theta
        .images()
        .iter()
        .map(|img| img.iter().enumerate().map(|(j, &b)| powers[j][b]).collect())
        .collect();
    Substitution::new(theta.alphabet().clone(), images)
}

/// The suspension of `base` with constant height `h`: letter `(a, i)`
/// stands for the `i`-th letter of the `h`-block `a0 a1 … a(h−1)`, and
/// the images are the `h` consecutive pieces of length `r` of the
/// expanded `base(a)`.
pub fn constant_suspension(base: &Substitution, h: usize) -> Result<Substitution> {
    if h == 0 {
        return Err(Error::pre("height must be positive"));
    }
    let r = base.length();
    let names: Vec<String> = base
        .alphabet()
        .letters()
        .flat_map(|a| (0..h).map(move |i| (a, i)))
        .map(|(a, i)| format!("{}{}", base.alphabet().name(a), i))
        .collect();
    let alphabet = Alphabet::new(names)?;
    let mut images = Vec::new();
    for a in base.alphabet().letters() {
        let expanded: Word = base
            .image(a)
            .iter()
            .flat_map(|&b| (0..h).map(move |i| b * h + i))
            .collect();
        for piece in expanded.chunks(r) {
            images.push(piece.to_vec());
        }
    }
    Substitution::new(alphabet, images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::language::language;

    fn sub(letters: &str, imgs: &[&str]) -> Substitution {
        Substitution::from_images(letters, imgs).unwrap()
    }

    #[test]
    fn thue_morse_two_blocks() {
        let tm = sub("ab", &["ab", "ba"]);
        let c = compress(&tm, 2).unwrap();
        assert_eq!(c.theta.alphabet().names(), &["ab", "ba"]);
        // oracle: even-position blocks of a long prefix
        let u = fixed_point_prefix(&tm, 0, 64).unwrap();
        let mut seen: Vec<Word> = u.chunks(2).map(<[_]>::to_vec).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen, c.blocks);
        assert_eq!(compress(&tm, 1).unwrap().theta.images(), tm.images());
    }

    #[test]
    fn decompression_is_sound() {
        let t = sub("abc", &["abb", "bac", "cca"]);
        let c = compress(&t, 2).unwrap();
        assert_eq!(c.theta.size(), 9);
        for len in 1..=4 {
            let big = language(&t, 2 * len).unwrap();
            for w in language(&c.theta, len).unwrap() {
                assert!(big.contains(&c.decompress(&w)));
            }
        }
    }

    #[test]
    fn twist_round_trip() {
        let t = sub("ab", &["ab", "ba"]);
        assert_eq!(twist(&t, &[0, 1]).unwrap(), t);
        // (ab) commutes with Thue–Morse; r=2 needs τ² = τ which fails
        assert!(twist(&t, &[1, 0]).is_err());
        let t3 = sub("ab", &["abb", "baa"]);
        let once = twist(&t3, &[1, 0]).unwrap();
        assert_eq!(once.alphabet().render(once.image(0)), "aab");
        assert_eq!(twist(&once, &[1, 0]).unwrap(), t3);
    }

    #[test]
    fn suspension_and_pure_base() {
        let base = sub("ab", &["abb", "baa"]);
        let s = constant_suspension(&base, 2).unwrap();
        assert_eq!(s.size(), 4);
        assert_eq!(height(&s).unwrap(), 2);
        let pb = pure_base(&s).unwrap();
        assert_eq!(pb.theta.size(), 2);
        assert_eq!(height(&pb.theta).unwrap(), 1);
        // block alphabet: the distinct 0-mod-2 blocks of the fixed point
        let u = fixed_point_prefix(&s, right_seeds(&s)[0], 200).unwrap();
        let mut seen: Vec<Word> = u.chunks(2).map(<[_]>::to_vec).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen, pb.blocks);
        // pure base has the complexity of the base
        for len in 1..=6 {
            assert_eq!(
                language(&pb.theta, len).unwrap().len(),
                language(&base, len).unwrap().len()
            );
        }
        assert_eq!(pure_base(&base).unwrap_err(), Error::Height(1, "at least 2".into()));
    }
}
