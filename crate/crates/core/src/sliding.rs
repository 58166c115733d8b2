//! Sliding block representations `θ^(ℓ,k)`.

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Letter, Word};
use crate::error::{Error, Result};
use crate::language::language;
use crate::substitution::{block_name, Substitution};

/// `θ^(ℓ,k)` on the legal `ℓ`-words. The conjugacy to the original shift
/// is the `ℓ`-block code one way and "first letter" the other way.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlidingBlockRep {
    pub ell: usize,
    pub shift: usize,
    pub theta: Substitution,
    pub blocks: Vec<Word>,
}

impl SlidingBlockRep {
    pub fn new(theta: &Substitution, ell: usize, shift: usize) -> Result<Self> {
        let r = theta.length();
        if ell == 0 {
            return Err(Error::pre("block length must be positive"));
        }
        if shift >= r || shift > (ell - 1) * (r - 1) {
            return Err(Error::pre(format!(
                "shift {shift} out of range for block length {ell}"
            )));
        }
        let blocks: Vec<Word> = language(theta, ell)?.into_iter().collect();
        let names: Vec<String> = blocks.iter().map(|b| block_name(theta.alphabet(), b)).collect();
        let alphabet = Alphabet::new(names)?;
        let index = |w: &[Letter]| blocks.binary_search_by(|b| b.as_slice().cmp(w)).unwrap();
        let images = blocks
            .iter()
            .map(|b| {
                let a = theta.apply(b);
                (0..r).map(|i| index(&a[shift + i..shift + i + ell])).collect()
            })
            .collect();
        let rep = Substitution::new(alphabet, images)?;
        Ok(SlidingBlockRep {
            ell,
            shift,
            theta: rep,
            blocks,
        })
    }

    /// The `ℓ`-block code of a word; the result is `ℓ − 1` letters shorter.
    pub fn encode(&self, word: &[Letter]) -> Option<Word> {
        word.windows(self.ell)
            .map(|w| self.blocks.binary_search_by(|b| b.as_slice().cmp(w)).ok())
            .collect()
    }

    /// The inverse conjugacy: every block letter goes to its first letter.
    pub fn first_letters(&self) -> Vec<Letter> {
        self.blocks.iter().map(|b| b[0]).collect()
    }

    pub fn decode(&self, word: &[Letter]) -> Word {
        word.iter().map(|&b| self.blocks[b][0]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_blocks_by_hand() {
        let t = Substitution::from_images("xy", &["xy", "xx"]).unwrap();
        let rep = SlidingBlockRep::new(&t, 2, 0).unwrap();
        assert_eq!(rep.theta.alphabet().names(), &["xx", "xy", "yx"]);
        // θ(yx) = xxxy → windows at 0 and 1 are xx, xx
        let render = |b: usize| rep.theta.alphabet().render(rep.theta.image(b));
        assert_eq!(render(1), "xy yx");
        assert_eq!(render(0), "xy yx");
        assert_eq!(render(2), "xx xx");
    }

    #[test]
    fn identity_representation() {
        let t = Substitution::from_images("abc", &["aac", "bca", "bba"]).unwrap();
        let rep = SlidingBlockRep::new(&t, 1, 0).unwrap();
        assert_eq!(rep.theta.images(), t.images());
        assert!(SlidingBlockRep::new(&t, 1, 1).is_err());
    }

    #[test]
    fn complexity_preserved() {
        let t = Substitution::from_images("abc", &["abb", "bac", "cca"]).unwrap();
        for (ell, k) in [(2, 0), (2, 1), (3, 2)] {
            let rep = SlidingBlockRep::new(&t, ell, k).unwrap();
            for len in 1..=6 {
                assert_eq!(
                    language(&rep.theta, len).unwrap().len(),
                    language(&t, len + ell - 1).unwrap().len(),
                    "ell={ell} k={k} len={len}"
                );
            }
        }
    }
}
