//! Finite-precision odometer digits by exact de-substitution.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::alphabet::{Letter, Word};
use crate::error::{Error, Result};
use crate::language::language;
use crate::substitution::Substitution;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OdometerDigits {
    pub r: usize,
    /// `x_0, x_1, …` least significant first.
    pub digits: Vec<usize>,
}

impl OdometerDigits {
    pub fn precision(&self) -> usize {
        self.digits.len()
    }

    /// `Σ r^i x_i`.
    pub fn value(&self) -> u128 {
        self.digits
            .iter()
            .rev()
            .fold(0u128, |acc, &d| acc * self.r as u128 + d as u128)
    }

    pub fn modulus(&self) -> u128 {
        (self.r as u128).pow(self.digits.len() as u32)
    }
}

/// For every legal word of length `2R + 1`, the position of its centre
/// inside the `θ`-block that covers it.
#[derive(Clone, Debug)]
pub struct Recognizer {
    pub radius: usize,
    cuts: HashMap<Word, usize>,
    preimage: HashMap<Word, Letter>,
    r: usize,
}

impl Recognizer {
    /// Searches for the smallest radius with a unique cut for every legal
    /// window, up to `cap`.
    pub fn new(theta: &Substitution, cap: usize) -> Result<Self> {
        if !theta.is_injective() {
            return Err(Error::NotInjective);
        }
        let r = theta.length();
        let preimage = theta
            .alphabet()
            .letters()
            .map(|a| (theta.image(a).to_vec(), a))
            .collect();
        for radius in 0..=cap {
            let width = 2 * radius + 1;
            let m = width.div_ceil(r) + 1;
            let mut cuts: HashMap<Word, BTreeSet<usize>> = HashMap::new();
            for y in language(theta, m)? {
                let img = theta.apply(&y);
                for (j, v) in img.windows(width).enumerate() {
                    cuts.entry(v.to_vec()).or_default().insert((j + radius) % r);
                }
            }
            if cuts.values().all(|s| s.len() == 1) {
                return Ok(Recognizer {
                    radius,
                    cuts: cuts
                        .into_iter()
                        .map(|(w, s)| (w, *s.iter().next().unwrap()))
                        .collect(),
                    preimage,
                    r,
                });
            }
        }
        Err(Error::BoundExceeded(format!(
            "no recognizability radius up to {cap}"
        )))
    }

    /// Position of `window[origin]` inside its block.
    pub fn cut(&self, window: &[Letter], origin: usize) -> Result<usize> {
        let rad = self.radius;
        if origin < rad || origin + rad >= window.len() {
            return Err(Error::WindowTooShort(format!(
                "need {rad} letters on each side of the origin"
            )));
        }
        let v = &window[origin - rad..=origin + rad];
        self.cuts
            .get(v)
            .copied()
            .ok_or_else(|| Error::pre("window is not a legal word"))
    }

    /// Removes one level of substitution: returns the preimage word of the
    /// complete blocks inside the window and the new origin.
    pub fn desubstitute(&self, window: &[Letter], origin: usize) -> Result<(usize, Word, usize)> {
        let cut = self.cut(window, origin)?;
        let r = self.r;
        if origin < cut || origin - cut + r > window.len() {
            return Err(Error::WindowTooShort("origin block leaves the window".into()));
        }
        let start = origin - cut;
        let first = start % r;
        let mut out = Vec::new();
        let mut pos = first;
        while pos + r <= window.len() {
            let block = &window[pos..pos + r];
            let a = self
                .preimage
                .get(block)
                .ok_or_else(|| Error::pre("window is not a legal word"))?;
            out.push(*a);
            pos += r;
        }
        Ok((cut, out, (start - first) / r))
    }
}

/// The digits `x_0 … x_{n−1}` with `Λ_{r^n} = Σ r^i x_i` for the point whose
/// visible part is `window` with `window[origin]` at coordinate 0.
pub fn odometer_digits(
    theta: &Substitution,
    window: &[Letter],
    origin: usize,
    n: usize,
) -> Result<OdometerDigits> {
    let rec = Recognizer::new(theta, 4 * theta.size() * theta.size() * theta.length())?;
    digits_with(&rec, theta.length(), window, origin, n)
}

pub fn digits_with(
    rec: &Recognizer,
    r: usize,
    window: &[Letter],
    origin: usize,
    n: usize,
) -> Result<OdometerDigits> {
    let mut digits = Vec::with_capacity(n);
    let mut w = window.to_vec();
    let mut o = origin;
    for level in 0..n {
        if level + 1 == n {
            digits.push(rec.cut(&w, o)?);
        } else {
            let (d, next, no) = rec.desubstitute(&w, o)?;
            digits.push(d);
            w = next;
            o = no;
        }
    }
    Ok(OdometerDigits { r, digits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixed_points::{fixed_point_prefix, left_fixed_point_suffix};

    fn two_sided(theta: &Substitution, left: Letter, right: Letter, half: usize) -> Word {
        let mut w = left_fixed_point_suffix(theta, left, half).unwrap();
        w.extend(fixed_point_prefix(theta, right, half).unwrap());
        w
    }

    #[test]
    fn fixed_point_sits_over_zero() {
        let tm = Substitution::from_images("ab", &["ab", "ba"]).unwrap();
        let w = two_sided(&tm, 1, 0, 256);
        let d = odometer_digits(&tm, &w, 256, 4).unwrap();
        assert_eq!(d.digits, vec![0, 0, 0, 0]);
        let d = odometer_digits(&tm, &w, 257, 2).unwrap();
        assert_eq!(d.digits, vec![1, 0]);
    }

    #[test]
    fn shift_adds_in_base_r() {
        let t = Substitution::from_images("abc", &["aac", "bca", "bba"]).unwrap();
        let w = two_sided(&t, 2, 0, 400);
        let rec = Recognizer::new(&t, 20).unwrap();
        let n = 3;
        let base = digits_with(&rec, 3, &w, 200, n).unwrap();
        for j in 0..9 {
            let d = digits_with(&rec, 3, &w, 200 + j, n).unwrap();
            assert_eq!(d.value(), (base.value() + j as u128) % 27);
            // refining precision keeps the lower digits
            let finer = digits_with(&rec, 3, &w, 200 + j, n + 1).unwrap();
            assert_eq!(&finer.digits[..n], &d.digits[..]);
        }
    }

    #[test]
    fn too_short_is_an_error() {
        let tm = Substitution::from_images("ab", &["ab", "ba"]).unwrap();
        let w = two_sided(&tm, 1, 0, 8);
        assert!(matches!(
            odometer_digits(&tm, &w, 8, 6),
            Err(Error::WindowTooShort(_))
        ));
    }
}
