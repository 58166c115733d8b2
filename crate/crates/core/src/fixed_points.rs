//! Periodic points, height and strong injectivity.
//!
//! Infinite points never exist here: a bi-infinite periodic point is a pair
//! of seeds plus the period, and one-sided points are finite prefixes.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::alphabet::{Letter, LetterMap, Word};
use crate::error::{Error, Result};
use crate::language::{is_finite, is_primitive, two_words};
use crate::substitution::Substitution;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PeriodicPointSeed {
    pub right_seed: Letter,
    pub left_seed: Letter,
    pub period: usize,
    pub admissible: bool,
}

/// Common period of the first- and last-column maps on their cycles.
pub fn seed_period(theta: &Substitution) -> usize {
    let first = cycle_lcm(&theta.column(0));
    let last = cycle_lcm(&theta.column(theta.length() - 1));
    first.lcm(&last)
}

/// Lcm of the cycle lengths of a self-map of a finite set.
fn cycle_lcm(map: &LetterMap) -> usize {
    let mut out = 1;
    for a in 0..map.len() {
        if let Some(len) = cycle_length(map, a) {
            out = out.lcm(&len);
        }
    }
    out
}

/// Length of the cycle through `a`, if `a` lies on one.
fn cycle_length(map: &LetterMap, a: Letter) -> Option<usize> {
    let mut x = map[a];
    for len in 1..=map.len() {
        if x == a {
            return Some(len);
        }
        x = map[x];
    }
    None
}

fn iterate_map(map: &LetterMap, a: Letter, n: usize) -> Letter {
    (0..n).fold(a, |x, _| map[x])
}

pub fn right_seeds(theta: &Substitution) -> Vec<Letter> {
    let p = seed_period(theta);
    let first = theta.column(0);
    theta
        .alphabet()
        .letters()
        .filter(|&a| iterate_map(&first, a, p) == a)
        .collect()
}

pub fn left_seeds(theta: &Substitution) -> Vec<Letter> {
    let p = seed_period(theta);
    let last = theta.column(theta.length() - 1);
    theta
        .alphabet()
        .letters()
        .filter(|&a| iterate_map(&last, a, p) == a)
        .collect()
}

/// Every (left, right) seed combination with its admissibility flag, sorted.
pub fn periodic_point_seeds(theta: &Substitution) -> Result<Vec<PeriodicPointSeed>> {
    let l2 = two_words(theta)?;
    let period = seed_period(theta);
    let mut out = Vec::new();
    for &b in &left_seeds(theta) {
        for &a in &right_seeds(theta) {
            out.push(PeriodicPointSeed {
                right_seed: a,
                left_seed: b,
                period,
                admissible: l2.contains(&vec![b, a]),
            });
        }
    }
    out.sort();
    Ok(out)
}

/// First `n` letters of the right-infinite periodic point grown from `seed`.
pub fn fixed_point_prefix(theta: &Substitution, seed: Letter, n: usize) -> Result<Word> {
    let p = seed_period(theta);
    let first = theta.column(0);
    if seed >= theta.size() || iterate_map(&first, seed, p) != seed {
        return Err(Error::pre(format!("{seed} is not a right seed")));
    }
    let mut w = vec![seed];
    while w.len() < n {
        // θ^p(w) extends w because θ^p(seed) starts with seed
        w = theta.iterate(&w, p);
    }
    w.truncate(n.max(1));
    Ok(w)
}

/// Left-infinite analogue: the last `n` letters, in left-to-right order.
pub fn left_fixed_point_suffix(theta: &Substitution, seed: Letter, n: usize) -> Result<Word> {
    let p = seed_period(theta);
    let last = theta.column(theta.length() - 1);
    if seed >= theta.size() || iterate_map(&last, seed, p) != seed {
        return Err(Error::pre(format!("{seed} is not a left seed")));
    }
    let mut w = vec![seed];
    while w.len() < n {
        w = theta.iterate(&w, p);
    }
    Ok(w[w.len() - n.max(1)..].to_vec())
}

fn height_from_prefix(u: &[Letter], r: usize) -> Option<usize> {
    let g = u
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &x)| x == u[0])
        .fold(0usize, |g, (i, _)| g.gcd(&i));
    if g == 0 {
        return None;
    }
    Some((1..=g).rev().find(|&n| g % n == 0 && n.gcd(&r) == 1).unwrap())
}

/// Height of a primitive substitution with infinite shift. The return-time
/// gcd is read from a prefix of length `r·|A|²` and re-checked on a prefix
/// twice as long; the prefix keeps doubling until the two agree.
pub fn height(theta: &Substitution) -> Result<usize> {
    if !is_primitive(theta) {
        return Err(Error::NotPrimitive);
    }
    if is_finite(theta)? {
        return Err(Error::FiniteShift);
    }
    let seed = right_seeds(theta)[0];
    let n = theta.size();
    let r = theta.length();
    let mut len = (r * n * n).max(4);
    loop {
        let u = fixed_point_prefix(theta, seed, 2 * len)?;
        let short = height_from_prefix(&u[..len], r);
        let long = height_from_prefix(&u, r);
        if short.is_some() && short == long {
            return Ok(long.unwrap());
        }
        if len > 1 << 20 {
            return Err(Error::BoundExceeded("height prefix did not stabilise".into()));
        }
        len *= 2;
    }
}

/// A pair of distinct seeds whose periodic points differ only at the
/// boundary entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InjectivityViolation {
    /// `true` for right-infinite points (differing at index 0), `false` for
    /// left-infinite points (differing at index −1).
    pub right: bool,
    pub seeds: (Letter, Letter),
    pub period: usize,
}

/// Decides strong injectivity. Right seeds `a ≠ a'` violate it iff every
/// column of `θ^p` except the first sends them to the same letter; these
/// columns are walked as digit strings of length `p` rather than by
/// materialising `θ^p`.
pub fn strong_injectivity_violation(theta: &Substitution) -> Result<Option<InjectivityViolation>> {
    if !theta.is_injective() {
        return Err(Error::NotInjective);
    }
    let p = seed_period(theta);
    let r = theta.length();
    for (right, seeds, boundary) in [(true, right_seeds(theta), 0), (false, left_seeds(theta), r - 1)] {
        for (i, &a) in seeds.iter().enumerate() {
            for &b in &seeds[i + 1..] {
                if merged_off_boundary(theta, a, b, p, boundary) {
                    return Ok(Some(InjectivityViolation {
                        right,
                        seeds: (a, b),
                        period: p,
                    }));
                }
            }
        }
    }
    Ok(None)
}

pub fn is_strongly_injective(theta: &Substitution) -> Result<bool> {
    Ok(strong_injectivity_violation(theta)?.is_none())
}

/// True when every digit string of length `p` other than `boundary^p`
/// sends `(a, b)` to a diagonal pair.
fn merged_off_boundary(theta: &Substitution, a: Letter, b: Letter, p: usize, boundary: usize) -> bool {
    // states: (pair, still on the boundary path)
    let mut states: std::collections::BTreeSet<(Letter, Letter, bool)> = [(a, b, true)].into();
    for _ in 0..p {
        let mut next = std::collections::BTreeSet::new();
        for &(x, y, on) in &states {
            for d in 0..theta.length() {
                next.insert((theta.col(d, x), theta.col(d, y), on && d == boundary));
            }
        }
        states = next;
    }
    states.iter().all(|&(x, y, on)| on || x == y)
}
