//! Finite-order automorphisms and the factors they collapse.

use serde::{Deserialize, Serialize};

use crate::alphabet::{compose, is_permutation, Alphabet, LetterMap};
use crate::automatic::{fiber_profile, AutomaticPair};
use crate::automorphism::search::search_automorphisms;
use crate::compression::language_automorphism_exponent;
use crate::error::{Error, Result};
use crate::rule::LocalRule;
use crate::substitution::{canonical_classes, LetterCoding, Substitution};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderQuotient {
    pub order: usize,
    /// `θ` coded by the orbit of each letter.
    pub pair: AutomaticPair,
    /// The orbit partition as a substitution, when `θ` respects it.
    pub quotient: Option<Substitution>,
}

/// Identifies each point with its images under a radius-0 automorphism.
pub fn order_k_quotient(theta: &Substitution, phi: &LocalRule) -> Result<OrderQuotient> {
    let map = phi
        .trim(theta)?
        .letter_map(theta)?
        .ok_or_else(|| Error::pre("the automorphism must have radius 0"))?;
    if !is_permutation(&map) || language_automorphism_exponent(theta, &map, 8)?.is_none() {
        return Err(Error::pre("not a radius-0 automorphism"));
    }
    let identity: LetterMap = (0..map.len()).collect();
    let mut order = 1;
    let mut power = map.clone();
    while power != identity {
        power = compose(&map, &power);
        order += 1;
    }
    // orbit of a = its smallest member
    let mut least: Vec<usize> = identity.clone();
    for a in 0..map.len() {
        let mut b = map[a];
        while b != a {
            least[a] = least[a].min(b);
            b = map[b];
        }
    }
    let classes = canonical_classes(&least);
    let count = classes.iter().max().map_or(0, |m| m + 1);
    let names: Vec<String> = (0..count)
        .map(|k| {
            let members: Vec<&str> = (0..map.len())
                .filter(|&a| classes[a] == k)
                .map(|a| theta.alphabet().name(a))
                .collect();
            if members.len() == 1 {
                members[0].to_string()
            } else {
                format!("{{{}}}", members.join(","))
            }
        })
        .collect();
    let coding = LetterCoding::new(theta.alphabet().clone(), Alphabet::new(names)?, classes.clone())?;
    let pair = AutomaticPair::new(theta.clone(), coding)?;
    let quotient = theta.quotient(&classes).ok().map(|(q, _)| q);
    Ok(OrderQuotient { order, pair, quotient })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Involution {
    pub rule: LocalRule,
    pub radius: usize,
}

/// The involution swapping the two points of every fibre of a uniformly
/// 2-to-1 factor map `π`. Fibres are counted on target words of length
/// `width`.
pub fn involution_from_two_to_one(
    theta: &Substitution,
    pi: &LocalRule,
    radius_cap: usize,
    width: usize,
) -> Result<Involution> {
    let (lo, hi) = fiber_profile(theta, pi, width)?;
    if (lo, hi) != (2, 2) {
        return Err(Error::pre(format!(
            "factor map is not uniformly 2-to-1: fibres have between {lo} and {hi} points"
        )));
    }
    // an involution has κ = 0, so it is among the kernel elements
    let search = search_automorphisms(theta, 1)?;
    let identity = LocalRule::identity(theta.alphabet());
    for found in &search.kernel {
        let rule = found.rule.trim(theta)?;
        if rule.equivalent(&identity, theta)? {
            continue;
        }
        if !rule.then(pi, theta)?.equivalent(pi, theta)? {
            continue;
        }
        if !rule.pow(2, theta)?.equivalent(&identity, theta)? {
            continue;
        }
        let radius = rule.left.max(rule.right);
        if radius > radius_cap {
            return Err(Error::BoundExceeded(format!(
                "involution has radius {radius}, above the cap {radius_cap}"
            )));
        }
        return Ok(Involution { rule, radius });
    }
    Err(Error::Verification(
        "no involution preserves the fibres among the automorphisms found".into(),
    ))
}
