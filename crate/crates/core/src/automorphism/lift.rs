//! Automorphisms of a substitution shift of height `h ≥ 2`, read off the
//! automorphisms of its pure base. They act on the constant suspension of
//! the pure base: letter `b·h + i` is the `i`-th letter of the block of `b`.

use serde::{Deserialize, Serialize};

use crate::automorphism::search::search_automorphisms;
use crate::compression::{constant_suspension, pure_base};
use crate::error::{Error, Result};
use crate::fixed_points::height;
use crate::rule::LocalRule;
use crate::substitution::Substitution;

/// `Ψ_j = σ^j ∘ Ψ̂`, where `Ψ̂` applies the base rule blockwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightLift {
    /// Index into the base automorphisms that were lifted.
    pub base: usize,
    pub j: usize,
    pub rule: LocalRule,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuspensionLifts {
    pub h: usize,
    pub pure_base: Substitution,
    pub suspension: Substitution,
    pub lifts: Vec<HeightLift>,
}

pub fn lift_automorphisms_with_height(theta: &Substitution, base_rules: &[LocalRule]) -> Result<SuspensionLifts> {
    let h = height(theta)?;
    if h < 2 {
        return Err(Error::Height(h, "at least 2".into()));
    }
    let base = pure_base(theta)?.theta;
    let suspension = constant_suspension(&base, h)?;
    let mut lifts = Vec::new();
    for (index, psi) in base_rules.iter().enumerate() {
        if psi.source != *base.alphabet() || psi.target != *base.alphabet() {
            return Err(Error::pre("base rules must act on the pure base alphabet"));
        }
        for j in 0..h {
            lifts.push(HeightLift {
                base: index,
                j,
                rule: lift_rule(&suspension, h, psi, j)?,
            });
        }
    }
    Ok(SuspensionLifts {
        h,
        pure_base: base,
        suspension,
        lifts,
    })
}

/// Searches the pure base (which must be injective) and lifts every
/// representative found.
pub fn lift_searched_automorphisms(theta: &Substitution, p_max: u32) -> Result<SuspensionLifts> {
    let h = height(theta)?;
    if h < 2 {
        return Err(Error::Height(h, "at least 2".into()));
    }
    let base = pure_base(theta)?.theta;
    let search = search_automorphisms(&base, p_max)?;
    let rules: Vec<LocalRule> = search
        .kernel
        .iter()
        .chain(&search.fractional)
        .map(|a| a.rule.clone())
        .collect();
    lift_automorphisms_with_height(theta, &rules)
}

fn lift_rule(suspension: &Substitution, h: usize, psi: &LocalRule, j: usize) -> Result<LocalRule> {
    let (l, rr) = (psi.left, psi.right);
    let left = l * h + h - 1;
    let right = (rr + 1) * h;
    let alphabet = suspension.alphabet();
    let mut out = LocalRule::new(left, right, alphabet.clone(), alphabet.clone());
    for w in crate::language::language(suspension, left + right + 1)? {
        let phase = w[left] % h;
        let start = left - phase;
        let carry = (phase + j) / h;
        // blocks carry−ℓ ..= carry+ρ, relative to the centre's block
        let window: Vec<usize> = (0..=l + rr)
            .map(|d| w[start + (carry + d) * h - l * h] / h)
            .collect();
        let b = psi.eval(&window).ok_or(Error::RuleNotTotal { missing: 1 })?;
        out.table.insert(w, b * h + (phase + j) % h);
    }
    out.trim(suspension)
}
