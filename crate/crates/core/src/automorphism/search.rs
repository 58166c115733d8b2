//! Automorphism search by propagation.
//!
//! Every automorphism is a shift power times either a radius (1, 1) rule
//! with `κ = 0` or a radius (1, 0) rule with `κ = k/(1 − r^p)`. For each
//! candidate κ the commutation condition is a system of functional
//! equations on the rule table: knowing the outputs around one window fixes
//! the outputs on every window of its `θ^{c!p}` image. One output is
//! guessed, everything it forces is filled in, and the search branches
//! again only when propagation stalls.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::alphabet::{Letter, Word};
use crate::automorphism::kappa::KappaValue;
use crate::automorphism::verify::{verify_kappa_in, verify_kernel_in, VerifyContext};
use crate::error::{Error, Result};
use crate::rule::LocalRule;
use crate::substitution::Substitution;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoundAutomorphism {
    pub rule: LocalRule,
    pub kappa: KappaValue,
}

/// One representative per coset of the shift: the kernel in radius
/// (1, 1) form and the fractional ones in radius (1, 0) form with
/// `−1 < κ < 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismSearch {
    pub p_max: u32,
    pub kernel: Vec<FoundAutomorphism>,
    pub fractional: Vec<FoundAutomorphism>,
}

impl AutomorphismSearch {
    pub fn only_shift_powers(&self) -> bool {
        self.kernel.len() == 1 && self.fractional.is_empty()
    }

    /// κ modulo the integers, for every representative.
    pub fn kappa_classes(&self) -> BTreeSet<(u128, u128)> {
        self.kernel
            .iter()
            .chain(&self.fractional)
            .map(|a| a.kappa.class())
            .collect()
    }

    pub fn with_class(&self, num: u128, den: u128) -> Vec<&FoundAutomorphism> {
        self.kernel
            .iter()
            .chain(&self.fractional)
            .filter(|a| a.kappa.class() == (num, den))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.kernel.len() + self.fractional.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn search_automorphisms(theta: &Substitution, p_max: u32) -> Result<AutomorphismSearch> {
    let ctx = VerifyContext::new(theta)?;
    search_in(&ctx, p_max)
}

pub fn search_in(ctx: &VerifyContext, p_max: u32) -> Result<AutomorphismSearch> {
    let r = ctx.r() as u64;
    let kernel = kernel_rules(ctx)?
        .into_iter()
        .map(|rule| FoundAutomorphism {
            rule,
            kappa: KappaValue::zero(r),
        })
        .collect();
    let mut fractional = Vec::new();
    for p in 1..=p_max {
        let full = r
            .checked_pow(p)
            .ok_or_else(|| Error::BoundExceeded(format!("r^{p} overflows")))?;
        for k in 1..full - 1 {
            let kappa = KappaValue::new(r, 0, k, p)?;
            if kappa.p != p {
                continue;
            }
            for rule in kappa_rules(ctx, &kappa)? {
                fractional.push(FoundAutomorphism { rule, kappa });
            }
        }
    }
    Ok(AutomorphismSearch {
        p_max,
        kernel,
        fractional,
    })
}

/// Variables are the windows of one length; constraints are read off
/// longer windows once the variables they mention are known.
struct Solver<'a> {
    vars: Vec<Word>,
    index: BTreeMap<Word, usize>,
    letters: usize,
    step: &'a mut dyn FnMut(&Word, &[Option<Letter>], &BTreeMap<Word, usize>) -> Option<Vec<(usize, Letter)>>,
    /// Constraint windows and the variables each needs.
    items: Vec<(Word, Vec<usize>)>,
}

impl Solver<'_> {
    fn solve(&mut self, vals: Vec<Option<Letter>>, done: Vec<bool>, out: &mut Vec<Vec<Letter>>) {
        let Some((vals, done)) = self.propagate(vals, done) else {
            return;
        };
        let Some(var) = self.choose(&vals) else {
            out.push(vals.into_iter().map(Option::unwrap).collect());
            return;
        };
        for v in 0..self.letters {
            let mut next = vals.clone();
            next[var] = Some(v);
            self.solve(next, done.clone(), out);
        }
    }

    fn propagate(&mut self, mut vals: Vec<Option<Letter>>, mut done: Vec<bool>) -> Option<(Vec<Option<Letter>>, Vec<bool>)> {
        loop {
            let mut changed = false;
            for (i, (w, needs)) in self.items.iter().enumerate() {
                if done[i] || needs.iter().any(|&v| vals[v].is_none()) {
                    continue;
                }
                done[i] = true;
                changed = true;
                for (var, value) in (self.step)(w, &vals, &self.index)? {
                    match vals[var] {
                        Some(old) if old != value => return None,
                        Some(_) => {}
                        None => vals[var] = Some(value),
                    }
                }
            }
            if !changed {
                return Some((vals, done));
            }
        }
    }

    /// An unknown variable that completes some constraint, if possible.
    fn choose(&self, vals: &[Option<Letter>]) -> Option<usize> {
        let mut first = None;
        for (_, needs) in &self.items {
            let unknown: Vec<usize> = needs.iter().copied().filter(|&v| vals[v].is_none()).collect();
            if unknown.len() == 1 {
                return Some(unknown[0]);
            }
            if first.is_none() {
                first = unknown.first().copied();
            }
        }
        first.or_else(|| vals.iter().position(Option::is_none))
    }
}

fn table_rule(ctx: &VerifyContext, left: usize, right: usize, vars: &[Word], vals: Vec<Letter>) -> LocalRule {
    let alphabet = ctx.theta.alphabet();
    let mut rule = LocalRule::new(left, right, alphabet.clone(), alphabet.clone());
    rule.table = vars.iter().cloned().zip(vals).collect();
    rule
}

/// All radius (1, 1) rules of automorphisms with `κ = 0`.
pub fn kernel_rules(ctx: &VerifyContext) -> Result<Vec<LocalRule>> {
    let vars: Vec<Word> = ctx.l3.iter().cloned().collect();
    let index: BTreeMap<Word, usize> = vars.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let mut items: Vec<(Word, Vec<usize>)> = vars.iter().map(|w| (w.clone(), vec![index[w]])).collect();
    items.extend(ctx.l4.iter().map(|w| (w.clone(), vec![index[&w[..3]], index[&w[1..]]])));
    let mut cache: HashMap<(Word, Letter), Vec<[Letter; 4]>> = HashMap::new();
    let mut step = |w: &Word, vals: &[Option<Letter>], index: &BTreeMap<Word, usize>| {
        if w.len() == 4 {
            let pair = vec![vals[index[&w[..3]]]?, vals[index[&w[1..]]]?];
            return ctx.l2.contains(&pair).then(Vec::new);
        }
        let z = vals[index[w]]?;
        let leaves = cache
            .entry((w.clone(), z))
            .or_insert_with(|| ctx.kernel_leaves([w[0], w[1], w[2]], z).into_iter().collect());
        Some(leaves.iter().map(|&[a, b, c, v]| (index[&vec![a, b, c]], v)).collect())
    };
    let mut solver = Solver {
        letters: ctx.theta.size(),
        vars: vars.clone(),
        index,
        step: &mut step,
        items,
    };
    let mut out = Vec::new();
    let n = solver.items.len();
    let nv = solver.vars.len();
    solver.solve(vec![None; nv], vec![false; n], &mut out);
    let mut rules = Vec::new();
    for vals in out {
        let rule = table_rule(ctx, 1, 1, &vars, vals);
        if !verify_kernel_in(ctx, &rule)? {
            return Err(Error::Verification("search produced a rule that does not verify".into()));
        }
        rules.push(rule);
    }
    Ok(rules)
}

/// All radius (1, 0) rules of automorphisms with the given fractional κ.
pub fn kappa_rules(ctx: &VerifyContext, kappa: &KappaValue) -> Result<Vec<LocalRule>> {
    let period = kappa.period_digits();
    let vars: Vec<Word> = ctx.l2.iter().cloned().collect();
    let index: BTreeMap<Word, usize> = vars.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let items: Vec<(Word, Vec<usize>)> = ctx
        .l3
        .iter()
        .map(|w| (w.clone(), vec![index[&w[..2]], index[&w[1..]]]))
        .collect();
    let mut cache: HashMap<[Letter; 4], Vec<[Letter; 3]>> = HashMap::new();
    let mut step = |w: &Word, vals: &[Option<Letter>], index: &BTreeMap<Word, usize>| {
        let s0 = vals[index[&w[..2]]]?;
        let s1 = vals[index[&w[1..]]]?;
        if !ctx.l2.contains(&vec![s0, s1]) {
            return None;
        }
        let leaves = cache
            .entry([w[0], w[1], s0, s1])
            .or_insert_with(|| ctx.kappa_leaves(w[0], w[1], s0, s1, &period).into_iter().collect());
        Some(leaves.iter().map(|&[a, b, v]| (index[&vec![a, b]], v)).collect())
    };
    let mut solver = Solver {
        letters: ctx.theta.size(),
        vars: vars.clone(),
        index,
        step: &mut step,
        items,
    };
    let mut out = Vec::new();
    let n = solver.items.len();
    let nv = solver.vars.len();
    solver.solve(vec![None; nv], vec![false; n], &mut out);
    let mut rules = Vec::new();
    for vals in out {
        let rule = table_rule(ctx, 1, 0, &vars, vals);
        if !verify_kappa_in(ctx, &rule, kappa.p, kappa.k)? {
            return Err(Error::Verification("search produced a rule that does not verify".into()));
        }
        rules.push(rule);
    }
    Ok(rules)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn no_automorphism_example() {
        let t = fixtures::substitution("no_automorphism").unwrap();
        let s = search_automorphisms(&t, 2).unwrap();
        assert!(s.only_shift_powers());
    }

    #[test]
    fn thue_morse_kernel() {
        let t = fixtures::substitution("thue_morse").unwrap();
        let s = search_automorphisms(&t, 2).unwrap();
        assert_eq!(s.kernel.len(), 2);
        assert!(s.fractional.is_empty());
    }

    #[test]
    fn involution_found() {
        let t = fixtures::substitution("involution").unwrap();
        let s = search_automorphisms(&t, 1).unwrap();
        let rule = fixtures::rule("involution", t.alphabet(), Some(t.alphabet())).unwrap();
        assert_eq!(s.kernel.len(), 2);
        assert!(s.kernel.iter().any(|a| a.rule.equivalent(&rule, &t).unwrap()));
    }
}
