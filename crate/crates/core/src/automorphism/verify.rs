//! Exact verification of radius-one local rules as automorphisms.
//!
//! The commutation conditions quantify over every position `i < r^n` of
//! `θ^n(x_{-1}·x_0)`. Instead of expanding those words, positions are read
//! digit by digit (most significant first) and the letters the conditions
//! look at are carried along as a small state. States from all positions
//! are merged into one set per level, so the cost depends on the number
//! of distinct states rather than on `r^n`.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::alphabet::{Letter, Word};
use crate::automatic::{injectivity_radius, AutomaticPair};
use crate::automorphism::iterate_jump;
use crate::automorphism::kappa::KappaValue;
use crate::automorphism::kernel::is_language_automorphism;
use crate::error::{Error, Result};
use crate::fixed_points::height;
use crate::language::{is_finite, is_primitive, language, WordSet};
use crate::pair_graph::minimal_sets;
use crate::rule::{LocalRule, ShiftLanguage};
use crate::substitution::Substitution;

/// Everything the conditions need about `θ`, computed once.
#[derive(Clone, Debug)]
pub struct VerifyContext {
    pub theta: Substitution,
    /// Column number.
    pub c: usize,
    /// `c!`.
    pub c_fact: usize,
    pub l2: WordSet,
    pub l3: WordSet,
    pub l4: WordSet,
    cols: Vec<Vec<Letter>>,
}

impl VerifyContext {
    pub fn new(theta: &Substitution) -> Result<Self> {
        if !theta.is_injective() {
            return Err(Error::NotInjective);
        }
        if !is_primitive(theta) {
            return Err(Error::NotPrimitive);
        }
        if is_finite(theta)? {
            return Err(Error::FiniteShift);
        }
        let h = height(theta)?;
        if h != 1 {
            return Err(Error::Height(h, "1; pass the pure base".into()));
        }
        let c = minimal_sets(theta)?.c;
        let c_fact = (1..=c).product();
        Ok(VerifyContext {
            theta: theta.clone(),
            c,
            c_fact,
            l2: language(theta, 2)?,
            l3: language(theta, 3)?,
            l4: language(theta, 4)?,
            cols: (0..theta.length()).map(|j| theta.column(j)).collect(),
        })
    }

    pub fn r(&self) -> usize {
        self.theta.length()
    }

    /// Final `(x_{i-1}, x_i, target)` triples for the fractional condition,
    /// starting from `x_{-1} x_0` with `f`-values `s0 = f(x_{-1}x_0)`,
    /// `s1 = f(x_0x_1)`. `period` holds the `p` digits of `k`.
    pub(crate) fn kappa_leaves(&self, pred: Letter, cur: Letter, s0: Letter, s1: Letter, period: &[usize]) -> BTreeSet<[Letter; 3]> {
        let r = self.r();
        let cols = &self.cols;
        let start = BTreeSet::from([[cur, pred, s0, s1]]);
        let end = iterate_jump(start, self.c_fact, |set| {
            let mut set = set.clone();
            for &e in period {
                let mut next = BTreeSet::new();
                for &[cur, pred, s0, s1] in &set {
                    let read = |v: usize| if v < r { cols[v][s0] } else { cols[v - r][s1] };
                    for d in 0..r {
                        let p = if d > 0 { cols[d - 1][cur] } else { cols[r - 1][pred] };
                        next.insert([cols[d][cur], p, read(d + e), read(d + e + 1)]);
                    }
                }
                set = next;
            }
            set
        });
        end.into_iter().map(|[cur, pred, s0, _]| [pred, cur, s0]).collect()
    }

    /// Final `(u_{i-1}, u_i, u_{i+1}, target)` for the kernel condition.
    pub(crate) fn kernel_leaves(&self, w: [Letter; 3], z: Letter) -> BTreeSet<[Letter; 4]> {
        let r = self.r();
        let cols = &self.cols;
        let start = BTreeSet::from([[w[0], w[1], w[2], z]]);
        iterate_jump(start, self.c_fact, |set| {
            let mut next = BTreeSet::new();
            for &[pred, cur, succ, z] in set {
                for d in 0..r {
                    let p = if d > 0 { cols[d - 1][cur] } else { cols[r - 1][pred] };
                    let s = if d + 1 < r { cols[d + 1][cur] } else { cols[0][succ] };
                    next.insert([p, cols[d][cur], s, cols[d][z]]);
                }
            }
            next
        })
    }
}

fn check_kappa_args(ctx: &VerifyContext, p: u32, k: u64) -> Result<Vec<usize>> {
    let full = (ctx.r() as u64)
        .checked_pow(p)
        .ok_or_else(|| Error::BoundExceeded(format!("r^{p} overflows")))?;
    if p == 0 || k == 0 || k >= full - 1 {
        return Err(Error::pre(format!("need p ≥ 1 and 0 < k < r^p − 1, got p = {p}, k = {k}")));
    }
    Ok(KappaValue { r: ctx.r() as u64, m: 0, k, p }.period_digits())
}

fn fit(rule: &LocalRule, left: usize, right: usize, lang: &impl ShiftLanguage) -> Result<LocalRule> {
    if rule.left > left || rule.right > right {
        return Err(Error::pre(format!(
            "rule radii ({}, {}) exceed ({left}, {right})",
            rule.left, rule.right
        )));
    }
    rule.widen(left, right, lang)
}

/// Left radius 1, right radius 0: is the rule an automorphism with
/// `κ = k/(1 − r^p)`?
pub fn verify_rule_kappa(theta: &Substitution, rule: &LocalRule, p: u32, k: u64) -> Result<bool> {
    let ctx = VerifyContext::new(theta)?;
    verify_kappa_in(&ctx, rule, p, k)
}

pub fn verify_kappa_in(ctx: &VerifyContext, rule: &LocalRule, p: u32, k: u64) -> Result<bool> {
    let period = check_kappa_args(ctx, p, k)?;
    let f = fit(rule, 1, 0, &ctx.theta)?;
    let mut cache = HashMap::new();
    for w in &ctx.l3 {
        let s0 = f.table[&w[..2]];
        let s1 = f.table[&w[1..]];
        if !ctx.l2.contains(&vec![s0, s1]) {
            return Ok(false);
        }
        let leaves = cache
            .entry([w[0], w[1], s0, s1])
            .or_insert_with(|| ctx.kappa_leaves(w[0], w[1], s0, s1, &period));
        if leaves.iter().any(|&[a, b, v]| f.table[&vec![a, b]] != v) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Radii (1, 1): is the rule an automorphism with `κ = 0`?
pub fn verify_rule_kernel(theta: &Substitution, rule: &LocalRule) -> Result<bool> {
    let ctx = VerifyContext::new(theta)?;
    verify_kernel_in(&ctx, rule)
}

pub fn verify_kernel_in(ctx: &VerifyContext, rule: &LocalRule) -> Result<bool> {
    let g = fit(rule, 1, 1, &ctx.theta)?;
    for w in &ctx.l4 {
        if !ctx.l2.contains(&vec![g.table[&w[..3]], g.table[&w[1..]]]) {
            return Ok(false);
        }
    }
    for w in &ctx.l3 {
        let z = g.table[w];
        for [a, b, c, v] in ctx.kernel_leaves([w[0], w[1], w[2]], z) {
            if g.table[&vec![a, b, c]] != v {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The same table read with the centre moved `m` places to the left, i.e.
/// the rule of `σ^{-m} ∘ Φ`.
pub fn recenter(rule: &LocalRule, m: isize, lang: &impl ShiftLanguage) -> Result<LocalRule> {
    let left = rule.left as isize + m;
    let right = rule.right as isize - m;
    if left < 0 || right < 0 {
        return Err(Error::pre("recentred radius would be negative"));
    }
    let mut out = rule.materialize(lang)?;
    out.left = left as usize;
    out.right = right as usize;
    Ok(out)
}

/// The κ-value of a rule, found by moving it into one of the two normal
/// forms and verifying there. Fractional parts are tried with periods up
/// to `p_max`.
pub fn kappa_of(theta: &Substitution, rule: &LocalRule, p_max: u32) -> Result<KappaValue> {
    let ctx = VerifyContext::new(theta)?;
    kappa_in(&ctx, rule, p_max)
}

pub fn kappa_in(ctx: &VerifyContext, rule: &LocalRule, p_max: u32) -> Result<KappaValue> {
    let theta = &ctx.theta;
    let r = ctx.r() as u64;
    let t = rule.trim(theta)?;
    let (l, rr) = (t.left as isize, t.right as isize);
    for m in (rr - 1).max(-l)..=(1 - l).min(rr) {
        if verify_kernel_in(ctx, &recenter(&t, m, theta)?)? {
            return Ok(KappaValue::integer(r, m as i64));
        }
    }
    if l + rr <= 1 {
        let psi = recenter(&t, rr, theta)?;
        for p in 1..=p_max {
            let full = r.pow(p);
            for k in 1..full - 1 {
                let v = KappaValue::new(r, 0, k, p)?;
                if v.p != p {
                    continue;
                }
                if verify_kappa_in(ctx, &psi, p, k)? {
                    return Ok(KappaValue::new(r, rr as i64, k, p)?);
                }
            }
        }
    }
    Err(Error::Verification(format!(
        "rule is not an automorphism of radius one with κ period at most {p_max}"
    )))
}

/// A rule on a coded shift checked through the coding: `g ∘ τ` must be a
/// letter automorphism `τ ∘ Ψ` of the underlying substitution shift, and
/// `τ` must be injective on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorAutomorphism {
    pub psi: Vec<Letter>,
    pub injectivity_radius: usize,
}

pub fn verify_factor_automorphism(pair: &AutomaticPair, g: &LocalRule, max_radius: usize) -> Result<FactorAutomorphism> {
    let theta = &pair.theta;
    let tau = &pair.tau.map;
    let w = g.width();
    // τ∘Ψ, one letter per centre
    let mut psi = vec![usize::MAX; theta.size()];
    for word in language(theta, w)? {
        let coded: Word = word.iter().map(|&a| tau[a]).collect();
        let out = g
            .eval(&coded)
            .ok_or_else(|| Error::Verification(format!("no output for {}", g.source.render(&coded))))?;
        let centre = word[g.left];
        if psi[centre] == usize::MAX {
            psi[centre] = out;
        } else if psi[centre] != out {
            return Err(Error::Verification(format!(
                "output at centre {} depends on the context",
                theta.alphabet().name(centre)
            )));
        }
    }
    let coded_image = psi;
    let candidates: Vec<Vec<Letter>> = theta
        .alphabet()
        .letters()
        .map(|a| {
            theta
                .alphabet()
                .letters()
                .filter(|&b| tau[b] == coded_image[a])
                .collect()
        })
        .collect();
    let n = (1..=minimal_sets(theta)?.c).product();
    let mut found = None;
    let mut current = Vec::new();
    choose_psi(theta, &candidates, &mut current, n, &mut found)?;
    let psi = found.ok_or_else(|| Error::Verification("g ∘ τ lifts to no letter automorphism".into()))?;
    let radius = injectivity_radius(pair, max_radius)?
        .ok_or_else(|| Error::Verification(format!("coding not shown injective up to radius {max_radius}")))?;
    Ok(FactorAutomorphism {
        psi,
        injectivity_radius: radius,
    })
}

fn choose_psi(
    theta: &Substitution,
    candidates: &[Vec<Letter>],
    current: &mut Vec<Letter>,
    n: usize,
    found: &mut Option<Vec<Letter>>,
) -> Result<()> {
    if found.is_some() {
        return Ok(());
    }
    if current.len() == candidates.len() {
        if is_language_automorphism(theta, current, n)? {
            *found = Some(current.clone());
        }
        return Ok(());
    }
    for &b in &candidates[current.len()] {
        if !current.contains(&b) {
            current.push(b);
            choose_psi(theta, candidates, current, n, found)?;
            current.pop();
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(letters: &str, imgs: &[&str]) -> Substitution {
        Substitution::from_images(letters, imgs).unwrap()
    }

    #[test]
    fn identity_and_shift() {
        let t = sub("abc", &["abb", "bac", "cca"]);
        let id = LocalRule::identity(t.alphabet());
        assert!(verify_rule_kernel(&t, &id).unwrap());
        assert_eq!(kappa_of(&t, &id, 2).unwrap(), KappaValue::zero(3));
        let s = LocalRule::shift(&t, 1).unwrap();
        assert!(!verify_rule_kernel(&t, &s).unwrap());
        assert_eq!(kappa_of(&t, &s, 2).unwrap(), KappaValue::integer(3, 1));
        let back = LocalRule::shift(&t, -2).unwrap();
        // σ^{-2} has no radius-one normal form
        assert!(kappa_of(&t, &back, 1).is_err());
    }

    #[test]
    fn swap_on_radius_example() {
        let t = sub("abcd", &["ac", "bd", "ab", "ba"]);
        let alpha = t.alphabet().clone();
        let swap = LocalRule::from_letter_map(&alpha, &alpha, &[1, 0, 3, 2]);
        assert!(verify_rule_kernel(&t, &swap).unwrap());
        let bad = LocalRule::from_letter_map(&alpha, &alpha, &[1, 0, 2, 3]);
        assert!(!verify_rule_kernel(&t, &bad).unwrap());
    }

    #[test]
    fn inconsistent_kappa_rule_rejected() {
        let t = sub("abc", &["abb", "bac", "cca"]);
        let mut f = LocalRule::new(1, 0, t.alphabet().clone(), t.alphabet().clone());
        for w in language(&t, 2).unwrap() {
            f.table.insert(w, 0);
        }
        assert!(!verify_rule_kappa(&t, &f, 1, 1).unwrap());
        assert!(verify_rule_kappa(&t, &f, 1, 2).is_err());
    }

    #[test]
    fn leaves_match_expansion() {
        // compare the automaton against the expanded words on a small case
        let t = sub("abc", &["abb", "bac", "cca"]);
        let ctx = VerifyContext::new(&t).unwrap();
        let n = ctx.c_fact;
        let big = t.power(n).unwrap();
        let rn = big.length();
        let nn = (rn - 1) / 2; // k = 1, p = 1, r = 3
        for w in &ctx.l3 {
            let (s0, s1) = (w[2], w[0]);
            let mut expect = BTreeSet::new();
            let left = [big.image(w[0]), big.image(w[1])].concat();
            let right = [big.image(s0), big.image(s1)].concat();
            for i in 0..rn {
                expect.insert([left[rn + i - 1], left[rn + i], right[nn + i]]);
            }
            assert_eq!(ctx.kappa_leaves(w[0], w[1], s0, s1, &[1]), expect);
            let mut kexp = BTreeSet::new();
            let u = [big.image(w[0]), big.image(w[1]), big.image(w[2])].concat();
            let z = big.image(s0);
            for i in 0..rn {
                kexp.insert([u[rn + i - 1], u[rn + i], u[rn + i + 1], z[i]]);
            }
            assert_eq!(ctx.kernel_leaves([w[0], w[1], w[2]], s0), kexp);
        }
    }

    fn fixture_rule(sub_name: &str, rule_name: &str) -> (Substitution, LocalRule) {
        let t = crate::fixtures::substitution(sub_name).unwrap();
        let rule = crate::fixtures::rule(rule_name, t.alphabet(), Some(t.alphabet())).unwrap();
        (t, rule)
    }

    #[test]
    fn twisted_rule_has_class_one_third() {
        let (t, rule) = fixture_rule("twisted", "twisted");
        let k = kappa_of(&t, &rule, 2).unwrap();
        assert_eq!(k.class(), (1, 3));
        assert!(verify_rule_kappa(&t, &rule, 2, 16).unwrap());
        assert!(!verify_rule_kappa(&t, &rule, 1, 1).unwrap());
    }

    #[test]
    fn salvaged_rule_is_square_root() {
        let (t, rule) = fixture_rule("salvaged", "salvaged");
        assert!(verify_rule_kappa(&t, &rule, 1, 1).unwrap());
        let k = kappa_of(&t, &rule, 1).unwrap();
        assert_eq!(k.as_rational(), (-1, 2));
        // the square is σ⁻¹ only up to an involution of the alphabet
        let sq = rule.pow(2, &t).unwrap();
        let tau = vec![10, 6, 3, 2, 7, 8, 1, 4, 5, 11, 0, 9];
        let twisted = LocalRule::shift(&t, -1)
            .unwrap()
            .then(&LocalRule::from_letter_map(t.alphabet(), t.alphabet(), &tau), &t)
            .unwrap();
        assert!(sq.equivalent(&twisted, &t).unwrap());
        assert!(!sq.equivalent(&LocalRule::shift(&t, -1).unwrap(), &t).unwrap());
    }

    #[test]
    fn involution_with_left_radius() {
        let (t, rule) = fixture_rule("involution", "involution");
        assert!(verify_rule_kernel(&t, &rule).unwrap());
        let sq = rule.pow(2, &t).unwrap();
        assert!(sq.equivalent(&LocalRule::identity(t.alphabet()), &t).unwrap());
    }
}
