//! Roots of the shift and the decomposition of a substitution shift as a
//! twisted compression.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::alphabet::{is_permutation, Letter, LetterMap, Word};
use crate::automatic::{injectivity_radius, AutomaticPair};
use crate::automorphism::kappa::KappaValue;
use crate::automorphism::kernel::radius_zero_automorphisms;
use crate::automorphism::search::{search_in, AutomorphismSearch};
use crate::automorphism::verify::{recenter, VerifyContext};
use crate::compression::{compress, twist, Compression};
use crate::error::{Error, Result};
use crate::language::{is_finite, is_primitive, LanguageTable};
use crate::rule::LocalRule;
use crate::substitution::{canonical_classes, LetterCoding, Substitution};

/// An automorphism `Φ` with `κ(Φ) ≡ 1/k`, written with left radius 0 and
/// right radius 1, together with the kernel element `τ` such that
/// `Φ^k = σ∘τ`. The root is exact when `τ` is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftRoot {
    pub k: usize,
    pub rule: LocalRule,
    pub kappa: KappaValue,
    pub tau: LetterMap,
}

impl ShiftRoot {
    pub fn is_exact(&self) -> bool {
        self.tau.iter().enumerate().all(|(i, &t)| i == t)
    }
}

/// All automorphisms with `κ ≡ 1/k` modulo the shift, one per coset,
/// including those whose `k`-th power is the shift only up to the kernel.
pub fn find_shift_roots(theta: &Substitution, k: usize, p_max: u32) -> Result<Vec<ShiftRoot>> {
    let ctx = VerifyContext::new(theta)?;
    let search = search_in(&ctx, p_max)?;
    roots_from_search(theta, &search, k)
}

pub fn roots_from_search(theta: &Substitution, search: &AutomorphismSearch, k: usize) -> Result<Vec<ShiftRoot>> {
    if k < 2 {
        return Err(Error::pre("root order must be at least 2"));
    }
    let r = theta.length() as u64;
    let mut out = Vec::new();
    for found in search.with_class(1, k as u128) {
        // search representatives have −1 < κ < 0 and radii (1, 0)
        let rule = recenter(&found.rule, -1, theta)?;
        let kappa = found.kappa + KappaValue::integer(r, 1);
        let power = rule.pow(k, theta)?;
        let rest = recenter(&power.trim(theta)?, 1, theta)?;
        let tau = rest
            .letter_map(theta)?
            .ok_or_else(|| Error::Verification("Φ^k ∘ σ^{-1} is not a letter map".into()))?;
        if !is_permutation(&tau) {
            return Err(Error::Verification("Φ^k ∘ σ^{-1} is not a permutation".into()));
        }
        out.push(ShiftRoot { k, rule, kappa, tau });
    }
    Ok(out)
}

/// `θ ∘ Ψ = Φ^r ∘ θ`, compared on the images of legal two-letter words.
fn conjugates_by_theta(theta: &Substitution, psi: &LocalRule, phi_r: &LocalRule, l2: &BTreeSet<Word>) -> bool {
    l2.iter().all(|w| {
        let lhs = psi.apply(w).map(|u| theta.apply(&u));
        let rhs = phi_r.apply(&theta.apply(w));
        lhs.is_some() && lhs == rhs
    })
}

/// A root `Φ′` with `θ^n ∘ Φ′ = Φ′^{r^n} ∘ θ^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizedRoot {
    pub n: usize,
    pub theta_n: Substitution,
    pub root: ShiftRoot,
}

/// Iterates `Φ ↦ θ^{-1} Φ^r θ` on the roots of the same class until it
/// cycles. `roots` must be every root with the class of `roots[start]`.
pub fn normalize_phi(theta: &Substitution, roots: &[ShiftRoot], start: usize) -> Result<NormalizedRoot> {
    let r = theta.length();
    let l2 = crate::language::two_words(theta)?;
    let step = |i: usize| -> Result<usize> {
        let phi_r = roots[i].rule.pow(r, theta)?;
        roots
            .iter()
            .position(|psi| conjugates_by_theta(theta, &psi.rule, &phi_r, &l2))
            .ok_or_else(|| Error::Verification("θ^{-1} Φ^r θ is not among the roots".into()))
    };
    let mut seen = vec![start];
    loop {
        let next = step(*seen.last().unwrap())?;
        if let Some(pos) = seen.iter().position(|&j| j == next) {
            let n = seen.len() - pos;
            let root = roots[next].clone();
            let theta_n = theta.power(n)?;
            let rn = theta_n.length();
            let tau_pow = (1..rn).fold(root.tau.clone(), |acc, _| crate::alphabet::compose(&root.tau, &acc));
            if tau_pow != root.tau {
                return Err(Error::Verification("τ^{r^n} ≠ τ after normalization".into()));
            }
            return Ok(NormalizedRoot { n, theta_n, root });
        }
        seen.push(next);
    }
}

/// `η(a)_i = (Φ^i θ(x))_0` for any point with `x_0 = a`, on the alphabet
/// of `θ`. Letters with equal images are kept apart here.
pub fn extract_eta(theta: &Substitution, root: &ShiftRoot) -> Result<Substitution> {
    let r = theta.length();
    let mut images = Vec::with_capacity(theta.size());
    for a in theta.alphabet().letters() {
        let mut word = theta.image(a).to_vec();
        let mut img = Vec::with_capacity(r);
        for _ in 0..r {
            img.push(word[0]);
            word = root
                .rule
                .apply(&word)
                .ok_or_else(|| Error::Verification("root leaves the language".into()))?;
        }
        images.push(img);
    }
    // the same letters must come out of every longer window
    for w in crate::language::two_words(theta)? {
        let mut word = theta.apply(&w);
        for i in 0..r {
            if word[0] != images[w[0]][i] {
                return Err(Error::Verification("η depends on the window".into()));
            }
            word = root.rule.apply(&word).unwrap_or_default();
        }
    }
    let eta = Substitution::new(theta.alphabet().clone(), images)?;
    if !is_primitive(&eta) {
        return Err(Error::Verification("η is not primitive".into()));
    }
    if is_finite(&eta)? {
        return Err(Error::Verification("η generates a finite shift".into()));
    }
    Ok(eta)
}

/// Merges letters with equal images until the substitution is injective.
pub fn fully_injectivize(theta: &Substitution) -> Result<Substitution> {
    let mut cur = theta.clone();
    while !cur.is_injective() {
        cur = cur.injectivize()?.0;
    }
    Ok(cur)
}

/// Smallest partition containing `class_of` and `a ~ b` that the
/// substitution respects.
fn congruence_closure(theta: &Substitution, class_of: &[usize], a: Letter, b: Letter) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..theta.size()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut queue = vec![(a, b)];
    for x in theta.alphabet().letters() {
        if let Some(y) = (0..x).find(|&y| class_of[y] == class_of[x]) {
            queue.push((x, y));
        }
    }
    while let Some((u, v)) = queue.pop() {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            continue;
        }
        parent[ru] = rv;
        queue.extend(theta.image(u).iter().copied().zip(theta.image(v).iter().copied()));
    }
    let roots: Vec<usize> = (0..theta.size()).map(|x| find(&mut parent, x)).collect();
    canonical_classes(&roots)
}

/// Merges letters as long as the merging coding stays injective on the
/// shift, certified on windows of radius at most `max_m`. The result is a
/// substitution conjugate to the input through a letter-to-letter map;
/// higher block presentations collapse back to their base this way.
pub fn collapse_presentation(theta: &Substitution, max_m: usize) -> Result<(Substitution, LetterCoding)> {
    let mut class_of: Vec<usize> = theta.alphabet().letters().collect();
    for a in theta.alphabet().letters() {
        for b in a + 1..theta.size() {
            if class_of[a] == class_of[b] {
                continue;
            }
            let candidate = congruence_closure(theta, &class_of, a, b);
            if candidate.iter().all(|&c| c == 0) {
                continue;
            }
            let (_, coding) = theta.quotient(&candidate)?;
            let pair = AutomaticPair::new(theta.clone(), coding)?;
            if injectivity_radius(&pair, max_m)?.is_some() {
                class_of = candidate;
            }
        }
    }
    theta.quotient(&class_of)
}

/// A letter bijection `β` with `b(β(x)) = β(a(x))`, when one exists.
pub fn isomorphism(a: &Substitution, b: &Substitution) -> Option<LetterMap> {
    if a.size() != b.size() || a.length() != b.length() {
        return None;
    }
    'start: for target in b.alphabet().letters() {
        let mut beta = vec![usize::MAX; a.size()];
        let mut used = vec![false; b.size()];
        beta[0] = target;
        used[target] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for (&u, &v) in a.image(x).iter().zip(b.image(beta[x])) {
                if beta[u] == usize::MAX {
                    if used[v] {
                        continue 'start;
                    }
                    beta[u] = v;
                    used[v] = true;
                    stack.push(u);
                } else if beta[u] != v {
                    continue 'start;
                }
            }
        }
        if beta.iter().all(|&v| v != usize::MAX) {
            return Some(beta);
        }
    }
    None
}

/// A letter bijection `β` with `β(L_a(n)) = L_b(n)` for every `n ≤ window`.
pub fn language_isomorphism(a: &Substitution, b: &Substitution, window: usize) -> Result<Option<LetterMap>> {
    if a.size() != b.size() {
        return Ok(None);
    }
    let la = LanguageTable::new(a, window.max(2))?;
    let lb = LanguageTable::new(b, window.max(2))?;
    for n in 1..=window {
        if la.words(n).len() != lb.words(n).len() {
            return Ok(None);
        }
    }
    let signature = |t: &LanguageTable, x: Letter| {
        let l2 = t.words(2);
        (
            l2.iter().filter(|w| w[0] == x).count(),
            l2.iter().filter(|w| w[1] == x).count(),
            l2.contains(&vec![x, x]),
        )
    };
    let sa: Vec<_> = a.alphabet().letters().map(|x| signature(&la, x)).collect();
    let sb: Vec<_> = b.alphabet().letters().map(|x| signature(&lb, x)).collect();
    let mut beta = Vec::new();
    let mut used = vec![false; b.size()];
    Ok(extend_bijection(&la, &lb, &sa, &sb, &mut beta, &mut used, window))
}

#[allow(clippy::too_many_arguments)]
fn extend_bijection<S: PartialEq>(
    la: &LanguageTable,
    lb: &LanguageTable,
    sa: &[S],
    sb: &[S],
    beta: &mut Vec<Letter>,
    used: &mut [bool],
    window: usize,
) -> Option<LetterMap> {
    let x = beta.len();
    if x == sa.len() {
        let ok = (1..=window).all(|n| {
            la.words(n)
                .iter()
                .all(|w| lb.contains(&w.iter().map(|&c| beta[c]).collect::<Word>()))
        });
        return ok.then(|| beta.clone());
    }
    for y in 0..sb.len() {
        if used[y] || sa[x] != sb[y] {
            continue;
        }
        beta.push(y);
        // two-letter words among the assigned letters must correspond
        let consistent = la
            .words(2)
            .iter()
            .filter(|w| w[0] <= x && w[1] <= x && (w[0] == x || w[1] == x))
            .all(|w| lb.contains(&[beta[w[0]], beta[w[1]]]));
        if consistent {
            used[y] = true;
            if let Some(found) = extend_bijection(la, lb, sa, sb, beta, used, window) {
                return Some(found);
            }
            used[y] = false;
        }
        beta.pop();
    }
    None
}

/// The default comparison window `max(3r², 2r|A|)`.
pub fn default_window(theta: &Substitution) -> usize {
    let r = theta.length();
    (3 * r * r).max(2 * r * theta.size())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootsDecomposition {
    pub k: usize,
    /// Power of the substitution the root was normalized against.
    pub n: usize,
    pub root: ShiftRoot,
    /// `η` on the original alphabet, as read off the root.
    pub eta: Substitution,
    /// `η` collapsed to a smaller conjugate presentation.
    pub eta_reduced: Substitution,
    pub compression: Compression,
    /// Letter automorphism of the compression used for the twist.
    pub tau_bar: LetterMap,
    /// Original letter to letter of the twisted compression.
    pub bijection: LetterMap,
    pub verified_window: usize,
}

impl RootsDecomposition {
    pub fn twisted(&self) -> Result<Substitution> {
        twist(&self.compression.theta, &self.tau_bar)
    }

    pub fn tau_bar_is_identity(&self) -> bool {
        self.tau_bar.iter().enumerate().all(|(i, &t)| i == t)
    }
}

/// The denominator `k` with `κ(Aut) = ⟨1/k⟩`, read off the classes found.
pub fn root_order(search: &AutomorphismSearch) -> usize {
    search
        .kappa_classes()
        .iter()
        .map(|&(_, den)| den as usize)
        .max()
        .unwrap_or(1)
}

/// One decomposition per root of the generating class; empty when the
/// κ-image is trivial.
pub fn roots_decomposition(theta: &Substitution, p_max: u32, window: Option<usize>) -> Result<Vec<RootsDecomposition>> {
    let ctx = VerifyContext::new(theta)?;
    let search = search_in(&ctx, p_max)?;
    decompose_with(theta, &search, window)
}

pub fn decompose_with(theta: &Substitution, search: &AutomorphismSearch, window: Option<usize>) -> Result<Vec<RootsDecomposition>> {
    let k = root_order(search);
    if k == 1 {
        return Ok(Vec::new());
    }
    let window = window.unwrap_or_else(|| default_window(theta));
    let roots = roots_from_search(theta, search, k)?;
    let mut out = Vec::new();
    for i in 0..roots.len() {
        let norm = normalize_phi(theta, &roots, i)?;
        let eta = extract_eta(&norm.theta_n, &norm.root)?;
        let eta_reduced = collapse_presentation(&eta, 2 * eta.size())?.0;
        let mut found = None;
        for base in [&eta_reduced, &eta] {
            let compression = compress(base, k)?;
            if compression.theta.size() != theta.size() {
                continue;
            }
            let candidates = match radius_zero_automorphisms(&compression.theta) {
                Ok(c) => c,
                Err(_) => vec![(0..compression.theta.size()).collect()],
            };
            for tau_bar in candidates {
                let Ok(twisted) = twist(&compression.theta, &tau_bar) else {
                    continue;
                };
                if let Some(bijection) = language_isomorphism(theta, &twisted, window)? {
                    found = Some((compression.clone(), tau_bar, bijection));
                    break;
                }
            }
            if found.is_some() {
                break;
            }
        }
        let (compression, tau_bar, bijection) = found.ok_or_else(|| {
            Error::Verification(format!(
                "no twist of the {k}-compression has the language of the input up to length {window}"
            ))
        })?;
        out.push(RootsDecomposition {
            k,
            n: norm.n,
            root: norm.root,
            eta,
            eta_reduced,
            compression,
            tau_bar,
            bijection,
            verified_window: window,
        });
    }
    Ok(out)
}
