//! Property checks shared by the property suite and the acceptance run.
//! Each check returns `Ok(false)` when it does not apply to the input.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use autoshift::alphabet::{invert, Letter, Word};
use autoshift::automorphism::labeling::build_labeling;
use autoshift::automorphism::search::search_automorphisms;
use autoshift::automorphism::verify::kappa_of;
use autoshift::automorphism::kernel::radius_zero_automorphisms;
use autoshift::compression::{compress, twist};
use autoshift::language::{is_finite, is_primitive, language, two_words};
use autoshift::odometer::{digits_with, Recognizer};
use autoshift::pair_graph::{is_asymptotic_disjoint, is_pair_aperiodic, minimal_sets, PairGraph};
use autoshift::fixed_points::is_strongly_injective;
use autoshift::{fixtures, Error, Substitution};

pub type Check = fn(&Substitution) -> Result<bool, String>;

pub const CHECKS: &[(&str, Check)] = &[
    ("diagonal absorption", diagonal_absorption),
    ("minimal sets closed under columns", minimal_sets_closed),
    ("labelling bijective on minimal sets", labeling_bijective),
    ("κ additive", kappa_additive),
    ("language invariant under power", language_of_power),
    ("compression sound", compression_sound),
    ("twist involutive", twist_involutive),
    ("odometer digits refine", odometer_refines),
    ("asymptotic disjointness oracle", disjointness_oracle),
    ("strong injectivity oracle", strong_injectivity_oracle),
];

/// Errors that mean "input outside the operation's domain".
fn inapplicable(e: &Error) -> bool {
    matches!(
        e,
        Error::Precondition(_)
            | Error::NotPrimitive
            | Error::NotInjective
            | Error::FiniteShift
            | Error::BoundExceeded(_)
            | Error::Height(..)
    )
}

macro_rules! applies {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) if inapplicable(&e) => return Ok(false),
            Err(e) => return Err(e.to_string()),
        }
    };
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn diagonal_absorption(theta: &Substitution) -> Result<bool, String> {
    let g = PairGraph::new(theta);
    for a in theta.alphabet().letters() {
        for d in 0..theta.length() {
            let (x, y) = g.step((a, a), d);
            ensure(x == y, || format!("({a},{a}) leaves the diagonal along {d}"))?;
        }
    }
    Ok(true)
}

fn column_image(theta: &Substitution, set: &[Letter], j: usize) -> Vec<Letter> {
    let s: BTreeSet<Letter> = set.iter().map(|&a| theta.col(j, a)).collect();
    s.into_iter().collect()
}

pub fn minimal_sets_closed(theta: &Substitution) -> Result<bool, String> {
    let ms = applies!(minimal_sets(theta));
    for m in &ms.sets {
        ensure(m.len() == ms.c, || format!("{m:?} has the wrong size"))?;
        for j in 0..theta.length() {
            let image = column_image(theta, m, j);
            ensure(ms.index(&image).is_some(), || format!("θ_{j}({m:?}) = {image:?} is not minimal"))?;
        }
    }
    Ok(true)
}

pub fn labeling_bijective(theta: &Substitution) -> Result<bool, String> {
    let ms = applies!(minimal_sets(theta));
    let lab = applies!(build_labeling(theta, &ms));
    for m in &ms.sets {
        let labels: BTreeSet<usize> = m.iter().map(|&a| lab.f[a]).collect();
        ensure(labels == (0..ms.c).collect(), || format!("f is not a bijection on {m:?}"))?;
    }
    Ok(true)
}

pub fn kappa_additive(theta: &Substitution) -> Result<bool, String> {
    if theta.size() > 4 {
        return Ok(false);
    }
    let search = applies!(search_automorphisms(theta, 1));
    let found: Vec<_> = search.kernel.iter().chain(&search.fractional).collect();
    for f in &found {
        for g in &found {
            let composed = applies!(f.rule.then(&g.rule, theta).and_then(|c| c.trim(theta)));
            let kappa = applies!(kappa_of(theta, &composed, 2));
            ensure(kappa == f.kappa + g.kappa, || {
                format!("κ = {kappa}, expected {} + {}", f.kappa, g.kappa)
            })?;
        }
    }
    Ok(true)
}

pub fn language_of_power(theta: &Substitution) -> Result<bool, String> {
    let sq = applies!(theta.power(2));
    for n in 1..=5 {
        ensure(applies!(language(theta, n)) == applies!(language(&sq, n)), || {
            format!("languages of length {n} differ")
        })?;
    }
    Ok(true)
}

pub fn compression_sound(theta: &Substitution) -> Result<bool, String> {
    if applies!(is_finite(theta)) {
        return Ok(false);
    }
    let c = applies!(compress(theta, 2));
    let blocks = applies!(language(theta, 2));
    for (b, block) in c.blocks.iter().enumerate() {
        ensure(blocks.contains(block), || format!("block {block:?} is not legal"))?;
        ensure(c.decompress(c.theta.image(b)) == theta.apply(block), || {
            format!("image of block {block:?} does not decompress to θ of the block")
        })?;
    }
    let legal = applies!(language(theta, 6));
    for w in applies!(language(&c.theta, 3)) {
        ensure(legal.contains(&c.decompress(&w)), || format!("{w:?} decompresses to an illegal word"))?;
    }
    Ok(true)
}

pub fn twist_involutive(theta: &Substitution) -> Result<bool, String> {
    if applies!(is_finite(theta)) {
        return Ok(false);
    }
    let mut applied = false;
    for tau in applies!(radius_zero_automorphisms(theta)) {
        let t = match twist(theta, &tau) {
            Ok(t) => t,
            Err(e) if inapplicable(&e) => continue,
            Err(e) => return Err(e.to_string()),
        };
        let back = twist(&t, &invert(&tau)).map_err(|e| format!("untwisting failed: {e}"))?;
        ensure(back == *theta, || format!("twisting back by {tau:?} does not recover θ"))?;
        applied = true;
    }
    Ok(applied)
}

pub fn odometer_refines(theta: &Substitution) -> Result<bool, String> {
    if !theta.is_injective() || applies!(is_finite(theta)) {
        return Ok(false);
    }
    let r = theta.length();
    let rec = match Recognizer::new(theta, 4 * theta.size() * theta.size() * r) {
        Ok(rec) => rec,
        // periodic points make recognizability fail
        Err(_) => return Ok(false),
    };
    let seed = applies!(two_words(theta)).into_iter().next().unwrap();
    let mut w: Word = seed;
    while w.len() < 3000 {
        w = theta.apply(&w);
    }
    let origin = w.len() / 2;
    let n = 2;
    let base = applies!(digits_with(&rec, r, &w, origin, n));
    for j in 0..(r * r + 1) {
        let d = applies!(digits_with(&rec, r, &w, origin + j, n));
        ensure(d.value() == (base.value() + j as u128) % d.modulus(), || {
            format!("shifting by {j} does not add {j}")
        })?;
        let finer = applies!(digits_with(&rec, r, &w, origin + j, n + 1));
        ensure(finer.digits[..n] == d.digits[..], || "refining changed lower digits".into())?;
    }
    Ok(true)
}

pub fn disjointness_oracle(theta: &Substitution) -> Result<bool, String> {
    let n = theta.size();
    if n > 4 || !is_pair_aperiodic(theta) {
        return Ok(false);
    }
    // merging happens within |A|(|A|−1) steps when it happens at all
    let mut depth = n * n + 2;
    while theta.length().pow(depth as u32) > 1 << 20 {
        depth -= 1;
    }
    ensure(depth >= n * (n - 1), || "oracle depth too small".into())?;
    for a in 0..n {
        for b in 0..n {
            let brute = theta.iterate(&[a], depth) != theta.iterate(&[b], depth);
            let fast = applies!(is_asymptotic_disjoint(theta, a, b));
            ensure(brute == fast, || format!("({a},{b}): oracle {brute}, library {fast}"))?;
        }
    }
    Ok(true)
}

/// Truncated one-sided periodic point: a prefix (or, reversed, a suffix)
/// of length `len` fixed by `θ^p`.
fn periodic_point(theta: &Substitution, seed: Letter, p: usize, len: usize, right: bool) -> Word {
    let mut w = vec![seed];
    loop {
        let mut next = w.clone();
        for _ in 0..p {
            next = theta.apply(&next);
            if right {
                next.truncate(len);
            } else if next.len() > len {
                next.drain(..next.len() - len);
            }
        }
        if next == w && w.len() == len {
            return w;
        }
        w = next;
    }
}

pub fn strong_injectivity_oracle(theta: &Substitution) -> Result<bool, String> {
    if !theta.is_injective() {
        return Ok(false);
    }
    let n = theta.size();
    let r = theta.length();
    // every cycle of a column map has length at most |A|
    let p = (1..=n).fold(1, num_lcm);
    let len = r.pow(5);
    let mut violated = false;
    for right in [true, false] {
        let edge = |w: &[Letter]| if right { w[0] } else { w[w.len() - 1] };
        let seeds: Vec<Letter> = theta
            .alphabet()
            .letters()
            .filter(|&a| {
                let mut x = a;
                for _ in 0..p {
                    let img = theta.image(x);
                    x = if right { img[0] } else { img[r - 1] };
                }
                x == a
            })
            .collect();
        let points: Vec<Word> = seeds.iter().map(|&a| periodic_point(theta, a, p, len, right)).collect();
        for (i, u) in points.iter().enumerate() {
            for v in &points[i + 1..] {
                let (du, dv) = if right { (&u[1..], &v[1..]) } else { (&u[..len - 1], &v[..len - 1]) };
                if du == dv && edge(u) != edge(v) {
                    violated = true;
                }
            }
        }
    }
    let fast = applies!(is_strongly_injective(theta));
    ensure(fast == !violated, || format!("oracle {}, library {fast}", !violated))?;
    Ok(true)
}

fn num_lcm(a: usize, b: usize) -> usize {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// A primitive substitution with at most 4 letters and length at most 3.
pub fn random_primitive(rng: &mut ChaCha8Rng) -> Substitution {
    let letters = "abcd";
    loop {
        let n = rng.random_range(2..=4);
        let r = rng.random_range(2..=3);
        let images: Vec<String> = (0..n)
            .map(|_| (0..r).map(|_| letters.as_bytes()[rng.random_range(0..n)] as char).collect())
            .collect();
        let refs: Vec<&str> = images.iter().map(String::as_str).collect();
        let theta = Substitution::from_images(&letters[..n], &refs).unwrap();
        if is_primitive(&theta) {
            return theta;
        }
    }
}

pub fn random_corpus(seed: u64, count: usize) -> Vec<Substitution> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_primitive(&mut rng)).collect()
}

pub fn fixture_corpus() -> Vec<(String, Substitution)> {
    fixtures::SUBSTITUTIONS
        .iter()
        .map(|(name, _)| (name.to_string(), fixtures::substitution(name).unwrap()))
        .filter(|(_, t)| is_primitive(t))
        .collect()
}

/// Runs every check; returns failures and the number of applicable runs
/// per check.
pub fn run_checks<'a>(inputs: impl IntoIterator<Item = (String, &'a Substitution)>) -> (Vec<String>, Vec<usize>) {
    let mut failures = Vec::new();
    let mut applied = vec![0; CHECKS.len()];
    for (name, theta) in inputs {
        for (i, (check, f)) in CHECKS.iter().enumerate() {
            match f(theta) {
                Ok(true) => applied[i] += 1,
                Ok(false) => {}
                Err(m) => failures.push(format!("{check} on {name}: {m}")),
            }
        }
    }
    (failures, applied)
}
