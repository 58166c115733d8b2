//! Automatic shifts: a substitution together with a letter coding.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Letter, Word};
use crate::error::{Error, Result};
use crate::fixed_points::height;
use crate::language::{coded_is_finite, is_primitive, language, WordSet};
use crate::pair_graph::{is_pair_aperiodic, pair_aperiodic_power, PairGraph};
use crate::rule::{LocalRule, ShiftLanguage};
use crate::sliding::SlidingBlockRep;
use crate::substitution::{canonical_classes, checked_pow, LetterCoding, Substitution};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomaticPair {
    pub theta: Substitution,
    pub tau: LetterCoding,
}

impl AutomaticPair {
    pub fn new(theta: Substitution, tau: LetterCoding) -> Result<Self> {
        if &tau.source != theta.alphabet() {
            return Err(Error::pre("coding source differs from the substitution alphabet"));
        }
        Ok(AutomaticPair { theta, tau })
    }

    pub fn identity(theta: &Substitution) -> Self {
        AutomaticPair {
            tau: LetterCoding::identity(theta.alphabet()),
            theta: theta.clone(),
        }
    }

    pub fn image_is_finite(&self) -> Result<bool> {
        coded_is_finite(&self.theta, &self.tau.map)
    }
}

impl ShiftLanguage for AutomaticPair {
    fn alphabet(&self) -> &Alphabet {
        &self.tau.target
    }

    fn words(&self, len: usize) -> Result<WordSet> {
        Ok(language(&self.theta, len)?
            .into_iter()
            .map(|w| self.tau.apply(&w))
            .collect())
    }
}

/// Every pair reachable from `(a, b)` has equal coding images.
pub fn indistinguishable(pair: &AutomaticPair, a: Letter, b: Letter) -> bool {
    let tau = &pair.tau.map;
    PairGraph::new(&pair.theta)
        .reachable((a, b))
        .keys()
        .all(|&(x, y)| tau[x] == tau[y])
}

/// Indistinguishability classes by partition refinement, numbered by first
/// member.
pub fn indistinguishability_classes(pair: &AutomaticPair) -> Vec<usize> {
    let theta = &pair.theta;
    let mut class = canonical_classes(&pair.tau.map);
    loop {
        let signatures: Vec<Vec<usize>> = theta
            .alphabet()
            .letters()
            .map(|a| {
                std::iter::once(class[a])
                    .chain(theta.image(a).iter().map(|&b| class[b]))
                    .collect()
            })
            .collect();
        let mut ids: BTreeMap<&Vec<usize>, usize> = BTreeMap::new();
        let raw: Vec<usize> = signatures
            .iter()
            .map(|s| {
                let n = ids.len();
                *ids.entry(s).or_insert(n)
            })
            .collect();
        let next = canonical_classes(&raw);
        if next == class {
            return class;
        }
        class = next;
    }
}

/// One replayable transformation of a pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, schemars::JsonSchema)]
#[serde(rename_all = "snake_case", tag = "step")]
pub enum Step {
    Power { exponent: usize },
    Merge { classes: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, schemars::JsonSchema)]
pub struct Presentation {
    pub power: usize,
    /// Letters of the powered substitution merged into each new letter.
    pub classes: Vec<Vec<Letter>>,
    pub theta_star: Substitution,
    pub tau_star: LetterCoding,
    pub steps: Vec<Step>,
    /// Smallest `m` such that the coding of a legal `(2m+1)`-word fixes its
    /// centre letter, when checked.
    pub injectivity_radius: Option<usize>,
    /// Largest radius tried for the injectivity check.
    pub radius_bound: usize,
}

impl Presentation {
    /// Re-runs the recorded steps on `pair` and compares the outcome.
    pub fn replay(&self, pair: &AutomaticPair) -> Result<()> {
        let mut theta = pair.theta.clone();
        let mut tau = pair.tau.clone();
        for step in &self.steps {
            match step {
                Step::Power { exponent } => theta = theta.power(*exponent)?,
                Step::Merge { classes } => {
                    let mut class_of = vec![usize::MAX; theta.size()];
                    for (k, members) in self.classes.iter().enumerate() {
                        for &a in members {
                            *class_of.get_mut(a).ok_or(Error::UnknownLetter(a))? = k;
                        }
                    }
                    if class_of.contains(&usize::MAX) || classes.len() != self.classes.len() {
                        return Err(Error::Verification("merge step does not cover the alphabet".into()));
                    }
                    let (q, _) = theta.quotient(&class_of)?;
                    if q.alphabet().names() != classes.as_slice() {
                        return Err(Error::Verification("merge step names differ".into()));
                    }
                    let map = q
                        .alphabet()
                        .letters()
                        .map(|c| tau.map[self.classes[c][0]])
                        .collect();
                    tau = LetterCoding::new(q.alphabet().clone(), tau.target.clone(), map)?;
                    theta = q;
                }
            }
        }
        if theta != self.theta_star || tau != self.tau_star {
            return Err(Error::Verification("replayed presentation differs".into()));
        }
        Ok(())
    }

    pub fn pair(&self) -> AutomaticPair {
        AutomaticPair {
            theta: self.theta_star.clone(),
            tau: self.tau_star.clone(),
        }
    }
}

/// Quotient by indistinguishability. The input must be primitive and
/// pair-aperiodic; both properties are re-checked on the output.
pub fn minimize(pair: &AutomaticPair) -> Result<Presentation> {
    if !is_primitive(&pair.theta) {
        return Err(Error::NotPrimitive);
    }
    if !is_pair_aperiodic(&pair.theta) {
        return Err(Error::pre("substitution is not pair-aperiodic"));
    }
    let class_of = indistinguishability_classes(pair);
    let (q, _) = pair.theta.quotient(&class_of)?;
    let n = q.size();
    let mut classes = vec![Vec::new(); n];
    for (a, &k) in class_of.iter().enumerate() {
        classes[k].push(a);
    }
    let map = classes.iter().map(|m| pair.tau.map[m[0]]).collect();
    let tau_star = LetterCoding::new(q.alphabet().clone(), pair.tau.target.clone(), map)?;
    if !is_primitive(&q) {
        return Err(Error::Verification("minimized substitution is not primitive".into()));
    }
    if !is_pair_aperiodic(&q) {
        return Err(Error::Verification("minimized substitution is not pair-aperiodic".into()));
    }
    let steps = if n < pair.theta.size() {
        vec![Step::Merge {
            classes: q.alphabet().names().to_vec(),
        }]
    } else {
        Vec::new()
    };
    Ok(Presentation {
        power: 1,
        classes,
        theta_star: q,
        tau_star,
        steps,
        injectivity_radius: None,
        radius_bound: 0,
    })
}

/// Smallest `m ≤ max_m` such that legal `(2m+1)`-words with equal coding
/// images share their centre letter. Such an `m` makes the coding
/// injective on the shift.
pub fn injectivity_radius(pair: &AutomaticPair, max_m: usize) -> Result<Option<usize>> {
    for m in 0..=max_m {
        let mut centre: BTreeMap<Word, Letter> = BTreeMap::new();
        let mut ok = true;
        for w in language(&pair.theta, 2 * m + 1)? {
            let img = pair.tau.apply(&w);
            if *centre.entry(img).or_insert(w[m]) != w[m] {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Power, then minimize, then certify injectivity of the coding.
pub fn bijective_presentation(pair: &AutomaticPair) -> Result<Presentation> {
    if pair.image_is_finite()? {
        return Err(Error::FiniteShift);
    }
    let ap = pair_aperiodic_power(&pair.theta)?;
    let powered = AutomaticPair {
        theta: ap.theta,
        tau: pair.tau.clone(),
    };
    let mut pres = minimize(&powered)?;
    pres.power = ap.power;
    if ap.power > 1 {
        pres.steps.insert(0, Step::Power { exponent: ap.power });
    }
    let n = pres.theta_star.size();
    let r = pres.theta_star.length();
    let bound = 2 * n * n * r * r;
    pres.radius_bound = bound;
    pres.injectivity_radius = injectivity_radius(&pres.pair(), bound)?;
    if pres.injectivity_radius.is_none() {
        return Err(Error::Verification(format!(
            "coding of the minimal pair is not injective on windows of radius {bound}"
        )));
    }
    Ok(pres)
}

/// Two nested families of legal words, `θ^{kn}(a)` and `θ^{kn}(b)`, that
/// differ only at one interior position and have equal coding images.
/// Their limits are two points with the same image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonInjectivityWitness {
    pub letters: (Letter, Letter),
    pub power: usize,
    /// The single index where `θ^n(a)` and `θ^n(b)` differ; the letters
    /// there are `a` and `b` again.
    pub index: usize,
    pub first: Word,
    pub second: Word,
}

pub fn noninjectivity_witness(pair: &AutomaticPair, max_power: usize) -> Option<NonInjectivityWitness> {
    let theta = &pair.theta;
    let tau = &pair.tau.map;
    for n in 1..=max_power {
        if checked_pow(theta.length(), n).is_none_or(|len| len > 1 << 16) {
            break;
        }
        for a in theta.alphabet().letters() {
            for b in a + 1..theta.size() {
                if tau[a] != tau[b] {
                    continue;
                }
                let u = theta.iterate(&[a], n);
                let v = theta.iterate(&[b], n);
                let diff: Vec<usize> = (0..u.len()).filter(|&i| u[i] != v[i]).collect();
                if let [j] = diff[..] {
                    if j > 0 && j + 1 < u.len() && (u[j], v[j]) == (a, b) {
                        return Some(NonInjectivityWitness {
                            letters: (a, b),
                            power: n,
                            index: j,
                            first: u,
                            second: v,
                        });
                    }
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, schemars::JsonSchema)]
pub struct MefDescriptor {
    pub r: usize,
    /// Height of the bijective presentation.
    pub h_bar: usize,
    /// Height of the substitution.
    pub h: usize,
}

/// `(ℤ_r × ℤ/h̄ℤ, +(1,1))` as the pair `(r, h̄)`, with `h̄ | h` checked.
pub fn mef_descriptor(pair: &AutomaticPair) -> Result<MefDescriptor> {
    let pres = bijective_presentation(pair)?;
    let h_bar = height(&pres.theta_star)?;
    let h = height(&pair.theta)?;
    if h % h_bar != 0 {
        return Err(Error::Verification(format!("height {h_bar} does not divide {h}")));
    }
    Ok(MefDescriptor {
        r: pair.theta.length(),
        h_bar,
        h,
    })
}

/// A sliding block factor as a letter coding of the block presentation
/// `θ^(w)`, where `w` is the rule width. Block letter `i` stands for the
/// window `x[i, i+w)`.
pub fn factor_to_radius_zero(theta: &Substitution, rule: &LocalRule) -> Result<(SlidingBlockRep, AutomaticPair)> {
    rule.check_total(theta)?;
    let rep = SlidingBlockRep::new(theta, rule.width(), 0)?;
    let map = rep
        .blocks
        .iter()
        .map(|b| rule.eval(b).expect("rule is total"))
        .collect();
    let tau = LetterCoding::new(rep.theta.alphabet().clone(), rule.target.clone(), map)?;
    let pair = AutomaticPair::new(rep.theta.clone(), tau)?;
    Ok((rep, pair))
}

/// For each legal target word of length `width`, the number of legal source
/// words of length `width + ℓ + ρ` mapped onto it; returns the smallest and
/// largest count.
pub fn fiber_profile(lang: &impl ShiftLanguage, rule: &LocalRule, width: usize) -> Result<(usize, usize)> {
    let mut counts: BTreeMap<Word, BTreeSet<Word>> = BTreeMap::new();
    for w in lang.words(width + rule.width() - 1)? {
        let img = rule.apply(&w).ok_or(Error::RuleNotTotal { missing: 1 })?;
        counts.entry(img).or_default().insert(w);
    }
    let sizes = counts.values().map(BTreeSet::len);
    Ok((sizes.clone().min().unwrap_or(0), sizes.max().unwrap_or(0)))
}

/// A sliding block code from `X_θ` checked against a target substitution
/// shift on every word length up to `width`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorMapCheck {
    pub width: usize,
    /// Every target word is hit.
    pub onto: bool,
    /// Smallest and largest number of preimages of a target word of length
    /// `width`.
    pub fibers: (usize, usize),
}

/// Errors with the first image word that is not in the target language.
pub fn verify_factor_map(theta: &Substitution, rule: &LocalRule, target: &Substitution, width: usize) -> Result<FactorMapCheck> {
    if rule.target != *target.alphabet() {
        return Err(Error::pre("rule output alphabet differs from the target"));
    }
    let mut onto = true;
    for n in 1..=width {
        let expected = language(target, n)?;
        let mut image = WordSet::new();
        for w in language(theta, n + rule.width() - 1)? {
            let img = rule.apply(&w).ok_or(Error::RuleNotTotal { missing: 1 })?;
            if !expected.contains(&img) {
                return Err(Error::Verification(format!(
                    "{} maps to {}, outside the target language",
                    theta.alphabet().render(&w),
                    target.alphabet().render(&img)
                )));
            }
            image.insert(img);
        }
        onto &= image.len() == expected.len();
    }
    Ok(FactorMapCheck {
        width,
        onto,
        fibers: fiber_profile(theta, rule, width)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(letters: &str, imgs: &[&str]) -> Substitution {
        Substitution::from_images(letters, imgs).unwrap()
    }

    fn coded(theta: &Substitution, text: &str) -> AutomaticPair {
        let tau = LetterCoding::parse(text, theta.alphabet()).unwrap();
        AutomaticPair::new(theta.clone(), tau).unwrap()
    }

    fn theta_prime() -> AutomaticPair {
        let t = sub("abcd", &["abd", "aad", "add", "acd"]);
        coded(&t, "a => x\nb => y\nc => x\nd => z\n")
    }

    #[test]
    fn squaring_reveals_indistinguishable_pair() {
        let p = theta_prime();
        assert!(!indistinguishable(&p, 0, 2));
        assert_eq!(indistinguishability_classes(&p), vec![0, 1, 2, 3]);
        let sq = AutomaticPair::new(p.theta.power(2).unwrap(), p.tau.clone()).unwrap();
        assert!(indistinguishable(&sq, 0, 2));
        assert!(indistinguishable(&sq, 1, 1));
    }

    #[test]
    fn refinement_matches_bfs() {
        let p = theta_prime();
        let sq = AutomaticPair::new(p.theta.power(2).unwrap(), p.tau.clone()).unwrap();
        for pair in [&p, &sq] {
            let classes = indistinguishability_classes(pair);
            for a in 0..4 {
                for b in 0..4 {
                    assert_eq!(classes[a] == classes[b], indistinguishable(pair, a, b));
                }
            }
        }
    }

    #[test]
    fn pipeline_on_theta_prime() {
        let p = theta_prime();
        let w = noninjectivity_witness(&p, 4).unwrap();
        assert_eq!((w.letters, w.power, w.index), ((0, 2), 2, 4));
        let pres = bijective_presentation(&p).unwrap();
        assert_eq!(pres.power, 2);
        assert_eq!(pres.theta_star.size(), 3);
        let named = pres
            .theta_star
            .relabel(pres.tau_star.target.clone(), &pres.tau_star.map)
            .unwrap();
        assert_eq!(named, sub("xyz", &["xyzxxzxxz", "xyzxyzxxz", "xyzxzzxxz"]));
        assert!(pres.injectivity_radius.is_some());
        pres.replay(&p).unwrap();
        assert!(noninjectivity_witness(&pres.pair(), 3).is_none());
    }

    #[test]
    fn merging_example() {
        let t = sub("abc", &["aac", "bca", "bba"]);
        let p = coded(&t, "a => x\nb => y\nc => y\n");
        // (b,c) has period 2, so minimize itself wants the square
        assert!(minimize(&p).is_err());
        let classes = indistinguishability_classes(&p);
        assert_eq!(classes, vec![0, 1, 1]);
        let (q, _) = t.quotient(&classes).unwrap();
        let named = q.relabel(Alphabet::from_chars("xy").unwrap(), &[0, 1]).unwrap();
        assert_eq!(named, sub("xy", &["xxy", "yyx"]));

        let pres = bijective_presentation(&p).unwrap();
        assert_eq!(pres.power, 2);
        let named = pres
            .theta_star
            .relabel(pres.tau_star.target.clone(), &pres.tau_star.map)
            .unwrap();
        assert_eq!(named, sub("xy", &["xxy", "yyx"]).power(2).unwrap());
        assert_eq!(minimize(&pres.pair()).unwrap().theta_star, pres.theta_star);
    }

    #[test]
    fn identity_coding_is_unchanged() {
        let tm = sub("ab", &["ab", "ba"]);
        let pres = bijective_presentation(&AutomaticPair::identity(&tm)).unwrap();
        assert_eq!(pres.theta_star, tm);
        assert!(pres.steps.is_empty());
        let mef = mef_descriptor(&AutomaticPair::identity(&tm)).unwrap();
        assert_eq!((mef.r, mef.h_bar), (2, 1));
    }

    #[test]
    fn finite_image_rejected() {
        let tm = sub("ab", &["ab", "ba"]);
        let p = coded(&tm, "a => x\nb => x\n");
        assert_eq!(bijective_presentation(&p).unwrap_err(), Error::FiniteShift);
    }

    #[test]
    fn three_to_one_factor_map() {
        let t = sub("abc", &["abb", "bac", "cca"]);
        let eta = sub("xyz", &["yxz", "yxx", "yxy"]);
        let rule = LocalRule::parse("radius 1 0\n  a b c\na z y x\nb y x z\nc x z y\n", t.alphabet(), Some(eta.alphabet())).unwrap();
        let check = verify_factor_map(&t, &rule, &eta, 6).unwrap();
        assert!(check.onto);
        assert_eq!(check.fibers, (3, 3));
        let mut bad = rule.clone();
        bad.table.insert(vec![0, 0], 0);
        assert!(verify_factor_map(&t, &bad, &eta, 6).is_err());
    }
}
