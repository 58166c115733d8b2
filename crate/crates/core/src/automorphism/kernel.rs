//! Radius-0 automorphisms, `d*`-asymptotic equality, reduced substitutions
//! and the essential centralizer.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::alphabet::{compose, identity_map, is_permutation, Alphabet, Letter, LetterMap, Word};
use crate::automatic::{indistinguishability_classes, AutomaticPair};
use crate::automorphism::iterate_jump;
use crate::automorphism::labeling::{inverse_on, GroupData};
use crate::automorphism::perm::{Perm, PermGroup, DEFAULT_DEGREE_CAP};
use crate::error::{Error, Result};
use crate::language::two_words;
use crate::pair_graph::PairGraph;
use crate::substitution::{LetterCoding, Substitution};

/// The column maps of `θ^n`.
pub fn column_maps(theta: &Substitution, n: usize) -> BTreeSet<LetterMap> {
    let columns: Vec<LetterMap> = (0..theta.length()).map(|j| theta.column(j)).collect();
    iterate_jump(BTreeSet::from([identity_map(theta.size())]), n, |set| {
        set.iter()
            .flat_map(|s| columns.iter().map(move |c| compose(c, s)))
            .collect()
    })
}

/// `τ` keeps legal two-letter words legal and commutes with every column
/// of `θ^n`; together this makes `τ` a letter-to-letter automorphism.
pub fn is_language_automorphism(theta: &Substitution, tau: &[Letter], n: usize) -> Result<bool> {
    if tau.len() != theta.size() || !is_permutation(tau) {
        return Ok(false);
    }
    let l2 = two_words(theta)?;
    if l2.iter().any(|w| !l2.contains(&vec![tau[w[0]], tau[w[1]]])) {
        return Ok(false);
    }
    Ok(column_maps(theta, n)
        .iter()
        .all(|s| compose(tau, s) == compose(s, tau)))
}

fn factorial(c: usize) -> usize {
    (1..=c).product()
}

/// Lifts `τ′ ∈ C(G)` to a letter map through every minimal set, when the
/// lifts agree.
pub fn lift_centralizer_element(data: &GroupData, tau_prime: &[usize], n: usize) -> Option<LetterMap> {
    let mut tau = vec![usize::MAX; n];
    for set in &data.minimal.sets {
        let inv = inverse_on(&data.labeling.f, set);
        for &a in set {
            let b = inv[tau_prime[data.labeling.f[a]]];
            if tau[a] != usize::MAX && tau[a] != b {
                return None;
            }
            tau[a] = b;
        }
    }
    Some(tau)
}

/// All letter permutations that are automorphisms, as lifts of the
/// centralizer of `G(θ)`, sorted; the identity is always present.
pub fn radius_zero_automorphisms(theta: &Substitution) -> Result<Vec<LetterMap>> {
    let data = GroupData::new(theta)?;
    radius_zero_from(theta, &data)
}

pub fn radius_zero_from(theta: &Substitution, data: &GroupData) -> Result<Vec<LetterMap>> {
    if !theta.is_injective() {
        return Err(Error::NotInjective);
    }
    let cent = data.group.centralizer(DEFAULT_DEGREE_CAP)?;
    let n = factorial(data.minimal.c);
    let mut out = Vec::new();
    for tp in &cent.elements {
        if let Some(tau) = lift_centralizer_element(data, tp, theta.size()) {
            if is_language_automorphism(theta, &tau, n)? {
                out.push(tau);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Fraction of disagreeing positions, as `(disagreements, length)` in
/// lowest terms.
pub fn dstar(u: &[Letter], v: &[Letter]) -> Result<(usize, usize)> {
    if u.len() != v.len() {
        return Err(Error::pre("d* needs words of equal length"));
    }
    if u.is_empty() {
        return Ok((0, 1));
    }
    let diff = u.iter().zip(v).filter(|(a, b)| a != b).count();
    let g = diff.gcd(&u.len());
    Ok((diff / g, u.len() / g))
}

/// Every pair reachable from `(a, b)` has equal labels; equivalently the
/// `d*`-distance of `θ^k(a)` and `θ^k(b)` tends to zero.
pub fn dstar_asymptotically_equal(theta: &Substitution, f: &[usize], a: Letter, b: Letter) -> bool {
    PairGraph::new(theta)
        .reachable((a, b))
        .keys()
        .all(|&(x, y)| f[x] == f[y])
}

fn label_pair(theta: &Substitution, data: &GroupData) -> Result<AutomaticPair> {
    let names: Vec<String> = (1..=data.minimal.c).map(|i| i.to_string()).collect();
    let coding = LetterCoding::new(theta.alphabet().clone(), Alphabet::new(names)?, data.labeling.f.clone())?;
    AutomaticPair::new(theta.clone(), coding)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    pub theta: Substitution,
    pub coding: LetterCoding,
    /// `π` with `π G(θ) π⁻¹ = G(θ′)`.
    pub conjugator: Perm,
}

impl Reduction {
    pub fn is_identity(&self) -> bool {
        self.coding.is_injective()
    }
}

/// Quotient by `d*`-asymptotic equality. The result is checked to be
/// reduced and to have the same `G` up to relabelling.
pub fn reduce(theta: &Substitution) -> Result<Reduction> {
    let data = GroupData::new(theta)?;
    let classes = indistinguishability_classes(&label_pair(theta, &data)?);
    let (q, coding) = theta.quotient(&classes)?;
    let qdata = GroupData::new(&q)?;
    let again = indistinguishability_classes(&label_pair(&q, &qdata)?);
    if again.iter().enumerate().any(|(i, &c)| i != c) {
        return Err(Error::Verification("quotient is not reduced".into()));
    }
    let conjugator = data
        .group
        .conjugator_to(&qdata.group)
        .ok_or_else(|| Error::Verification("reduction changed G".into()))?;
    Ok(Reduction {
        theta: q,
        coding,
        conjugator,
    })
}

pub fn is_reduced(theta: &Substitution) -> Result<bool> {
    let data = GroupData::new(theta)?;
    let classes = indistinguishability_classes(&label_pair(theta, &data)?);
    Ok(classes.iter().enumerate().all(|(i, &c)| i == c))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralizerLift {
    pub element: Perm,
    /// The radius-0 automorphism above it, when there is one.
    pub lift: Option<LetterMap>,
}

/// `G(θ)`, its centralizer (the roots of the identity in the essential
/// centralizer) and which of them are realized by radius-0 automorphisms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EssentialCentralizer {
    pub group: PermGroup,
    pub centralizer: PermGroup,
    pub topological: Vec<LetterMap>,
    pub lifts: Vec<CentralizerLift>,
    pub measurable_only: Vec<Perm>,
    pub reduced: bool,
}

pub fn essential_centralizer_roots(theta: &Substitution) -> Result<EssentialCentralizer> {
    let data = GroupData::new(theta)?;
    let centralizer = data.group.centralizer(DEFAULT_DEGREE_CAP)?;
    let topological = radius_zero_from(theta, &data)?;
    let n = factorial(data.minimal.c);
    let mut lifts = Vec::new();
    for e in &centralizer.elements {
        let lift = match lift_centralizer_element(&data, e, theta.size()) {
            Some(t) if is_language_automorphism(theta, &t, n)? => Some(t),
            _ => None,
        };
        lifts.push(CentralizerLift {
            element: e.clone(),
            lift,
        });
    }
    let measurable_only: Vec<Perm> = lifts
        .iter()
        .filter(|l| l.lift.is_none())
        .map(|l| l.element.clone())
        .collect();
    let reduced = is_reduced(theta)?;
    if reduced && !measurable_only.is_empty() {
        return Err(Error::Verification(
            "a centralizer element of a reduced substitution does not lift".into(),
        ));
    }
    Ok(EssentialCentralizer {
        group: data.group,
        centralizer,
        topological,
        lifts,
        measurable_only,
        reduced,
    })
}

/// Word image under a letter map.
pub fn map_word(tau: &[Letter], w: &[Letter]) -> Word {
    w.iter().map(|&a| tau[a]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(letters: &str, imgs: &[&str]) -> Substitution {
        Substitution::from_images(letters, imgs).unwrap()
    }

    #[test]
    fn centraliser_larger_has_no_kernel() {
        let t = sub("abc", &["aac", "bba", "bca"]);
        assert_eq!(radius_zero_automorphisms(&t).unwrap(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn thue_morse_swap() {
        let t = sub("ab", &["ab", "ba"]);
        assert_eq!(radius_zero_automorphisms(&t).unwrap(), vec![vec![0, 1], vec![1, 0]]);
        let e = essential_centralizer_roots(&t).unwrap();
        assert_eq!(e.centralizer.order(), 2);
        assert!(e.measurable_only.is_empty());
    }

    #[test]
    fn dstar_values() {
        assert_eq!(dstar(&[0, 1, 2], &[0, 1, 2]).unwrap(), (0, 1));
        assert_eq!(dstar(&[0, 1], &[1, 0]).unwrap(), (1, 1));
        assert_eq!(dstar(&[0, 0, 1], &[0, 1, 1]).unwrap(), (1, 3));
        assert!(dstar(&[0], &[0, 1]).is_err());
    }

    #[test]
    fn reduction_merges_b_and_c() {
        let t = sub("abc", &["aac", "bca", "bba"]);
        let red = reduce(&t).unwrap();
        assert_eq!(red.coding.map, vec![0, 1, 1]);
        let named = red
            .theta
            .relabel(Alphabet::from_chars("xy").unwrap(), &[0, 1])
            .unwrap();
        assert_eq!(named, sub("xy", &["xxy", "yyx"]));
        let e = essential_centralizer_roots(&t).unwrap();
        assert_eq!(e.topological.len(), 1);
        assert_eq!(e.measurable_only, vec![vec![1, 0]]);
        assert!(!e.reduced);
    }
}
