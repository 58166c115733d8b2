//! The labelling `f: A → {0, …, c−1}` read through a minimal set, the
//! column permutations `σ_{M,j}` and the group `G(θ)` they generate.

use serde::{Deserialize, Serialize};

use crate::alphabet::{invert, is_permutation, permutation_order, Letter, LetterMap};
use crate::automorphism::perm::{perm_notation, Perm, PermGroup};
use crate::error::{Error, Result};
use crate::pair_graph::{minimal_sets, MinimalSets};
use crate::substitution::Substitution;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labeling {
    /// Index into the sorted minimal sets.
    pub m0: usize,
    /// Digits of `j0`, most significant first; `k0` is their number. The
    /// column map along them sends `A` onto `M0` and fixes `M0` pointwise.
    pub digits: Vec<usize>,
    /// `f0` is the sorted order of `M0`; `f(a) = f0(θ^{k0}(a)_{j0})`.
    pub f: Vec<usize>,
}

impl Labeling {
    pub fn k0(&self) -> usize {
        self.digits.len()
    }
}

/// Labelling through the minimal set reached first by the subset closure.
pub fn build_labeling(theta: &Substitution, ms: &MinimalSets) -> Result<Labeling> {
    labeling_through(theta, ms, ms.first)
}

/// Labelling through a chosen minimal set.
pub fn labeling_through(theta: &Substitution, ms: &MinimalSets, m0: usize) -> Result<Labeling> {
    let set = &ms.sets[m0];
    let path = &ms.paths[m0];
    let col = theta.column_map(path)?;
    // the column map permutes M0; repeat it until it fixes M0 pointwise
    let pos = |a: Letter| set.binary_search(&a).expect("image lies in M0");
    let on_set: Vec<usize> = set.iter().map(|&a| pos(col[a])).collect();
    if !is_permutation(&on_set) {
        return Err(Error::Verification("column map does not permute M0".into()));
    }
    let m = permutation_order(&on_set);
    let digits: Vec<usize> = path.iter().copied().cycle().take(path.len() * m).collect();
    let full = theta.column_map(&digits)?;
    if set.iter().any(|&a| full[a] != a) {
        return Err(Error::Verification("labelling word does not fix M0".into()));
    }
    let f = theta.alphabet().letters().map(|a| pos(full[a])).collect();
    let lab = Labeling { m0, digits, f };
    for s in &ms.sets {
        if !is_bijective_on(&lab.f, s) {
            return Err(Error::Verification("f is not a bijection on a minimal set".into()));
        }
    }
    Ok(lab)
}

fn is_bijective_on(f: &[usize], set: &[Letter]) -> bool {
    let img: Vec<usize> = set.iter().map(|&a| f[a]).collect();
    is_permutation(&img)
}

/// `(f|_M)^{-1}`.
pub fn inverse_on(f: &[usize], set: &[Letter]) -> Vec<Letter> {
    let mut inv = vec![0; set.len()];
    for &a in set {
        inv[f[a]] = a;
    }
    inv
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaPerm {
    pub set: usize,
    pub digit: usize,
    pub perm: Perm,
}

/// `σ_{M,j}` defined by `σ_{M,j}^{-1}(f(a)) = f(θ(a)_j)` for `a ∈ M`.
pub fn sigma_perms(theta: &Substitution, ms: &MinimalSets, lab: &Labeling) -> Result<Vec<SigmaPerm>> {
    let mut out = Vec::new();
    for (i, set) in ms.sets.iter().enumerate() {
        for j in 0..theta.length() {
            let mut inv = vec![usize::MAX; ms.c];
            for &a in set {
                inv[lab.f[a]] = lab.f[theta.col(j, a)];
            }
            if !is_permutation(&inv) {
                return Err(Error::Verification(format!("σ at set {i}, digit {j} is not a permutation")));
            }
            out.push(SigmaPerm {
                set: i,
                digit: j,
                perm: invert(&inv),
            });
        }
    }
    Ok(out)
}

/// Everything `G(θ)` is computed from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupData {
    pub minimal: MinimalSets,
    pub labeling: Labeling,
    pub sigmas: Vec<SigmaPerm>,
    pub group: PermGroup,
}

impl GroupData {
    pub fn new(theta: &Substitution) -> Result<Self> {
        let minimal = minimal_sets(theta)?;
        let labeling = build_labeling(theta, &minimal)?;
        GroupData::with_labeling(theta, minimal, labeling)
    }

    pub fn with_labeling(theta: &Substitution, minimal: MinimalSets, labeling: Labeling) -> Result<Self> {
        let sigmas = sigma_perms(theta, &minimal, &labeling)?;
        let names = sigmas
            .iter()
            .map(|s| {
                format!(
                    "σ[{},{}]",
                    minimal.tilde_theta.alphabet().name(s.set),
                    s.digit
                )
            })
            .collect();
        let group = PermGroup::generate(minimal.c, sigmas.iter().map(|s| s.perm.clone()).collect(), names)?;
        Ok(GroupData {
            minimal,
            labeling,
            sigmas,
            group,
        })
    }

    pub fn sigma(&self, set: usize, digit: usize) -> &Perm {
        &self.sigmas.iter().find(|s| s.set == set && s.digit == digit).unwrap().perm
    }

    /// `σ_{M,j}` in cycle notation, by set index and digit.
    pub fn sigma_table(&self) -> Vec<(String, usize, String)> {
        self.sigmas
            .iter()
            .map(|s| {
                (
                    self.minimal.tilde_theta.alphabet().name(s.set).to_string(),
                    s.digit,
                    perm_notation(&s.perm),
                )
            })
            .collect()
    }
}

pub fn group_g(theta: &Substitution) -> Result<PermGroup> {
    Ok(GroupData::new(theta)?.group)
}

/// The map `a ↦ f(a)` as a letter map into `{0, …, c−1}`.
pub fn labeling_map(lab: &Labeling) -> LetterMap {
    lab.f.clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(letters: &str, imgs: &[&str]) -> Substitution {
        Substitution::from_images(letters, imgs).unwrap()
    }

    #[test]
    fn centraliser_larger_example() {
        let t = sub("abc", &["aac", "bba", "bca"]);
        let g = GroupData::new(&t).unwrap();
        assert_eq!(g.minimal.sets[g.labeling.m0], vec![0, 1]);
        assert_eq!(g.labeling.f, vec![0, 1, 1]);
        let swap = vec![1, 0];
        let id = vec![0, 1];
        for (set, digit, expect) in [(0, 2, &swap), (0, 0, &id), (0, 1, &id), (1, 2, &swap), (1, 0, &id), (1, 1, &id)] {
            assert_eq!(g.sigma(set, digit), expect, "set {set} digit {digit}");
        }
        assert_eq!(g.group.order(), 2);
    }

    #[test]
    fn thue_morse() {
        let t = sub("ab", &["ab", "ba"]);
        let g = GroupData::new(&t).unwrap();
        assert_eq!(g.sigma(0, 0), &vec![0, 1]);
        assert_eq!(g.sigma(0, 1), &vec![1, 0]);
    }

    #[test]
    fn coincidence_is_trivial() {
        let g = GroupData::new(&sub("xy", &["xy", "xx"])).unwrap();
        assert_eq!(g.minimal.c, 1);
        assert_eq!(g.group.order(), 1);
    }

    #[test]
    fn other_labelings_conjugate() {
        let t = sub("abc", &["abb", "bac", "cca"]);
        let base = GroupData::new(&t).unwrap();
        for m0 in 0..base.minimal.sets.len() {
            let lab = labeling_through(&t, &base.minimal, m0).unwrap();
            let other = GroupData::with_labeling(&t, base.minimal.clone(), lab).unwrap();
            assert!(base.group.conjugator_to(&other.group).is_some());
        }
    }
}
