//! Permutation groups on `{0, …, c−1}`, printed 1-based.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::alphabet::{compose, identity_map, invert, is_permutation};
use crate::error::{Error, Result};

pub type Perm = Vec<usize>;

/// Largest degree for brute force over the symmetric group.
pub const DEFAULT_DEGREE_CAP: usize = 8;

/// Cycle notation on `1..=c`: `(12)(345)`, or `id`.
pub fn perm_notation(p: &[usize]) -> String {
    let sep = if p.len() >= 10 { "," } else { "" };
    let mut out = String::new();
    let mut seen = vec![false; p.len()];
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut a = start;
        while !seen[a] {
            seen[a] = true;
            cycle.push((a + 1).to_string());
            a = p[a];
        }
        out.push('(');
        out.push_str(&cycle.join(sep));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("id");
    }
    out
}

/// All permutations of `0..n` in lexicographic order.
pub fn symmetric_group(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut p = identity_map(n);
    loop {
        out.push(p.clone());
        // next permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

pub fn is_even(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0;
    for start in 0..p.len() {
        let mut len = 0;
        let mut a = start;
        while !seen[a] {
            seen[a] = true;
            a = p[a];
            len += 1;
        }
        transpositions += len.max(1) - 1;
    }
    transpositions % 2 == 0
}

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermGroup {
    pub degree: usize,
    pub generators: Vec<Perm>,
    pub generator_names: Vec<String>,
    /// Sorted.
    pub elements: Vec<Perm>,
}

impl PermGroup {
    /// Closure of the generators under composition.
    pub fn generate(degree: usize, generators: Vec<Perm>, generator_names: Vec<String>) -> Result<Self> {
        if generators.iter().any(|g| g.len() != degree || !is_permutation(g)) {
            return Err(Error::pre("generators must be permutations of the given degree"));
        }
        let mut elements: BTreeSet<Perm> = BTreeSet::from([identity_map(degree)]);
        let mut frontier = vec![identity_map(degree)];
        while let Some(x) = frontier.pop() {
            for g in &generators {
                let y = compose(g, &x);
                if elements.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            generator_names,
            elements: elements.into_iter().collect(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            generator_names: Vec::new(),
            elements: vec![identity_map(degree)],
        }
    }

    /// A group given by all of its elements, with a small generating set
    /// picked greedily.
    pub fn from_elements(degree: usize, elements: Vec<Perm>) -> Result<Self> {
        let mut group = PermGroup::trivial(degree);
        for e in &elements {
            if !group.contains(e) {
                let mut gens = group.generators.clone();
                gens.push(e.clone());
                let names = gens.iter().map(|g| perm_notation(g)).collect();
                group = PermGroup::generate(degree, gens, names)?;
            }
        }
        if group.order() != elements.len() {
            return Err(Error::Verification("element list is not a group".into()));
        }
        Ok(group)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &[usize]) -> bool {
        self.elements.binary_search_by(|e| e.as_slice().cmp(p)).is_ok()
    }

    pub fn is_symmetric(&self) -> bool {
        self.order() == (1..=self.degree).product::<usize>()
    }

    pub fn is_alternating(&self) -> bool {
        self.degree >= 2
            && 2 * self.order() == (1..=self.degree).product::<usize>()
            && self.elements.iter().all(|e| is_even(e))
    }

    /// `S3`, `A3`, `C2`, `trivial`, or `order N`.
    pub fn describe(&self) -> String {
        let cyclic = self
            .elements
            .iter()
            .any(|e| crate::alphabet::permutation_order(e) == self.order());
        if self.order() == 1 {
            "trivial".into()
        } else if self.is_symmetric() {
            format!("S{}", self.degree)
        } else if self.is_alternating() && self.degree >= 4 {
            format!("A{}", self.degree)
        } else if cyclic {
            format!("C{}", self.order())
        } else {
            format!("order {}", self.order())
        }
    }

    /// Brute force over the symmetric group.
    pub fn centralizer(&self, cap: usize) -> Result<PermGroup> {
        if self.degree > cap {
            return Err(Error::BoundExceeded(format!(
                "degree {} above centralizer cap {cap}",
                self.degree
            )));
        }
        let elements: Vec<Perm> = symmetric_group(self.degree)
            .into_iter()
            .filter(|x| {
                self.generators
                    .iter()
                    .all(|g| compose(x, g) == compose(g, x))
            })
            .collect();
        PermGroup::from_elements(self.degree, elements)
    }

    /// `π` with `π G π⁻¹ = other`, if the groups are conjugate in `S_c`.
    pub fn conjugator_to(&self, other: &PermGroup) -> Option<Perm> {
        if self.degree != other.degree || self.order() != other.order() {
            return None;
        }
        symmetric_group(self.degree).into_iter().find(|pi| {
            let inv = invert(pi);
            self.generators
                .iter()
                .all(|g| other.contains(&compose(pi, &compose(g, &inv))))
        })
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let els: Vec<String> = self.elements.iter().map(|e| perm_notation(e)).collect();
        write!(f, "{{{}}}", els.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn notation() {
        assert_eq!(perm_notation(&[1, 0]), "(12)");
        assert_eq!(perm_notation(&[0, 1, 2]), "id");
        assert_eq!(perm_notation(&[1, 2, 0]), "(123)");
    }

    #[test]
    fn small_groups() {
        let s3 = PermGroup::generate(3, vec![vec![1, 0, 2], vec![1, 2, 0]], vec![]).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(s3.is_symmetric());
        assert_eq!(s3.describe(), "S3");
        assert_eq!(s3.centralizer(8).unwrap().order(), 1);

        let a3 = PermGroup::generate(3, vec![vec![1, 2, 0]], vec![]).unwrap();
        assert!(a3.is_alternating());
        assert_eq!(a3.centralizer(8).unwrap().elements, a3.elements);

        let s2 = PermGroup::generate(2, vec![vec![1, 0]], vec![]).unwrap();
        assert_eq!(s2.centralizer(8).unwrap().order(), 2);
        assert!(PermGroup::trivial(9).centralizer(8).is_err());
    }

    #[test]
    fn conjugacy() {
        let a = PermGroup::generate(3, vec![vec![1, 0, 2]], vec![]).unwrap();
        let b = PermGroup::generate(3, vec![vec![0, 2, 1]], vec![]).unwrap();
        let pi = a.conjugator_to(&b).unwrap();
        let g = compose(&pi, &compose(&a.generators[0], &invert(&pi)));
        assert!(b.contains(&g));
        let c3 = PermGroup::generate(3, vec![vec![1, 2, 0]], vec![]).unwrap();
        assert!(a.conjugator_to(&c3).is_none());
        assert_eq!(symmetric_group(4).len(), 24);
    }
}
