//! The digit-labelled graph on letter pairs and the closure of letter
//! subsets under column maps.
//!
//! Digit strings are most significant first, so a path `d_1 … d_k` from
//! `(a, b)` ends at `(θ^k(a)_j, θ^k(b)_j)` and replays through
//! [`Substitution::column_map`].

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::language::is_primitive;
use crate::substitution::{checked_pow, Substitution, MAX_IMAGE_LEN};

pub type Pair = (Letter, Letter);

/// `(x, y) ↦ (θ_d(x), θ_d(y))` for every digit `d`.
#[derive(Clone, Debug)]
pub struct PairGraph {
    n: usize,
    r: usize,
    columns: Vec<Vec<Letter>>,
}

impl PairGraph {
    pub fn new(theta: &Substitution) -> Self {
        PairGraph {
            n: theta.size(),
            r: theta.length(),
            columns: (0..theta.length()).map(|j| theta.column(j)).collect(),
        }
    }

    pub fn letters(&self) -> usize {
        self.n
    }

    pub fn digits(&self) -> usize {
        self.r
    }

    pub fn step(&self, (x, y): Pair, d: usize) -> Pair {
        (self.columns[d][x], self.columns[d][y])
    }

    pub fn nodes(&self) -> impl Iterator<Item = Pair> + '_ {
        (0..self.n).flat_map(move |x| (0..self.n).map(move |y| (x, y)))
    }

    pub fn edge_count(&self) -> usize {
        self.n * self.n * self.r
    }

    /// Follows a digit string.
    pub fn walk(&self, from: Pair, digits: &[usize]) -> Pair {
        digits.iter().fold(from, |p, &d| self.step(p, d))
    }

    /// Shortest digit path to every reachable pair, including `from` itself
    /// with the empty path. Ties go to the smaller digit.
    pub fn reachable(&self, from: Pair) -> BTreeMap<Pair, Vec<usize>> {
        let mut paths: BTreeMap<Pair, Vec<usize>> = BTreeMap::new();
        paths.insert(from, Vec::new());
        let mut queue = VecDeque::from([from]);
        while let Some(p) = queue.pop_front() {
            for d in 0..self.r {
                let q = self.step(p, d);
                if !paths.contains_key(&q) {
                    let mut path = paths[&p].clone();
                    path.push(d);
                    paths.insert(q, path);
                    queue.push_back(q);
                }
            }
        }
        paths
    }

    /// The pairs reached by walks of exactly `k` steps.
    pub fn reachable_in(&self, from: Pair, k: usize) -> Vec<Pair> {
        let mut set = vec![from];
        for _ in 0..k {
            let mut next: Vec<Pair> = set
                .iter()
                .flat_map(|&p| (0..self.r).map(move |d| (p, d)))
                .map(|(p, d)| self.step(p, d))
                .collect();
            next.sort_unstable();
            next.dedup();
            set = next;
        }
        set
    }

    /// Length of the shortest closed walk through `node`, if any.
    pub fn cycle_length(&self, node: Pair) -> Option<usize> {
        let mut dist: HashMap<Pair, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        for d in 0..self.r {
            let q = self.step(node, d);
            if q == node {
                return Some(1);
            }
            if dist.insert(q, 1).is_none() {
                queue.push_back(q);
            }
        }
        while let Some(p) = queue.pop_front() {
            let k = dist[&p];
            for d in 0..self.r {
                let q = self.step(p, d);
                if q == node {
                    return Some(k + 1);
                }
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(q) {
                    e.insert(k + 1);
                    queue.push_back(q);
                }
            }
        }
        None
    }

    /// True when a closed walk of length exactly `k` passes through `node`.
    pub fn has_closed_walk(&self, node: Pair, k: usize) -> bool {
        self.reachable_in(node, k).binary_search(&node).is_ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReachedPair {
    pub pair: Pair,
    pub steps: usize,
    /// Digits, most significant first.
    pub digits: Vec<usize>,
}

pub fn reachable_pairs(theta: &Substitution, from: Pair) -> Result<Vec<ReachedPair>> {
    check_pair(theta, from)?;
    Ok(PairGraph::new(theta)
        .reachable(from)
        .into_iter()
        .map(|(pair, digits)| ReachedPair {
            pair,
            steps: digits.len(),
            digits,
        })
        .collect())
}

fn check_pair(theta: &Substitution, (a, b): Pair) -> Result<()> {
    match [a, b].into_iter().find(|&x| x >= theta.size()) {
        Some(x) => Err(Error::UnknownLetter(x)),
        None => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicPair {
    pub pair: Pair,
    /// Minimal cycle length through the pair.
    pub period: usize,
}

/// Off-diagonal pairs that lie on a cycle, in sorted order.
pub fn periodic_pairs(theta: &Substitution) -> Vec<PeriodicPair> {
    let g = PairGraph::new(theta);
    g.nodes()
        .filter(|(x, y)| x != y)
        .filter_map(|pair| g.cycle_length(pair).map(|period| PeriodicPair { pair, period }))
        .collect()
}

/// Every periodic pair returns to itself in one step.
pub fn is_pair_aperiodic(theta: &Substitution) -> bool {
    periodic_pairs(theta).iter().all(|p| p.period == 1)
}

/// True when every periodic pair of `θ^p` has a self-loop there, decided on
/// the pair graph of `θ` by walks of length exactly `p`.
fn power_is_pair_aperiodic(g: &PairGraph, periodic: &[PeriodicPair], p: usize) -> bool {
    periodic.iter().all(|q| g.has_closed_walk(q.pair, p))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AperiodicPower {
    pub power: usize,
    pub theta: Substitution,
    pub periodic: Vec<PeriodicPair>,
}

/// The smallest multiple `P` of the lcm of the minimal periods for which
/// `θ^P` is pair-aperiodic.
pub fn pair_aperiodic_power(theta: &Substitution) -> Result<AperiodicPower> {
    let g = PairGraph::new(theta);
    let periodic = periodic_pairs(theta);
    let base = periodic.iter().fold(1usize, |acc, p| acc.lcm(&p.period));
    let mut power = base;
    loop {
        let fits = checked_pow(theta.length(), power).is_some_and(|len| len <= MAX_IMAGE_LEN);
        if !fits {
            return Err(Error::BoundExceeded(format!(
                "pair-aperiodic power exceeds {power} (image length r^{power})"
            )));
        }
        if power_is_pair_aperiodic(&g, &periodic, power) {
            break;
        }
        power += base;
    }
    let out = theta.power(power)?;
    debug_assert!(is_pair_aperiodic(&out));
    Ok(AperiodicPower {
        power,
        theta: out,
        periodic,
    })
}

/// `θ^{|A|²}(a) ≠ θ^{|A|²}(b)`; exact for pair-aperiodic `θ`.
pub fn is_asymptotic_disjoint(theta: &Substitution, a: Letter, b: Letter) -> Result<bool> {
    check_pair(theta, (a, b))?;
    if !is_pair_aperiodic(theta) {
        return Err(Error::pre("substitution is not pair-aperiodic"));
    }
    let n = theta.size();
    Ok(PairGraph::new(theta)
        .reachable_in((a, b), n * n)
        .iter()
        .any(|(x, y)| x != y))
}

/// A periodic pair reachable from an asymptotic disjoint pair, with digit
/// strings that reach everything behind it at every large enough length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisjointWitness {
    pub from: Pair,
    pub periodic: Pair,
    pub prefix: Vec<usize>,
    /// A digit fixing the periodic pair.
    pub loop_digit: usize,
    /// Shortest paths from the periodic pair.
    pub targets: Vec<(Pair, Vec<usize>)>,
    /// Every target is `k`-reachable from `from` for all `k ≥ bound`.
    pub bound: usize,
}

impl DisjointWitness {
    /// A path of length exactly `k` from `from` to `targets[t]`.
    pub fn certificate(&self, t: usize, k: usize) -> Option<Vec<usize>> {
        let tail = &self.targets.get(t)?.1;
        let fill = k.checked_sub(self.prefix.len() + tail.len())?;
        let mut out = self.prefix.clone();
        out.extend(std::iter::repeat_n(self.loop_digit, fill));
        out.extend(tail);
        Some(out)
    }
}

pub fn le_disjoint_witness(theta: &Substitution, a: Letter, b: Letter) -> Result<DisjointWitness> {
    if !is_asymptotic_disjoint(theta, a, b)? {
        return Err(Error::pre("pair is not asymptotic disjoint"));
    }
    let g = &PairGraph::new(theta);
    let n = theta.size();
    // an off-diagonal walk of length n² from (a, b); diagonal pairs never leave
    // the diagonal, so walk back from an off-diagonal endpoint
    let mut layers = vec![vec![(a, b)]];
    for _ in 0..n * n {
        let next = layers
            .last()
            .unwrap()
            .iter()
            .flat_map(|&p| (0..g.digits()).map(move |d| g.step(p, d)))
            .filter(|(x, y)| x != y)
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        layers.push(next);
    }
    let mut nodes = vec![layers[n * n][0]];
    let mut digits = Vec::new();
    for layer in layers[..n * n].iter().rev() {
        let cur = *nodes.last().unwrap();
        let (p, d) = layer
            .iter()
            .flat_map(|&p| (0..g.digits()).map(move |d| (p, d)))
            .find(|&(p, d)| g.step(p, d) == cur)
            .expect("layers are built forward");
        nodes.push(p);
        digits.push(d);
    }
    nodes.reverse();
    digits.reverse();
    // pigeonhole: n² + 1 off-diagonal nodes among n² − n
    let (i, periodic) = nodes
        .iter()
        .enumerate()
        .find(|&(i, p)| nodes[i + 1..].contains(p))
        .map(|(i, &p)| (i, p))
        .expect("walk repeats a node");
    let loop_digit = (0..g.digits())
        .find(|&d| g.step(periodic, d) == periodic)
        .ok_or_else(|| Error::Verification("periodic pair without a self-loop".into()))?;
    let targets: Vec<(Pair, Vec<usize>)> = g.reachable(periodic).into_iter().collect();
    let bound = i + targets.iter().map(|t| t.1.len()).max().unwrap_or(0);
    Ok(DisjointWitness {
        from: (a, b),
        periodic,
        prefix: digits[..i].to_vec(),
        loop_digit,
        targets,
        bound,
    })
}

/// The family of letter subsets reachable from the full alphabet under the
/// column maps, in breadth-first order, each with a digit path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetClosure {
    pub members: Vec<Vec<Letter>>,
    pub paths: Vec<Vec<usize>>,
}

/// Largest number of subsets explored before giving up.
pub const SUBSET_CAP: usize = 1 << 16;

impl SubsetClosure {
    pub fn new(theta: &Substitution) -> Result<Self> {
        let full: Vec<Letter> = theta.alphabet().letters().collect();
        let mut index: HashMap<Vec<Letter>, usize> = HashMap::from([(full.clone(), 0)]);
        let mut members = vec![full];
        let mut paths = vec![Vec::new()];
        let mut head = 0;
        while head < members.len() {
            for d in 0..theta.length() {
                let mut img: Vec<Letter> = members[head].iter().map(|&x| theta.col(d, x)).collect();
                img.sort_unstable();
                img.dedup();
                if index.contains_key(&img) {
                    continue;
                }
                if members.len() == SUBSET_CAP {
                    return Err(Error::BoundExceeded(format!(
                        "more than {SUBSET_CAP} column sets"
                    )));
                }
                index.insert(img.clone(), members.len());
                let mut path = paths[head].clone();
                path.push(d);
                members.push(img);
                paths.push(path);
            }
            head += 1;
        }
        Ok(SubsetClosure { members, paths })
    }

    pub fn column_number(&self) -> usize {
        self.members.iter().map(Vec::len).min().unwrap()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalSets {
    /// Column number.
    pub c: usize,
    /// Sorted.
    pub sets: Vec<Vec<Letter>>,
    /// Digit path from the full alphabet to each set.
    pub paths: Vec<Vec<usize>>,
    /// Index into `sets` of the minimal set found first by the closure.
    pub first: usize,
    /// `θ̃(M)_j = θ_j(M)` on the letters `{a,b}` naming the sets.
    pub tilde_theta: Substitution,
}

impl MinimalSets {
    pub fn index(&self, set: &[Letter]) -> Option<usize> {
        self.sets.binary_search_by(|s| s.as_slice().cmp(set)).ok()
    }
}

pub fn minimal_sets(theta: &Substitution) -> Result<MinimalSets> {
    if !is_primitive(theta) {
        return Err(Error::NotPrimitive);
    }
    let closure = SubsetClosure::new(theta)?;
    let c = closure.column_number();
    let mut found: Vec<(Vec<Letter>, Vec<usize>, usize)> = closure
        .members
        .iter()
        .zip(&closure.paths)
        .enumerate()
        .filter(|(_, (m, _))| m.len() == c)
        .map(|(order, (m, p))| (m.clone(), p.clone(), order))
        .collect();
    found.sort();
    let first = (0..found.len()).min_by_key(|&i| found[i].2).unwrap();
    let sets: Vec<Vec<Letter>> = found.iter().map(|f| f.0.clone()).collect();
    let paths = found.into_iter().map(|f| f.1).collect();
    let alphabet = Alphabet::new(sets.iter().map(|s| theta.alphabet().render_set(s)))?;
    let images = sets
        .iter()
        .map(|s| {
            (0..theta.length())
                .map(|d| {
                    let mut img: Vec<Letter> = s.iter().map(|&x| theta.col(d, x)).collect();
                    img.sort_unstable();
                    sets.binary_search(&img)
                        .map_err(|_| Error::Verification("column image of a minimal set".into()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MinimalSets {
        c,
        sets,
        paths,
        first,
        tilde_theta: Substitution::new(alphabet, images)?,
    })
}
