//! Automorphisms of substitution shifts.

pub mod kappa;
pub mod kernel;
pub mod labeling;
pub mod lift;
pub mod perm;
pub mod search;
pub mod verify;

pub use kappa::KappaValue;
pub use labeling::{build_labeling, group_g, sigma_perms, GroupData, Labeling};
pub use perm::{Perm, PermGroup};

use std::collections::HashMap;
use std::hash::Hash;

/// `step` applied `n` times to `start`, jumping ahead once the orbit
/// repeats.
pub(crate) fn iterate_jump<T: Clone + Eq + Hash>(start: T, n: usize, mut step: impl FnMut(&T) -> T) -> T {
    let mut seen: HashMap<T, usize> = HashMap::new();
    let mut orbit = vec![start.clone()];
    seen.insert(start, 0);
    for i in 1..=n {
        let next = step(&orbit[i - 1]);
        if let Some(&j) = seen.get(&next) {
            let period = i - j;
            return orbit[j + (n - j) % period].clone();
        }
        seen.insert(next.clone(), i);
        orbit.push(next);
    }
    orbit.pop().unwrap()
}
