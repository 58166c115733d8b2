//! Constant-length substitution shifts, their letter-coded factors, and
//! their automorphisms.

pub mod alphabet;
pub mod automatic;
pub mod automorphism;
pub mod compression;
pub mod error;
pub mod fixed_points;
pub mod fixtures;
pub mod language;
pub mod odometer;
pub mod pair_graph;
pub mod quotient;
pub mod report;
pub mod roots;
pub mod rule;
pub mod sliding;
pub mod substitution;

pub use alphabet::{Alphabet, Letter, LetterMap, Word};
pub use error::{Error, Result};
pub use substitution::{LetterCoding, Substitution};
