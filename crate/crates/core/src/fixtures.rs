//! Bundled example inputs, by name.
//!
//! ```
//! let theta = autoshift::fixtures::substitution("thue_morse").unwrap();
//! assert_eq!(theta.length(), 2);
//! ```

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::rule::LocalRule;
use crate::substitution::{LetterCoding, Substitution};

/// `(name, text)` of every bundled substitution.
pub const SUBSTITUTIONS: &[(&str, &str)] = &[
    ("centraliser_larger", include_str!("../fixtures/centraliser_larger.sub")),
    ("involution", include_str!("../fixtures/involution.sub")),
    ("merging", include_str!("../fixtures/merging.sub")),
    ("merging_quotient", include_str!("../fixtures/merging_quotient.sub")),
    ("no_automorphism", include_str!("../fixtures/no_automorphism.sub")),
    ("no_automorphism_factor", include_str!("../fixtures/no_automorphism_factor.sub")),
    ("no_hope", include_str!("../fixtures/no_hope.sub")),
    ("no_hope_eta1", include_str!("../fixtures/no_hope_eta1.sub")),
    ("no_hope_eta2", include_str!("../fixtures/no_hope_eta2.sub")),
    ("no_hope_eta2_coincidence", include_str!("../fixtures/no_hope_eta2_coincidence.sub")),
    ("no_hope_eta3", include_str!("../fixtures/no_hope_eta3.sub")),
    ("radius_large", include_str!("../fixtures/radius_large.sub")),
    ("salvaged", include_str!("../fixtures/salvaged.sub")),
    ("salvaged_eta", include_str!("../fixtures/salvaged_eta.sub")),
    ("theta_prime", include_str!("../fixtures/theta_prime.sub")),
    ("theta_prime_minimal", include_str!("../fixtures/theta_prime_minimal.sub")),
    ("thue_morse", include_str!("../fixtures/thue_morse.sub")),
    ("twisted", include_str!("../fixtures/twisted.sub")),
    ("twisted_eta", include_str!("../fixtures/twisted_eta.sub")),
    ("two_to_one", include_str!("../fixtures/two_to_one.sub")),
    ("two_to_one_quotient", include_str!("../fixtures/two_to_one_quotient.sub")),
];

pub const CODINGS: &[(&str, &str)] = &[
    ("merging", include_str!("../fixtures/merging.coding")),
    ("radius_large", include_str!("../fixtures/radius_large.coding")),
    ("theta_prime", include_str!("../fixtures/theta_prime.coding")),
    ("two_to_one", include_str!("../fixtures/two_to_one.coding")),
];

pub const RULES: &[(&str, &str)] = &[
    ("involution", include_str!("../fixtures/involution.rule")),
    ("radius_large", include_str!("../fixtures/radius_large.rule")),
    ("radius_large_blank", include_str!("../fixtures/radius_large_blank.rule")),
    ("orbit_factor", include_str!("../fixtures/orbit_factor.rule")),
    ("twisted", include_str!("../fixtures/twisted.rule")),
    ("salvaged", include_str!("../fixtures/salvaged.rule")),
];

fn lookup(table: &[(&str, &'static str)], name: &str) -> Result<&'static str> {
    table
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::Io(format!("no bundled fixture named {name:?}")))
}

pub fn substitution(name: &str) -> Result<Substitution> {
    Substitution::parse(lookup(SUBSTITUTIONS, name)?)
}

pub fn coding(name: &str) -> Result<LetterCoding> {
    let theta = substitution(name)?;
    LetterCoding::parse(lookup(CODINGS, name)?, theta.alphabet())
}

/// A bundled rule over `source`; the target is inferred unless given.
pub fn rule(name: &str, source: &Alphabet, target: Option<&Alphabet>) -> Result<LocalRule> {
    LocalRule::parse(lookup(RULES, name)?, source, target)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn everything_parses() {
        for (name, _) in SUBSTITUTIONS {
            substitution(name).unwrap();
        }
        for (name, _) in CODINGS {
            coding(name).unwrap();
        }
        assert!(substitution("nope").is_err());
    }
}
