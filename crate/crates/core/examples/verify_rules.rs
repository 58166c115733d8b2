//! Checking rule tables: an automorphism with a given κ, a factor map and
//! an automorphism of a coded shift.

use autoshift::automatic::AutomaticPair;
use autoshift::report::{verify_automorphism, verify_coded_automorphism, verify_onto, DEFAULT_P_MAX};
use autoshift::{fixtures, Result};

fn main() -> Result<()> {
    let twisted = fixtures::substitution("twisted")?;
    let rule = fixtures::rule("twisted", twisted.alphabet(), Some(twisted.alphabet()))?;
    let r = verify_automorphism(&twisted, &rule, Some((2, 16)), DEFAULT_P_MAX)?;
    println!("twisted rule: accepted {}, κ = {:?}, {:?}", r.accepted, r.kappa, r.relation);

    // the same table with one cell changed
    let mut broken = rule.clone();
    let (w, out) = broken.table.iter().next().map(|(w, &o)| (w.clone(), o)).unwrap();
    broken.table.insert(w, (out + 1) % twisted.size());
    let r = verify_automorphism(&twisted, &broken, Some((2, 16)), DEFAULT_P_MAX)?;
    println!("twisted rule with one cell changed: accepted {}", r.accepted);

    let salvaged = fixtures::substitution("salvaged")?;
    let rule = fixtures::rule("salvaged", salvaged.alphabet(), Some(salvaged.alphabet()))?;
    let r = verify_automorphism(&salvaged, &rule, None, DEFAULT_P_MAX)?;
    println!("salvaged rule: accepted {}, κ = {:?}, {:?}", r.accepted, r.kappa, r.relation);

    let theta = fixtures::substitution("no_automorphism")?;
    let eta = fixtures::substitution("no_automorphism_factor")?;
    let rule = fixtures::rule("orbit_factor", theta.alphabet(), Some(eta.alphabet()))?;
    let r = verify_onto(&theta, &rule, &eta, 6)?;
    println!("orbit factor: onto {}, fibres {:?}", r.accepted, r.fibers);

    let pair = AutomaticPair::new(fixtures::substitution("radius_large")?, fixtures::coding("radius_large")?)?;
    let target = pair.tau.target.clone();
    for name in ["radius_large", "radius_large_blank"] {
        let rule = fixtures::rule(name, &target, Some(&target))?;
        let r = verify_coded_automorphism(&pair, &rule, 4)?;
        println!("{name}: accepted {}, ψ = {:?}, {:?}", r.accepted, r.lifted, r.message);
    }
    Ok(())
}
