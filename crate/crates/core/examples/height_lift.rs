//! Automorphisms of a height-2 substitution lifted from its pure base.

use autoshift::automorphism::lift::lift_searched_automorphisms;
use autoshift::compression::constant_suspension;
use autoshift::{Result, Substitution};

fn main() -> Result<()> {
    let base = Substitution::from_images("ab", &["abb", "baa"])?;
    let theta = constant_suspension(&base, 2)?;
    let lifts = lift_searched_automorphisms(&theta, 1)?;
    println!("height {}, {} lifts", lifts.h, lifts.lifts.len());
    for l in &lifts.lifts {
        let map = l.rule.letter_map(&lifts.suspension)?;
        let shown = map.map_or_else(
            || format!("radius ({}, {})", l.rule.left, l.rule.right),
            |m| autoshift::alphabet::cycle_notation(&m, lifts.suspension.alphabet()),
        );
        println!("  base {} then σ^{}: {shown}", l.base, l.j);
    }
    Ok(())
}
