//! Column invariants, the group G(θ) and the radius-0 automorphisms of
//! a = aac, b = bba, c = bca.

use autoshift::automorphism::kernel::{essential_centralizer_roots, reduce};
use autoshift::automorphism::perm::perm_notation;
use autoshift::automorphism::GroupData;
use autoshift::fixed_points::{height, is_strongly_injective};
use autoshift::language::primitivity_exponent;
use autoshift::{fixtures, Result};

fn main() -> Result<()> {
    let theta = fixtures::substitution("centraliser_larger")?;
    print!("{theta}");
    println!("primitive with exponent {:?}", primitivity_exponent(&theta));
    println!("strongly injective: {}", is_strongly_injective(&theta)?);
    println!("height: {}", height(&theta)?);

    let data = GroupData::new(&theta)?;
    let a = theta.alphabet();
    let sets: Vec<String> = data.minimal.sets.iter().map(|s| a.render_set(s)).collect();
    println!("column number {}, minimal sets {}", data.minimal.c, sets.join(" "));
    for (set, digit, perm) in data.sigma_table() {
        println!("  sigma[{set}, {digit}] = {perm}");
    }
    println!("G = {:?}", data.group);

    let ec = essential_centralizer_roots(&theta)?;
    println!("centralizer of G = {:?}", ec.centralizer);
    for l in &ec.lifts {
        let lift = l.lift.as_ref().map_or("none".to_string(), |t| perm_notation(t));
        println!("  {} lifts to {lift}", perm_notation(&l.element));
    }

    let red = reduce(&theta)?;
    print!("reduced substitution:\n{}", red.theta);
    println!("coding {}", red.coding.to_string().trim().replace('\n', ", "));
    Ok(())
}
