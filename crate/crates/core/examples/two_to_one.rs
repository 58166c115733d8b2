//! A finite-order automorphism, its orbit factor, and the involution
//! recovered from a 2-to-1 factor map.

use autoshift::quotient::{involution_from_two_to_one, order_k_quotient};
use autoshift::rule::LocalRule;
use autoshift::{fixtures, Result};

fn main() -> Result<()> {
    let theta = fixtures::substitution("two_to_one")?;
    let coding = fixtures::coding("two_to_one")?;
    let pi = LocalRule::from_letter_map(theta.alphabet(), &coding.target, &coding.map);

    let inv = involution_from_two_to_one(&theta, &pi, 2, 6)?;
    println!("involution of radius {}:\n{}", inv.radius, inv.rule);

    let q = order_k_quotient(&theta, &inv.rule)?;
    println!("order {}", q.order);
    if let Some(quotient) = q.quotient {
        print!("orbit factor:\n{quotient}");
    }
    Ok(())
}
