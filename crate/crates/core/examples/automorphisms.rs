//! Automorphism search: one representative per coset of the shift.

use autoshift::automorphism::search::search_automorphisms;
use autoshift::report::DEFAULT_P_MAX;
use autoshift::roots::find_shift_roots;
use autoshift::{fixtures, Result};

fn main() -> Result<()> {
    for name in ["no_hope_eta1", "no_hope", "salvaged"] {
        let theta = fixtures::substitution(name)?;
        let s = search_automorphisms(&theta, DEFAULT_P_MAX)?;
        println!("{name}: {} letters", theta.size());
        if s.only_shift_powers() {
            println!("  only powers of the shift");
            continue;
        }
        println!("  kernel of order {}", s.kernel.len());
        for f in &s.fractional {
            println!("  κ = {} with radius ({}, {})", f.kappa, f.rule.left, f.rule.right);
        }
        for root in find_shift_roots(&theta, 2, DEFAULT_P_MAX)? {
            let tau = autoshift::alphabet::cycle_notation(&root.tau, theta.alphabet());
            println!("  square root: Φ^2 = σ ∘ {tau}");
        }
    }
    Ok(())
}
