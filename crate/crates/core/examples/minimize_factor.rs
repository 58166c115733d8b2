//! A letter-coded substitution shift that is not injective as coded,
//! and its bijective presentation.

use autoshift::automatic::{bijective_presentation, mef_descriptor, noninjectivity_witness, AutomaticPair};
use autoshift::pair_graph::{pair_aperiodic_power, periodic_pairs};
use autoshift::{fixtures, Result};

fn main() -> Result<()> {
    let theta = fixtures::substitution("theta_prime")?;
    let pair = AutomaticPair::new(theta.clone(), fixtures::coding("theta_prime")?)?;
    let a = theta.alphabet();

    for p in periodic_pairs(&theta) {
        println!("periodic pair ({},{}) of period {}", a.name(p.pair.0), a.name(p.pair.1), p.period);
    }
    println!("pair-aperiodic from the power {}", pair_aperiodic_power(&theta)?.power);

    if let Some(w) = noninjectivity_witness(&pair, 4) {
        println!(
            "θ^{}: {} and {} differ only at {}, and code to the same word {}",
            w.power,
            a.render(&w.first),
            a.render(&w.second),
            w.index,
            pair.tau.target.render(&pair.tau.apply(&w.first))
        );
    }

    let p = bijective_presentation(&pair)?;
    let named = p.theta_star.relabel(p.tau_star.target.clone(), &p.tau_star.map)?;
    print!("presentation (power {}):\n{named}", p.power);
    println!("injective coding radius: {:?}", p.injectivity_radius);
    p.replay(&pair)?;

    let mef = mef_descriptor(&pair)?;
    println!("equicontinuous factor: Z_{} x Z/{}", mef.r, mef.h_bar);
    Ok(())
}
