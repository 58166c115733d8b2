//! Roots of the shift and the twisted compressions they reveal.
//! `cargo run --example roots -- no_hope` picks another fixture.

use autoshift::report::{DecompositionView, DEFAULT_P_MAX};
use autoshift::roots::roots_decomposition;
use autoshift::{fixtures, Alphabet, Result};

fn main() -> Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "twisted".into());
    let theta = fixtures::substitution(&name)?;
    let found = roots_decomposition(&theta, DEFAULT_P_MAX, None)?;
    if found.is_empty() {
        println!("{name}: no roots of the shift");
    }
    for d in &found {
        let v = DecompositionView::new(&theta, d);
        println!(
            "k = {}, root κ = {}{}, τ̄ on the input letters = {}",
            v.k,
            v.root_kappa,
            if v.root_exact { " (exact)" } else { "" },
            v.tau_bar_on_input
        );
        let n = d.eta_reduced.size();
        let letters = Alphabet::from_chars(&"abcdefghijklmnopqrstuvwxyz"[..n])?;
        let eta = d.eta_reduced.relabel(letters, &(0..n).collect::<Vec<_>>())?;
        print!("η up to renaming:\n{eta}");
        println!("languages agree up to length {}\n", v.verified_window);
    }
    Ok(())
}
