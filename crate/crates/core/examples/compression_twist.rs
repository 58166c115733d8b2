//! Compressions, pure bases and twists.

use autoshift::compression::{compress, constant_suspension, pure_base, twist};
use autoshift::fixed_points::height;
use autoshift::{fixtures, Result, Substitution};

fn main() -> Result<()> {
    let tm = fixtures::substitution("thue_morse")?;
    let c = compress(&tm, 2)?;
    print!("Thue-Morse compressed by 2:\n{}", c.theta);

    let base = Substitution::from_images("ab", &["abb", "baa"])?;
    let s = constant_suspension(&base, 2)?;
    println!("suspension of height {}", height(&s)?);
    print!("pure base:\n{}", pure_base(&s)?.theta);

    let eta = fixtures::substitution("twisted_eta")?;
    let tau = [4, 5, 6, 7, 0, 1, 2, 3];
    let t = twist(&eta, &tau)?;
    print!("twist by (ae)(bf)(cg)(dh):\n{t}");
    assert_eq!(twist(&t, &tau)?, eta);
    Ok(())
}
