//! Buchberger on g_{n-3}, ..., g_n and a comparison with the listed bases.

use std::time::Instant;

use grassmann_zcl::grassmann::{ideal_generators, known_gb, listed_lm_set, IdealSpec};
use grassmann_zcl::groebner::buchberger;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: u32 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(16);
    let spec = IdealSpec::new(n, 4)?;
    let ring = spec.ring();
    let gens = ideal_generators(spec)?;
    println!("I_{{{n},4}} generated by");
    for (r, g) in (n - 3..=n).zip(&gens) {
        println!("  g_{r} = {g}");
    }

    let start = Instant::now();
    let gb = buchberger(ring, &gens)?;
    println!("reduced basis ({} elements, {:.2?}):", gb.len(), start.elapsed());
    for (g, m) in gb.generators().iter().zip(gb.leading_monomials()) {
        println!("  [{}] {g}", ring.format_monomial(m));
    }
    println!("is_groebner: {}", gb.is_groebner()?);

    match listed_lm_set(n, 4) {
        Ok(listed) => {
            let same = listed == gb.leading_monomials();
            let known = known_gb(n, 4)?.to_reduced()?;
            println!("LM set matches listed: {same}; bases equal: {}", known == gb);
        }
        Err(_) => println!("no listed basis for n={n}"),
    }
    Ok(())
}
