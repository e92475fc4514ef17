//! Heights of w2, w3, w4 and the cup-length of W_{n,4} for a few n.

use std::time::Instant;

use grassmann_zcl::grassmann::IdealSpec;
use grassmann_zcl::quotient::build_algebra;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ns: Vec<u32> = match std::env::args().nth(1) {
        Some(list) => list.split(',').map(|s| s.parse()).collect::<Result<_, _>>()?,
        None => vec![8, 9, 14, 15, 16, 17, 30, 31, 32, 33],
    };
    for n in ns {
        let start = Instant::now();
        let a = build_algebra(IdealSpec::new(n, 4)?)?;
        let hts = a.heights()?;
        let (cl, witness) = a.cup_length()?;
        let hs: Vec<String> = hts.iter().map(|(v, h)| format!("ht(w{v})={h}")).collect();
        println!(
            "n={n:<3} dim={:<5} {}  cl={cl} via {}  ({:.2?})",
            a.dim(),
            hs.join(" "),
            a.ring().format_monomial(&witness),
            start.elapsed()
        );
    }
    Ok(())
}
