//! Exact zero-divisor cup-length of W_{n,4} and the long witness products.

use std::time::Instant;

use grassmann_zcl::grassmann::IdealSpec;
use grassmann_zcl::quotient::build_algebra;
use grassmann_zcl::zcltensor::{witness_nonzero, zcl_exact, ZclBudget};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ns: Vec<u32> = match std::env::args().nth(1) {
        Some(list) => list.split(',').map(|s| s.parse()).collect::<Result<_, _>>()?,
        None => vec![8, 9, 14, 15, 16, 17],
    };
    let budget = ZclBudget { max_products: 1_000_000, ..ZclBudget::default() };
    for n in ns {
        let start = Instant::now();
        let a = build_algebra(IdealSpec::new(n, 4)?)?;
        let (zcl, cert) = zcl_exact(&a, budget)?;
        println!(
            "zcl(W_{{{n},4}}) = {zcl}  exps {:?}  term {} ⊗ {}  frontier {}  ({:.2?})",
            cert.exps,
            cert.witness_term.0,
            cert.witness_term.1,
            cert.frontier.len(),
            start.elapsed()
        );
    }
    for (n, exps) in [(14, [15, 5, 3]), (15, [15, 5, 3]), (30, [31, 13, 7])] {
        let start = Instant::now();
        let a = build_algebra(IdealSpec::new(n, 4)?)?;
        let w = witness_nonzero(&a, &exps)?;
        let sample = w
            .sample
            .map(|(u, v)| format!("{} ⊗ {}", a.ring().format_monomial(&u), a.ring().format_monomial(&v)))
            .unwrap_or_else(|| "-".into());
        println!("W_{{{n},4}} z-product {exps:?} nonzero: {}  {sample}  ({:.2?})", w.nonzero, start.elapsed());
    }
    Ok(())
}
