//! Normal forms and ideal membership in F2[w2, w3, w4] / I_{n,4}.

use grassmann_zcl::f2poly::parse;
use grassmann_zcl::grassmann::{g_poly, groebner_basis, IdealSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n: u32 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(16);
    let spec = IdealSpec::new(n, 4)?;
    let gb = groebner_basis(spec)?;
    let inputs: Vec<String> = match args.next() {
        Some(p) => vec![p],
        None => vec!["w2^12*w4^3".into(), "w2^13".into(), "w3^6 + w2^3*w3^4".into(), "w4^7 + w2*w3^2*w4^5".into()],
    };
    for text in inputs {
        let p = parse(spec.ring(), &text)?;
        let nf = gb.normal_form(&p)?;
        println!("{text:<24} -> {}   member: {}", nf.to_text(), nf.is_zero());
    }
    // every g_r with r > n - 4 lies in the ideal
    let r = n as i64 + 5;
    println!("g_{r} reduces to {}", gb.normal_form(&g_poly(4, r)?)?.to_text());
    Ok(())
}
