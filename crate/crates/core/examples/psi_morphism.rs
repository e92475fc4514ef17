//! The map W_{2^t-1,3} -> W_{2^t-2,4} and the terms of the long zero-divisor product.

use grassmann_zcl::zcltensor::{psi_check, PsiMorphism};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for t in [4, 5] {
        let r = psi_check(t)?;
        println!(
            "t={t}: well defined {}, basis property {}, distinct images {} ({} monomials)",
            r.well_defined, r.basis_property, r.distinct, r.checked_monomials
        );
        let psi = PsiMorphism::new(t)?;
        let q = (1u32 << (t - 2)) - 1;
        for d in 0..=q {
            let x = psi.end_term(d)?;
            println!("  d={d}: {} terms", x.len());
        }
        let mid = psi.middle_sum_product()?;
        println!("  middle sum: {}", if mid.is_zero() { "zero".to_string() } else { format!("{} terms", mid.len()) });
    }
    Ok(())
}
