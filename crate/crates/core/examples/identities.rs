//! The g-polynomial identities (a)-(j), checked for t up to a bound.

use grassmann_zcl::grassmann::{verify_identity, IdentityId};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t_max: u32 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(10);
    for id in IdentityId::ALL {
        let r = verify_identity(id, id.min_t(), t_max, 0x5eed)?;
        let checks: usize = r.instances.iter().map(|i| i.checks).sum();
        let time: std::time::Duration = r.instances.iter().map(|i| i.elapsed).sum();
        println!(
            "{id} t={}..={}  {}  {checks} checks  {time:.2?}",
            r.t_min,
            r.t_max,
            if r.all_passed() { "ok" } else { "FAILED" }
        );
        for f in r.failures() {
            println!("    t={}: {}", f.t, f.counterexample.as_deref().unwrap_or("?"));
        }
    }
    Ok(())
}
