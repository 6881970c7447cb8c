//! E2 written as R^d[t; delta] with delta = [t, -], and J(E2)^2 decomposed
//! inside P<T>*.

use orelab::corpus;
use orelab::lnd::{self, SurjectivityTarget};

fn main() -> orelab::Result<()> {
    let (a, d) = corpus::grassmann(2);
    let induced = lnd::induced_presentation(&a, &d)?;
    println!("R^d = {:?}", induced.base.space());
    println!("generators t spanning ker d^2 modulo R^d: {:?}", induced.generators);
    println!("full target: {}", lnd::check_jacobson_locally_nilpotent(&a, &d, &SurjectivityTarget::Full).unwrap_err());
    let target = SurjectivityTarget::Restricted(lnd::grassmann_restricted_targets(2)?);
    let t = lnd::check_jacobson_locally_nilpotent(&a, &d, &target)?;
    println!("{}", serde_json::to_string_pretty(&t).expect("serializable"));
    Ok(())
}
