//! Nilpotency certificate for sum_{i<=N} V T^i when R^n lies in the radical.

use orelab::corpus;
use orelab::skew::{certify_power_radical, SkewRing};
use orelab::{GeneratorFamily, Subspace};

fn main() -> orelab::Result<()> {
    let (a, d) = corpus::grassmann(3);
    let fam = GeneratorFamily::of_derivations(&a, &[d.map().clone()])?;
    let ring = SkewRing::new(&a, &fam)?;
    let c = certify_power_radical(&ring, &Subspace::full(a.dim()), 1)?;
    println!("{}", serde_json::to_string_pretty(&c).expect("serializable"));
    eprintln!("n = {}, s = {}, l = {}, verified = {}", c.n, c.s, c.bound_l, c.verified);
    Ok(())
}
