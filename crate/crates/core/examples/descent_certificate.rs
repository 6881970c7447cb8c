//! Descent along the prime radical chain of upper triangular 3x3 matrices with
//! an inner derivation.

use orelab::corpus;
use orelab::maps::check_strong_invariance;
use orelab::skew::{certify_prime_radical, SkewRing};
use orelab::{GeneratorFamily, LinearEndomap, Vector};

fn main() -> orelab::Result<()> {
    let a = corpus::upper_triangular(3);
    let u = &Vector::unit(6, corpus::upper_triangular_index(3, 0, 1))
        + &Vector::unit(6, corpus::upper_triangular_index(3, 1, 2));
    let fam = GeneratorFamily::of_derivations(&a, &[LinearEndomap::inner_derivation(&a, &u)])?;
    let chain = a.prime_radical_chain()?;
    println!("strong invariance: {:?}", check_strong_invariance(&chain, &fam.deltas()));
    let ring = SkewRing::new(&a, &fam)?;
    let c = certify_prime_radical(&ring, 2)?;
    println!("chain dims {:?}, total exponent {}, verified {}", c.chain_dims, c.total_exponent, c.verified);
    for (i, l) in c.levels.iter().enumerate() {
        println!("level {i}: s = {}, l = {}, observed power {:?}", l.s, l.bound_l, l.observed_power);
    }
    Ok(())
}
