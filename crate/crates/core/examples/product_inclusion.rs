//! The product V T^{a_1} ... V T^{a_m} against the sum over dominated b.

use orelab::corpus;
use orelab::skew::{verify_product_inclusion, SkewRing};
use orelab::{GeneratorFamily, Subspace};

fn main() -> orelab::Result<()> {
    let (a, d) = corpus::grassmann(3);
    let fam = GeneratorFamily::of_derivations(&a, &[d.map().clone()])?;
    let ring = SkewRing::new(&a, &fam)?;
    let v = Subspace::full(a.dim());
    for av in [vec![1], vec![1, 1], vec![2, 1], vec![1, 2, 1]] {
        let r = verify_product_inclusion(&ring, &v, &av)?;
        println!(
            "a = {:?}: {} choices of b, {} products, coefficient dims by word length {:?}, holds: {}",
            r.a, r.b_count, r.lhs_products, r.rhs_coefficient_dims, r.holds
        );
    }
    Ok(())
}
