//! J(R) ∩ R^d is nil when R^d is commutative; the check refuses otherwise.

use orelab::corpus;
use orelab::lnd::{self, Derivation};

fn main() -> orelab::Result<()> {
    for (name, a, d) in corpus::named_derivations() {
        match lnd::check_nil_intersection(&a, &d) {
            Ok(t) => println!(
                "{name:<22} R^d dim {}, J ∩ R^d nilpotent of index {}",
                t.constants_dim, t.intersection_nilpotency_index
            ),
            Err(e) => println!("{name:<22} {e}"),
        }
    }
    let m2 = corpus::full_matrices(2);
    let zero = Derivation::zero(m2.dim());
    println!("M2 with d = 0: {}", lnd::check_nil_intersection(&m2, &zero).unwrap_err());
    Ok(())
}
