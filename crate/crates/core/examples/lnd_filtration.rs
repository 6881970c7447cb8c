//! Kernel filtration, degree and exponential of locally nilpotent derivations.

use orelab::corpus;
use orelab::lnd;

fn main() -> orelab::Result<()> {
    for (name, a, d) in corpus::named_derivations() {
        let f = lnd::kernel_filtration(&d)?;
        let exp = lnd::exp_derivation(&a, &d)?;
        let dims: Vec<usize> = f.stages.iter().map(|s| s.dim()).collect();
        println!(
            "{name:<22} filtration dims {dims:?}, nilpotency index {:?}, exp(d) is the identity: {}",
            d.nilpotency_index(),
            exp.is_identity()
        );
    }
    Ok(())
}
