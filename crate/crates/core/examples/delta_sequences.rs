//! The spaces Delta_{n,k}(V) and the sequence V_0, V_1, ... for a two-generator
//! family on E3.

use orelab::corpus;
use orelab::maps::{bold_v_sequence, delta_table};
use orelab::{GeneratorFamily, Subspace, Vector};

fn main() -> orelab::Result<()> {
    let (a, d) = corpus::grassmann(3);
    let fam = GeneratorFamily::of_derivations(&a, &[d.map().clone(), d.map().clone()])?;
    let v = Subspace::from_rows(a.dim(), vec![Vector::unit(a.dim(), 2)])?;
    let table = delta_table(&v, 4, &fam);
    for (n, row) in table.iter().enumerate() {
        let dims: Vec<usize> = row.iter().map(Subspace::dim).collect();
        println!("dim Delta_{{{n},k}}(V) for k = 0..: {dims:?}");
    }
    for (k, vk) in bold_v_sequence(&v, 4, &fam).iter().enumerate() {
        println!("V_{k} = {vk:?}");
    }
    Ok(())
}
