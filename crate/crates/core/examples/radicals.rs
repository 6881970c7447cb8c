//! Wedderburn radical, prime radical chain, Jacobson radical and quasi-inverses
//! for every algebra in the built-in corpus.

use orelab::corpus;

fn main() -> orelab::Result<()> {
    for (name, a) in corpus::named_algebras() {
        let w = a.wedderburn_radical()?;
        let chain = a.prime_radical_chain()?;
        let j = a.jacobson_radical()?;
        println!(
            "{name:<22} dim {:>2}  radical dim {:>2} (nilpotent of index {:?})  chain {:?}  J dim {}",
            a.dim(),
            w.dim(),
            w.nilpotency_index(&a),
            chain.stages.iter().map(|s| s.dim()).collect::<Vec<_>>(),
            j.dim()
        );
        if let Some(x) = j.space().basis().first() {
            let b = a.quasi_inverse(x).expect("radical elements are quasi-regular");
            println!("{:<22} quasi-inverse of {x:?} is {b:?}", "");
        }
    }
    Ok(())
}
