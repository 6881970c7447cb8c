//! Preimages under the shift derivation of the infinite Grassmann algebra and
//! how far they reach past a truncation.

use orelab::lnd;

fn main() -> orelab::Result<()> {
    for m in [vec![1], vec![1, 2], vec![2, 3], vec![1, 3, 4], vec![2, 4]] {
        let p = lnd::grassmann_preimage_infinite(&m)?;
        let terms: Vec<String> = p.to_strings().into_iter().map(|(mono, c)| format!("{c}·{mono}")).collect();
        println!("d^-1({}) = {}  (needs e_{})", lnd::monomial_label(&m), terms.join(" + "), p.g_used);
    }
    let r = lnd::grassmann_surjectivity(5)?;
    println!(
        "E5: {} targets with top index < 5, {} verified, {} with preimages inside E5",
        r.targets, r.verified, r.inside_truncation
    );
    Ok(())
}
