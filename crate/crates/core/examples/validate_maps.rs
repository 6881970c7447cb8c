//! Law checks for automorphisms and sigma-derivations, with witnesses.

use orelab::corpus;
use orelab::linear::int;
use orelab::lnd;
use orelab::maps::{check_automorphism, check_sigma_derivation};
use orelab::{LinearEndomap, Matrix};

fn main() -> orelab::Result<()> {
    let (a, d) = corpus::grassmann(3);
    let id = LinearEndomap::identity(a.dim());
    println!("d on E3 is a derivation: {:?}", check_sigma_derivation(&a, &id, d.map()));
    println!("d as an automorphism: {:?}", check_automorphism(&a, d.map()));

    let exp = LinearEndomap::new(lnd::exp_matrix(&d)?)?;
    println!("exp(d) is an automorphism: {:?}", check_automorphism(&a, &exp));
    let twisted = LinearEndomap::new(exp.matrix().sub(&Matrix::identity(a.dim())))?;
    println!("exp(d) - id is an exp(d)-derivation: {:?}", check_sigma_derivation(&a, &exp, &twisted));

    let mut bent = d.map().matrix().clone();
    bent[(0, 1)] += int(1);
    let bent = LinearEndomap::new(bent)?;
    println!("perturbed d: {:?}", check_sigma_derivation(&a, &id, &bent));
    Ok(())
}
