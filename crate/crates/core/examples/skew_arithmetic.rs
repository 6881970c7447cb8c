//! Multiplication in R[T; sigma, delta] with left coefficients.

use orelab::corpus;
use orelab::lnd;
use orelab::maps::Generator;
use orelab::skew::{describe, SkewPolynomial, SkewRing};
use orelab::{GeneratorFamily, LinearEndomap, Matrix, SigmaDerivation, Vector};

fn main() -> orelab::Result<()> {
    let (a, d) = corpus::grassmann(2);
    let n = a.dim();
    let exp = lnd::exp_derivation(&a, &d)?;
    let twisted = LinearEndomap::new(exp.map().matrix().sub(&Matrix::identity(n)))?;
    let fam = GeneratorFamily::new(
        n,
        vec![
            Generator { label: "x".into(), map: SigmaDerivation::derivation(&a, d.map().clone())? },
            Generator { label: "y".into(), map: SigmaDerivation::new(&a, exp, twisted)? },
        ],
    )?;
    let ring = SkewRing::new(&a, &fam)?;
    let e1 = Vector::unit(n, 0);
    let e2 = Vector::unit(n, 1);
    println!("x e2 = {}", describe(&ring.push_left_label("x", &e2)?, &fam));
    println!("y e2 = {}", describe(&ring.push_left_label("y", &e2)?, &fam));
    let p = SkewPolynomial::monomial(e2.clone(), vec![0, 1]);
    let q = SkewPolynomial::monomial(e2, vec![1]).add(&SkewPolynomial::constant(e1));
    println!("p = {}", describe(&p, &fam));
    println!("q = {}", describe(&q, &fam));
    println!("p q = {}", describe(&ring.multiply(&p, &q)?, &fam));
    println!("terms expanded: {}", ring.terms_expanded());
    Ok(())
}
