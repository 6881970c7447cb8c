//! Exact rational row reduction: canonical bases, kernels, sums and intersections.

use orelab::linear::frac;
use orelab::{Matrix, Subspace, Vector};

fn main() -> orelab::Result<()> {
    let m = Matrix::from_int_rows(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, -1]]);
    println!("rank {} , kernel {:?}", m.rank(), m.kernel());
    println!("image {:?}", m.image());

    let a = Subspace::from_rows(3, vec![Vector::from_ints(&[1, 1, 0]), Vector::from_ints(&[0, 1, 1])])?;
    let b = Subspace::from_rows(3, vec![Vector::new(vec![frac(1, 2), frac(0, 1), frac(-1, 2)])])?;
    println!("a = {a:?}");
    println!("b = {b:?}");
    println!("a + b = {:?}", a.sum(&b)?);
    println!("a ∩ b = {:?}", a.intersection(&b)?);
    let v = Vector::from_ints(&[1, 2, 1]);
    println!("{v:?} in a: {} (coordinates {:?})", a.contains(&v), a.coordinates(&v));
    Ok(())
}
