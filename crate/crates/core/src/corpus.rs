//! Small algebras and derivations used by the examples, the CLI fixtures and
//! the test suites.

use crate::algebra::AlgebraPresentation;
use crate::linear::{Matrix, Scalar, Vector};
use crate::lnd::{grassmann_algebra, Derivation};
use crate::maps::LinearEndomap;

/// `Q^k` with componentwise multiplication.
pub fn product_field(k: usize) -> AlgebraPresentation {
    let unit = Vector::new(vec![crate::linear::int(1); k]);
    AlgebraPresentation::from_fn(k, Some(unit), |i, j| if i == j { Vector::unit(k, i) } else { Vector::zeros(k) })
}

/// Index pairs `(i, j)`, `i <= j`, in row-major order: the basis `E_ij` of the
/// upper-triangular `n x n` matrices.
pub fn upper_triangular_basis(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

fn matrix_unit_algebra(n: usize, basis: Vec<(usize, usize)>) -> AlgebraPresentation {
    let dim = basis.len();
    let index = |p: (usize, usize)| basis.iter().position(|&q| q == p);
    let unit = {
        let mut u = Vector::zeros(dim);
        for i in 0..n {
            u[index((i, i)).expect("diagonal units are in the basis")] = crate::linear::int(1);
        }
        u
    };
    AlgebraPresentation::from_fn(dim, Some(unit), |a, b| {
        let (i, j) = basis[a];
        let (k, l) = basis[b];
        if j == k {
            Vector::unit(dim, index((i, l)).expect("closed under products"))
        } else {
            Vector::zeros(dim)
        }
    })
}

/// Upper-triangular `n x n` matrices on the basis [`upper_triangular_basis`].
pub fn upper_triangular(n: usize) -> AlgebraPresentation {
    matrix_unit_algebra(n, upper_triangular_basis(n))
}

/// All `n x n` matrices, basis `E_ij` in row-major order.
pub fn full_matrices(n: usize) -> AlgebraPresentation {
    matrix_unit_algebra(n, (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect())
}

/// Position of `E_ij` in the upper-triangular basis.
pub fn upper_triangular_index(n: usize, i: usize, j: usize) -> usize {
    upper_triangular_basis(n).iter().position(|&p| p == (i, j)).expect("i <= j < n")
}

/// `Q[x]/(x^k)`, basis `1, x, ..., x^{k-1}`.
pub fn truncated_polynomials(k: usize) -> AlgebraPresentation {
    AlgebraPresentation::from_fn(k, Some(Vector::unit(k, 0)), |i, j| {
        if i + j < k {
            Vector::unit(k, i + j)
        } else {
            Vector::zeros(k)
        }
    })
}

/// `Q[x]/(x^k)` without its unit: basis `x, ..., x^k`, nilpotent.
pub fn nilpotent_polynomials(k: usize) -> AlgebraPresentation {
    AlgebraPresentation::from_fn(k, None, |i, j| {
        if i + j + 1 < k {
            Vector::unit(k, i + j + 1)
        } else {
            Vector::zeros(k)
        }
    })
}

/// `A x B` with componentwise multiplication.
pub fn direct_sum(a: &AlgebraPresentation, b: &AlgebraPresentation) -> AlgebraPresentation {
    let (m, n) = (a.dim(), b.dim());
    let unit = match (a.unit(), b.unit()) {
        (Some(u), Some(v)) => Some(concat(u, v)),
        _ => None,
    };
    AlgebraPresentation::from_fn(m + n, unit, |i, j| {
        if i < m && j < m {
            concat(&a.basis_product(i, j), &Vector::zeros(n))
        } else if i >= m && j >= m {
            concat(&Vector::zeros(m), &b.basis_product(i - m, j - m))
        } else {
            Vector::zeros(m + n)
        }
    })
}

fn concat(u: &Vector, v: &Vector) -> Vector {
    Vector::new(u.iter().chain(v.iter()).cloned().collect())
}

/// The same algebra on the basis `f_i = sum_k p[k][i] e_k` (columns of `p`).
pub fn change_basis(a: &AlgebraPresentation, p: &Matrix) -> AlgebraPresentation {
    let inv = p.inverse().expect("change of basis must be invertible");
    let n = a.dim();
    let cols: Vec<Vector> = (0..n).map(|j| p.column(j)).collect();
    let unit = a.unit().map(|u| inv.apply(u));
    AlgebraPresentation::from_fn(n, unit, |i, j| inv.apply(&a.mul(&cols[i], &cols[j])))
}

/// Transports a linear map along [`change_basis`].
pub fn change_basis_map(p: &Matrix, m: &LinearEndomap) -> LinearEndomap {
    let inv = p.inverse().expect("invertible");
    LinearEndomap::new(inv.mul(m.matrix()).mul(p)).expect("square")
}

/// Grassmann truncation with its derivation; panics outside the supported range.
pub fn grassmann(g: usize) -> (AlgebraPresentation, Derivation) {
    grassmann_algebra(g).expect("supported Grassmann size")
}

/// A fixed unipotent change of basis used to hide the standard basis.
pub fn shear(n: usize) -> Matrix {
    let mut m = Matrix::identity(n);
    for i in 0..n.saturating_sub(1) {
        m[(i, i + 1)] = crate::linear::int(1);
    }
    if n >= 3 {
        m[(0, n - 1)] = Scalar::new(2.into(), 1.into());
    }
    m
}

/// Algebras of dimension at most 7 covering semisimple, nilpotent and mixed cases.
pub fn named_algebras() -> Vec<(String, AlgebraPresentation)> {
    let mut out: Vec<(String, AlgebraPresentation)> = vec![
        ("Q".into(), product_field(1)),
        ("QxQ".into(), product_field(2)),
        ("QxQxQ".into(), product_field(3)),
        ("UT2".into(), upper_triangular(2)),
        ("UT3".into(), upper_triangular(3)),
        ("M2".into(), full_matrices(2)),
        ("Q[x]/x^2".into(), truncated_polynomials(2)),
        ("Q[x]/x^3".into(), truncated_polynomials(3)),
        ("xQ[x]/x^4".into(), nilpotent_polynomials(3)),
        ("null2".into(), AlgebraPresentation::null(2)),
        ("UT2xQ".into(), direct_sum(&upper_triangular(2), &product_field(1))),
        ("Q[x]/x^2 x Q".into(), direct_sum(&truncated_polynomials(2), &product_field(1))),
    ];
    for g in 1..=3 {
        out.push((format!("E{g}"), grassmann(g).0));
    }
    out.push(("UT2 sheared".into(), change_basis(&upper_triangular(2), &shear(3))));
    out.push(("Q[x]/x^2 x Q sheared".into(), change_basis(&out[11].1, &shear(3))));
    out.push(("E2 sheared".into(), change_basis(&grassmann(2).0, &shear(3))));
    out
}

/// Locally nilpotent derivations on corpus algebras.
pub fn named_derivations() -> Vec<(String, AlgebraPresentation, Derivation)> {
    let mut out = Vec::new();
    for g in 1..=4 {
        let (a, d) = grassmann(g);
        out.push((format!("E{g} with d"), a, d));
    }
    for n in 2..=3 {
        let a = upper_triangular(n);
        let dim = a.dim();
        let e = |i, j| Vector::unit(dim, upper_triangular_index(n, i, j));
        let mut us = vec![("E12", e(0, 1))];
        if n == 3 {
            us.push(("E23", e(1, 2)));
            us.push(("E12+E23", &e(0, 1) + &e(1, 2)));
            us.push(("E13", e(0, 2)));
        }
        for (name, u) in us {
            let d = Derivation::new(&a, LinearEndomap::inner_derivation(&a, &u)).expect("inner derivation");
            out.push((format!("UT{n} with ad {name}"), a.clone(), d));
        }
    }
    let m2 = full_matrices(2);
    let d = Derivation::new(&m2, LinearEndomap::inner_derivation(&m2, &Vector::unit(4, 1))).expect("inner");
    out.push(("M2 with ad E12".into(), m2, d));
    for (name, a) in [("QxQ", product_field(2)), ("Q[x]/x^2", truncated_polynomials(2))] {
        let dim = a.dim();
        out.push((format!("{name} with 0"), a, Derivation::zero(dim)));
    }
    // On x Q[x]/x^4 (basis x, x^2, x^3) the map x -> x^2, x^2 -> 2x^3 is a derivation
    // of the form x^2 d/dx restricted to the nilpotent ideal.
    let np = nilpotent_polynomials(3);
    let m = Matrix::from_int_rows(&[&[0, 0, 0], &[1, 0, 0], &[0, 2, 0]]);
    let d = Derivation::new(&np, LinearEndomap::new(m).expect("square")).expect("x^2 d/dx");
    out.push(("xQ[x]/x^4 with x^2 d/dx".into(), np, d));
    let null = AlgebraPresentation::null(3);
    let shift = LinearEndomap::new(Matrix::from_int_rows(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]])).expect("square");
    out.push(("null3 with shift".into(), null, Derivation::new(&AlgebraPresentation::null(3), shift).expect("any map")));
    let p = shear(3);
    let (e2, d2) = grassmann(2);
    let sheared = change_basis(&e2, &p);
    let d = Derivation::new(&sheared, change_basis_map(&p, d2.map())).expect("transported derivation");
    out.push(("E2 sheared with d".into(), sheared, d));
    out
}
