//! Finite-dimensional associative algebras over Q given by structure
//! constants, together with ideals and the radicals used throughout the crate.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linear::{Matrix, Scalar, Subspace, Vector};

/// Failure of an algebraic law, with the basis indices (0-based) that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, thiserror::Error)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum LawViolation {
    #[error("associativity fails on basis triple ({i}, {j}, {k})")]
    Associativity { i: usize, j: usize, k: usize },
    #[error("unit law fails on basis element {i}")]
    Unit { i: usize },
    #[error("map is not invertible")]
    NotInvertible,
    #[error("map is not multiplicative on basis pair ({i}, {j})")]
    Multiplicative { i: usize, j: usize },
    #[error("map does not fix the unit")]
    UnitNotFixed,
    #[error("Leibniz rule fails on basis pair ({i}, {j})")]
    Leibniz { i: usize, j: usize },
    #[error("map has shape {rows}x{cols}, algebra has dimension {dim}")]
    Shape { rows: usize, cols: usize, dim: usize },
}

/// An algebra over Q with basis `e_0..e_{n-1}` and `e_i e_j = sum_k c[i][j][k] e_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraPresentation {
    dim: usize,
    // products[i * dim + j] = e_i e_j as sparse (index, coefficient) pairs
    products: Vec<Vec<(usize, Scalar)>>,
    unit: Option<Vector>,
}

impl std::fmt::Debug for AlgebraPresentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AlgebraPresentation")
            .field("dim", &self.dim)
            .field("unital", &self.unit.is_some())
            .finish()
    }
}

impl AlgebraPresentation {
    /// Builds a presentation without checking associativity; see
    /// [`AlgebraPresentation::validate`].
    pub fn new(dim: usize, table: Vec<Vec<Vector>>, unit: Option<Vector>) -> Result<Self> {
        if table.len() != dim || table.iter().any(|row| row.len() != dim) {
            return Err(Error::Dimension(format!("structure table is not {dim}x{dim}")));
        }
        let products: Vec<Vector> = table.into_iter().flatten().collect();
        if products.iter().any(|v| v.len() != dim) {
            return Err(Error::Dimension(format!("structure constant vector not of length {dim}")));
        }
        let products = products.iter().map(sparse).collect();
        if let Some(u) = &unit {
            if u.len() != dim {
                return Err(Error::Dimension("unit vector length".into()));
            }
        }
        Ok(AlgebraPresentation { dim, products, unit })
    }

    pub fn from_fn(dim: usize, unit: Option<Vector>, mut f: impl FnMut(usize, usize) -> Vector) -> Self {
        let mut products = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = f(i, j);
                assert_eq!(v.len(), dim);
                products.push(sparse(&v));
            }
        }
        AlgebraPresentation { dim, products, unit }
    }

    /// Builds a presentation from sparse products `e_i e_j = sum c_k e_k`.
    pub fn from_sparse_fn(
        dim: usize,
        unit: Option<Vector>,
        mut f: impl FnMut(usize, usize) -> Vec<(usize, Scalar)>,
    ) -> Self {
        let mut products = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let mut terms = f(i, j);
                terms.retain(|(k, c)| {
                    assert!(*k < dim);
                    !c.is_zero()
                });
                terms.sort_by_key(|(k, _)| *k);
                products.push(terms);
            }
        }
        AlgebraPresentation { dim, products, unit }
    }

    /// Algebra with all products zero.
    pub fn null(dim: usize) -> Self {
        Self::from_sparse_fn(dim, None, |_, _| Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> Option<&Vector> {
        self.unit.as_ref()
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    /// `e_i e_j`
    pub fn basis_product(&self, i: usize, j: usize) -> Vector {
        let mut v = Vector::zeros(self.dim);
        for (k, c) in &self.products[i * self.dim + j] {
            v[*k] = c.clone();
        }
        v
    }

    /// Nonzero terms of `e_i e_j`, sorted by index.
    pub fn basis_product_terms(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.products[i * self.dim + j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.basis_product_terms(i, j)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map_or_else(Scalar::zero, |(_, c)| c.clone())
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        Vector::unit(self.dim, i)
    }

    /// Associativity on every basis triple and, if unital, the two-sided unit
    /// law on every basis element.
    pub fn validate(&self) -> std::result::Result<(), LawViolation> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let ij = self.basis_product(i, j);
                for k in 0..n {
                    let left = self.mul(&ij, &self.basis_vector(k));
                    let right = self.mul(&self.basis_vector(i), &self.basis_product(j, k));
                    if left != right {
                        return Err(LawViolation::Associativity { i, j, k });
                    }
                }
            }
        }
        if let Some(u) = &self.unit {
            for i in 0..n {
                let e = self.basis_vector(i);
                if self.mul(u, &e) != e || self.mul(&e, u) != e {
                    return Err(LawViolation::Unit { i });
                }
            }
        }
        Ok(())
    }

    /// Bilinear product; panics on dimension mismatch.
    pub fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        assert_eq!(x.len(), self.dim, "left factor dimension");
        assert_eq!(y.len(), self.dim, "right factor dimension");
        let mut out = Vector::zeros(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, s) in self.basis_product_terms(i, j) {
                    out[*k] += &c * s;
                }
            }
        }
        out
    }

    pub fn try_mul(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::Dimension(format!(
                "factors of length {} and {} in algebra of dimension {}",
                x.len(),
                y.len(),
                self.dim
            )));
        }
        Ok(self.mul(x, y))
    }

    /// Matrix of `v -> x v`.
    pub fn left_mul_matrix(&self, x: &Vector) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul(x, &self.basis_vector(j))).collect();
        Matrix::from_columns(self.dim, &cols)
    }

    /// Matrix of `v -> v x`.
    pub fn right_mul_matrix(&self, x: &Vector) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul(&self.basis_vector(j), x)).collect();
        Matrix::from_columns(self.dim, &cols)
    }

    pub fn commutator(&self, x: &Vector, y: &Vector) -> Vector {
        &self.mul(x, y) - &self.mul(y, x)
    }

    /// `x^k` for `k >= 1`.
    pub fn power(&self, x: &Vector, k: usize) -> Vector {
        assert!(k >= 1);
        let mut p = x.clone();
        for _ in 1..k {
            p = self.mul(&p, x);
        }
        p
    }

    /// Least `k` with `x^k = 0`, if `x` is nilpotent.
    pub fn element_nilpotency_index(&self, x: &Vector) -> Option<usize> {
        if x.is_zero() {
            return Some(1);
        }
        let mut p = x.clone();
        for k in 2..=self.dim + 1 {
            p = self.mul(&p, x);
            if p.is_zero() {
                return Some(k);
            }
        }
        None
    }

    /// Span of all products `s t` with `s` in `a` and `t` in `b`.
    pub fn product_space(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut out = Subspace::zero(self.dim);
        for x in a.basis() {
            for y in b.basis() {
                out.insert(self.mul(x, y));
                if out.is_full() {
                    return out;
                }
            }
        }
        out
    }

    /// `x y = y x` for every pair of basis vectors of `s`.
    pub fn is_commutative_on(&self, s: &Subspace) -> bool {
        let b = s.basis();
        for (i, x) in b.iter().enumerate() {
            for y in &b[i + 1..] {
                if self.mul(x, y) != self.mul(y, x) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_commutative(&self) -> bool {
        self.is_commutative_on(&Subspace::full(self.dim))
    }

    fn full_space(&self) -> Subspace {
        Subspace::full(self.dim)
    }

    /// Whether `s` is closed under left and right multiplication by the basis.
    pub fn is_ideal(&self, s: &Subspace) -> bool {
        for x in s.basis() {
            for i in 0..self.dim {
                let e = self.basis_vector(i);
                if !s.contains(&self.mul(&e, x)) || !s.contains(&self.mul(x, &e)) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether `s` is closed under multiplication.
    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        s.basis().iter().all(|x| s.basis().iter().all(|y| s.contains(&self.mul(x, y))))
    }

    /// Smallest two-sided ideal containing `s`: saturation under left and
    /// right multiplication by basis elements.
    pub fn ideal_generated_by(&self, s: &Subspace) -> Result<Ideal> {
        if s.ambient() != self.dim {
            return Err(Error::Dimension("generating subspace ambient".into()));
        }
        let mut current = s.clone();
        loop {
            let mut next = current.clone();
            for x in current.basis() {
                for i in 0..self.dim {
                    let e = self.basis_vector(i);
                    next.insert(self.mul(&e, x));
                    next.insert(self.mul(x, &e));
                }
            }
            if next == current {
                return Ok(Ideal { space: current });
            }
            current = next;
        }
    }

    /// Smallest subalgebra containing `s`.
    pub fn subalgebra_generated_by(&self, s: &Subspace) -> Subspace {
        let mut current = s.clone();
        loop {
            let next = current.sum(&self.product_space(&current, &current)).expect("same ambient");
            if next == current {
                return current;
            }
            current = next;
        }
    }

    /// `A^n`: the span of all n-fold products of basis elements.
    pub fn power_space(&self, n: usize) -> Subspace {
        Ideal { space: self.full_space() }.power(self, n)
    }

    /// Largest nilpotent ideal, by the trace-form criterion on the unital hull:
    /// `x` is in the radical iff `Tr(L_{xa}) = 0` for every `a` in the hull.
    /// The candidate is re-checked to be a nilpotent ideal.
    pub fn wedderburn_radical(&self) -> Result<Ideal> {
        let n = self.dim;
        if n == 0 {
            return Ok(Ideal { space: Subspace::zero(0) });
        }
        // tau[k] = Tr(L_{e_k}); on the hull the adjoined unit adds nothing to
        // this trace since L_y(1) = y has no unit component.
        let tau: Vector = Vector::new(
            (0..n)
                .map(|k| (0..n).fold(Scalar::zero(), |acc, j| acc + self.structure_constant(k, j, j)))
                .collect(),
        );
        let mut rows: Vec<Vector> = (0..n)
            .map(|j| {
                Vector::new(
                    (0..n)
                        .map(|i| {
                            self.basis_product_terms(i, j)
                                .iter()
                                .fold(Scalar::zero(), |acc, (k, c)| acc + c * &tau[*k])
                        })
                        .collect(),
                )
            })
            .collect();
        rows.push(tau);
        let form = Matrix::from_rows(rows.into_iter().map(Vector::into_coords).collect())?;
        let candidate = form.kernel();
        if !self.is_ideal(&candidate) {
            return Err(Error::Internal("trace-form radical is not an ideal".into()));
        }
        let ideal = Ideal { space: candidate };
        if ideal.nilpotency_index(self).is_none() {
            return Err(Error::Internal("trace-form radical is not nilpotent".into()));
        }
        Ok(ideal)
    }

    /// For finite-dimensional algebras in characteristic zero the Jacobson
    /// radical is the largest nilpotent ideal.
    pub fn jacobson_radical(&self) -> Result<Ideal> {
        self.wedderburn_radical()
    }

    /// Iterated radicals of quotients: `P_0 = 0`, `P_{a+1}/P_a = W(A/P_a)`.
    pub fn prime_radical_chain(&self) -> Result<RadicalChain> {
        let mut stages = vec![Ideal { space: Subspace::zero(self.dim) }];
        for _ in 0..=self.dim {
            let last = stages.last().expect("nonempty");
            let q = Quotient::new(self, last)?;
            let w = q.algebra().wedderburn_radical()?;
            if w.space().is_zero() {
                let stabilization_index = stages.len() - 1;
                return Ok(RadicalChain { stages, stabilization_index });
            }
            let mut lifted = last.space().clone();
            for b in w.space().basis() {
                lifted.insert(q.lift(b));
            }
            if !self.is_ideal(&lifted) {
                return Err(Error::Internal("lifted radical stage is not an ideal".into()));
            }
            stages.push(Ideal { space: lifted });
        }
        Err(Error::Internal("radical chain failed to stabilize".into()))
    }

    /// `A^n` lies in the Wedderburn radical.
    pub fn power_in_radical(&self, n: usize) -> Result<bool> {
        if n == 0 {
            return Err(Error::Invalid("power must be at least 1".into()));
        }
        let w = self.wedderburn_radical()?;
        Ok(self.power_space(n).is_subspace_of(w.space()))
    }

    /// Solves `y + b = y b = b y` for `b`, the quasi-inverse of `y`, by a
    /// linear solve. `None` when `y` is not quasi-regular.
    pub fn quasi_inverse(&self, y: &Vector) -> Option<Vector> {
        let n = self.dim;
        let id = Matrix::identity(n);
        let l = self.left_mul_matrix(y).sub(&id);
        let r = self.right_mul_matrix(y).sub(&id);
        let mut rows: Vec<Vec<Scalar>> = (0..n).map(|i| l.row(i).into_coords()).collect();
        rows.extend((0..n).map(|i| r.row(i).into_coords()));
        let m = Matrix::from_rows(rows).expect("rectangular");
        let mut rhs = y.clone().into_coords();
        rhs.extend(y.iter().cloned());
        m.solve(&Vector::new(rhs))
    }

    /// Quasi-inverse of a nilpotent element as the finite geometric series
    /// `-(y + y^2 + ... + y^{k-1})`.
    pub fn quasi_inverse_series(&self, y: &Vector) -> Option<Vector> {
        let k = self.element_nilpotency_index(y)?;
        let mut b = Vector::zeros(self.dim);
        let mut p = y.clone();
        for _ in 1..k {
            b = &b - &p;
            p = self.mul(&p, y);
        }
        Some(b)
    }
}

impl Matrix {
    /// One solution of `M x = rhs`, or `None` when inconsistent.
    pub fn solve(&self, rhs: &Vector) -> Option<Vector> {
        assert_eq!(rhs.len(), self.rows());
        let n = self.cols();
        let aug: Vec<Vector> = (0..self.rows())
            .map(|i| {
                let mut row = self.row(i).into_coords();
                row.push(rhs[i].clone());
                Vector::new(row)
            })
            .collect();
        let rref = Subspace::from_rows(n + 1, aug).expect("augmented width");
        let mut x = Vector::zeros(n);
        for (b, &p) in rref.basis().iter().zip(rref.pivots()) {
            if p == n {
                return None;
            }
            x[p] = b[n].clone();
        }
        Some(x)
    }
}

/// A two-sided ideal, stored as its underlying subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    space: Subspace,
}

impl Ideal {
    /// Wraps `space` after checking it is an ideal of `algebra`.
    pub fn new(algebra: &AlgebraPresentation, space: Subspace) -> Result<Self> {
        if space.ambient() != algebra.dim() {
            return Err(Error::Dimension("ideal ambient".into()));
        }
        if !algebra.is_ideal(&space) {
            return Err(Error::Invalid("subspace is not a two-sided ideal".into()));
        }
        Ok(Ideal { space })
    }

    pub fn zero(dim: usize) -> Self {
        Ideal { space: Subspace::zero(dim) }
    }

    pub fn whole(dim: usize) -> Self {
        Ideal { space: Subspace::full(dim) }
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn into_space(self) -> Subspace {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// `I^k` for `k >= 1`.
    pub fn power(&self, algebra: &AlgebraPresentation, k: usize) -> Subspace {
        assert!(k >= 1);
        let mut p = self.space.clone();
        for _ in 1..k {
            if p.is_zero() {
                break;
            }
            p = algebra.product_space(&p, &self.space);
        }
        p
    }

    /// Least `s` with `I^s = 0`. Powers of a subspace ideal can only shrink,
    /// so `dim + 1` steps decide the question.
    pub fn nilpotency_index(&self, algebra: &AlgebraPresentation) -> Option<usize> {
        self.index_into(algebra, &Subspace::zero(algebra.dim()))
    }

    /// Least `s` with `I^s` contained in `target`.
    pub fn index_into(&self, algebra: &AlgebraPresentation, target: &Subspace) -> Option<usize> {
        let mut p = self.space.clone();
        for s in 1..=algebra.dim() + 1 {
            if p.is_subspace_of(target) {
                return Some(s);
            }
            let next = algebra.product_space(&p, &self.space);
            if next == p {
                return None;
            }
            p = next;
        }
        None
    }
}

/// The ascending chain `0 = P_0 < P_1 < ... < P_m = P(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalChain {
    pub stages: Vec<Ideal>,
    pub stabilization_index: usize,
}

impl RadicalChain {
    pub fn prime_radical(&self) -> &Ideal {
        self.stages.last().expect("chain always contains the zero stage")
    }
}

/// `A / I` presented on the complement spanned by the non-pivot coordinates of `I`.
#[derive(Clone, Debug)]
pub struct Quotient {
    algebra: AlgebraPresentation,
    kernel: Subspace,
    complement: Vec<usize>,
}

impl Quotient {
    pub fn new(parent: &AlgebraPresentation, ideal: &Ideal) -> Result<Self> {
        let kernel = ideal.space().clone();
        if kernel.ambient() != parent.dim() {
            return Err(Error::Dimension("quotient by ideal of another algebra".into()));
        }
        let complement = kernel.non_pivots();
        let project = |v: &Vector| -> Vector {
            let r = kernel.reduce(v);
            Vector::new(complement.iter().map(|&c| r[c].clone()).collect())
        };
        let m = complement.len();
        let table: Vec<Vec<Vector>> = complement
            .iter()
            .map(|&a| complement.iter().map(|&b| project(&parent.basis_product(a, b))).collect())
            .collect();
        let unit = parent.unit().filter(|_| m > 0).map(&project);
        let algebra = AlgebraPresentation::new(m, table, unit)?;
        algebra.validate()?;
        Ok(Quotient { algebra, kernel, complement })
    }

    pub fn algebra(&self) -> &AlgebraPresentation {
        &self.algebra
    }

    pub fn project(&self, v: &Vector) -> Vector {
        let r = self.kernel.reduce(v);
        Vector::new(self.complement.iter().map(|&c| r[c].clone()).collect())
    }

    pub fn lift(&self, v: &Vector) -> Vector {
        let mut out = Vector::zeros(self.kernel.ambient());
        for (x, &c) in v.iter().zip(&self.complement) {
            out[c] = x.clone();
        }
        out
    }
}

/// A subalgebra re-presented on its own echelon basis.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    algebra: AlgebraPresentation,
    space: Subspace,
}

impl Subalgebra {
    pub fn new(parent: &AlgebraPresentation, space: &Subspace) -> Result<Self> {
        if space.ambient() != parent.dim() {
            return Err(Error::Dimension("subalgebra ambient".into()));
        }
        let basis = space.basis();
        let mut table = Vec::with_capacity(basis.len());
        for x in basis {
            let mut row = Vec::with_capacity(basis.len());
            for y in basis {
                let c = space
                    .coordinates(&parent.mul(x, y))
                    .ok_or_else(|| Error::Invalid("subspace is not closed under multiplication".into()))?;
                row.push(Vector::new(c));
            }
            table.push(row);
        }
        let unit = parent
            .unit()
            .and_then(|u| space.coordinates(u))
            .map(Vector::new)
            .filter(|_| !basis.is_empty());
        let algebra = AlgebraPresentation::new(basis.len(), table, unit)?;
        algebra.validate()?;
        Ok(Subalgebra { algebra, space: space.clone() })
    }

    pub fn algebra(&self) -> &AlgebraPresentation {
        &self.algebra
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    /// Coordinates of a parent element in the subalgebra basis.
    pub fn restrict(&self, v: &Vector) -> Option<Vector> {
        self.space.coordinates(v).map(Vector::new)
    }

    pub fn embed(&self, v: &Vector) -> Vector {
        let mut out = Vector::zeros(self.space.ambient());
        for (c, b) in v.iter().zip(self.space.basis()) {
            out.add_scaled(c, b);
        }
        out
    }

    pub fn embed_subspace(&self, s: &Subspace) -> Subspace {
        Subspace::from_rows(self.space.ambient(), s.basis().iter().map(|b| self.embed(b)).collect())
            .expect("embedded vectors have parent length")
    }
}

fn sparse(v: &Vector) -> Vec<(usize, Scalar)> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect()
}
