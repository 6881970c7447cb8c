//! Automorphisms, sigma-derivations and the operator calculus built from them.
//!
//! A [`GeneratorFamily`] attaches to each generator label `t` a pair
//! `(sigma_t, delta_t)`. From a finite family we form
//!
//! * `Delta_{n,k}`: all `n`-fold compositions of maps from the family using
//!   exactly `k` of the `delta`s and `n - k` of the `sigma`s;
//! * the stable hull `V(G)`: the smallest subspace containing `V` that is
//!   mapped into itself by every `sigma` and every `sigma^{-1}`;
//! * the modules `V_k` with `V_0 = V(G)` and
//!   `V_k = (sum_delta delta(V_{k-1}))(G)`, which contain `Delta_{n,k}(V)` for
//!   every `n >= k`.
//!
//! Every automorphism of a finite-dimensional algebra is locally finite, so
//! the family needs no separate finiteness check.

use serde::Serialize;

use crate::algebra::{AlgebraPresentation, LawViolation, RadicalChain};
use crate::error::{Error, Result};
use crate::linear::{Matrix, Scalar, Subspace, Vector};

/// Default bound on `n` for explicit `Delta_{n,k}` enumeration.
pub const DEFAULT_DELTA_CAP: usize = 8;

/// A linear map of the algebra, as a square matrix on coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearEndomap {
    matrix: Matrix,
}

impl LinearEndomap {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Dimension(format!(
                "endomorphism matrix is {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(LinearEndomap { matrix })
    }

    pub fn identity(dim: usize) -> Self {
        LinearEndomap { matrix: Matrix::identity(dim) }
    }

    pub fn zero(dim: usize) -> Self {
        LinearEndomap { matrix: Matrix::zeros(dim, dim) }
    }

    /// Builds the map from the images of the basis vectors.
    pub fn from_images(dim: usize, images: &[Vector]) -> Self {
        assert_eq!(images.len(), dim);
        LinearEndomap { matrix: Matrix::from_columns(dim, images) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        self.matrix.apply(v)
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &LinearEndomap) -> LinearEndomap {
        LinearEndomap { matrix: self.matrix.mul(&other.matrix) }
    }

    pub fn scale(&self, c: &Scalar) -> LinearEndomap {
        LinearEndomap { matrix: self.matrix.scale(c) }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn image_of(&self, s: &Subspace) -> Subspace {
        s.image_under(&self.matrix)
    }

    /// The inner derivation `x -> u x - x u`.
    pub fn inner_derivation(algebra: &AlgebraPresentation, u: &Vector) -> Self {
        let n = algebra.dim();
        let images: Vec<Vector> = (0..n).map(|j| algebra.commutator(u, &algebra.basis_vector(j))).collect();
        Self::from_images(n, &images)
    }

    fn check_shape(&self, algebra: &AlgebraPresentation) -> std::result::Result<(), LawViolation> {
        if self.matrix.rows() != algebra.dim() || self.matrix.cols() != algebra.dim() {
            return Err(LawViolation::Shape {
                rows: self.matrix.rows(),
                cols: self.matrix.cols(),
                dim: algebra.dim(),
            });
        }
        Ok(())
    }
}

/// Invertible, multiplicative (and unit-fixing, if unital) on all basis pairs.
pub fn check_automorphism(algebra: &AlgebraPresentation, m: &LinearEndomap) -> std::result::Result<(), LawViolation> {
    m.check_shape(algebra)?;
    if m.matrix.inverse().is_none() {
        return Err(LawViolation::NotInvertible);
    }
    let n = algebra.dim();
    let images: Vec<Vector> = (0..n).map(|i| m.apply(&algebra.basis_vector(i))).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = m.apply(&algebra.basis_product(i, j));
            let rhs = algebra.mul(&images[i], &images[j]);
            if lhs != rhs {
                return Err(LawViolation::Multiplicative { i, j });
            }
        }
    }
    if let Some(u) = algebra.unit() {
        if &m.apply(u) != u {
            return Err(LawViolation::UnitNotFixed);
        }
    }
    Ok(())
}

/// `delta(xy) = delta(x) y + sigma(x) delta(y)` on all basis pairs.
pub fn check_sigma_derivation(
    algebra: &AlgebraPresentation,
    sigma: &LinearEndomap,
    delta: &LinearEndomap,
) -> std::result::Result<(), LawViolation> {
    sigma.check_shape(algebra)?;
    delta.check_shape(algebra)?;
    let n = algebra.dim();
    let s: Vec<Vector> = (0..n).map(|i| sigma.apply(&algebra.basis_vector(i))).collect();
    let d: Vec<Vector> = (0..n).map(|i| delta.apply(&algebra.basis_vector(i))).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = delta.apply(&algebra.basis_product(i, j));
            let rhs = &algebra.mul(&d[i], &algebra.basis_vector(j)) + &algebra.mul(&s[i], &d[j]);
            if lhs != rhs {
                return Err(LawViolation::Leibniz { i, j });
            }
        }
    }
    Ok(())
}

/// A validated algebra automorphism together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    map: LinearEndomap,
    inverse: LinearEndomap,
}

impl Automorphism {
    pub fn new(algebra: &AlgebraPresentation, map: LinearEndomap) -> Result<Self> {
        check_automorphism(algebra, &map)?;
        let inverse = LinearEndomap { matrix: map.matrix.inverse().ok_or(LawViolation::NotInvertible)? };
        Ok(Automorphism { map, inverse })
    }

    pub fn identity(dim: usize) -> Self {
        Automorphism { map: LinearEndomap::identity(dim), inverse: LinearEndomap::identity(dim) }
    }

    pub fn map(&self) -> &LinearEndomap {
        &self.map
    }

    pub fn inverse(&self) -> &LinearEndomap {
        &self.inverse
    }

    pub fn is_identity(&self) -> bool {
        self.map.matrix == Matrix::identity(self.map.dim())
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        self.map.apply(v)
    }
}

/// A pair `(sigma, delta)` where `delta` is a `sigma`-derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaDerivation {
    sigma: Automorphism,
    delta: LinearEndomap,
}

impl SigmaDerivation {
    pub fn new(algebra: &AlgebraPresentation, sigma: Automorphism, delta: LinearEndomap) -> Result<Self> {
        check_sigma_derivation(algebra, &sigma.map, &delta)?;
        Ok(SigmaDerivation { sigma, delta })
    }

    /// An ordinary derivation (`sigma = id`).
    pub fn derivation(algebra: &AlgebraPresentation, delta: LinearEndomap) -> Result<Self> {
        Self::new(algebra, Automorphism::identity(algebra.dim()), delta)
    }

    pub fn sigma(&self) -> &Automorphism {
        &self.sigma
    }

    pub fn delta(&self) -> &LinearEndomap {
        &self.delta
    }
}

/// `delta sigma = q sigma delta` with `1 + q + ... + q^n != 0` for all `n > 0`.
/// Over Q the geometric sums vanish only for `q = -1`.
pub fn check_q_skew(sd: &SigmaDerivation, q: &Scalar) -> Result<bool> {
    use num_traits::{One, Zero};
    if q.is_zero() {
        return Err(Error::Invalid("q must be nonzero".into()));
    }
    if *q == -Scalar::one() {
        return Ok(false);
    }
    let ds = sd.delta.matrix.mul(&sd.sigma.map.matrix);
    let sd_ = sd.sigma.map.matrix.mul(&sd.delta.matrix).scale(q);
    Ok(ds == sd_)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub map: SigmaDerivation,
}

/// The finite family `T_0` with its automorphisms `G_0` and skew derivations
/// `D_0`, in generator order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorFamily {
    dim: usize,
    generators: Vec<Generator>,
}

impl GeneratorFamily {
    pub fn new(dim: usize, generators: Vec<Generator>) -> Result<Self> {
        for g in &generators {
            if g.map.delta.dim() != dim {
                return Err(Error::Dimension(format!("generator {} acts on the wrong dimension", g.label)));
            }
        }
        let mut labels: Vec<&str> = generators.iter().map(|g| g.label.as_str()).collect();
        labels.sort_unstable();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid("duplicate generator label".into()));
        }
        Ok(GeneratorFamily { dim, generators })
    }

    pub fn empty(dim: usize) -> Self {
        GeneratorFamily { dim, generators: Vec::new() }
    }

    /// One generator per derivation, all with `sigma = id`, labelled `x1, x2, ...`.
    pub fn of_derivations(algebra: &AlgebraPresentation, deltas: &[LinearEndomap]) -> Result<Self> {
        let generators = deltas
            .iter()
            .enumerate()
            .map(|(i, d)| {
                Ok(Generator { label: format!("x{}", i + 1), map: SigmaDerivation::derivation(algebra, d.clone())? })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(algebra.dim(), generators)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn get(&self, i: usize) -> &Generator {
        &self.generators[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.label == label)
    }

    pub fn sigmas(&self) -> Vec<&Automorphism> {
        self.generators.iter().map(|g| &g.map.sigma).collect()
    }

    pub fn deltas(&self) -> Vec<&LinearEndomap> {
        self.generators.iter().map(|g| &g.map.delta).collect()
    }
}

/// Smallest subspace containing `v` and stable under every map in `group`
/// and its inverse.
pub fn stable_saturation(v: &Subspace, group: &[&Automorphism]) -> Subspace {
    let mut current = v.clone();
    loop {
        let mut next = current.clone();
        for g in group {
            if g.is_identity() {
                continue;
            }
            for b in current.basis() {
                next.insert(g.map.apply(b));
                next.insert(g.inverse.apply(b));
            }
        }
        if next == current {
            return current;
        }
        current = next;
    }
}

/// `sum_{phi in Delta_{n,k}} phi(V)` by enumerating every composition, with
/// `n` bounded by [`DEFAULT_DELTA_CAP`].
pub fn delta_nk_image(v: &Subspace, n: usize, k: usize, fam: &GeneratorFamily) -> Result<Subspace> {
    delta_nk_image_capped(v, n, k, fam, DEFAULT_DELTA_CAP)
}

pub fn delta_nk_image_capped(
    v: &Subspace,
    n: usize,
    k: usize,
    fam: &GeneratorFamily,
    cap: usize,
) -> Result<Subspace> {
    if k > n {
        return Err(Error::Invalid(format!("Delta_{{{n},{k}}} needs k <= n")));
    }
    if n > cap {
        return Err(Error::CapExceeded { what: format!("Delta_{{{n},{k}}} enumeration"), cap });
    }
    let mut out = Subspace::zero(v.ambient());
    if v.is_zero() {
        return Ok(out);
    }
    let sigmas: Vec<&Matrix> = fam.generators.iter().map(|g| &g.map.sigma.map.matrix).collect();
    let deltas: Vec<&Matrix> = fam.generators.iter().map(|g| &g.map.delta.matrix).collect();
    // Depth-first over compositions eta_1 ∘ ... ∘ eta_n, applying eta_n first.
    fn walk(
        images: Vec<Vector>,
        remaining: usize,
        deltas_left: usize,
        sigmas: &[&Matrix],
        deltas: &[&Matrix],
        out: &mut Subspace,
    ) {
        if remaining == 0 {
            for x in images {
                out.insert(x);
            }
            return;
        }
        if images.iter().all(Vector::is_zero) {
            return;
        }
        if deltas_left > 0 {
            for d in deltas {
                let next = images.iter().map(|x| d.apply(x)).collect();
                walk(next, remaining - 1, deltas_left - 1, sigmas, deltas, out);
            }
        }
        if remaining > deltas_left {
            for s in sigmas {
                let next = images.iter().map(|x| s.apply(x)).collect();
                walk(next, remaining - 1, deltas_left, sigmas, deltas, out);
            }
        }
    }
    walk(v.basis().to_vec(), n, k, &sigmas, &deltas, &mut out);
    Ok(out)
}

/// `Delta_{n,k}(V)` through the recurrence
/// `Delta_{n,k} = G_0 ∘ Delta_{n-1,k} ∪ D_0 ∘ Delta_{n-1,k-1}`, which needs no
/// cap. Returns the whole table `table[n][k]` for `n <= n_max`.
pub fn delta_table(v: &Subspace, n_max: usize, fam: &GeneratorFamily) -> Vec<Vec<Subspace>> {
    let dim = v.ambient();
    let mut table: Vec<Vec<Subspace>> = vec![vec![v.clone()]];
    for n in 1..=n_max {
        let prev = &table[n - 1];
        let row = (0..=n)
            .map(|k| {
                let mut s = Subspace::zero(dim);
                if k < n {
                    for g in &fam.generators {
                        for b in prev[k].basis() {
                            s.insert(g.map.sigma.map.apply(b));
                        }
                    }
                }
                if k > 0 {
                    for g in &fam.generators {
                        for b in prev[k - 1].basis() {
                            s.insert(g.map.delta.apply(b));
                        }
                    }
                }
                s
            })
            .collect();
        table.push(row);
    }
    table
}

/// `V_k` for a single `k`.
pub fn bold_vk(v: &Subspace, k: usize, fam: &GeneratorFamily) -> Subspace {
    bold_v_sequence(v, k, fam).pop().expect("sequence has k + 1 entries")
}

/// `[V_0, V_1, ..., V_{k_max}]`.
pub fn bold_v_sequence(v: &Subspace, k_max: usize, fam: &GeneratorFamily) -> Vec<Subspace> {
    let sigmas = fam.sigmas();
    let mut out = vec![stable_saturation(v, &sigmas)];
    for _ in 0..k_max {
        let prev = out.last().expect("nonempty");
        let mut w = Subspace::zero(v.ambient());
        for d in fam.deltas() {
            for b in prev.basis() {
                w.insert(d.apply(b));
            }
        }
        out.push(stable_saturation(&w, &sigmas));
    }
    out
}

/// Where a derivation moves a chain stage out of itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceFailure {
    pub stage: usize,
    pub derivation: usize,
    pub basis_vector: usize,
}

/// Every derivation maps every stage of the chain into itself.
pub fn check_strong_invariance(
    chain: &RadicalChain,
    derivations: &[&LinearEndomap],
) -> std::result::Result<(), InvarianceFailure> {
    for (stage, ideal) in chain.stages.iter().enumerate() {
        for (di, d) in derivations.iter().enumerate() {
            for (bi, b) in ideal.space().basis().iter().enumerate() {
                if !ideal.space().contains(&d.apply(b)) {
                    return Err(InvarianceFailure { stage, derivation: di, basis_vector: bi });
                }
            }
        }
    }
    Ok(())
}
