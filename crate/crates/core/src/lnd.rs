//! Locally nilpotent derivations: kernel filtration, degree, exponential,
//! the Grassmann algebra with its shift derivation, the nil test on the
//! invariants and the skew presentation induced by `ker d^2`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{AlgebraPresentation, Subalgebra};
use crate::error::{Error, Result};
use crate::linear::{format_scalar, int, Matrix, Scalar, Subspace, Vector};
use crate::maps::{check_sigma_derivation, Automorphism, Generator, GeneratorFamily, LinearEndomap, SigmaDerivation};

/// Largest supported Grassmann truncation (`dim = 2^g - 1`).
pub const GRASSMANN_MAX_G: usize = 10;

/// A derivation (`sigma = id`) of a fixed algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    map: LinearEndomap,
}

impl Derivation {
    pub fn new(algebra: &AlgebraPresentation, map: LinearEndomap) -> Result<Self> {
        check_sigma_derivation(algebra, &LinearEndomap::identity(algebra.dim()), &map)?;
        Ok(Derivation { map })
    }

    /// Skips the Leibniz check; for maps that are derivations by construction.
    pub(crate) fn trusted(map: LinearEndomap) -> Self {
        Derivation { map }
    }

    pub fn zero(dim: usize) -> Self {
        Derivation { map: LinearEndomap::zero(dim) }
    }

    pub fn map(&self) -> &LinearEndomap {
        &self.map
    }

    pub fn dim(&self) -> usize {
        self.map.dim()
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        self.map.apply(v)
    }

    pub fn negate(&self) -> Derivation {
        Derivation { map: self.map.scale(&-Scalar::one()) }
    }

    /// In finite dimension local nilpotency is nilpotency of the matrix.
    pub fn is_locally_nilpotent(&self) -> bool {
        self.map.matrix().is_nilpotent()
    }

    /// Least `m` with `d^m = 0`.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let n = self.dim();
        let mut p = Matrix::identity(n);
        for m in 0..=n {
            if p.is_zero() {
                return Some(m);
            }
            p = p.mul(self.map.matrix());
        }
        None
    }

    fn require_nilpotent(&self) -> Result<usize> {
        self.nilpotency_index().ok_or_else(|| Error::NotLocallyNilpotent("derivation".into()))
    }

    /// `R^d = ker d`.
    pub fn constants(&self) -> Subspace {
        self.map.matrix().kernel()
    }

    pub fn image(&self) -> Subspace {
        self.map.matrix().image()
    }

    pub fn is_surjective(&self) -> bool {
        self.map.matrix().rank() == self.dim()
    }
}

/// Least `n` with `d^{n+1}(a) = 0`.
pub fn degree(d: &Derivation, a: &Vector) -> Result<usize> {
    if a.len() != d.dim() {
        return Err(Error::Dimension(format!("element of length {} for dimension {}", a.len(), d.dim())));
    }
    if a.is_zero() {
        return Err(Error::Invalid("the zero element has no degree".into()));
    }
    let cap = d.require_nilpotent()?;
    let mut x = a.clone();
    for n in 0..cap {
        x = d.apply(&x);
        if x.is_zero() {
            return Ok(n);
        }
    }
    Err(Error::Internal("iterates of a nilpotent map did not vanish".into()))
}

/// `R_0 ⊆ R_1 ⊆ ...` with `R_n = ker d^{n+1}`, ending at the full space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    pub stages: Vec<Subspace>,
}

impl Filtration {
    /// The stage `R_n`, saturating at the full space.
    pub fn stage(&self, n: usize) -> &Subspace {
        &self.stages[n.min(self.stages.len() - 1)]
    }

    pub fn to_strings(&self) -> Vec<Vec<Vec<String>>> {
        self.stages.iter().map(Subspace::to_strings).collect()
    }
}

pub fn kernel_filtration(d: &Derivation) -> Result<Filtration> {
    d.require_nilpotent()?;
    let n = d.dim();
    let mut stages = Vec::new();
    let mut p = d.map().matrix().clone();
    loop {
        let k = p.kernel();
        let full = k.dim() == n;
        stages.push(k);
        if full {
            return Ok(Filtration { stages });
        }
        p = p.mul(d.map().matrix());
    }
}

/// `exp(d) = sum_j d^j / j!`, validated as an automorphism; its inverse is `exp(-d)`.
pub fn exp_derivation(algebra: &AlgebraPresentation, d: &Derivation) -> Result<Automorphism> {
    let exp = exp_matrix(d)?;
    let inv = exp_matrix(&d.negate())?;
    let aut = Automorphism::new(algebra, LinearEndomap::new(exp)?)?;
    if aut.inverse().matrix() != &inv {
        return Err(Error::Internal("exp(-d) is not the inverse of exp(d)".into()));
    }
    Ok(aut)
}

/// The matrix of `exp(d)` without the automorphism check.
pub fn exp_matrix(d: &Derivation) -> Result<Matrix> {
    let m = d.require_nilpotent()?;
    let n = d.dim();
    let mut sum = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    for j in 1..m {
        term = term.mul(d.map().matrix()).scale(&Scalar::new(1.into(), (j as i64).into()));
        sum = sum.add(&term);
    }
    Ok(sum)
}

// ---------------------------------------------------------------------------
// Grassmann algebra

/// A Grassmann monomial `e_{i_1} ... e_{i_n}` with `1 <= i_1 < ... < i_n`.
pub type Monomial = Vec<usize>;

/// Basis of the truncation `E_g`: nonempty subsets of `{1..g}`, by size then lex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassmannBasis {
    g: usize,
    monomials: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
}

impl GrassmannBasis {
    pub fn new(g: usize) -> Result<Self> {
        if g == 0 {
            return Err(Error::Invalid("Grassmann truncation needs g >= 1".into()));
        }
        if g > GRASSMANN_MAX_G {
            return Err(Error::CapExceeded { what: format!("Grassmann truncation g = {g}"), cap: GRASSMANN_MAX_G });
        }
        let mut monomials: Vec<Monomial> = (1u32..(1 << g))
            .map(|mask| (1..=g).filter(|i| mask & (1 << (i - 1)) != 0).collect())
            .collect();
        monomials.sort_by(|a: &Monomial, b: &Monomial| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Ok(GrassmannBasis { g, monomials, index })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn index_of(&self, m: &[usize]) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn monomial(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }

    pub fn label(&self, i: usize) -> String {
        monomial_label(&self.monomials[i])
    }

    /// Coordinates of a sparse element; `None` if it leaves the truncation.
    pub fn to_vector(&self, x: &GrassmannElement) -> Option<Vector> {
        let mut v = Vector::zeros(self.dim());
        for (m, c) in x {
            v[self.index_of(m)?] = c.clone();
        }
        Some(v)
    }

    pub fn to_element(&self, v: &Vector) -> GrassmannElement {
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.monomials[i].clone(), c.clone()))
            .collect()
    }
}

pub fn monomial_label(m: &[usize]) -> String {
    let idx: Vec<String> = m.iter().map(|i| i.to_string()).collect();
    format!("e{}", idx.join(if m.iter().any(|&i| i > 9) { "," } else { "" }))
}

/// Product of two monomials in the infinite Grassmann algebra: `0` if they
/// share an index, otherwise the union with sign `(-1)^{#{(s,t): s in S, t in T, s > t}}`.
pub fn monomial_product(s: &[usize], t: &[usize]) -> Option<(Monomial, i64)> {
    let mut inversions = 0usize;
    for &a in s {
        for &b in t {
            if a == b {
                return None;
            }
            if a > b {
                inversions += 1;
            }
        }
    }
    let mut u: Monomial = s.iter().chain(t).copied().collect();
    u.sort_unstable();
    Some((u, if inversions.is_multiple_of(2) { 1 } else { -1 }))
}

/// `d(e_S) = sum_{i in S, i > 1, i-1 notin S} e_{S - i + (i-1)}` (no sign: the
/// lowered index keeps its position).
pub fn monomial_derivative(s: &[usize]) -> Vec<Monomial> {
    s.iter()
        .enumerate()
        .filter(|&(k, &i)| i > 1 && (k == 0 || s[k - 1] != i - 1))
        .map(|(k, _)| {
            let mut t = s.to_vec();
            t[k] -= 1;
            t
        })
        .collect()
}

/// A sparse element of the infinite Grassmann algebra.
pub type GrassmannElement = BTreeMap<Monomial, Scalar>;

/// `d` on a sparse element of the infinite Grassmann algebra.
pub fn grassmann_d(x: &GrassmannElement) -> GrassmannElement {
    let mut out = GrassmannElement::new();
    for (m, c) in x {
        for t in monomial_derivative(m) {
            add_term(&mut out, t, c);
        }
    }
    out
}

fn add_term(x: &mut GrassmannElement, m: Monomial, c: &Scalar) {
    let e = x.entry(m.clone()).or_insert_with(Scalar::zero);
    *e += c;
    if e.is_zero() {
        x.remove(&m);
    }
}

/// The truncation `E_g` on [`GrassmannBasis`] order with its derivation
/// `d(e_{i+1}) = e_i`, `d(e_1) = 0`.
pub fn grassmann_algebra(g: usize) -> Result<(AlgebraPresentation, Derivation)> {
    let basis = GrassmannBasis::new(g)?;
    let dim = basis.dim();
    let algebra = AlgebraPresentation::from_sparse_fn(dim, None, |i, j| {
        match monomial_product(basis.monomial(i), basis.monomial(j)) {
            Some((u, sign)) => vec![(basis.index_of(&u).expect("union stays in range"), int(sign))],
            None => Vec::new(),
        }
    });
    let mut m = Matrix::zeros(dim, dim);
    for (j, s) in basis.monomials().iter().enumerate() {
        for t in monomial_derivative(s) {
            m[(basis.index_of(&t).expect("lowering keeps indices in range"), j)] += int(1);
        }
    }
    let d = Derivation::trusted(LinearEndomap::new(m)?);
    Ok((algebra, d))
}

/// A preimage under `d`, computed in the infinite Grassmann algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassmannPreimage {
    pub target: Monomial,
    pub terms: GrassmannElement,
    /// Largest generator index occurring in the preimage.
    pub g_used: usize,
}

impl GrassmannPreimage {
    pub fn fits(&self, g: usize) -> bool {
        self.g_used <= g
    }

    pub fn to_strings(&self) -> Vec<(String, String)> {
        self.terms.iter().map(|(m, c)| (monomial_label(m), format_scalar(c))).collect()
    }
}

/// Preimage of a basis monomial by the lexicographic recursion: start from
/// the monomial with its top index raised by one and subtract preimages of the
/// lex-smaller correction terms.
pub fn grassmann_preimage_infinite(m: &[usize]) -> Result<GrassmannPreimage> {
    if m.is_empty() || m[0] == 0 || m.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Invalid(format!("{m:?} is not a strictly increasing list of positive indices")));
    }
    let mut memo = BTreeMap::new();
    let terms = preimage_rec(m, &mut memo);
    let g_used = terms.keys().filter_map(|k| k.last()).copied().max().unwrap_or(0);
    Ok(GrassmannPreimage { target: m.to_vec(), terms, g_used })
}

fn preimage_rec(m: &[usize], memo: &mut BTreeMap<Monomial, GrassmannElement>) -> GrassmannElement {
    if let Some(x) = memo.get(m) {
        return x.clone();
    }
    let n = m.len();
    let mut x0 = m.to_vec();
    x0[n - 1] += 1;
    let mut out = GrassmannElement::new();
    out.insert(x0.clone(), Scalar::one());
    // corrections: lower an earlier index of x0 (the sum of the first n-1
    // indices drops, so the recursion terminates)
    for corr in monomial_derivative(&x0) {
        if corr[n - 1] == x0[n - 1] {
            for (k, c) in preimage_rec(&corr, memo) {
                add_term(&mut out, k, &-c);
            }
        }
    }
    memo.insert(m.to_vec(), out.clone());
    out
}

/// Preimage of `m` inside `E_g`. Fails with a boundary error if the top index
/// is `g` or if the recursion needs generators beyond `e_g`.
pub fn grassmann_preimage(g: usize, m: &[usize]) -> Result<Vector> {
    let basis = GrassmannBasis::new(g)?;
    if basis.index_of(m).is_none() {
        return Err(Error::Invalid(format!("{} is not a basis monomial of E_{g}", monomial_label(m))));
    }
    if m.last() == Some(&g) {
        return Err(Error::Boundary(format!("{} has top index {g}; its preimage needs e_{}", monomial_label(m), g + 1)));
    }
    let p = grassmann_preimage_infinite(m)?;
    basis.to_vector(&p.terms).ok_or_else(|| {
        Error::Boundary(format!("the preimage of {} uses e_{} beyond E_{g}", monomial_label(m), p.g_used))
    })
}

/// `d` has full rank.
pub fn check_surjective(d: &Derivation) -> bool {
    d.is_surjective()
}

/// Surjectivity of the Grassmann derivation seen through the truncation `E_g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrassmannSurjectivity {
    pub g: usize,
    /// `d` restricted to `E_g` is onto `E_g` (never, as `e_g` has no preimage).
    pub full_rank: bool,
    /// Monomials with top index `< g`.
    pub targets: usize,
    /// Targets whose recursive preimage satisfies `d(x) = m` exactly.
    pub verified: usize,
    /// Targets whose preimage lies inside `E_g`.
    pub inside_truncation: usize,
    /// Targets that lie in the image of `d` restricted to `E_g`.
    pub in_truncated_image: usize,
    /// Largest generator index any preimage needed.
    pub max_g_used: usize,
    pub outside: Vec<String>,
}

pub fn grassmann_surjectivity(g: usize) -> Result<GrassmannSurjectivity> {
    let basis = GrassmannBasis::new(g)?;
    let (_, d) = grassmann_algebra(g)?;
    let image = d.image();
    let mut report = GrassmannSurjectivity {
        g,
        full_rank: d.is_surjective(),
        targets: 0,
        verified: 0,
        inside_truncation: 0,
        in_truncated_image: 0,
        max_g_used: 0,
        outside: Vec::new(),
    };
    for (i, m) in basis.monomials().iter().enumerate() {
        if m.last() == Some(&g) {
            continue;
        }
        report.targets += 1;
        let p = grassmann_preimage_infinite(m)?;
        let mut target = GrassmannElement::new();
        target.insert(m.clone(), Scalar::one());
        if grassmann_d(&p.terms) == target {
            report.verified += 1;
        }
        report.max_g_used = report.max_g_used.max(p.g_used);
        if p.fits(g) {
            report.inside_truncation += 1;
        } else {
            report.outside.push(monomial_label(m));
        }
        if image.contains(&Vector::unit(basis.dim(), i)) {
            report.in_truncated_image += 1;
        }
    }
    Ok(report)
}

/// Span of the monomials of `E_g` with top index `< g`.
pub fn grassmann_restricted_targets(g: usize) -> Result<Subspace> {
    let basis = GrassmannBasis::new(g)?;
    let rows = (0..basis.dim())
        .filter(|&i| basis.monomial(i).last() != Some(&g))
        .map(|i| Vector::unit(basis.dim(), i))
        .collect();
    Subspace::from_rows(basis.dim(), rows)
}

// ---------------------------------------------------------------------------
// Nil test on the invariants

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NilTestTranscript {
    pub dim: usize,
    pub constants_dim: usize,
    pub jacobson_dim: usize,
    pub image_dim: usize,
    /// `J ∩ R^d ∩ d(R)`.
    pub intersection: Vec<Vec<String>>,
    /// Nilpotency index of each basis element of the intersection.
    pub element_indices: Vec<usize>,
    pub intersection_nilpotency_index: usize,
    pub prime_radical_of_constants_dim: usize,
    pub surjective: bool,
    /// `J ∩ R^d ⊆ P(R^d)`; checked only when `d` is surjective.
    pub jacobson_constants_in_prime_radical: Option<bool>,
}

/// For a locally nilpotent `d` with commutative `R^d`, `J ∩ R^d ∩ d(R)` is a
/// nil ideal of `R^d`, and `J ∩ R^d ⊆ P(R^d)` when `d` is onto.
///
/// A failed hypothesis is `Error::Hypothesis`; a failed conclusion is
/// `Error::Conclusion`.
pub fn check_nil_intersection(algebra: &AlgebraPresentation, d: &Derivation) -> Result<NilTestTranscript> {
    if d.dim() != algebra.dim() {
        return Err(Error::Dimension(format!("derivation of size {} on algebra of dim {}", d.dim(), algebra.dim())));
    }
    if !d.is_locally_nilpotent() {
        return Err(Error::NotLocallyNilpotent("derivation".into()));
    }
    let constants = d.constants();
    if !algebra.is_commutative_on(&constants) {
        return Err(Error::Hypothesis("the invariant subalgebra R^d is not commutative".into()));
    }
    let j = algebra.jacobson_radical()?;
    let image = d.image();
    let s = j.space().intersection(&constants)?.intersection(&image)?;
    let mut element_indices = Vec::new();
    for b in s.basis() {
        match algebra.element_nilpotency_index(b) {
            Some(k) => element_indices.push(k),
            None => {
                return Err(Error::Conclusion(format!(
                    "basis element {:?} of J ∩ R^d ∩ d(R) is not nilpotent",
                    b.to_strings()
                )))
            }
        }
    }
    let sub = Subalgebra::new(algebra, &constants)?;
    let p = sub.algebra().prime_radical_chain()?.prime_radical().space().clone();
    let p_in_r = sub.embed_subspace(&p);
    let s_ideal_index = {
        // nilpotency of S as a (non-unital) subalgebra: S^k = 0
        let mut power = s.clone();
        let mut k = 1;
        while !power.is_zero() {
            if k > algebra.dim() + 1 {
                return Err(Error::Conclusion("J ∩ R^d ∩ d(R) is not nilpotent".into()));
            }
            power = algebra.product_space(&power, &s);
            k += 1;
        }
        k
    };
    if !s.is_subspace_of(&p_in_r) {
        return Err(Error::Conclusion("J ∩ R^d ∩ d(R) is not contained in P(R^d)".into()));
    }
    let surjective = d.is_surjective();
    let jacobson_constants_in_prime_radical = if surjective {
        let jc = j.space().intersection(&constants)?;
        if !jc.is_subspace_of(&p_in_r) {
            return Err(Error::Conclusion("d is onto but J ∩ R^d is not inside P(R^d)".into()));
        }
        Some(true)
    } else {
        None
    };
    Ok(NilTestTranscript {
        dim: algebra.dim(),
        constants_dim: constants.dim(),
        jacobson_dim: j.dim(),
        image_dim: image.dim(),
        intersection: s.to_strings(),
        element_indices,
        intersection_nilpotency_index: s_ideal_index,
        prime_radical_of_constants_dim: p.dim(),
        surjective,
        jacobson_constants_in_prime_radical,
    })
}

// ---------------------------------------------------------------------------
// Skew presentation over the invariants

/// `R` as a skew extension of `R^d` with generators from `ker d^2`.
#[derive(Clone, Debug)]
pub struct InducedPresentation {
    /// `R^d` re-presented with its own structure constants.
    pub base: Subalgebra,
    pub r1: Subspace,
    /// Generators `t`: a complement of `R_0` in `R_1`, as elements of `R`.
    pub generators: Vec<Vector>,
    /// `sigma_t = id`, `delta_t(r) = t r - r t` on `R^d` coordinates.
    pub family: GeneratorFamily,
}

pub fn induced_presentation(algebra: &AlgebraPresentation, d: &Derivation) -> Result<InducedPresentation> {
    if d.dim() != algebra.dim() {
        return Err(Error::Dimension(format!("derivation of size {} on algebra of dim {}", d.dim(), algebra.dim())));
    }
    let filtration = kernel_filtration(d)?;
    let r0 = filtration.stage(0).clone();
    let r1 = filtration.stage(1).clone();
    if !algebra.is_commutative_on(&r0) {
        return Err(Error::Hypothesis("the invariant subalgebra R^d is not commutative".into()));
    }
    if !algebra.subalgebra_generated_by(&r1).is_full() {
        return Err(Error::Hypothesis("R is not generated by R_1 = ker d^2".into()));
    }
    let base = Subalgebra::new(algebra, &r0)?;
    let mut span = r0.clone();
    let mut generators = Vec::new();
    for b in r1.basis() {
        if span.insert(b.clone()) {
            generators.push(b.clone());
        }
    }
    let k = r0.dim();
    let mut gens = Vec::new();
    for (i, t) in generators.iter().enumerate() {
        let mut images = Vec::with_capacity(k);
        for r in r0.basis() {
            let c = algebra.commutator(t, r);
            let local = base
                .restrict(&c)
                .ok_or_else(|| Error::Conclusion("a commutator t r - r t left R^d".into()))?;
            images.push(local);
        }
        let delta = LinearEndomap::from_images(k, &images);
        let map = SigmaDerivation::derivation(base.algebra(), delta)?;
        gens.push(Generator { label: format!("t{}", i + 1), map });
    }
    let family = GeneratorFamily::new(k, gens)?;
    Ok(InducedPresentation { base, r1, generators, family })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InclusionTranscript {
    pub dim: usize,
    pub constants_dim: usize,
    pub generators: usize,
    pub prime_radical_dim: usize,
    pub jacobson_dim: usize,
    /// `dim` of the span of `p w`, `p in P(R^d)`, `w` a word in the generators.
    pub extension_ideal_dim: usize,
    /// Longest word needed to reach that span.
    pub max_word_length: usize,
    pub products_checked: usize,
    pub jacobson_nilpotency_index: usize,
    /// Per product `(i, j)` of Jacobson basis elements, the words used in its
    /// decomposition.
    pub decompositions: Vec<ProductDecomposition>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductDecomposition {
    pub left: usize,
    pub right: usize,
    /// `(P basis index, word as generator indices, coefficient)`.
    pub terms: Vec<(usize, Vec<usize>, String)>,
}

/// Which part of `R` must lie in `d(R)`.
#[derive(Clone, Debug)]
pub enum SurjectivityTarget {
    Full,
    /// Only this subspace needs preimages (Grassmann truncations).
    Restricted(Subspace),
}

/// `J(R)^2 ⊆ P<T>*` through the induced presentation, and nilpotency of `J(R)`.
pub fn check_jacobson_locally_nilpotent(
    algebra: &AlgebraPresentation,
    d: &Derivation,
    target: &SurjectivityTarget,
) -> Result<InclusionTranscript> {
    let image = d.image();
    match target {
        SurjectivityTarget::Full => {
            if image.dim() != algebra.dim() {
                return Err(Error::Hypothesis(format!("d is not surjective (rank {} < {})", image.dim(), algebra.dim())));
            }
        }
        SurjectivityTarget::Restricted(t) => {
            if !t.is_subspace_of(&image) {
                return Err(Error::Hypothesis("the restricted target is not inside d(R)".into()));
            }
        }
    }
    let induced = induced_presentation(algebra, d)?;
    let base = induced.base.algebra();
    let p_local = base.prime_radical_chain()?.prime_radical().space().clone();
    let p = induced.base.embed_subspace(&p_local);
    // span of p w, tracking (basis index of P, word) for each new direction
    let mut spanning: Vec<(usize, Vec<usize>, Vector)> =
        p.basis().iter().enumerate().map(|(i, b)| (i, Vec::new(), b.clone())).collect();
    let mut span = Subspace::zero(algebra.dim());
    let mut kept: Vec<(usize, Vec<usize>, Vector)> = Vec::new();
    let mut frontier = Vec::new();
    for item in spanning.drain(..) {
        if span.insert(item.2.clone()) {
            kept.push(item.clone());
            frontier.push(item);
        }
    }
    let mut max_word_length = 0;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (pi, word, v) in &frontier {
            for (ti, t) in induced.generators.iter().enumerate() {
                let w = algebra.mul(v, t);
                if span.insert(w.clone()) {
                    let mut word = word.clone();
                    word.push(ti);
                    max_word_length = max_word_length.max(word.len());
                    let item = (*pi, word, w);
                    kept.push(item.clone());
                    next.push(item);
                }
            }
        }
        frontier = next;
    }
    let j = algebra.jacobson_radical()?;
    let coeff_matrix = Matrix::from_columns(algebra.dim(), &kept.iter().map(|k| k.2.clone()).collect::<Vec<_>>());
    let mut decompositions = Vec::new();
    let jb = j.space().basis();
    for (a, x) in jb.iter().enumerate() {
        for (b, y) in jb.iter().enumerate() {
            let xy = algebra.mul(x, y);
            let coeffs = if kept.is_empty() {
                if xy.is_zero() {
                    Some(Vector::zeros(0))
                } else {
                    None
                }
            } else {
                coeff_matrix.solve(&xy)
            };
            let Some(coeffs) = coeffs else {
                return Err(Error::Conclusion(format!(
                    "the product of Jacobson basis elements {a} and {b} is outside P<T>*"
                )));
            };
            let terms = coeffs
                .iter()
                .zip(&kept)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, (pi, w, _))| (*pi, w.clone(), format_scalar(c)))
                .collect();
            decompositions.push(ProductDecomposition { left: a, right: b, terms });
        }
    }
    let jacobson_nilpotency_index = j
        .nilpotency_index(algebra)
        .ok_or_else(|| Error::Conclusion("the Jacobson radical is not nilpotent".into()))?;
    Ok(InclusionTranscript {
        dim: algebra.dim(),
        constants_dim: base.dim(),
        generators: induced.generators.len(),
        prime_radical_dim: p.dim(),
        jacobson_dim: j.dim(),
        extension_ideal_dim: span.dim(),
        max_word_length,
        products_checked: jb.len() * jb.len(),
        jacobson_nilpotency_index,
        decompositions,
    })
}
