//! Arithmetic in the free skew extension `R<T; G, D>` in left-coefficient
//! normal form `sum r_w w`, the product-inclusion check and the nilpotency
//! certificates built on it.

use std::cell::{Cell, RefCell};
use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::AlgebraPresentation;
use crate::error::{Error, Result};
use crate::linear::{format_scalar, Matrix, Scalar, SparseEchelon, Subspace, Vector};
use crate::maps::{bold_v_sequence, check_strong_invariance, delta_table, GeneratorFamily, DEFAULT_DELTA_CAP};

/// A word over the generators, as indices into the family.
pub type Word = Vec<usize>;

/// Default limit on expanded terms; `ORELAB_TERM_CAP` overrides it.
pub const DEFAULT_TERM_CAP: usize = 1_000_000;

/// Largest number of tuples enumerated when building a certificate family.
pub const FAMILY_CAP: usize = 100_000;

pub fn term_cap_from_env() -> usize {
    std::env::var("ORELAB_TERM_CAP").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_TERM_CAP)
}

/// `sum_w r_w w` with base-algebra coefficients on the left.
#[derive(Clone, PartialEq, Eq)]
pub struct SkewPolynomial {
    dim: usize,
    terms: BTreeMap<Word, Vector>,
}

impl std::fmt::Debug for SkewPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl SkewPolynomial {
    pub fn zero(dim: usize) -> Self {
        SkewPolynomial { dim, terms: BTreeMap::new() }
    }

    /// `r w`.
    pub fn monomial(r: Vector, word: Word) -> Self {
        let mut p = Self::zero(r.len());
        p.add_term(word, &r);
        p
    }

    /// `r 1`.
    pub fn constant(r: Vector) -> Self {
        Self::monomial(r, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Word, Vector> {
        &self.terms
    }

    pub fn coefficient(&self, w: &[usize]) -> Vector {
        self.terms.get(w).cloned().unwrap_or_else(|| Vector::zeros(self.dim))
    }

    /// Longest word with a nonzero coefficient.
    pub fn t_degree(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).max()
    }

    pub fn add_term(&mut self, w: Word, r: &Vector) {
        if r.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(c) => {
                c.add_scaled(&Scalar::from_integer(1.into()), r);
                if c.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, r.clone());
            }
        }
    }

    pub fn add(&self, other: &SkewPolynomial) -> SkewPolynomial {
        let mut out = self.clone();
        for (w, r) in &other.terms {
            out.add_term(w.clone(), r);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> SkewPolynomial {
        let mut out = Self::zero(self.dim);
        if !c.is_zero() {
            for (w, r) in &self.terms {
                out.terms.insert(w.clone(), r.scale(c));
            }
        }
        out
    }

    fn to_sparse(&self) -> BTreeMap<(Word, usize), Scalar> {
        let mut out = BTreeMap::new();
        for (w, r) in &self.terms {
            for (i, c) in r.iter().enumerate() {
                if !c.is_zero() {
                    out.insert((w.clone(), i), c.clone());
                }
            }
        }
        out
    }

    fn from_sparse(dim: usize, m: &BTreeMap<(Word, usize), Scalar>) -> Self {
        let mut out = Self::zero(dim);
        for ((w, i), c) in m {
            out.terms.entry(w.clone()).or_insert_with(|| Vector::zeros(dim))[*i] = c.clone();
        }
        out.terms.retain(|_, r| !r.is_zero());
        out
    }

    pub fn to_json(&self, fam: &GeneratorFamily) -> Vec<serde_json::Value> {
        self.terms
            .iter()
            .map(|(w, r)| {
                serde_json::json!({
                    "word": w.iter().map(|&i| fam.get(i).label.clone()).collect::<Vec<_>>(),
                    "coefficient": r.to_strings(),
                })
            })
            .collect()
    }
}

/// `omega s = sum_w Phi_{omega,w}(s) w`, one matrix per surviving word `w`.
type WordOperator = Vec<(Word, Matrix)>;

/// Multiplication in `R<T; G, D>` for a fixed algebra and family, with a
/// budget on the number of expanded terms.
pub struct SkewRing<'a> {
    algebra: &'a AlgebraPresentation,
    family: &'a GeneratorFamily,
    cap: usize,
    used: Cell<usize>,
    operators: RefCell<HashMap<Word, std::rc::Rc<WordOperator>>>,
}

impl<'a> SkewRing<'a> {
    pub fn new(algebra: &'a AlgebraPresentation, family: &'a GeneratorFamily) -> Result<Self> {
        Self::with_cap(algebra, family, term_cap_from_env())
    }

    pub fn with_cap(algebra: &'a AlgebraPresentation, family: &'a GeneratorFamily, cap: usize) -> Result<Self> {
        if family.dim() != algebra.dim() {
            return Err(Error::Dimension(format!(
                "family on dimension {} for algebra of dimension {}",
                family.dim(),
                algebra.dim()
            )));
        }
        Ok(SkewRing { algebra, family, cap, used: Cell::new(0), operators: RefCell::new(HashMap::new()) })
    }

    pub fn algebra(&self) -> &AlgebraPresentation {
        self.algebra
    }

    pub fn family(&self) -> &GeneratorFamily {
        self.family
    }

    /// Terms expanded so far.
    pub fn terms_expanded(&self) -> usize {
        self.used.get()
    }

    fn charge(&self, n: usize) -> Result<()> {
        let used = self.used.get() + n;
        self.used.set(used);
        if used > self.cap {
            return Err(Error::CapExceeded { what: "skew polynomial expansion".into(), cap: self.cap });
        }
        Ok(())
    }

    fn check(&self, p: &SkewPolynomial) -> Result<()> {
        if p.dim != self.algebra.dim() {
            return Err(Error::Dimension(format!(
                "skew polynomial over dimension {} in a ring over dimension {}",
                p.dim,
                self.algebra.dim()
            )));
        }
        if let Some(bad) = p.terms.keys().flatten().find(|&&i| i >= self.family.len()) {
            return Err(Error::Invalid(format!("generator index {bad} outside the family")));
        }
        Ok(())
    }

    /// `t r = sigma_t(r) t + delta_t(r)`.
    pub fn push_left(&self, t: usize, r: &Vector) -> Result<SkewPolynomial> {
        if t >= self.family.len() {
            return Err(Error::Invalid(format!("generator index {t} outside the family")));
        }
        if r.len() != self.algebra.dim() {
            return Err(Error::Dimension(format!("element of length {} for dimension {}", r.len(), self.algebra.dim())));
        }
        let g = &self.family.get(t).map;
        let mut p = SkewPolynomial::monomial(g.sigma().apply(r), vec![t]);
        p.add_term(Vec::new(), &g.delta().apply(r));
        Ok(p)
    }

    pub fn push_left_label(&self, label: &str, r: &Vector) -> Result<SkewPolynomial> {
        let t = self.family.index_of(label).ok_or_else(|| Error::Invalid(format!("unknown generator {label}")))?;
        self.push_left(t, r)
    }

    fn operator(&self, word: &[usize]) -> std::rc::Rc<WordOperator> {
        if let Some(op) = self.operators.borrow().get(word) {
            return op.clone();
        }
        let op = if word.is_empty() {
            vec![(Vec::new(), Matrix::identity(self.algebra.dim()))]
        } else {
            // u t s = u sigma_t(s) t + u delta_t(s)
            let (&t, prefix) = word.split_last().expect("nonempty");
            let inner = self.operator(prefix);
            let g = &self.family.get(t).map;
            let sigma = g.sigma().map().matrix();
            let delta = g.delta().matrix();
            let mut acc: BTreeMap<Word, Matrix> = BTreeMap::new();
            for (w, m) in inner.iter() {
                let mut wt = w.clone();
                wt.push(t);
                accumulate(&mut acc, wt, m.mul(sigma));
                if !delta.is_zero() {
                    accumulate(&mut acc, w.clone(), m.mul(delta));
                }
            }
            acc.into_iter().filter(|(_, m)| !m.is_zero()).collect()
        };
        let op = std::rc::Rc::new(op);
        self.operators.borrow_mut().insert(word.to_vec(), op.clone());
        op
    }

    /// Normal form of `omega s`.
    pub fn word_times(&self, word: &[usize], s: &Vector) -> Result<SkewPolynomial> {
        let op = self.operator(word);
        self.charge(op.len())?;
        let mut out = SkewPolynomial::zero(self.algebra.dim());
        for (w, m) in op.iter() {
            out.add_term(w.clone(), &m.apply(s));
        }
        Ok(out)
    }

    /// Product in normal form: `(r u)(s v) = r (u s) v`.
    pub fn multiply(&self, p: &SkewPolynomial, q: &SkewPolynomial) -> Result<SkewPolynomial> {
        self.check(p)?;
        self.check(q)?;
        let mut out = SkewPolynomial::zero(self.algebra.dim());
        for (u, r) in &p.terms {
            for (v, s) in &q.terms {
                let us = self.word_times(u, s)?;
                self.charge(us.terms.len())?;
                for (w, c) in &us.terms {
                    let mut wv = w.clone();
                    wv.extend_from_slice(v);
                    out.add_term(wv, &self.algebra.mul(r, c));
                }
            }
        }
        Ok(out)
    }

    /// Basis of `span{p q : p in ps, q in qs}`.
    pub fn product_span(&self, ps: &[SkewPolynomial], qs: &[SkewPolynomial]) -> Result<Vec<SkewPolynomial>> {
        let mut span = SkewSpan::new(self.algebra.dim());
        for p in ps {
            for q in qs {
                span.insert(&self.multiply(p, q)?);
            }
        }
        Ok(span.basis())
    }
}

fn accumulate(acc: &mut BTreeMap<Word, Matrix>, w: Word, m: Matrix) {
    match acc.get_mut(&w) {
        Some(x) => *x = x.add(&m),
        None => {
            acc.insert(w, m);
        }
    }
}

/// A finite-dimensional span of skew polynomials.
#[derive(Clone, Debug)]
pub struct SkewSpan {
    dim: usize,
    echelon: SparseEchelon<(Word, usize)>,
}

impl SkewSpan {
    pub fn new(dim: usize) -> Self {
        SkewSpan { dim, echelon: SparseEchelon::new() }
    }

    pub fn insert(&mut self, p: &SkewPolynomial) -> bool {
        self.echelon.insert(p.to_sparse())
    }

    pub fn contains(&self, p: &SkewPolynomial) -> bool {
        self.echelon.contains(p.to_sparse())
    }

    pub fn dim(&self) -> usize {
        self.echelon.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.echelon.is_zero()
    }

    pub fn basis(&self) -> Vec<SkewPolynomial> {
        self.echelon.rows().map(|r| SkewPolynomial::from_sparse(self.dim, r)).collect()
    }
}

/// All words of length `len` over `letters` generators, lexicographically.
pub fn words_of_length(letters: usize, len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..letters).map(move |t| {
                    let mut w = w.clone();
                    w.push(t);
                    w
                })
            })
            .collect();
    }
    out
}

/// Sequences `b` with `b_1 + ... + b_k <= a_1 + ... + a_k` for every `k`, in
/// lexicographic order.
pub fn enumerate_b(a: &[usize]) -> Vec<Vec<usize>> {
    fn rec(a: &[usize], k: usize, slack: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == a.len() {
            out.push(cur.clone());
            return;
        }
        let room = slack + a[k];
        for b in 0..=room {
            cur.push(b);
            rec(a, k + 1, room - b, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(a, 0, 0, &mut Vec::new(), &mut out);
    out
}

/// Outcome of the product-inclusion check for one exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InclusionReport {
    pub a: Vec<usize>,
    pub b_count: usize,
    /// Number of left-side products checked (a spanning set, not a basis).
    pub lhs_products: usize,
    /// Coefficient space allowed in front of words of length `L`, by `L`.
    pub rhs_coefficient_dims: Vec<usize>,
    pub holds: bool,
    /// First offending word and coefficient.
    pub witness: Option<(Vec<usize>, Vec<String>)>,
}

/// Checks `T^{a_1} V T^{a_2} V ... T^{a_m} V ⊆ sum_{b in B(a)} Delta(V)... T^{s(a)-s(b)}`
/// by expanding the left side and comparing coefficients word by word.
pub fn verify_product_inclusion(
    ring: &SkewRing<'_>,
    v: &Subspace,
    a: &[usize],
) -> Result<InclusionReport> {
    let dim = ring.algebra().dim();
    if v.ambient() != dim {
        return Err(Error::Dimension(format!("V in dimension {} for algebra of dimension {dim}", v.ambient())));
    }
    if a.is_empty() || a.contains(&0) {
        return Err(Error::Invalid("the exponent vector must be a nonempty list of positive integers".into()));
    }
    let total: usize = a.iter().sum();
    if total > DEFAULT_DELTA_CAP {
        return Err(Error::CapExceeded { what: format!("exponent sum {total}"), cap: DEFAULT_DELTA_CAP });
    }
    let fam = ring.family();
    let table = delta_table(v, total, fam);
    let bs = enumerate_b(a);
    let mut allowed = vec![Subspace::zero(dim); total + 1];
    for b in &bs {
        let mut prod: Option<Subspace> = None;
        let (mut a_hat, mut b_hat) = (0, 0);
        for (ai, bi) in a.iter().zip(b) {
            a_hat += ai;
            let factor = &table[a_hat - b_hat][*bi];
            b_hat += bi;
            prod = Some(match prod {
                None => factor.clone(),
                Some(p) => ring.algebra().product_space(&p, factor),
            });
            if prod.as_ref().is_some_and(Subspace::is_zero) {
                break;
            }
        }
        let prod = prod.expect("a is nonempty");
        let l = total - b.iter().sum::<usize>();
        allowed[l] = allowed[l].sum(&prod)?;
    }
    // left side, factor by factor; the last factor is streamed, not spanned
    let mut lhs: Vec<SkewPolynomial> = Vec::new();
    let mut witness = None;
    let mut lhs_products = 0;
    let bad = |p: &SkewPolynomial| {
        p.terms()
            .iter()
            .find(|(w, r)| !(w.len() <= total && allowed[w.len()].contains(r)))
            .map(|(w, r)| (w.clone(), r.to_strings()))
    };
    for (i, &ai) in a.iter().enumerate() {
        let mut factor = Vec::new();
        for w in words_of_length(fam.len(), ai) {
            for x in v.basis() {
                factor.push(ring.word_times(&w, x)?);
            }
        }
        let last = i + 1 == a.len();
        if i == 0 {
            let mut span = SkewSpan::new(dim);
            for p in &factor {
                span.insert(p);
            }
            lhs = span.basis();
            if last {
                lhs_products = lhs.len();
                witness = lhs.iter().find_map(&bad);
            }
        } else if last {
            'outer: for p in &lhs {
                for q in &factor {
                    lhs_products += 1;
                    if let Some(w) = bad(&ring.multiply(p, q)?) {
                        witness = Some(w);
                        break 'outer;
                    }
                }
            }
        } else {
            lhs = ring.product_span(&lhs, &factor)?;
        }
    }
    Ok(InclusionReport {
        a: a.to_vec(),
        b_count: bs.len(),
        lhs_products,
        rhs_coefficient_dims: allowed.iter().map(Subspace::dim).collect(),
        holds: witness.is_none(),
        witness,
    })
}

/// Spanning set of `sum_{i <= N} V T^i`.
pub fn bounded_span(ring: &SkewRing<'_>, v: &Subspace, big_n: usize) -> Vec<SkewPolynomial> {
    let mut out = Vec::new();
    for i in 0..=big_n {
        for w in words_of_length(ring.family().len(), i) {
            for x in v.basis() {
                out.push(SkewPolynomial::monomial(x.clone(), w.clone()));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyMember {
    /// Indices `k_1, ..., k_n` of the product `V_{k_1} ... V_{k_n}`.
    pub ks: Vec<usize>,
    pub dim: usize,
}

/// The data `(F, I, s, l)` witnessing that `sum_{i<=N} V T^i` is nilpotent
/// (or, at a descent level, nilpotent modulo the lower chain stage).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NilpotencyCertificate {
    /// Chain stage `beta + 1` this level descends from; `None` for the
    /// single-step certificate.
    pub stage: Option<usize>,
    pub v: Vec<Vec<String>>,
    #[serde(rename = "N")]
    pub big_n: usize,
    pub n: usize,
    /// Why this `n` was chosen.
    pub n_choice: String,
    /// `dim V_k` for `k = 0, 1, ...` as far as the family needs.
    pub v_k_dims: Vec<usize>,
    pub family: Vec<FamilyMember>,
    pub ideal: Vec<Vec<String>>,
    pub ideal_dim: usize,
    pub s: usize,
    pub bound_l: usize,
    /// Least `j` at which the `j`-th power of the span vanished (or landed in
    /// the lower stage), if reached within `bound_l`.
    pub observed_power: Option<usize>,
    pub terms_expanded: usize,
    /// For descent levels: the coefficient module `W` and word-length bound
    /// `m` handed to the next level.
    pub next_w: Option<Vec<Vec<String>>>,
    pub next_m: Option<usize>,
    pub verified: bool,
}

/// Tuples `(k_1..k_n)` with sum at most `budget` and their product spaces.
fn product_family(
    algebra: &AlgebraPresentation,
    vks: &[Subspace],
    n: usize,
    budget: usize,
) -> Result<Vec<(Vec<usize>, Subspace)>> {
    let mut out = Vec::new();
    fn rec(
        algebra: &AlgebraPresentation,
        vks: &[Subspace],
        n: usize,
        left: usize,
        cur: &mut Vec<usize>,
        prod: Option<Subspace>,
        out: &mut Vec<(Vec<usize>, Subspace)>,
    ) -> Result<()> {
        if cur.len() == n {
            if out.len() >= FAMILY_CAP {
                return Err(Error::CapExceeded { what: "certificate family".into(), cap: FAMILY_CAP });
            }
            out.push((cur.clone(), prod.expect("n >= 1")));
            return Ok(());
        }
        for k in 0..=left {
            let next = match &prod {
                None => vks[k].clone(),
                Some(p) => algebra.product_space(p, &vks[k]),
            };
            cur.push(k);
            rec(algebra, vks, n, left - k, cur, Some(next), out)?;
            cur.pop();
        }
        Ok(())
    }
    rec(algebra, vks, n, budget, &mut Vec::new(), None, &mut out)?;
    Ok(out)
}

/// Powers `S_j = span(W^j)` until `S_j ⊆ floor` (coefficientwise) or `j = max`.
/// Returns the last span computed and the first `j` that landed in `floor`.
fn expand_powers(
    ring: &SkewRing<'_>,
    w: &[SkewPolynomial],
    max: usize,
    floor: &Subspace,
) -> Result<(Vec<SkewPolynomial>, Option<usize>)> {
    let inside = |ps: &[SkewPolynomial]| ps.iter().all(|p| p.terms().values().all(|r| floor.contains(r)));
    let mut s = {
        let mut span = SkewSpan::new(ring.algebra().dim());
        for p in w {
            span.insert(p);
        }
        span.basis()
    };
    let mut observed = if inside(&s) { Some(1) } else { None };
    let mut j = 1;
    while j < max {
        if observed.is_some() && floor.is_zero() {
            // zero stays zero
            return Ok((Vec::new(), observed));
        }
        s = ring.product_span(&s, w)?;
        j += 1;
        if observed.is_none() && inside(&s) {
            observed = Some(j);
        }
    }
    Ok((s, observed))
}

/// Certificate that `(sum_{i<=N} V T^i)^{2ns} = 0` when `R^n ⊆ W(R)` for some `n > 1`.
pub fn certify_power_radical(ring: &SkewRing<'_>, v: &Subspace, big_n: usize) -> Result<NilpotencyCertificate> {
    let algebra = ring.algebra();
    let dim = algebra.dim();
    if v.ambient() != dim {
        return Err(Error::Dimension(format!("V in dimension {} for algebra of dimension {dim}", v.ambient())));
    }
    let radical = algebra.wedderburn_radical()?;
    let mut n = None;
    for cand in 2..=dim + 1 {
        if algebra.power_space(cand).is_subspace_of(radical.space()) {
            n = Some(cand);
            break;
        }
    }
    let n = n.ok_or_else(|| Error::Hypothesis("no n > 1 with R^n inside the Wedderburn radical".into()))?;
    let budget = 2 * n * big_n;
    let vks = bold_v_sequence(v, budget, ring.family());
    let family = product_family(algebra, &vks, n, budget)?;
    let mut union = Subspace::zero(dim);
    for (_, p) in &family {
        union = union.sum(p)?;
    }
    if !union.is_subspace_of(radical.space()) {
        return Err(Error::Conclusion("a family member is not inside the Wedderburn radical".into()));
    }
    let ideal = algebra.ideal_generated_by(&union)?;
    let s = ideal
        .nilpotency_index(algebra)
        .ok_or_else(|| Error::Conclusion("the ideal generated by the family is not nilpotent".into()))?;
    let bound_l = 2 * n * s;
    let w = bounded_span(ring, v, big_n);
    let before = ring.terms_expanded();
    let (_, observed) = expand_powers(ring, &w, bound_l, &Subspace::zero(dim))?;
    Ok(NilpotencyCertificate {
        stage: None,
        v: v.to_strings(),
        big_n,
        n,
        n_choice: "smallest n > 1 with R^n inside the Wedderburn radical".into(),
        v_k_dims: vks.iter().map(Subspace::dim).collect(),
        family: family.iter().map(|(ks, p)| FamilyMember { ks: ks.clone(), dim: p.dim() }).collect(),
        ideal: ideal.space().to_strings(),
        ideal_dim: ideal.dim(),
        s,
        bound_l,
        observed_power: observed,
        terms_expanded: ring.terms_expanded() - before,
        next_w: None,
        next_m: None,
        verified: observed.is_some_and(|j| j <= bound_l),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescentCertificate {
    pub chain_dims: Vec<usize>,
    pub levels: Vec<NilpotencyCertificate>,
    /// Product of the per-level exponents: `(sum V T^i)^total = 0`.
    pub total_exponent: usize,
    pub verified: bool,
}

/// Descends the prime radical chain: at stage `beta + 1` the span
/// `sum_{i<=N} V T^i` raised to `2s` has all coefficients in `P_beta`; the
/// coefficients and word lengths seed the next level. Stage `0` is an exact
/// zero check.
pub fn certify_prime_radical(ring: &SkewRing<'_>, big_n: usize) -> Result<DescentCertificate> {
    let algebra = ring.algebra();
    let dim = algebra.dim();
    let chain = algebra.prime_radical_chain()?;
    let deltas = ring.family().deltas();
    if let Err(f) = check_strong_invariance(&chain, &deltas) {
        return Err(Error::Hypothesis(format!(
            "prime radical chain is not strongly invariant: stage {}, derivation {}, basis vector {}",
            f.stage, f.derivation, f.basis_vector
        )));
    }
    let top = chain.stages.len() - 1;
    let mut v = chain.stages[top].space().clone();
    let mut n_cur = big_n;
    let mut levels = Vec::new();
    let mut total_exponent = 1usize;
    for beta_plus in (1..=top).rev() {
        let upper = chain.stages[beta_plus].space();
        let lower = chain.stages[beta_plus - 1].space();
        let vks = bold_v_sequence(&v, 2 * n_cur, ring.family());
        let mut union = Subspace::zero(dim);
        for vk in &vks {
            union = union.sum(vk)?;
        }
        if !union.is_subspace_of(upper) {
            return Err(Error::Conclusion(format!("V_k left chain stage {beta_plus}")));
        }
        let ideal = algebra.ideal_generated_by(&union)?;
        let s = ideal
            .index_into(algebra, lower)
            .ok_or_else(|| Error::Conclusion(format!("no power of I lands in chain stage {}", beta_plus - 1)))?
            .max(1);
        let bound_l = 2 * s;
        let w = bounded_span(ring, &v, n_cur);
        let before = ring.terms_expanded();
        let (power, observed) = expand_powers_exact(ring, &w, bound_l, lower)?;
        let mut next_w = Subspace::zero(dim);
        let mut next_m = 0;
        for p in &power {
            for (word, r) in p.terms() {
                next_w.insert(r.clone());
                next_m = next_m.max(word.len());
            }
        }
        let verified = next_w.is_subspace_of(lower);
        levels.push(NilpotencyCertificate {
            stage: Some(beta_plus),
            v: v.to_strings(),
            big_n: n_cur,
            n: 1,
            n_choice: "descent step: family {V_k | k <= 2N}".into(),
            v_k_dims: vks.iter().map(Subspace::dim).collect(),
            family: vks.iter().enumerate().map(|(k, s)| FamilyMember { ks: vec![k], dim: s.dim() }).collect(),
            ideal: ideal.space().to_strings(),
            ideal_dim: ideal.dim(),
            s,
            bound_l,
            observed_power: observed,
            terms_expanded: ring.terms_expanded() - before,
            next_w: Some(next_w.to_strings()),
            next_m: Some(next_m),
            verified,
        });
        total_exponent = total_exponent.saturating_mul(bound_l);
        if !verified {
            break;
        }
        v = next_w;
        n_cur = next_m;
    }
    let verified = levels.iter().all(|l| l.verified) && (top == 0 || v.is_zero());
    Ok(DescentCertificate {
        chain_dims: chain.stages.iter().map(|s| s.dim()).collect(),
        levels,
        total_exponent,
        verified,
    })
}

/// `span(W^max)` computed in full, plus the first power landing in `floor`.
fn expand_powers_exact(
    ring: &SkewRing<'_>,
    w: &[SkewPolynomial],
    max: usize,
    floor: &Subspace,
) -> Result<(Vec<SkewPolynomial>, Option<usize>)> {
    let inside = |ps: &[SkewPolynomial]| ps.iter().all(|p| p.terms().values().all(|r| floor.contains(r)));
    let mut span = SkewSpan::new(ring.algebra().dim());
    for p in w {
        span.insert(p);
    }
    let mut s = span.basis();
    let mut observed = if inside(&s) { Some(1) } else { None };
    for j in 2..=max {
        if s.is_empty() {
            break;
        }
        s = ring.product_span(&s, w)?;
        if observed.is_none() && inside(&s) {
            observed = Some(j);
        }
    }
    Ok((s, observed))
}

/// Renders a scalar-coefficient listing of a polynomial for transcripts.
pub fn describe(p: &SkewPolynomial, fam: &GeneratorFamily) -> String {
    if p.is_zero() {
        return "0".into();
    }
    p.terms()
        .iter()
        .map(|(w, r)| {
            let coeffs: Vec<String> = r.iter().map(format_scalar).collect();
            let word: Vec<&str> = w.iter().map(|&i| fam.get(i).label.as_str()).collect();
            format!("[{}]{}", coeffs.join(","), if word.is_empty() { String::new() } else { format!("·{}", word.join("")) })
        })
        .collect::<Vec<_>>()
        .join(" + ")
}
