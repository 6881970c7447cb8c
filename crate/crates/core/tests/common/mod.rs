//! Oracles for the integration tests. They recompute everything from raw
//! structure constants and matrix entries and share no code paths with the
//! checks under test beyond the scalar type.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use orelab::corpus;
use orelab::linear::{frac, int};
use orelab::{AlgebraPresentation, GeneratorFamily, LinearEndomap, Matrix, Scalar, Subspace, Vector};
use rand::Rng;

pub type Dense = Vec<Vec<Scalar>>;

/// `c[i][j][k]` read out of the presentation.
pub fn structure_table(a: &AlgebraPresentation) -> Vec<Vec<Vec<Scalar>>> {
    let n = a.dim();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a.structure_constant(i, j, k)).collect()).collect())
        .collect()
}

pub fn mul(c: &[Vec<Vec<Scalar>>], x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let n = x.len();
    let mut out = vec![Scalar::zero(); n];
    for i in 0..n {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if y[j].is_zero() {
                continue;
            }
            let xy = &x[i] * &y[j];
            for k in 0..n {
                if !c[i][j][k].is_zero() {
                    out[k] += &xy * &c[i][j][k];
                }
            }
        }
    }
    out
}

pub fn apply(m: &Matrix, x: &[Scalar]) -> Vec<Scalar> {
    (0..m.rows()).map(|i| (0..m.cols()).fold(Scalar::zero(), |acc, j| acc + &m[(i, j)] * &x[j])).collect()
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

fn add(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

/// Rank by plain Gaussian elimination on a copy.
pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row).skip(c) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn matrix_rows(m: &Matrix) -> Dense {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)].clone()).collect()).collect()
}

/// First basis pair `(i, j)` where `sigma(e_i e_j) != sigma(e_i) sigma(e_j)`.
pub fn multiplicative_witness(a: &AlgebraPresentation, m: &Matrix) -> Option<(usize, usize)> {
    let c = structure_table(a);
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            let lhs = apply(m, &mul(&c, &unit_vec(n, i), &unit_vec(n, j)));
            let rhs = mul(&c, &apply(m, &unit_vec(n, i)), &apply(m, &unit_vec(n, j)));
            if lhs != rhs {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn is_automorphism(a: &AlgebraPresentation, m: &Matrix) -> bool {
    let n = a.dim();
    if m.rows() != n || m.cols() != n || rank(&matrix_rows(m)) != n {
        return false;
    }
    if multiplicative_witness(a, m).is_some() {
        return false;
    }
    match a.unit() {
        Some(u) => apply(m, u.coords()) == u.coords(),
        None => true,
    }
}

/// First basis pair where `delta(xy) != delta(x) y + sigma(x) delta(y)`.
pub fn leibniz_witness(a: &AlgebraPresentation, sigma: &Matrix, delta: &Matrix) -> Option<(usize, usize)> {
    let c = structure_table(a);
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (unit_vec(n, i), unit_vec(n, j));
            let lhs = apply(delta, &mul(&c, &x, &y));
            let rhs = add(&mul(&c, &apply(delta, &x), &y), &mul(&c, &apply(sigma, &x), &apply(delta, &y)));
            if lhs != rhs {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn random_scalar<R: Rng>(rng: &mut R) -> Scalar {
    frac(rng.gen_range(-3..=3), rng.gen_range(1..=2))
}

pub fn random_vector<R: Rng>(rng: &mut R, n: usize) -> Vector {
    Vector::new((0..n).map(|_| random_scalar(rng)).collect())
}

pub fn random_element_of<R: Rng>(rng: &mut R, s: &Subspace) -> Vector {
    let mut v = Vector::zeros(s.ambient());
    for b in s.basis() {
        v.add_scaled(&random_scalar(rng), b);
    }
    v
}

// ---------------------------------------------------------------------------
// Skew multiplication by literal rewriting of `t r -> sigma_t(r) t + delta_t(r)`.

pub type NaiveWord = Vec<usize>;
pub type NaivePoly = BTreeMap<NaiveWord, Vec<Scalar>>;

pub struct NaiveSkew {
    pub c: Vec<Vec<Vec<Scalar>>>,
    pub sigmas: Vec<Matrix>,
    pub deltas: Vec<Matrix>,
    pub n: usize,
}

impl NaiveSkew {
    pub fn new(a: &AlgebraPresentation, fam: &GeneratorFamily) -> Self {
        NaiveSkew {
            c: structure_table(a),
            sigmas: fam.generators().iter().map(|g| g.map.sigma().map().matrix().clone()).collect(),
            deltas: fam.generators().iter().map(|g| g.map.delta().matrix().clone()).collect(),
            n: a.dim(),
        }
    }

    fn push(out: &mut NaivePoly, w: NaiveWord, r: Vec<Scalar>) {
        if r.iter().all(Zero::is_zero) {
            return;
        }
        let e = out.entry(w.clone()).or_insert_with(|| vec![Scalar::zero(); r.len()]);
        for (a, b) in e.iter_mut().zip(&r) {
            *a += b;
        }
        if e.iter().all(Zero::is_zero) {
            out.remove(&w);
        }
    }

    /// `u s` in normal form, moving `s` left one letter at a time.
    fn move_left(&self, u: &[usize], s: Vec<Scalar>) -> Vec<(Vec<Scalar>, NaiveWord)> {
        if s.iter().all(Zero::is_zero) {
            return Vec::new();
        }
        let Some((&t, prefix)) = u.split_last() else {
            return vec![(s, Vec::new())];
        };
        let mut out = Vec::new();
        for (c, tail) in [(apply(&self.sigmas[t], &s), vec![t]), (apply(&self.deltas[t], &s), vec![])] {
            for (c2, mut w2) in self.move_left(prefix, c) {
                w2.extend_from_slice(&tail);
                out.push((c2, w2));
            }
        }
        out
    }

    pub fn mul(&self, p: &NaivePoly, q: &NaivePoly) -> NaivePoly {
        let mut out = NaivePoly::new();
        for (u, r) in p {
            for (v, s) in q {
                for (c, mut w) in self.move_left(u, s.clone()) {
                    w.extend_from_slice(v);
                    Self::push(&mut out, w, mul(&self.c, r, &c));
                }
            }
        }
        out
    }

    /// Span dimension of a list of polynomials, flattened over `(word, coordinate)`.
    pub fn span_basis(&self, ps: &[NaivePoly]) -> Vec<NaivePoly> {
        let mut keys: Vec<NaiveWord> = ps.iter().flat_map(|p| p.keys().cloned()).collect();
        keys.sort();
        keys.dedup();
        let flat = |p: &NaivePoly| -> Vec<Scalar> {
            keys.iter()
                .flat_map(|k| p.get(k).cloned().unwrap_or_else(|| vec![Scalar::zero(); self.n]))
                .collect()
        };
        let mut basis: Vec<NaivePoly> = Vec::new();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for p in ps {
            rows.push(flat(p));
            if rank(&rows) > basis.len() {
                basis.push(p.clone());
            } else {
                rows.pop();
            }
        }
        basis
    }
}

// ---------------------------------------------------------------------------
// Radical oracles

/// Nonzero vectors with entries in {-1, 0, 1} and first nonzero entry 1.
pub fn sign_vectors(n: usize) -> Vec<Vec<Scalar>> {
    let mut out = Vec::new();
    let total = 3usize.pow(n as u32);
    for code in 1..total {
        let mut v = Vec::with_capacity(n);
        let mut c = code;
        for _ in 0..n {
            v.push(int((c % 3) as i64 - 1));
            c /= 3;
        }
        if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_one()) {
            out.push(v);
        }
    }
    out
}

fn span_rows(rows: &[Vec<Scalar>]) -> Dense {
    let mut basis: Dense = Vec::new();
    for r in rows {
        basis.push(r.clone());
        if rank(&basis) < basis.len() {
            basis.pop();
        }
    }
    basis
}

fn in_span(basis: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    let mut rows = basis.to_vec();
    rows.push(v.to_vec());
    rank(&rows) == rank(basis)
}

fn is_ideal(c: &[Vec<Vec<Scalar>>], basis: &[Vec<Scalar>]) -> bool {
    let n = c.len();
    basis.iter().all(|b| {
        (0..n).all(|i| {
            let e = unit_vec(n, i);
            in_span(basis, &mul(c, &e, b)) && in_span(basis, &mul(c, b, &e))
        })
    })
}

fn is_nilpotent_space(c: &[Vec<Vec<Scalar>>], basis: &[Vec<Scalar>]) -> bool {
    let mut power = basis.to_vec();
    for _ in 0..=c.len() {
        if power.is_empty() {
            return true;
        }
        let prods: Dense = power.iter().flat_map(|p| basis.iter().map(move |b| mul(c, p, b))).collect();
        power = span_rows(&prods);
    }
    power.is_empty()
}

/// Largest nilpotent ideal among subspaces whose reduced echelon basis has
/// entries in {-2..2}, searched from the largest dimension down.
pub fn brute_force_radical(a: &AlgebraPresentation) -> Dense {
    let c = structure_table(a);
    let n = a.dim();
    for size in (1..=n).rev() {
        for pivots in combinations(n, size) {
            let free: Vec<(usize, usize)> = (0..size)
                .flat_map(|r| ((pivots[r] + 1)..n).filter(|j| !pivots.contains(j)).map(move |j| (r, j)))
                .collect();
            let mut digits = vec![0usize; free.len()];
            loop {
                let mut rows: Dense = vec![vec![Scalar::zero(); n]; size];
                for (r, &p) in pivots.iter().enumerate() {
                    rows[r][p] = Scalar::one();
                }
                for (&(r, j), &d) in free.iter().zip(&digits) {
                    rows[r][j] = int(d as i64 - 2);
                }
                if is_ideal(&c, &rows) && is_nilpotent_space(&c, &rows) {
                    return rows;
                }
                let mut k = 0;
                while k < digits.len() && digits[k] == 4 {
                    digits[k] = 0;
                    k += 1;
                }
                if k == digits.len() {
                    break;
                }
                digits[k] += 1;
            }
        }
    }
    Vec::new()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn same_span(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> bool {
    let ra = rank(a);
    let rb = rank(b);
    let mut both = a.to_vec();
    both.extend(b.iter().cloned());
    ra == rb && rank(&both) == ra
}

/// `x + b = x b = b x`.
pub fn is_quasi_inverse(a: &AlgebraPresentation, x: &Vector, b: &Vector) -> bool {
    let c = structure_table(a);
    let s = add(x.coords(), b.coords());
    s == mul(&c, x.coords(), b.coords()) && s == mul(&c, b.coords(), x.coords())
}

/// Some element of the span with `e^2 = e != 0`, searched over {-1,0,1}
/// combinations of the given basis.
pub fn find_idempotent(a: &AlgebraPresentation, basis: &[Vector]) -> Option<Vector> {
    let c = structure_table(a);
    for coeffs in sign_vectors(basis.len()) {
        let mut v = vec![Scalar::zero(); a.dim()];
        for (k, b) in coeffs.iter().zip(basis) {
            for (x, y) in v.iter_mut().zip(b.iter()) {
                *x += k * y;
            }
        }
        for sign in [1, -1] {
            let w: Vec<Scalar> = v.iter().map(|x| x * int(sign)).collect();
            if w.iter().any(|x| !x.is_zero()) && mul(&c, &w, &w) == w {
                return Some(Vector::new(w));
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Instance builders

pub fn derivation_family(a: &AlgebraPresentation, deltas: &[LinearEndomap]) -> GeneratorFamily {
    GeneratorFamily::of_derivations(a, deltas).expect("derivations")
}

pub fn grassmann_family(g: usize) -> (AlgebraPresentation, GeneratorFamily) {
    let (a, d) = corpus::grassmann(g);
    let fam = derivation_family(&a, &[d.map().clone()]);
    (a, fam)
}

pub fn span_of_units(n: usize, idx: &[usize]) -> Subspace {
    Subspace::from_rows(n, idx.iter().map(|&i| Vector::unit(n, i)).collect()).expect("units")
}
