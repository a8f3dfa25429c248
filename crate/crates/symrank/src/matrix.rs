//! Matrices over a field and over a polynomial ring.
//!
//! [`ScalarMat`] is a dense matrix of field elements with exact Gaussian
//! elimination. [`PolyMatrix`] has polynomial entries; its rank is computed
//! symbolically by fraction-free Bareiss elimination with full pivoting,
//! which also yields a rank-many telescoping factorization
//!
//!   M = Σ_{s<ρ} (1/(π_{s−1}π_s)) · u_s ⊗ v_s,   π_{−1} = 1,
//!
//! where π_s is the s-th pivot of the eliminated matrix M⁽ˢ⁾, u_s its pivot
//! column, and v_s its pivot row. Every division performed is exact over the
//! polynomial ring (entries of M⁽ˢ⁾ are (s+1)-minors of M up to sign), and
//! non-exactness panics rather than silently corrupting ranks.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::poly::{Basis, PolyVector, Polynomial, PowerTable};
use crate::sample::rng_from;

/// Dense matrix of field elements, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarMat<K: Field> {
    field: K,
    rows: usize,
    cols: usize,
    data: Vec<K::Elem>,
}

impl<K: Field> ScalarMat<K> {
    pub fn zeros(field: K, rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        let data = vec![field.zero(); rows * cols];
        ScalarMat { field, rows, cols, data }
    }

    pub fn from_rows(field: K, rows: Vec<Vec<K::Elem>>) -> Self {
        assert!(!rows.is_empty() && !rows[0].is_empty(), "matrix dimensions must be positive");
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let r = rows.len();
        ScalarMat { field, rows: r, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &K::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: K::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| self.field.is_zero(v))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        assert_eq!(self.field, other.field, "field mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        ScalarMat { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &K::Elem) -> Self {
        let data = self.data.iter().map(|a| self.field.mul(a, s)).collect();
        ScalarMat { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// Row-major flattening, used to treat matrices as vectors of length
    /// rows·cols.
    pub fn vectorize(&self) -> Vec<K::Elem> {
        self.data.clone()
    }

    pub fn rank(&self) -> usize {
        let mut w = self.data.clone();
        let (r, c, k) = (self.rows, self.cols, &self.field);
        let mut rank = 0;
        for col in 0..c {
            let Some(p) = (rank..r).find(|&i| !k.is_zero(&w[i * c + col])) else {
                continue;
            };
            w.swap(rank * c + col, p * c + col);
            for j in col + 1..c {
                w.swap(rank * c + j, p * c + j);
            }
            let inv = k.inv(&w[rank * c + col].clone());
            for i in rank + 1..r {
                let f = k.mul(&w[i * c + col], &inv);
                if k.is_zero(&f) {
                    continue;
                }
                for j in col..c {
                    let t = k.mul(&f, &w[rank * c + j]);
                    w[i * c + j] = k.sub(&w[i * c + j], &t);
                }
            }
            rank += 1;
            if rank == r {
                break;
            }
        }
        rank
    }
}

/// Reduced row echelon form of a list of vectors, kept for repeated
/// membership queries.
#[derive(Clone, Debug)]
pub struct ReducedBasis<K: Field> {
    field: K,
    dim: usize,
    /// Reduced rows, each with leading entry 1 at its pivot position.
    rows: Vec<Vec<K::Elem>>,
    pivot_cols: Vec<usize>,
}

impl<K: Field> ReducedBasis<K> {
    pub fn from_vectors(field: K, dim: usize, vectors: impl IntoIterator<Item = Vec<K::Elem>>) -> Self {
        let mut basis = ReducedBasis { field, dim, rows: Vec::new(), pivot_cols: Vec::new() };
        for v in vectors {
            basis.insert(v);
        }
        basis
    }

    /// Number of independent vectors seen so far.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<K::Elem>] {
        &self.rows
    }

    /// Reduces `v` against the basis in place; returns the position of the
    /// first nonzero coordinate of the remainder, if any.
    fn reduce_in_place(&self, v: &mut [K::Elem]) -> Option<usize> {
        let k = &self.field;
        for (row, &pc) in self.rows.iter().zip(&self.pivot_cols) {
            if !k.is_zero(&v[pc]) {
                let f = v[pc].clone();
                for (j, rj) in row.iter().enumerate() {
                    if !k.is_zero(rj) {
                        let t = k.mul(&f, rj);
                        v[j] = k.sub(&v[j], &t);
                    }
                }
            }
        }
        v.iter().position(|x| !k.is_zero(x))
    }

    /// True iff `v` lies in the span.
    pub fn contains(&self, v: &[K::Elem]) -> bool {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let mut w = v.to_vec();
        self.reduce_in_place(&mut w).is_none()
    }

    /// Adds `v` to the span; returns true if it was independent.
    pub fn insert(&mut self, v: Vec<K::Elem>) -> bool {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let mut w = v;
        let Some(pc) = self.reduce_in_place(&mut w) else {
            return false;
        };
        let k = self.field.clone();
        let inv = k.inv(&w[pc].clone());
        for x in w.iter_mut() {
            *x = k.mul(x, &inv);
        }
        // back-substitute into existing rows to keep the form fully reduced
        for row in self.rows.iter_mut() {
            if !k.is_zero(&row[pc]) {
                let f = row[pc].clone();
                for (j, wj) in w.iter().enumerate() {
                    if !k.is_zero(wj) {
                        let t = k.mul(&f, wj);
                        row[j] = k.sub(&row[j], &t);
                    }
                }
            }
        }
        // keep rows sorted by pivot column
        let at = self.pivot_cols.partition_point(|&c| c < pc);
        self.rows.insert(at, w);
        self.pivot_cols.insert(at, pc);
        true
    }
}

/// Matrix with polynomial entries sharing field, variable count, and basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix<K: Field> {
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial<K>>,
}

impl<K: Field> PolyMatrix<K> {
    pub fn zero(field: K, rows: usize, cols: usize, num_vars: usize, basis: Basis) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        let entries = (0..rows * cols)
            .map(|_| Polynomial::zero(field.clone(), num_vars, basis))
            .collect();
        PolyMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial<K>>>) -> Self {
        assert!(!rows.is_empty() && !rows[0].is_empty(), "matrix dimensions must be positive");
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let r = rows.len();
        let entries: Vec<_> = rows.into_iter().flatten().collect();
        let first = entries[0].clone();
        for e in &entries {
            assert_eq!(e.num_vars(), first.num_vars(), "variable count mismatch");
            assert_eq!(e.basis(), first.basis(), "basis mismatch");
            assert_eq!(e.field(), first.field(), "field mismatch");
        }
        PolyMatrix { rows: r, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial<K> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial<K>) {
        let e0 = &self.entries[0];
        assert_eq!(p.num_vars(), e0.num_vars(), "variable count mismatch");
        assert_eq!(p.basis(), e0.basis(), "basis mismatch");
        assert_eq!(p.field(), e0.field(), "field mismatch");
        self.entries[i * self.cols + j] = p;
    }

    pub fn field(&self) -> &K {
        self.entries[0].field()
    }

    pub fn num_vars(&self) -> usize {
        self.entries[0].num_vars()
    }

    pub fn basis(&self) -> Basis {
        self.entries[0].basis()
    }

    pub fn entries(&self) -> &[Polynomial<K>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    /// Largest total degree over the entries; `None` if all entries are 0.
    pub fn max_degree(&self) -> Option<u32> {
        self.entries.iter().filter_map(|p| p.degree()).max()
    }

    pub fn convert(&self, basis: Basis) -> Self {
        self.map(|p| p.convert(basis))
    }

    pub fn map<F: FnMut(&Polynomial<K>) -> Polynomial<K>>(&self, mut f: F) -> Self {
        let entries = self.entries.iter().map(&mut f).collect();
        PolyMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        PolyMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.map(|p| p.neg()))
    }

    /// u ⊗ v, the rows·cols matrix with entry u_i·v_j.
    pub fn outer(u: &PolyVector<K>, v: &PolyVector<K>) -> Self {
        let rows = (0..u.len())
            .map(|i| (0..v.len()).map(|j| u.entry(i).mul(v.entry(j))).collect())
            .collect();
        PolyMatrix::from_rows(rows)
    }

    pub fn evaluate(&self, point: &[K::Elem]) -> ScalarMat<K> {
        let mut mx = vec![0u16; self.num_vars()];
        for p in &self.entries {
            for (i, e) in p.max_exponents().into_iter().enumerate() {
                mx[i] = mx[i].max(e);
            }
        }
        let table = PowerTable::new(self.field(), point, &mx);
        let mut out = ScalarMat::zeros(self.field().clone(), self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, table.eval(self.entry(i, j)));
            }
        }
        out
    }

    /// Rank over the rational function field, by Bareiss elimination.
    pub fn exact_symbolic_rank(&self) -> usize {
        bareiss(self, false).pivots.len()
    }

    /// Exact rank factorization with denominators; see the module docs.
    pub fn rank_factorize(&self) -> RankFactorization<K> {
        let elim = bareiss(self, true);
        let field = self.field().clone();
        let n = self.num_vars();
        let one = Polynomial::one(field, n, Basis::Standard);
        let mut denominators = Vec::with_capacity(elim.pivots.len());
        for (s, piv) in elim.pivots.iter().enumerate() {
            let prev = if s == 0 { &one } else { &elim.pivots[s - 1] };
            denominators.push(prev.mul(piv));
        }
        RankFactorization {
            rank: elim.pivots.len(),
            left: elim.us.into_iter().map(PolyVector::new).collect(),
            right: elim.vs.into_iter().map(PolyVector::new).collect(),
            pivots: elim.pivots,
            denominators,
        }
    }

    /// sample_range default: 100 · (max entry degree) · max(rows, cols),
    /// clamped to at least 2. Makes each trial miss the true rank with
    /// probability at most 1/100.
    pub fn default_sample_range(&self) -> u64 {
        let deg = self.max_degree().unwrap_or(0) as u64;
        (100 * deg * self.rows.max(self.cols) as u64).max(2)
    }

    /// Max of rank(M(𝐚)) over `trials` points 𝐚 drawn uniformly from
    /// {0, …, sample_range−1}ⁿ. Always ≤ the exact symbolic rank; equals it
    /// except with probability ≤ (deg/sample_range)^trials per the
    /// Schwartz-Zippel bound applied to a maximal minor.
    pub fn randomized_symbolic_rank(
        &self,
        sample_range: u64,
        trials: u32,
        seed: u64,
    ) -> Result<usize> {
        if sample_range < 2 {
            return Err(Error::InvalidInput("sample_range must be at least 2".into()));
        }
        if trials == 0 {
            return Err(Error::InvalidInput("trials must be at least 1".into()));
        }
        let deg = self.max_degree().unwrap_or(0) as u64;
        if sample_range <= deg {
            return Err(Error::InvalidInput(format!(
                "sample_range {sample_range} must exceed the max entry degree {deg}"
            )));
        }
        if let Some(p) = self.field().characteristic() {
            let dim = self.rows.max(self.cols) as u64;
            let floor = 100 * deg * dim;
            if p < floor {
                return Err(Error::Refused(format!(
                    "prime modulus {p} is below the randomized-rank floor {floor} \
                     (100 · degree · dimension)"
                )));
            }
            if sample_range > p {
                return Err(Error::InvalidInput(format!(
                    "sample_range {sample_range} exceeds the field size {p}"
                )));
            }
        }
        let n = self.num_vars();
        let bound = self.rows.min(self.cols);
        let mut best = 0;
        for t in 0..trials {
            let mut rng = rng_from(seed, t as u64);
            let point: Vec<K::Elem> = (0..n)
                .map(|_| self.field().from_i64(rng.gen_range(0..sample_range) as i64))
                .collect();
            best = best.max(self.evaluate(&point).rank());
            if best == bound {
                break;
            }
        }
        Ok(best)
    }
}

/// Output of [`PolyMatrix::rank_factorize`]:
/// M = Σ_s (1/denominators[s]) · left[s] ⊗ right[s], with
/// denominators[s] = pivots[s−1]·pivots[s] (pivots[−1] taken as 1). All
/// polynomials are in the standard basis; every pivot is nonzero.
#[derive(Clone, Debug)]
pub struct RankFactorization<K: Field> {
    pub rank: usize,
    pub left: Vec<PolyVector<K>>,
    pub right: Vec<PolyVector<K>>,
    pub pivots: Vec<Polynomial<K>>,
    pub denominators: Vec<Polynomial<K>>,
}

impl<K: Field> RankFactorization<K> {
    /// Exact reconstruction check with denominators cleared:
    /// M·∏t_s == Σ_s u_s⊗v_s·∏_{t≠s}t_t. Intended for modest sizes.
    pub fn reconstructs(&self, m: &PolyMatrix<K>) -> bool {
        let m = m.convert(Basis::Standard);
        let field = m.field().clone();
        let n = m.num_vars();
        let one = Polynomial::one(field.clone(), n, Basis::Standard);
        if self.rank == 0 {
            return m.is_zero();
        }
        let total = self.denominators.iter().fold(one.clone(), |acc, t| acc.mul(t));
        let mut rhs = PolyMatrix::zero(field, m.rows(), m.cols(), n, Basis::Standard);
        for s in 0..self.rank {
            let cleared = (0..self.rank)
                .filter(|&t| t != s)
                .fold(one.clone(), |acc, t| acc.mul(&self.denominators[t]));
            let term = PolyMatrix::outer(&self.left[s], &self.right[s]).map(|p| p.mul(&cleared));
            rhs = rhs.add(&term);
        }
        m.map(|p| p.mul(&total)) == rhs
    }
}

pub(crate) struct Elimination<K: Field> {
    pub(crate) pivots: Vec<Polynomial<K>>,
    pub(crate) us: Vec<Vec<Polynomial<K>>>,
    pub(crate) vs: Vec<Vec<Polynomial<K>>>,
}

/// Fraction-free elimination with full pivoting. The pivot entry is chosen
/// with minimal support (term count), ties broken by graded-lex-smallest
/// leading monomial, then by row-major position: small pivots keep the
/// intermediate minors sparse and the choice deterministic.
pub(crate) fn bareiss<K: Field>(m: &PolyMatrix<K>, want_vectors: bool) -> Elimination<K> {
    let m = m.convert(Basis::Standard);
    let (rows, cols) = (m.rows(), m.cols());
    let field = m.field().clone();
    let n = m.num_vars();
    let mut w: Vec<Vec<Polynomial<K>>> = (0..rows)
        .map(|i| (0..cols).map(|j| m.entry(i, j).clone()).collect())
        .collect();
    let zero = Polynomial::zero(field.clone(), n, Basis::Standard);
    let one = Polynomial::one(field, n, Basis::Standard);
    let mut row_done = vec![false; rows];
    let mut col_done = vec![false; cols];
    let mut pivots: Vec<Polynomial<K>> = Vec::new();
    let mut us = Vec::new();
    let mut vs = Vec::new();
    loop {
        let mut best: Option<(usize, Monomial, usize, usize)> = None;
        for i in (0..rows).filter(|&i| !row_done[i]) {
            for j in (0..cols).filter(|&j| !col_done[j]) {
                let p = &w[i][j];
                let Some((lead, _)) = p.leading_term() else { continue };
                let key = (p.term_count(), lead.clone());
                match &best {
                    Some((bc, bl, _, _)) if (*bc, bl) <= (key.0, &key.1) => {}
                    _ => best = Some((key.0, key.1, i, j)),
                }
            }
        }
        let Some((_, _, pi, pj)) = best else { break };
        let piv = w[pi][pj].clone();
        if want_vectors {
            us.push((0..rows).map(|i| w[i][pj].clone()).collect());
            vs.push(w[pi].clone());
        }
        let prev = pivots.last().unwrap_or(&one).clone();
        let trivial_prev = pivots.is_empty();
        for i in (0..rows).filter(|&i| !row_done[i] && i != pi) {
            let coli = w[i][pj].clone();
            for j in (0..cols).filter(|&j| !col_done[j] && j != pj) {
                let num = piv.mul(&w[i][j]).sub(&coli.mul(&w[pi][j]));
                w[i][j] = if trivial_prev { num } else { num.div_exact(&prev) };
            }
            w[i][pj] = zero.clone();
        }
        for j in 0..cols {
            w[pi][j] = zero.clone();
        }
        for i in 0..rows {
            w[i][pj] = zero.clone();
        }
        row_done[pi] = true;
        col_done[pj] = true;
        pivots.push(piv);
        if pivots.len() == rows.min(cols) {
            break;
        }
    }
    Elimination { pivots, us, vs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals, MIN_PRIME};
    use crate::sample;

    fn q(n: usize, s: &str) -> Polynomial<Rationals> {
        Polynomial::parse(Rationals, n, Basis::Standard, s).unwrap()
    }

    fn mat(n: usize, rows: &[&[&str]]) -> PolyMatrix<Rationals> {
        PolyMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|s| q(n, s)).collect()).collect(),
        )
    }

    #[test]
    fn scalar_rank() {
        let k = Rationals;
        let m = ScalarMat::from_rows(
            k,
            vec![
                vec![k.from_i64(1), k.from_i64(2), k.from_i64(3)],
                vec![k.from_i64(2), k.from_i64(4), k.from_i64(6)],
                vec![k.from_i64(0), k.from_i64(1), k.from_i64(1)],
            ],
        );
        assert_eq!(m.rank(), 2);
        assert_eq!(ScalarMat::zeros(Rationals, 4, 2).rank(), 0);
    }

    #[test]
    fn reduced_basis_membership() {
        let k = Rationals;
        let v = |xs: &[i64]| xs.iter().map(|&x| k.from_i64(x)).collect::<Vec<_>>();
        let mut b = ReducedBasis::from_vectors(k, 3, [v(&[1, 0, 1]), v(&[0, 1, 1])]);
        assert_eq!(b.rank(), 2);
        assert!(b.contains(&v(&[2, 3, 5])));
        assert!(!b.contains(&v(&[0, 0, 1])));
        assert!(!b.insert(v(&[1, 1, 2])));
        assert!(b.insert(v(&[0, 0, 7])));
        assert_eq!(b.rank(), 3);
        assert!(b.contains(&v(&[9, -4, 17])));
    }

    #[test]
    fn exact_rank_examples() {
        assert_eq!(mat(2, &[&["x1", "x2"], &["x2", "x1"]]).exact_symbolic_rank(), 2);
        assert_eq!(
            PolyMatrix::zero(Rationals, 3, 3, 2, Basis::Standard).exact_symbolic_rank(),
            0
        );
        assert_eq!(
            mat(2, &[&["x1", "x2"], &["3*x1", "3*x2"]]).exact_symbolic_rank(),
            1
        );
        // rank respects linear dependence with polynomial coefficients
        assert_eq!(
            mat(2, &[&["1", "x1"], &["x2", "x1*x2"]]).exact_symbolic_rank(),
            1
        );
        assert_eq!(mat(1, &[&["1", "0"], &["0", "1"]]).exact_symbolic_rank(), 2);
    }

    #[test]
    fn rank_factorization_examples() {
        let m = mat(2, &[&["x1*x2", "x1^2"], &["x2^2", "x1*x2"]]);
        let f = m.rank_factorize();
        assert_eq!(f.rank, 1);
        assert!(f.reconstructs(&m));
        assert!(f.pivots.iter().all(|p| !p.is_zero()));

        let id = mat(1, &[&["1", "0"], &["0", "1"]]);
        let f = id.rank_factorize();
        assert_eq!(f.rank, 2);
        assert_eq!(f.denominators, vec![q(1, "1"), q(1, "1")]);
        assert!(f.reconstructs(&id));

        let z = PolyMatrix::zero(Rationals, 2, 3, 1, Basis::Standard);
        let f = z.rank_factorize();
        assert_eq!(f.rank, 0);
        assert!(f.reconstructs(&z));
    }

    #[test]
    fn rank_factorization_reconstructs_random_matrices() {
        let mut rng = sample::rng_from(5, 0);
        for trial in 0..25 {
            let rows = 1 + (trial % 3);
            let cols = 1 + (trial % 4);
            let m = sample::random_poly_matrix(&Rationals, rows, cols, 2, 2, 3, &mut rng);
            let f = m.rank_factorize();
            assert!(f.reconstructs(&m), "reconstruction failed for {m:?}");
            assert_eq!(f.rank, m.exact_symbolic_rank());
            assert!(f.rank <= rows.min(cols));
        }
    }

    #[test]
    fn divided_basis_rank_is_representation_independent() {
        let m = mat(2, &[&["x1", "x2"], &["x2", "x1"]]);
        let d = m.convert(Basis::Divided);
        assert_eq!(d.exact_symbolic_rank(), 2);
        assert!(d.rank_factorize().reconstructs(&m));
    }

    #[test]
    fn randomized_rank_agrees_on_examples() {
        let m = mat(2, &[&["x1", "x2"], &["x2", "x1"]]);
        let r = m.randomized_symbolic_rank(m.default_sample_range(), 3, 1).unwrap();
        assert_eq!(r, 2);
        // constant matrix: one trial is exact
        let c = mat(1, &[&["2", "4"], &["1", "2"]]);
        assert_eq!(c.randomized_symbolic_rank(2, 1, 9).unwrap(), 1);
        assert_eq!(c.exact_symbolic_rank(), 1);
    }

    #[test]
    fn randomized_rank_is_a_lower_bound() {
        let mut rng = sample::rng_from(13, 0);
        let mut agree = 0;
        for trial in 0..60 {
            let m = sample::random_poly_matrix(&Rationals, 3, 3, 2, 2, 2, &mut rng);
            let exact = m.exact_symbolic_rank();
            let rnd = m
                .randomized_symbolic_rank(m.default_sample_range(), 3, trial)
                .unwrap();
            assert!(rnd <= exact);
            if rnd == exact {
                agree += 1;
            }
        }
        assert!(agree >= 59, "agreement too low: {agree}/60");
    }

    #[test]
    fn randomized_rank_rejects_bad_parameters() {
        let m = mat(2, &[&["x1^3", "x2"], &["x2", "x1"]]);
        assert!(m.randomized_symbolic_rank(1, 3, 0).is_err());
        assert!(m.randomized_symbolic_rank(3, 3, 0).is_err(), "range must exceed degree");
        assert!(m.randomized_symbolic_rank(4, 0, 0).is_err());
        assert!(m.randomized_symbolic_rank(4, 2, 0).is_ok());
    }

    #[test]
    fn prime_field_floor_refusal() {
        let k = PrimeField::new(MIN_PRIME).unwrap();
        // degree 65535 with dimension 330 puts the floor above the modulus
        let mut big = Polynomial::zero(k, 1, Basis::Standard);
        big.add_term(Monomial(vec![65535]), k.one());
        let mut row = vec![Polynomial::zero(k, 1, Basis::Standard); 330];
        row[0] = big;
        let m = PolyMatrix::from_rows(vec![row]);
        match m.randomized_symbolic_rank(70000, 1, 0) {
            Err(Error::Refused(_)) => {}
            other => panic!("expected refusal, got {other:?}"),
        }
        // small degrees are fine over the same field
        let ok = PolyMatrix::from_rows(vec![vec![Polynomial::variable(
            k,
            1,
            0,
            Basis::Standard,
        )]]);
        assert_eq!(ok.randomized_symbolic_rank(200, 2, 3).unwrap(), 1);
    }

    #[test]
    fn evaluate_matches_entrywise_evaluation() {
        let m = mat(2, &[&["x1^2 - x2", "1/2*x1"], &["0", "x2^3"]]);
        let pt = [Rationals.from_i64(3), Rationals.from_i64(-2)];
        let e = m.evaluate(&pt);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(*e.get(i, j), m.entry(i, j).evaluate(&pt));
            }
        }
    }

    #[test]
    fn pivot_degrees_stay_minor_bounded() {
        // entries of the s-th eliminated matrix are (s+1)-minors: with
        // linear entries the s-th pivot has degree at most s+1
        let mut rng = sample::rng_from(21, 0);
        for _ in 0..10 {
            let m = sample::random_poly_matrix(&Rationals, 4, 4, 2, 1, 2, &mut rng);
            let f = m.rank_factorize();
            for (s, p) in f.pivots.iter().enumerate() {
                assert!(p.degree().unwrap_or(0) <= (s + 1) as u32);
            }
        }
    }
}
