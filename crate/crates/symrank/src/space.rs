//! Linear spans of constant matrices.
//!
//! A [`MatrixSpace`] is the span of finitely many generators inside the
//! m×k matrices. Generators are vectorized row-major and reduced once, on
//! first use, into a cached row-echelon basis; membership queries and the
//! dimension are exact linear algebra against that basis.
//!
//! The maximal rank attained on the span is estimated by forming the generic
//! combination Σ_s z_s·B_s of a reduced basis in fresh variables z and taking
//! its randomized symbolic rank: a random point of the span attains the max
//! except on a hypersurface.

use std::sync::OnceLock;

use crate::error::Result;
use crate::field::Field;
use crate::matrix::{PolyMatrix, ReducedBasis, ScalarMat};
use crate::monomial::Monomial;
use crate::poly::{Basis, Polynomial};

#[derive(Clone, Debug)]
pub struct MatrixSpace<K: Field> {
    field: K,
    rows: usize,
    cols: usize,
    generators: Vec<ScalarMat<K>>,
    reduced: OnceLock<ReducedBasis<K>>,
}

impl<K: Field> MatrixSpace<K> {
    pub fn new(field: K, rows: usize, cols: usize, generators: Vec<ScalarMat<K>>) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        for g in &generators {
            assert_eq!((g.rows(), g.cols()), (rows, cols), "generator shape mismatch");
            assert_eq!(g.field(), &field, "field mismatch");
        }
        MatrixSpace { field, rows, cols, generators, reduced: OnceLock::new() }
    }

    /// Span of the divided-basis coefficient matrices of `m`: one generator
    /// per monomial occurring in any entry, ordered by graded lex.
    pub fn coefficient_space(m: &PolyMatrix<K>) -> Self {
        let d = m.convert(Basis::Divided);
        let field = d.field().clone();
        let mut monomials: Vec<Monomial> = Vec::new();
        for e in d.entries() {
            for (mono, _) in e.iter_terms() {
                monomials.push(mono.clone());
            }
        }
        monomials.sort();
        monomials.dedup();
        let generators = monomials
            .iter()
            .map(|mono| {
                let mut g = ScalarMat::zeros(field.clone(), d.rows(), d.cols());
                for i in 0..d.rows() {
                    for j in 0..d.cols() {
                        g.set(i, j, d.entry(i, j).coeff(mono));
                    }
                }
                g
            })
            .collect();
        MatrixSpace::new(field, d.rows(), d.cols(), generators)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn generators(&self) -> &[ScalarMat<K>] {
        &self.generators
    }

    /// Reduced basis of the span, built once on first use.
    fn reduced(&self) -> &ReducedBasis<K> {
        self.reduced.get_or_init(|| {
            ReducedBasis::from_vectors(
                self.field.clone(),
                self.rows * self.cols,
                self.generators.iter().map(|g| g.vectorize()),
            )
        })
    }

    pub fn dimension(&self) -> usize {
        self.reduced().rank()
    }

    /// Exact membership of `a` in the span.
    pub fn contains(&self, a: &ScalarMat<K>) -> bool {
        assert_eq!((a.rows(), a.cols()), (self.rows, self.cols), "shape mismatch");
        self.reduced().contains(&a.vectorize())
    }

    /// Largest rank attained on the span, by randomized symbolic rank of the
    /// generic combination of a reduced basis.
    pub fn max_rank(&self, trials: u32, seed: u64) -> Result<usize> {
        let basis = self.reduced();
        let t = basis.rank();
        if t == 0 {
            return Ok(0);
        }
        let mut generic = PolyMatrix::zero(
            self.field.clone(),
            self.rows,
            self.cols,
            t,
            Basis::Standard,
        );
        for i in 0..self.rows {
            for j in 0..self.cols {
                let terms = basis.rows().iter().enumerate().map(|(s, b)| {
                    (Monomial::var(t, s), b[i * self.cols + j].clone())
                });
                generic.set(
                    i,
                    j,
                    Polynomial::from_terms(self.field.clone(), t, Basis::Standard, terms),
                );
            }
        }
        generic.randomized_symbolic_rank(generic.default_sample_range(), trials, seed)
    }
}
