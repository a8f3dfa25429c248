//! Exact computational algebra for rank methods on polynomials and tensors.
//!
//! The crate provides, bottom to top:
//!
//! - polynomials over exact fields (ℚ or a large prime field), with
//!   divided-power bases, homogeneous and set-multilinear components
//!   ([`poly`], [`field`], [`monomial`]);
//! - symbolic matrices with exact (Bareiss) and randomized rank, rank
//!   factorizations with denominators, and spans of constant matrices
//!   ([`matrix`], [`space`]);
//! - constructive low-rank decompositions of matrices of homogeneous or
//!   set-multilinear polynomials ([`decomp`]);
//! - flattening-style rank methods: catalecticants, mode flattenings,
//!   general linear maps on coefficients, with symbolic images and barrier
//!   bounds on the lower bounds they can certify ([`flatten`]);
//! - a randomized harness that corroborates those barriers on sampled maps
//!   ([`barrier`]), and the set-multilinear structure of depth-3 circuit
//!   coordinates ([`depth3`]).
//!
//! Batch loops run on rayon when the default `parallel` feature is enabled;
//! `*_sequential` entry points and [`util::sequential_map`] are always
//! available and produce identical output.

pub mod barrier;
pub mod decomp;
pub mod depth3;
pub mod error;
pub mod field;
pub mod flatten;
pub mod io;
pub mod matrix;
pub mod monomial;
pub mod poly;
pub mod sample;
pub mod space;
pub mod util;

pub use barrier::{BarrierReport, GapReport};
pub use decomp::{Decomposition, HomDecomposition, JetPair, SMDecomposition};
pub use depth3::PsiImage;
pub use error::{Error, Result};
pub use flatten::{Family, LinearMap, MapInput, Tensor};
pub use field::{Field, PrimeField, Rationals};
pub use matrix::{PolyMatrix, RankFactorization, ScalarMat};
pub use monomial::{Monomial, VariablePartition};
pub use poly::{Basis, PolyVector, Polynomial};
