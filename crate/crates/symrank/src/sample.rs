//! Seeded random generators for test data and the barrier harness.
//!
//! All randomness flows through ChaCha12 streams keyed by (seed, stream), so
//! every consumer derives independent, reproducible randomness from a single
//! user-facing seed. Integer coefficients are drawn from small symmetric
//! ranges; exact arithmetic downstream does not care about magnitudes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::field::Field;
use crate::matrix::PolyMatrix;
use crate::monomial::{Monomial, VariablePartition};
use crate::poly::{Basis, Polynomial};

/// The concrete RNG used throughout; handy where a named type is needed.
pub type StdStream = ChaCha12Rng;

/// Independent RNG for a (seed, stream) pair.
pub fn rng_from(seed: u64, stream: u64) -> ChaCha12Rng {
    let mut s = [0u8; 32];
    s[..8].copy_from_slice(&seed.to_le_bytes());
    s[8..16].copy_from_slice(&stream.to_le_bytes());
    ChaCha12Rng::from_seed(s)
}

/// Uniform in [-bound, bound].
pub fn int_coeff<R: Rng>(bound: i64, rng: &mut R) -> i64 {
    rng.gen_range(-bound..=bound)
}

/// Uniform in [-bound, bound] \ {0}.
pub fn nonzero_coeff<R: Rng>(bound: i64, rng: &mut R) -> i64 {
    let v = rng.gen_range(1..=bound);
    if rng.gen::<bool>() {
        v
    } else {
        -v
    }
}

pub fn random_point<K: Field, R: Rng>(
    field: &K,
    n: usize,
    bound: i64,
    rng: &mut R,
) -> Vec<K::Elem> {
    (0..n).map(|_| field.from_i64(int_coeff(bound, rng))).collect()
}

/// Monomial of total degree exactly `deg`: each unit of degree lands on a
/// uniformly random variable.
pub fn random_monomial<R: Rng>(n: usize, deg: u32, rng: &mut R) -> Monomial {
    let mut e = vec![0u16; n];
    for _ in 0..deg {
        e[rng.gen_range(0..n)] += 1;
    }
    Monomial(e)
}

/// Sparse polynomial with `terms` draws of degree ≤ `max_deg` and nonzero
/// coefficients in [-10, 10]. Colliding monomials merge, so the result can
/// have fewer terms, or even be zero.
pub fn random_polynomial<K: Field, R: Rng>(
    field: &K,
    n: usize,
    max_deg: u32,
    terms: usize,
    rng: &mut R,
) -> Polynomial<K> {
    let ts = (0..terms).map(|_| {
        let deg = rng.gen_range(0..=max_deg);
        (random_monomial(n, deg, rng), field.from_i64(nonzero_coeff(10, rng)))
    });
    Polynomial::from_terms(field.clone(), n, Basis::Standard, ts)
}

/// Sparse homogeneous polynomial of degree exactly `deg` (or zero if all
/// draws cancel).
pub fn random_homogeneous<K: Field, R: Rng>(
    field: &K,
    n: usize,
    deg: u32,
    terms: usize,
    rng: &mut R,
) -> Polynomial<K> {
    let ts = (0..terms)
        .map(|_| (random_monomial(n, deg, rng), field.from_i64(nonzero_coeff(10, rng))));
    Polynomial::from_terms(field.clone(), n, Basis::Standard, ts)
}

/// Dense polynomial: every monomial of degree ≤ `max_deg` gets a coefficient
/// uniform in [-10, 10] (zeros included).
pub fn random_dense_up_to<K: Field, R: Rng>(
    field: &K,
    n: usize,
    max_deg: u32,
    rng: &mut R,
) -> Polynomial<K> {
    let ts = crate::monomial::monomials_up_to_degree(n, max_deg)
        .into_iter()
        .map(|m| (m, field.from_i64(int_coeff(10, rng))));
    Polynomial::from_terms(field.clone(), n, Basis::Standard, ts)
}

/// Nonzero linear form c₁x₁ + … + cₙxₙ.
pub fn random_linear_form<K: Field, R: Rng>(field: &K, n: usize, rng: &mut R) -> Polynomial<K> {
    loop {
        let ts = (0..n).map(|i| (Monomial::var(n, i), field.from_i64(int_coeff(10, rng))));
        let p = Polynomial::from_terms(field.clone(), n, Basis::Standard, ts);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Matrix whose entries are sparse polynomials of degree ≤ `max_deg`.
pub fn random_poly_matrix<K: Field, R: Rng>(
    field: &K,
    rows: usize,
    cols: usize,
    n: usize,
    max_deg: u32,
    terms_per_entry: usize,
    rng: &mut R,
) -> PolyMatrix<K> {
    let rows = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| random_polynomial(field, n, max_deg, terms_per_entry, rng))
                .collect()
        })
        .collect();
    PolyMatrix::from_rows(rows)
}

/// Matrix with homogeneous degree-`deg` entries (zero entries permitted).
pub fn random_homogeneous_matrix<K: Field, R: Rng>(
    field: &K,
    rows: usize,
    cols: usize,
    n: usize,
    deg: u32,
    terms_per_entry: usize,
    rng: &mut R,
) -> PolyMatrix<K> {
    let rows = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| random_homogeneous(field, n, deg, terms_per_entry, rng))
                .collect()
        })
        .collect();
    PolyMatrix::from_rows(rows)
}

/// Set-multilinear monomial: one uniformly chosen variable from each block.
pub fn random_sm_monomial<R: Rng>(part: &VariablePartition, rng: &mut R) -> Monomial {
    let mut e = vec![0u16; part.num_vars()];
    for b in 0..part.block_count() {
        let block = part.block(b);
        e[block[rng.gen_range(0..block.len())]] = 1;
    }
    Monomial(e)
}

/// Matrix whose entries are set-multilinear for `part` (every monomial uses
/// exactly one variable per block).
pub fn random_sm_matrix<K: Field, R: Rng>(
    field: &K,
    rows: usize,
    cols: usize,
    part: &VariablePartition,
    terms_per_entry: usize,
    rng: &mut R,
) -> PolyMatrix<K> {
    let n = part.num_vars();
    let rows = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    let ts = (0..terms_per_entry).map(|_| {
                        (random_sm_monomial(part, rng), field.from_i64(nonzero_coeff(10, rng)))
                    });
                    Polynomial::from_terms(field.clone(), n, Basis::Standard, ts)
                })
                .collect()
        })
        .collect();
    PolyMatrix::from_rows(rows)
}
