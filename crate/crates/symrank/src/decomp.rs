//! Constructive low-rank decompositions of polynomial matrices.
//!
//! A fraction-free elimination of a matrix M whose entries are homogeneous of
//! degree d yields M = Σₛ (1/(πₛ₋₁πₛ)) uₛ ⊗ vₛ as an identity of rational
//! functions, with πₛ the elimination pivots.  Picking a point 𝐚 where every
//! pivot is nonzero and expanding each 1/(πₛ₋₁πₛ)(𝐱+𝐚) as a geometric series
//! truncated at degree d turns this into a *polynomial* identity
//!
//!     M = Σₛ H_d[fₛ ⊗ gₛ],          deg fₛ, deg gₛ ≤ d,
//!
//! with exactly rank(M) pairs.  Splitting each pair by degree gives at most
//! r(d+1) homogeneous outer products summing to M exactly; splitting by block
//! subsets (when M is set-multilinear) gives at most r·2^d set-multilinear
//! outer products.  Everything here is exact; reconstruction is re-checked on
//! every call.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{bareiss, PolyMatrix};
use crate::monomial::VariablePartition;
use crate::poly::{Basis, PolyVector, Polynomial};
use crate::sample;

/// Default cap on the number of candidate points `find_shift_point` examines.
pub const DEFAULT_GRID_LIMIT: u64 = 1 << 20;

/// How many points of the first grid are scanned in order before switching to
/// random sampling on growing grids.
const DETERMINISTIC_SCAN_CAP: u64 = 4096;

/// Seed for the random phase of the shift-point search.  Fixed so the search
/// is a deterministic function of its inputs.
const SHIFT_SEARCH_SEED: u64 = 0xD5AA7;

/// One factor of a degree-d jet decomposition: a column vector f and a row
/// vector g of polynomials of degree ≤ d with M = Σ H_d[f ⊗ g] over all pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetPair<K: Field> {
    pub f: PolyVector<K>,
    pub g: PolyVector<K>,
}

/// One homogeneous outer product u ⊗ v with deg u = deg_u, deg v = deg_v.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomTerm<K: Field> {
    pub u: PolyVector<K>,
    pub v: PolyVector<K>,
    pub deg_u: u32,
    pub deg_v: u32,
}

/// A sum of homogeneous outer products reconstructing a matrix exactly.
///
/// `rank` is the symbolic rank of the decomposed matrix; the construction
/// guarantees `terms.len() ≤ rank * (degree + 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomDecomposition<K: Field> {
    pub degree: u32,
    pub rank: usize,
    pub terms: Vec<HomTerm<K>>,
}

/// One set-multilinear outer product: u is set-multilinear exactly on the
/// blocks in `subset`, v on the complementary blocks.  Block indices are
/// 0-based and strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmTerm<K: Field> {
    pub u: PolyVector<K>,
    pub v: PolyVector<K>,
    pub subset: Vec<usize>,
}

/// A sum of set-multilinear outer products reconstructing a matrix exactly.
///
/// The construction guarantees `terms.len() ≤ rank * 2^d` where d is the
/// number of blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SMDecomposition<K: Field> {
    pub rank: usize,
    pub terms: Vec<SmTerm<K>>,
}

/// Any of the decomposition shapes this module produces, for uniform
/// verification and serialization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition<K: Field> {
    Jets { degree: u32, pairs: Vec<JetPair<K>> },
    Homogeneous(HomDecomposition<K>),
    SetMultilinear(SMDecomposition<K>),
}

/// Finds a point 𝐚 ∈ ℤ₊ⁿ with tᵢ(𝐚) ≠ 0 for every given denominator.
///
/// The product Q = ∏tᵢ is a nonzero polynomial of total degree D = Σ deg tᵢ,
/// so Q cannot vanish on all of Sⁿ once |S| > D; the grid {0,…,D}ⁿ therefore
/// contains a good point.  The search scans that grid in odometer order
/// (first coordinate fastest) for up to a few thousand points, then samples
/// uniformly from grids of doubling side with a fixed seed, giving up after
/// `grid_limit` candidates.  Panics if some tᵢ is identically zero — such a
/// denominator has no nonzero point anywhere.
pub fn find_shift_point<K: Field>(
    denoms: &[Polynomial<K>],
    grid_limit: u64,
) -> Result<Vec<K::Elem>> {
    assert!(!denoms.is_empty(), "no denominators given");
    let n = denoms[0].num_vars();
    for t in denoms {
        assert_eq!(t.num_vars(), n, "denominators over different variable sets");
        assert!(!t.is_zero(), "zero denominator has no nonzero point");
    }
    let field = denoms[0].field().clone();
    let degree_sum: u64 = denoms.iter().map(|t| t.degree().unwrap() as u64).sum();
    // Side length large enough that the first grid is guaranteed to contain a
    // good point; never exceed the field size.
    let max_side = field.characteristic().unwrap_or(1 << 31);
    let mut side = (degree_sum + 1).min(max_side);

    let good = |pt: &[K::Elem]| denoms.iter().all(|t| !field.is_zero(&t.evaluate(pt)));
    let to_point =
        |digits: &[u64]| -> Vec<K::Elem> { digits.iter().map(|&v| field.from_i64(v as i64)).collect() };

    let mut tested: u64 = 0;

    // Ordered scan of the guaranteed grid.
    let mut digits = vec![0u64; n];
    loop {
        if tested >= grid_limit.min(DETERMINISTIC_SCAN_CAP) {
            break;
        }
        tested += 1;
        let pt = to_point(&digits);
        if good(&pt) {
            return Ok(pt);
        }
        // Advance the odometer; stop after the last point of the grid.
        let mut axis = 0;
        loop {
            if axis == n {
                // Wrapped past the end: grid exhausted, yet guaranteed to
                // contain a good point — unreachable unless capped above.
                break;
            }
            digits[axis] += 1;
            if digits[axis] < side {
                break;
            }
            digits[axis] = 0;
            axis += 1;
        }
        if digits.iter().all(|&v| v == 0) {
            break;
        }
    }

    // Random phase: uniform points from grids of doubling side.  Each draw
    // misses with probability ≤ D/side, so this terminates almost surely and
    // in practice immediately; the seed is fixed for reproducibility.
    let mut rng = sample::rng_from(SHIFT_SEARCH_SEED, 0);
    use rand::Rng;
    while tested < grid_limit {
        for _ in 0..64 {
            if tested >= grid_limit {
                break;
            }
            tested += 1;
            let digit_vals: Vec<u64> = (0..n).map(|_| rng.gen_range(0..side)).collect();
            let pt = to_point(&digit_vals);
            if good(&pt) {
                return Ok(pt);
            }
        }
        side = side.saturating_mul(2).min(max_side);
    }
    Err(Error::Refused(format!(
        "no common nonvanishing point found within {grid_limit} candidates"
    )))
}

/// Decomposes M = Σₛ H_d[fₛ ⊗ gₛ] with one pair per unit of symbolic rank and
/// deg fₛ, deg gₛ ≤ d.
///
/// Every entry of M must be homogeneous of degree exactly d (zero entries are
/// fine).  The reconstruction identity is re-checked before returning.
pub fn symbolic_decompose<K: Field>(m: &PolyMatrix<K>, d: u32) -> Result<Vec<JetPair<K>>> {
    let m_std = m.convert(Basis::Standard);
    for i in 0..m_std.rows() {
        for j in 0..m_std.cols() {
            let e = m_std.entry(i, j);
            if !e.is_zero() && (!e.is_homogeneous() || e.degree() != Some(d)) {
                return Err(Error::InvalidInput(format!(
                    "entry ({}, {}) is not homogeneous of degree {}",
                    i + 1,
                    j + 1,
                    d
                )));
            }
        }
    }
    if m_std.is_zero() {
        return Ok(Vec::new());
    }

    let field = m_std.field().clone();
    let n = m_std.num_vars();
    let elim = bareiss(&m_std, true);
    let r = elim.pivots.len();
    let a = find_shift_point(&elim.pivots, DEFAULT_GRID_LIMIT)?;

    let one = Polynomial::one(field.clone(), n, Basis::Standard);
    // Pivot values and degree-≤d jets of the shifted pivots, with the
    // implicit π₋₁ = 1 in front.
    let mut pivot_vals = vec![field.one()];
    let mut pivot_jets = vec![one.clone()];
    for p in &elim.pivots {
        let v = p.evaluate(&a);
        assert!(!field.is_zero(&v), "shift point does not clear a pivot");
        pivot_vals.push(v);
        pivot_jets.push(p.shift_truncated(&a, d));
    }

    let mut pairs = Vec::with_capacity(r);
    for s in 0..r {
        let b = field.mul(&pivot_vals[s], &pivot_vals[s + 1]);
        let inv_b = field.inv(&b);
        // t̂ₛ = 1 − tₛ(𝐱+𝐚)/tₛ(𝐚) has zero constant term, so the geometric
        // series Σⱼ t̂ₛʲ truncated at degree d inverts 1 − t̂ₛ among degree-≤d
        // jets.
        let t_hat = &one - &pivot_jets[s].mul_trunc(&pivot_jets[s + 1], d).scale(&inv_b);
        debug_assert!(t_hat.homogeneous_component(0).is_zero());
        let mut series = one.clone();
        let mut power = one.clone();
        for _ in 1..=d {
            power = power.mul_trunc(&t_hat, d);
            if power.is_zero() {
                break;
            }
            series = series.add(&power);
        }

        let f = PolyVector::new(
            elim.us[s]
                .iter()
                .map(|u| u.shift_truncated(&a, d).scale(&inv_b))
                .collect(),
        );
        let g = PolyVector::new(
            elim.vs[s]
                .iter()
                .map(|v| v.shift_truncated(&a, d).mul_trunc(&series, d))
                .collect(),
        );
        pairs.push(JetPair { f, g });
    }

    // Full jet identity at the shift point: Σₛ fₛgₛ ≡ M(𝐱+𝐚) up to degree d.
    debug_assert!({
        let mut ok = true;
        'outer: for i in 0..m_std.rows() {
            for j in 0..m_std.cols() {
                let mut sum = Polynomial::zero(field.clone(), n, Basis::Standard);
                for p in &pairs {
                    sum = sum.add(&p.f.entry(i).mul_trunc(p.g.entry(j), d));
                }
                if sum != m_std.entry(i, j).shift_truncated(&a, d) {
                    ok = false;
                    break 'outer;
                }
            }
        }
        ok
    });
    assert!(
        jets_reconstruct(&m_std, &pairs, d),
        "degree-{d} jet reconstruction failed"
    );
    Ok(pairs)
}

/// Checks Σₛ H_d[fₛ ⊗ gₛ] == M entrywise.
fn jets_reconstruct<K: Field>(m: &PolyMatrix<K>, pairs: &[JetPair<K>], d: u32) -> bool {
    let m_std = m.convert(Basis::Standard);
    let field = m_std.field().clone();
    let n = m_std.num_vars();
    for p in pairs {
        if p.f.len() != m_std.rows() || p.g.len() != m_std.cols() {
            return false;
        }
    }
    for i in 0..m_std.rows() {
        for j in 0..m_std.cols() {
            let mut sum = Polynomial::zero(field.clone(), n, Basis::Standard);
            for p in pairs {
                let prod = p.f.entry(i).convert(Basis::Standard).mul_trunc(
                    &p.g.entry(j).convert(Basis::Standard),
                    d,
                );
                sum = sum.add(&prod.homogeneous_component(d));
            }
            if &sum != m_std.entry(i, j) {
                return false;
            }
        }
    }
    true
}

/// Decomposes M into at most r(d+1) homogeneous outer products summing to M
/// exactly, where r = rank M and d the common degree of the entries.
pub fn hom_rank_decompose<K: Field>(m: &PolyMatrix<K>) -> Result<HomDecomposition<K>> {
    let d = match m.max_degree() {
        Some(d) => d,
        None => {
            return Ok(HomDecomposition { degree: 0, rank: 0, terms: Vec::new() });
        }
    };
    let pairs = symbolic_decompose(m, d)?;
    let rank = pairs.len();
    let mut terms = Vec::new();
    for p in &pairs {
        for k in 0..=d {
            let u = p.f.homogeneous_component(k);
            if u.is_zero() {
                continue;
            }
            let v = p.g.homogeneous_component(d - k);
            if v.is_zero() {
                continue;
            }
            terms.push(HomTerm { u, v, deg_u: k, deg_v: d - k });
        }
    }
    assert!(terms.len() <= rank * (d as usize + 1), "homogeneous split exceeded its term bound");
    let out = HomDecomposition { degree: d, rank, terms };
    assert!(out.verify(m), "homogeneous reconstruction failed");
    Ok(out)
}

/// Decomposes a set-multilinear M into at most r·2^d set-multilinear outer
/// products summing to M exactly, where d is the number of blocks.
pub fn sm_rank_decompose<K: Field>(
    m: &PolyMatrix<K>,
    part: &VariablePartition,
) -> Result<SMDecomposition<K>> {
    if part.num_vars() != m.num_vars() {
        return Err(Error::InvalidInput(format!(
            "partition covers {} variables but the matrix has {}",
            part.num_vars(),
            m.num_vars()
        )));
    }
    let d = part.block_count();
    if d > 20 {
        return Err(Error::Refused(format!(
            "{d} blocks would require scanning 2^{d} block subsets"
        )));
    }
    let m_std = m.convert(Basis::Standard);
    for i in 0..m_std.rows() {
        for j in 0..m_std.cols() {
            let e = m_std.entry(i, j);
            if !e.is_zero() && !e.is_set_multilinear(part) {
                return Err(Error::InvalidInput(format!(
                    "entry ({}, {}) is not set-multilinear",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    if m_std.is_zero() {
        return Ok(SMDecomposition { rank: 0, terms: Vec::new() });
    }

    let pairs = symbolic_decompose(&m_std, d as u32)?;
    let rank = pairs.len();
    let all_blocks: Vec<usize> = (0..d).collect();
    let mut terms = Vec::new();
    for p in &pairs {
        for mask in 0u32..(1 << d) {
            let subset: Vec<usize> =
                all_blocks.iter().copied().filter(|b| mask >> b & 1 == 1).collect();
            let rest: Vec<usize> =
                all_blocks.iter().copied().filter(|b| mask >> b & 1 == 0).collect();
            let u = p.f.sm_component(part, &subset);
            if u.is_zero() {
                continue;
            }
            let v = p.g.sm_component(part, &rest);
            if v.is_zero() {
                continue;
            }
            terms.push(SmTerm { u, v, subset });
        }
    }
    assert!(terms.len() <= rank << d, "set-multilinear split exceeded its term bound");
    let out = SMDecomposition { rank, terms };
    assert!(out.verify(m, part), "set-multilinear reconstruction failed");
    Ok(out)
}

impl<K: Field> HomDecomposition<K> {
    /// True iff every term is a homogeneous outer product of matching degrees
    /// and the terms sum to `m` exactly.
    pub fn verify(&self, m: &PolyMatrix<K>) -> bool {
        let m_std = m.convert(Basis::Standard);
        let mut sum = PolyMatrix::zero(
            m_std.field().clone(),
            m_std.rows(),
            m_std.cols(),
            m_std.num_vars(),
            Basis::Standard,
        );
        for t in &self.terms {
            if t.deg_u + t.deg_v != self.degree {
                return false;
            }
            if t.u.len() != m_std.rows() || t.v.len() != m_std.cols() {
                return false;
            }
            let u = t.u.map(|p| p.convert(Basis::Standard));
            let v = t.v.map(|p| p.convert(Basis::Standard));
            let uniform = |vec: &PolyVector<K>, deg: u32| {
                vec.entries()
                    .iter()
                    .all(|p| p.is_zero() || (p.is_homogeneous() && p.degree() == Some(deg)))
            };
            if !uniform(&u, t.deg_u) || !uniform(&v, t.deg_v) {
                return false;
            }
            sum = sum.add(&PolyMatrix::outer(&u, &v));
        }
        sum == m_std
    }
}

impl<K: Field> SMDecomposition<K> {
    /// True iff every term is an outer product of vectors set-multilinear on
    /// complementary block subsets and the terms sum to `m` exactly.
    pub fn verify(&self, m: &PolyMatrix<K>, part: &VariablePartition) -> bool {
        let m_std = m.convert(Basis::Standard);
        if part.num_vars() != m_std.num_vars() {
            return false;
        }
        let d = part.block_count();
        let mut sum = PolyMatrix::zero(
            m_std.field().clone(),
            m_std.rows(),
            m_std.cols(),
            m_std.num_vars(),
            Basis::Standard,
        );
        for t in &self.terms {
            if t.subset.windows(2).any(|w| w[0] >= w[1]) || t.subset.iter().any(|&b| b >= d) {
                return false;
            }
            if t.u.len() != m_std.rows() || t.v.len() != m_std.cols() {
                return false;
            }
            let rest: Vec<usize> = (0..d).filter(|b| !t.subset.contains(b)).collect();
            let u = t.u.map(|p| p.convert(Basis::Standard));
            let v = t.v.map(|p| p.convert(Basis::Standard));
            // A vector is set-multilinear exactly on S iff projecting onto S
            // changes nothing.
            let on = |vec: &PolyVector<K>, s: &[usize]| &vec.sm_component(part, s) == vec;
            if !on(&u, &t.subset) || !on(&v, &rest) {
                return false;
            }
            sum = sum.add(&PolyMatrix::outer(&u, &v));
        }
        sum == m_std
    }
}

/// Verifies any decomposition shape against the matrix it claims to
/// reconstruct.  Set-multilinear decompositions need the block partition;
/// passing none for one is an error.
pub fn verify_decomposition<K: Field>(
    m: &PolyMatrix<K>,
    decomp: &Decomposition<K>,
    part: Option<&VariablePartition>,
) -> Result<bool> {
    match decomp {
        Decomposition::Jets { degree, pairs } => Ok(jets_reconstruct(m, pairs, *degree)),
        Decomposition::Homogeneous(h) => Ok(h.verify(m)),
        Decomposition::SetMultilinear(s) => {
            let part = part.ok_or_else(|| {
                Error::InvalidInput(
                    "set-multilinear verification requires a block partition".into(),
                )
            })?;
            Ok(s.verify(m, part))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::sample;

    fn q(n: usize, s: &str) -> Polynomial<Rationals> {
        Polynomial::parse(Rationals, n, Basis::Standard, s).unwrap()
    }

    fn mat(n: usize, rows: &[&[&str]]) -> PolyMatrix<Rationals> {
        PolyMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|s| q(n, s)).collect()).collect(),
        )
    }

    fn point(vals: &[i64]) -> Vec<num_rational::BigRational> {
        vals.iter().map(|&v| Rationals.from_i64(v)).collect()
    }

    #[test]
    fn shift_point_skips_coordinate_hyperplane() {
        // x1 vanishes at the origin, so the scan moves one step along the
        // first axis and stops.
        let a = find_shift_point(&[q(3, "x1")], DEFAULT_GRID_LIMIT).unwrap();
        assert_eq!(a, point(&[1, 0, 0]));
    }

    #[test]
    fn shift_point_takes_origin_when_it_works() {
        let a = find_shift_point(&[q(2, "x1 - 1"), q(2, "x2 - 2")], DEFAULT_GRID_LIMIT).unwrap();
        assert_eq!(a, point(&[0, 0]));
        let b = find_shift_point(&[q(2, "2")], DEFAULT_GRID_LIMIT).unwrap();
        assert_eq!(b, point(&[0, 0]));
    }

    #[test]
    fn shift_point_clears_several_denominators() {
        let denoms =
            vec![q(2, "x1"), q(2, "x2"), q(2, "x1 - x2"), q(2, "x1 + x2 - 3"), q(2, "x1*x2 - 2")];
        let a = find_shift_point(&denoms, DEFAULT_GRID_LIMIT).unwrap();
        for t in &denoms {
            assert!(!t.evaluate(&a).eq(&Rationals.zero()));
        }
    }

    #[test]
    #[should_panic(expected = "zero denominator")]
    fn shift_point_rejects_zero_denominator() {
        let _ = find_shift_point(&[q(2, "0")], DEFAULT_GRID_LIMIT);
    }

    #[test]
    fn shift_point_respects_grid_limit() {
        let denoms = vec![q(3, "x1 - 9"), q(3, "x2 - 9"), q(3, "x3 - 9")];
        // A good point exists immediately (the origin), so a tiny limit still
        // succeeds; a limit of zero refuses before testing anything.
        assert_eq!(find_shift_point(&denoms, 8).unwrap(), point(&[0, 0, 0]));
        assert!(matches!(find_shift_point(&denoms, 0), Err(Error::Refused(_))));
    }

    #[test]
    fn rank_one_symmetric_square() {
        let m = mat(2, &[&["x1^2", "x1*x2"], &["x1*x2", "x2^2"]]);
        let pairs = symbolic_decompose(&m, 2).unwrap();
        assert_eq!(pairs.len(), 1);
        assert!(jets_reconstruct(&m, &pairs, 2));
    }

    #[test]
    fn diagonal_needs_one_pair_per_variable() {
        let m = mat(2, &[&["x1", "0"], &["0", "x2"]]);
        let pairs = symbolic_decompose(&m, 1).unwrap();
        assert_eq!(pairs.len(), 2);
        assert!(jets_reconstruct(&m, &pairs, 1));
    }

    #[test]
    fn jets_stay_within_degree() {
        let m = mat(2, &[&["x1^2", "x1*x2 + x2^2"], &["x2^2 - x1^2", "x1*x2"]]);
        let d = 2;
        let pairs = symbolic_decompose(&m, d).unwrap();
        assert_eq!(pairs.len(), 2);
        for p in &pairs {
            for e in p.f.entries().iter().chain(p.g.entries()) {
                assert!(e.degree().unwrap_or(0) <= d);
            }
        }
    }

    #[test]
    fn zero_matrix_decomposes_to_nothing() {
        let m = PolyMatrix::<Rationals>::zero(Rationals, 2, 3, 2, Basis::Standard);
        assert!(symbolic_decompose(&m, 4).unwrap().is_empty());
        let h = hom_rank_decompose(&m).unwrap();
        assert!(h.terms.is_empty());
        assert!(h.verify(&m));
    }

    #[test]
    fn rejects_inhomogeneous_entries() {
        let m = mat(2, &[&["x1^2 + x2"]]);
        assert!(matches!(symbolic_decompose(&m, 2), Err(Error::InvalidInput(_))));
        let wrong_degree = mat(2, &[&["x1*x2"]]);
        assert!(matches!(symbolic_decompose(&wrong_degree, 3), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn homogeneous_split_obeys_term_bound() {
        let m = mat(2, &[&["x1^2", "x1*x2"], &["x1*x2", "x2^2"]]);
        let h = hom_rank_decompose(&m).unwrap();
        assert_eq!(h.rank, 1);
        assert_eq!(h.degree, 2);
        assert!(h.terms.len() <= 3);
        assert!(h.verify(&m));
        for t in &h.terms {
            assert_eq!(t.deg_u + t.deg_v, 2);
        }
    }

    #[test]
    fn homogeneous_split_of_exchange_matrix() {
        let m = mat(2, &[&["x1", "x2"], &["x2", "x1"]]);
        let h = hom_rank_decompose(&m).unwrap();
        assert_eq!(h.rank, 2);
        assert!(h.terms.len() <= 4);
        assert!(h.verify(&m));
    }

    #[test]
    fn random_homogeneous_matrices_round_trip() {
        let mut rng = sample::rng_from(314, 0);
        for trial in 0..12 {
            let n = 2 + trial % 2;
            let d = 1 + trial % 3;
            let m = sample::random_homogeneous_matrix(&Rationals, 3, 3, n, d as u32, 2, &mut rng);
            let h = hom_rank_decompose(&m).unwrap();
            assert!(h.terms.len() <= h.rank * (d + 1));
            assert!(h.verify(&m));
        }
    }

    #[test]
    fn verify_rejects_tampering() {
        let m = mat(2, &[&["x1", "x2"], &["x2", "x1"]]);
        let mut h = hom_rank_decompose(&m).unwrap();
        // Break one coefficient.
        let t = &mut h.terms[0];
        t.u = t.u.map(|p| p.scale(&Rationals.from_i64(2)));
        assert!(!h.verify(&m));
        // Break a degree label.
        let mut h2 = hom_rank_decompose(&m).unwrap();
        h2.terms[0].deg_u += 1;
        assert!(!h2.verify(&m));
    }

    #[test]
    fn hand_built_decomposition_verifies() {
        // [[x1*x2]] = (x1) ⊗ (x2).
        let m = mat(2, &[&["x1*x2"]]);
        let h = HomDecomposition {
            degree: 2,
            rank: 1,
            terms: vec![HomTerm {
                u: PolyVector::new(vec![q(2, "x1")]),
                v: PolyVector::new(vec![q(2, "x2")]),
                deg_u: 1,
                deg_v: 1,
            }],
        };
        assert!(h.verify(&m));
        assert!(verify_decomposition(&m, &Decomposition::Homogeneous(h), None).unwrap());
    }

    #[test]
    fn sm_split_of_rank_one_block_product() {
        // Blocks {x1,x2} and {x3,x4}; M[i][j] = x_i * x_{2+j} has rank 1.
        let part = VariablePartition::from_sizes(&[2, 2]).unwrap();
        let m = mat(4, &[&["x1*x3", "x1*x4"], &["x2*x3", "x2*x4"]]);
        let s = sm_rank_decompose(&m, &part).unwrap();
        assert_eq!(s.rank, 1);
        assert!(s.terms.len() <= 4);
        assert!(s.verify(&m, &part));
        for t in &s.terms {
            assert!(t.subset.len() <= 2);
        }
    }

    #[test]
    fn sm_split_of_random_matrices() {
        let mut rng = sample::rng_from(2718, 0);
        for trial in 0..8 {
            let n = 2 + trial % 2;
            let d = 2 + trial % 2;
            let part = VariablePartition::uniform(d, n);
            let m = sample::random_sm_matrix(&Rationals, 2, 3, &part, 2, &mut rng);
            let s = sm_rank_decompose(&m, &part).unwrap();
            assert!(s.terms.len() <= s.rank << d);
            assert!(s.verify(&m, &part));
            assert!(verify_decomposition(
                &m,
                &Decomposition::SetMultilinear(s),
                Some(&part)
            )
            .unwrap());
        }
    }

    #[test]
    fn sm_rejects_non_multilinear_entries() {
        let part = VariablePartition::from_sizes(&[1, 1]).unwrap();
        let m = mat(2, &[&["x1^2"]]);
        assert!(matches!(sm_rank_decompose(&m, &part), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn sm_verification_needs_partition() {
        let part = VariablePartition::from_sizes(&[1, 1]).unwrap();
        let m = mat(2, &[&["x1*x2"]]);
        let s = sm_rank_decompose(&m, &part).unwrap();
        let d = Decomposition::SetMultilinear(s);
        assert!(verify_decomposition(&m, &d, Some(&part)).unwrap());
        assert!(matches!(verify_decomposition(&m, &d, None), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn decompose_works_over_divided_basis_input() {
        let m = mat(2, &[&["x1^2", "x1*x2"], &["x1*x2", "x2^2"]]).convert(Basis::Divided);
        let h = hom_rank_decompose(&m).unwrap();
        assert_eq!(h.rank, 1);
        assert!(h.verify(&m));
    }
}
