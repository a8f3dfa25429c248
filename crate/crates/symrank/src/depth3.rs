//! Set-multilinear structure of symmetric-product coordinates.
//!
//! Take D generic linear forms ℓ_b = Σᵢ y_{b,i} xᵢ whose coefficients are
//! themselves variables, one block of n per form.  The elementary symmetric
//! polynomial e_d(ℓ₁,…,ℓ_D) is a degree-d form in 𝐱 whose x^𝐞-coefficients
//! ψ_𝐞 are polynomials in the y-blocks.  Each ψ_𝐞 is symmetric
//! set-multilinear — every monomial takes at most one variable from a block,
//! and the polynomial is invariant under permuting blocks — and equals
//! (1/𝐞!)·[`polarize`]`(𝐞)`, the sum over all placements of the d factors of
//! x^𝐞 into distinct blocks.  The polarizations over |𝐞| = d have pairwise
//! disjoint supports, so the span of the coordinates has dimension exactly
//! C(n+d−1, n−1): the coordinate functions of this picture form as rich a
//! space as degree-d monomials do, which is what lets rank methods act on
//! them block by block.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::ReducedBasis;
use crate::monomial::{monomials_of_degree, Monomial, VariablePartition};
use crate::poly::{Basis, Polynomial};

/// The coordinates of e_d(ℓ₁,…,ℓ_D): one polynomial in the D·n block
/// variables per degree-d monomial x^𝐞.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiImage<K: Field> {
    n: usize,
    d: u32,
    num_forms: usize,
    part: VariablePartition,
    coords: Vec<(Monomial, Polynomial<K>)>,
}

impl<K: Field> PsiImage<K> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn num_forms(&self) -> usize {
        self.num_forms
    }

    /// The blocks of y-variables, one per linear form.
    pub fn partition(&self) -> &VariablePartition {
        &self.part
    }

    /// (x^𝐞, ψ_𝐞) pairs in graded-lex order of 𝐞.
    pub fn coords(&self) -> &[(Monomial, Polynomial<K>)] {
        &self.coords
    }
}

/// e_d(ℓ₁,…,ℓ_D) over the combined ring: variables y_{b,i} = b·n + i for
/// b < D, followed by x_i = D·n + i.  Computed by the prefix recurrence
/// e_k ← e_k + ℓ_b·e_{k−1}.
pub fn sym_poly<K: Field>(field: K, n: usize, num_forms: usize, d: u32) -> Polynomial<K> {
    assert!(n >= 1 && num_forms >= 1 && d >= 1, "dimensions must be positive");
    let nv = num_forms * n + n;
    let mut e: Vec<Polynomial<K>> = (0..=d)
        .map(|k| {
            if k == 0 {
                Polynomial::one(field.clone(), nv, Basis::Standard)
            } else {
                Polynomial::zero(field.clone(), nv, Basis::Standard)
            }
        })
        .collect();
    for b in 0..num_forms {
        let mut ell = Polynomial::zero(field.clone(), nv, Basis::Standard);
        for i in 0..n {
            let mut exps = vec![0u16; nv];
            exps[b * n + i] = 1;
            exps[num_forms * n + i] = 1;
            ell.add_term(Monomial(exps), field.one());
        }
        for k in (1..=d as usize).rev() {
            let bump = e[k - 1].mul(&ell);
            e[k] = e[k].add(&bump);
        }
    }
    e[d as usize].clone()
}

/// Extracts the ψ_𝐞 coordinates of [`sym_poly`].  Needs at least d forms —
/// with fewer, e_d vanishes identically.
pub fn build_psi<K: Field>(field: K, n: usize, num_forms: usize, d: u32) -> Result<PsiImage<K>> {
    if n < 1 || d < 1 {
        return Err(Error::InvalidInput("dimensions must be positive".into()));
    }
    if num_forms < d as usize {
        return Err(Error::InvalidInput(format!(
            "e_{d} of {num_forms} forms is identically zero; need at least {d} forms"
        )));
    }
    // Each coordinate has C(D, d)-many block choices times up to n^d terms.
    let work = crate::util::binomial_u128(num_forms as u64, d as u64)
        .and_then(|c| c.checked_mul((n as u128).checked_pow(d)?))
        .filter(|&w| w <= 1 << 22);
    if work.is_none() {
        return Err(Error::Refused(format!(
            "e_{d} of {num_forms} forms in {n} variables has too many terms"
        )));
    }

    let ny = num_forms * n;
    let sym = sym_poly(field.clone(), n, num_forms, d);
    let mut coords: Vec<(Monomial, Polynomial<K>)> = monomials_of_degree(n, d)
        .into_iter()
        .map(|e| (e, Polynomial::zero(field.clone(), ny, Basis::Standard)))
        .collect();
    for (mono, c) in sym.iter_terms() {
        let y_part = Monomial(mono.0[..ny].to_vec());
        let x_part = Monomial(mono.0[ny..].to_vec());
        let slot = coords
            .binary_search_by(|(e, _)| e.cmp(&x_part))
            .expect("every term of e_d has x-degree d");
        coords[slot].1.add_term(y_part, c.clone());
    }
    Ok(PsiImage {
        n,
        d,
        num_forms,
        part: VariablePartition::uniform(num_forms, n),
        coords,
    })
}

/// The polarization of x^𝐞 across `num_forms` blocks: writing x^𝐞 as an
/// ordered list of d = |𝐞| factors, the sum over all ways to place those
/// factors into pairwise distinct blocks of ∏ⱼ y_{bⱼ,iⱼ}.  Repeated factors
/// make the same placement in every order, so each block-set contributes its
/// monomial 𝐞! times.  Zero when there are fewer blocks than factors.
pub fn polarize<K: Field>(field: K, e: &Monomial, num_forms: usize) -> Result<Polynomial<K>> {
    let n = e.num_vars();
    assert!(n >= 1 && num_forms >= 1, "dimensions must be positive");
    let d = e.degree() as usize;
    let work = (num_forms as u128).checked_pow(d as u32).filter(|&w| w <= 1 << 22);
    if work.is_none() {
        return Err(Error::Refused(format!(
            "polarizing a degree-{d} monomial over {num_forms} blocks is too large"
        )));
    }
    if num_forms > 64 {
        return Err(Error::Refused("more than 64 blocks".into()));
    }
    let ny = num_forms * n;
    let mut slots = Vec::with_capacity(d);
    for (i, &ei) in e.0.iter().enumerate() {
        for _ in 0..ei {
            slots.push(i);
        }
    }
    let mut out = Polynomial::zero(field.clone(), ny, Basis::Standard);
    // Depth-first over injections slot → block, blocks tracked in a bitmask.
    let mut stack: Vec<(usize, u64, Vec<u16>)> = vec![(0, 0, vec![0u16; ny])];
    while let Some((slot, used, exps)) = stack.pop() {
        if slot == slots.len() {
            out.add_term(Monomial(exps), field.one());
            continue;
        }
        for b in 0..num_forms {
            if used >> b & 1 == 1 {
                continue;
            }
            let mut next = exps.clone();
            next[b * n + slots[slot]] += 1;
            stack.push((slot + 1, used | 1 << b, next));
        }
    }
    Ok(out)
}

/// True iff `p` is symmetric set-multilinear over the blocks: every monomial
/// takes at most one variable from each block, and `p` is invariant under
/// exchanging any two adjacent (hence all) blocks.  Blocks must all have the
/// same size for the exchange to make sense.
pub fn is_ssm<K: Field>(p: &Polynomial<K>, part: &VariablePartition) -> bool {
    assert_eq!(p.num_vars(), part.num_vars(), "partition does not cover the variables");
    let blocks = part.block_count();
    assert!(
        (0..blocks).all(|b| part.block(b).len() == part.block(0).len()),
        "blocks of unequal size cannot be exchanged"
    );
    for (mono, _) in p.iter_terms() {
        if part.block_degrees(mono).iter().any(|&deg| deg > 1) {
            return false;
        }
    }
    for b in 0..blocks.saturating_sub(1) {
        let swapped = p.map_monomials(|mono| {
            let mut e = mono.0.clone();
            for (va, vb) in part.block(b).iter().zip(part.block(b + 1)) {
                e.swap(*va, *vb);
            }
            Monomial(e)
        });
        if &swapped != p {
            return false;
        }
    }
    true
}

/// Checks that every coordinate of ψ lies in the span of the polarizations
/// {polarize(𝐞) : |𝐞| = d} — the certificate that rank methods may treat the
/// coordinates as a basis of polarized degree-d monomials.
pub fn validate_rank_method<K: Field>(psi: &PsiImage<K>) -> Result<bool> {
    let field = psi.coords[0].1.field().clone();
    let gens: Vec<Polynomial<K>> = monomials_of_degree(psi.n, psi.d)
        .into_iter()
        .map(|e| polarize(field.clone(), &e, psi.num_forms))
        .collect::<Result<_>>()?;
    // Vectorize over the union of y-monomials.
    let mut support: std::collections::BTreeSet<Monomial> = std::collections::BTreeSet::new();
    for p in gens.iter().chain(psi.coords.iter().map(|(_, p)| p)) {
        support.extend(p.iter_terms().map(|(m, _)| m.clone()));
    }
    let support: Vec<Monomial> = support.into_iter().collect();
    let vectorize = |p: &Polynomial<K>| -> Vec<K::Elem> {
        support.iter().map(|m| p.coeff(m)).collect()
    };
    let basis = ReducedBasis::from_vectors(field, support.len(), gens.iter().map(vectorize));
    Ok(psi.coords.iter().all(|(_, p)| basis.contains(&vectorize(p))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::util::binomial_u128;

    fn q(n: usize, s: &str) -> Polynomial<Rationals> {
        Polynomial::parse(Rationals, n, Basis::Standard, s).unwrap()
    }

    fn mono(exps: &[u16]) -> Monomial {
        Monomial(exps.to_vec())
    }

    #[test]
    fn sym_poly_of_one_form() {
        // n = 1, D = 2, d = 1: e₁ = (y₁₁ + y₂₁)x₁ over (y₁₁, y₂₁, x₁).
        let e1 = sym_poly(Rationals, 1, 2, 1);
        assert_eq!(e1, q(3, "x1*x3 + x2*x3"));
        // d = 2: e₂ = y₁₁y₂₁x₁².
        let e2 = sym_poly(Rationals, 1, 2, 2);
        assert_eq!(e2, q(3, "x1*x2*x3^2"));
    }

    #[test]
    fn psi_coordinates_of_two_forms_in_two_variables() {
        // Variables: y₁₁,y₁₂,y₂₁,y₂₂ = x1..x4.
        let psi = build_psi(Rationals, 2, 2, 2).unwrap();
        assert_eq!(psi.coords().len(), 3);
        let coord = |e: &[u16]| {
            let target = mono(e);
            &psi.coords().iter().find(|(m, _)| *m == target).unwrap().1
        };
        assert_eq!(*coord(&[2, 0]), q(4, "x1*x3"));
        assert_eq!(*coord(&[1, 1]), q(4, "x1*x4 + x2*x3"));
        assert_eq!(*coord(&[0, 2]), q(4, "x2*x4"));
    }

    #[test]
    fn polarize_square_and_product() {
        // polarize(x₁², D = 2) = 2·y₁₁y₂₁.
        let p = polarize(Rationals, &mono(&[2, 0]), 2).unwrap();
        assert_eq!(p, q(4, "2*x1*x3"));
        // polarize(x₁x₂, D = 2) = y₁₁y₂₂ + y₁₂y₂₁.
        let p = polarize(Rationals, &mono(&[1, 1]), 2).unwrap();
        assert_eq!(p, q(4, "x1*x4 + x2*x3"));
    }

    #[test]
    fn polarize_with_spare_blocks() {
        // D = 3 blocks, one factor: x₁ spreads over all three blocks.
        let p = polarize(Rationals, &mono(&[1]), 3).unwrap();
        assert_eq!(p, q(3, "x1 + x2 + x3"));
        // Fewer blocks than factors: zero.
        let p = polarize(Rationals, &mono(&[2, 1]), 2).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn polarizations_scale_the_psi_coordinates() {
        // ψ_𝐞 = polarize(𝐞)/𝐞! , checked for every coordinate.
        for (n, num_forms, d) in [(2, 2, 2), (2, 3, 2), (3, 3, 3)] {
            let psi = build_psi(Rationals, n, num_forms, d).unwrap();
            for (e, coord) in psi.coords() {
                let mut e_factorial = 1i64;
                for &ei in &e.0 {
                    for v in 1..=ei as i64 {
                        e_factorial *= v;
                    }
                }
                let pol = polarize(Rationals, e, num_forms).unwrap();
                assert_eq!(pol, coord.scale(&Rationals.from_i64(e_factorial)));
            }
        }
    }

    #[test]
    fn polarization_span_has_full_dimension() {
        for n in 1..=3usize {
            for d in 1..=3u32 {
                for num_forms in [d as usize, d as usize + 1] {
                    let gens: Vec<Polynomial<Rationals>> = monomials_of_degree(n, d)
                        .into_iter()
                        .map(|e| polarize(Rationals, &e, num_forms).unwrap())
                        .collect();
                    let mut support: std::collections::BTreeSet<Monomial> =
                        std::collections::BTreeSet::new();
                    for p in &gens {
                        support.extend(p.iter_terms().map(|(m, _)| m.clone()));
                    }
                    let support: Vec<Monomial> = support.into_iter().collect();
                    let basis = ReducedBasis::from_vectors(
                        Rationals,
                        support.len(),
                        gens.iter()
                            .map(|p| support.iter().map(|m| p.coeff(m)).collect::<Vec<_>>()),
                    );
                    let expected = binomial_u128(n as u64 + d as u64 - 1, n as u64 - 1).unwrap();
                    assert_eq!(basis.rank() as u128, expected, "n = {n}, d = {d}");
                }
            }
        }
    }

    #[test]
    fn psi_coordinates_are_symmetric_set_multilinear() {
        for (n, num_forms, d) in [(2, 2, 2), (2, 3, 2), (3, 3, 2), (2, 3, 3)] {
            let psi = build_psi(Rationals, n, num_forms, d).unwrap();
            for (_, coord) in psi.coords() {
                assert!(is_ssm(coord, psi.partition()));
            }
        }
    }

    #[test]
    fn psi_validates_against_the_polarization_span() {
        for (n, num_forms, d) in [(2, 2, 2), (2, 3, 2), (3, 3, 3)] {
            let psi = build_psi(Rationals, n, num_forms, d).unwrap();
            assert!(validate_rank_method(&psi).unwrap());
        }
    }

    #[test]
    fn ssm_rejects_asymmetry_and_block_squares() {
        let part = VariablePartition::uniform(2, 2);
        // y₁₁y₁₂: two variables from block 1.
        assert!(!is_ssm(&q(4, "x1*x2"), &part));
        // y₁₁y₂₁ is set-multilinear and block-symmetric.
        assert!(is_ssm(&q(4, "x1*x3"), &part));
        // y₁₁ alone is not block-symmetric.
        assert!(!is_ssm(&q(4, "x1"), &part));
        // y₁₁ + y₂₁ is.
        assert!(is_ssm(&q(4, "x1 + x3"), &part));
        // Degree-0 polynomials are trivially symmetric.
        assert!(is_ssm(&q(4, "5"), &part));
    }

    #[test]
    fn build_psi_needs_enough_forms() {
        assert!(matches!(build_psi(Rationals, 2, 1, 2), Err(Error::InvalidInput(_))));
        assert!(build_psi(Rationals, 2, 2, 2).is_ok());
    }
}
