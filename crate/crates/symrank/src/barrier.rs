//! Randomized corroboration of rank-method barriers.
//!
//! For a map L with symbolic image M, no input can produce a rank above
//! rank(M)·(d+1) (Waring family) resp. rank(M)·2^d (tensor family): shifting
//! and truncating a rank factorization of M decomposes it into that many
//! homogeneous resp. set-multilinear outer products, each of which caps the
//! rank of every evaluation.  The harness samples random maps, estimates
//! rank(M) by random evaluation, then feeds the map many random inputs and
//! checks that every observed rank stays under the cap and that every image
//! lies in the coefficient space of M.  All sampling is seeded; a report is
//! a deterministic function of (map, trials, seed).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::flatten::{barrier_bound, reference_values, Family, LinearMap, Tensor};
use crate::matrix::ScalarMat;
use crate::monomial::monomials_up_to_degree;
use crate::sample;
use crate::util::{parallel_map, sequential_map};

/// Salt applied to the caller's seed before rank estimation, so the
/// evaluation points used to estimate rank(M) are independent of the points
/// used to generate trial inputs.
const ESTIMATE_SEED_SALT: u64 = 0x9E37_79B9_7F4A_7C15;

/// Draws a map of the given family with each matrix cell filled with a
/// nonzero value from ±{1,…,10} independently with probability `density`.
/// The basis is walked in lexicographic (degree-graded, for Waring) order and
/// cells row-major, so the map is a deterministic function of the arguments.
pub fn random_linear_map<K: Field>(
    field: K,
    family: Family,
    n: usize,
    d: u32,
    m: usize,
    density: f64,
    seed: u64,
) -> Result<LinearMap<K>> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidInput(format!("density {density} is not in [0, 1]")));
    }
    let keys: Vec<Vec<u16>> = match family {
        Family::Waring => {
            monomials_up_to_degree(n, d).into_iter().map(|mono| mono.0).collect()
        }
        Family::Tensor => {
            let count = (n as u128)
                .checked_pow(d)
                .filter(|&c| c <= 1 << 20)
                .ok_or_else(|| {
                    Error::Refused(format!(
                        "a tensor map with n = {n}, d = {d} has too many basis elements"
                    ))
                })?;
            let mut keys = Vec::with_capacity(count as usize);
            let mut idx = vec![0u16; d as usize];
            for _ in 0..count {
                keys.push(idx.clone());
                let mut axis = d as usize;
                while axis > 0 {
                    axis -= 1;
                    idx[axis] += 1;
                    if (idx[axis] as usize) < n {
                        break;
                    }
                    idx[axis] = 0;
                }
            }
            keys
        }
    };
    if keys.len() > 1 << 20 {
        return Err(Error::Refused(format!(
            "a {family} map with n = {n}, d = {d} has {} basis elements",
            keys.len()
        )));
    }

    use rand::Rng;
    let mut rng = sample::rng_from(seed, 0);
    let mut images = Vec::new();
    for key in keys {
        let mut mat = ScalarMat::zeros(field.clone(), m, m);
        for i in 0..m {
            for j in 0..m {
                if rng.gen::<f64>() < density {
                    mat.set(i, j, field.from_i64(sample::nonzero_coeff(10, &mut rng)));
                }
            }
        }
        if !mat.is_zero() {
            images.push((key, mat));
        }
    }
    LinearMap::new(field, family, n, d, m, images)
}

/// Estimates rank(M) for the symbolic image M of a map by evaluating it at
/// `trials` random points.  Never exceeds the true rank; equals it except
/// with probability ≤ 1% per trial.
pub fn estimate_image_rank<K: Field>(
    map: &LinearMap<K>,
    trials: u32,
    seed: u64,
) -> Result<usize> {
    let img = map.symbolic_image();
    img.randomized_symbolic_rank(img.default_sample_range(), trials, seed)
}

/// Outcome of a barrier check: per-trial ranks against the cap
/// rank(M)·(d+1)·C(n+⌊d/2⌋, n) resp. rank(M)·2^d·n^{⌊d/2⌋}, plus
/// coefficient-space membership of every image.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BarrierReport {
    pub family: String,
    pub n: usize,
    pub d: u32,
    pub m: usize,
    pub trials: u32,
    pub seed: u64,
    /// Randomized estimate of rank(M); a lower bound on the true rank.
    pub estimated_image_rank: usize,
    /// The best lower bound the map can certify per unit of image rank:
    /// (d+1)·C(n+⌊d/2⌋, n) for Waring maps, 2^d·n^{⌊d/2⌋} for tensor maps
    /// — 8n for order-3 tensors.
    pub per_unit_barrier: u128,
    /// estimated_image_rank · per_unit_barrier: no trial may beat this.
    pub rank_cap: u128,
    pub trial_ranks: Vec<usize>,
    pub max_trial_rank: usize,
    /// Trials whose image fell outside the coefficient space of M (expected
    /// to be impossible).
    pub membership_failures: u32,
    /// Trials whose rank exceeded `rank_cap` (expected to be impossible).
    pub violations: u32,
    pub pass: bool,
}

fn verify_with<K: Field>(
    map: &LinearMap<K>,
    trials: u32,
    seed: u64,
    parallel: bool,
) -> Result<BarrierReport> {
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1".into()));
    }
    let family = map.family();
    let (n, d, m) = (map.n(), map.d(), map.m());
    let per_unit = barrier_bound(family, n, d)?;
    let estimated_image_rank =
        estimate_image_rank(map, 3, seed.wrapping_add(ESTIMATE_SEED_SALT))?;
    let rank_cap = per_unit
        .checked_mul(estimated_image_rank as u128)
        .ok_or_else(|| Error::Refused("the rank cap does not fit 128 bits".into()))?;
    // Force the one-time caches before the trial loop shares the map.
    let space = map.coefficient_space();

    let field = map.field().clone();
    let trial = move |t: u32| -> (usize, bool) {
        let mut rng = sample::rng_from(seed, t as u64);
        let image = match family {
            Family::Waring => {
                let f = sample::random_dense_up_to(&field, n, d, &mut rng);
                map.apply_poly(&f).expect("sampled polynomial fits the map")
            }
            Family::Tensor => {
                let t = Tensor::random_dense(field.clone(), n, d as usize, 10, &mut rng);
                map.apply_tensor(&t).expect("sampled tensor fits the map")
            }
        };
        (image.rank(), space.contains(&image))
    };

    let results: Vec<(usize, bool)> = if parallel {
        parallel_map((0..trials).collect(), &trial)
    } else {
        sequential_map((0..trials).collect(), &trial)
    };
    let trial_ranks: Vec<usize> = results.iter().map(|&(r, _)| r).collect();
    let max_trial_rank = trial_ranks.iter().copied().max().unwrap_or(0);
    let membership_failures = results.iter().filter(|&&(_, ok)| !ok).count() as u32;
    let violations = trial_ranks.iter().filter(|&&r| r as u128 > rank_cap).count() as u32;
    Ok(BarrierReport {
        family: family.to_string(),
        n,
        d,
        m,
        trials,
        seed,
        estimated_image_rank,
        per_unit_barrier: per_unit,
        rank_cap,
        trial_ranks,
        max_trial_rank,
        membership_failures,
        violations,
        pass: membership_failures == 0 && violations == 0,
    })
}

/// Runs `trials` random inputs through the map and checks every rank against
/// the barrier cap and every image for coefficient-space membership.  Trials
/// run in parallel when the `parallel` feature is on; the report is identical
/// either way.
pub fn verify_barrier<K: Field>(
    map: &LinearMap<K>,
    trials: u32,
    seed: u64,
) -> Result<BarrierReport> {
    verify_with(map, trials, seed, true)
}

/// Single-threaded [`verify_barrier`], available regardless of features.
pub fn verify_barrier_sequential<K: Field>(
    map: &LinearMap<K>,
    trials: u32,
    seed: u64,
) -> Result<BarrierReport> {
    verify_with(map, trials, seed, false)
}

/// One dimension's barrier next to published lower bounds.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapRow {
    pub n: usize,
    pub d: u32,
    /// The family barrier: the best lower bound any rank method can certify.
    pub barrier: u128,
    /// ⌈C(n+d−1, n−1)/n⌉, the generic Waring rank.
    pub ah95: u128,
    pub gl17_choose_half: u128,
    pub gl17_choose_n: u128,
    pub aft11: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapReport {
    pub family: String,
    pub rows: Vec<GapRow>,
}

/// Tabulates the family barrier against published lower bounds over a list
/// of (n, d) dimensions.
pub fn gap_report(family: Family, cases: &[(usize, u32)]) -> Result<GapReport> {
    let mut rows = Vec::with_capacity(cases.len());
    for &(n, d) in cases {
        let refs = reference_values(n, d)?;
        rows.push(GapRow {
            n,
            d,
            barrier: barrier_bound(family, n, d)?,
            ah95: refs.ah95,
            gl17_choose_half: refs.gl17_choose_half,
            gl17_choose_n: refs.gl17_choose_n,
            aft11: refs.aft11,
        });
    }
    Ok(GapReport { family: family.to_string(), rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn map_generation_is_deterministic() {
        let a = random_linear_map(Rationals, Family::Waring, 2, 2, 3, 0.7, 11).unwrap();
        let b = random_linear_map(Rationals, Family::Waring, 2, 2, 3, 0.7, 11).unwrap();
        assert_eq!(a, b);
        let c = random_linear_map(Rationals, Family::Waring, 2, 2, 3, 0.7, 12).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn density_extremes() {
        let zero = random_linear_map(Rationals, Family::Tensor, 2, 2, 2, 0.0, 5).unwrap();
        assert_eq!(zero.images().count(), 0);
        let full = random_linear_map(Rationals, Family::Tensor, 2, 2, 2, 1.0, 5).unwrap();
        assert_eq!(full.images().count(), 4);
        assert!(random_linear_map(Rationals, Family::Waring, 2, 2, 2, 1.5, 5).is_err());
    }

    #[test]
    fn estimated_rank_matches_exact_on_small_maps() {
        for seed in [3, 4, 5] {
            let map = random_linear_map(Rationals, Family::Waring, 2, 2, 3, 0.6, seed).unwrap();
            let est = estimate_image_rank(&map, 3, 17).unwrap();
            assert_eq!(est, map.symbolic_image().exact_symbolic_rank());
        }
    }

    #[test]
    fn random_maps_respect_the_barrier() {
        for (family, n, d) in [(Family::Waring, 2, 2), (Family::Waring, 2, 3), (Family::Tensor, 2, 2)]
        {
            let map = random_linear_map(Rationals, family, n, d, 4, 0.5, 23).unwrap();
            let report = verify_barrier(&map, 8, 41).unwrap();
            assert!(report.pass, "{report:?}");
            assert_eq!(report.trial_ranks.len(), 8);
            assert_eq!(report.violations, 0);
            assert_eq!(report.membership_failures, 0);
            assert!(report.max_trial_rank as u128 <= report.rank_cap);
            assert_eq!(report.per_unit_barrier, barrier_bound(family, n, d).unwrap());
            assert!(report.rank_cap <= report.per_unit_barrier * report.m as u128);
        }
    }

    #[test]
    fn parallel_and_sequential_reports_agree() {
        let map = random_linear_map(Rationals, Family::Waring, 2, 3, 3, 0.6, 7).unwrap();
        let a = verify_barrier(&map, 6, 99).unwrap();
        let b = verify_barrier_sequential(&map, 6, 99).unwrap();
        assert_eq!(a, b);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn reports_are_reproducible() {
        let map = random_linear_map(Rationals, Family::Tensor, 2, 2, 3, 0.5, 13).unwrap();
        let a = verify_barrier(&map, 5, 1).unwrap();
        let b = verify_barrier(&map, 5, 1).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        let c = verify_barrier(&map, 5, 2).unwrap();
        assert_eq!((c.violations, c.membership_failures), (0, 0));
    }

    #[test]
    fn zero_map_reports_rank_zero() {
        let map = random_linear_map(Rationals, Family::Waring, 2, 2, 2, 0.0, 3).unwrap();
        let report = verify_barrier(&map, 3, 3).unwrap();
        assert_eq!(report.estimated_image_rank, 0);
        assert_eq!(report.rank_cap, 0);
        assert_eq!(report.max_trial_rank, 0);
        assert!(report.pass);
    }

    #[test]
    fn gap_report_collects_reference_values() {
        let g = gap_report(Family::Waring, &[(3, 3), (4, 2)]).unwrap();
        assert_eq!(g.family, "waring");
        assert_eq!(g.rows[0].barrier, 16);
        assert_eq!(g.rows[0].ah95, 4);
        assert_eq!(g.rows[1].aft11, 8.0);
        let t = gap_report(Family::Tensor, &[(5, 3)]).unwrap();
        assert_eq!(t.rows[0].barrier, 40);
    }

    #[test]
    fn rejects_zero_trials() {
        let map = random_linear_map(Rationals, Family::Waring, 2, 2, 2, 0.5, 3).unwrap();
        assert!(verify_barrier(&map, 0, 3).is_err());
    }
}
