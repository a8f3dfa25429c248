//! Flattening-style rank methods and their barrier bounds.
//!
//! A rank method sends an input (a polynomial of degree ≤ d or an order-d
//! tensor) through a linear map L into m×m matrices and reads off the matrix
//! rank; rank(L(f))/μ bounds the Waring or tensor rank of f from below, where
//! μ is the largest rank L takes on the rank-one inputs.  The module provides
//!
//! - [`LinearMap`]: L given by its images on the divided monomial basis
//!   (Waring family) or on the tensor unit basis (tensor family);
//! - classical instances: [`catalecticant`] matrices and tensor
//!   [`mode_flattening`]s;
//! - the *symbolic image* M(𝐲) of a map — a polynomial matrix whose
//!   evaluations sweep exactly the images of the rank-one inputs, e.g. for
//!   Waring maps M(a₀,𝐚) = L((a₀ + a₁x₁ + ⋯ + aₙxₙ)^d);
//! - [`barrier_bound`]: the cap rank(M) · (d+1 resp. 2^d) that no map of the
//!   family can beat, together with published lower bounds to compare against
//!   ([`reference_values`]).

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{PolyMatrix, ScalarMat};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::{Basis, Polynomial};
use crate::space::MatrixSpace;
use crate::util::binomial_u128;

/// Which rank-one inputs a map is measured against: powers of affine linear
/// forms, or decomposable tensors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Waring,
    Tensor,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::Waring => "waring",
            Family::Tensor => "tensor",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "waring" => Ok(Family::Waring),
            "tensor" => Ok(Family::Tensor),
            other => Err(Error::InvalidInput(format!("unknown family \"{other}\""))),
        }
    }
}

/// A sparse order-d tensor with modes of dimension n.  Indices are 0-based
/// vectors of length d with entries below n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor<K: Field> {
    field: K,
    n: usize,
    d: usize,
    entries: BTreeMap<Vec<u16>, K::Elem>,
}

impl<K: Field> Tensor<K> {
    pub fn zero(field: K, n: usize, d: usize) -> Self {
        assert!(n >= 1 && d >= 1, "tensor must have positive dimensions");
        assert!(n <= u16::MAX as usize, "mode dimension too large");
        Tensor { field, n, d, entries: BTreeMap::new() }
    }

    /// Builds a tensor from (index, coefficient) pairs; repeated indices
    /// accumulate.
    pub fn from_entries(
        field: K,
        n: usize,
        d: usize,
        entries: Vec<(Vec<u16>, K::Elem)>,
    ) -> Result<Self> {
        let mut t = Tensor::zero(field, n, d);
        for (idx, c) in entries {
            if idx.len() != d || idx.iter().any(|&i| i as usize >= n) {
                return Err(Error::InvalidInput(format!(
                    "tensor index {idx:?} out of range for n = {n}, d = {d}"
                )));
            }
            t.add_entry(idx, c);
        }
        Ok(t)
    }

    /// Adds c to the entry at `idx` in place.
    pub fn add_entry(&mut self, idx: Vec<u16>, c: K::Elem) {
        assert_eq!(idx.len(), self.d, "index length mismatch");
        assert!(idx.iter().all(|&i| (i as usize) < self.n), "index out of range");
        if self.field.is_zero(&c) {
            return;
        }
        match self.entries.entry(idx) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = self.field.add(e.get(), &c);
                if self.field.is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn get(&self, idx: &[u16]) -> K::Elem {
        self.entries.get(idx).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter_entries(&self) -> impl Iterator<Item = (&Vec<u16>, &K::Elem)> {
        self.entries.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.n, self.d), (other.n, other.d), "shape mismatch");
        let mut out = self.clone();
        for (idx, c) in &other.entries {
            out.add_entry(idx.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &K::Elem) -> Self {
        let mut out = Tensor::zero(self.field.clone(), self.n, self.d);
        for (idx, c) in &self.entries {
            out.add_entry(idx.clone(), self.field.mul(c, s));
        }
        out
    }

    /// The decomposable tensor v₁ ⊗ ⋯ ⊗ v_d.
    pub fn rank_one(field: K, factors: &[Vec<K::Elem>]) -> Self {
        assert!(!factors.is_empty(), "rank-one tensor needs at least one factor");
        let n = factors[0].len();
        assert!(factors.iter().all(|f| f.len() == n), "factors of different lengths");
        let d = factors.len();
        let mut t = Tensor::zero(field.clone(), n, d);
        let mut idx = vec![0u16; d];
        loop {
            let mut c = field.one();
            for (j, f) in factors.iter().enumerate() {
                c = field.mul(&c, &f[idx[j] as usize]);
            }
            t.add_entry(idx.clone(), c);
            let mut axis = 0;
            loop {
                if axis == d {
                    return t;
                }
                idx[axis] += 1;
                if (idx[axis] as usize) < n {
                    break;
                }
                idx[axis] = 0;
                axis += 1;
            }
        }
    }

    /// A dense tensor with integer entries uniform in [-bound, bound].
    pub fn random_dense<R: Rng>(field: K, n: usize, d: usize, bound: i64, rng: &mut R) -> Self {
        let size = (n as u128).checked_pow(d as u32).expect("tensor too large");
        assert!(size <= 1 << 22, "tensor too large to fill densely");
        let mut t = Tensor::zero(field.clone(), n, d);
        let mut idx = vec![0u16; d];
        for _ in 0..size {
            t.add_entry(idx.clone(), field.from_i64(rng.gen_range(-bound..=bound)));
            let mut axis = 0;
            while axis < d {
                idx[axis] += 1;
                if (idx[axis] as usize) < n {
                    break;
                }
                idx[axis] = 0;
                axis += 1;
            }
        }
        t
    }
}

/// An input a rank method can be applied to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapInput<K: Field> {
    Poly(Polynomial<K>),
    Tensor(Tensor<K>),
}

/// A linear map into m×m matrices, given by its images on a basis of the
/// domain.
///
/// - `Waring` family: the domain is polynomials of degree ≤ d in n variables;
///   `images[𝐞]` is L(𝐱^𝐞) for the divided-power monomial 𝐱^𝐞, |𝐞| ≤ d.
/// - `Tensor` family: the domain is order-d tensors with modes of dimension
///   n; `images[idx]` is the image of the unit tensor at `idx`.
///
/// Basis elements without a listed image map to zero.
#[derive(Clone, Debug)]
pub struct LinearMap<K: Field> {
    field: K,
    family: Family,
    n: usize,
    d: u32,
    m: usize,
    images: BTreeMap<Vec<u16>, ScalarMat<K>>,
    image_cache: OnceLock<PolyMatrix<K>>,
    space_cache: OnceLock<MatrixSpace<K>>,
}

impl<K: Field> PartialEq for LinearMap<K> {
    fn eq(&self, other: &Self) -> bool {
        (self.family, self.n, self.d, self.m) == (other.family, other.n, other.d, other.m)
            && self.field == other.field
            && self.images == other.images
    }
}
impl<K: Field> Eq for LinearMap<K> {}

impl<K: Field> LinearMap<K> {
    /// Builds a map from basis images, validating key shapes and matrix
    /// dimensions.  Zero matrices are dropped; duplicate keys are an error.
    pub fn new(
        field: K,
        family: Family,
        n: usize,
        d: u32,
        m: usize,
        images: Vec<(Vec<u16>, ScalarMat<K>)>,
    ) -> Result<Self> {
        if n < 1 || d < 1 || m < 1 {
            return Err(Error::InvalidInput("map dimensions must be positive".into()));
        }
        let mut map = BTreeMap::new();
        for (key, mat) in images {
            let ok = match family {
                Family::Waring => {
                    key.len() == n && key.iter().map(|&e| e as u32).sum::<u32>() <= d
                }
                Family::Tensor => key.len() == d as usize && key.iter().all(|&i| (i as usize) < n),
            };
            if !ok {
                return Err(Error::InvalidInput(format!(
                    "basis key {key:?} does not fit a {family} map with n = {n}, d = {d}"
                )));
            }
            if mat.rows() != m || mat.cols() != m {
                return Err(Error::InvalidInput(format!(
                    "image for {key:?} is {}×{}, expected {m}×{m}",
                    mat.rows(),
                    mat.cols()
                )));
            }
            if mat.is_zero() {
                continue;
            }
            if map.insert(key.clone(), mat).is_some() {
                return Err(Error::InvalidInput(format!("duplicate basis key {key:?}")));
            }
        }
        Ok(LinearMap {
            field,
            family,
            n,
            d,
            m,
            images: map,
            image_cache: OnceLock::new(),
            space_cache: OnceLock::new(),
        })
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn images(&self) -> impl Iterator<Item = (&Vec<u16>, &ScalarMat<K>)> {
        self.images.iter()
    }

    /// Dimension of the domain: C(n+d, n) polynomials resp. n^d tensors.
    pub fn domain_dimension(&self) -> Option<u128> {
        match self.family {
            Family::Waring => (self.n as u64)
                .checked_add(self.d as u64)
                .and_then(|top| binomial_u128(top, self.n as u64)),
            Family::Tensor => (self.n as u128).checked_pow(self.d),
        }
    }

    /// Applies the map to a polynomial of degree ≤ d in n variables.
    pub fn apply_poly(&self, f: &Polynomial<K>) -> Result<ScalarMat<K>> {
        if self.family != Family::Waring {
            return Err(Error::InvalidInput(
                "polynomial input needs a waring-family map".into(),
            ));
        }
        if f.num_vars() != self.n {
            return Err(Error::InvalidInput(format!(
                "input has {} variables, map expects {}",
                f.num_vars(),
                self.n
            )));
        }
        if f.degree().unwrap_or(0) > self.d {
            return Err(Error::InvalidInput(format!(
                "input degree {} exceeds map degree {}",
                f.degree().unwrap(),
                self.d
            )));
        }
        let fd = f.convert(Basis::Divided);
        let mut out = ScalarMat::zeros(self.field.clone(), self.m, self.m);
        for (mono, c) in fd.iter_terms() {
            if let Some(mat) = self.images.get(&mono.0) {
                out = out.add(&mat.scale(c));
            }
        }
        Ok(out)
    }

    /// Applies the map to an order-d tensor with modes of dimension n.
    pub fn apply_tensor(&self, t: &Tensor<K>) -> Result<ScalarMat<K>> {
        if self.family != Family::Tensor {
            return Err(Error::InvalidInput("tensor input needs a tensor-family map".into()));
        }
        if t.n() != self.n || t.d() != self.d as usize {
            return Err(Error::InvalidInput(format!(
                "input is an order-{} tensor of dimension {}, map expects order {} of dimension {}",
                t.d(),
                t.n(),
                self.d,
                self.n
            )));
        }
        let mut out = ScalarMat::zeros(self.field.clone(), self.m, self.m);
        for (idx, c) in t.iter_entries() {
            if let Some(mat) = self.images.get(idx) {
                out = out.add(&mat.scale(c));
            }
        }
        Ok(out)
    }

    pub fn apply(&self, input: &MapInput<K>) -> Result<ScalarMat<K>> {
        match input {
            MapInput::Poly(f) => self.apply_poly(f),
            MapInput::Tensor(t) => self.apply_tensor(t),
        }
    }

    /// The symbolic image M of the map: a polynomial matrix whose evaluations
    /// are exactly the images of the rank-one inputs.
    ///
    /// Waring family, over variables (y₀, y₁, …, yₙ):
    ///
    ///     M(y₀,𝐲) = Σ_{|𝐞|≤d} (d!/e₀!) · y₀^{e₀} 𝐲^𝐞 · L(𝐱^𝐞),  e₀ = d − |𝐞|,
    ///
    /// so that M(a₀,𝐚) = L((a₀ + a₁x₁ + ⋯ + aₙxₙ)^d): expanding the power in
    /// the divided basis, 𝐱^𝐞 carries coefficient (d!/e₀!)·a₀^{e₀}𝐚^𝐞.
    ///
    /// Tensor family, over d blocks of n variables x_{j,i} (flattened as
    /// variable j·n + i):
    ///
    ///     M(𝐱) = Σ_idx x_{1,idx₁}⋯x_{d,idx_d} · L(e_idx),
    ///
    /// so that M(v₁ ⊕ ⋯ ⊕ v_d) = L(v₁ ⊗ ⋯ ⊗ v_d).  Entries are homogeneous
    /// of degree d in both cases, and set-multilinear in the tensor case.
    pub fn symbolic_image(&self) -> &PolyMatrix<K> {
        self.image_cache.get_or_init(|| {
            let num_vars = match self.family {
                Family::Waring => self.n + 1,
                Family::Tensor => self.n * self.d as usize,
            };
            let mut out = PolyMatrix::zero(
                self.field.clone(),
                self.m,
                self.m,
                num_vars,
                Basis::Standard,
            );
            for (key, mat) in &self.images {
                let (mono, factor) = match self.family {
                    Family::Waring => {
                        let e0 = self.d - key.iter().map(|&e| e as u32).sum::<u32>();
                        let mut exps = vec![0u16; num_vars];
                        exps[0] = e0 as u16;
                        exps[1..].copy_from_slice(key);
                        // d!/e₀! = (e₀+1)(e₀+2)⋯d.
                        let mut factor = self.field.one();
                        for v in e0 + 1..=self.d {
                            factor = self.field.mul(&factor, &self.field.from_i64(v as i64));
                        }
                        (Monomial(exps), factor)
                    }
                    Family::Tensor => {
                        let mut exps = vec![0u16; num_vars];
                        for (j, &i) in key.iter().enumerate() {
                            exps[j * self.n + i as usize] = 1;
                        }
                        (Monomial(exps), self.field.one())
                    }
                };
                for i in 0..self.m {
                    for j in 0..self.m {
                        let c = self.field.mul(mat.get(i, j), &factor);
                        if !self.field.is_zero(&c) {
                            let mut e = out.entry(i, j).clone();
                            e.add_term(mono.clone(), c);
                            out.set(i, j, e);
                        }
                    }
                }
            }
            out
        })
    }

    /// The coefficient space 𝒞 of the symbolic image: the span of its
    /// divided-basis coefficient matrices.  Every image of the map lies in 𝒞,
    /// and its generic rank bounds every rank the map can produce.
    pub fn coefficient_space(&self) -> &MatrixSpace<K> {
        self.space_cache.get_or_init(|| MatrixSpace::coefficient_space(self.symbolic_image()))
    }
}

/// The degree-k catalecticant of a homogeneous polynomial f of degree d: the
/// matrix of the map g ↦ contraction of f by g from degree-k to degree-(d−k)
/// forms.  On divided-power coefficients, entry (𝐚, 𝐛) is the coefficient of
/// 𝐱^{𝐚+𝐛} in f; rows and columns are ordered lexicographically.
pub fn catalecticant<K: Field>(f: &Polynomial<K>, k: u32) -> Result<ScalarMat<K>> {
    let d = match f.degree() {
        Some(d) => d,
        None => return Err(Error::InvalidInput("zero polynomial has no degree".into())),
    };
    if !f.is_homogeneous() {
        return Err(Error::InvalidInput("catalecticant input must be homogeneous".into()));
    }
    if k > d {
        return Err(Error::InvalidInput(format!(
            "catalecticant order {k} exceeds the degree {d}"
        )));
    }
    let fd = f.convert(Basis::Divided);
    let n = f.num_vars();
    let rows = monomials_of_degree(n, k);
    let cols = monomials_of_degree(n, d - k);
    let mut out = ScalarMat::zeros(f.field().clone(), rows.len(), cols.len());
    for (i, a) in rows.iter().enumerate() {
        for (j, b) in cols.iter().enumerate() {
            out.set(i, j, fd.coeff(&a.mul(b)));
        }
    }
    Ok(out)
}

/// The catalecticant as a Waring-family [`LinearMap`]: rectangular
/// catalecticants are padded with zero rows or columns to the smallest
/// enclosing square.
pub fn catalecticant_map<K: Field>(field: K, n: usize, d: u32, k: u32) -> Result<LinearMap<K>> {
    if n < 1 || d < 1 {
        return Err(Error::InvalidInput("map dimensions must be positive".into()));
    }
    if k > d {
        return Err(Error::InvalidInput(format!(
            "catalecticant order {k} exceeds the degree {d}"
        )));
    }
    let rows = monomials_of_degree(n, k);
    let cols = monomials_of_degree(n, d - k);
    let m = rows.len().max(cols.len());
    // The image of 𝐱^𝐞 has a 1 at every cell (𝐚, 𝐛) with 𝐚 + 𝐛 = 𝐞.
    let mut images: BTreeMap<Vec<u16>, ScalarMat<K>> = BTreeMap::new();
    for (i, a) in rows.iter().enumerate() {
        for (j, b) in cols.iter().enumerate() {
            images
                .entry(a.mul(b).0)
                .or_insert_with(|| ScalarMat::zeros(field.clone(), m, m))
                .set(i, j, field.one());
        }
    }
    LinearMap::new(field, Family::Waring, n, d, m, images.into_iter().collect())
}

/// Flattens an order-d tensor into the matrix whose rows are indexed by the
/// modes in `modes` (0-based, strictly increasing) and whose columns are
/// indexed by the remaining modes.  Mixed-radix order, first listed mode most
/// significant.
pub fn mode_flattening<K: Field>(t: &Tensor<K>, modes: &[usize]) -> Result<ScalarMat<K>> {
    let d = t.d();
    if modes.windows(2).any(|w| w[0] >= w[1]) || modes.iter().any(|&m| m >= d) {
        return Err(Error::InvalidInput(format!(
            "mode subset {modes:?} is not a strictly increasing subset of 0..{d}"
        )));
    }
    let rest: Vec<usize> = (0..d).filter(|m| !modes.contains(m)).collect();
    let n = t.n() as u128;
    let size = n.checked_pow(d as u32).filter(|&s| s <= 1 << 24);
    if size.is_none() {
        return Err(Error::Refused(format!(
            "flattening a dimension-{} order-{} tensor would materialize too many entries",
            t.n(),
            d
        )));
    }
    let rank_of = |sel: &[usize], idx: &[u16]| -> usize {
        sel.iter().fold(0usize, |acc, &m| acc * t.n() + idx[m] as usize)
    };
    let rows = t.n().pow(modes.len() as u32);
    let cols = t.n().pow(rest.len() as u32);
    let mut out = ScalarMat::zeros(t.field().clone(), rows.max(1), cols.max(1));
    for (idx, c) in t.iter_entries() {
        out.set(rank_of(modes, idx), rank_of(&rest, idx), c.clone());
    }
    Ok(out)
}

/// The barrier: no map of the given family can certify a lower bound above
/// rank(M) · (d+1) for Waring maps, resp. rank(M) · 2^d for tensor maps,
/// where M is its symbolic image.  This returns the factor that multiplies
/// each unit of symbolic rank, with rank(M) replaced by its universal cap —
/// the generic rank of the space of catalecticant blocks:
///
/// - Waring:  (d+1) · C(n + ⌊d/2⌋, n)
/// - Tensor:  2^d · n^{⌊d/2⌋}
pub fn barrier_bound(family: Family, n: usize, d: u32) -> Result<u128> {
    if n < 1 || d < 1 {
        return Err(Error::InvalidInput("dimensions must be positive".into()));
    }
    let half = (d / 2) as u64;
    let value = match family {
        Family::Waring => (n as u64)
            .checked_add(half)
            .and_then(|top| binomial_u128(top, n as u64))
            .and_then(|b| b.checked_mul(d as u128 + 1)),
        Family::Tensor => (n as u128)
            .checked_pow(d / 2)
            .and_then(|p| p.checked_mul(1u128.checked_shl(d)?)),
    };
    value.ok_or_else(|| {
        Error::Refused(format!("barrier bound for n = {n}, d = {d} exceeds 128 bits"))
    })
}

/// Published lower bounds on Waring/border rank to compare barrier caps
/// against.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReferenceValues {
    /// ⌈C(n+d−1, n−1)/n⌉ — the generic-rank count of Alexander–Hirschowitz.
    pub ah95: u128,
    /// C(n+⌊d/2⌋−1, ⌊d/2⌋) — explicit lower bound, binomial in ⌊d/2⌋.
    pub gl17_choose_half: u128,
    /// C(n+⌊d/2⌋−1, n) — companion form of the same bound, binomial in n.
    pub gl17_choose_n: u128,
    /// 2n^{⌊d/2⌋} + n − d·log₂n — shifted-partials bound (base-2 logarithm).
    pub aft11: f64,
}

pub fn reference_values(n: usize, d: u32) -> Result<ReferenceValues> {
    if n < 1 || d < 1 {
        return Err(Error::InvalidInput("dimensions must be positive".into()));
    }
    let half = (d / 2) as u64;
    let nn = n as u64;
    let overflow =
        || Error::Refused(format!("reference values for n = {n}, d = {d} exceed 128 bits"));
    let ah_num = nn
        .checked_add(d as u64 - 1)
        .and_then(|top| binomial_u128(top, nn - 1))
        .ok_or_else(overflow)?;
    let ah95 = ah_num.div_ceil(n as u128);
    let gl17_choose_half = nn
        .checked_add(half)
        .and_then(|top| binomial_u128(top - 1, half))
        .ok_or_else(overflow)?;
    let gl17_choose_n = nn
        .checked_add(half)
        .and_then(|top| binomial_u128(top - 1, nn))
        .ok_or_else(overflow)?;
    let aft11 = 2.0 * (n as f64).powi((d / 2) as i32) + n as f64 - d as f64 * (n as f64).log2();
    Ok(ReferenceValues { ah95, gl17_choose_half, gl17_choose_n, aft11 })
}

/// A certified lower bound: rank(L(input)) / μ, guaranteed not to exceed the
/// family barrier.
#[derive(Clone, Debug, PartialEq)]
pub struct LowerBound {
    /// rank L(input).
    pub rank: usize,
    /// μ: the largest rank L takes on rank-one inputs, as claimed by the
    /// caller.
    pub mu_s: u64,
    /// rank/μ — a lower bound on the Waring resp. tensor rank of the input.
    pub bound: BigRational,
    /// The family barrier for these dimensions; always ≥ `bound`.
    pub barrier: u128,
}

/// Evaluates the rank-method lower bound rank(L(input))/μ.
///
/// `mu_s` is the caller's value for μ = max rank over rank-one inputs; it
/// must be positive, and a claim that would push the bound above the family
/// barrier is rejected as inconsistent (μ is provably never that small).
pub fn lower_bound<K: Field>(
    map: &LinearMap<K>,
    input: &MapInput<K>,
    mu_s: u64,
) -> Result<LowerBound> {
    if mu_s == 0 {
        return Err(Error::InvalidInput("μ must be positive".into()));
    }
    let rank = map.apply(input)?.rank();
    let bound = BigRational::new(BigInt::from(rank), BigInt::from(mu_s));
    let barrier = barrier_bound(map.family(), map.n(), map.d())?;
    if bound > BigRational::from(BigInt::from(barrier)) {
        return Err(Error::InvalidInput(format!(
            "claimed μ = {mu_s} would certify {rank}/{mu_s}, above the {} barrier {barrier} — \
             no rank method attains this",
            map.family()
        )));
    }
    Ok(LowerBound { rank, mu_s, bound, barrier })
}
