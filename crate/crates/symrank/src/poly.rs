//! Sparse multivariate polynomials over a [`Field`].
//!
//! A polynomial carries a basis tag. In the `Standard` basis a term (𝐚, c)
//! means c·∏xᵢ^{aᵢ}. In the `Divided` basis it means c·𝐱^𝐚 where
//! 𝐱^𝐚 = ∏xᵢ^{aᵢ}/𝐚! and 𝐚! = ∏aᵢ!. The divided basis makes the apolarity
//! pairing integral: ∂_𝐚 𝐱^{𝐚+𝐛} = 𝐱^𝐛 with no spilled factorials, where
//! ∂_𝐚 is the iterated partial derivative ∂^{a₁}…∂^{aₙ}.
//!
//! Terms live in a `BTreeMap` keyed by graded-lex [`Monomial`], so iteration
//! order, serialization, and leading terms are deterministic. Zero
//! coefficients are never stored; the zero polynomial has no terms and its
//! degree is `None`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{binomial_elem, factorial, Field};
use crate::monomial::{Monomial, VariablePartition};

/// Which basis the coefficients of a [`Polynomial`] refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Standard,
    Divided,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial<K: Field> {
    field: K,
    num_vars: usize,
    basis: Basis,
    terms: BTreeMap<Monomial, K::Elem>,
}

impl<K: Field> Polynomial<K> {
    pub fn zero(field: K, num_vars: usize, basis: Basis) -> Self {
        Polynomial { field, num_vars, basis, terms: BTreeMap::new() }
    }

    pub fn constant(field: K, num_vars: usize, basis: Basis, c: K::Elem) -> Self {
        let mut p = Self::zero(field, num_vars, basis);
        p.add_term(Monomial::one(num_vars), c);
        p
    }

    pub fn one(field: K, num_vars: usize, basis: Basis) -> Self {
        let c = field.one();
        Self::constant(field, num_vars, basis, c)
    }

    /// The variable xᵢ. Its representation is the same in both bases.
    pub fn variable(field: K, num_vars: usize, i: usize, basis: Basis) -> Self {
        let c = field.one();
        let mut p = Self::zero(field, num_vars, basis);
        p.add_term(Monomial::var(num_vars, i), c);
        p
    }

    /// Collects terms, merging duplicates and dropping zeros.
    pub fn from_terms<I>(field: K, num_vars: usize, basis: Basis, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, K::Elem)>,
    {
        let mut p = Self::zero(field, num_vars, basis);
        for (m, c) in terms {
            assert_eq!(m.num_vars(), num_vars, "variable count mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|t| t == d),
        }
    }

    pub fn coeff(&self, m: &Monomial) -> K::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = (&Monomial, &K::Elem)> {
        self.terms.iter()
    }

    /// Leading term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &K::Elem)> {
        self.terms.last_key_value()
    }

    /// Adds c·(monomial) in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: K::Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        assert_eq!(m.num_vars(), self.num_vars, "variable count mismatch");
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = self.field.add(e.get(), &c);
                if self.field.is_zero(&s) {
                    e.remove();
                } else {
                    e.insert(s);
                }
            }
        }
    }

    fn assert_compatible(&self, other: &Self) {
        assert_eq!(self.num_vars, other.num_vars, "variable count mismatch");
        assert_eq!(self.basis, other.basis, "basis mismatch");
        assert_eq!(self.field, other.field, "field mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.neg(c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &K::Elem) -> Self {
        if self.field.is_zero(s) {
            return Self::zero(self.field.clone(), self.num_vars, self.basis);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.mul(c, s);
        }
        out
    }

    /// Product in the shared basis. In the divided basis,
    /// 𝐱^𝐚·𝐱^𝐛 = C(𝐚+𝐛, 𝐚)·𝐱^{𝐚+𝐛} with C taken componentwise.
    pub fn mul(&self, other: &Self) -> Self {
        self.mul_bounded(other, None)
    }

    /// Product with all terms of total degree > `max_deg` dropped. Sound for
    /// any computation that only consumes components of degree ≤ `max_deg`.
    pub fn mul_trunc(&self, other: &Self, max_deg: u32) -> Self {
        self.mul_bounded(other, Some(max_deg))
    }

    fn mul_bounded(&self, other: &Self, max_deg: Option<u32>) -> Self {
        self.assert_compatible(other);
        let mut out = Self::zero(self.field.clone(), self.num_vars, self.basis);
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            for (mb, cb) in &other.terms {
                if let Some(bound) = max_deg {
                    // Terms iterate in ascending degree; later mb only grow.
                    if da + mb.degree() > bound {
                        break;
                    }
                }
                let mut c = self.field.mul(ca, cb);
                if self.basis == Basis::Divided {
                    for (&ea, &eb) in ma.0.iter().zip(&mb.0) {
                        if ea > 0 && eb > 0 {
                            let b = binomial_elem(&self.field, ea as u64 + eb as u64, ea as u64);
                            c = self.field.mul(&c, &b);
                        }
                    }
                }
                out.add_term(ma.mul(mb), c);
            }
        }
        out
    }

    /// Sum of the terms of total degree exactly `t`.
    pub fn homogeneous_component(&self, t: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() == t)
            .map(|(m, c)| (m.clone(), c.clone()));
        Self::from_terms(self.field.clone(), self.num_vars, self.basis, terms)
    }

    /// Applies `f` to every monomial, summing coefficients of collisions.
    pub fn map_monomials<F: FnMut(&Monomial) -> Monomial>(&self, mut f: F) -> Self {
        let mut out = Self::zero(self.field.clone(), self.num_vars, self.basis);
        for (m, c) in &self.terms {
            out.add_term(f(m), c.clone());
        }
        out
    }

    /// Sum of the terms of total degree at most `max_deg`.
    pub fn truncate(&self, max_deg: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() <= max_deg)
            .map(|(m, c)| (m.clone(), c.clone()));
        Self::from_terms(self.field.clone(), self.num_vars, self.basis, terms)
    }

    /// Set-multilinear component for the block subset `s` (0-based block
    /// indices, duplicates rejected): keeps monomials with degree exactly 1
    /// in every block of `s` and 0 elsewhere. `s = ∅` keeps the constant
    /// term.
    pub fn sm_component(&self, part: &VariablePartition, s: &[usize]) -> Self {
        assert_eq!(part.num_vars(), self.num_vars, "partition size mismatch");
        let mut want = vec![0u32; part.block_count()];
        for &b in s {
            assert!(b < part.block_count(), "block index out of range");
            assert_eq!(want[b], 0, "duplicate block index");
            want[b] = 1;
        }
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| part.block_degrees(m) == want)
            .map(|(m, c)| (m.clone(), c.clone()));
        Self::from_terms(self.field.clone(), self.num_vars, self.basis, terms)
    }

    /// Sum of sm_component over all block subsets: the terms with degree at
    /// most 1 in every block.
    pub fn set_multilinear_part(&self, part: &VariablePartition) -> Self {
        assert_eq!(part.num_vars(), self.num_vars, "partition size mismatch");
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| part.block_degrees(m).iter().all(|&d| d <= 1))
            .map(|(m, c)| (m.clone(), c.clone()));
        Self::from_terms(self.field.clone(), self.num_vars, self.basis, terms)
    }

    /// True when every monomial has degree exactly 1 in every block, i.e.
    /// the polynomial lies in the full set-multilinear component. The zero
    /// polynomial qualifies.
    pub fn is_set_multilinear(&self, part: &VariablePartition) -> bool {
        assert_eq!(part.num_vars(), self.num_vars, "partition size mismatch");
        self.terms
            .keys()
            .all(|m| part.block_degrees(m).iter().all(|&d| d == 1))
    }

    /// Iterated partial derivative ∂_𝐚 = ∂^{a₁}…∂^{aₙ}. On the divided basis
    /// this shifts exponents: ∂_𝐚 𝐱^{𝐚+𝐛} = 𝐱^𝐛. On the standard basis the
    /// coefficient picks up the falling factorial ∏ bᵢ!/(bᵢ−aᵢ)!.
    pub fn partial_derivative(&self, a: &Monomial) -> Self {
        assert_eq!(a.num_vars(), self.num_vars, "variable count mismatch");
        let mut out = Self::zero(self.field.clone(), self.num_vars, self.basis);
        for (m, c) in &self.terms {
            if !a.divides(m) {
                continue;
            }
            let shifted = a.div_into(m);
            let mut coef = c.clone();
            if self.basis == Basis::Standard {
                for (&ei, &ai) in m.0.iter().zip(&a.0) {
                    for j in 0..ai {
                        coef = self.field.mul(&coef, &self.field.from_i64((ei - j) as i64));
                    }
                }
            }
            out.add_term(shifted, coef);
        }
        out
    }

    /// Rewrites the same polynomial in the other basis: standard → divided
    /// multiplies each coefficient by 𝐚!, divided → standard divides by 𝐚!.
    pub fn convert(&self, target: Basis) -> Self {
        if self.basis == target {
            return self.clone();
        }
        let mut out = Self::zero(self.field.clone(), self.num_vars, target);
        for (m, c) in &self.terms {
            let mut f = self.field.one();
            for &e in &m.0 {
                f = self.field.mul(&f, &factorial(&self.field, e as u64));
            }
            let coef = match target {
                Basis::Divided => self.field.mul(c, &f),
                Basis::Standard => self.field.div(c, &f),
            };
            out.add_term(m.clone(), coef);
        }
        out
    }

    /// Largest exponent of each variable over all terms.
    pub fn max_exponents(&self) -> Vec<u16> {
        let mut mx = vec![0u16; self.num_vars];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                mx[i] = mx[i].max(e);
            }
        }
        mx
    }

    pub fn evaluate(&self, point: &[K::Elem]) -> K::Elem {
        PowerTable::new(&self.field, point, &self.max_exponents()).eval(self)
    }

    /// The components of degree ≤ `max_deg` of p(𝐱 + 𝐚), computed without
    /// forming the full shift: each source term contributes only its jet.
    /// Standard basis only.
    pub fn shift_truncated(&self, a: &[K::Elem], max_deg: u32) -> Self {
        assert_eq!(self.basis, Basis::Standard, "shift requires the standard basis");
        assert_eq!(a.len(), self.num_vars, "point size mismatch");
        let table = PowerTable::new(&self.field, a, &self.max_exponents());
        let mut out = Self::zero(self.field.clone(), self.num_vars, self.basis);
        let mut k = vec![0u16; self.num_vars];
        for (m, c) in &self.terms {
            descend_jet(&self.field, &table, m, c, 0, max_deg, &mut k, &mut out);
        }
        out
    }

    /// Exact quotient self / divisor in the standard basis. Panics if the
    /// division leaves a remainder; callers rely on divisibility guaranteed
    /// by fraction-free elimination.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        self.assert_compatible(divisor);
        assert_eq!(self.basis, Basis::Standard, "exact division requires the standard basis");
        let (dm, dc) = divisor.leading_term().expect("division by the zero polynomial");
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero(self.field.clone(), self.num_vars, self.basis);
        while let Some((rm, rc)) = rem.leading_term() {
            assert!(
                dm.divides(rm),
                "non-exact polynomial division: leading monomial not divisible"
            );
            let qm = dm.div_into(rm);
            let qc = self.field.div(rc, &dc);
            // Subtract (qm, qc)·divisor; the leading term cancels exactly.
            for (m, c) in &divisor.terms {
                let prod = self.field.mul(&qc, c);
                rem.add_term(qm.mul(m), self.field.neg(&prod));
            }
            quot.add_term(qm, qc);
        }
        quot
    }

    /// Parses "2*x1^2*x2 - x3 + 1/2". Whitespace is free; variables are
    /// x1 … xn. The string denotes coefficients in the polynomial's basis.
    pub fn parse(field: K, num_vars: usize, basis: Basis, s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut out = Self::zero(field.clone(), num_vars, basis);
        if compact.is_empty() || compact == "0" {
            return Ok(out);
        }
        // Split into signed chunks at top-level + and -.
        let bytes = compact.as_bytes();
        let mut starts = vec![0usize];
        for (i, &b) in bytes.iter().enumerate().skip(1) {
            if (b == b'+' || b == b'-') && !matches!(bytes[i - 1], b'+' | b'-' | b'/' | b'^' | b'*')
            {
                starts.push(i);
            }
        }
        starts.push(compact.len());
        for w in starts.windows(2) {
            let chunk = &compact[w[0]..w[1]];
            let (m, c) = parse_term(&field, num_vars, chunk)?;
            out.add_term(m, c);
        }
        Ok(out)
    }
}

fn parse_term<K: Field>(field: &K, num_vars: usize, chunk: &str) -> Result<(Monomial, K::Elem)> {
    let (sign, body) = match chunk.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, chunk.strip_prefix('+').unwrap_or(chunk)),
    };
    let mut coef = field.one();
    let mut exps = vec![0u16; num_vars];
    for factor in body.split('*') {
        if factor.is_empty() {
            return Err(Error::InvalidInput(format!("empty factor in {chunk:?}")));
        }
        if let Some(rest) = factor.strip_prefix('x') {
            let (idx_s, exp_s) = match rest.split_once('^') {
                Some((i, e)) => (i, e),
                None => (rest, "1"),
            };
            let idx: usize = idx_s
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad variable in {factor:?}")))?;
            if idx == 0 || idx > num_vars {
                return Err(Error::InvalidInput(format!(
                    "variable x{idx} out of range 1..={num_vars}"
                )));
            }
            let exp: u16 = exp_s
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad exponent in {factor:?}")))?;
            exps[idx - 1] += exp;
        } else {
            coef = field.mul(&coef, &field.parse(factor)?);
        }
    }
    if sign {
        coef = field.neg(&coef);
    }
    Ok((Monomial(exps), coef))
}

#[allow(clippy::too_many_arguments)]
fn descend_jet<K: Field>(
    field: &K,
    table: &PowerTable<K>,
    m: &Monomial,
    c: &K::Elem,
    var: usize,
    budget: u32,
    k: &mut Vec<u16>,
    out: &mut Polynomial<K>,
) {
    if var == m.num_vars() {
        // coefficient of 𝐱^𝐤 in c·∏(xᵢ+aᵢ)^{eᵢ}: c·∏C(eᵢ,kᵢ)aᵢ^{eᵢ−kᵢ}
        let mut coef = c.clone();
        for i in 0..m.num_vars() {
            let (e, kk) = (m.0[i], k[i]);
            if kk < e {
                coef = field.mul(&coef, table.power(i, e - kk));
                if field.is_zero(&coef) {
                    return;
                }
            }
            if kk > 0 && kk < e {
                coef = field.mul(&coef, &binomial_elem(field, e as u64, kk as u64));
            }
        }
        out.add_term(Monomial(k.clone()), coef);
        return;
    }
    let e = m.0[var];
    let top = (e as u32).min(budget) as u16;
    for kk in 0..=top {
        k[var] = kk;
        descend_jet(field, table, m, c, var + 1, budget - kk as u32, k, out);
    }
    k[var] = 0;
}

/// Precomputed powers of a point, shared across many evaluations. Also holds
/// inverse factorials for divided-basis terms.
pub struct PowerTable<K: Field> {
    field: K,
    pows: Vec<Vec<K::Elem>>,
    inv_fact: Vec<K::Elem>,
}

impl<K: Field> PowerTable<K> {
    pub fn new(field: &K, point: &[K::Elem], max_exp: &[u16]) -> Self {
        assert_eq!(point.len(), max_exp.len(), "point size mismatch");
        let pows = point
            .iter()
            .zip(max_exp)
            .map(|(v, &mx)| {
                let mut row = Vec::with_capacity(mx as usize + 1);
                row.push(field.one());
                for e in 1..=mx {
                    let prev = row[e as usize - 1].clone();
                    row.push(field.mul(&prev, v));
                }
                row
            })
            .collect();
        let overall = max_exp.iter().copied().max().unwrap_or(0);
        let mut inv_fact = vec![field.one()];
        for e in 1..=overall {
            let f = field.div(&inv_fact[e as usize - 1], &field.from_i64(e as i64));
            inv_fact.push(f);
        }
        PowerTable { field: field.clone(), pows, inv_fact }
    }

    fn power(&self, var: usize, e: u16) -> &K::Elem {
        &self.pows[var][e as usize]
    }

    pub fn eval(&self, p: &Polynomial<K>) -> K::Elem {
        assert_eq!(p.num_vars(), self.pows.len(), "point size mismatch");
        let mut acc = self.field.zero();
        for (m, c) in p.iter_terms() {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = self.field.mul(&t, self.power(i, e));
                    if p.basis() == Basis::Divided {
                        t = self.field.mul(&t, &self.inv_fact[e as usize]);
                    }
                }
            }
            acc = self.field.add(&acc, &t);
        }
        acc
    }
}

impl<K: Field> fmt::Display for Polynomial<K> {
    /// Prints leading term first, e.g. "x1^2*x2 - 3*x1 + 1/2". The divided
    /// basis prints the same shape; the basis tag travels separately.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let minus_one = self.field.neg(&self.field.one());
        for (pos, (m, c)) in self.terms.iter().rev().enumerate() {
            let s = self.field.format(c);
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if pos == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coef = *c == self.field.one() || *c == minus_one;
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                let mut lead = true;
                if !unit_coef {
                    write!(f, "{mag}")?;
                    lead = false;
                }
                for (i, &e) in m.0.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    if !lead {
                        write!(f, "*")?;
                    }
                    lead = false;
                    write!(f, "x{}", i + 1)?;
                    if e > 1 {
                        write!(f, "^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// A column of polynomials sharing field, variables, and basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyVector<K: Field> {
    entries: Vec<Polynomial<K>>,
}

impl<K: Field> PolyVector<K> {
    pub fn new(entries: Vec<Polynomial<K>>) -> Self {
        assert!(!entries.is_empty(), "empty vector");
        for e in &entries[1..] {
            entries[0].assert_compatible(e);
        }
        PolyVector { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, i: usize) -> &Polynomial<K> {
        &self.entries[i]
    }

    pub fn entries(&self) -> &[Polynomial<K>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    pub fn map<F: FnMut(&Polynomial<K>) -> Polynomial<K>>(&self, f: F) -> Self {
        PolyVector { entries: self.entries.iter().map(f).collect() }
    }

    pub fn homogeneous_component(&self, t: u32) -> Self {
        self.map(|p| p.homogeneous_component(t))
    }

    pub fn sm_component(&self, part: &VariablePartition, s: &[usize]) -> Self {
        self.map(|p| p.sm_component(part, s))
    }
}

macro_rules! ref_binop {
    ($trait:ident, $method:ident) => {
        impl<K: Field> std::ops::$trait<&Polynomial<K>> for &Polynomial<K> {
            type Output = Polynomial<K>;
            fn $method(self, rhs: &Polynomial<K>) -> Polynomial<K> {
                Polynomial::$method(self, rhs)
            }
        }
    };
}
ref_binop!(Add, add);
ref_binop!(Sub, sub);
ref_binop!(Mul, mul);

impl<K: Field> std::ops::Neg for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn neg(self) -> Polynomial<K> {
        Polynomial::neg(self)
    }
}
