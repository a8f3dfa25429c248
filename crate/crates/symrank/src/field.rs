//! Coefficient fields.
//!
//! All algebra in this crate is generic over a [`Field`] object that owns the
//! arithmetic of its elements. The field is a value, not just a type, so a
//! prime modulus chosen at runtime travels with every polynomial and matrix
//! that uses it. Two backends are provided:
//!
//! - [`Rationals`]: exact arbitrary-precision rationals (`BigRational`).
//! - [`PrimeField`]: 𝔽_p for a user-selected prime p ≥ 2³¹ − 1. The floor
//!   keeps factorials up to any degree reachable here invertible and leaves
//!   room for the sample ranges used by randomized rank. Note that rank
//!   statements certified over 𝔽_p do not automatically transfer to
//!   characteristic 0.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Smallest admissible prime modulus.
pub const MIN_PRIME: u64 = (1 << 31) - 1;

/// A field of coefficients. Methods take `&self` so that fields with runtime
/// parameters (a prime modulus) can participate; for [`Rationals`] the
/// receiver is a zero-sized token.
pub trait Field: Clone + Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;

    /// num/den as a field element. Fails if den maps to zero (e.g. p | den).
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem>;

    /// Characteristic: `None` for characteristic 0.
    fn characteristic(&self) -> Option<u64>;

    /// Canonical string form, also accepted by [`Field::parse`].
    fn format(&self, a: &Self::Elem) -> String;

    /// Parses "n" or "n/d" with optional sign, in decimal.
    fn parse(&self, s: &str) -> Result<Self::Elem> {
        let (num_s, den_s) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num: BigInt = num_s
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad coefficient {s:?}")))?;
        let den: BigInt = den_s
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad coefficient {s:?}")))?;
        if den.is_zero() {
            return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
        }
        self.from_ratio(&num, &den)
    }
}

/// b^e by repeated squaring.
pub fn pow<K: Field>(k: &K, base: &K::Elem, mut e: u64) -> K::Elem {
    let mut acc = k.one();
    let mut sq = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = k.mul(&acc, &sq);
        }
        e >>= 1;
        if e > 0 {
            sq = k.mul(&sq, &sq);
        }
    }
    acc
}

/// n! as a field element.
pub fn factorial<K: Field>(k: &K, n: u64) -> K::Elem {
    let mut acc = k.one();
    for i in 2..=n {
        acc = k.mul(&acc, &k.from_i64(i as i64));
    }
    acc
}

/// C(n, r) as a field element, computed exactly over ℤ first.
pub fn binomial_elem<K: Field>(k: &K, n: u64, r: u64) -> K::Elem {
    k.from_bigint(&num_integer::binomial(BigInt::from(n), BigInt::from(r)))
}

/// The field ℚ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<BigRational> {
        if den.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Ok(BigRational::new(num.clone(), den.clone()))
    }
    fn characteristic(&self) -> Option<u64> {
        None
    }
    fn format(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

/// The field 𝔽_p. Elements are canonical representatives in 0..p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Rejects composite moduli and primes below [`MIN_PRIME`].
    pub fn new(p: u64) -> Result<Self> {
        if p < MIN_PRIME {
            return Err(Error::Refused(format!(
                "prime modulus {p} is below the floor {MIN_PRIME}"
            )));
        }
        if !is_prime_u64(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn mulmod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mulmod(*a, *b)
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        // a^(p-2) by Fermat; p is prime by construction.
        pow(self, a, self.p - 2)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.p as i128) as u64
    }
    fn from_bigint(&self, v: &BigInt) -> u64 {
        let m = v.mod_floor(&BigInt::from(self.p));
        let (_, digits) = m.to_u64_digits();
        *digits.first().unwrap_or(&0)
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<u64> {
        let d = self.from_bigint(den);
        if d == 0 {
            return Err(Error::InvalidInput(format!(
                "denominator {den} vanishes mod {}",
                self.p
            )));
        }
        Ok(self.mulmod(self.from_bigint(num), self.inv(&d)))
    }
    fn characteristic(&self) -> Option<u64> {
        Some(self.p)
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// Deterministic Miller-Rabin for u64.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let r = (n - 1).trailing_zeros();
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}
