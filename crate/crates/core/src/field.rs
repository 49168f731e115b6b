//! Coefficient fields: exact rationals and prime fields F_p.
//!
//! Scalars are plain data; all arithmetic goes through the owning [`Field`]
//! context so that `F_p` elements can stay as bare residues.

use std::fmt;
use std::hash::Hash;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use rand::RngCore;
use thiserror::Error;

/// Largest prime the exact rank engine accepts. Residues and elimination
/// multipliers stay below 2^25 so u64 accumulators cannot overflow between
/// renormalizations.
pub const MAX_ENGINE_PRIME: u64 = 1 << 25;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds the engine limit {MAX_ENGINE_PRIME}")]
    PrimeTooLarge(u64),
    #[error("coefficient denominator {0} is not invertible modulo {1}")]
    BadDenominator(String, u64),
}

/// A coefficient field. Elements carry no context of their own; every
/// operation takes the field by reference.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Element from a plain decimal digit string.
    fn from_int_str(&self, digits: &str) -> Self::Elem;
    /// Splits an element into (is_negative, absolute value) for rendering.
    /// Fields with canonical non-negative representatives never report
    /// negative.
    fn abs_split(&self, a: &Self::Elem) -> (bool, Self::Elem);
    fn fmt_elem(&self, a: &Self::Elem, f: &mut fmt::Formatter<'_>) -> fmt::Result;
    /// Field descriptor as used by the CLI and the JSON format: `q` or `fp:P`.
    fn descriptor(&self) -> String;
    fn random_elem(&self, rng: &mut dyn RngCore) -> Self::Elem;
    fn random_nonzero(&self, rng: &mut dyn RngCore) -> Self::Elem {
        loop {
            let e = self.random_elem(rng);
            if !self.is_zero(&e) {
                return e;
            }
        }
    }
}

/// The rationals with arbitrary-precision arithmetic.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
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
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_int_str(&self, digits: &str) -> BigRational {
        let n = BigInt::parse_bytes(digits.as_bytes(), 10).expect("decimal digits");
        BigRational::from_integer(n)
    }
    fn abs_split(&self, a: &BigRational) -> (bool, BigRational) {
        (a.is_negative(), a.abs())
    }
    fn fmt_elem(&self, a: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{a}")
    }
    fn descriptor(&self) -> String {
        "q".to_string()
    }
    fn random_elem(&self, rng: &mut dyn RngCore) -> BigRational {
        // small integers keep symbolic products readable and fast
        let v = (rng.next_u64() % 19) as i64 - 9;
        self.from_i64(v)
    }
}

/// The prime field F_p with canonical representatives in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeField {
    p: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p >= MAX_ENGINE_PRIME {
            return Err(FieldError::PrimeTooLarge(p));
        }
        Ok(PrimeField { p })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u64) -> bool {
        *a == 1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn from_int_str(&self, digits: &str) -> u64 {
        let mut acc = 0u64;
        for b in digits.bytes() {
            debug_assert!(b.is_ascii_digit());
            acc = (acc * 10 + (b - b'0') as u64) % self.p;
        }
        acc
    }
    fn abs_split(&self, a: &u64) -> (bool, u64) {
        (false, *a)
    }
    fn fmt_elem(&self, a: &u64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{a}")
    }
    fn descriptor(&self) -> String {
        format!("fp:{}", self.p)
    }
    fn random_elem(&self, rng: &mut dyn RngCore) -> u64 {
        rng.next_u64() % self.p
    }
}

/// Reduces a rational into F_p. Fails when the denominator vanishes mod p.
pub fn rational_mod_p(a: &BigRational, fp: &PrimeField) -> Result<u64, FieldError> {
    let p = BigInt::from(fp.prime());
    let num = a.numer().mod_floor_u64(&p);
    let den = a.denom().mod_floor_u64(&p);
    let den_inv = fp
        .inv(&den)
        .ok_or_else(|| FieldError::BadDenominator(a.denom().to_string(), fp.prime()))?;
    Ok(fp.mul(&num, &den_inv))
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: &BigInt) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: &BigInt) -> u64 {
        use num::Integer;
        let r = self.mod_floor(p);
        let (_, digits) = r.to_u64_digits();
        digits.first().copied().unwrap_or(0)
    }
}
