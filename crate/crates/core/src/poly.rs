//! Sparse multivariate polynomials with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::field::{rational_mod_p, Field, FieldError, PrimeField, Rationals};
use crate::ring::{format_monomial, graded_basis, Monomial, RingId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: RingId, right: RingId },
    #[error("expected the {expected} ring, got {found}")]
    WrongRing { expected: RingId, found: RingId },
    #[error("polynomial is not homogeneous of degree {expected}")]
    DegreeMismatch { expected: i64 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Homogeneity status of a polynomial. The zero polynomial is homogeneous of
/// every degree and reports the `Zero` sentinel.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Homogeneity {
    /// The zero polynomial (degree -infinity).
    Zero,
    Homogeneous(u32),
    Inhomogeneous,
}

impl Homogeneity {
    /// Whether a polynomial with this status may sit in a degree-`n` slot.
    pub fn fits_degree(self, n: i64) -> bool {
        match self {
            Homogeneity::Zero => true,
            Homogeneity::Homogeneous(d) => d as i64 == n,
            Homogeneity::Inhomogeneous => false,
        }
    }
}

/// A sparse polynomial over the field `K`, tagged with its ring. Stored
/// coefficients are never zero. Immutable after construction.
#[derive(Clone, PartialEq, Debug)]
pub struct Polynomial<K: Field> {
    ring: RingId,
    field: K,
    terms: BTreeMap<Monomial, K::Elem>,
}

impl<K: Field> Polynomial<K> {
    pub fn zero(field: K, ring: RingId) -> Self {
        Polynomial {
            ring,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: K, ring: RingId, c: K::Elem) -> Self {
        let mut p = Self::zero(field, ring);
        if !p.field.is_zero(&c) {
            p.terms.insert(Monomial::one(ring.arity()), c);
        }
        p
    }

    pub fn var(field: K, ring: RingId, idx: usize) -> Self {
        let one = field.one();
        let mut p = Self::zero(field, ring);
        p.terms.insert(Monomial::var(ring.arity(), idx), one);
        p
    }

    pub fn monomial(field: K, ring: RingId, m: Monomial, c: K::Elem) -> Self {
        assert_eq!(m.arity(), ring.arity(), "monomial arity must match ring");
        let mut p = Self::zero(field, ring);
        if !p.field.is_zero(&c) {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I>(field: K, ring: RingId, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, K::Elem)>,
    {
        let mut p = Self::zero(field, ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: K::Elem) {
        assert_eq!(
            m.arity(),
            self.ring.arity(),
            "monomial arity must match ring"
        );
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = self.field.add(e.get(), &c);
                if self.field.is_zero(&sum) {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    pub fn ring(&self) -> RingId {
        self.ring
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &K::Elem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> K::Elem {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Leading term in grevlex order.
    pub fn leading(&self) -> Option<(&Monomial, &K::Elem)> {
        self.terms.iter().next_back()
    }

    pub fn homogeneous_degree(&self) -> Homogeneity {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Homogeneity::Zero;
        };
        let d = first.degree();
        if it.all(|m| m.degree() == d) {
            Homogeneity::Homogeneous(d)
        } else {
            Homogeneity::Inhomogeneous
        }
    }

    fn assert_compatible(&self, other: &Self) {
        assert_eq!(
            self.ring, other.ring,
            "ring mismatch: {} vs {}",
            self.ring, other.ring
        );
        assert!(self.field == other.field, "field mismatch");
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (m, c) in other.terms.iter() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (m, c) in other.terms.iter() {
            out.add_term(m.clone(), self.field.neg(c));
        }
        out
    }

    pub fn neg_ref(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.neg(c);
        }
        out
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = Self::zero(self.field.clone(), self.ring);
        for (ma, ca) in self.terms.iter() {
            for (mb, cb) in other.terms.iter() {
                out.add_term(ma.mul(mb), self.field.mul(ca, cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &K::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(self.field.clone(), self.ring);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = self.field.mul(v, c);
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let mut out = Self::zero(self.field.clone(), self.ring);
        for (mm, c) in self.terms.iter() {
            out.terms.insert(mm.mul(m), c.clone());
        }
        out
    }

    /// Coefficients against `graded_basis(ring, n)`, in basis order. The
    /// polynomial must be zero or homogeneous of degree `n`.
    pub fn coeff_vector(&self, n: i64) -> Result<Vec<K::Elem>, PolyError> {
        if !self.homogeneous_degree().fits_degree(n) {
            return Err(PolyError::DegreeMismatch { expected: n });
        }
        let basis = graded_basis(self.ring, n);
        Ok(basis.iter().map(|m| self.coeff(m)).collect())
    }

    /// Exact division test by a single polynomial: true iff `divisor | self`.
    pub fn is_multiple_of(&self, divisor: &Self) -> bool {
        self.assert_compatible(divisor);
        if self.is_zero() {
            return true;
        }
        if divisor.is_zero() {
            return false;
        }
        let (dm, dc) = divisor.leading().expect("nonzero divisor");
        let dc_inv = self.field.inv(dc).expect("unit leading coefficient");
        let mut rem = self.clone();
        while let Some((lm, lc)) = rem.leading() {
            if !dm.divides(lm) {
                return false;
            }
            let q_mono = lm.div(dm);
            let q_coef = self.field.mul(lc, &dc_inv);
            let sub = divisor.mul_monomial(&q_mono).scale(&q_coef);
            rem = rem.sub_ref(&sub);
        }
        true
    }
}

impl Polynomial<Rationals> {
    /// Reduces every coefficient into F_p. Fails when a denominator is
    /// divisible by p.
    pub fn to_prime_field(&self, fp: &PrimeField) -> Result<Polynomial<PrimeField>, FieldError> {
        let mut out = Polynomial::zero(*fp, self.ring);
        for (m, c) in self.terms.iter() {
            out.add_term(m.clone(), rational_mod_p(c, fp)?);
        }
        Ok(out)
    }
}

impl<K: Field> Add for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn add(self, rhs: Self) -> Polynomial<K> {
        self.add_ref(rhs)
    }
}

impl<K: Field> Sub for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn sub(self, rhs: Self) -> Polynomial<K> {
        self.sub_ref(rhs)
    }
}

impl<K: Field> Mul for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn mul(self, rhs: Self) -> Polynomial<K> {
        self.mul_ref(rhs)
    }
}

impl<K: Field> Neg for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn neg(self) -> Polynomial<K> {
        self.neg_ref()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}

/// Checked arithmetic entry point: errors on ring mismatch instead of
/// panicking.
pub fn ring_arithmetic<K: Field>(
    a: &Polynomial<K>,
    b: &Polynomial<K>,
    op: RingOp,
) -> Result<Polynomial<K>, PolyError> {
    if a.ring() != b.ring() {
        return Err(PolyError::RingMismatch {
            left: a.ring(),
            right: b.ring(),
        });
    }
    Ok(match op {
        RingOp::Add => a.add_ref(b),
        RingOp::Sub => a.sub_ref(b),
        RingOp::Mul => a.mul_ref(b),
    })
}

/// Canonical rendering: descending grevlex, `^` for exponents, unit
/// coefficients suppressed except on the constant term.
impl<K: Field> fmt::Display for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        struct Shown<'a, K: Field>(&'a K, &'a K::Elem);
        impl<K: Field> fmt::Display for Shown<'_, K> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_elem(self.1, f)
            }
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, abs) = self.field.abs_split(c);
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mono = format_monomial(self.ring, m);
            if mono.is_empty() {
                write!(f, "{}", Shown(&self.field, &abs))?;
            } else if self.field.is_one(&abs) {
                f.write_str(&mono)?;
            } else {
                write!(f, "{}*{}", Shown(&self.field, &abs), mono)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn q() -> Rationals {
        Rationals
    }

    fn p(text: &str, ring: RingId) -> Polynomial<Rationals> {
        parse_poly(text, ring, q()).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = p("x0 + x1", RingId::Curve);
        let b = p("x0 - x1", RingId::Curve);
        assert_eq!(&a * &b, p("x0^2 - x1^2", RingId::Curve));
    }

    #[test]
    fn zero_absorbs() {
        let a = p("x0^2*x1 + 3*x1*x2^2", RingId::Curve);
        let z = Polynomial::zero(q(), RingId::Curve);
        assert!((&a * &z).is_zero());
    }

    #[test]
    fn minor_times_variable_expands() {
        let a = p("x11*x22 - x12^2", RingId::Ambient);
        let b = p("x00", RingId::Ambient);
        assert_eq!(&a * &b, p("x00*x11*x22 - x00*x12^2", RingId::Ambient));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = p("x0", RingId::Curve);
        let b = p("x00", RingId::Ambient);
        assert_eq!(
            ring_arithmetic(&a, &b, RingOp::Add).unwrap_err(),
            PolyError::RingMismatch {
                left: RingId::Curve,
                right: RingId::Ambient
            }
        );
    }

    #[test]
    fn homogeneity() {
        assert_eq!(
            p("x0^2*x1 + x2^3", RingId::Curve).homogeneous_degree(),
            Homogeneity::Homogeneous(3)
        );
        assert_eq!(
            p("x0 + x1^2", RingId::Curve).homogeneous_degree(),
            Homogeneity::Inhomogeneous
        );
        assert_eq!(
            Polynomial::zero(q(), RingId::Curve).homogeneous_degree(),
            Homogeneity::Zero
        );
        assert!(Homogeneity::Zero.fits_degree(5));
    }

    #[test]
    fn coeff_vector_basics() {
        let z = Polynomial::zero(q(), RingId::Curve);
        assert_eq!(z.coeff_vector(2).unwrap().len(), 6);
        assert!(z.coeff_vector(2).unwrap().iter().all(|c| q().is_zero(c)));

        let sq = p("x0^2", RingId::Curve);
        let v = sq.coeff_vector(2).unwrap();
        // x0^2 is the largest degree-2 monomial in grevlex
        assert!(q().is_one(&v[0]));
        assert!(v[1..].iter().all(|c| q().is_zero(c)));

        assert!(sq.coeff_vector(3).is_err());
    }

    #[test]
    fn exact_division() {
        let f = p("x0^2 + x1*x2", RingId::Curve);
        let g = p("x0^3 + x0*x1*x2 + x1^3", RingId::Curve);
        assert!((&f * &g).is_multiple_of(&f));
        assert!(!g.is_multiple_of(&f));
        assert!(Polynomial::zero(q(), RingId::Curve).is_multiple_of(&f));
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(
            p("x1*x0 + 3*x2^2", RingId::Curve).to_string(),
            "x0*x1 + 3*x2^2"
        );
        assert_eq!(p("0", RingId::Curve).to_string(), "0");
        let neg = p("x1 - x0", RingId::Curve);
        assert_eq!(neg.to_string(), "-x0 + x1");
    }
}
