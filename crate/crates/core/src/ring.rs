//! The two fixed polynomial rings, monomials and the graded reverse
//! lexicographic order.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// Which polynomial ring a value lives in. Variable order is fixed for the
/// whole process: canonical printing and the graded monomial bases depend on
/// it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum RingId {
    /// k[x0, x1, x2]
    Curve,
    /// S = k[x00, x01, x02, x11, x12, x22]
    Ambient,
}

pub const CURVE_VARS: [&str; 3] = ["x0", "x1", "x2"];
pub const AMBIENT_VARS: [&str; 6] = ["x00", "x01", "x02", "x11", "x12", "x22"];

impl RingId {
    pub fn arity(self) -> usize {
        match self {
            RingId::Curve => 3,
            RingId::Ambient => 6,
        }
    }

    pub fn var_names(self) -> &'static [&'static str] {
        match self {
            RingId::Curve => &CURVE_VARS,
            RingId::Ambient => &AMBIENT_VARS,
        }
    }

    pub fn var_index(self, name: &str) -> Option<usize> {
        self.var_names().iter().position(|v| *v == name)
    }

    pub fn name(self) -> &'static str {
        match self {
            RingId::Curve => "CURVE",
            RingId::Ambient => "AMBIENT",
        }
    }
}

impl fmt::Display for RingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector; length always equals the arity of the owning ring.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub(crate) SmallVec<[u8; 6]>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(SmallVec::from_elem(0, arity))
    }

    pub fn var(arity: usize, idx: usize) -> Self {
        let mut e = SmallVec::from_elem(0, arity);
        e[idx] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: &[u8]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exponents(&self) -> &[u8] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    /// Product of two monomials of the same arity.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.arity(), other.arity());
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    /// Componentwise divisibility.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// Quotient, assuming `self.divides(other)`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

/// Graded reverse lexicographic comparison. Higher total degree is greater;
/// within a degree, the monomial whose rightmost differing exponent is
/// smaller is greater.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.arity(), other.arity());
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..self.0.len()).rev() {
            match self.0[i].cmp(&other.0[i]) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => {}
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `n`, in descending grevlex order. Negative
/// `n` yields the empty list.
pub fn graded_basis(ring: RingId, n: i64) -> Vec<Monomial> {
    if n < 0 {
        return Vec::new();
    }
    let arity = ring.arity();
    let mut out = Vec::with_capacity(basis_size(ring, n) as usize);
    let mut current = SmallVec::<[u8; 6]>::from_elem(0, arity);
    enumerate(&mut out, &mut current, 0, n as u32, arity);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn enumerate(
    out: &mut Vec<Monomial>,
    current: &mut SmallVec<[u8; 6]>,
    pos: usize,
    left: u32,
    arity: usize,
) {
    if pos == arity - 1 {
        current[pos] = u8::try_from(left).expect("degree out of range for u8 exponents");
        out.push(Monomial(current.clone()));
        return;
    }
    for e in 0..=left {
        current[pos] = u8::try_from(e).expect("degree out of range for u8 exponents");
        enumerate(out, current, pos + 1, left - e, arity);
    }
    current[pos] = 0;
}

/// Number of degree-`n` monomials, C(n + arity - 1, arity - 1).
pub fn basis_size(ring: RingId, n: i64) -> u64 {
    if n < 0 {
        return 0;
    }
    binomial(n as u64 + ring.arity() as u64 - 1, ring.arity() as u64 - 1)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Renders a monomial against its ring's variable names: `x0^2*x1`.
pub fn format_monomial(ring: RingId, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ring.var_names()[i].to_string()),
            _ => parts.push(format!("{}^{}", ring.var_names()[i], e)),
        }
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u8]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_degree_two_curve() {
        // x0^2 > x0x1 > x1^2 > x0x2 > x1x2 > x2^2
        let b = graded_basis(RingId::Curve, 2);
        let expect = vec![
            m(&[2, 0, 0]),
            m(&[1, 1, 0]),
            m(&[0, 2, 0]),
            m(&[1, 0, 1]),
            m(&[0, 1, 1]),
            m(&[0, 0, 2]),
        ];
        assert_eq!(b, expect);
    }

    #[test]
    fn grevlex_is_strict_total_order() {
        let b = graded_basis(RingId::Ambient, 3);
        for w in b.windows(2) {
            assert_eq!(w[0].cmp(&w[1]), Ordering::Greater);
        }
    }

    #[test]
    fn basis_counts_match_binomials() {
        for n in 0..=12i64 {
            for ring in [RingId::Curve, RingId::Ambient] {
                let b = graded_basis(ring, n);
                assert_eq!(b.len() as u64, basis_size(ring, n));
                assert!(b.iter().all(|mm| mm.degree() == n as u32));
            }
        }
        assert_eq!(basis_size(RingId::Curve, 2), 6);
        assert_eq!(basis_size(RingId::Ambient, 2), 21);
    }

    #[test]
    fn degree_one_is_the_variables() {
        let b = graded_basis(RingId::Ambient, 1);
        assert_eq!(b.len(), 6);
        for (i, mm) in b.iter().enumerate() {
            assert_eq!(*mm, Monomial::var(6, i));
        }
    }

    #[test]
    fn negative_degree_empty() {
        assert!(graded_basis(RingId::Curve, -1).is_empty());
        assert_eq!(basis_size(RingId::Ambient, -3), 0);
    }
}
