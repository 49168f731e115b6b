//! Parity decomposition of a plane curve and its lifts along theta.
//!
//! A homogeneous f in k[x0,x1,x2] splits into four parts by the parities of
//! the exponent triples. Each part lifts monomial-wise to the six-variable
//! ring: for even degree a single F with theta(F) = f, for odd degree the
//! polynomials h_I..h_IV and F_0, F_1, F_2 with theta(F_n) = x_n * f.

use thiserror::Error;

use crate::field::Field;
use crate::poly::{Homogeneity, Polynomial};
use crate::ring::{Monomial, RingId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LiftError {
    #[error("input must live in the CURVE ring")]
    WrongRing,
    #[error("input must be homogeneous")]
    NotHomogeneous,
    #[error("input is zero")]
    ZeroInput,
    #[error("degree {degree} does not have parity {expected:?}")]
    ParityMismatch { degree: u32, expected: Parity },
    #[error("degree {0} is too small (need d >= 2, and d >= 3 when odd)")]
    DegreeTooSmall(u32),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(d: u32) -> Parity {
        if d % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// The four parity classes of an exponent triple (i, j, k).
///
/// Even degree: I = all even; II = i even, j,k odd; III = j even, i,k odd;
/// IV = k even, i,j odd. Odd degree: I = all odd; II = i odd, j,k even;
/// III = j odd, i,k even; IV = k odd, i,j even.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum ParityClass {
    I,
    II,
    III,
    IV,
}

pub const PARITY_CLASSES: [ParityClass; 4] = [
    ParityClass::I,
    ParityClass::II,
    ParityClass::III,
    ParityClass::IV,
];

impl ParityClass {
    pub fn classify(exps: &[u8], parity: Parity) -> ParityClass {
        let (i, j, k) = (exps[0] % 2, exps[1] % 2, exps[2] % 2);
        match parity {
            Parity::Even => match (i, j, k) {
                (0, 0, 0) => ParityClass::I,
                (0, 1, 1) => ParityClass::II,
                (1, 0, 1) => ParityClass::III,
                (1, 1, 0) => ParityClass::IV,
                _ => unreachable!("even total degree forces an even number of odd exponents"),
            },
            Parity::Odd => match (i, j, k) {
                (1, 1, 1) => ParityClass::I,
                (1, 0, 0) => ParityClass::II,
                (0, 1, 0) => ParityClass::III,
                (0, 0, 1) => ParityClass::IV,
                _ => unreachable!("odd total degree forces an odd number of odd exponents"),
            },
        }
    }

    pub fn index(self) -> usize {
        match self {
            ParityClass::I => 0,
            ParityClass::II => 1,
            ParityClass::III => 2,
            ParityClass::IV => 3,
        }
    }
}

/// f split into its four parity parts; the parts sum to f.
#[derive(Clone, Debug)]
pub struct ParityParts<K: Field> {
    pub parts: [Polynomial<K>; 4],
}

impl<K: Field> ParityParts<K> {
    pub fn part(&self, class: ParityClass) -> &Polynomial<K> {
        &self.parts[class.index()]
    }
}

/// The even-degree lift: a single degree-m polynomial with theta(F) = f.
#[derive(Clone, Debug, PartialEq)]
pub struct EvenLift<K: Field> {
    pub lift: Polynomial<K>,
    pub half_degree: u32,
}

/// The odd-degree lift data: h_I..h_IV and the three lifts F_0, F_1, F_2 of
/// x_0 f, x_1 f, x_2 f, each of degree m where d = 2m - 1.
#[derive(Clone, Debug, PartialEq)]
pub struct OddLift<K: Field> {
    pub h: [Polynomial<K>; 4],
    pub f_lifts: [Polynomial<K>; 3],
    pub half_degree: u32,
}

impl<K: Field> OddLift<K> {
    pub fn h_part(&self, class: ParityClass) -> &Polynomial<K> {
        &self.h[class.index()]
    }
}

fn check_curve_input<K: Field>(f: &Polynomial<K>) -> Result<u32, LiftError> {
    if f.ring() != RingId::Curve {
        return Err(LiftError::WrongRing);
    }
    match f.homogeneous_degree() {
        Homogeneity::Homogeneous(d) => Ok(d),
        Homogeneity::Zero => Err(LiftError::ZeroInput),
        Homogeneity::Inhomogeneous => Err(LiftError::NotHomogeneous),
    }
}

/// Splits homogeneous f by the parity classes of its exponent triples.
pub fn parity_split<K: Field>(
    f: &Polynomial<K>,
    parity: Parity,
) -> Result<ParityParts<K>, LiftError> {
    let d = check_curve_input(f)?;
    if Parity::of(d) != parity {
        return Err(LiftError::ParityMismatch {
            degree: d,
            expected: parity,
        });
    }
    let mut parts = std::array::from_fn(|_| Polynomial::zero(f.field().clone(), RingId::Curve));
    for (m, c) in f.terms() {
        let class = ParityClass::classify(m.exponents(), parity);
        parts[class.index()].add_term(m.clone(), c.clone());
    }
    Ok(ParityParts { parts })
}

/// Monomial-wise lift for even degree d = 2m: theta(result.lift) = f.
pub fn lift_even<K: Field>(f: &Polynomial<K>) -> Result<EvenLift<K>, LiftError> {
    let d = check_curve_input(f)?;
    if d % 2 != 0 {
        return Err(LiftError::ParityMismatch {
            degree: d,
            expected: Parity::Even,
        });
    }
    if d < 2 {
        return Err(LiftError::DegreeTooSmall(d));
    }
    let mut lift = Polynomial::zero(f.field().clone(), RingId::Ambient);
    for (m, c) in f.terms() {
        let e = m.exponents();
        let (i, j, k) = (e[0], e[1], e[2]);
        // ambient exponent order: x00 x01 x02 x11 x12 x22
        let exps: [u8; 6] = match ParityClass::classify(e, Parity::Even) {
            ParityClass::I => [i / 2, 0, 0, j / 2, 0, k / 2],
            ParityClass::II => [i / 2, 0, 0, (j - 1) / 2, 1, (k - 1) / 2],
            ParityClass::III => [(i - 1) / 2, 0, 1, j / 2, 0, (k - 1) / 2],
            ParityClass::IV => [(i - 1) / 2, 1, 0, (j - 1) / 2, 0, k / 2],
        };
        lift.add_term(Monomial::from_exponents(&exps), c.clone());
    }
    Ok(EvenLift {
        lift,
        half_degree: d / 2,
    })
}

/// Monomial-wise lift for odd degree d = 2m - 1, m >= 2:
/// theta(result.f_lifts[n]) = x_n * f.
pub fn lift_odd<K: Field>(f: &Polynomial<K>) -> Result<OddLift<K>, LiftError> {
    let d = check_curve_input(f)?;
    if d % 2 != 1 {
        return Err(LiftError::ParityMismatch {
            degree: d,
            expected: Parity::Odd,
        });
    }
    if d < 3 {
        return Err(LiftError::DegreeTooSmall(d));
    }
    let m = (d + 1) / 2;
    let field = f.field().clone();
    let mut h: [Polynomial<K>; 4] =
        std::array::from_fn(|_| Polynomial::zero(field.clone(), RingId::Ambient));
    for (mono, c) in f.terms() {
        let e = mono.exponents();
        let (i, j, k) = (e[0], e[1], e[2]);
        let class = ParityClass::classify(e, Parity::Odd);
        let exps: [u8; 6] = match class {
            ParityClass::I => [(i - 1) / 2, 0, 0, (j - 1) / 2, 0, (k - 1) / 2],
            ParityClass::II => [(i - 1) / 2, 0, 0, j / 2, 0, k / 2],
            ParityClass::III => [i / 2, 0, 0, (j - 1) / 2, 0, k / 2],
            ParityClass::IV => [i / 2, 0, 0, j / 2, 0, (k - 1) / 2],
        };
        h[class.index()].add_term(Monomial::from_exponents(&exps), c.clone());
    }
    let f_lifts = assemble_f_lifts(&field, &h);
    Ok(OddLift {
        h,
        f_lifts,
        half_degree: m,
    })
}

/// The multiplier table: F_n = sum over classes of (multiplier) * h_class.
pub const F_LIFT_MULTIPLIERS: [[&str; 4]; 3] = [
    ["x00*x12", "x00", "x01", "x02"],
    ["x11*x02", "x01", "x11", "x12"],
    ["x22*x01", "x02", "x12", "x22"],
];

fn assemble_f_lifts<K: Field>(field: &K, h: &[Polynomial<K>; 4]) -> [Polynomial<K>; 3] {
    std::array::from_fn(|n| {
        let mut acc = Polynomial::zero(field.clone(), RingId::Ambient);
        for (ci, mult) in F_LIFT_MULTIPLIERS[n].iter().enumerate() {
            let mult = crate::parse::parse_poly(mult, RingId::Ambient, field.clone())
                .expect("static multiplier table");
            acc = acc.add_ref(&mult.mul_ref(&h[ci]));
        }
        acc
    })
}
