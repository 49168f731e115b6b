//! Assembly of the full graded resolutions of curve ideals, both parities.
//!
//! Both complexes extend the fixed Veronese resolution by curve blocks whose
//! entries come from the lift data. The curve-block entry tables below are
//! canonical: each column is the unique syzygy supported on its nonzero
//! pattern (see the determinacy tests), and every differential composes to
//! zero symbolically.

use thiserror::Error;

use crate::complex::{
    ComplexError, GradedFreeModule, GradedMatrix, LiftData, Provenance, ResolutionComplex,
};
use crate::field::Field;
use crate::lift::ParityClass::{I, II, III, IV};
use crate::lift::{lift_even, lift_odd, LiftError, Parity, ParityClass};
use crate::parse::parse_poly;
use crate::poly::Polynomial;
use crate::ring::RingId;
use crate::veronese::{minors, parse_table, VERONESE_D2, VERONESE_D3};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error(transparent)]
    Lift(#[from] LiftError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("block {0:?} does not exist for this complex")]
    BlockUnavailable(BlockName),
}

/// One symbolic term of a curve-block entry: sign * multiplier * h_class.
pub type HTermSpec = (ParityClass, &'static str, bool);

/// Top blocks of the odd second differential: 8 columns V_1..V_8, each with
/// six entries in the minor coordinates.
pub static ODD_V_TOP: [[&[HTermSpec]; 6]; 8] = [
    [
        &[],
        &[],
        &[(I, "x00", true)],
        &[],
        &[(IV, "1", false)],
        &[(III, "1", false)],
    ],
    [
        &[],
        &[],
        &[(IV, "1", false)],
        &[],
        &[(I, "x11", true)],
        &[(II, "1", true)],
    ],
    [
        &[],
        &[(I, "x00", false)],
        &[],
        &[(IV, "1", false)],
        &[(III, "1", false)],
        &[],
    ],
    [
        &[(I, "x00", false)],
        &[(IV, "1", false)],
        &[],
        &[],
        &[(II, "1", true)],
        &[(I, "x22", true)],
    ],
    [
        &[],
        &[(III, "1", true)],
        &[],
        &[(II, "1", true)],
        &[(I, "x22", true)],
        &[],
    ],
    [
        &[],
        &[(IV, "1", false)],
        &[(III, "1", false)],
        &[(I, "x11", false)],
        &[],
        &[(I, "x22", true)],
    ],
    [
        &[(IV, "1", false)],
        &[(I, "x11", false)],
        &[(II, "1", true)],
        &[],
        &[],
        &[],
    ],
    [
        &[(III, "1", true)],
        &[(II, "1", true)],
        &[(I, "x22", false)],
        &[],
        &[],
        &[],
    ],
];

/// Linear tails of the V columns in the lift coordinates; column k of the Y
/// block tails V_{k+1}.
pub static ODD_Y: [[&str; 3]; 8] = [
    ["x01", "-x00", "0"],
    ["x11", "-x01", "0"],
    ["x02", "0", "-x00"],
    ["x12", "0", "-x01"],
    ["x22", "0", "-x02"],
    ["0", "x02", "-x01"],
    ["0", "x12", "-x11"],
    ["0", "x22", "-x12"],
];

pub const ODD_Y_LABELS: [&str; 8] = ["Y00", "Y01", "Y10", "Y11", "Y12", "Y20", "Y21", "Y22"];

/// Top blocks of the odd third differential: 6 columns K_1..K_6 with eight
/// entries in the W coordinates.
pub static ODD_K_TOP: [[&[HTermSpec]; 8]; 6] = [
    [
        &[],
        &[],
        &[],
        &[(I, "x00", false)],
        &[],
        &[],
        &[(IV, "1", true)],
        &[(III, "1", true)],
    ],
    [
        &[],
        &[],
        &[(I, "x00", false)],
        &[],
        &[(III, "1", true)],
        &[(IV, "1", true)],
        &[(I, "x11", false)],
        &[(II, "1", false)],
    ],
    [
        &[(I, "x00", true)],
        &[(IV, "1", true)],
        &[],
        &[(III, "1", true)],
        &[],
        &[(III, "1", false)],
        &[(II, "1", false)],
        &[(I, "x22", false)],
    ],
    [
        &[],
        &[],
        &[(IV, "1", true)],
        &[(I, "x11", true)],
        &[(II, "1", false)],
        &[(I, "x11", false)],
        &[],
        &[],
    ],
    [
        &[(IV, "1", true)],
        &[(I, "x11", true)],
        &[(III, "1", false)],
        &[(II, "1", false)],
        &[(I, "x22", true)],
        &[],
        &[],
        &[],
    ],
    [
        &[(III, "1", false)],
        &[(II, "1", false)],
        &[],
        &[],
        &[],
        &[(I, "x22", true)],
        &[],
        &[],
    ],
];

/// Linear tails of the K columns in the V coordinates.
pub static ODD_L: [[&str; 8]; 6] = [
    ["x02", "0", "-x01", "0", "0", "x00", "0", "0"],
    ["x12", "x02", "-x11", "-x01", "0", "x01", "x00", "0"],
    ["x22", "0", "-x12", "x02", "-x01", "0", "0", "x00"],
    ["0", "x12", "0", "-x11", "0", "0", "x01", "0"],
    ["0", "x22", "0", "0", "-x11", "-x12", "x02", "x01"],
    ["0", "0", "0", "x22", "-x12", "-x22", "0", "x02"],
];

/// Quadratic tail of the last odd differential: the minors up to sign.
pub static ODD_J_PRIME: [&str; 6] = [
    "x12^2 - x11*x22",
    "-x02*x12 + x01*x22",
    "x11*x02 - x01*x12",
    "x02^2 - x00*x22",
    "-x01*x02 + x00*x12",
    "x01^2 - x00*x11",
];

/// Top block of the last odd differential; the three rows are -F_0, F_1, -F_2.
pub static ODD_J_TOP: [&[HTermSpec]; 3] = [
    &[
        (I, "x00*x12", true),
        (II, "x00", true),
        (III, "x01", true),
        (IV, "x02", true),
    ],
    &[
        (I, "x11*x02", false),
        (II, "x01", false),
        (III, "x11", false),
        (IV, "x12", false),
    ],
    &[
        (I, "x01*x22", true),
        (II, "x02", true),
        (III, "x12", true),
        (IV, "x22", true),
    ],
];

/// Evaluates an entry template at concrete lift parts h_I..h_IV.
pub fn instantiate_h_entry<K: Field>(
    field: &K,
    h: &[Polynomial<K>; 4],
    spec: &[HTermSpec],
) -> Polynomial<K> {
    let mut acc = Polynomial::zero(field.clone(), RingId::Ambient);
    for &(class, mult, negated) in spec {
        let mult = parse_poly(mult, RingId::Ambient, field.clone()).expect("static multiplier");
        let term = mult.mul_ref(&h[class.index()]);
        acc = if negated {
            acc.sub_ref(&term)
        } else {
            acc.add_ref(&term)
        };
    }
    acc
}

/// Resolution of the ideal of an even-degree curve d = 2m. The Veronese
/// block sits first in every module; the curve block is the Veronese
/// resolution shifted by m, glued along multiplication by the lift F with
/// alternating signs.
pub fn build_even<K: Field>(
    f: &Polynomial<K>,
    attest_irreducible: bool,
) -> Result<ResolutionComplex<K>, BuildError> {
    let el = lift_even(f)?;
    let m = el.half_degree;
    let field = f.field().clone();
    let zero = || Polynomial::zero(field.clone(), RingId::Ambient);
    let big_f = el.lift.clone();
    let neg_f = big_f.neg_ref();
    let w = parse_table(&field, &VERONESE_D2);
    let g = parse_table(&field, &VERONESE_D3);
    let deltas = minors(field.clone()).deltas;

    let e0 = GradedFreeModule::new(vec![0]);
    let e1 = GradedFreeModule::from_blocks(&[(2, 6), (m, 1)]);
    let e2 = GradedFreeModule::from_blocks(&[(3, 8), (m + 2, 6)]);
    let e3 = GradedFreeModule::from_blocks(&[(4, 3), (m + 3, 8)]);
    let e4 = GradedFreeModule::from_blocks(&[(m + 4, 3)]);

    let mut row = deltas.clone();
    row.push(big_f.clone());
    let d1 = GradedMatrix::new(1, e1.clone(), e0.clone(), vec![row])?;

    let mut ent = vec![vec![zero(); 14]; 7];
    for r in 0..6 {
        for c in 0..8 {
            ent[r][c] = w[r][c].clone();
        }
    }
    for c in 0..6 {
        ent[c][8 + c] = neg_f.clone();
        ent[6][8 + c] = deltas[c].clone();
    }
    let d2 = GradedMatrix::new(2, e2.clone(), e1.clone(), ent)?;

    let mut ent = vec![vec![zero(); 11]; 14];
    for r in 0..8 {
        for c in 0..3 {
            ent[r][c] = g[r][c].clone();
        }
    }
    for c in 0..8 {
        ent[c][3 + c] = big_f.clone();
        for r in 0..6 {
            ent[8 + r][3 + c] = w[r][c].clone();
        }
    }
    let d3 = GradedMatrix::new(3, e3.clone(), e2.clone(), ent)?;

    let mut ent = vec![vec![zero(); 3]; 11];
    for c in 0..3 {
        ent[c][c] = neg_f.clone();
        for r in 0..8 {
            ent[3 + r][c] = g[r][c].clone();
        }
    }
    let d4 = GradedMatrix::new(4, e4.clone(), e3.clone(), ent)?;

    let provenance = Provenance::Curve {
        f: f.clone(),
        degree: 2 * m,
        parity: Parity::Even,
        attested_irreducible: attest_irreducible,
        lift: LiftData::Even(el),
    };
    Ok(ResolutionComplex::new(
        vec![e0, e1, e2, e3, e4],
        vec![d1, d2, d3, d4],
        provenance,
    ))
}

/// Resolution of the ideal of an odd-degree curve d = 2m - 1, m >= 2.
pub fn build_odd<K: Field>(
    f: &Polynomial<K>,
    attest_irreducible: bool,
) -> Result<ResolutionComplex<K>, BuildError> {
    let ol = lift_odd(f)?;
    let m = ol.half_degree;
    let field = f.field().clone();
    let zero = || Polynomial::zero(field.clone(), RingId::Ambient);
    let w = parse_table(&field, &VERONESE_D2);
    let g = parse_table(&field, &VERONESE_D3);
    let y = parse_table(&field, &ODD_Y);
    let l = parse_table(&field, &ODD_L);
    let deltas = minors(field.clone()).deltas;

    let e0 = GradedFreeModule::new(vec![0]);
    let e1 = GradedFreeModule::from_blocks(&[(2, 6), (m, 3)]);
    let e2 = GradedFreeModule::from_blocks(&[(3, 8), (m + 1, 8)]);
    let e3 = GradedFreeModule::from_blocks(&[(4, 3), (m + 2, 6)]);
    let e4 = GradedFreeModule::from_blocks(&[(m + 4, 1)]);

    let mut row = deltas;
    row.extend(ol.f_lifts.iter().cloned());
    let d1 = GradedMatrix::new(1, e1.clone(), e0.clone(), vec![row])?;

    let mut ent = vec![vec![zero(); 16]; 9];
    for r in 0..6 {
        for c in 0..8 {
            ent[r][c] = w[r][c].clone();
        }
    }
    for c in 0..8 {
        for r in 0..6 {
            ent[r][8 + c] = instantiate_h_entry(&field, &ol.h, ODD_V_TOP[c][r]);
        }
        for r in 0..3 {
            ent[6 + r][8 + c] = y[c][r].clone();
        }
    }
    let d2 = GradedMatrix::new(2, e2.clone(), e1.clone(), ent)?;

    let mut ent = vec![vec![zero(); 9]; 16];
    for r in 0..8 {
        for c in 0..3 {
            ent[r][c] = g[r][c].clone();
        }
    }
    for c in 0..6 {
        for r in 0..8 {
            ent[r][3 + c] = instantiate_h_entry(&field, &ol.h, ODD_K_TOP[c][r]);
            ent[8 + r][3 + c] = l[c][r].clone();
        }
    }
    let d3 = GradedMatrix::new(3, e3.clone(), e2.clone(), ent)?;

    let mut ent = vec![vec![zero(); 1]; 9];
    for r in 0..3 {
        ent[r][0] = instantiate_h_entry(&field, &ol.h, ODD_J_TOP[r]);
    }
    for r in 0..6 {
        ent[3 + r][0] =
            parse_poly(ODD_J_PRIME[r], RingId::Ambient, field.clone()).expect("static tail table");
    }
    let d4 = GradedMatrix::new(4, e4.clone(), e3.clone(), ent)?;

    let provenance = Provenance::Curve {
        f: f.clone(),
        degree: 2 * m - 1,
        parity: Parity::Odd,
        attested_irreducible: attest_irreducible,
        lift: LiftData::Odd(ol),
    };
    Ok(ResolutionComplex::new(
        vec![e0, e1, e2, e3, e4],
        vec![d1, d2, d3, d4],
        provenance,
    ))
}

/// Names of the labeled column/row families inside the curve resolutions.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BlockName {
    U,
    WPrime,
    H,
    GPrime,
    V,
    Y,
    K,
    L,
    J,
    JPrime,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LabeledBlock<K: Field> {
    pub label: String,
    pub entries: Vec<Polynomial<K>>,
}

fn columns<K: Field>(
    m: &GradedMatrix<K>,
    range: std::ops::Range<usize>,
    rows: Option<std::ops::Range<usize>>,
    labels: impl Fn(usize) -> String,
) -> Vec<LabeledBlock<K>> {
    range
        .clone()
        .map(|c| {
            let full = m.column(c);
            let entries = match &rows {
                Some(r) => full[r.clone()].to_vec(),
                None => full,
            };
            LabeledBlock {
                label: labels(c - range.start),
                entries,
            }
        })
        .collect()
}

/// Returns a named vector family as slices of the stored differentials.
pub fn blocks<K: Field>(
    c: &ResolutionComplex<K>,
    name: BlockName,
) -> Result<Vec<LabeledBlock<K>>, BuildError> {
    let parity = match c.provenance.parity() {
        Some(p) => p,
        None => return Err(BuildError::BlockUnavailable(name)),
    };
    let minor_label = |i: usize| {
        let (a, b) = crate::veronese::MINOR_INDICES[i];
        format!("{a}{b}")
    };
    match (parity, name) {
        (_, BlockName::WPrime) => Ok(columns(c.differential(2), 0..8, None, |i| {
            format!("W'{}", i + 1)
        })),
        (_, BlockName::GPrime) => Ok(columns(c.differential(3), 0..3, None, |i| {
            format!("G'{}", i + 1)
        })),
        (Parity::Even, BlockName::U) => Ok(columns(c.differential(2), 8..14, None, |i| {
            format!("U{}", minor_label(i))
        })),
        (Parity::Even, BlockName::H) => Ok(columns(c.differential(3), 3..11, None, |i| {
            format!("H{}", i + 1)
        })),
        (Parity::Odd, BlockName::V) => Ok(columns(c.differential(2), 8..16, None, |i| {
            format!("V{}", i + 1)
        })),
        (Parity::Odd, BlockName::Y) => Ok(columns(c.differential(2), 8..16, Some(6..9), |i| {
            ODD_Y_LABELS[i].to_string()
        })),
        (Parity::Odd, BlockName::K) => Ok(columns(c.differential(3), 3..9, None, |i| {
            format!("K{}", i + 1)
        })),
        (Parity::Odd, BlockName::L) => Ok(columns(c.differential(3), 3..9, Some(8..16), |i| {
            format!("L{}", i + 1)
        })),
        (Parity::Odd, BlockName::J) => {
            Ok(columns(c.differential(4), 0..1, None, |_| "J".to_string()))
        }
        (Parity::Odd, BlockName::JPrime) => {
            Ok(columns(c.differential(4), 0..1, Some(3..9), |_| {
                "J'".to_string()
            }))
        }
        _ => Err(BuildError::BlockUnavailable(name)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::verify::{check_complex, check_minimal, ComplexCheck, MinimalityCheck};

    fn pc(text: &str) -> Polynomial<Rationals> {
        parse_poly(text, RingId::Curve, Rationals).unwrap()
    }

    fn pa(text: &str) -> Polynomial<Rationals> {
        parse_poly(text, RingId::Ambient, Rationals).unwrap()
    }

    #[test]
    fn conic_first_differential() {
        let c = build_even(&pc("x0*x1"), true).unwrap();
        let d1 = c.differential(1);
        assert_eq!(d1.cols(), 7);
        assert_eq!(d1.entry(0, 6), &pa("x01"));
        let betti = c.betti_table();
        for (key, count) in [
            ((0usize, 0u32), 1usize),
            ((1, 1), 1),
            ((1, 2), 6),
            ((2, 3), 14),
            ((3, 4), 11),
            ((4, 5), 3),
        ] {
            assert_eq!(betti.get(key.0, key.1), count, "betti {key:?}");
        }
    }

    #[test]
    fn quartic_module_twists() {
        let c = build_even(&pc("x0^4 + x1^4 + x2^4"), true).unwrap();
        assert_eq!(c.modules[3].twists(), &[4, 4, 4, 5, 5, 5, 5, 5, 5, 5, 5]);
        assert_eq!(c.modules[1].rank(), 7);
        assert_eq!(c.modules[4].rank(), 3);
        let betti = c.betti_table();
        for (key, count) in [
            ((0usize, 0u32), 1usize),
            ((1, 2), 7),
            ((2, 3), 8),
            ((2, 4), 6),
            ((3, 4), 3),
            ((3, 5), 8),
            ((4, 6), 3),
        ] {
            assert_eq!(betti.get(key.0, key.1), count, "betti {key:?}");
        }
    }

    #[test]
    fn even_complex_composes_to_zero() {
        for f in [
            "x0*x1",
            "x0^2 + x1*x2",
            "x0^4 + x1^4 + x2^4 + x0*x1*x2^2",
            "x0^6 - x1^5*x2 + x2^6",
        ] {
            let c = build_even(&pc(f), true).unwrap();
            assert!(
                matches!(check_complex(&c).unwrap(), ComplexCheck::Pass),
                "f = {f}"
            );
            assert!(
                matches!(check_minimal(&c), MinimalityCheck::Pass),
                "f = {f}"
            );
        }
    }

    #[test]
    fn odd_complex_composes_to_zero() {
        for f in [
            "x0^3 + x1^3 + x2^3",
            "x0^3 + x1^3 + x2^3 + x0*x1*x2",
            "x0^5 + x0*x1*x2^3 - x1^5 + x2^5",
            "x0^7 + x1^7 + x2^7 + x0^3*x1^3*x2",
        ] {
            let c = build_odd(&pc(f), true).unwrap();
            assert!(
                matches!(check_complex(&c).unwrap(), ComplexCheck::Pass),
                "f = {f}"
            );
            assert!(
                matches!(check_minimal(&c), MinimalityCheck::Pass),
                "f = {f}"
            );
        }
    }

    #[test]
    fn cubic_betti_table() {
        let c = build_odd(&pc("x0^3 + x1^3 + x2^3"), true).unwrap();
        let betti = c.betti_table();
        for (key, count) in [
            ((0usize, 0u32), 1usize),
            ((1, 2), 9),
            ((2, 3), 16),
            ((3, 4), 9),
            ((4, 6), 1),
        ] {
            assert_eq!(betti.get(key.0, key.1), count, "betti {key:?}");
        }
        assert_eq!(c.modules[1].rank(), 9);
        assert_eq!(c.modules[4].rank(), 1);
    }

    #[test]
    fn triangle_j_column() {
        // h_I = 1 and the others vanish, so J reads off the signed lift multipliers
        let c = build_odd(&pc("x0*x1*x2"), true).unwrap();
        let j = blocks(&c, BlockName::J).unwrap();
        assert_eq!(j.len(), 1);
        assert_eq!(j[0].entries[0], pa("-x00*x12"));
        assert_eq!(j[0].entries[1], pa("x11*x02"));
        assert_eq!(j[0].entries[2], pa("-x01*x22"));
        let jp = blocks(&c, BlockName::JPrime).unwrap();
        assert_eq!(jp[0].entries[0], pa("x12^2 - x11*x22"));
        assert_eq!(jp[0].entries.len(), 6);
    }

    #[test]
    fn even_u_columns() {
        let c = build_even(&pc("x0^4 + x1^4 + x2^4"), true).unwrap();
        let us = blocks(&c, BlockName::U).unwrap();
        assert_eq!(us.len(), 6);
        let f_lift = pa("x00^2 + x11^2 + x22^2");
        for (i, u) in us.iter().enumerate() {
            assert_eq!(u.entries.len(), 7);
            assert_eq!(u.entries[i], f_lift.neg_ref());
            assert_eq!(u.entries[6], minors(Rationals).deltas[i]);
        }
        assert_eq!(us[0].label, "U00");
        assert_eq!(us[5].label, "U22");

        let hs = blocks(&c, BlockName::H).unwrap();
        assert_eq!(hs.len(), 8);
        for (i, h) in hs.iter().enumerate() {
            assert_eq!(h.entries[i], f_lift);
        }
    }

    #[test]
    fn odd_y_tails() {
        let c = build_odd(&pc("x0^3 + x1^3 + x2^3"), true).unwrap();
        let ys = blocks(&c, BlockName::Y).unwrap();
        assert_eq!(ys.len(), 8);
        assert_eq!(ys[0].label, "Y00");
        assert_eq!(ys[0].entries, vec![pa("x01"), pa("-x00"), pa("0")]);
        assert_eq!(ys[7].label, "Y22");
    }

    #[test]
    fn parity_mismatch_blocks_error() {
        let even = build_even(&pc("x0*x1"), true).unwrap();
        assert!(blocks(&even, BlockName::V).is_err());
        let odd = build_odd(&pc("x0^3 + x1^3 + x2^3"), true).unwrap();
        assert!(blocks(&odd, BlockName::U).is_err());
        assert!(blocks(&odd, BlockName::WPrime).is_ok());
    }

    #[test]
    fn lower_left_blocks_vanish() {
        let c = build_odd(&pc("x0^3 + x1^3 + x2^3 + x0*x1*x2"), true).unwrap();
        let d2 = c.differential(2);
        for r in 6..9 {
            for col in 0..8 {
                assert!(d2.entry(r, col).is_zero());
            }
        }
        let d3 = c.differential(3);
        for r in 8..16 {
            for col in 0..3 {
                assert!(d3.entry(r, col).is_zero());
            }
        }
    }

    #[test]
    fn wrong_parity_rejected() {
        assert!(matches!(
            build_even(&pc("x0^3"), true),
            Err(BuildError::Lift(_))
        ));
        assert!(matches!(
            build_odd(&pc("x0^2"), true),
            Err(BuildError::Lift(_))
        ));
        assert!(matches!(
            build_odd(&pc("x0"), true),
            Err(BuildError::Lift(LiftError::DegreeTooSmall(1)))
        ));
    }
}
