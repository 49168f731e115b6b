//! The quadratic Veronese ring map, the six minor generators and the fixed
//! resolution of the Veronese surface in P^5.
//!
//! theta sends x_ij to x_i * x_j. Its kernel is generated by the six 2x2
//! minors of the generic symmetric 3x3 matrix in the x_ij.

use crate::complex::{GradedFreeModule, GradedMatrix, Provenance, ResolutionComplex};
use crate::field::Field;
use crate::parse::parse_poly;
use crate::poly::{PolyError, Polynomial};
use crate::ring::{Monomial, RingId};

/// Index pairs of the six minors, in the fixed order 00, 01, 02, 11, 12, 22.
pub const MINOR_INDICES: [(u8, u8); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

/// The six minors: entry ij is the 2x2 minor complementary to slot (i, j).
pub const MINOR_TEXTS: [&str; 6] = [
    "x11*x22 - x12^2",
    "x01*x22 - x12*x02",
    "x01*x12 - x02*x11",
    "x00*x22 - x02^2",
    "x00*x12 - x02*x01",
    "x00*x11 - x01^2",
];

/// Entries of the second differential of the Veronese resolution, 6 rows
/// (minor coordinates) by 8 columns (the linear syzygies W_1..W_8).
pub const VERONESE_D2: [[&str; 8]; 6] = [
    ["x02", "0", "x01", "0", "0", "x00", "0", "0"],
    ["-x12", "x02", "-x11", "x01", "0", "0", "x00", "0"],
    ["x22", "0", "x12", "x02", "x01", "x02", "0", "x00"],
    ["0", "-x12", "0", "-x11", "0", "-x11", "-x01", "0"],
    ["0", "x22", "0", "0", "-x11", "x12", "x02", "-x01"],
    ["0", "0", "0", "x22", "x12", "0", "0", "x02"],
];

/// Entries of the third differential, 8 rows by 3 columns (G_1..G_3).
pub const VERONESE_D3: [[&str; 3]; 8] = [
    ["x01", "x00", "0"],
    ["-x11", "-x01", "0"],
    ["-x02", "0", "x00"],
    ["x12", "x02", "0"],
    ["-x22", "0", "x02"],
    ["0", "-x02", "-x01"],
    ["0", "x12", "x11"],
    ["0", "-x22", "-x12"],
];

/// Applies the ring map theta(x_ij) = x_i x_j to an ambient polynomial.
pub fn theta<K: Field>(g: &Polynomial<K>) -> Result<Polynomial<K>, PolyError> {
    if g.ring() != RingId::Ambient {
        return Err(PolyError::WrongRing {
            expected: RingId::Ambient,
            found: g.ring(),
        });
    }
    let mut out = Polynomial::zero(g.field().clone(), RingId::Curve);
    for (m, c) in g.terms() {
        let e = m.exponents();
        // exponent of x_i in the image: sum over pairs containing i
        let e0 = 2 * e[0] as u16 + e[1] as u16 + e[2] as u16;
        let e1 = e[1] as u16 + 2 * e[3] as u16 + e[4] as u16;
        let e2 = e[2] as u16 + e[4] as u16 + 2 * e[5] as u16;
        let exps = [
            u8::try_from(e0).expect("degree overflow"),
            u8::try_from(e1).expect("degree overflow"),
            u8::try_from(e2).expect("degree overflow"),
        ];
        out.add_term(Monomial::from_exponents(&exps), c.clone());
    }
    Ok(out)
}

/// The six minor generators of ker(theta).
#[derive(Clone, Debug, PartialEq)]
pub struct MinorSet<K: Field> {
    pub deltas: Vec<Polynomial<K>>,
}

impl<K: Field> MinorSet<K> {
    /// Minor for the index pair (i, j), 0 <= i <= j <= 2.
    pub fn get(&self, i: u8, j: u8) -> &Polynomial<K> {
        let pos = MINOR_INDICES
            .iter()
            .position(|&(a, b)| (a, b) == (i, j))
            .expect("minor index out of range");
        &self.deltas[pos]
    }
}

pub fn minors<K: Field>(field: K) -> MinorSet<K> {
    let deltas = MINOR_TEXTS
        .iter()
        .map(|t| parse_poly(t, RingId::Ambient, field.clone()).expect("static minor table"))
        .collect();
    MinorSet { deltas }
}

/// Parses a static entry table into a polynomial grid.
pub fn parse_table<K: Field, const C: usize, const R: usize>(
    field: &K,
    table: &[[&str; C]; R],
) -> Vec<Vec<Polynomial<K>>> {
    table
        .iter()
        .map(|row| {
            row.iter()
                .map(|t| {
                    parse_poly(t, RingId::Ambient, field.clone()).expect("static matrix table")
                })
                .collect()
        })
        .collect()
}

/// The minimal resolution of the homogeneous ideal of the Veronese surface:
/// S <- S(-2)^6 <- S(-3)^8 <- S(-4)^3 <- 0.
pub fn veronese_complex<K: Field>(field: K) -> ResolutionComplex<K> {
    let e0 = GradedFreeModule::new(vec![0]);
    let e1 = GradedFreeModule::from_blocks(&[(2, 6)]);
    let e2 = GradedFreeModule::from_blocks(&[(3, 8)]);
    let e3 = GradedFreeModule::from_blocks(&[(4, 3)]);

    let d1 = GradedMatrix::new(
        1,
        e1.clone(),
        e0.clone(),
        vec![minors(field.clone()).deltas],
    )
    .expect("static first differential");
    let d2 = GradedMatrix::new(2, e2.clone(), e1.clone(), parse_table(&field, &VERONESE_D2))
        .expect("static second differential");
    let d3 = GradedMatrix::new(3, e3.clone(), e2.clone(), parse_table(&field, &VERONESE_D3))
        .expect("static third differential");

    ResolutionComplex::new(vec![e0, e1, e2, e3], vec![d1, d2, d3], Provenance::Veronese)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use rand::RngCore;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pa(text: &str) -> Polynomial<Rationals> {
        parse_poly(text, RingId::Ambient, Rationals).unwrap()
    }

    fn pc(text: &str) -> Polynomial<Rationals> {
        parse_poly(text, RingId::Curve, Rationals).unwrap()
    }

    #[test]
    fn theta_on_generators() {
        assert_eq!(theta(&pa("x00")).unwrap(), pc("x0^2"));
        assert_eq!(theta(&pa("x01 + x12")).unwrap(), pc("x0*x1 + x1*x2"));
    }

    #[test]
    fn minors_span_the_kernel_generators() {
        let ms = minors(Rationals);
        assert_eq!(ms.deltas[0], pa("x11*x22 - x12^2"));
        assert_eq!(ms.deltas[5], pa("x00*x11 - x01^2"));
        assert_eq!(ms.get(1, 1), &pa("x00*x22 - x02^2"));
        for d in &ms.deltas {
            assert!(theta(d).unwrap().is_zero());
        }
    }

    #[test]
    fn minors_vanish_at_the_all_ones_point() {
        // the all-ones point is sigma(1,1,1); evaluating there is summing coefficients
        for d in minors(Rationals).deltas {
            let sum = d
                .terms()
                .fold(Rationals.zero(), |acc, (_, c)| Rationals.add(&acc, c));
            assert!(Rationals.is_zero(&sum));
        }
    }

    fn random_ambient(rng: &mut ChaCha8Rng, degree: i64) -> Polynomial<Rationals> {
        let mut p = Polynomial::zero(Rationals, RingId::Ambient);
        for m in crate::ring::graded_basis(RingId::Ambient, degree) {
            let c = (rng.next_u64() % 7) as i64 - 3;
            p.add_term(m, Rationals.from_i64(c));
        }
        p
    }

    #[test]
    fn theta_is_a_ring_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let dg = 1 + (rng.next_u64() % 2) as i64;
            let dh = 1 + (rng.next_u64() % 2) as i64;
            let g = random_ambient(&mut rng, dg);
            let h = random_ambient(&mut rng, dh);
            assert_eq!(
                theta(&g.mul_ref(&h)).unwrap(),
                theta(&g).unwrap().mul_ref(&theta(&h).unwrap())
            );
            if g.homogeneous_degree() == h.homogeneous_degree() {
                assert_eq!(
                    theta(&g.add_ref(&h)).unwrap(),
                    theta(&g).unwrap().add_ref(&theta(&h).unwrap())
                );
            }
        }
    }

    #[test]
    fn theta_doubles_degree() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..4i64 {
            for _ in 0..50 {
                let g = random_ambient(&mut rng, n);
                let img = theta(&g).unwrap();
                match img.homogeneous_degree() {
                    crate::poly::Homogeneity::Zero => {}
                    crate::poly::Homogeneity::Homogeneous(d) => assert_eq!(d as i64, 2 * n),
                    crate::poly::Homogeneity::Inhomogeneous => panic!("theta broke homogeneity"),
                }
            }
        }
        // image of a monomial basis lands in even degrees
        for m in crate::ring::graded_basis(RingId::Ambient, 3) {
            let img = theta(&Polynomial::monomial(
                Rationals,
                RingId::Ambient,
                m,
                Rationals.one(),
            ))
            .unwrap();
            let (mono, _) = img.leading().unwrap();
            assert_eq!(mono.degree(), 6);
        }
    }

    #[test]
    fn theta_requires_ambient() {
        assert!(theta(&pc("x0")).is_err());
    }
}
