//! Seeded random curve generation for the test corpus.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::Field;
use crate::lift::LiftError;
use crate::poly::Polynomial;
use crate::ring::{graded_basis, RingId};

/// Deterministic dense homogeneous degree-d polynomial. The corner
/// coefficients of x0^d, x1^d, x2^d are forced nonzero as a cheap bias
/// toward irreducibility; everything else is sampled freely, so terms may
/// drop out.
pub fn random_curve<K: Field>(field: K, d: u32, seed: u64) -> Result<Polynomial<K>, LiftError> {
    if d < 2 {
        return Err(LiftError::DegreeTooSmall(d));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = Polynomial::zero(field.clone(), RingId::Curve);
    for m in graded_basis(RingId::Curve, d as i64) {
        let e = m.exponents();
        let corner = e.iter().any(|&x| x as u32 == d);
        let c = if corner {
            field.random_nonzero(&mut rng)
        } else {
            field.random_elem(&mut rng)
        };
        f.add_term(m, c);
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::Homogeneity;
    use crate::ring::Monomial;

    #[test]
    fn deterministic_per_seed() {
        let fp = PrimeField::new(32003).unwrap();
        let a = random_curve(fp, 4, 1).unwrap();
        let b = random_curve(fp, 4, 1).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, random_curve(fp, 4, 2).unwrap());
    }

    #[test]
    fn homogeneous_with_nonzero_corners() {
        let fp = PrimeField::new(32003).unwrap();
        for seed in 0..20 {
            for d in [2u32, 3, 5, 8] {
                let f = random_curve(fp, d, seed).unwrap();
                assert_eq!(f.homogeneous_degree(), Homogeneity::Homogeneous(d));
                assert!(f.num_terms() as u64 <= crate::ring::basis_size(RingId::Curve, d as i64));
                for corner in [[d as u8, 0, 0], [0, d as u8, 0], [0, 0, d as u8]] {
                    assert!(!fp.is_zero(&f.coeff(&Monomial::from_exponents(&corner))));
                }
            }
        }
    }

    #[test]
    fn rational_curves_work_too() {
        let f = random_curve(Rationals, 3, 7).unwrap();
        assert_eq!(f.homogeneous_degree(), Homogeneity::Homogeneous(3));
    }

    #[test]
    fn degree_below_two_rejected() {
        assert!(random_curve(Rationals, 1, 1).is_err());
        assert!(random_curve(Rationals, 0, 1).is_err());
    }
}
