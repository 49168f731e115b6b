//! Graded free modules, graded matrices and resolution complexes over the
//! six-variable ring S.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::field::{Field, FieldError, PrimeField, Rationals};
use crate::lift::{EvenLift, OddLift, Parity};
use crate::poly::Polynomial;
use crate::ring::{binomial, RingId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("entry ({row},{col}) of differential {position} must be zero or homogeneous of degree {expected}")]
    BadEntryDegree {
        position: usize,
        row: usize,
        col: usize,
        expected: i64,
    },
    #[error(
        "differential {position} has shape {rows}x{cols}, expected {expect_rows}x{expect_cols}"
    )]
    ShapeMismatch {
        position: usize,
        rows: usize,
        cols: usize,
        expect_rows: usize,
        expect_cols: usize,
    },
    #[error("matrix entries must live in the AMBIENT ring")]
    WrongRing,
}

/// A direct sum of twists of S: twists `[a_0, a_1, ...]` is `(+)_j S(-a_j)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedFreeModule {
    twists: Vec<u32>,
}

impl GradedFreeModule {
    pub fn new(twists: Vec<u32>) -> Self {
        GradedFreeModule { twists }
    }

    /// `count` copies of S(-a), then `count2` copies of S(-a2), and so on.
    pub fn from_blocks(blocks: &[(u32, usize)]) -> Self {
        let mut twists = Vec::new();
        for &(a, count) in blocks {
            twists.extend(std::iter::repeat(a).take(count));
        }
        GradedFreeModule { twists }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn twists(&self) -> &[u32] {
        &self.twists
    }

    /// Dimension of the degree-n graded piece over the six-variable ring:
    /// sum_j C(n - a_j + 5, 5).
    pub fn graded_dim(&self, n: i64) -> u64 {
        self.twists
            .iter()
            .map(|&a| {
                let k = n - a as i64;
                if k < 0 {
                    0
                } else {
                    binomial(k as u64 + 5, 5)
                }
            })
            .sum()
    }
}

/// A matrix of ambient polynomials between graded free modules, acting on
/// column vectors. Entry (r, c) is zero or homogeneous of degree
/// `source.twists[c] - target.twists[r]`.
#[derive(Clone, PartialEq, Debug)]
pub struct GradedMatrix<K: Field> {
    pub source: GradedFreeModule,
    pub target: GradedFreeModule,
    entries: Vec<Vec<Polynomial<K>>>,
}

impl<K: Field> GradedMatrix<K> {
    pub fn new(
        position: usize,
        source: GradedFreeModule,
        target: GradedFreeModule,
        entries: Vec<Vec<Polynomial<K>>>,
    ) -> Result<Self, ComplexError> {
        if entries.len() != target.rank() || entries.iter().any(|r| r.len() != source.rank()) {
            return Err(ComplexError::ShapeMismatch {
                position,
                rows: entries.len(),
                cols: entries.first().map_or(0, |r| r.len()),
                expect_rows: target.rank(),
                expect_cols: source.rank(),
            });
        }
        for (r, row) in entries.iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                if e.ring() != RingId::Ambient {
                    return Err(ComplexError::WrongRing);
                }
                let expected = source.twists()[c] as i64 - target.twists()[r] as i64;
                if !e.homogeneous_degree().fits_degree(expected) {
                    return Err(ComplexError::BadEntryDegree {
                        position,
                        row: r,
                        col: c,
                        expected,
                    });
                }
            }
        }
        Ok(GradedMatrix {
            source,
            target,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.target.rank()
    }

    pub fn cols(&self) -> usize {
        self.source.rank()
    }

    pub fn entry(&self, r: usize, c: usize) -> &Polynomial<K> {
        &self.entries[r][c]
    }

    pub fn entries(&self) -> &[Vec<Polynomial<K>>] {
        &self.entries
    }

    pub fn column(&self, c: usize) -> Vec<Polynomial<K>> {
        (0..self.rows())
            .map(|r| self.entries[r][c].clone())
            .collect()
    }

    /// Matrix product; shapes must chain.
    pub fn compose(&self, next: &GradedMatrix<K>) -> Vec<Vec<Polynomial<K>>> {
        assert_eq!(self.cols(), next.rows(), "composition shape mismatch");
        let field = self
            .entries
            .first()
            .and_then(|r| r.first())
            .map(|p| p.field().clone())
            .expect("nonempty matrix");
        (0..self.rows())
            .map(|r| {
                (0..next.cols())
                    .map(|c| {
                        let mut acc = Polynomial::zero(field.clone(), RingId::Ambient);
                        for k in 0..self.cols() {
                            let a = &self.entries[r][k];
                            let b = next.entry(k, c);
                            if !a.is_zero() && !b.is_zero() {
                                acc = acc.add_ref(&a.mul_ref(b));
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    }
}

/// Counts of S(-j) summands per homological index, merged by degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, u32), usize>,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: u32) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((i, j), count) in &self.entries {
            writeln!(f, "({i},{j}): {count}")?;
        }
        Ok(())
    }
}

/// Where a complex came from; carries the curve data needed by the checks.
#[derive(Clone, Debug)]
pub enum Provenance<K: Field> {
    /// The fixed resolution of the Veronese surface itself.
    Veronese,
    Curve {
        f: Polynomial<K>,
        degree: u32,
        parity: Parity,
        attested_irreducible: bool,
        lift: LiftData<K>,
    },
}

#[derive(Clone, Debug)]
pub enum LiftData<K: Field> {
    Even(EvenLift<K>),
    Odd(OddLift<K>),
}

impl<K: Field> Provenance<K> {
    pub fn parity(&self) -> Option<Parity> {
        match self {
            Provenance::Veronese => None,
            Provenance::Curve { parity, .. } => Some(*parity),
        }
    }

    pub fn curve(&self) -> Option<(&Polynomial<K>, u32)> {
        match self {
            Provenance::Veronese => None,
            Provenance::Curve { f, degree, .. } => Some((f, *degree)),
        }
    }
}

/// A chain E_n -> ... -> E_1 -> E_0 = S of graded free modules with
/// differentials d_i : E_i -> E_{i-1}.
#[derive(Clone, Debug)]
pub struct ResolutionComplex<K: Field> {
    pub modules: Vec<GradedFreeModule>,
    pub differentials: Vec<GradedMatrix<K>>,
    pub provenance: Provenance<K>,
}

impl<K: Field> ResolutionComplex<K> {
    pub fn new(
        modules: Vec<GradedFreeModule>,
        differentials: Vec<GradedMatrix<K>>,
        provenance: Provenance<K>,
    ) -> Self {
        assert_eq!(modules.len(), differentials.len() + 1);
        for (i, d) in differentials.iter().enumerate() {
            assert_eq!(
                d.source,
                modules[i + 1],
                "differential {} source mismatch",
                i + 1
            );
            assert_eq!(
                d.target,
                modules[i],
                "differential {} target mismatch",
                i + 1
            );
        }
        ResolutionComplex {
            modules,
            differentials,
            provenance,
        }
    }

    pub fn len(&self) -> usize {
        self.differentials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.differentials.is_empty()
    }

    /// d_i for i in 1..=len().
    pub fn differential(&self, i: usize) -> &GradedMatrix<K> {
        &self.differentials[i - 1]
    }

    pub fn field(&self) -> &K {
        self.differentials[0].entry(0, 0).field()
    }

    pub fn betti_table(&self) -> BettiTable {
        let mut entries = BTreeMap::new();
        for (i, module) in self.modules.iter().enumerate() {
            for &a in module.twists() {
                *entries.entry((i, a)).or_insert(0) += 1;
            }
        }
        BettiTable { entries }
    }

    /// Replaces one differential entry without any validation. Intended for
    /// mutation testing of the verification suite.
    pub fn mutate_entry(
        &self,
        position: usize,
        row: usize,
        col: usize,
        value: Polynomial<K>,
    ) -> Self {
        let mut out = self.clone();
        out.differentials[position - 1].entries[row][col] = value;
        out
    }
}

impl ResolutionComplex<Rationals> {
    /// Reduces every coefficient into F_p for rank-based verification.
    pub fn to_prime_field(
        &self,
        fp: &PrimeField,
    ) -> Result<ResolutionComplex<PrimeField>, FieldError> {
        let mut differentials = Vec::with_capacity(self.differentials.len());
        for d in &self.differentials {
            let mut entries = Vec::with_capacity(d.rows());
            for row in d.entries() {
                let mapped: Result<Vec<_>, _> = row.iter().map(|e| e.to_prime_field(fp)).collect();
                entries.push(mapped?);
            }
            differentials.push(GradedMatrix {
                source: d.source.clone(),
                target: d.target.clone(),
                entries,
            });
        }
        let provenance = match &self.provenance {
            Provenance::Veronese => Provenance::Veronese,
            Provenance::Curve {
                f,
                degree,
                parity,
                attested_irreducible,
                lift,
            } => Provenance::Curve {
                f: f.to_prime_field(fp)?,
                degree: *degree,
                parity: *parity,
                attested_irreducible: *attested_irreducible,
                lift: match lift {
                    LiftData::Even(el) => LiftData::Even(EvenLift {
                        lift: el.lift.to_prime_field(fp)?,
                        half_degree: el.half_degree,
                    }),
                    LiftData::Odd(ol) => LiftData::Odd(OddLift {
                        h: [
                            ol.h[0].to_prime_field(fp)?,
                            ol.h[1].to_prime_field(fp)?,
                            ol.h[2].to_prime_field(fp)?,
                            ol.h[3].to_prime_field(fp)?,
                        ],
                        f_lifts: [
                            ol.f_lifts[0].to_prime_field(fp)?,
                            ol.f_lifts[1].to_prime_field(fp)?,
                            ol.f_lifts[2].to_prime_field(fp)?,
                        ],
                        half_degree: ol.half_degree,
                    }),
                },
            },
        };
        Ok(ResolutionComplex {
            modules: self.modules.clone(),
            differentials,
            provenance,
        })
    }
}
