//! Generic dense linear algebra over any coefficient field, and the
//! brute-force syzygy oracle built on it.
//!
//! This path favors clarity over speed; the degree-sliced F_p engine in
//! `rank` handles the large verification workloads.

use thiserror::Error;

use crate::field::Field;
use crate::poly::{Homogeneity, Polynomial};
use crate::ring::graded_basis;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("generators must be nonzero and homogeneous")]
    BadGenerator,
    #[error("generators must share one ring and field")]
    MixedGenerators,
    #[error("no generators given")]
    Empty,
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("linear system is underdetermined")]
    Underdetermined,
    #[error("component polynomials do not share a degree")]
    MixedDegrees,
}

/// Dense row-major matrix over a field.
pub struct DenseMat<K: Field> {
    pub field: K,
    pub rows: usize,
    pub cols: usize,
    data: Vec<K::Elem>,
}

impl<K: Field> DenseMat<K> {
    pub fn zeros(field: K, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        DenseMat {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &K::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: K::Elem) {
        self.data[r * self.cols + c] = v;
    }

    /// In-place reduced row echelon form with deterministic pivoting (first
    /// nonzero row per column, columns left to right). Returns the pivot
    /// list as (row, col) pairs.
    pub fn rref(&mut self) -> Vec<(usize, usize)> {
        let field = self.field.clone();
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..self.cols {
            let Some(pr) = (next_row..self.rows).find(|&r| !field.is_zero(self.get(r, col))) else {
                continue;
            };
            if pr != next_row {
                for c in 0..self.cols {
                    self.data.swap(pr * self.cols + c, next_row * self.cols + c);
                }
            }
            let inv = field.inv(self.get(next_row, col)).expect("nonzero pivot");
            for c in col..self.cols {
                let v = field.mul(self.get(next_row, c), &inv);
                self.set(next_row, c, v);
            }
            for r in 0..self.rows {
                if r == next_row || field.is_zero(self.get(r, col)) {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for c in col..self.cols {
                    let v = field.sub(self.get(r, c), &field.mul(&factor, self.get(next_row, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push((next_row, col));
            next_row += 1;
            if next_row == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&mut self) -> usize {
        self.rref().len()
    }

    /// Basis of the right nullspace, one vector per free column, in column
    /// order. Assumes the matrix is already in reduced row echelon form.
    pub fn nullspace_basis(&self, pivots: &[(usize, usize)]) -> Vec<Vec<K::Elem>> {
        let field = self.field.clone();
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![field.zero(); self.cols];
            v[free] = field.one();
            for &(pr, pc) in pivots {
                v[pc] = field.neg(self.get(pr, free));
            }
            basis.push(v);
        }
        basis
    }
}

/// Basis of the degree-`n` syzygies of `gens`: vectors (c_1, ..., c_r) of
/// homogeneous polynomials with deg c_k = n - deg g_k and sum c_k g_k = 0,
/// computed as the exact nullspace of the degree-`n` multiplication matrix.
pub fn syzygy_oracle<K: Field>(
    gens: &[Polynomial<K>],
    n: i64,
) -> Result<Vec<Vec<Polynomial<K>>>, SolveError> {
    let first = gens.first().ok_or(SolveError::Empty)?;
    let ring = first.ring();
    let field = first.field().clone();
    let mut degrees = Vec::with_capacity(gens.len());
    for g in gens {
        if g.ring() != ring || g.field() != &field {
            return Err(SolveError::MixedGenerators);
        }
        match g.homogeneous_degree() {
            Homogeneity::Homogeneous(d) => degrees.push(d as i64),
            _ => return Err(SolveError::BadGenerator),
        }
    }

    let target = graded_basis(ring, n);
    let target_index: std::collections::HashMap<_, _> = target
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();

    // column layout: for each generator, its degree-(n - d_k) multiplier monomials
    let mut col_monos = Vec::new();
    for (k, &dk) in degrees.iter().enumerate() {
        for u in graded_basis(ring, n - dk) {
            col_monos.push((k, u));
        }
    }
    let mut mat = DenseMat::zeros(field.clone(), target.len(), col_monos.len());
    for (col, (k, u)) in col_monos.iter().enumerate() {
        for (mono, coeff) in gens[*k].terms() {
            let idx = target_index[&mono.mul(u)];
            let v = field.add(mat.get(idx, col), coeff);
            mat.set(idx, col, v);
        }
    }
    let pivots = mat.rref();
    let null = mat.nullspace_basis(&pivots);

    Ok(null
        .into_iter()
        .map(|vec| {
            let mut out: Vec<Polynomial<K>> = gens
                .iter()
                .map(|_| Polynomial::zero(field.clone(), ring))
                .collect();
            for (col, coeff) in vec.into_iter().enumerate() {
                if field.is_zero(&coeff) {
                    continue;
                }
                let (k, u) = &col_monos[col];
                out[*k].add_term(u.clone(), coeff);
            }
            out
        })
        .collect())
}

/// Flattens polynomial equations `sum_e t_e * cols[e][i] + rhs[i] = 0` into a
/// scalar linear system by comparing coefficients componentwise, then solves
/// it requiring a unique solution.
pub fn solve_unique_on_support<K: Field>(
    cols: &[Vec<Polynomial<K>>],
    rhs: &[Polynomial<K>],
) -> Result<Vec<K::Elem>, SolveError> {
    let field = rhs
        .first()
        .map(|p| p.field().clone())
        .or_else(|| {
            cols.first()
                .and_then(|c| c.first().map(|p| p.field().clone()))
        })
        .ok_or(SolveError::Empty)?;
    let components = rhs.len();
    let mut rows_a: Vec<Vec<K::Elem>> = Vec::new();
    let mut rows_b: Vec<K::Elem> = Vec::new();
    for i in 0..components {
        // the component degree is whatever any nonzero participant has
        let mut degree = None;
        for p in cols.iter().map(|c| &c[i]).chain(std::iter::once(&rhs[i])) {
            match p.homogeneous_degree() {
                Homogeneity::Homogeneous(d) => {
                    if degree.replace(d).is_some_and(|old| old != d) {
                        return Err(SolveError::MixedDegrees);
                    }
                }
                Homogeneity::Zero => {}
                Homogeneity::Inhomogeneous => return Err(SolveError::MixedDegrees),
            }
        }
        let Some(d) = degree else { continue };
        let coeffs: Vec<Vec<K::Elem>> = cols
            .iter()
            .map(|c| c[i].coeff_vector(d as i64).expect("checked degree"))
            .collect();
        let b = rhs[i].coeff_vector(d as i64).expect("checked degree");
        for pos in 0..b.len() {
            rows_a.push(coeffs.iter().map(|cv| cv[pos].clone()).collect());
            rows_b.push(b[pos].clone());
        }
    }

    // augmented elimination; the solution must be unique
    let unknowns = cols.len();
    let mut mat = DenseMat::zeros(field.clone(), rows_a.len(), unknowns + 1);
    for (r, row) in rows_a.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            mat.set(r, c, v.clone());
        }
        mat.set(r, unknowns, field.neg(&rows_b[r]));
    }
    let pivots = mat.rref();
    if pivots.iter().any(|&(_, c)| c == unknowns) {
        return Err(SolveError::Inconsistent);
    }
    if pivots.len() < unknowns {
        return Err(SolveError::Underdetermined);
    }
    let mut solution = vec![field.zero(); unknowns];
    for &(pr, pc) in &pivots {
        solution[pc] = mat.get(pr, unknowns).clone();
    }
    Ok(solution)
}
