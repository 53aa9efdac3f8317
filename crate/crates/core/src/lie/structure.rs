use nalgebra::{DMatrix, DVector};

use super::basis::BasisElement;
use crate::error::{Error, Result};
use crate::matrix::{mat_bracket, QuaternionMatrix};

/// Largest entrywise residual tolerated when expanding a bracket in the basis.
pub const CLOSURE_TOL: f64 = 1e-10;

/// Coefficients below this are rounding noise of the trace pairing.
const ZERO_COEFF: f64 = 1e-14;

/// `[e_i, e_j] = Σ_k c_k e_k`, stored sparsely per ordered pair.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureTensor {
    dim: usize,
    entries: Vec<Vec<(usize, f64)>>,
}

impl StructureTensor {
    pub fn new(dim: usize) -> Self {
        Self { dim, entries: vec![Vec::new(); dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Terms `(k, c)` of `[e_i, e_j]`, sorted by `k`.
    pub fn get(&self, i: usize, j: usize) -> &[(usize, f64)] {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, mut terms: Vec<(usize, f64)>) {
        terms.sort_by_key(|&(k, _)| k);
        self.entries[i * self.dim + j] = terms;
    }

    /// Number of stored `(i, j, k)` coefficients.
    pub fn nnz(&self) -> usize {
        self.entries.iter().map(Vec::len).sum()
    }

    /// `entries(i,j) = −entries(j,i)` coefficientwise and `entries(i,i)` empty.
    pub fn is_antisymmetric(&self) -> bool {
        (0..self.dim).all(|i| {
            self.get(i, i).is_empty()
                && (0..self.dim).all(|j| {
                    let a = self.get(i, j);
                    let b = self.get(j, i);
                    a.len() == b.len() && a.iter().zip(b).all(|(&(ka, ca), &(kb, cb))| ka == kb && ca == -cb)
                })
        })
    }

    pub fn bracket(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        let mut out = DVector::zeros(self.dim);
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0.0 {
                continue;
            }
            let row = &self.entries[i * self.dim..(i + 1) * self.dim];
            for (terms, &yj) in row.iter().zip(y.iter()) {
                if yj == 0.0 {
                    continue;
                }
                let s = xi * yj;
                for &(k, c) in terms {
                    out[k] += s * c;
                }
            }
        }
        out
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn bracket_unit(&self, i: usize, j: usize) -> DVector<f64> {
        let mut out = DVector::zeros(self.dim);
        for &(k, c) in self.get(i, j) {
            out[k] += c;
        }
        out
    }

    /// `[e_i, y]`.
    pub fn bracket_with_unit(&self, i: usize, y: &DVector<f64>) -> DVector<f64> {
        let mut out = DVector::zeros(self.dim);
        for (j, &yj) in y.iter().enumerate() {
            if yj == 0.0 {
                continue;
            }
            for &(k, c) in self.get(i, j) {
                out[k] += yj * c;
            }
        }
        out
    }

    pub fn ad_matrix(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let mut ad = DMatrix::zeros(self.dim, self.dim);
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0.0 {
                continue;
            }
            for j in 0..self.dim {
                for &(k, c) in self.get(i, j) {
                    ad[(k, j)] += xi * c;
                }
            }
        }
        ad
    }
}

/// Expand `m` against a basis that is orthogonal under `Re tr(A B*)`.
pub(crate) fn expand_in_basis(basis: &[BasisElement], m: &QuaternionMatrix) -> Result<(DVector<f64>, f64)> {
    let size = basis.first().map(|e| e.matrix.rows()).unwrap_or(0);
    if m.rows() != size || m.cols() != size {
        return Err(Error::Dimension { expected: size, got: m.rows() });
    }
    let mut coords = DVector::zeros(basis.len());
    let mut rebuilt = QuaternionMatrix::zeros(size, size);
    for e in basis {
        let c = m.trace_pairing(&e.matrix) / e.matrix.trace_pairing(&e.matrix);
        if c.abs() > ZERO_COEFF {
            coords[e.index] = c;
            rebuilt = &rebuilt + &e.matrix.scale(c);
        }
    }
    Ok((coords, rebuilt.max_abs_diff(m)))
}

/// Expand every basis bracket `[e_i, e_j]` through the matrix commutator.
pub fn structure_constants(basis: &[BasisElement]) -> Result<StructureTensor> {
    let dim = basis.len();
    let mut tensor = StructureTensor::new(dim);
    for i in 0..dim {
        for j in (i + 1)..dim {
            let m = mat_bracket(&basis[i].matrix, &basis[j].matrix)?;
            let (coords, residual) = expand_in_basis(basis, &m)?;
            if residual > CLOSURE_TOL {
                return Err(Error::Closure { i, j, residual });
            }
            let terms: Vec<(usize, f64)> =
                coords.iter().enumerate().filter(|(_, c)| **c != 0.0).map(|(k, &c)| (k, c)).collect();
            let negated = terms.iter().map(|&(k, c)| (k, -c)).collect();
            tensor.set(i, j, terms);
            tensor.set(j, i, negated);
        }
    }
    Ok(tensor)
}
