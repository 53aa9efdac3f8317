//! Matrix realizations of so(n,1), su(n,1) and sp(n,1), their structure constants and
//! adjoint matrices.

mod basis;
mod identities;
mod structure;

pub use basis::{standard_basis, BasisElement, BasisKind, CartanPart};
pub use identities::{verify_bracket_identities, FamilyReport, IdentityFailure, IdentityReport};
pub use structure::{structure_constants, StructureTensor, CLOSURE_TOL};

use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::matrix::QuaternionMatrix;
use crate::quaternion::GroundField;

/// Ordered basis of the Lie algebra together with its structure constants.
#[derive(Debug)]
pub struct LieAlgebraModel {
    field: GroundField,
    n: usize,
    basis: Vec<BasisElement>,
    structure: StructureTensor,
    ad_cache: OnceLock<Vec<DMatrix<f64>>>,
}

impl Clone for LieAlgebraModel {
    fn clone(&self) -> Self {
        Self {
            field: self.field,
            n: self.n,
            basis: self.basis.clone(),
            structure: self.structure.clone(),
            ad_cache: OnceLock::new(),
        }
    }
}

/// Build the standard basis for `field` and rank `n`, and expand every basis bracket.
pub fn build_basis(field: GroundField, n: usize) -> Result<LieAlgebraModel> {
    LieAlgebraModel::build(field, n)
}

impl LieAlgebraModel {
    pub fn build(field: GroundField, n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::Domain(format!("rank n must be at least 1, got {n}")));
        }
        let basis = standard_basis(field, n);
        let structure = structure_constants(&basis)?;
        Ok(Self { field, n, basis, structure, ad_cache: OnceLock::new() })
    }

    /// Replace the structure tensor; used to probe the invariant checkers.
    pub fn with_structure(mut self, structure: StructureTensor) -> Self {
        self.structure = structure;
        self.ad_cache = OnceLock::new();
        self
    }

    pub fn field(&self) -> GroundField {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Size `n + 1` of the realizing matrices.
    pub fn matrix_size(&self) -> usize {
        self.n + 1
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn structure(&self) -> &StructureTensor {
        &self.structure
    }

    pub fn part(&self, i: usize) -> CartanPart {
        self.basis[i].part
    }

    pub fn parts(&self) -> impl Iterator<Item = CartanPart> + '_ {
        self.basis.iter().map(|e| e.part)
    }

    pub fn indices_of(&self, part: CartanPart) -> Vec<usize> {
        self.basis.iter().filter(|e| e.part == part).map(|e| e.index).collect()
    }

    pub fn index_of(&self, kind: BasisKind) -> Option<usize> {
        self.basis.iter().position(|e| e.kind == kind)
    }

    /// Coordinate vector of the basis element `i`.
    pub fn unit(&self, i: usize) -> DVector<f64> {
        let mut v = DVector::zeros(self.dim());
        v[i] = 1.0;
        v
    }

    /// Zero out the coordinates outside `part`.
    pub fn project(&self, v: &DVector<f64>, part: CartanPart) -> DVector<f64> {
        DVector::from_iterator(
            self.dim(),
            v.iter().zip(&self.basis).map(|(&x, e)| if e.part == part { x } else { 0.0 }),
        )
    }

    /// Split `v = U + X` with `U ∈ k`, `X ∈ p`.
    pub fn split(&self, v: &DVector<f64>) -> (DVector<f64>, DVector<f64>) {
        (self.project(v, CartanPart::K), self.project(v, CartanPart::P))
    }

    /// Bracket of two coordinate vectors through the structure constants.
    pub fn bracket(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        self.structure.bracket(x, y)
    }

    /// Matrix `Σ coords_i e_i`.
    pub fn assemble(&self, coords: &DVector<f64>) -> Result<QuaternionMatrix> {
        self.check_len(coords.len())?;
        let size = self.matrix_size();
        let mut m = QuaternionMatrix::zeros(size, size);
        for (c, e) in coords.iter().zip(&self.basis) {
            if *c != 0.0 {
                m = &m + &e.matrix.scale(*c);
            }
        }
        Ok(m)
    }

    /// Coordinates of a matrix in the basis, with the entrywise expansion residual.
    pub fn expand(&self, m: &QuaternionMatrix) -> Result<(DVector<f64>, f64)> {
        structure::expand_in_basis(&self.basis, m)
    }

    /// The real `dim × dim` matrix of `ad X`; column `j` is `Σ_i x_i C_ij`.
    pub fn ad_matrix(&self, coords: &DVector<f64>) -> Result<DMatrix<f64>> {
        self.check_len(coords.len())?;
        Ok(self.structure.ad_matrix(coords))
    }

    /// Cached `ad e_i` for every basis element.
    pub fn ad_basis(&self) -> &[DMatrix<f64>] {
        self.ad_cache.get_or_init(|| (0..self.dim()).map(|i| self.structure.ad_matrix(&self.unit(i))).collect())
    }

    /// Grading `[k,k] ⊂ k`, `[k,p] ⊂ p`, `[p,p] ⊂ k` on every stored bracket.
    pub fn verify_cartan_relations(&self) -> bool {
        let dim = self.dim();
        (0..dim).all(|i| {
            (0..dim).all(|j| {
                let expected = self.part(i).bracket_part(self.part(j));
                self.structure.get(i, j).iter().all(|&(k, _)| self.part(k) == expected)
            })
        })
    }

    /// Largest Jacobi defect `|[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]|_∞`
    /// over all `i < j < k`.
    pub fn jacobi_defect(&self) -> f64 {
        let dim = self.dim();
        let units: Vec<DVector<f64>> = (0..dim).map(|i| self.unit(i)).collect();
        let mut worst = 0.0f64;
        for i in 0..dim {
            for j in (i + 1)..dim {
                let eij = self.bracket(&units[i], &units[j]);
                for k in (j + 1)..dim {
                    let ejk = self.structure.bracket_unit(j, k);
                    let eki = self.structure.bracket_unit(k, i);
                    let sum = self.structure.bracket_with_unit(i, &ejk)
                        + self.structure.bracket_with_unit(j, &eki)
                        + self.structure.bracket_with_unit(k, &eij);
                    worst = worst.max(sum.amax());
                }
            }
        }
        worst
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.dim() {
            return Err(Error::Dimension { expected: self.dim(), got: len });
        }
        Ok(())
    }
}
