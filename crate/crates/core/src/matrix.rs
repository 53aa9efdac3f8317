//! Dense square matrices over H (and its subalgebras R, C).

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;

/// Absolute tolerance for identity checks on matrices with entries in {0, ±1, ±√2}.
pub const MATRIX_TOL: f64 = 1e-12;

/// Row-major matrix with quaternion entries.
#[derive(Debug, Clone, PartialEq)]
pub struct QuaternionMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

impl QuaternionMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Quaternion::ZERO; rows * cols] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m[(i, i)] = Quaternion::ONE;
        }
        m
    }

    /// The matrix unit `e_{jk}` (0-based indices) of a `size × size` matrix.
    pub fn unit(size: usize, j: usize, k: usize) -> Self {
        let mut m = Self::zeros(size, size);
        m[(j, k)] = Quaternion::ONE;
        m
    }

    /// `J = diag(I_n, -1)`, the Hermitian form of signature (n, 1).
    pub fn signature(n: usize) -> Self {
        let mut m = Self::identity(n + 1);
        m[(n, n)] = Quaternion::real(-1.0);
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.data
    }

    /// Multiply every entry on the left by the scalar `q`.
    pub fn left_scale(&self, q: Quaternion) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| q * a).collect() }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.scale(s)).collect() }
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|q| q.max_abs()).fold(0.0, f64::max)
    }

    /// Largest entrywise difference, `inf` if shapes differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data.iter().zip(&other.data).map(|(a, b)| (*a - *b).max_abs()).fold(0.0, f64::max)
    }

    /// `Re tr(A B*)`: the Frobenius pairing on the underlying real vector space.
    pub fn trace_pairing(&self, other: &Self) -> f64 {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z)
            .sum()
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_abs() <= tol
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension { expected: self.cols, got: rhs.rows });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(Quaternion, Quaternion) -> Quaternion) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }
}

impl Index<(usize, usize)> for QuaternionMatrix {
    type Output = Quaternion;
    fn index(&self, (r, c): (usize, usize)) -> &Quaternion {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for QuaternionMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Quaternion {
        &mut self.data[r * self.cols + c]
    }
}

impl Add for &QuaternionMatrix {
    type Output = QuaternionMatrix;
    fn add(self, rhs: Self) -> QuaternionMatrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &QuaternionMatrix {
    type Output = QuaternionMatrix;
    fn sub(self, rhs: Self) -> QuaternionMatrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &QuaternionMatrix {
    type Output = QuaternionMatrix;
    fn neg(self) -> QuaternionMatrix {
        self.scale(-1.0)
    }
}

impl Mul for &QuaternionMatrix {
    type Output = QuaternionMatrix;
    fn mul(self, rhs: Self) -> QuaternionMatrix {
        self.try_mul(rhs).expect("matrix shape mismatch")
    }
}

/// Commutator `[A, B] = AB - BA` of square matrices of equal size.
pub fn mat_bracket(a: &QuaternionMatrix, b: &QuaternionMatrix) -> Result<QuaternionMatrix> {
    if !a.is_square() {
        return Err(Error::Dimension { expected: a.rows, got: a.cols });
    }
    if (a.rows, a.cols) != (b.rows, b.cols) {
        return Err(Error::Dimension { expected: a.rows, got: b.rows });
    }
    Ok(&(a * b) - &(b * a))
}

/// Membership in sp(n,1): `J X* J = -X` with `J = diag(I_n, -1)`.
///
/// The same condition cuts out so(n,1) and su(n,1) when the entries are real or complex.
pub fn is_in_sp_lie_algebra(x: &QuaternionMatrix, n: usize) -> bool {
    if x.rows() != n + 1 || x.cols() != n + 1 {
        return false;
    }
    let j = QuaternionMatrix::signature(n);
    let lhs = &(&j * &x.conj_transpose()) * &j;
    lhs.max_abs_diff(&-x) <= MATRIX_TOL
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int_matrix(size: usize) -> impl Strategy<Value = QuaternionMatrix> {
        proptest::collection::vec((-3i8..=3, -3i8..=3, -3i8..=3, -3i8..=3), size * size).prop_map(move |v| {
            let mut it = v.into_iter();
            QuaternionMatrix::from_fn(size, size, |_, _| {
                let (w, x, y, z) = it.next().unwrap();
                Quaternion::new(w as f64, x as f64, y as f64, z as f64)
            })
        })
    }

    fn real_matrix(size: usize) -> impl Strategy<Value = QuaternionMatrix> {
        proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64), size * size)
            .prop_map(move |v| {
                let mut it = v.into_iter();
                QuaternionMatrix::from_fn(size, size, |_, _| {
                    let (w, x, y, z) = it.next().unwrap();
                    Quaternion::new(w, x, y, z)
                })
            })
    }

    #[test]
    fn self_bracket_vanishes() {
        let a = QuaternionMatrix::from_fn(3, 3, |r, c| Quaternion::new(r as f64, c as f64, 1.0, -2.0));
        assert!(mat_bracket(&a, &a).unwrap().is_zero(0.0));
    }

    #[test]
    fn bracket_of_matrix_units() {
        let e12 = QuaternionMatrix::unit(2, 0, 1);
        let e21 = QuaternionMatrix::unit(2, 1, 0);
        let expected = &QuaternionMatrix::unit(2, 0, 0) - &QuaternionMatrix::unit(2, 1, 1);
        assert_eq!(mat_bracket(&e12, &e21).unwrap(), expected);
    }

    #[test]
    fn bracket_rejects_size_mismatch() {
        let a = QuaternionMatrix::identity(2);
        let b = QuaternionMatrix::identity(3);
        assert!(matches!(mat_bracket(&a, &b), Err(Error::Dimension { .. })));
        let c = QuaternionMatrix::zeros(2, 3);
        assert!(mat_bracket(&c, &c).is_err());
    }

    #[test]
    fn real_diagonal_unit_is_not_in_sp() {
        assert!(!is_in_sp_lie_algebra(&QuaternionMatrix::unit(3, 0, 0), 2));
    }

    #[test]
    fn noncompact_generator_is_in_sp() {
        // beta_{1,n+1} with n = 2
        let b = &QuaternionMatrix::unit(3, 0, 2) + &QuaternionMatrix::unit(3, 2, 0);
        assert!(is_in_sp_lie_algebra(&b, 2));
        assert!(!is_in_sp_lie_algebra(&b, 3));
    }

    proptest! {
        #[test]
        fn conj_transpose_is_involutive(a in real_matrix(3)) {
            prop_assert_eq!(a.conj_transpose().conj_transpose(), a);
        }

        #[test]
        fn conj_transpose_reverses_products(a in real_matrix(3), b in real_matrix(3)) {
            let lhs = (&a * &b).conj_transpose();
            let rhs = &b.conj_transpose() * &a.conj_transpose();
            prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
        }

        #[test]
        fn bracket_is_antisymmetric_and_bilinear(a in int_matrix(3), b in int_matrix(3), c in int_matrix(3)) {
            let ab = mat_bracket(&a, &b).unwrap();
            let ba = mat_bracket(&b, &a).unwrap();
            prop_assert_eq!(&ab, &-&ba);
            let lhs = mat_bracket(&(&a + &c), &b).unwrap();
            let rhs = &ab + &mat_bracket(&c, &b).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn jacobi_identity(a in real_matrix(3), b in real_matrix(3), c in real_matrix(3)) {
            // oracle: direct expansion of the three nested commutators
            let t1 = mat_bracket(&a, &mat_bracket(&b, &c).unwrap()).unwrap();
            let t2 = mat_bracket(&b, &mat_bracket(&c, &a).unwrap()).unwrap();
            let t3 = mat_bracket(&c, &mat_bracket(&a, &b).unwrap()).unwrap();
            prop_assert!((&(&t1 + &t2) + &t3).max_abs() <= 1e-12);
        }
    }
}
