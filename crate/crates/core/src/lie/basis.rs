use serde::Serialize;

use crate::matrix::QuaternionMatrix;
use crate::quaternion::{GroundField, Quaternion};

/// Which summand of the Cartan decomposition `g = k ⊕ p` an element lies in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CartanPart {
    K,
    P,
}

impl CartanPart {
    /// Part containing `[a, b]` for `a` in `self`, `b` in `other`.
    pub fn bracket_part(self, other: CartanPart) -> CartanPart {
        if self == other {
            CartanPart::K
        } else {
            CartanPart::P
        }
    }
}

/// Label of a basis element. Indices are 1-based, as matrix positions `j, k ≤ n + 1`;
/// `t ∈ {1, 2, 3}` selects the imaginary unit i, j, k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BasisKind {
    /// `α_{jk} = e_{jk} − e_{kj}`, `j < k ≤ n`.
    Alpha { j: usize, k: usize },
    /// `I_t β_{jk}`, `j < k ≤ n`.
    ImBeta { t: u8, j: usize, k: usize },
    /// `√2 I_t e_{ii}`, `i ≤ n + 1`.
    ImDiag { t: u8, i: usize },
    /// Orthonormalized traceless `i·diag` element number `slot` (complex case only).
    TracelessDiag { slot: usize },
    /// `β_{j,n+1}`.
    BetaP { j: usize },
    /// `I_t α_{j,n+1}`.
    ImAlphaP { t: u8, j: usize },
}

impl BasisKind {
    pub fn part(self) -> CartanPart {
        match self {
            BasisKind::BetaP { .. } | BasisKind::ImAlphaP { .. } => CartanPart::P,
            _ => CartanPart::K,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BasisElement {
    pub index: usize,
    pub kind: BasisKind,
    pub part: CartanPart,
    pub matrix: QuaternionMatrix,
}

/// `α_{jk}` of size `size` (1-based indices).
pub(crate) fn alpha(size: usize, j: usize, k: usize) -> QuaternionMatrix {
    &QuaternionMatrix::unit(size, j - 1, k - 1) - &QuaternionMatrix::unit(size, k - 1, j - 1)
}

/// `β_{jk}` of size `size` (1-based indices).
pub(crate) fn beta(size: usize, j: usize, k: usize) -> QuaternionMatrix {
    &QuaternionMatrix::unit(size, j - 1, k - 1) + &QuaternionMatrix::unit(size, k - 1, j - 1)
}

/// `e_{ii}` of size `size` (1-based index).
pub(crate) fn diag_unit(size: usize, i: usize) -> QuaternionMatrix {
    QuaternionMatrix::unit(size, i - 1, i - 1)
}

fn kind_matrix(size: usize, kind: BasisKind) -> QuaternionMatrix {
    let last = size;
    match kind {
        BasisKind::Alpha { j, k } => alpha(size, j, k),
        BasisKind::ImBeta { t, j, k } => beta(size, j, k).left_scale(Quaternion::unit(t)),
        BasisKind::ImDiag { t, i } => diag_unit(size, i).left_scale(Quaternion::unit(t).scale(2f64.sqrt())),
        BasisKind::BetaP { j } => beta(size, j, last),
        BasisKind::ImAlphaP { t, j } => alpha(size, j, last).left_scale(Quaternion::unit(t)),
        BasisKind::TracelessDiag { .. } => unreachable!("built by orthonormalization"),
    }
}

/// Orthonormalize `i(e_jj − e_{n+1,n+1})`, `j = 1..n`, under the trace pairing and rescale
/// each to pairing 2, the common value of every other basis element.
fn traceless_diagonal(n: usize) -> Vec<QuaternionMatrix> {
    let size = n + 1;
    let mut out: Vec<QuaternionMatrix> = Vec::with_capacity(n);
    for j in 1..=n {
        let mut v = (&diag_unit(size, j) - &diag_unit(size, size)).left_scale(Quaternion::I);
        for u in &out {
            let c = v.trace_pairing(u) / u.trace_pairing(u);
            v = &v - &u.scale(c);
        }
        let norm2 = v.trace_pairing(&v);
        out.push(v.scale((2.0 / norm2).sqrt()));
    }
    out
}

/// Ordered standard basis: off-diagonal compact block, then diagonal block, then `p`.
///
/// Quaternionic: `α_{jk}, iβ_{jk}, jβ_{jk}, kβ_{jk}` per pair `j < k ≤ n`; `√2 I_t e_ii`;
/// `β_{j,n+1}, iα_{j,n+1}, jα_{j,n+1}, kα_{j,n+1}` per `j ≤ n`.
/// Complex keeps only the `t = 1` generators with an orthonormalized traceless diagonal,
/// real keeps `α_{jk}` and `β_{j,n+1}`.
pub fn standard_basis(field: GroundField, n: usize) -> Vec<BasisElement> {
    let size = n + 1;
    let units = field.imaginary_units();
    let mut kinds: Vec<BasisKind> = Vec::new();
    for j in 1..=n {
        for k in (j + 1)..=n {
            kinds.push(BasisKind::Alpha { j, k });
            kinds.extend(units.iter().map(|&t| BasisKind::ImBeta { t, j, k }));
        }
    }
    let mut matrices: Vec<QuaternionMatrix> = kinds.iter().map(|&k| kind_matrix(size, k)).collect();

    match field {
        GroundField::Quaternion => {
            for i in 1..=size {
                for &t in units {
                    let kind = BasisKind::ImDiag { t, i };
                    kinds.push(kind);
                    matrices.push(kind_matrix(size, kind));
                }
            }
        }
        GroundField::Complex => {
            for (slot, m) in traceless_diagonal(n).into_iter().enumerate() {
                kinds.push(BasisKind::TracelessDiag { slot: slot + 1 });
                matrices.push(m);
            }
        }
        GroundField::Real => {}
    }

    for j in 1..=n {
        let start = kinds.len();
        kinds.push(BasisKind::BetaP { j });
        kinds.extend(units.iter().map(|&t| BasisKind::ImAlphaP { t, j }));
        matrices.extend(kinds[start..].iter().map(|&k| kind_matrix(size, k)));
    }

    kinds
        .into_iter()
        .zip(matrices)
        .enumerate()
        .map(|(index, (kind, matrix))| BasisElement { index, kind, part: kind.part(), matrix })
        .collect()
}
