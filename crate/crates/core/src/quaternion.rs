//! Real quaternions and the ground algebras R ⊂ C ⊂ H.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// `w + x·i + y·j + z·k`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    /// Imaginary unit `I_t` for `t ∈ {1, 2, 3}` (i, j, k).
    pub fn unit(t: u8) -> Self {
        match t {
            1 => Self::I,
            2 => Self::J,
            3 => Self::K,
            _ => panic!("imaginary unit index must be 1, 2 or 3, got {t}"),
        }
    }

    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    /// Largest absolute component.
    pub fn max_abs(self) -> f64 {
        self.w.abs().max(self.x.abs()).max(self.y.abs()).max(self.z.abs())
    }

    pub fn is_zero(self) -> bool {
        self.w == 0.0 && self.x == 0.0 && self.y == 0.0 && self.z == 0.0
    }
}

/// Hamilton product.
pub fn quat_mul(a: Quaternion, b: Quaternion) -> Quaternion {
    Quaternion::new(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    )
}

impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        quat_mul(self, rhs)
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.w + rhs.w, self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.w - rhs.w, self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i{:+}j{:+}k", self.w, self.x, self.y, self.z)
    }
}

/// The ground algebra of the hyperbolic space: R, C or H.
///
/// Real and complex values are quaternions with the trailing components zeroed,
/// so a single arithmetic path serves all three cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroundField {
    Real,
    Complex,
    Quaternion,
}

impl GroundField {
    pub const ALL: [GroundField; 3] = [GroundField::Real, GroundField::Complex, GroundField::Quaternion];

    /// Imaginary units available in this field (`t` indices into i, j, k).
    pub fn imaginary_units(self) -> &'static [u8] {
        match self {
            GroundField::Real => &[],
            GroundField::Complex => &[1],
            GroundField::Quaternion => &[1, 2, 3],
        }
    }

    /// Whether `q` lies in the subalgebra this field embeds as.
    pub fn contains(self, q: Quaternion) -> bool {
        match self {
            GroundField::Real => q.x == 0.0 && q.y == 0.0 && q.z == 0.0,
            GroundField::Complex => q.y == 0.0 && q.z == 0.0,
            GroundField::Quaternion => true,
        }
    }

    /// Real dimension of the Lie algebra so(n,1), su(n,1) or sp(n,1).
    pub fn lie_algebra_dim(self, n: usize) -> usize {
        match self {
            GroundField::Real => n * (n + 1) / 2,
            GroundField::Complex => n * n + 2 * n,
            GroundField::Quaternion => 2 * n * n + 5 * n + 3,
        }
    }

    /// Real dimension of the noncompact part `p` (that of H^n over this field).
    pub fn p_dim(self, n: usize) -> usize {
        match self {
            GroundField::Real => n,
            GroundField::Complex => 2 * n,
            GroundField::Quaternion => 4 * n,
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            GroundField::Real => "r",
            GroundField::Complex => "c",
            GroundField::Quaternion => "h",
        }
    }

    pub fn algebra_name(self) -> &'static str {
        match self {
            GroundField::Real => "so",
            GroundField::Complex => "su",
            GroundField::Quaternion => "sp",
        }
    }
}

impl fmt::Display for GroundField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroundField::Real => "real",
            GroundField::Complex => "complex",
            GroundField::Quaternion => "quaternion",
        };
        f.write_str(s)
    }
}
