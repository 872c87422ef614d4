//! Minkowski four-vectors with signature (−+++), index 0 is time.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{Matrix4, Vector3, Vector4};

use crate::error::{Error, Result};

/// The metric η = diag(−1, 1, 1, 1).
pub fn metric() -> Matrix4<f64> {
    Matrix4::from_diagonal(&Vector4::new(-1.0, 1.0, 1.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FourVector {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl FourVector {
    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        Self { t, x, y, z }
    }

    /// The rest-frame time direction e = (1, 0, 0, 0).
    pub const fn time_unit() -> Self {
        Self::new(1.0, 0.0, 0.0, 0.0)
    }

    pub fn from_parts(t: f64, space: Vector3<f64>) -> Self {
        Self::new(t, space[0], space[1], space[2])
    }

    pub fn spatial(&self) -> Vector3<f64> {
        Vector3::new(self.x, self.y, self.z)
    }

    pub fn to_vector(self) -> Vector4<f64> {
        Vector4::new(self.t, self.x, self.y, self.z)
    }

    pub fn from_vector(v: &Vector4<f64>) -> Self {
        Self::new(v[0], v[1], v[2], v[3])
    }

    pub fn components(&self) -> [f64; 4] {
        [self.t, self.x, self.y, self.z]
    }

    /// Components with the index lowered by η.
    pub fn lowered(&self) -> [f64; 4] {
        [-self.t, self.x, self.y, self.z]
    }

    pub fn dot(&self, other: &FourVector) -> f64 {
        minkowski_dot(self, other)
    }

    pub fn norm_sq(&self) -> f64 {
        minkowski_dot(self, self)
    }

    pub fn is_finite(&self) -> bool {
        self.components().iter().all(|c| c.is_finite())
    }
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, o: FourVector) -> FourVector {
        FourVector::new(self.t + o.t, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for FourVector {
    type Output = FourVector;
    fn sub(self, o: FourVector) -> FourVector {
        FourVector::new(self.t - o.t, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for FourVector {
    type Output = FourVector;
    fn neg(self) -> FourVector {
        FourVector::new(-self.t, -self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for FourVector {
    type Output = FourVector;
    fn mul(self, s: f64) -> FourVector {
        FourVector::new(self.t * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<FourVector> for Matrix4<f64> {
    type Output = FourVector;
    fn mul(self, v: FourVector) -> FourVector {
        FourVector::from_vector(&(self * v.to_vector()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ThreeMomentum {
    pub px: f64,
    pub py: f64,
    pub pz: f64,
}

impl ThreeMomentum {
    pub const fn new(px: f64, py: f64, pz: f64) -> Self {
        Self { px, py, pz }
    }

    pub fn to_vector(self) -> Vector3<f64> {
        Vector3::new(self.px, self.py, self.pz)
    }

    pub fn from_vector(v: &Vector3<f64>) -> Self {
        Self::new(v[0], v[1], v[2])
    }

    pub fn norm_sq(&self) -> f64 {
        self.px * self.px + self.py * self.py + self.pz * self.pz
    }
}

/// A Wick-rotated four-vector (t ↦ it), with positive-definite norm.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EuclideanFourVector(pub [f64; 4]);

impl EuclideanFourVector {
    pub fn norm_sq(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }
}

pub fn minkowski_dot(a: &FourVector, b: &FourVector) -> f64 {
    -a.t * b.t + a.x * b.x + a.y * b.y + a.z * b.z
}

/// t ↦ it: the time component becomes the fourth Euclidean coordinate's partner
/// with a plus sign in the norm. Spatial components are copied unchanged.
pub fn wick_rotate(x: &FourVector) -> EuclideanFourVector {
    EuclideanFourVector([x.t, x.x, x.y, x.z])
}

/// E_p = √(|p⃗|² + m²).
pub fn on_shell_energy(p: &ThreeMomentum, m: f64) -> Result<f64> {
    if !(m >= 0.0) {
        return Err(Error::NegativeMass(m));
    }
    Ok((p.norm_sq() + m * m).sqrt())
}

/// The on-shell four-momentum (±E_p, p⃗).
pub fn on_shell_momentum(p: &ThreeMomentum, m: f64, sign: f64) -> Result<FourVector> {
    let e = on_shell_energy(p, m)?;
    Ok(FourVector::new(sign.signum() * e, p.px, p.py, p.pz))
}
