//! Three-vectors on the Bloch sphere and rotations acting on them.

use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Result, SteeringError};

/// Tolerance on `| |v| - 1 |` for a vector to count as a unit direction.
pub const UNIT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm_sqr(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Vec3 {
    fn add_assign(&mut self, o: Vec3) {
        *self = *self + o;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl SubAssign for Vec3 {
    fn sub_assign(&mut self, o: Vec3) {
        *self = *self - o;
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        Vec3::new(self * v.x, self * v.y, self * v.z)
    }
}

/// A measurement direction: a unit vector on the Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(into = "[f64; 3]")]
pub struct UnitVector3(Vec3);

impl UnitVector3 {
    pub const Z: UnitVector3 = UnitVector3(Vec3::new(0.0, 0.0, 1.0));

    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = Vec3::new(x, y, z);
        if !v.is_finite() {
            return Err(SteeringError::validation(format!(
                "direction ({x}, {y}, {z}) has non-finite components"
            )));
        }
        let n = v.norm();
        if (n - 1.0).abs() > UNIT_TOLERANCE {
            return Err(SteeringError::validation(format!(
                "direction ({x}, {y}, {z}) has norm {n}, expected 1"
            )));
        }
        Ok(UnitVector3(v))
    }

    /// Scales a nonzero finite vector to unit length.
    pub fn normalize(v: Vec3) -> Result<Self> {
        let n = v.norm();
        if !v.is_finite() || n < 1e-300 {
            return Err(SteeringError::validation(format!(
                "cannot normalize ({}, {}, {})",
                v.x, v.y, v.z
            )));
        }
        Ok(UnitVector3((1.0 / n) * v))
    }

    /// Direction with polar angle `theta` from +z and azimuth `phi`.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        UnitVector3(Vec3::new(st * cp, st * sp, ct))
    }

    pub fn vec(self) -> Vec3 {
        self.0
    }

    pub fn x(self) -> f64 {
        self.0.x
    }

    pub fn y(self) -> f64 {
        self.0.y
    }

    pub fn z(self) -> f64 {
        self.0.z
    }

    pub fn flipped(self) -> Self {
        UnitVector3(-self.0)
    }

    /// Rotates about the unit `axis` by `angle` (Rodrigues), renormalizing
    /// to absorb rounding.
    pub fn rotated_about(self, axis: Vec3, angle: f64) -> Self {
        let v = self.0;
        let (s, c) = angle.sin_cos();
        let r = c * v + s * axis.cross(v) + ((1.0 - c) * axis.dot(v)) * axis;
        UnitVector3((1.0 / r.norm()) * r)
    }

    /// An orthonormal pair spanning the tangent plane at this point: the
    /// polar and azimuthal unit vectors, with a fixed frame at the poles.
    pub fn tangent_frame(self) -> (Vec3, Vec3) {
        let v = self.0;
        let rho = (v.x * v.x + v.y * v.y).sqrt();
        if rho < 1e-12 {
            let s = v.z.signum();
            return (Vec3::new(s, 0.0, 0.0), Vec3::new(0.0, 1.0, 0.0));
        }
        let (cp, sp) = (v.x / rho, v.y / rho);
        let e_theta = Vec3::new(v.z * cp, v.z * sp, -rho);
        let e_phi = Vec3::new(-sp, cp, 0.0);
        (e_theta, e_phi)
    }
}

impl From<UnitVector3> for [f64; 3] {
    fn from(u: UnitVector3) -> [f64; 3] {
        u.0.to_array()
    }
}

impl TryFrom<[f64; 3]> for UnitVector3 {
    type Error = SteeringError;
    fn try_from(a: [f64; 3]) -> Result<Self> {
        UnitVector3::new(a[0], a[1], a[2])
    }
}

impl<'de> Deserialize<'de> for UnitVector3 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let a = <[f64; 3]>::deserialize(d)?;
        UnitVector3::try_from(a).map_err(serde::de::Error::custom)
    }
}

/// A proper rotation stored as a 3×3 orthogonal matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation3 {
    m: [[f64; 3]; 3],
}

impl Rotation3 {
    pub const IDENTITY: Rotation3 = Rotation3 {
        m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    };

    pub fn about_z(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Rotation3 {
            m: [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]],
        }
    }

    pub fn about_y(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Rotation3 {
            m: [[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]],
        }
    }

    /// Rotation about a unit axis (Rodrigues' formula).
    pub fn about_axis(axis: Vec3, angle: f64) -> Self {
        let a = (1.0 / axis.norm()) * axis;
        let (s, c) = angle.sin_cos();
        let t = 1.0 - c;
        Rotation3 {
            m: [
                [t * a.x * a.x + c, t * a.x * a.y - s * a.z, t * a.x * a.z + s * a.y],
                [t * a.x * a.y + s * a.z, t * a.y * a.y + c, t * a.y * a.z - s * a.x],
                [t * a.x * a.z - s * a.y, t * a.y * a.z + s * a.x, t * a.z * a.z + c],
            ],
        }
    }

    /// `self` applied after `first`.
    pub fn compose(&self, first: &Rotation3) -> Rotation3 {
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = (0..3).map(|k| self.m[i][k] * first.m[k][j]).sum();
            }
        }
        Rotation3 { m }
    }

    pub fn apply(&self, v: Vec3) -> Vec3 {
        let m = &self.m;
        Vec3::new(
            m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
        )
    }

    /// Rotates a unit vector, renormalizing away rounding drift.
    pub fn apply_unit(&self, u: UnitVector3) -> UnitVector3 {
        let r = self.apply(u.vec());
        UnitVector3((1.0 / r.norm()) * r)
    }

    pub fn matrix(&self) -> [[f64; 3]; 3] {
        self.m
    }
}
