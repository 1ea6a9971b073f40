//! Quaternions, imaginary units, slice coordinates and the complexified
//! quaternions `H ⊗ C`.
//!
//! A quaternion `q = q0 + q1 i + q2 j + q3 k` is also handled through its
//! complex split `q = p1 + p2 j` with `p1 = q0 + q1 i` and `p2 = q2 + q3 i`
//! both in `C_i`. That split is what the twistor coordinates use.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Quaternion {
    pub q0: f64,
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
}

impl From<[f64; 4]> for Quaternion {
    fn from(a: [f64; 4]) -> Self {
        Quaternion::new(a[0], a[1], a[2], a[3])
    }
}

impl From<Quaternion> for [f64; 4] {
    fn from(q: Quaternion) -> Self {
        [q.q0, q.q1, q.q2, q.q3]
    }
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(q0: f64, q1: f64, q2: f64, q3: f64) -> Self {
        Quaternion { q0, q1, q2, q3 }
    }

    pub const fn real(r: f64) -> Self {
        Quaternion::new(r, 0.0, 0.0, 0.0)
    }

    /// Embeds `z = a + bi` as the quaternion `a + b i` of the slice `C_i`.
    pub fn from_complex(z: Complex64) -> Self {
        Quaternion::new(z.re, z.im, 0.0, 0.0)
    }

    /// Builds `p1 + p2 j` from its two `C_i` components.
    pub fn from_split(p1: Complex64, p2: Complex64) -> Self {
        Quaternion::new(p1.re, p1.im, p2.re, p2.im)
    }

    /// Returns `(p1, p2)` with `self = p1 + p2 j`.
    pub fn split(self) -> (Complex64, Complex64) {
        (Complex64::new(self.q0, self.q1), Complex64::new(self.q2, self.q3))
    }

    pub fn to_array(self) -> [f64; 4] {
        self.into()
    }

    pub fn re(self) -> f64 {
        self.q0
    }

    pub fn im(self) -> Quaternion {
        Quaternion::new(0.0, self.q1, self.q2, self.q3)
    }

    pub fn conj(self) -> Quaternion {
        Quaternion::new(self.q0, -self.q1, -self.q2, -self.q3)
    }

    pub fn norm_sqr(self) -> f64 {
        self.q0 * self.q0 + self.q1 * self.q1 + self.q2 * self.q2 + self.q3 * self.q3
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn im_norm(self) -> f64 {
        (self.q1 * self.q1 + self.q2 * self.q2 + self.q3 * self.q3).sqrt()
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self) -> Option<Quaternion> {
        let n = self.norm_sqr();
        if n == 0.0 {
            None
        } else {
            Some(self.conj() * (1.0 / n))
        }
    }

    pub fn scale(self, s: f64) -> Quaternion {
        Quaternion::new(self.q0 * s, self.q1 * s, self.q2 * s, self.q3 * s)
    }

    /// Euclidean inner product on `R^4`.
    pub fn dot(self, other: Quaternion) -> f64 {
        self.q0 * other.q0 + self.q1 * other.q1 + self.q2 * other.q2 + self.q3 * other.q3
    }

    pub fn dist(self, other: Quaternion) -> f64 {
        (self - other).norm()
    }

    pub fn is_real(self) -> bool {
        self.q1 == 0.0 && self.q2 == 0.0 && self.q3 == 0.0
    }

    /// `i`, `j` and `k` components as an `R^3` vector.
    pub fn im_vec(self) -> [f64; 3] {
        [self.q1, self.q2, self.q3]
    }

    /// Left multiplication by a complex number of `C_i`.
    pub fn lmul_complex(self, z: Complex64) -> Quaternion {
        Quaternion::from_complex(z) * self
    }

    /// Left quotient `self⁻¹ · rhs`.
    pub fn ldiv(self, rhs: Quaternion) -> Option<Quaternion> {
        self.inv().map(|inv| inv * rhs)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i{:+}j{:+}k", self.q0, self.q1, self.q2, self.q3)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, r: Quaternion) -> Quaternion {
        Quaternion::new(self.q0 + r.q0, self.q1 + r.q1, self.q2 + r.q2, self.q3 + r.q3)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, r: Quaternion) {
        *self = *self + r;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, r: Quaternion) -> Quaternion {
        Quaternion::new(self.q0 - r.q0, self.q1 - r.q1, self.q2 - r.q2, self.q3 - r.q3)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.q0, -self.q1, -self.q2, -self.q3)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, r: Quaternion) -> Quaternion {
        let (a0, a1, a2, a3) = (self.q0, self.q1, self.q2, self.q3);
        let (b0, b1, b2, b3) = (r.q0, r.q1, r.q2, r.q3);
        Quaternion::new(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        self.scale(s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        q.scale(self)
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    fn div(self, s: f64) -> Quaternion {
        self.scale(1.0 / s)
    }
}

impl From<f64> for Quaternion {
    fn from(r: f64) -> Self {
        Quaternion::real(r)
    }
}

/// A unit imaginary quaternion `I = a i + b j + c k`, `a² + b² + c² = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct ImaginaryUnit {
    a: f64,
    b: f64,
    c: f64,
}

impl TryFrom<[f64; 3]> for ImaginaryUnit {
    type Error = Error;
    fn try_from(v: [f64; 3]) -> Result<Self> {
        ImaginaryUnit::new(v[0], v[1], v[2])
    }
}

impl From<ImaginaryUnit> for [f64; 3] {
    fn from(u: ImaginaryUnit) -> Self {
        [u.a, u.b, u.c]
    }
}

impl ImaginaryUnit {
    pub const I: ImaginaryUnit = ImaginaryUnit { a: 1.0, b: 0.0, c: 0.0 };
    pub const MINUS_I: ImaginaryUnit = ImaginaryUnit { a: -1.0, b: 0.0, c: 0.0 };
    pub const J: ImaginaryUnit = ImaginaryUnit { a: 0.0, b: 1.0, c: 0.0 };
    pub const K: ImaginaryUnit = ImaginaryUnit { a: 0.0, b: 0.0, c: 1.0 };

    /// Normalizes `(a, b, c)`; fails on the zero vector.
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        let n = (a * a + b * b + c * c).sqrt();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::Invalid("imaginary unit from a zero vector".into()));
        }
        Ok(ImaginaryUnit { a: a / n, b: b / n, c: c / n })
    }

    pub fn components(self) -> (f64, f64, f64) {
        (self.a, self.b, self.c)
    }

    pub fn to_quaternion(self) -> Quaternion {
        Quaternion::new(0.0, self.a, self.b, self.c)
    }

    pub fn neg(self) -> ImaginaryUnit {
        ImaginaryUnit { a: -self.a, b: -self.b, c: -self.c }
    }

    pub fn dist(self, other: ImaginaryUnit) -> f64 {
        self.to_quaternion().dist(other.to_quaternion())
    }
}

/// `x = alpha + I beta` with the canonical choice `beta > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SliceCoords {
    pub alpha: f64,
    pub beta: f64,
    pub unit: ImaginaryUnit,
}

impl SliceCoords {
    pub fn recompose(&self) -> Quaternion {
        Quaternion::real(self.alpha) + self.unit.to_quaternion() * self.beta
    }

    /// The point `alpha + i beta` of the upper half-plane.
    pub fn v(&self) -> Complex64 {
        Complex64::new(self.alpha, self.beta)
    }

    /// `x^c = alpha - I beta`, written canonically as `alpha + (-I) beta`.
    pub fn conj(&self) -> SliceCoords {
        SliceCoords { alpha: self.alpha, beta: self.beta, unit: self.unit.neg() }
    }
}

/// Splits a non-real quaternion into `alpha + I beta`, `beta > 0`.
pub fn decompose(q: Quaternion) -> Result<SliceCoords> {
    decompose_tol(q, 0.0)
}

/// As [`decompose`], but also rejects `|Im q| <= tol`.
pub fn decompose_tol(q: Quaternion, tol: f64) -> Result<SliceCoords> {
    let beta = q.im_norm();
    if beta == 0.0 || beta <= tol {
        return Err(Error::RealInput { tol });
    }
    Ok(SliceCoords {
        alpha: q.q0,
        beta,
        unit: ImaginaryUnit { a: q.q1 / beta, b: q.q2 / beta, c: q.q3 / beta },
    })
}

/// Chart coordinate `u = -i (b + i c) / (1 + a)` of the unit `I`.
pub fn u_from_i(unit: ImaginaryUnit) -> Result<Complex64> {
    let (a, b, c) = unit.components();
    if a == -1.0 || 1.0 + a == 0.0 {
        return Err(Error::SouthPole);
    }
    Ok(-Complex64::i() * Complex64::new(b, c) / (1.0 + a))
}

/// Inverse of [`u_from_i`].
pub fn i_from_u(u: Complex64) -> ImaginaryUnit {
    let r2 = u.norm_sqr();
    let a = (1.0 - r2) / (1.0 + r2);
    let s = 1.0 + a;
    // u = (c - i b) / (1 + a)
    let c = u.re * s;
    let b = -u.im * s;
    ImaginaryUnit::new(a, b, c).unwrap_or(ImaginaryUnit::I)
}

/// `Q_u = 1 + u j`.
pub fn chart_quaternion(u: Complex64) -> Quaternion {
    Quaternion::from_split(Complex64::new(1.0, 0.0), u)
}

/// An element `x + √-1 y` of `H ⊗ C`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct CQuaternion {
    pub x: Quaternion,
    pub y: Quaternion,
}

impl CQuaternion {
    pub const fn new(x: Quaternion, y: Quaternion) -> Self {
        CQuaternion { x, y }
    }

    pub fn one() -> Self {
        CQuaternion::new(Quaternion::ONE, Quaternion::ZERO)
    }

    /// `√-1`.
    pub fn sqrt_minus_one() -> Self {
        CQuaternion::new(Quaternion::ZERO, Quaternion::ONE)
    }

    /// `p^c = x^c + √-1 y^c`.
    pub fn conj_q(self) -> Self {
        CQuaternion::new(self.x.conj(), self.y.conj())
    }

    /// Complex conjugation `x - √-1 y`.
    pub fn conj_c(self) -> Self {
        CQuaternion::new(self.x, -self.y)
    }

    /// Sends `√-1` to the imaginary unit `I`: `x + I y`.
    pub fn induce(self, unit: ImaginaryUnit) -> Quaternion {
        self.x + unit.to_quaternion() * self.y
    }

    pub fn norm(self) -> f64 {
        (self.x.norm_sqr() + self.y.norm_sqr()).sqrt()
    }
}

impl Add for CQuaternion {
    type Output = CQuaternion;
    fn add(self, r: CQuaternion) -> CQuaternion {
        CQuaternion::new(self.x + r.x, self.y + r.y)
    }
}

impl Sub for CQuaternion {
    type Output = CQuaternion;
    fn sub(self, r: CQuaternion) -> CQuaternion {
        CQuaternion::new(self.x - r.x, self.y - r.y)
    }
}

impl Mul for CQuaternion {
    type Output = CQuaternion;
    /// `(x + √-1 y)(z + √-1 t) = xz - yt + √-1 (xt + yz)`.
    fn mul(self, r: CQuaternion) -> CQuaternion {
        cq_mul(self, r)
    }
}

pub fn cq_mul(p: CQuaternion, q: CQuaternion) -> CQuaternion {
    CQuaternion::new(p.x * q.x - p.y * q.y, p.x * q.y + p.y * q.x)
}
