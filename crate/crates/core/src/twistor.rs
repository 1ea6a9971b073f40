//! Twistor space `CP^3` over `S^4 = HP^1`: projection, the real structure
//! `j`, fibre lines, the twistor lift of a slice function and the lifts of
//! Möbius transformations.

use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{Quaternion, decompose, u_from_i};
use crate::slice::SliceFunction;

/// Points at chordal distance below this are treated as equal.
pub const PROJ_EQ_TOL: f64 = 1e-9;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Chordal distance `sqrt(1 - |<p,q>|^2 / (|p|^2 |q|^2))` between two
/// homogeneous vectors, computed through the Lagrange identity so that it
/// stays accurate for nearly equal points.
pub fn chordal(p: &[Complex64], q: &[Complex64]) -> f64 {
    let np: f64 = p.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let nq: f64 = q.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if np == 0.0 || nq == 0.0 {
        return 1.0;
    }
    let mut s = 0.0;
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            s += (p[a] * q[b] - p[b] * q[a]).norm_sqr();
        }
    }
    (s.sqrt() / (np * nq)).min(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProjPoint3(pub [Complex64; 4]);

impl ProjPoint3 {
    pub fn new(x0: Complex64, x1: Complex64, x2: Complex64, x3: Complex64) -> Self {
        ProjPoint3([x0, x1, x2, x3])
    }

    pub fn coords(&self) -> &[Complex64; 4] {
        &self.0
    }

    pub fn dist(&self, other: &ProjPoint3) -> f64 {
        chordal(&self.0, &other.0)
    }

    pub fn proj_eq(&self, other: &ProjPoint3) -> bool {
        self.dist(other) < PROJ_EQ_TOL
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> ProjPoint3 {
        let n = self.norm();
        ProjPoint3(self.0.map(|z| z / n))
    }

    pub fn apply(&self, m: &Matrix4<Complex64>) -> ProjPoint3 {
        let x = m * nalgebra::Vector4::from(self.0);
        ProjPoint3([x[0], x[1], x[2], x[3]])
    }
}

/// A point of `HP^1 = S^4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HPoint {
    Finite(Quaternion),
    Infinity,
}

impl HPoint {
    pub fn finite(self) -> Option<Quaternion> {
        match self {
            HPoint::Finite(q) => Some(q),
            HPoint::Infinity => None,
        }
    }
}

/// `π[X] = (X0 + X1 j)^{-1} (X2 + X3 j)`, or infinity when `X0 = X1 = 0`.
pub fn project(p: &ProjPoint3) -> HPoint {
    let [x0, x1, x2, x3] = p.0;
    let a = Quaternion::from_split(x0, x1);
    let b = Quaternion::from_split(x2, x3);
    let n = p.norm();
    if a.norm() <= 1e-14 * n || a.norm() == 0.0 {
        return HPoint::Infinity;
    }
    HPoint::Finite(a.inv().expect("nonzero") * b)
}

/// `j[X0, X1, X2, X3] = [-X̄1, X̄0, -X̄3, X̄2]`.
pub fn j_map(p: &ProjPoint3) -> ProjPoint3 {
    let [x0, x1, x2, x3] = p.0;
    ProjPoint3([-x1.conj(), x0.conj(), -x3.conj(), x2.conj()])
}

/// The twistor fibre over a point of `S^4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiberLine {
    pub base: HPoint,
}

impl FiberLine {
    pub fn new(base: HPoint) -> Self {
        FiberLine { base }
    }

    /// The point with parameter `[X0 : X1]`.
    pub fn point(&self, x0: Complex64, x1: Complex64) -> ProjPoint3 {
        match self.base {
            HPoint::Finite(q) => {
                let (q1, q2) = q.split();
                ProjPoint3([x0, x1, x0 * q1 - x1 * q2.conj(), x0 * q2 + x1 * q1.conj()])
            }
            HPoint::Infinity => ProjPoint3([c(0.0, 0.0), c(0.0, 0.0), x0, x1]),
        }
    }

    /// Two points spanning the line.
    pub fn basis(&self) -> [ProjPoint3; 2] {
        [self.point(c(1.0, 0.0), c(0.0, 0.0)), self.point(c(0.0, 0.0), c(1.0, 0.0))]
    }

    /// Distance of `p` from the line: chordal distance to its orthogonal
    /// projection onto the span.
    pub fn distance(&self, p: &ProjPoint3) -> f64 {
        let [a, b] = self.basis();
        let (a, b) = gram_schmidt(&a.0, &b.0);
        let pa: Complex64 = (0..4).map(|k| a[k].conj() * p.0[k]).sum();
        let pb: Complex64 = (0..4).map(|k| b[k].conj() * p.0[k]).sum();
        let proj: Vec<Complex64> = (0..4).map(|k| a[k] * pa + b[k] * pb).collect();
        let resid: f64 = (0..4).map(|k| (p.0[k] - proj[k]).norm_sqr()).sum::<f64>().sqrt();
        resid / p.norm()
    }
}

fn gram_schmidt(a: &[Complex64; 4], b: &[Complex64; 4]) -> ([Complex64; 4], [Complex64; 4]) {
    let na = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let ea = a.map(|z| z / na);
    let d: Complex64 = (0..4).map(|k| ea[k].conj() * b[k]).sum();
    let w: Vec<Complex64> = (0..4).map(|k| b[k] - ea[k] * d).collect();
    let nw = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    (ea, [w[0] / nw, w[1] / nw, w[2] / nw, w[3] / nw])
}

/// The point `[1, u, v, uv]` of the twistor lift of the identity; it lies
/// over `α + Iβ` where `I` has chart coordinate `u`.
pub fn identity_lift(u: Complex64, v: Complex64) -> ProjPoint3 {
    ProjPoint3([c(1.0, 0.0), u, v, u * v])
}

/// `[1, u, g(v) - u ĥ(v), h(v) + u ĝ(v)]`.
pub fn lift(f: &SliceFunction, u: Complex64, v: Complex64) -> Result<ProjPoint3> {
    let [g, gh, h, hh] = lift_channels(f, v)?;
    Ok(ProjPoint3([c(1.0, 0.0), u, g - u * hh, h + u * gh]))
}

/// The second chart `u = ∞`: `[0, 1, -ĥ(v), ĝ(v)]`.
pub fn lift_at_infinity(f: &SliceFunction, v: Complex64) -> Result<ProjPoint3> {
    let [_, gh, _, hh] = lift_channels(f, v)?;
    Ok(ProjPoint3([c(0.0, 0.0), c(1.0, 0.0), -hh, gh]))
}

fn lift_channels(f: &SliceFunction, v: Complex64) -> Result<[Complex64; 4]> {
    if v.im <= crate::slice::REAL_AXIS_TOL || !f.domain().contains(v) {
        return Err(Error::OutOfDomain { re: v.re, im: v.im });
    }
    f.splitting()?.eval(v)
}

/// Lift of `f` at the point of `CP^3` lying over `x` in the fibre of the
/// identity lift, i.e. at `(u(I_x), α + iβ)`; `I_x = -i` uses the second chart.
pub fn lift_at(f: &SliceFunction, x: Quaternion) -> Result<ProjPoint3> {
    let s = decompose(x)?;
    match u_from_i(s.unit) {
        Ok(u) => lift(f, u, s.v()),
        Err(Error::SouthPole) => lift_at_infinity(f, s.v()),
        Err(e) => Err(e),
    }
}

/// Matrix of a quaternionic `2x2` block acting by right multiplication on
/// `X + Y j`: `(X r1 - Y r̄2, X r2 + Y r̄1)`.
fn right_mult_block(r: Quaternion) -> [[Complex64; 2]; 2] {
    let (r1, r2) = r.split();
    [[r1, -r2.conj()], [r2, r1.conj()]]
}

/// `|a|^2 |d|^2 + |b|^2 |c|^2 - 2 Re(b^c d c^c a)`; equals `det M` of the lift.
pub fn mobius_invertibility(a: Quaternion, b: Quaternion, c: Quaternion, d: Quaternion) -> f64 {
    a.norm_sqr() * d.norm_sqr() + b.norm_sqr() * c.norm_sqr() - 2.0 * (b.conj() * d * c.conj() * a).q0
}

/// Lift of `q -> (qc + d)^{-1}(qa + b)` to `GL(4, C)`, from
/// `[q1, q2] -> [q1 d + q2 c, q1 b + q2 a]`.
pub fn conformal_lift(
    a: Quaternion,
    b: Quaternion,
    c: Quaternion,
    d: Quaternion,
) -> Result<Matrix4<Complex64>> {
    let det = mobius_invertibility(a, b, c, d);
    let scale = (a.norm_sqr() + b.norm_sqr()) * (c.norm_sqr() + d.norm_sqr());
    if det.abs() <= 1e-12 * scale.max(1e-300) {
        return Err(Error::NotInvertible { det });
    }
    let blocks = [[d, c], [b, a]];
    let mut m = Matrix4::zeros();
    for (bi, row) in blocks.iter().enumerate() {
        for (bj, q) in row.iter().enumerate() {
            let r = right_mult_block(*q);
            for i in 0..2 {
                for j in 0..2 {
                    m[(2 * bi + i, 2 * bj + j)] = r[i][j];
                }
            }
        }
    }
    Ok(m)
}

/// `q -> (qc + d)^{-1}(qa + b)`.
pub fn mobius(q: Quaternion, a: Quaternion, b: Quaternion, c: Quaternion, d: Quaternion) -> HPoint {
    match (q * c + d).inv() {
        Some(inv) => HPoint::Finite(inv * (q * a + b)),
        None => HPoint::Infinity,
    }
}
