//! Orthogonal complex structures on `H = R^4` in the basis `(1, i, j, k)`,
//! the differential of a slice regular function and its push-forward.

use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qcore::{decompose, Quaternion, SliceCoords};
use crate::slice::{slice_derivative, spherical_derivative, SliceFunction};

const BASIS: [Quaternion; 4] = [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K];

/// A real `4x4` matrix meant to square to `-1`, be orthogonal and have
/// determinant one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsMatrix(pub Matrix4<f64>);

impl CsMatrix {
    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    /// Worst of `|M² + 1|`, `|MᵀM - 1|` and `|det M - 1|`.
    pub fn invariant_residual(&self) -> f64 {
        let m = &self.0;
        let id = Matrix4::<f64>::identity();
        let sq = (m * m + id).amax();
        let orth = (m.transpose() * m - id).amax();
        sq.max(orth).max((m.determinant() - 1.0).abs())
    }

    pub fn apply(&self, v: Quaternion) -> Quaternion {
        let w = self.0 * nalgebra::Vector4::from(v.to_array());
        Quaternion::new(w[0], w[1], w[2], w[3])
    }

    pub fn rows(&self) -> [[f64; 4]; 4] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.0[(i, j)]))
    }
}

impl Serialize for CsMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

fn matrix_of(f: impl Fn(Quaternion) -> Quaternion) -> Matrix4<f64> {
    let mut m = Matrix4::zeros();
    for (k, e) in BASIS.iter().enumerate() {
        let col = f(*e).to_array();
        for r in 0..4 {
            m[(r, k)] = col[r];
        }
    }
    m
}

/// Left multiplication by `q`.
pub fn left_mult(q: Quaternion) -> Matrix4<f64> {
    matrix_of(|v| q * v)
}

/// Structure at the point `[1, u, X2, X3]` of twistor space; only `u`
/// matters.
pub fn j_from_twistor(u: Complex64, _x2: Complex64, _x3: Complex64) -> CsMatrix {
    let (x, y) = (u.re, u.im);
    let n = u.norm_sqr();
    let a = 1.0 - n;
    #[rustfmt::skip]
    let m = Matrix4::new(
        0.0,       a,         2.0 * y,  -2.0 * x,
        -a,        0.0,       -2.0 * x, -2.0 * y,
        -2.0 * y,  2.0 * x,   0.0,      a,
        2.0 * x,   2.0 * y,   -a,       0.0,
    );
    CsMatrix(m * (-1.0 / (1.0 + n)))
}

/// Left multiplication by `I_p = Im p / |Im p|`.
pub fn j_slice(p: Quaternion) -> Result<CsMatrix> {
    let s = decompose(p)?;
    Ok(CsMatrix(left_mult(s.unit.to_quaternion())))
}

/// The structure with `(a, b, c)` filled into the pattern of left
/// multiplication by `ai + bj + ck`, at the image point `p` of
/// `x(1 - Ii)/2`.
pub fn j_f0(p: Quaternion) -> CsMatrix {
    let [p0, p1, p2, p3] = p.to_array();
    let n = p.norm_sqr();
    let a = (p0 * p0 + p1 * p1 - p2 * p2 - p3 * p3) / n;
    let b = 2.0 * (p0 * p3 + p1 * p2) / n;
    let c = 2.0 * (p1 * p3 - p0 * p2) / n;
    CsMatrix(left_mult(Quaternion::new(0.0, a, b, c)))
}

/// `(df)_x` as a real matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Differential {
    pub x: Quaternion,
    pub matrix: Matrix4<f64>,
}

impl Differential {
    /// Numerical rank with relative threshold `1e-10`.
    pub fn rank(&self) -> usize {
        let sv = self.matrix.singular_values();
        let top = sv.max();
        if top == 0.0 {
            return 0;
        }
        sv.iter().filter(|&&s| s > 1e-10 * top).count()
    }
}

/// `v ↦ v1 ∂f/∂x(x) + v2 ∂_s f(x)` where `v1` is the part of `v` in
/// `C_{I_x}` and `v2` the orthogonal rest.
pub fn differential(f: &SliceFunction, x: Quaternion) -> Result<Differential> {
    let s = decompose(x)?;
    let unit = s.unit.to_quaternion();
    let df = slice_derivative(f).eval(x)?;
    let ds = spherical_derivative(f, x)?;
    let m = matrix_of(|v| {
        let v1 = Quaternion::real(v.re()) + unit * v.dot(unit);
        let v2 = v - v1;
        v1 * df + v2 * ds
    });
    Ok(Differential { x, matrix: m })
}

/// Central differences of `f` along the four axes.
pub fn differential_fd(f: &SliceFunction, x: Quaternion, step: f64) -> Result<Matrix4<f64>> {
    let mut m = Matrix4::zeros();
    for (k, e) in BASIS.iter().enumerate() {
        let d = (f.eval(x + *e * step)? - f.eval(x - *e * step)?) * (0.5 / step);
        for (r, val) in d.to_array().into_iter().enumerate() {
            m[(r, k)] = val;
        }
    }
    Ok(m)
}

/// `(df) J (df)^{-1}` with `J` left multiplication by `I_x`.
pub fn pushforward(f: &SliceFunction, x: Quaternion) -> Result<CsMatrix> {
    let d = differential(f, x)?;
    let rank = d.rank();
    if rank < 4 {
        return Err(Error::SingularDifferential { rank });
    }
    let inv = d.matrix.try_inverse().ok_or(Error::SingularDifferential { rank })?;
    Ok(CsMatrix(d.matrix * j_slice(x)?.0 * inv))
}

/// Jacobian of `q ↦ q^{-1}`.
pub fn dg_inverse(q: Quaternion) -> Matrix4<f64> {
    let p = q.to_array();
    let n = q.norm_sqr();
    let mut m = Matrix4::zeros();
    for r in 0..4 {
        for c in 0..4 {
            let s = if r == 0 { -1.0 } else { 1.0 };
            m[(r, c)] = 2.0 * s * p[r] * p[c];
        }
    }
    m[(0, 0)] += n;
    for r in 1..4 {
        m[(r, r)] -= n;
    }
    m / (n * n)
}

/// `‖dg·J^f − J_i·dg‖_∞` at `q` for `g(q) = q^{-1}`.
pub fn verify_intertwine(q: Quaternion) -> Result<f64> {
    if q.to_array()[1] <= 0.0 {
        return Err(Error::WrongHalfSpace);
    }
    let dg = dg_inverse(q);
    let ji = left_mult(Quaternion::I);
    let lhs = dg * j_f0(q).0;
    let rhs = ji * dg;
    Ok((lhs - rhs).amax())
}

/// The point `x` with `x(1 - Ii)/2 = q`.
pub fn preimage(q: Quaternion) -> Result<SliceCoords> {
    let [q0, q1, q2, q3] = (q * 2.0).to_array();
    if q1 <= 0.0 {
        return Err(Error::WrongHalfSpace);
    }
    let d = q0 * q0 + q1 * q1;
    let bb = (q1 * q2 + q0 * q3) / d;
    let cc = (q1 * q3 - q0 * q2) / d;
    let a = (1.0 - bb * bb - cc * cc) / (1.0 + bb * bb + cc * cc);
    let unit = crate::qcore::ImaginaryUnit::new(a, bb * (a + 1.0), cc * (a + 1.0))?;
    Ok(SliceCoords { alpha: q0 / (a + 1.0), beta: q1 / (a + 1.0), unit })
}
