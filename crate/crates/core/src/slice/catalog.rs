//! Slice functions used throughout the examples and checks.

use super::SliceFunction;
use crate::holo::HoloMap;

fn sf(g: &str, ghat: &str, h: &str, hhat: &str) -> SliceFunction {
    SliceFunction::parse(g, ghat, h, hhat).expect("catalog expressions parse")
}

/// `x(1 - Ii)/2`: the identity on `C_i^+`, zero on `C_{-i}^+`.
pub fn f0() -> SliceFunction {
    sf("v", "0", "0", "0")
}

/// `x(1 + Ii)/2`.
pub fn f0_plus() -> SliceFunction {
    sf("0", "v", "0", "0")
}

/// `1 - Ii`.
pub fn one_minus_ii() -> SliceFunction {
    sf("2", "0", "0", "0")
}

/// `1 + Ii`.
pub fn one_plus_ii() -> SliceFunction {
    sf("0", "2", "0", "0")
}

pub fn identity() -> SliceFunction {
    SliceFunction::identity()
}

pub fn x_squared() -> SliceFunction {
    sf("v^2", "v^2", "0", "0")
}

pub fn x_squared_plus_one() -> SliceFunction {
    sf("v^2 + 1", "v^2 + 1", "0", "0")
}

/// `x - j`.
pub fn x_minus_j() -> SliceFunction {
    sf("v", "v", "-1", "-1")
}

/// Lies on the cubic `X0 X3^2 + X1^2 X2 = 0`.
pub fn cubic_f1() -> SliceFunction {
    sf("-v^2", "v", "0", "0")
}

/// Lies on the cubic `X0 X1 X3 + X2 X3^2 + X1^3 = 0`.
pub fn cubic_f2() -> SliceFunction {
    sf("-1/v", "v", "0", "1/v^2")
}

/// Lies on the quadric cone `X1^2 = X2 X3`.
pub fn cone() -> SliceFunction {
    sf("0", "v", "0", "-1/v")
}

/// `x(1 - Ii) j / 2`.
pub fn plane_pair_candidate() -> SliceFunction {
    sf("0", "0", "v", "0")
}

/// Splitting `g = 1`, `h = v`: lifts to `[1, u, 1, v]`.
pub fn plane_pair() -> SliceFunction {
    sf("1", "0", "v", "0")
}

/// Quadruple whose lift lies on a nondiagonal quadric; see
/// `surfaces::fit_quadric`.
pub fn nondiag_quadric_data() -> SliceFunction {
    sf("v", "-v", "2i + v/2", "2i - v/2")
}

/// `(C x + D)^{-1} · (A x + B)(1 - Ii)/2` for a real matrix `(A, B; C, D)`.
pub fn mobius_f0(a: f64, b: f64, c: f64, d: f64) -> SliceFunction {
    let v = HoloMap::var();
    let g = (v.clone() * a + HoloMap::real(b)) / (v * c + HoloMap::real(d));
    SliceFunction::from_splitting(g, HoloMap::zero(), HoloMap::zero(), HoloMap::zero())
}

/// Every named function with its display name.
pub fn all() -> Vec<(&'static str, SliceFunction)> {
    vec![
        ("identity", identity()),
        ("x^2", x_squared()),
        ("x^2+1", x_squared_plus_one()),
        ("x-j", x_minus_j()),
        ("f0", f0()),
        ("f0+", f0_plus()),
        ("1-Ii", one_minus_ii()),
        ("1+Ii", one_plus_ii()),
        ("f1", cubic_f1()),
        ("f2", cubic_f2()),
        ("cone", cone()),
        ("plane-pair", plane_pair()),
        ("x(1-Ii)j/2", plane_pair_candidate()),
        ("nondiag", nondiag_quadric_data()),
    ]
}
