//! Named surfaces.

use num_complex::Complex64;

use super::solvers::cexp;
use super::HomoPoly;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn r(x: f64) -> Complex64 {
    c(x, 0.0)
}

/// `X0 X3 - X1 X2`, the quadric swept by lifts of functions with real
/// coefficients.
pub fn quadric_q() -> HomoPoly {
    let [x0, x1, x2, x3] = HomoPoly::vars();
    x0 * x3 - x1 * x2
}

/// `e^{λ+iν} X0² + e^{-λ+iν} X1² + e^{μ-iν} X2² + e^{-μ-iν} X3²`.
pub fn quaddiag(lambda: f64, mu: f64, nu: f64) -> HomoPoly {
    let [x0, x1, x2, x3] = HomoPoly::vars();
    cexp(lambda, nu) * x0.powi(2)
        + cexp(-lambda, nu) * x1.powi(2)
        + cexp(mu, -nu) * x2.powi(2)
        + cexp(-mu, -nu) * x3.powi(2)
}

/// `i(X0² + X1²) + k(X1 X3 - X0 X2) + X1 X2 - X0 X3`.
pub fn quadnondiag(k: f64) -> HomoPoly {
    let [x0, x1, x2, x3] = HomoPoly::vars();
    c(0.0, 1.0) * (x0.powi(2) + x1.powi(2)) + r(k) * (&x1 * &x3 - &x0 * &x2) + &x1 * &x2 - x0 * x3
}

/// The quadric through the lift of `g = -ĝ = v`, `h = 2i + v/2`,
/// `ĥ = 2i - v/2`:
/// `4X0² + 4X0X1 - 4X1² - iX0X2 + 2iX0X3 + 2iX1X2 + iX1X3`.
pub fn quadnondiag_fitted() -> HomoPoly {
    let i = c(0.0, 1.0);
    HomoPoly::new(
        2,
        [
            ([2, 0, 0, 0], r(4.0)),
            ([1, 1, 0, 0], r(4.0)),
            ([0, 2, 0, 0], r(-4.0)),
            ([1, 0, 1, 0], -i),
            ([1, 0, 0, 1], 2.0 * i),
            ([0, 1, 1, 0], 2.0 * i),
            ([0, 1, 0, 1], i),
        ],
    )
    .expect("nonzero")
}

/// `c0 X0 + c1 X1 + c2 X2 + c3 X3`. Panics if all coefficients vanish.
pub fn plane(coeffs: [Complex64; 4]) -> HomoPoly {
    HomoPoly::linear(coeffs).expect("nonzero plane")
}

/// `X0² - X2²`.
pub fn plane_pair() -> HomoPoly {
    let [x0, _, x2, _] = HomoPoly::vars();
    x0.powi(2) - x2.powi(2)
}

/// `X1² - X2 X3`.
pub fn cone() -> HomoPoly {
    let [_, x1, x2, x3] = HomoPoly::vars();
    x1.powi(2) - x2 * x3
}

/// `X0 X3² + X1² X2`.
pub fn cubic_nonnormal_1() -> HomoPoly {
    let [x0, x1, x2, x3] = HomoPoly::vars();
    x0 * x3.powi(2) + x1.powi(2) * x2
}

/// `X0 X1 X3 + X2 X3² + X1³`.
pub fn cubic_nonnormal_2() -> HomoPoly {
    let [x0, x1, x2, x3] = HomoPoly::vars();
    &x0 * &x1 * x3.clone() + x2 * x3.powi(2) + x1.powi(3)
}

/// `X3³ - (c+1) X3² X1 + c X3 X1² - X2² X1`.
pub fn cubic_cone(k: Complex64) -> HomoPoly {
    let [_, x1, x2, x3] = HomoPoly::vars();
    x3.powi(3) - (k + 1.0) * (x3.powi(2) * x1.clone()) + k * (x3 * x1.powi(2)) - x2.powi(2) * x1
}

/// `(X1 X2 - X0 X3)² + 2 X1 X0 (X1 X2 + X0 X3)`.
pub fn quartic_scroll() -> HomoPoly {
    let [x0, x1, x2, x3] = HomoPoly::vars();
    let a = &x1 * &x2;
    let b = &x0 * &x3;
    (&a - &b).powi(2) + r(2.0) * (&x1 * &x0) * (a + b)
}

/// Every parameter-free surface plus sample members of the families, by
/// file name.
pub fn all() -> Vec<(&'static str, HomoPoly)> {
    vec![
        ("quadric_q", quadric_q()),
        ("quaddiag_0.2_0.7_0.3", quaddiag(0.2, 0.7, 0.3)),
        ("quadnondiag_k1", quadnondiag(1.0)),
        ("quadnondiag_fitted", quadnondiag_fitted()),
        ("plane_x3", plane([r(0.0), r(0.0), r(0.0), r(1.0)])),
        ("plane_pair", plane_pair()),
        ("cone", cone()),
        ("cubic_nonnormal_1", cubic_nonnormal_1()),
        ("cubic_nonnormal_2", cubic_nonnormal_2()),
        ("cubic_cone_c0", cubic_cone(r(0.0))),
        ("cubic_cone_c1", cubic_cone(r(1.0))),
        ("cubic_cone_c2", cubic_cone(r(2.0))),
        ("quartic_scroll", quartic_scroll()),
    ]
}
