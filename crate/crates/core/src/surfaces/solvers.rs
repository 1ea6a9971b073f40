//! Splittings whose lifts lie on a prescribed surface.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::holo::HoloMap;
use crate::slice::SliceFunction;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `e^{re + i im}` with components below rounding level set to zero, so
/// that angles such as `π/2` give exact units.
pub(crate) fn cexp(re: f64, im: f64) -> Complex64 {
    let z = c(re, im).exp();
    let tiny = 4.0 * f64::EPSILON * z.norm();
    c(if z.re.abs() < tiny { 0.0 } else { z.re }, if z.im.abs() < tiny { 0.0 } else { z.im })
}

/// Lift inside the plane `c0 X0 + c1 X1 + c2 X2 + c3 X3 = 0`, i.e.
/// `c0 + c2 g + c3 h = 0` and `c1 - c2 ĥ + c3 ĝ = 0`.
///
/// With `c3 != 0` the two free channels are `(p, q) = (g, ĥ)`. With
/// `c3 = 0` they are `(p, q) = (h, ĝ)`, and then `g`, `ĥ` are forced
/// constants.
pub fn solve_plane_splitting(coeffs: [Complex64; 4], p: HoloMap, q: HoloMap) -> Result<SliceFunction> {
    let [c0, c1, c2, c3] = coeffs;
    let zero = c(0.0, 0.0);
    if c3 != zero {
        let (g, hhat) = (p, q);
        let h = -((g.clone() * c2 + c0) / c3);
        let ghat = -((hhat.clone() * (-c2) + c1) / c3);
        Ok(SliceFunction::from_splitting(g, ghat, h, hhat))
    } else if c2 != zero {
        let (h, ghat) = (p, q);
        let g = -((h.clone() * c3 + c0) / c2);
        let hhat = (ghat.clone() * c3 + c1) / c2;
        Ok(SliceFunction::from_splitting(g, ghat, h, hhat))
    } else {
        Err(Error::DegeneratePlane)
    }
}

/// Residual of `e^μ g ĥ = e^{-μ} h ĝ` at `v`.
fn middle_residual(mu: f64, ch: [Complex64; 4]) -> f64 {
    let [g, gh, h, hh] = ch;
    (mu.exp() * g * hh - (-mu).exp() * h * gh).norm()
}

/// Lift on `e^{λ+iν}X0² + e^{-λ+iν}X1² + e^{μ-iν}X2² + e^{-μ-iν}X3² = 0`:
/// `g = v`, `ĝ = κ v` with `κ = sign · e^{μ-λ}`, and `h`, `ĥ` square
/// roots of the first and last equations, paired by the middle one.
pub fn solve_quaddiag_splitting(lambda: f64, mu: f64, nu: f64, sign: f64) -> Result<SliceFunction> {
    let kappa = sign.signum() * (mu - lambda).exp();
    let i = c(0.0, 1.0);
    let v = HoloMap::var();
    let g = v.clone();
    let ghat = v.clone() * kappa;
    let h = (((v.powi(2) * cexp(mu, -nu)) + cexp(lambda, nu)) * cexp(mu, nu)).sqrt() * i;
    let hhat_base =
        (((v.powi(2) * (cexp(-mu, -nu) * kappa * kappa)) + cexp(-lambda, nu)) * cexp(-mu, nu)).sqrt() * i;
    // a probe off the real axis and off both cuts
    let probe = c(0.37, 0.61);
    let mut best = f64::INFINITY;
    for s in [1.0, -1.0] {
        let hhat = hhat_base.clone() * s;
        let f = SliceFunction::from_splitting(g.clone(), ghat.clone(), h.clone(), hhat);
        let ch = f.splitting()?.eval(probe)?;
        let scale = 1.0 + ch.iter().map(|z| z.norm()).fold(0.0, f64::max).powi(2);
        let r = middle_residual(mu, ch) / scale;
        if r < 1e-12 {
            return Ok(f);
        }
        best = best.min(r);
    }
    Err(Error::BranchInconsistent { residual: best })
}

/// Lift on `X3³ - (c+1)X3²X1 + cX3X1² - X2²X1 = 0`: `g = h = 0` and
/// `ĥ = sqrt(ĝ³ - (c+1)ĝ² + cĝ)`.
pub fn solve_cubic_cone_splitting(k: Complex64, ghat: HoloMap) -> SliceFunction {
    let arg = ghat.powi(3) - ghat.powi(2) * (k + 1.0) + ghat.clone() * k;
    SliceFunction::from_splitting(HoloMap::zero(), ghat, HoloMap::zero(), arg.sqrt())
}
