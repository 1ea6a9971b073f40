//! The twistor transform into the Klein quadric of `P(Λ²C⁴)`, its real
//! structure, twistor-line detection and the affine-curve criterion.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::holo::{Domain, HoloMap};
use crate::qcore::Quaternion;
use crate::sampling::{self, SampleRng};
use crate::slice::{slice_derivative, slice_product, SliceFunction};
use crate::twistor::{chordal, ProjPoint3};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A point `[ξ1 : .. : ξ6]` in the basis `e01, e02, e03, e12, e13, e23`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ProjPoint5(pub [Complex64; 6]);

impl ProjPoint5 {
    pub fn coords(&self) -> &[Complex64; 6] {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn dist(&self, other: &ProjPoint5) -> f64 {
        chordal(&self.0, &other.0)
    }

    /// `|ξ1ξ6 - ξ2ξ5 + ξ3ξ4| / max|ξ|²`.
    pub fn klein_residual(&self) -> f64 {
        let x = &self.0;
        let m = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if m == 0.0 {
            return 0.0;
        }
        (x[0] * x[5] - x[1] * x[4] + x[2] * x[3]).norm() / (m * m)
    }

    /// Rescaled so that `ξ6 = 1`.
    pub fn affine(&self) -> Option<ProjPoint5> {
        let z = self.0[5];
        (z != c(0.0, 0.0)).then(|| ProjPoint5(self.0.map(|x| x / z)))
    }
}

/// Plücker coordinates `p_hk = a_h b_k - a_k b_h` of the line through `a`, `b`.
pub fn plucker(a: &[Complex64; 4], b: &[Complex64; 4]) -> ProjPoint5 {
    let p = |h: usize, k: usize| a[h] * b[k] - a[k] * b[h];
    ProjPoint5([p(0, 1), p(0, 2), p(0, 3), p(1, 2), p(1, 3), p(2, 3)])
}

/// The point of the line annihilated by the line through `a`, `b`, i.e. the
/// coordinates the twistor transform uses for a line of `CP³`.
pub fn line_point(a: &ProjPoint3, b: &ProjPoint3) -> ProjPoint5 {
    let p = plucker(&a.0, &b.0).0;
    ProjPoint5([p[5], -p[4], p[3], p[2], -p[1], p[0]])
}

/// `[ξ̄1, ξ̄5, -ξ̄4, -ξ̄3, ξ̄2, ξ̄6]`.
pub fn sigma(p: &ProjPoint5) -> ProjPoint5 {
    let x = p.0.map(|z| z.conj());
    ProjPoint5([x[0], x[4], -x[3], -x[2], x[1], x[5]])
}

/// Chordal distance between `p` and `σ(p)`; zero exactly for twistor lines.
pub fn sigma_residual(p: &ProjPoint5) -> f64 {
    p.dist(&sigma(p))
}

/// The transform point of the fibre over `q`.
pub fn fiber_point(q: Quaternion) -> ProjPoint5 {
    let (q1, q2) = q.split();
    ProjPoint5([c(q1.norm_sqr() + q2.norm_sqr(), 0.0), q2, -q1, q1.conj(), q2.conj(), c(1.0, 0.0)])
}

/// A curve in the Klein quadric given by six holomorphic coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformCurve {
    pub xi: [HoloMap; 6],
    pub domain: Domain,
}

impl TransformCurve {
    pub fn new(xi: [HoloMap; 6]) -> Self {
        TransformCurve { xi, domain: Domain::UpperHalfPlane }
    }

    pub fn eval(&self, v: Complex64) -> Result<ProjPoint5> {
        let mut out = [c(0.0, 0.0); 6];
        for (o, m) in out.iter_mut().zip(&self.xi) {
            *o = m.eval(v)?;
        }
        Ok(ProjPoint5(out))
    }

    /// Largest `|∂ξ/∂v̄|` by central differences over `samples` points.
    pub fn holomorphy_residual(&self, rng: &mut SampleRng, samples: usize) -> Result<f64> {
        let d = 1e-5;
        let mut worst: f64 = 0.0;
        for _ in 0..samples {
            let v = sampling::upper(rng);
            let (px, mx) = (self.eval(v + d)?, self.eval(v - d)?);
            let (py, my) = (self.eval(v + c(0.0, d))?, self.eval(v - c(0.0, d))?);
            for k in 0..6 {
                let dx = (px.0[k] - mx.0[k]) / (2.0 * d);
                let dy = (py.0[k] - my.0[k]) / (2.0 * d);
                let dbar = (dx + c(0.0, 1.0) * dy) * 0.5;
                worst = worst.max(dbar.norm() / (1.0 + dx.norm()));
            }
        }
        Ok(worst)
    }
}

/// `[gĝ + ĥh, h, -g, ĝ, ĥ, 1]`.
pub fn transform(f: &SliceFunction) -> Result<TransformCurve> {
    let s = f.splitting()?;
    let (g, gh, h, hh) = (&s.g, &s.ghat, &s.h, &s.hhat);
    let xi1 = g * gh + hh * h;
    Ok(TransformCurve { xi: [xi1, h.clone(), -g, gh.clone(), hh.clone(), HoloMap::one()], domain: f.domain().clone() })
}

/// The transform evaluated through the wedge of `e1 = [g, -ĥ, -1, 0]` and
/// `e2 = [h, ĝ, 0, -1]`.
pub fn transform_by_wedge(f: &SliceFunction, v: Complex64) -> Result<ProjPoint5> {
    let [g, gh, h, hh] = f.splitting()?.eval(v)?;
    let one = c(1.0, 0.0);
    let zero = c(0.0, 0.0);
    Ok(plucker(&[g, -hh, -one, zero], &[h, gh, zero, -one]))
}

/// `g = -ξ3`, `h = ξ2`, `ĝ = ξ4`, `ĥ = ξ5` after dividing by `ξ6`, which is
/// checked to be nonzero at `samples` points of the domain.
pub fn inverse_transform(curve: &TransformCurve, rng: &mut SampleRng, samples: usize) -> Result<SliceFunction> {
    for _ in 0..samples {
        let v = sampling::upper(rng);
        if !curve.domain.contains(v) {
            continue;
        }
        let z = curve.xi[5].eval(v).unwrap_or(c(0.0, 0.0));
        if z.norm() < 1e-14 {
            return Err(Error::XiSixVanishes { re: v.re, im: v.im });
        }
    }
    let six = &curve.xi[5];
    let norm = |m: &HoloMap| m / six;
    Ok(SliceFunction::from_splitting(-norm(&curve.xi[2]), norm(&curve.xi[3]), norm(&curve.xi[1]), norm(&curve.xi[4]))
        .with_domain(curve.domain.clone()))
}

/// Search settings for [`find_twistor_lines`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LineSearch {
    /// `[re_min, re_max, im_min, im_max]`; the part below the real axis is
    /// ignored.
    pub region: [f64; 4],
    pub grid: usize,
    pub tol: f64,
}

impl Default for LineSearch {
    fn default() -> Self {
        LineSearch { region: [-3.0, 3.0, -3.0, 3.0], grid: 400, tol: 1e-8 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwistorLine {
    pub v: Complex64,
    pub residual: f64,
    /// `v` sits on the real axis, the boundary of the upper half-plane.
    pub boundary: bool,
}

fn residual_at(curve: &TransformCurve, v: Complex64) -> f64 {
    match curve.eval(v) {
        Ok(p) if p.0.iter().all(|z| z.re.is_finite() && z.im.is_finite()) => sigma_residual(&p),
        _ => f64::INFINITY,
    }
}

/// Pattern search on a dyadic lattice, so that dyadic solutions such as
/// `v = ±1` can be hit exactly.
fn refine(curve: &TransformCurve, start: Complex64, step: f64, im_min: f64) -> (Complex64, f64) {
    let mut v = c((start.re / step).round() * step, (start.im / step).round() * step);
    if v.im < im_min {
        v.im = im_min;
    }
    let mut r = residual_at(curve, v);
    let mut h = step;
    let dirs = [c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(1.0, 1.0), c(1.0, -1.0), c(-1.0, 1.0), c(-1.0, -1.0)];
    for _ in 0..20000 {
        if r == 0.0 || h < 1e-17 * (1.0 + v.norm()) {
            break;
        }
        let mut best = (v, r);
        for d in dirs {
            let w = v + d * h;
            if w.im < im_min {
                continue;
            }
            let rw = residual_at(curve, w);
            if rw < best.1 {
                best = (w, rw);
            }
        }
        if best.1 < r {
            (v, r) = best;
        } else {
            h *= 0.5;
        }
    }
    (v, r)
}

/// All `v` in the closed upper half of `search.region` where the curve
/// meets the fixed locus of `σ`, i.e. where `γ(v)` is a twistor line.
pub fn find_twistor_lines(curve: &TransformCurve, search: &LineSearch) -> Vec<TwistorLine> {
    let [x0, x1, y0, y1] = search.region;
    let y0 = y0.max(0.0);
    if y1 < y0 || search.grid < 2 {
        return Vec::new();
    }
    let n = search.grid;
    let at = |i: usize, j: usize| {
        c(x0 + (x1 - x0) * i as f64 / (n - 1) as f64, y0 + (y1 - y0) * j as f64 / (n - 1) as f64)
    };
    let r: Vec<f64> = (0..n * n).into_par_iter().map(|k| residual_at(curve, at(k / n, k % n))).collect();
    let mut minima = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let k = i * n + j;
            if !r[k].is_finite() {
                continue;
            }
            let mut is_min = true;
            for di in -1i64..=1 {
                for dj in -1i64..=1 {
                    let (a, b) = (i as i64 + di, j as i64 + dj);
                    if (di, dj) == (0, 0) || a < 0 || b < 0 || a >= n as i64 || b >= n as i64 {
                        continue;
                    }
                    let kk = a as usize * n + b as usize;
                    // ties go to the earlier cell so plateaus yield one point
                    if r[kk] < r[k] || (r[kk] == r[k] && kk < k) {
                        is_min = false;
                    }
                }
            }
            if is_min {
                minima.push(at(i, j));
            }
        }
    }
    let spacing = ((x1 - x0).max(y1 - y0) / (n - 1) as f64).max(f64::MIN_POSITIVE);
    let step = 2f64.powi(spacing.log2().floor() as i32);
    let refined: Vec<(Complex64, f64)> = minima.par_iter().map(|&v| refine(curve, v, step, y0)).collect();
    let mut found: Vec<TwistorLine> = Vec::new();
    for (v, res) in refined {
        if res >= search.tol || v.re < x0 || v.re > x1 || v.im > y1 {
            continue;
        }
        if found.iter().any(|t| (t.v - v).norm() < 1e-6) {
            continue;
        }
        found.push(TwistorLine { v, residual: res, boundary: v.im.abs() < 1e-12 });
    }
    found.sort_by(|a, b| (a.v.re, a.v.im).partial_cmp(&(b.v.re, b.v.im)).expect("finite"));
    found
}

/// Outcome of [`check_affine_transform`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AffineReport {
    pub affine: bool,
    pub hermitian: Complex64,
    pub fit_residual: f64,
    pub f_i: Quaternion,
    pub f_minus_i: Quaternion,
    pub g_i: Quaternion,
    pub g_minus_i: Quaternion,
    pub tol: f64,
}

/// `p1 q̄1 + p2 q̄2` for `p = p1 + p2 j`, `q = q1 + q2 j`.
pub fn hermitian_i(p: Quaternion, q: Quaternion) -> Complex64 {
    let (p1, p2) = p.split();
    let (q1, q2) = q.split();
    p1 * q1.conj() + p2 * q2.conj()
}

/// Values on `C_i` and `C_{-i}` of a function whose channels are constant;
/// fails with the spread of the channels otherwise.
fn slice_constant_values(f: &SliceFunction, rng: &mut SampleRng, tol: f64) -> Result<(Quaternion, Quaternion)> {
    let s = f.splitting()?;
    let base = s.eval(c(0.3, 0.8))?;
    let mut spread: f64 = 0.0;
    for _ in 0..12 {
        let v = sampling::upper(rng);
        let Ok(ch) = s.eval(v) else { continue };
        for k in 0..4 {
            spread = spread.max((ch[k] - base[k]).norm() / (1.0 + base[k].norm()));
        }
    }
    if spread > tol {
        return Err(Error::NotSliceAffine { residual: spread });
    }
    let [g, gh, h, hh] = base;
    Ok((Quaternion::from_split(g, h), Quaternion::from_split(gh.conj(), hh.conj())))
}

/// Tests whether the transform of `f` becomes a line in `v` once `ξ6` is
/// cleared to `A + Bv`, and evaluates `h_i(A f_i - B g_i, Ā f_{-i} - B̄ g_{-i})`
/// where `f_{±i}` are the values of the slice derivative of `(A + xB)·f` and
/// `g_{±i}` those of the remainder `(A + xB)·f - x·∂((A + xB)·f)`.
pub fn check_affine_transform(f: &SliceFunction, a: Complex64, b: Complex64, tol: f64) -> Result<AffineReport> {
    if a == c(0.0, 0.0) && b == c(0.0, 0.0) {
        return Err(Error::Invalid("A and B both vanish".into()));
    }
    let mut rng = sampling::rng(0x5eed);
    let factor = SliceFunction::polynomial(&[Quaternion::from_complex(a), Quaternion::from_complex(b)]).with_domain(f.domain().clone());
    let big_f = slice_product(&factor, f)?;
    let s = slice_derivative(&big_f);
    let (f_i, f_mi) = slice_constant_values(&s, &mut rng, tol)?;
    let x = SliceFunction::identity().with_domain(f.domain().clone());
    let xs = slice_product(&x, &s)?;
    let (fs, ps) = (big_f.splitting()?, xs.splitting()?);
    let rem = SliceFunction::from_splitting(&fs.g - &ps.g, &fs.ghat - &ps.ghat, &fs.h - &ps.h, &fs.hhat - &ps.hhat);
    let (g_i, g_mi) = slice_constant_values(&rem, &mut rng, tol)?;
    let (aq, bq) = (Quaternion::from_complex(a), Quaternion::from_complex(b));
    let (ac, bc) = (Quaternion::from_complex(a.conj()), Quaternion::from_complex(b.conj()));
    let hermitian = hermitian_i(aq * f_i - bq * g_i, ac * f_mi - bc * g_mi);

    // least-squares line through (A + Bv) γ(v) on the first coordinates
    let curve = transform(f)?;
    let mut pts: Vec<(Complex64, [Complex64; 6])> = Vec::new();
    let mut tries = 0;
    while pts.len() < 12 && tries < 200 {
        tries += 1;
        let v = sampling::upper(&mut rng);
        if let Ok(p) = curve.eval(v) {
            let w = a + b * v;
            pts.push((v, p.0.map(|z| z * w)));
        }
    }
    let fit_residual = line_fit_residual(&pts);
    Ok(AffineReport {
        affine: fit_residual < tol && hermitian.norm() < tol,
        hermitian,
        fit_residual,
        f_i,
        f_minus_i: f_mi,
        g_i,
        g_minus_i: g_mi,
        tol,
    })
}

/// Worst relative misfit of `y_k(v) ≈ c0 + c1 v` per coordinate.
fn line_fit_residual(pts: &[(Complex64, [Complex64; 6])]) -> f64 {
    use nalgebra::{DMatrix, DVector};
    if pts.len() < 3 {
        return f64::INFINITY;
    }
    let m = DMatrix::from_fn(pts.len(), 2, |i, j| if j == 0 { c(1.0, 0.0) } else { pts[i].0 });
    let svd = m.clone().svd(true, true);
    let mut worst: f64 = 0.0;
    for k in 0..6 {
        let y = DVector::from_fn(pts.len(), |i, _| pts[i].1[k]);
        let Ok(sol) = svd.solve(&y, 1e-14) else { return f64::INFINITY };
        let r = &m * sol - &y;
        let scale = 1.0 + y.iter().map(|z| z.norm()).fold(0.0, f64::max);
        worst = worst.max(r.iter().map(|z| z.norm()).fold(0.0, f64::max) / scale);
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slice::catalog;
    use crate::surfaces::solve_quaddiag_splitting;
    use crate::twistor::{lift, FiberLine, HPoint};
    use std::f64::consts::{FRAC_PI_2, LN_2};

    fn pt(x: [Complex64; 6]) -> ProjPoint5 {
        ProjPoint5(x)
    }

    fn r(x: f64) -> Complex64 {
        c(x, 0.0)
    }

    #[test]
    fn example_transforms() {
        let cases = [
            (catalog::one_minus_ii(), [r(0.0), r(0.0), r(-2.0), r(0.0), r(0.0), r(1.0)]),
            (catalog::one_plus_ii(), [r(0.0), r(0.0), r(0.0), r(2.0), r(0.0), r(1.0)]),
        ];
        for (f, want) in cases {
            let t = transform(&f).unwrap();
            assert!(t.eval(c(0.2, 1.0)).unwrap().dist(&pt(want)) < 1e-15);
        }
        let v = c(-0.7, 1.3);
        let t3 = transform(&catalog::f0()).unwrap().eval(v).unwrap();
        assert!(t3.dist(&pt([r(0.0), r(0.0), -v, r(0.0), r(0.0), r(1.0)])) < 1e-15);
        let t4 = transform(&catalog::f0_plus()).unwrap().eval(v).unwrap();
        assert!(t4.dist(&pt([r(0.0), r(0.0), r(0.0), v, r(0.0), r(1.0)])) < 1e-15);
    }

    #[test]
    fn wedge_and_klein() {
        let mut rng = sampling::rng(12);
        let mut fs = catalog::all();
        fs.push(("quaddiag", solve_quaddiag_splitting(0.2, 0.7, 0.3, 1.0).unwrap()));
        for (name, f) in fs {
            let t = transform(&f).unwrap();
            for _ in 0..200 {
                let v = sampling::upper(&mut rng);
                let (Ok(p), Ok(w)) = (t.eval(v), transform_by_wedge(&f, v)) else { continue };
                let scale = p.0.iter().map(|z| z.norm()).fold(1.0, f64::max);
                for k in 0..6 {
                    assert!((p.0[k] - w.0[k]).norm() < 1e-12 * scale * scale, "{name}");
                }
                assert!(p.klein_residual() < 1e-10, "{name}");
            }
        }
    }

    #[test]
    fn transform_is_the_lift_line() {
        // the transform annihilates every point of the lifted line
        let mut rng = sampling::rng(13);
        let f = catalog::x_minus_j();
        let t = transform(&f).unwrap();
        for _ in 0..50 {
            let v = sampling::upper(&mut rng);
            let a = lift(&f, c(0.0, 0.0), v).unwrap();
            let b = lift(&f, c(1.0, 0.5), v).unwrap();
            assert!(line_point(&a, &b).dist(&t.eval(v).unwrap()) < 1e-12);
        }
    }

    #[test]
    fn sigma_properties() {
        let e = pt([r(1.0), r(0.0), r(0.0), r(0.0), r(0.0), r(0.0)]);
        assert_eq!(sigma(&e), e);
        let mut rng = sampling::rng(14);
        for _ in 0..200 {
            let x: [Complex64; 6] = std::array::from_fn(|_| sampling::complex(&mut rng, 2.0));
            assert!(sigma(&sigma(&pt(x))).dist(&pt(x)) < 1e-12);
            let q = sampling::quaternion(&mut rng, 2.0);
            let p = fiber_point(q);
            assert!(sigma_residual(&p) < 1e-12);
            // the same point from two points of the fibre itself
            let [a, b] = FiberLine::new(HPoint::Finite(q)).basis();
            assert!(line_point(&a, &b).dist(&p) < 1e-12);
        }
        // f0 at v = 2i is not a twistor line
        let p = transform(&catalog::f0()).unwrap().eval(c(0.0, 2.0)).unwrap();
        assert_eq!(sigma(&p), pt([r(0.0), r(0.0), r(0.0), c(0.0, -2.0), r(0.0), r(1.0)]));
        assert!(sigma_residual(&p) > 0.5);
    }

    #[test]
    fn inverse_round_trip() {
        let mut rng = sampling::rng(15);
        let curve = TransformCurve::new([HoloMap::zero(), HoloMap::zero(), -HoloMap::var(), HoloMap::zero(), HoloMap::zero(), HoloMap::one()]);
        let f = inverse_transform(&curve, &mut rng, 50).unwrap();
        let want = catalog::f0();
        for _ in 0..50 {
            let x = sampling::non_real(&mut rng);
            assert!(f.eval(x).unwrap().dist(want.eval(x).unwrap()) < 1e-15);
        }
        let g = solve_quaddiag_splitting(0.2, 0.7, 0.3, 1.0).unwrap();
        let back = inverse_transform(&transform(&g).unwrap(), &mut rng, 50).unwrap();
        for _ in 0..200 {
            let v = sampling::upper(&mut rng);
            let (a, b) = (g.splitting().unwrap().eval(v).unwrap(), back.splitting().unwrap().eval(v).unwrap());
            for k in 0..4 {
                assert!((a[k] - b[k]).norm() < 1e-12);
            }
        }
        let bad = TransformCurve::new([HoloMap::one(), HoloMap::one(), HoloMap::one(), HoloMap::one(), HoloMap::one(), HoloMap::zero()]);
        assert!(matches!(inverse_transform(&bad, &mut rng, 5), Err(Error::XiSixVanishes { .. })));
    }

    #[test]
    fn transforms_are_holomorphic() {
        let mut rng = sampling::rng(16);
        for (name, f) in catalog::all() {
            let t = transform(&f).unwrap();
            assert!(t.holomorphy_residual(&mut rng, 50).unwrap() < 1e-6, "{name}");
        }
    }

    #[test]
    fn lines_on_quadric_curve() {
        let f = solve_quaddiag_splitting(LN_2, LN_2, FRAC_PI_2, 1.0).unwrap();
        let t = transform(&f).unwrap();
        let found = find_twistor_lines(&t, &LineSearch::default());
        let vs: Vec<Complex64> = found.iter().map(|l| l.v).collect();
        assert_eq!(vs, vec![r(-1.0), r(1.0)], "{found:?}");
        assert!(found.iter().all(|l| l.residual < 1e-8 && l.boundary));

        let f = solve_quaddiag_splitting(0.0, 0.0, 0.5, 1.0).unwrap();
        assert!(find_twistor_lines(&transform(&f).unwrap(), &LineSearch::default()).is_empty());
    }

    #[test]
    fn f0_has_only_the_boundary_line() {
        let t = transform(&catalog::f0()).unwrap();
        let found = find_twistor_lines(&t, &LineSearch { grid: 100, ..LineSearch::default() });
        assert_eq!(found.len(), 1);
        assert!(found[0].boundary && found[0].v.norm() < 1e-12);
    }

    #[test]
    fn affine_family() {
        let f = catalog::mobius_f0(1.0, 0.0, 0.0, 1.0);
        let rep = check_affine_transform(&f, r(1.0), r(0.0), 1e-8).unwrap();
        assert!(rep.affine && rep.hermitian.norm() == 0.0, "{rep:?}");

        let f = catalog::mobius_f0(2.0, 1.0, 1.0, 1.0);
        let rep = check_affine_transform(&f, r(1.0), r(1.0), 1e-8).unwrap();
        assert!(rep.affine && rep.hermitian.norm() < 1e-10, "{rep:?}");
        assert!(rep.g_i.dist(Quaternion::ONE) < 1e-12 && rep.f_i.dist(Quaternion::real(2.0)) < 1e-12);
    }

    #[test]
    fn affine_falsifier() {
        let a = Quaternion::new(1.0, 0.0, 1.0, 0.0);
        let f = SliceFunction::polynomial(&[Quaternion::new(0.5, 0.0, 0.0, -1.0), a]);
        let rep = check_affine_transform(&f, r(1.0), r(0.0), 1e-8).unwrap();
        assert!(!rep.affine);
        assert!((rep.hermitian.norm() - a.norm_sqr()).abs() < 1e-12);
        let e = check_affine_transform(&catalog::x_squared(), r(1.0), r(0.0), 1e-8).unwrap_err();
        assert!(matches!(e, Error::NotSliceAffine { .. }));
    }
}
