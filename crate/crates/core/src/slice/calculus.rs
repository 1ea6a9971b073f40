//! Slice product, conjugate, normal function, reciprocal, derivatives and
//! the sampled structural tests.
//!
//! On splittings every combinator has a closed form, so its output is again
//! expression-built and can be differentiated exactly. Stem-backed inputs go
//! through the stems pointwise and derivatives use central differences.

use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;

use super::{Provenance, SliceFunction, Splitting, StemPair, to_stem};
use crate::error::{Error, Result};
use crate::holo::{Domain, HoloMap};
use crate::qcore::{CQuaternion, ImaginaryUnit, Quaternion, cq_mul, decompose};
use crate::sampling::{self, SampleRng};

/// Step for central differences.
pub const FD_STEP: f64 = 1e-5;

fn common_domain(f: &SliceFunction, g: &SliceFunction) -> Result<Domain> {
    if f.domain() == g.domain() {
        Ok(f.domain().clone())
    } else {
        Err(Error::DomainMismatch)
    }
}

fn stem_fn(
    domain: Domain,
    f: impl Fn(Complex64) -> Result<CQuaternion> + Send + Sync + 'static,
) -> SliceFunction {
    SliceFunction::from_stem_fn(
        Arc::new(move |z| {
            let p = f(z)?;
            Ok((p.x, p.y))
        }),
        domain,
    )
}

/// `f · g`, induced by the pointwise product of stems.
pub fn slice_product(f: &SliceFunction, g: &SliceFunction) -> Result<SliceFunction> {
    let domain = common_domain(f, g)?;
    if let (Ok(a), Ok(b)) = (f.splitting(), g.splitting()) {
        let split = Splitting::new(
            &a.g * &b.g - &a.h * &b.hhat,
            &a.ghat * &b.ghat - &a.hhat * &b.h,
            &a.g * &b.h + &a.h * &b.ghat,
            &a.ghat * &b.hhat + &a.hhat * &b.g,
        );
        return Ok(SliceFunction::derived(split, domain, "product"));
    }
    let (sf, sg) = (to_stem(f), to_stem(g));
    Ok(stem_fn(domain, move |z| Ok(cq_mul(sf.eval_cq(z)?, sg.eval_cq(z)?))))
}

/// `f^c`, induced by `F1^c + √-1 F2^c`.
pub fn conjugate(f: &SliceFunction) -> SliceFunction {
    if let Ok(s) = f.splitting() {
        let split = Splitting::new(s.ghat.clone(), s.g.clone(), -&s.h, -&s.hhat);
        return SliceFunction::derived(split, f.domain().clone(), "conjugate");
    }
    let sf = to_stem(f);
    stem_fn(f.domain().clone(), move |z| Ok(sf.eval_cq(z)?.conj_q()))
}

/// `N(f) = f^c · f`; on splittings `n = g ĝ + h ĥ` in both slots.
pub fn normal(f: &SliceFunction) -> SliceFunction {
    if let Ok(s) = f.splitting() {
        let n = &s.g * &s.ghat + &s.h * &s.hhat;
        let split = Splitting::new(n.clone(), n, HoloMap::zero(), HoloMap::zero());
        return SliceFunction::derived(split, f.domain().clone(), "normal");
    }
    let sf = to_stem(f);
    stem_fn(f.domain().clone(), move |z| {
        let p = sf.eval_cq(z)?;
        Ok(cq_mul(p.conj_q(), p))
    })
}

/// `f^{-·} = N(f)^{-1} f^c`. Evaluation on `V(N(f))` fails with `ZeroNormal`.
pub fn reciprocal(f: &SliceFunction) -> SliceFunction {
    if let Ok(s) = f.splitting() {
        let n = &s.g * &s.ghat + &s.h * &s.hhat;
        let split = Splitting::new(&s.ghat / &n, &s.g / &n, -&s.h / n.clone(), -&s.hhat / n);
        return SliceFunction::derived(split, f.domain().clone(), "reciprocal");
    }
    let sf = to_stem(f);
    stem_fn(f.domain().clone(), move |z| {
        let p = sf.eval_cq(z)?;
        let np = cq_mul(p.conj_q(), p);
        // N(f) is slice preserving: its stem is a complex scalar n1 + √-1 n2
        let n = Complex64::new(np.x.q0, np.y.q0);
        if n.norm() == 0.0 {
            return Err(Error::ZeroNormal);
        }
        let inv = n.inv();
        let s = CQuaternion::new(Quaternion::real(inv.re), Quaternion::real(inv.im));
        Ok(cq_mul(s, p.conj_q()))
    })
}

/// `∂f/∂x`: exact on splittings, central differences on stems.
pub fn slice_derivative(f: &SliceFunction) -> SliceFunction {
    if let Ok(s) = f.splitting() {
        return SliceFunction::derived(s.map(HoloMap::derivative), f.domain().clone(), "derivative");
    }
    let sf = to_stem(f);
    stem_fn(f.domain().clone(), move |z| {
        let d = FD_STEP;
        let (a1, a2) = sf.eval(z + d)?;
        let (b1, b2) = sf.eval(z - d)?;
        let (c1, c2) = sf.eval(z + Complex64::new(0.0, d))?;
        let (e1, e2) = sf.eval(z - Complex64::new(0.0, d))?;
        let (da1, da2) = ((a1 - b1) / (2.0 * d), (a2 - b2) / (2.0 * d));
        let (db1, db2) = ((c1 - e1) / (2.0 * d), (c2 - e2) / (2.0 * d));
        Ok(CQuaternion::new((da1 + db2) * 0.5, (da2 - db1) * 0.5))
    })
}

/// `∂_s f(x) = ½ Im(x)^{-1} (f(x) - f(x^c))`.
pub fn spherical_derivative(f: &SliceFunction, x: Quaternion) -> Result<Quaternion> {
    let fx = f.eval(x)?;
    let fxc = f.eval(x.conj())?;
    let im_inv = x.im().inv().ok_or(Error::RealInput { tol: 0.0 })?;
    Ok(im_inv * (fx - fxc) * 0.5)
}

/// `∂_s f` as a slice function: its stem is `(F2(z)/Im z, 0)`.
pub fn spherical_derivative_fn(f: &SliceFunction) -> SliceFunction {
    let sf = to_stem(f);
    stem_fn(f.domain().clone(), move |z| {
        let (_, f2) = sf.eval(z)?;
        Ok(CQuaternion::new(f2 / z.im, Quaternion::ZERO))
    })
}

/// Constant / slice-constant / slice-affine decomposition with respect to
/// `g± = 1 ± Ii` and `f± = x g±`.
#[derive(Debug, Clone, PartialEq)]
pub enum Classification {
    Constant {
        value: Quaternion,
    },
    /// `f = g+ q+ + g- q-`.
    SliceConstant {
        q_plus: Quaternion,
        q_minus: Quaternion,
    },
    /// `f = f+ q1+ + f- q1- + g+ q0+ + g- q0-`.
    SliceAffine {
        q1_plus: Quaternion,
        q1_minus: Quaternion,
        q0_plus: Quaternion,
        q0_minus: Quaternion,
    },
    Neither,
}

impl Classification {
    pub fn extends_to_r(&self, tol: f64) -> bool {
        match self {
            Classification::Constant { .. } => true,
            Classification::SliceConstant { q_plus, q_minus } => q_plus.dist(*q_minus) <= tol,
            Classification::SliceAffine { q1_plus, q1_minus, q0_plus, q0_minus } => {
                q1_plus.dist(*q1_minus) <= tol && q0_plus.dist(*q0_minus) <= tol
            }
            Classification::Neither => false,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Classification::Constant { .. } => "constant",
            Classification::SliceConstant { .. } => "slice-constant",
            Classification::SliceAffine { .. } => "slice-affine",
            Classification::Neither => "neither",
        }
    }
}

fn max_channel(s: &Splitting, pts: &[Complex64]) -> Result<f64> {
    let mut m: f64 = 0.0;
    for v in pts {
        for c in s.eval(*v)? {
            m = m.max(c.norm());
        }
    }
    Ok(m)
}

pub fn classify_constant_affine(
    f: &SliceFunction,
    rng: &mut SampleRng,
    samples: usize,
    tol: f64,
) -> Result<Classification> {
    let s = f.splitting()?;
    let pts: Vec<Complex64> = (0..samples.max(1))
        .map(|_| sampling::upper(rng))
        .filter(|v| f.domain().contains(*v))
        .collect();
    let v = *pts.first().ok_or_else(|| Error::Invalid("no samples in the domain".into()))?;
    let d1 = s.map(HoloMap::derivative);
    let d2 = d1.map(HoloMap::derivative);

    let [g, gh, h, hh] = s.eval(v)?;
    if max_channel(&d1, &pts)? <= tol {
        let q_minus = Quaternion::from_split(g, h) * 0.5;
        let q_plus = Quaternion::from_split(gh.conj(), hh.conj()) * 0.5;
        if q_plus.dist(q_minus) <= tol {
            return Ok(Classification::Constant { value: q_plus + q_minus });
        }
        return Ok(Classification::SliceConstant { q_plus, q_minus });
    }
    if max_channel(&d2, &pts)? <= tol {
        let [dg, dgh, dh, dhh] = d1.eval(v)?;
        // on C_i: f = 2 v q1- + 2 q0-, on C_{-i} at v̄: 2 v̄ q1+ + 2 q0+
        let q1_minus = Quaternion::from_split(dg, dh) * 0.5;
        let q0_minus = Quaternion::from_split(g - v * dg, h - v * dh) * 0.5;
        let q1_plus = Quaternion::from_split(dgh.conj(), dhh.conj()) * 0.5;
        let q0_plus = Quaternion::from_split((gh - v * dgh).conj(), (hh - v * dhh).conj()) * 0.5;
        return Ok(Classification::SliceAffine { q1_plus, q1_minus, q0_plus, q0_minus });
    }
    Ok(Classification::Neither)
}

fn slice_distance(q: Quaternion, unit: ImaginaryUnit) -> f64 {
    // component of Im q orthogonal to the unit
    let u = unit.to_quaternion();
    let par = u.dot(q.im());
    (q.im() - u * par).norm()
}

/// Samples `f(C_J) ⊂ C_J` and `f(x^c) = f(x)^c`.
pub fn is_real(f: &SliceFunction, rng: &mut SampleRng, samples: usize, tol: f64) -> Result<bool> {
    for _ in 0..samples {
        let x = sampling::non_real(rng);
        let fx = f.eval(x)?;
        let unit = decompose(x)?.unit;
        let scale = 1.0 + fx.norm();
        if slice_distance(fx, unit) > tol * scale {
            return Ok(false);
        }
        if f.eval(x.conj())?.dist(fx.conj()) > tol * scale {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Compares the limits from `C_i^+` and `C_{-i}^+` at sampled real points.
pub fn extends_to_r(f: &SliceFunction, rng: &mut SampleRng, samples: usize, tol: f64) -> Result<bool> {
    let eps = 1e-9;
    for _ in 0..samples {
        let t: f64 = rng.gen_range(-2.0..2.0);
        let up = f.eval_coords(t, eps, ImaginaryUnit::I)?;
        let down = f.eval_coords(t, eps, ImaginaryUnit::MINUS_I)?;
        if up.dist(down) > tol * (1.0 + up.norm()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Largest Cauchy-Riemann defect of the stem, by central differences.
pub fn check_regular(stem: &StemPair, rng: &mut SampleRng, samples: usize) -> Result<f64> {
    let d = FD_STEP;
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let z = sampling::upper(rng);
        let (a1, a2) = stem.eval(z + d)?;
        let (b1, b2) = stem.eval(z - d)?;
        let (c1, c2) = stem.eval(z + Complex64::new(0.0, d))?;
        let (e1, e2) = stem.eval(z - Complex64::new(0.0, d))?;
        let (da1, da2) = ((a1 - b1) / (2.0 * d), (a2 - b2) / (2.0 * d));
        let (db1, db2) = ((c1 - e1) / (2.0 * d), (c2 - e2) / (2.0 * d));
        let scale = 1.0 + da1.norm() + da2.norm();
        worst = worst.max((da1 - db2).norm() / scale).max((da2 + db1).norm() / scale);
    }
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SlicenessReport {
    /// Largest violation of `F1` even, `F2` odd.
    pub parity: f64,
    /// Largest mismatch between `F1 + L F2` and `f(α + Lβ)` for test units `L`.
    pub consistency: f64,
    pub residual: f64,
    pub slice: bool,
}

/// Reconstructs a candidate stem from the values on `C_J` and `C_K` and
/// checks both its parity and that it reproduces `f` on other slices.
pub fn check_sliceness(
    f: &dyn Fn(Quaternion) -> Result<Quaternion>,
    j: ImaginaryUnit,
    k: ImaginaryUnit,
    rng: &mut SampleRng,
    samples: usize,
    tol: f64,
) -> Result<SlicenessReport> {
    let (jq, kq) = (j.to_quaternion(), k.to_quaternion());
    if j.dist(k) < 1e-12 {
        return Err(Error::DegenerateUnits);
    }
    let jk_inv = (jq - kq).inv().ok_or(Error::DegenerateUnits)?;
    let at = |alpha: f64, beta: f64, u: Quaternion| f(Quaternion::real(alpha) + u * beta);
    let stem = |alpha: f64, beta: f64| -> Result<(Quaternion, Quaternion)> {
        let fj = at(alpha, beta, jq)?;
        let fk = at(alpha, beta, kq)?;
        let f2 = jk_inv * (fj - fk);
        Ok((fj - jq * f2, f2))
    };
    let (mut parity, mut consistency) = (0.0f64, 0.0f64);
    for _ in 0..samples {
        let v = sampling::upper(rng);
        let (f1, f2) = stem(v.re, v.im)?;
        let (g1, g2) = stem(v.re, -v.im)?;
        parity = parity.max(f1.dist(g1)).max((f2 + g2).norm());
        let units = [
            ImaginaryUnit::I,
            ImaginaryUnit::J,
            ImaginaryUnit::K,
            ImaginaryUnit::MINUS_I,
            sampling::unit(rng),
        ];
        for l in units {
            let lq = l.to_quaternion();
            let predicted = f1 + lq * f2;
            consistency = consistency.max(predicted.dist(at(v.re, v.im, lq)?));
        }
    }
    let residual = parity.max(consistency);
    Ok(SlicenessReport { parity, consistency, residual, slice: residual <= tol })
}

impl SliceFunction {
    pub fn is_derived(&self) -> bool {
        matches!(self.provenance(), Provenance::Derived(_))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slice::{catalog, from_stem};

    fn funcs() -> Vec<SliceFunction> {
        let mut v: Vec<SliceFunction> = catalog::all().into_iter().map(|(_, f)| f).collect();
        v.push(SliceFunction::parse("v^2 - 1i v", "exp(v)", "sqrt(v + 3)", "(1+1i) * v^3").unwrap());
        v
    }

    /// Product through stems in H ⊗ C, evaluated at x.
    fn stem_product_oracle(f: &SliceFunction, g: &SliceFunction, x: Quaternion) -> Quaternion {
        let s = decompose(x).unwrap();
        let p = cq_mul(to_stem(f).eval_cq(s.v()).unwrap(), to_stem(g).eval_cq(s.v()).unwrap());
        p.induce(s.unit)
    }

    #[test]
    fn product_with_real_function_is_pointwise() {
        let mut rng = sampling::rng(1);
        let f = catalog::x_squared_plus_one();
        let g = SliceFunction::parse("1i v", "2", "v - 1", "3i").unwrap();
        let p = slice_product(&f, &g).unwrap();
        for _ in 0..100 {
            let x = sampling::non_real(&mut rng);
            let want = f.eval(x).unwrap() * g.eval(x).unwrap();
            assert!(p.eval(x).unwrap().dist(want) < 1e-12 * (1.0 + want.norm()));
        }
    }

    #[test]
    fn product_of_identities_is_square() {
        let mut rng = sampling::rng(2);
        let id = catalog::identity();
        let p = slice_product(&id, &id).unwrap();
        for _ in 0..100 {
            let x = sampling::non_real(&mut rng);
            assert!(p.eval(x).unwrap().dist(x * x) < 1e-12);
        }
    }

    #[test]
    fn product_matches_stem_oracle() {
        let mut rng = sampling::rng(3);
        let f = SliceFunction::polynomial(&[-Quaternion::I, Quaternion::ONE]);
        let g = SliceFunction::polynomial(&[Quaternion::I, Quaternion::ONE]);
        let all = funcs();
        let mut pairs: Vec<(SliceFunction, SliceFunction)> = vec![(f, g)];
        for a in all.iter().take(6) {
            pairs.push((a.clone(), all[all.len() - 1].clone()));
        }
        for (a, b) in pairs {
            let p = slice_product(&a, &b).unwrap();
            let ps = slice_product(&to_stem_fn(&a), &b).unwrap();
            for _ in 0..100 {
                let x = sampling::non_real(&mut rng);
                let want = stem_product_oracle(&a, &b, x);
                let tol = 1e-10 * (1.0 + want.norm());
                assert!(p.eval(x).unwrap().dist(want) < tol);
                assert!(ps.eval(x).unwrap().dist(want) < tol);
            }
        }
    }

    fn to_stem_fn(f: &SliceFunction) -> SliceFunction {
        let mut rng = sampling::rng(0);
        from_stem(&to_stem(f), &mut rng, 10, 1e-9).unwrap()
    }

    #[test]
    fn product_domain_mismatch() {
        let a = catalog::identity();
        let b = catalog::identity().with_domain(Domain::Plane);
        assert_eq!(slice_product(&a, &b).unwrap_err(), Error::DomainMismatch);
    }

    #[test]
    fn conjugate_and_normal_of_constants() {
        let q0 = Quaternion::new(1.0, 2.0, -1.0, 0.5);
        let f = SliceFunction::constant(q0);
        let x = Quaternion::new(0.2, 0.0, 1.0, 1.0);
        assert!(conjugate(&f).eval(x).unwrap().dist(q0.conj()) < 1e-14);
        assert!(normal(&f).eval(x).unwrap().dist(Quaternion::real(q0.norm_sqr())) < 1e-13);
    }

    #[test]
    fn conjugate_matches_stem_definition() {
        let mut rng = sampling::rng(4);
        for f in funcs() {
            let fc = conjugate(&f);
            let fcs = conjugate(&to_stem_fn(&f));
            for _ in 0..50 {
                let x = sampling::non_real(&mut rng);
                let s = decompose(x).unwrap();
                let want = to_stem(&f).eval_cq(s.v()).unwrap().conj_q().induce(s.unit);
                let tol = 1e-10 * (1.0 + want.norm());
                assert!(fc.eval(x).unwrap().dist(want) < tol);
                assert!(fcs.eval(x).unwrap().dist(want) < tol);
            }
        }
    }

    #[test]
    fn normal_of_x_minus_j() {
        let f = catalog::x_minus_j();
        let n = normal(&f);
        let mut rng = sampling::rng(5);
        for _ in 0..100 {
            let x = sampling::non_real(&mut rng);
            let want = x * x + Quaternion::ONE;
            assert!(n.eval(x).unwrap().dist(want) < 1e-12);
        }
        assert!(n.eval(Quaternion::I).unwrap().norm() < 1e-15);
        // V(N(f)) is the whole unit sphere of imaginary units
        assert!(n.eval(Quaternion::new(0.0, 0.6, 0.0, 0.8)).unwrap().norm() < 1e-15);
        assert_eq!(reciprocal(&f).eval(Quaternion::K).unwrap_err(), Error::ZeroNormal);
    }

    #[test]
    fn normal_equals_conjugate_product() {
        let mut rng = sampling::rng(6);
        for f in funcs() {
            let n = normal(&f);
            let m = slice_product(&conjugate(&f), &f).unwrap();
            for _ in 0..50 {
                let x = sampling::non_real(&mut rng);
                let s = decompose(x).unwrap();
                let sf = to_stem(&f).eval_cq(s.v()).unwrap();
                let want = cq_mul(sf.conj_q(), sf).induce(s.unit);
                let tol = 1e-10 * (1.0 + want.norm());
                assert!(n.eval(x).unwrap().dist(want) < tol);
                assert!(m.eval(x).unwrap().dist(want) < tol);
            }
        }
    }

    #[test]
    fn normal_is_slice_preserving() {
        let mut rng = sampling::rng(7);
        for f in funcs() {
            let n = normal(&f);
            for _ in 0..200 {
                let x = sampling::non_real(&mut rng);
                let nx = n.eval(x).unwrap();
                let unit = decompose(x).unwrap().unit;
                assert!(slice_distance(nx, unit) < 1e-10 * (1.0 + nx.norm()));
            }
        }
    }

    #[test]
    fn reciprocal_inverts() {
        let mut rng = sampling::rng(8);
        let mut checked = 0;
        for f in funcs() {
            let r = reciprocal(&f);
            let rs = reciprocal(&to_stem_fn(&f));
            let n = normal(&f);
            let one_a = slice_product(&f, &r).unwrap();
            let one_b = slice_product(&r, &f).unwrap();
            for _ in 0..300 {
                let x = sampling::non_real(&mut rng);
                if n.eval(x).unwrap().norm() <= 1e-3 {
                    continue;
                }
                checked += 1;
                let rx = r.eval(x).unwrap();
                assert!(rs.eval(x).unwrap().dist(rx) < 1e-8 * (1.0 + rx.norm()));
                assert!(one_a.eval(x).unwrap().dist(Quaternion::ONE) < 1e-8);
                assert!(one_b.eval(x).unwrap().dist(Quaternion::ONE) < 1e-8);
            }
        }
        assert!(checked > 1000);
    }

    #[test]
    fn derivative_examples() {
        let sq = catalog::x_squared();
        let d = slice_derivative(&sq);
        let x = Quaternion::new(0.5, 0.3, -1.0, 0.7);
        assert!(d.eval(x).unwrap().dist(x * 2.0) < 1e-14);
        let s = spherical_derivative(&sq, x).unwrap();
        assert!(s.dist(Quaternion::real(1.0)) < 1e-14);

        let c = SliceFunction::constant(Quaternion::new(1.0, 2.0, 3.0, 4.0));
        assert!(slice_derivative(&c).eval(x).unwrap().norm() < 1e-15);
        assert!(spherical_derivative(&c, x).unwrap().norm() < 1e-15);

        let f0 = catalog::f0();
        let d0 = slice_derivative(&f0);
        let s = decompose(x).unwrap();
        let want = (Quaternion::ONE - s.unit.to_quaternion() * Quaternion::I) * 0.5;
        assert!(d0.eval(x).unwrap().dist(want) < 1e-14);
    }

    #[test]
    fn fd_derivative_of_stem_functions() {
        let mut rng = sampling::rng(9);
        for f in funcs() {
            let exact = slice_derivative(&f);
            let fd = slice_derivative(&to_stem_fn(&f));
            for _ in 0..50 {
                let x = sampling::non_real(&mut rng);
                let a = exact.eval(x).unwrap();
                assert!(fd.eval(x).unwrap().dist(a) < 1e-6 * (1.0 + a.norm()));
            }
        }
    }

    #[test]
    fn spherical_derivative_constant_on_spheres() {
        let mut rng = sampling::rng(10);
        for f in funcs() {
            for _ in 0..100 {
                let v = sampling::upper(&mut rng);
                let x = Quaternion::real(v.re) + sampling::unit(&mut rng).to_quaternion() * v.im;
                let y = Quaternion::real(v.re) + sampling::unit(&mut rng).to_quaternion() * v.im;
                let sx = spherical_derivative(&f, x).unwrap();
                let sy = spherical_derivative(&f, y).unwrap();
                assert!(sx.dist(sy) < 1e-10 * (1.0 + sx.norm()));
            }
        }
    }

    #[test]
    fn derivative_relation() {
        let mut rng = sampling::rng(11);
        for f in funcs() {
            let d = slice_derivative(&f);
            let sd = spherical_derivative_fn(&f);
            let dsd = slice_derivative(&sd);
            for _ in 0..100 {
                let x = sampling::non_real(&mut rng);
                let lhs = d.eval(x).unwrap();
                let rhs = x.im() * 2.0 * dsd.eval(x).unwrap() + sd.eval(x).unwrap();
                assert!(lhs.dist(rhs) < 1e-6 * (1.0 + lhs.norm()), "{lhs} vs {rhs}");
                assert!(sd.eval(x).unwrap().dist(spherical_derivative(&f, x).unwrap()) < 1e-10 * (1.0 + lhs.norm()));
            }
        }
    }

    #[test]
    fn classification_examples() {
        let mut rng = sampling::rng(12);
        let c = classify_constant_affine(&catalog::f0(), &mut rng, 20, 1e-10).unwrap();
        let h = Quaternion::real(0.5);
        assert_eq!(
            c,
            Classification::SliceAffine {
                q1_plus: Quaternion::ZERO,
                q1_minus: h,
                q0_plus: Quaternion::ZERO,
                q0_minus: Quaternion::ZERO,
            }
        );
        assert!(!c.extends_to_r(1e-10));

        let a = Quaternion::new(1.0, -2.0, 0.5, 3.0);
        let b = Quaternion::new(0.0, 1.0, 1.0, -1.0);
        let c = classify_constant_affine(&SliceFunction::polynomial(&[b, a]), &mut rng, 20, 1e-10).unwrap();
        match c {
            Classification::SliceAffine { q1_plus, q1_minus, q0_plus, q0_minus } => {
                assert!(q1_plus.dist(a * 0.5) < 1e-14 && q1_minus.dist(a * 0.5) < 1e-14);
                assert!(q0_plus.dist(b * 0.5) < 1e-14 && q0_minus.dist(b * 0.5) < 1e-14);
            }
            other => panic!("{other:?}"),
        }
        assert!(c.extends_to_r(1e-12));

        let c = classify_constant_affine(&catalog::x_squared(), &mut rng, 20, 1e-10).unwrap();
        assert_eq!(c, Classification::Neither);
        let c = classify_constant_affine(&catalog::one_minus_ii(), &mut rng, 20, 1e-10).unwrap();
        assert_eq!(
            c,
            Classification::SliceConstant { q_plus: Quaternion::ZERO, q_minus: Quaternion::ONE }
        );
        let c = classify_constant_affine(&SliceFunction::constant(a), &mut rng, 20, 1e-10).unwrap();
        assert_eq!(c, Classification::Constant { value: a });
    }

    #[test]
    fn reality_and_extension() {
        let mut rng = sampling::rng(13);
        assert!(is_real(&catalog::x_squared_plus_one(), &mut rng, 200, 1e-10).unwrap());
        assert!(!is_real(&catalog::f0(), &mut rng, 200, 1e-10).unwrap());
        assert!(!is_real(&catalog::x_minus_j(), &mut rng, 200, 1e-10).unwrap());
        assert!(extends_to_r(&catalog::x_minus_j(), &mut rng, 100, 1e-6).unwrap());
        assert!(extends_to_r(&catalog::x_squared(), &mut rng, 100, 1e-6).unwrap());
        assert!(!extends_to_r(&catalog::f0(), &mut rng, 100, 1e-6).unwrap());
        assert!(!extends_to_r(&catalog::one_minus_ii(), &mut rng, 100, 1e-6).unwrap());
    }

    #[test]
    fn regular_stems() {
        let mut rng = sampling::rng(14);
        for f in funcs() {
            assert!(check_regular(&to_stem(&f), &mut rng, 100).unwrap() < 1e-6);
        }
        for a in funcs().iter().take(5) {
            for b in funcs().iter().skip(8) {
                let p = slice_product(a, b).unwrap();
                assert!(check_regular(&to_stem(&p), &mut rng, 50).unwrap() < 1e-6);
            }
        }
        // the stem of ∂_s f is not holomorphic in general
        let sd = spherical_derivative_fn(&catalog::x_squared());
        assert!(check_regular(&to_stem(&sd), &mut rng, 50).unwrap() > 1e-3);
    }

    fn ellipsoid(lambda: f64) -> impl Fn(Quaternion) -> Result<Quaternion> {
        move |x: Quaternion| {
            let u = decompose(x)?.unit.to_quaternion();
            Ok(u + Quaternion::I * u * Quaternion::I * lambda)
        }
    }

    #[test]
    fn sliceness_verdicts() {
        let mut rng = sampling::rng(15);
        for f in funcs() {
            let ev = |x: Quaternion| f.eval(x);
            let r = check_sliceness(&ev, ImaginaryUnit::J, ImaginaryUnit::K, &mut rng, 100, 1e-10).unwrap();
            assert!(r.slice, "{r:?}");
        }
        let r = check_sliceness(&ellipsoid(2.0), ImaginaryUnit::J, ImaginaryUnit::K, &mut rng, 100, 1e-10)
            .unwrap();
        assert!(!r.slice);
        assert!(r.residual > 1.0);
        // the reconstructed F2 is odd here, so only the cross-slice test fires
        assert!(r.parity < 1e-12);
        let r = check_sliceness(&ellipsoid(0.0), ImaginaryUnit::J, ImaginaryUnit::K, &mut rng, 100, 1e-10)
            .unwrap();
        assert!(r.slice);
        assert!(matches!(
            check_sliceness(&ellipsoid(0.0), ImaginaryUnit::J, ImaginaryUnit::J, &mut rng, 1, 1e-10),
            Err(Error::DegenerateUnits)
        ));
    }

    #[test]
    fn ellipsoid_reconstructed_stem() {
        // with J = j, K = k the candidate stem is F1 = 0, F2 = 1 + λ
        let f = ellipsoid(2.0);
        let fj = f(Quaternion::J).unwrap();
        let fk = f(Quaternion::K).unwrap();
        let f2 = (Quaternion::J - Quaternion::K).inv().unwrap() * (fj - fk);
        assert!(f2.dist(Quaternion::real(3.0)) < 1e-15);
    }
}
