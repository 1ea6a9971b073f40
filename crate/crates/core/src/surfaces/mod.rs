//! Homogeneous surfaces in `CP^3`, membership of twistor lifts, fibre
//! counting and the splitting solvers.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::{Complex, Complex64};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::holo::{eval_exact, exact_from, ExactComplex};
use crate::qcore::Quaternion;
use crate::sampling;
use crate::slice::SliceFunction;
use crate::twistor::FiberLine;

pub mod catalog;
pub mod roots;
pub mod scan;
pub mod solvers;

pub use roots::{Root, RootCluster};
pub use scan::{discriminant_scan, DiscriminantReport, FiberFlag, ScanBox, ScanCell, MAX_SCAN_CELLS};
pub use solvers::{solve_cubic_cone_splitting, solve_plane_splitting, solve_quaddiag_splitting};

/// Default verdict threshold for [`contains_lift`].
pub const CONTAINS_TOL: f64 = 1e-8;
/// Samples closer than this to a square-root cut are skipped.
pub const BRANCH_MARGIN: f64 = 1e-3;
/// A restricted form is identically zero below this (relative) size.
pub const CONTAINED_TOL: f64 = 1e-12;
/// Roots closer than this are merged into one cluster.
pub const CLUSTER_RADIUS: f64 = 1e-6;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A homogeneous polynomial in `X0..X3`.
#[derive(Debug, Clone, PartialEq)]
pub struct HomoPoly {
    degree: u32,
    terms: BTreeMap<[u32; 4], Complex64>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: [u32; 4],
    coef: [f64; 2],
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    degree: u32,
    terms: Vec<TermJson>,
}

impl HomoPoly {
    /// Collects `terms`, summing repeated monomials and dropping zeros.
    pub fn new(degree: u32, terms: impl IntoIterator<Item = ([u32; 4], Complex64)>) -> Result<Self> {
        let mut map: BTreeMap<[u32; 4], Complex64> = BTreeMap::new();
        for (e, k) in terms {
            let deg: u32 = e.iter().sum();
            if deg != degree {
                return Err(Error::Invalid(format!("monomial {e:?} has degree {deg}, expected {degree}")));
            }
            *map.entry(e).or_insert(c(0.0, 0.0)) += k;
        }
        map.retain(|_, k| *k != c(0.0, 0.0));
        if map.is_empty() {
            return Err(Error::Invalid("zero polynomial".into()));
        }
        Ok(HomoPoly { degree, terms: map })
    }

    /// The coordinate `X_k`.
    pub fn var(k: usize) -> HomoPoly {
        let mut e = [0; 4];
        e[k] = 1;
        HomoPoly::new(1, [(e, c(1.0, 0.0))]).expect("nonzero")
    }

    /// `[X0, X1, X2, X3]`.
    pub fn vars() -> [HomoPoly; 4] {
        [HomoPoly::var(0), HomoPoly::var(1), HomoPoly::var(2), HomoPoly::var(3)]
    }

    /// `c0 X0 + c1 X1 + c2 X2 + c3 X3`.
    pub fn linear(coeffs: [Complex64; 4]) -> Result<HomoPoly> {
        HomoPoly::new(1, (0..4).map(|k| {
            let mut e = [0; 4];
            e[k] = 1;
            (e, coeffs[k])
        }))
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 4], &Complex64)> {
        self.terms.iter()
    }

    pub fn scale(&self, k: Complex64) -> HomoPoly {
        HomoPoly { degree: self.degree, terms: self.terms.iter().map(|(e, a)| (*e, a * k)).collect() }
    }

    pub fn powi(&self, n: u32) -> HomoPoly {
        (1..n).fold(self.clone(), |acc, _| &acc * self)
    }

    pub fn eval(&self, x: &[Complex64; 4]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, k)| k * (0..4).map(|i| x[i].powu(e[i])).product::<Complex64>())
            .sum()
    }

    /// Sum of coefficient magnitudes.
    pub fn l1(&self) -> f64 {
        self.terms.values().map(|k| k.norm()).sum()
    }

    /// Coefficients `c_m` of `P(s a + t b) = Σ c_m s^{d-m} t^m`.
    pub fn restrict(&self, a: &[Complex64; 4], b: &[Complex64; 4]) -> Vec<Complex64> {
        restrict_generic(self.degree, self.terms.iter().map(|(e, k)| (e, *k)), a, b)
    }

    /// Same restriction with every coefficient and coordinate replaced by
    /// its modulus: a bound on each term before cancellation.
    fn restrict_bound(&self, a: &[Complex64; 4], b: &[Complex64; 4]) -> Vec<f64> {
        let a = a.map(|z| z.norm());
        let b = b.map(|z| z.norm());
        restrict_generic(self.degree, self.terms.iter().map(|(e, k)| (e, k.norm())), &a, &b)
    }

    fn restrict_exact(&self, a: &[ExactComplex; 4], b: &[ExactComplex; 4]) -> Vec<ExactComplex> {
        restrict_generic(self.degree, self.terms.iter().map(|(e, k)| (e, exact_from(*k))), a, b)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let p = PolyJson {
            degree: self.degree,
            terms: self.terms.iter().map(|(e, k)| TermJson { exp: *e, coef: [k.re, k.im] }).collect(),
        };
        serde_json::to_value(p).expect("plain data")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<HomoPoly> {
        let p: PolyJson = serde_json::from_value(value.clone())?;
        HomoPoly::new(p.degree, p.terms.into_iter().map(|t| (t.exp, c(t.coef[0], t.coef[1]))))
    }
}

fn restrict_generic<'a, T>(
    degree: u32,
    terms: impl Iterator<Item = (&'a [u32; 4], T)>,
    a: &[T; 4],
    b: &[T; 4],
) -> Vec<T>
where
    T: Clone + Zero + Add<Output = T> + Mul<Output = T>,
{
    let d = degree as usize;
    let mut out = vec![T::zero(); d + 1];
    for (e, k) in terms {
        let mut acc = vec![k];
        for i in 0..4 {
            for _ in 0..e[i] {
                let mut next = vec![T::zero(); acc.len() + 1];
                for (m, x) in acc.iter().enumerate() {
                    next[m] = next[m].clone() + x.clone() * a[i].clone();
                    next[m + 1] = next[m + 1].clone() + x.clone() * b[i].clone();
                }
                acc = next;
            }
        }
        for (m, x) in acc.into_iter().enumerate() {
            out[m] = out[m].clone() + x;
        }
    }
    out
}

impl fmt::Display for HomoPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, k) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({}{:+}i)", k.re, k.im)?;
            for i in 0..4 {
                match e[i] {
                    0 => {}
                    1 => write!(f, "*X{i}")?,
                    n => write!(f, "*X{i}^{n}")?,
                }
            }
        }
        Ok(())
    }
}

fn merge(a: &HomoPoly, b: &HomoPoly, sign: f64) -> HomoPoly {
    assert_eq!(a.degree, b.degree, "adding polynomials of different degree");
    let mut terms = a.terms.clone();
    for (e, k) in &b.terms {
        *terms.entry(*e).or_insert(c(0.0, 0.0)) += k * sign;
    }
    terms.retain(|_, k| *k != c(0.0, 0.0));
    HomoPoly { degree: a.degree, terms }
}

impl Add for &HomoPoly {
    type Output = HomoPoly;
    /// Panics when the degrees differ.
    fn add(self, rhs: &HomoPoly) -> HomoPoly {
        merge(self, rhs, 1.0)
    }
}

impl Sub for &HomoPoly {
    type Output = HomoPoly;
    fn sub(self, rhs: &HomoPoly) -> HomoPoly {
        merge(self, rhs, -1.0)
    }
}

impl Mul for &HomoPoly {
    type Output = HomoPoly;
    fn mul(self, rhs: &HomoPoly) -> HomoPoly {
        let mut terms: BTreeMap<[u32; 4], Complex64> = BTreeMap::new();
        for (e1, k1) in &self.terms {
            for (e2, k2) in &rhs.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                *terms.entry(e).or_insert(c(0.0, 0.0)) += k1 * k2;
            }
        }
        terms.retain(|_, k| *k != c(0.0, 0.0));
        HomoPoly { degree: self.degree + rhs.degree, terms }
    }
}

impl Neg for &HomoPoly {
    type Output = HomoPoly;
    fn neg(self) -> HomoPoly {
        self.scale(c(-1.0, 0.0))
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for HomoPoly {
            type Output = HomoPoly;
            fn $m(self, rhs: HomoPoly) -> HomoPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for HomoPoly {
    type Output = HomoPoly;
    fn neg(self) -> HomoPoly {
        -&self
    }
}

impl Mul<HomoPoly> for Complex64 {
    type Output = HomoPoly;
    fn mul(self, rhs: HomoPoly) -> HomoPoly {
        rhs.scale(self)
    }
}

/// Outcome of [`contains_lift`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipReport {
    /// Largest u-coefficient over the samples, relative to the size of the
    /// terms that cancel in it.
    pub residual: f64,
    /// Largest raw u-coefficient.
    pub max_coefficient: f64,
    pub samples: usize,
    pub skipped: usize,
    pub tol: f64,
    pub contained: bool,
}

/// The lift at `v` as the line `a + u b` in the variable `u`.
fn lift_line(ch: [Complex64; 4]) -> ([Complex64; 4], [Complex64; 4]) {
    let [g, gh, h, hh] = ch;
    ([c(1.0, 0.0), c(0.0, 0.0), g, h], [c(0.0, 0.0), c(1.0, 0.0), -hh, gh])
}

/// Substitutes the twistor lift of `f` into `P` and extracts the
/// coefficients of the resulting polynomial in `u` at `samples` random
/// `v` in the domain of `f`. Points near a branch cut or at a pole are
/// skipped (and counted).
pub fn contains_lift(p: &HomoPoly, f: &SliceFunction, samples: usize, seed: u64, tol: f64) -> Result<MembershipReport> {
    let split = f.splitting()?;
    let mut rng = sampling::rng(seed);
    let (mut used, mut skipped) = (0usize, 0usize);
    let (mut residual, mut max_coef) = (0.0f64, 0.0f64);
    let mut last = c(0.0, 0.0);
    let mut attempts = 0usize;
    while used < samples && attempts < 20 * samples.max(1) {
        attempts += 1;
        let v = sampling::upper(&mut rng);
        last = v;
        if !f.domain().contains(v) {
            continue;
        }
        let ch = match split.eval_guarded(v, BRANCH_MARGIN) {
            Ok(ch) => ch,
            Err(Error::BranchCut { .. }) | Err(Error::Pole { .. }) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let (a, b) = lift_line(ch);
        let coefs = p.restrict(&a, &b);
        let bound = p.restrict_bound(&a, &b);
        let m = coefs.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let scale = bound.iter().cloned().fold(1.0, f64::max);
        max_coef = max_coef.max(m);
        residual = residual.max(m / scale);
        used += 1;
    }
    if used == 0 {
        return Err(Error::OutOfDomain { re: last.re, im: last.im });
    }
    Ok(MembershipReport { residual, max_coefficient: max_coef, samples: used, skipped, tol, contained: residual < tol })
}

/// Exact version of [`contains_lift`] at the given points of `Q(i)`; needs
/// a rational splitting. Points at a pole are ignored.
pub fn contains_lift_exact(p: &HomoPoly, f: &SliceFunction, points: &[ExactComplex]) -> Result<bool> {
    let split = f.splitting()?;
    if !split.is_rational() {
        return Err(Error::Invalid("exact check needs a rational splitting".into()));
    }
    let zero = || Complex::new(Zero::zero(), Zero::zero());
    let one = || ExactComplex::new(num_rational::BigRational::from_integer(1.into()), Zero::zero());
    for v in points {
        let ch: Option<Vec<ExactComplex>> = split.channels().iter().map(|m| eval_exact(m, v)).collect();
        let Some(ch) = ch else { continue };
        let a = [one(), zero(), ch[0].clone(), ch[2].clone()];
        let b = [zero(), one(), -ch[3].clone(), ch[1].clone()];
        if p.restrict_exact(&a, &b).iter().any(|z| !z.is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Root structure of `P` on one twistor fibre.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiberReport {
    /// Intersection points counted with multiplicity; 0 when contained.
    pub count: usize,
    pub distinct: usize,
    pub multiplicities: Vec<usize>,
    pub contained: bool,
}

impl FiberReport {
    pub fn tangent(&self) -> bool {
        self.multiplicities.iter().any(|&m| m >= 2)
    }
}

/// Restricts `P` to the fibre over `q` in the coordinates `[X0 : X1]`.
pub fn fiber_form(p: &HomoPoly, q: Quaternion) -> Vec<Complex64> {
    let [a, b] = FiberLine::new(crate::twistor::HPoint::Finite(q)).basis();
    p.restrict(&a.0, &b.0)
}

pub fn fiber_cardinality(p: &HomoPoly, q: Quaternion) -> FiberReport {
    let [a, b] = FiberLine::new(crate::twistor::HPoint::Finite(q)).basis();
    let coefs = p.restrict(&a.0, &b.0);
    let bound = p.restrict_bound(&a.0, &b.0);
    let scale = bound.iter().cloned().fold(f64::MIN_POSITIVE, f64::max);
    let zero_tol = CONTAINED_TOL * scale;
    if coefs.iter().all(|z| z.norm() < zero_tol) {
        return FiberReport { count: 0, distinct: 0, multiplicities: Vec::new(), contained: true };
    }
    let clusters = roots::binary_roots(&coefs, zero_tol, CLUSTER_RADIUS);
    let multiplicities: Vec<usize> = clusters.iter().map(|r| r.multiplicity).collect();
    FiberReport {
        count: multiplicities.iter().sum(),
        distinct: clusters.len(),
        multiplicities,
        contained: false,
    }
}

/// Outcome of [`fit_surface`].
#[derive(Debug, Clone)]
pub struct SurfaceFit {
    pub poly: HomoPoly,
    /// Smallest singular value of the sample matrix over the largest.
    pub residual: f64,
    /// Second smallest over largest; small values mean the fit is not unique.
    pub gap: f64,
}

/// All exponent vectors of total degree `d`.
pub fn monomials(d: u32) -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            for c in 0..=d - a - b {
                out.push([a, b, c, d - a - b - c]);
            }
        }
    }
    out
}

/// Finds the degree-`d` surface through the lift of `f` from the null
/// space of the monomials evaluated at sampled lift points. The result is
/// scaled so that its largest coefficient is 1 and tiny coefficients are
/// dropped.
pub fn fit_surface(f: &SliceFunction, degree: u32, samples: usize, seed: u64) -> Result<SurfaceFit> {
    let split = f.splitting()?;
    let mons = monomials(degree);
    let mut rng = sampling::rng(seed);
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    let mut attempts = 0;
    while rows.len() < samples.max(mons.len() + 4) && attempts < 100 * samples.max(1) {
        attempts += 1;
        let v = sampling::upper(&mut rng);
        let u = sampling::complex(&mut rng, 1.5);
        if !f.domain().contains(v) {
            continue;
        }
        let Ok(ch) = split.eval_guarded(v, BRANCH_MARGIN) else { continue };
        let (a, b) = lift_line(ch);
        let x: [Complex64; 4] = std::array::from_fn(|k| a[k] + u * b[k]);
        let n = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let x = x.map(|z| z / n);
        rows.push(mons.iter().map(|e| (0..4).map(|i| x[i].powu(e[i])).product()).collect());
    }
    if rows.len() < mons.len() {
        return Err(Error::Invalid("too few usable samples".into()));
    }
    let m = DMatrix::from_fn(rows.len(), mons.len(), |i, j| rows[i][j]);
    let svd = m.svd(false, true);
    let vt = svd.v_t.expect("requested");
    let sv = svd.singular_values;
    let mut order: Vec<usize> = (0..sv.len()).collect();
    order.sort_by(|&i, &j| sv[i].partial_cmp(&sv[j]).expect("finite"));
    let (lo, next, hi) = (order[0], order[1], order[order.len() - 1]);
    let null: Vec<Complex64> = (0..mons.len()).map(|j| vt[(lo, j)].conj()).collect();
    let big = null.iter().cloned().max_by(|a, b| a.norm().partial_cmp(&b.norm()).expect("finite")).expect("nonempty");
    let terms = mons.iter().zip(&null).filter_map(|(e, k)| {
        let k = k / big;
        (k.norm() > 1e-9).then_some((*e, Complex64::new(snap(k.re), snap(k.im))))
    });
    Ok(SurfaceFit { poly: HomoPoly::new(degree, terms)?, residual: sv[lo] / sv[hi], gap: sv[next] / sv[hi] })
}

fn snap(x: f64) -> f64 {
    if x.abs() < 1e-9 { 0.0 } else { x }
}

/// Chordal distance between two polynomials as points of coefficient space.
pub fn poly_distance(p: &HomoPoly, q: &HomoPoly) -> f64 {
    if p.degree != q.degree {
        return 1.0;
    }
    let mons = monomials(p.degree);
    let get = |r: &HomoPoly, e: &[u32; 4]| r.terms.get(e).copied().unwrap_or(c(0.0, 0.0));
    let a: Vec<Complex64> = mons.iter().map(|e| get(p, e)).collect();
    let b: Vec<Complex64> = mons.iter().map(|e| get(q, e)).collect();
    crate::twistor::chordal(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holo::exact_int;
    use crate::slice::catalog as fns;
    use proptest::prelude::*;

    fn naive_restrict(p: &HomoPoly, a: &[Complex64; 4], b: &[Complex64; 4]) -> Vec<Complex64> {
        // interpolate P(a + t b) at d+1 nodes and solve the Vandermonde system
        let d = p.degree() as usize;
        let ts: Vec<Complex64> = (0..=d).map(|k| Complex64::from_polar(1.0, 0.7 * k as f64)).collect();
        let vm = DMatrix::from_fn(d + 1, d + 1, |i, j| ts[i].powu(j as u32));
        let rhs = nalgebra::DVector::from_fn(d + 1, |i, _| {
            let x: [Complex64; 4] = std::array::from_fn(|k| a[k] + ts[i] * b[k]);
            p.eval(&x)
        });
        let sol = vm.lu().solve(&rhs).expect("nodes distinct");
        sol.iter().cloned().collect()
    }

    #[test]
    fn restriction_matches_interpolation() {
        let mut rng = sampling::rng(3);
        for (_, p) in catalog::all() {
            let a: [Complex64; 4] = std::array::from_fn(|_| sampling::complex(&mut rng, 1.0));
            let b: [Complex64; 4] = std::array::from_fn(|_| sampling::complex(&mut rng, 1.0));
            let got = p.restrict(&a, &b);
            let want = naive_restrict(&p, &a, &b);
            for (x, y) in got.iter().zip(&want) {
                assert!((x - y).norm() < 1e-9 * (1.0 + p.l1()), "{p}");
            }
        }
    }

    #[test]
    fn json_round_trip() {
        for (_, p) in catalog::all() {
            assert_eq!(HomoPoly::from_json(&p.to_json()).unwrap(), p);
        }
        let bad = serde_json::json!({"degree": 2, "terms": [{"exp": [1, 0, 0, 0], "coef": [1, 0]}]});
        assert!(HomoPoly::from_json(&bad).is_err());
    }

    #[test]
    fn catalog_memberships() {
        let cases = [
            (catalog::quadric_q(), fns::identity()),
            (catalog::plane([c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]), fns::f0()),
            (catalog::cubic_nonnormal_1(), fns::cubic_f1()),
            (catalog::cubic_nonnormal_2(), fns::cubic_f2()),
            (catalog::cone(), fns::cone()),
            (catalog::plane_pair(), fns::plane_pair()),
            (catalog::quadnondiag_fitted(), fns::nondiag_quadric_data()),
        ];
        for (p, f) in cases {
            let r = contains_lift(&p, &f, 500, 7, CONTAINS_TOL).unwrap();
            assert!(r.contained, "{p}: {r:?}");
            assert_eq!(r.samples, 500);
        }
    }

    #[test]
    fn real_functions_lie_on_q() {
        // x^2 + 1 and x - 1/2 have real coefficients: ĝ = g, h = ĥ = 0
        for f in [fns::x_squared_plus_one(), SliceFunction::parse("v-0.5", "v-0.5", "0", "0").unwrap()] {
            let r = contains_lift(&catalog::quadric_q(), &f, 200, 1, CONTAINS_TOL).unwrap();
            assert!(r.residual < 1e-10);
        }
    }

    #[test]
    fn non_members_fail() {
        let r = contains_lift(&catalog::cone(), &fns::cubic_f1(), 100, 2, CONTAINS_TOL).unwrap();
        assert!(!r.contained);
        let r = contains_lift(&catalog::quadnondiag(1.0), &fns::nondiag_quadric_data(), 100, 2, CONTAINS_TOL).unwrap();
        assert!(!r.contained, "the raw data are not on this quadric");
        let r = contains_lift(&catalog::plane_pair(), &fns::plane_pair_candidate(), 100, 2, CONTAINS_TOL).unwrap();
        assert!(!r.contained);
    }

    #[test]
    fn exact_agrees() {
        let pts = [exact_int(1, 2), exact_int(-3, 1), exact_int(2, 5)];
        assert!(contains_lift_exact(&catalog::cubic_nonnormal_2(), &fns::cubic_f2(), &pts).unwrap());
        assert!(contains_lift_exact(&catalog::cone(), &fns::cone(), &pts).unwrap());
        assert!(!contains_lift_exact(&catalog::cone(), &fns::cubic_f1(), &pts).unwrap());
        assert!(matches!(
            contains_lift_exact(&catalog::cone(), &solvers::solve_cubic_cone_splitting(c(0.0, 0.0), crate::holo::HoloMap::var()), &pts),
            Err(Error::Invalid(_))
        ));
    }

    #[test]
    fn nondiag_fit_recovers_catalog_entry() {
        let fit = fit_surface(&fns::nondiag_quadric_data(), 2, 60, 11).unwrap();
        assert!(fit.residual < 1e-12);
        assert!(fit.gap > 1e-3);
        assert!(poly_distance(&fit.poly, &catalog::quadnondiag_fitted()) < 1e-9, "{}", fit.poly);
    }

    #[test]
    fn quartic_scroll_fibers() {
        let k = catalog::quartic_scroll();
        for t in [0.3, 0.7, 1.5] {
            let r = fiber_cardinality(&k, Quaternion::new(t * t, t, 0.0, 0.0));
            assert!(r.contained, "t = {t}");
        }
        let r = fiber_cardinality(&k, Quaternion::new(1.0, 0.0, 1.0, 0.0));
        assert_eq!((r.count, r.distinct, r.contained), (4, 4, false));
        // the paraboloid q0 = 1/4 - q2^2 - q3^2 in the span of 1, j, k
        // carries tangent fibres
        let mut rng = sampling::rng(21);
        for _ in 0..5 {
            let w = sampling::complex(&mut rng, 1.0);
            let (q2, q3) = (w.re, w.im);
            let r = fiber_cardinality(&k, Quaternion::new(0.25 - q2 * q2 - q3 * q3, 0.0, q2, q3));
            assert!(r.tangent(), "{r:?}");
            assert_eq!(r.count, 4);
        }
    }

    #[test]
    fn fibers_of_q_over_ci() {
        // Q contains the lift of the identity, whose fibres over real points
        // are inside it; over 1+2i the restriction is a nonzero quadratic
        let q = catalog::quadric_q();
        assert!(fiber_cardinality(&q, Quaternion::real(0.7)).contained);
        let r = fiber_cardinality(&q, Quaternion::new(1.0, 2.0, 0.0, 0.0));
        assert!(!r.contained);
        assert_eq!(r.count, 2);
        // oracle: P on [x0, x1, x0 q1, x1 conj(q1)] is x0 x1 (conj(q1) - q1)
        let form = fiber_form(&q, Quaternion::new(1.0, 2.0, 0.0, 0.0));
        assert!((form[1] - c(0.0, -4.0)).norm() < 1e-14);
        assert!(form[0].norm() < 1e-14 && form[2].norm() < 1e-14);
    }

    #[test]
    fn plane_fibers() {
        let p = catalog::plane([c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let r = fiber_cardinality(&p, Quaternion::new(0.3, -1.0, 0.5, 2.0));
        assert_eq!((r.count, r.contained), (1, false));
        assert!(!fiber_cardinality(&p, Quaternion::new(0.3, -1.0, 0.0, 0.0)).contained);
        assert!(fiber_cardinality(&p, Quaternion::ZERO).contained);
    }

    fn arb_c() -> impl Strategy<Value = Complex64> {
        (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b)| c(a, b))
    }

    proptest! {
        #[test]
        fn homogeneity(lr in arb_c(), x in proptest::array::uniform4(arb_c())) {
            prop_assume!(lr.norm() > 0.1);
            for (_, p) in catalog::all() {
                let lhs = p.eval(&x.map(|z| z * lr));
                let rhs = lr.powu(p.degree()) * p.eval(&x);
                let scale = p.restrict_bound(&x.map(|z| z * lr), &[c(0.0, 0.0); 4])[0];
                prop_assert!((lhs - rhs).norm() <= 1e-10 * scale.max(rhs.norm()).max(1e-300));
            }
        }

        #[test]
        fn generic_fibers_have_degree_points(q0 in -2.0..2.0f64, q1 in -2.0..2.0f64, q2 in -2.0..2.0f64, q3 in -2.0..2.0f64) {
            let q = Quaternion::new(q0, q1, q2, q3);
            for (_, p) in catalog::all() {
                let r = fiber_cardinality(&p, q);
                if !r.contained {
                    prop_assert_eq!(r.count, p.degree() as usize);
                }
            }
        }
    }
}
