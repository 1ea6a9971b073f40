//! The end-to-end verification battery: twelve criteria, each a list of
//! residuals compared against fixed thresholds.

use std::f64::consts::{FRAC_PI_2, LN_2};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;
use crate::grass::{self, LineSearch};
use crate::holo::HoloMap;
use crate::ocs;
use crate::qcore::{decompose, ImaginaryUnit, Quaternion};
use crate::sampling::{self, SampleRng};
use crate::slice::{catalog as fns, check_sliceness, SliceFunction};
use crate::surfaces::{self, catalog as surf, contains_lift, fiber_cardinality, solve_cubic_cone_splitting};
use crate::twistor::{chordal, lift, lift_at, project, ProjPoint3};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Which side of the threshold passes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Bound {
    Below,
    Above,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tol: f64,
    pub bound: Bound,
    pub pass: bool,
}

impl Check {
    pub fn below(name: impl Into<String>, residual: f64, tol: f64) -> Check {
        Check { name: name.into(), residual, tol, bound: Bound::Below, pass: residual < tol }
    }

    pub fn above(name: impl Into<String>, residual: f64, tol: f64) -> Check {
        Check { name: name.into(), residual, tol, bound: Bound::Above, pass: residual > tol }
    }

    fn from(name: impl Into<String>, r: Result<f64>, tol: f64) -> Check {
        Check::below(name, r.unwrap_or(f64::INFINITY), tol)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    /// Wall-clock budget in seconds for an optimized build.
    pub budget: f64,
    pub checks: Vec<Check>,
    pub pass: bool,
}

pub const CRITERIA: u8 = 12;

const TITLES: [(&str, f64); 12] = [
    ("lift of x(1-Ii)/2 is [1,u,v,0]", 1.0),
    ("projection commutes with the lift", 5.0),
    ("real functions lift into X0X3 = X1X2", 2.0),
    ("surface memberships", 10.0),
    ("diagonal quadric solver", 5.0),
    ("twistor transforms", 2.0),
    ("twistor-line finder", 10.0),
    ("hermitian criterion for affine curves", 3.0),
    ("orthogonal complex structures", 5.0),
    ("image and preimage of x(1-Ii)/2", 2.0),
    ("quartic scroll fibres", 5.0),
    ("sliceness negative control", 1.0),
];

/// Runs criterion `id` (1-based). Panics on an id outside `1..=12`.
pub fn run_criterion(id: u8, seed: u64) -> Criterion {
    let mut rng = sampling::rng(seed.wrapping_mul(1000).wrapping_add(id as u64));
    let checks = match id {
        1 => lift_identity(&mut rng),
        2 => commuting_square(&mut rng),
        3 => real_on_q(&mut rng),
        4 => memberships(seed),
        5 => quaddiag(seed),
        6 => transforms(&mut rng),
        7 => line_finder(),
        8 => hermitian(),
        9 => structures(&mut rng),
        10 => image_preimage(&mut rng),
        11 => scroll_fibers(&mut rng),
        12 => negative_control(&mut rng),
        _ => panic!("no criterion {id}"),
    };
    let (title, budget) = TITLES[id as usize - 1];
    let pass = checks.iter().all(|c| c.pass);
    Criterion { id, title, budget, checks, pass }
}

pub fn run_suite(seed: u64) -> Vec<Criterion> {
    (1..=CRITERIA).map(|id| run_criterion(id, seed)).collect()
}

fn lift_identity(rng: &mut SampleRng) -> Vec<Check> {
    let f = fns::f0();
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let (u, v) = (sampling::complex(rng, 3.0), sampling::upper(rng));
        let r = match lift(&f, u, v) {
            Ok(p) => chordal(&p.0, &ProjPoint3::new(c(1.0, 0.0), u, v, c(0.0, 0.0)).0),
            Err(_) => f64::INFINITY,
        };
        worst = worst.max(r);
    }
    vec![Check::below("chordal distance to [1,u,v,0]", worst, 1e-12)]
}

fn commuting_square(rng: &mut SampleRng) -> Vec<Check> {
    let battery = [
        ("identity", fns::identity()),
        ("x^2", fns::x_squared()),
        ("x - j", fns::x_minus_j()),
        ("x(1-Ii)/2", fns::f0()),
        ("1-Ii", fns::one_minus_ii()),
        ("cubic f1", fns::cubic_f1()),
    ];
    battery
        .into_iter()
        .map(|(name, f)| {
            let mut worst: f64 = 0.0;
            for _ in 0..500 {
                let x = sampling::non_real(rng);
                let r = (|| -> Result<f64> {
                    let want = f.eval(x)?;
                    let got = project(&lift_at(&f, x)?).finite().ok_or(crate::Error::SouthPole)?;
                    Ok(got.dist(want))
                })();
                worst = worst.max(r.unwrap_or(f64::INFINITY));
            }
            Check::below(format!("pi(lift) = f(pi) for {name}"), worst, 1e-9)
        })
        .collect()
}

fn q_residual(p: &ProjPoint3) -> f64 {
    let [x0, x1, x2, x3] = p.0;
    (x0 * x3 - x1 * x2).norm()
}

fn real_on_q(rng: &mut SampleRng) -> Vec<Check> {
    let f = fns::x_squared_plus_one();
    let g = fns::f0();
    let (mut worst, mut off) = (0.0f64, 0usize);
    for _ in 0..500 {
        let (u, v) = (sampling::complex(rng, 2.0), sampling::upper(rng));
        worst = worst.max(lift(&f, u, v).map(|p| q_residual(&p)).unwrap_or(f64::INFINITY));
        if lift(&g, u, v).map(|p| q_residual(&p) > 1e-10).unwrap_or(false) {
            off += 1;
        }
    }
    vec![
        Check::below("x^2+1 lift on X0X3 - X1X2", worst, 1e-10),
        Check::above("fraction of x(1-Ii)/2 lifts off the quadric", off as f64 / 500.0, 0.99),
    ]
}

fn memberships(seed: u64) -> Vec<Check> {
    let zero = c(0.0, 0.0);
    let mut cases = vec![
        ("plane X3 = 0, x(1-Ii)/2", surf::plane([zero, zero, zero, c(1.0, 0.0)]), fns::f0()),
        ("X0X3^2 + X1^2X2, (-v^2, v, 0, 0)", surf::cubic_nonnormal_1(), fns::cubic_f1()),
        ("X0X1X3 + X2X3^2 + X1^3, (-1/v, v, 0, 1/v^2)", surf::cubic_nonnormal_2(), fns::cubic_f2()),
        ("X1^2 = X2X3, (0, v, 0, -1/v)", surf::cone(), fns::cone()),
    ];
    for k in [0.0, 1.0, 2.0] {
        let name = match k as i32 {
            0 => "cubic cone c = 0",
            1 => "cubic cone c = 1",
            _ => "cubic cone c = 2",
        };
        cases.push((name, surf::cubic_cone(c(k, 0.0)), solve_cubic_cone_splitting(c(k, 0.0), HoloMap::var())));
    }
    cases
        .into_iter()
        .map(|(name, p, f)| {
            Check::from(name, contains_lift(&p, &f, 500, seed, surfaces::CONTAINS_TOL).map(|r| r.residual), 1e-8)
        })
        .collect()
}

fn quaddiag(seed: u64) -> Vec<Check> {
    [(0.0, 0.0, 0.0), (0.3, 0.3, FRAC_PI_2), (0.2, 0.7, 0.3)]
        .into_iter()
        .map(|(l, m, n)| {
            let r = surfaces::solve_quaddiag_splitting(l, m, n, 1.0)
                .and_then(|f| contains_lift(&surf::quaddiag(l, m, n), &f, 500, seed, surfaces::CONTAINS_TOL))
                .map(|r| r.residual);
            Check::from(format!("quaddiag ({l}, {m}, {n:.4})"), r, 1e-8)
        })
        .collect()
}

fn transforms(rng: &mut SampleRng) -> Vec<Check> {
    let examples: [(&str, SliceFunction, fn(Complex64) -> [Complex64; 6]); 4] = [
        ("1-Ii", fns::one_minus_ii(), |_| [c(0.0, 0.0), c(0.0, 0.0), c(-2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]),
        ("1+Ii", fns::one_plus_ii(), |_| [c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]),
        ("x(1-Ii)/2", fns::f0(), |v| [c(0.0, 0.0), c(0.0, 0.0), -v, c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]),
        ("x(1+Ii)/2", fns::f0_plus(), |v| [c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), v, c(0.0, 0.0), c(1.0, 0.0)]),
    ];
    let mut checks = Vec::new();
    for (name, f, want) in examples {
        let mut worst: f64 = 0.0;
        let curve = grass::transform(&f);
        for _ in 0..100 {
            let v = sampling::upper(rng);
            let r = match curve.as_ref().map(|t| t.eval(v)) {
                Ok(Ok(p)) => (0..6).map(|k| (p.0[k] - want(v)[k]).norm()).fold(0.0, f64::max),
                _ => f64::INFINITY,
            };
            worst = worst.max(r);
        }
        checks.push(Check::below(format!("transform of {name}"), worst, f64::MIN_POSITIVE));
    }
    let (mut klein, mut wedge) = (0.0f64, 0.0f64);
    for (_, f) in fns::all() {
        let Ok(t) = grass::transform(&f) else {
            klein = f64::INFINITY;
            continue;
        };
        for _ in 0..100 {
            let v = sampling::upper(rng);
            let (Ok(p), Ok(w)) = (t.eval(v), grass::transform_by_wedge(&f, v)) else { continue };
            klein = klein.max(p.klein_residual());
            let m = p.0.iter().map(|z| z.norm()).fold(1.0, f64::max);
            wedge = wedge.max((0..6).map(|k| (p.0[k] - w.0[k]).norm()).fold(0.0, f64::max) / (m * m));
        }
    }
    checks.push(Check::below("Klein relation", klein, 1e-10));
    checks.push(Check::below("wedge-product agreement", wedge, 1e-12));
    checks
}

fn line_finder() -> Vec<Check> {
    let search = LineSearch::default();
    let found = surfaces::solve_quaddiag_splitting(LN_2, LN_2, FRAC_PI_2, 1.0)
        .and_then(|f| grass::transform(&f))
        .map(|t| grass::find_twistor_lines(&t, &search))
        .unwrap_or_default();
    let set_error = if found.len() == 2 {
        (found[0].v - c(-1.0, 0.0)).norm().max((found[1].v - c(1.0, 0.0)).norm())
    } else {
        f64::INFINITY
    };
    let worst = found.iter().map(|l| l.residual).fold(0.0, f64::max);
    let none = surfaces::solve_quaddiag_splitting(0.0, 0.0, 0.5, 1.0)
        .and_then(|f| grass::transform(&f))
        .map(|t| grass::find_twistor_lines(&t, &search).len() as f64)
        .unwrap_or(f64::INFINITY);
    vec![
        Check::below("lines found = {-1, +1}", set_error, 1e-8),
        Check::below("sigma residual at the lines", worst, search.tol),
        Check::below("lines found for nu = 0.5", none, 0.5),
    ]
}

fn hermitian() -> Vec<Check> {
    let mut checks: Vec<Check> = [(1.0, 0.0, 0.0, 1.0), (2.0, 1.0, 1.0, 1.0), (1.0, -1.0, 1.0, 0.0)]
        .into_iter()
        .map(|(a, b, cc, d)| {
            let f = fns::mobius_f0(a, b, cc, d);
            // the cleared sixth coordinate is d + c v
            let r = grass::check_affine_transform(&f, c(d, 0.0), c(cc, 0.0), 1e-8)
                .map(|r| if r.affine { r.hermitian.norm() } else { f64::INFINITY });
            Check::from(format!("SL(2,R) member ({a}, {b}; {cc}, {d})"), r, 1e-10)
        })
        .collect();
    let f = SliceFunction::polynomial(&[Quaternion::ZERO, Quaternion::new(1.0, 0.0, 1.0, 0.0)]);
    let r = grass::check_affine_transform(&f, c(1.0, 0.0), c(0.0, 0.0), 1e-8).map(|r| r.hermitian.norm()).unwrap_or(0.0);
    checks.push(Check::above("x(1+j) violates the criterion", r, 1e-3));
    checks
}

fn structures(rng: &mut SampleRng) -> Vec<Check> {
    let mut inter: f64 = 0.0;
    for _ in 0..1000 {
        let q = sampling::quaternion(rng, 2.0);
        let [q0, q1, q2, q3] = q.to_array();
        let q = Quaternion::new(q0, q1.abs().max(1e-3), q2, q3);
        inter = inter.max(ocs::verify_intertwine(q).unwrap_or(f64::INFINITY));
    }
    let f0 = fns::f0();
    let (mut push, mut inv) = (0.0f64, 0.0f64);
    for _ in 0..1000 {
        let x = sampling::non_real(rng);
        let r = (|| -> Result<(f64, f64)> {
            let unit = decompose(x)?.unit.to_quaternion();
            let p = ocs::pushforward(&f0, x)?;
            let extra = ocs::j_slice(x)?.invariant_residual().max(ocs::j_f0(f0.eval(x)?).invariant_residual());
            Ok(((p.0 - ocs::left_mult(unit)).amax(), p.invariant_residual().max(extra)))
        })();
        match r {
            Ok((a, b)) => {
                push = push.max(a);
                inv = inv.max(b);
            }
            // f0 is constant on C_{-i}: its differential degenerates there
            Err(crate::Error::SingularDifferential { .. }) if decompose(x).map(|s| s.unit.dist(ImaginaryUnit::MINUS_I) < 1e-9).unwrap_or(false) => {}
            Err(_) => push = f64::INFINITY,
        }
        let u = sampling::complex(rng, 3.0);
        inv = inv.max(ocs::j_from_twistor(u, c(0.0, 0.0), c(0.0, 0.0)).invariant_residual());
    }
    vec![
        Check::below("dg J^f = J_i dg", inter, 1e-10),
        Check::below("push-forward of x(1-Ii)/2 is I_x", push, 1e-8),
        Check::below("complex structure invariants", inv, 1e-10),
    ]
}

fn image_preimage(rng: &mut SampleRng) -> Vec<Check> {
    let f0 = fns::f0();
    let mut round: f64 = 0.0;
    for _ in 0..1000 {
        let q = sampling::quaternion(rng, 3.0);
        let [q0, q1, q2, q3] = q.to_array();
        let q = Quaternion::new(q0, q1.abs().max(1e-3), q2, q3);
        let r = ocs::preimage(q).and_then(|x| f0.eval_slice(&x)).map(|p| p.dist(q) / (1.0 + q.norm()));
        round = round.max(r.unwrap_or(f64::INFINITY));
    }
    let mut lowest = f64::INFINITY;
    for _ in 0..1000 {
        let unit = sampling::unit_off_south(rng, 1e-6);
        let v = sampling::upper(rng);
        let x = Quaternion::real(v.re) + unit.to_quaternion() * v.im;
        lowest = lowest.min(f0.eval(x).map(|p| p.to_array()[1]).unwrap_or(f64::NEG_INFINITY));
    }
    vec![
        Check::below("f0(preimage(q)) = q", round, 1e-10),
        Check::above("smallest i-component of the image", lowest, 0.0),
    ]
}

fn scroll_fibers(rng: &mut SampleRng) -> Vec<Check> {
    let k = surf::quartic_scroll();
    let mut checks = Vec::new();
    for t in [0.3, 0.7, 1.5] {
        let r = fiber_cardinality(&k, Quaternion::new(t * t, t, 0.0, 0.0));
        checks.push(Check::below(format!("fibre over t^2 + ti, t = {t}, contained"), if r.contained { 0.0 } else { 1.0 }, 0.5));
    }
    let mut wrong = 0;
    for _ in 0..100 {
        let r = fiber_cardinality(&k, sampling::quaternion(rng, 2.0));
        if r.contained || r.count != 4 || r.distinct != 4 {
            wrong += 1;
        }
    }
    checks.push(Check::below("generic fibres meeting in 4 points (failures)", wrong as f64, 0.5));
    let mut missing = 0;
    for _ in 0..5 {
        let w = sampling::complex(rng, 1.0);
        let r = fiber_cardinality(&k, Quaternion::new(0.25 - w.norm_sqr(), 0.0, w.re, w.im));
        if !r.multiplicities.contains(&2) {
            missing += 1;
        }
    }
    checks.push(Check::below("tangent fibres over the paraboloid (failures)", missing as f64, 0.5));
    checks
}

/// `x ↦ I_x + λ i I_x i`.
fn ellipsoid(lambda: f64) -> impl Fn(Quaternion) -> Result<Quaternion> {
    move |x: Quaternion| {
        let u = decompose(x)?.unit.to_quaternion();
        Ok(u + Quaternion::I * u * Quaternion::I * lambda)
    }
}

fn negative_control(rng: &mut SampleRng) -> Vec<Check> {
    let (j, k) = (ImaginaryUnit::J, ImaginaryUnit::K);
    let bad = check_sliceness(&ellipsoid(2.0), j, k, rng, 100, 1e-10).map(|r| r.residual).unwrap_or(0.0);
    let mut good: f64 = 0.0;
    for (_, f) in fns::all() {
        let ev = |x: Quaternion| f.eval(x);
        good = good.max(check_sliceness(&ev, j, k, rng, 100, 1e-10).map(|r| r.residual).unwrap_or(f64::INFINITY));
    }
    vec![
        Check::above("ellipsoid map rejected", bad, 1.0),
        Check::below("slice functions accepted", good, 1e-10),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_criteria_pass() {
        for id in [1, 3, 6, 8, 10, 12] {
            let c = run_criterion(id, 7);
            assert!(c.pass, "{c:#?}");
        }
    }
}
