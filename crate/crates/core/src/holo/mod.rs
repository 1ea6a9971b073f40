//! Holomorphic maps `C -> C` built as expression trees.
//!
//! The grammar is small on purpose: complex constants, the variable `v`,
//! the four field operations, integer powers, the principal square root and
//! `exp`. Trees are immutable and shared through `Arc`, so cloning a map is
//! cheap and maps can be handed to worker threads freely.

pub mod exact;
mod json;
mod parse;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use exact::{eval_exact, exact_from, exact_int, ExactComplex};
pub use parse::parse;

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Const(Complex64),
    Var,
    Add(HoloMap, HoloMap),
    Sub(HoloMap, HoloMap),
    Mul(HoloMap, HoloMap),
    Div(HoloMap, HoloMap),
    Neg(HoloMap),
    Pow(HoloMap, i32),
    Sqrt(HoloMap),
    Exp(HoloMap),
}

/// Region of `C` on which a map is meant to be evaluated.
#[derive(Debug, Clone, PartialEq)]
pub enum Domain {
    Plane,
    UpperHalfPlane,
    /// The plane minus finitely many points.
    Punctured(Vec<Complex64>),
    /// Closed rectangle `[x0, x1] × [y0, y1]`.
    Box { x0: f64, x1: f64, y0: f64, y1: f64 },
    /// Intersection of several regions.
    All(Vec<Domain>),
}

impl Domain {
    pub fn contains(&self, v: Complex64) -> bool {
        match self {
            Domain::Plane => true,
            Domain::UpperHalfPlane => v.im > 0.0,
            Domain::Punctured(pts) => pts.iter().all(|p| *p != v),
            Domain::Box { x0, x1, y0, y1 } => {
                v.re >= *x0 && v.re <= *x1 && v.im >= *y0 && v.im <= *y1
            }
            Domain::All(ds) => ds.iter().all(|d| d.contains(v)),
        }
    }

    pub fn intersect(&self, other: &Domain) -> Domain {
        match (self, other) {
            (Domain::Plane, d) | (d, Domain::Plane) => d.clone(),
            (a, b) if a == b => a.clone(),
            (Domain::All(a), Domain::All(b)) => Domain::All(a.iter().chain(b).cloned().collect()),
            (Domain::All(a), d) | (d, Domain::All(a)) => {
                let mut v = a.clone();
                v.push(d.clone());
                Domain::All(v)
            }
            (a, b) => Domain::All(vec![a.clone(), b.clone()]),
        }
    }
}

/// A holomorphic map given by an expression tree.
#[derive(Clone, PartialEq)]
pub struct HoloMap {
    node: Arc<Node>,
}

impl fmt::Debug for HoloMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HoloMap({})", self)
    }
}

impl fmt::Display for HoloMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&parse::print(self))
    }
}

fn clean(z: Complex64) -> Complex64 {
    // -0 is folded into +0 so that branch decisions never see a signed zero
    Complex64::new(z.re + 0.0, z.im + 0.0)
}

impl HoloMap {
    fn wrap(node: Node) -> HoloMap {
        HoloMap { node: Arc::new(node) }
    }

    pub fn node(&self) -> &Node {
        &self.node
    }

    pub fn var() -> HoloMap {
        HoloMap::wrap(Node::Var)
    }

    pub fn constant(c: Complex64) -> HoloMap {
        HoloMap::wrap(Node::Const(clean(c)))
    }

    pub fn real(r: f64) -> HoloMap {
        HoloMap::constant(Complex64::new(r, 0.0))
    }

    pub fn zero() -> HoloMap {
        HoloMap::real(0.0)
    }

    pub fn one() -> HoloMap {
        HoloMap::real(1.0)
    }

    pub fn as_const(&self) -> Option<Complex64> {
        match *self.node {
            Node::Const(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_const() == Some(Complex64::new(0.0, 0.0))
    }

    pub fn is_one(&self) -> bool {
        self.as_const() == Some(Complex64::new(1.0, 0.0))
    }

    pub fn powi(&self, n: i32) -> HoloMap {
        match n {
            0 => HoloMap::one(),
            1 => self.clone(),
            _ => match self.as_const() {
                Some(c) if c != Complex64::new(0.0, 0.0) || n > 0 => HoloMap::constant(c.powi(n)),
                _ => HoloMap::wrap(Node::Pow(self.clone(), n)),
            },
        }
    }

    pub fn sqrt(&self) -> HoloMap {
        HoloMap::wrap(Node::Sqrt(self.clone()))
    }

    pub fn exp(&self) -> HoloMap {
        HoloMap::wrap(Node::Exp(self.clone()))
    }

    pub fn recip(&self) -> HoloMap {
        HoloMap::one() / self.clone()
    }

    /// Evaluates at `v`. Exact division by zero is reported as a pole.
    pub fn eval(&self, v: Complex64) -> Result<Complex64> {
        let v = clean(v);
        let z = self.eval_inner(v, None)?;
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::Pole { context: self.to_string() });
        }
        Ok(clean(z))
    }

    /// Evaluates and additionally fails when a square-root argument comes
    /// within `margin` of the cut `(-inf, 0]`.
    pub fn eval_guarded(&self, v: Complex64, margin: f64) -> Result<Complex64> {
        let v = clean(v);
        let z = self.eval_inner(v, Some(margin))?;
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::Pole { context: self.to_string() });
        }
        Ok(clean(z))
    }

    /// Evaluates after checking that `v` lies in `domain`.
    pub fn eval_in(&self, domain: &Domain, v: Complex64) -> Result<Complex64> {
        if !domain.contains(v) {
            return Err(Error::OutOfDomain { re: v.re, im: v.im });
        }
        self.eval(v)
    }

    fn eval_inner(&self, v: Complex64, margin: Option<f64>) -> Result<Complex64> {
        let zero = Complex64::new(0.0, 0.0);
        Ok(match &*self.node {
            Node::Const(c) => *c,
            Node::Var => v,
            Node::Add(a, b) => a.eval_inner(v, margin)? + b.eval_inner(v, margin)?,
            Node::Sub(a, b) => a.eval_inner(v, margin)? - b.eval_inner(v, margin)?,
            Node::Mul(a, b) => a.eval_inner(v, margin)? * b.eval_inner(v, margin)?,
            Node::Div(a, b) => {
                let d = b.eval_inner(v, margin)?;
                if d == zero {
                    return Err(Error::Pole { context: self.to_string() });
                }
                a.eval_inner(v, margin)? / d
            }
            Node::Neg(a) => -a.eval_inner(v, margin)?,
            Node::Pow(a, n) => {
                let z = a.eval_inner(v, margin)?;
                if z == zero && *n < 0 {
                    return Err(Error::Pole { context: self.to_string() });
                }
                z.powi(*n)
            }
            Node::Sqrt(a) => {
                let z = clean(a.eval_inner(v, margin)?);
                if let Some(m) = margin {
                    if cut_distance(z) < m {
                        return Err(Error::BranchCut { margin: m });
                    }
                }
                z.sqrt()
            }
            Node::Exp(a) => a.eval_inner(v, margin)?.exp(),
        })
    }

    /// Smallest distance from any square-root argument to the cut at `v`.
    /// Infinite when the tree has no square roots.
    pub fn branch_margin(&self, v: Complex64) -> Result<f64> {
        let mut best = f64::INFINITY;
        self.walk_margin(clean(v), &mut best)?;
        Ok(best)
    }

    fn walk_margin(&self, v: Complex64, best: &mut f64) -> Result<()> {
        match &*self.node {
            Node::Const(_) | Node::Var => {}
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
                a.walk_margin(v, best)?;
                b.walk_margin(v, best)?;
            }
            Node::Neg(a) | Node::Pow(a, _) | Node::Exp(a) => a.walk_margin(v, best)?,
            Node::Sqrt(a) => {
                a.walk_margin(v, best)?;
                *best = best.min(cut_distance(a.eval(v)?));
            }
        }
        Ok(())
    }

    /// Exact derivative in `v`.
    pub fn derivative(&self) -> HoloMap {
        match &*self.node {
            Node::Const(_) => HoloMap::zero(),
            Node::Var => HoloMap::one(),
            Node::Add(a, b) => a.derivative() + b.derivative(),
            Node::Sub(a, b) => a.derivative() - b.derivative(),
            Node::Mul(a, b) => a.derivative() * b.clone() + a.clone() * b.derivative(),
            Node::Div(a, b) => {
                (a.derivative() * b.clone() - a.clone() * b.derivative()) / b.powi(2)
            }
            Node::Neg(a) => -a.derivative(),
            Node::Pow(a, n) => {
                HoloMap::real(*n as f64) * a.powi(n - 1) * a.derivative()
            }
            Node::Sqrt(a) => a.derivative() / (HoloMap::real(2.0) * self.clone()),
            Node::Exp(a) => self.clone() * a.derivative(),
        }
    }

    /// The map `v -> conj(self(conj v))`, built by conjugating constants.
    /// Agrees with [`ReflectedMap`] off the square-root cuts.
    pub fn reflect(&self) -> HoloMap {
        match &*self.node {
            Node::Const(c) => HoloMap::constant(c.conj()),
            Node::Var => self.clone(),
            Node::Add(a, b) => a.reflect() + b.reflect(),
            Node::Sub(a, b) => a.reflect() - b.reflect(),
            Node::Mul(a, b) => a.reflect() * b.reflect(),
            Node::Div(a, b) => a.reflect() / b.reflect(),
            Node::Neg(a) => -a.reflect(),
            Node::Pow(a, n) => a.reflect().powi(*n),
            Node::Sqrt(a) => a.reflect().sqrt(),
            Node::Exp(a) => a.reflect().exp(),
        }
    }

    /// Replaces the variable by `arg`.
    pub fn compose(&self, arg: &HoloMap) -> HoloMap {
        match &*self.node {
            Node::Const(_) => self.clone(),
            Node::Var => arg.clone(),
            Node::Add(a, b) => a.compose(arg) + b.compose(arg),
            Node::Sub(a, b) => a.compose(arg) - b.compose(arg),
            Node::Mul(a, b) => a.compose(arg) * b.compose(arg),
            Node::Div(a, b) => a.compose(arg) / b.compose(arg),
            Node::Neg(a) => -a.compose(arg),
            Node::Pow(a, n) => a.compose(arg).powi(*n),
            Node::Sqrt(a) => a.compose(arg).sqrt(),
            Node::Exp(a) => a.compose(arg).exp(),
        }
    }

    /// True when the tree uses neither `sqrt` nor `exp`.
    pub fn is_rational(&self) -> bool {
        match &*self.node {
            Node::Const(_) | Node::Var => true,
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
                a.is_rational() && b.is_rational()
            }
            Node::Neg(a) | Node::Pow(a, _) => a.is_rational(),
            Node::Sqrt(_) | Node::Exp(_) => false,
        }
    }

    pub fn node_count(&self) -> usize {
        match &*self.node {
            Node::Const(_) | Node::Var => 1,
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
                1 + a.node_count() + b.node_count()
            }
            Node::Neg(a) | Node::Pow(a, _) | Node::Sqrt(a) | Node::Exp(a) => 1 + a.node_count(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json::to_json(self)
    }

    /// Reads a tree from nested arrays, or parses a string.
    pub fn from_json(value: &serde_json::Value) -> Result<HoloMap> {
        json::from_json(value)
    }
}

fn cut_distance(z: Complex64) -> f64 {
    if z.re <= 0.0 {
        z.im.abs()
    } else {
        z.norm()
    }
}

impl Add for HoloMap {
    type Output = HoloMap;
    fn add(self, rhs: HoloMap) -> HoloMap {
        match (self.as_const(), rhs.as_const()) {
            (Some(a), Some(b)) => HoloMap::constant(a + b),
            _ if self.is_zero() => rhs,
            _ if rhs.is_zero() => self,
            _ => HoloMap::wrap(Node::Add(self, rhs)),
        }
    }
}

impl Sub for HoloMap {
    type Output = HoloMap;
    fn sub(self, rhs: HoloMap) -> HoloMap {
        match (self.as_const(), rhs.as_const()) {
            (Some(a), Some(b)) => HoloMap::constant(a - b),
            _ if rhs.is_zero() => self,
            _ if self.is_zero() => -rhs,
            _ => HoloMap::wrap(Node::Sub(self, rhs)),
        }
    }
}

impl Mul for HoloMap {
    type Output = HoloMap;
    fn mul(self, rhs: HoloMap) -> HoloMap {
        match (self.as_const(), rhs.as_const()) {
            (Some(a), Some(b)) => HoloMap::constant(a * b),
            _ if self.is_zero() || rhs.is_zero() => HoloMap::zero(),
            _ if self.is_one() => rhs,
            _ if rhs.is_one() => self,
            _ => HoloMap::wrap(Node::Mul(self, rhs)),
        }
    }
}

impl Div for HoloMap {
    type Output = HoloMap;
    fn div(self, rhs: HoloMap) -> HoloMap {
        match (self.as_const(), rhs.as_const()) {
            (Some(a), Some(b)) if b != Complex64::new(0.0, 0.0) => HoloMap::constant(a / b),
            _ if rhs.is_one() => self,
            _ => HoloMap::wrap(Node::Div(self, rhs)),
        }
    }
}

impl Neg for HoloMap {
    type Output = HoloMap;
    fn neg(self) -> HoloMap {
        if let Some(c) = self.as_const() {
            return HoloMap::constant(-c);
        }
        if let Node::Neg(a) = &*self.node {
            return a.clone();
        }
        HoloMap::wrap(Node::Neg(self))
    }
}

macro_rules! ref_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<&HoloMap> for &HoloMap {
            type Output = HoloMap;
            fn $m(self, rhs: &HoloMap) -> HoloMap { $tr::$m(self.clone(), rhs.clone()) }
        }
        impl $tr<Complex64> for HoloMap {
            type Output = HoloMap;
            fn $m(self, rhs: Complex64) -> HoloMap { $tr::$m(self, HoloMap::constant(rhs)) }
        }
        impl $tr<f64> for HoloMap {
            type Output = HoloMap;
            fn $m(self, rhs: f64) -> HoloMap { $tr::$m(self, HoloMap::real(rhs)) }
        }
    )*};
}
ref_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for &HoloMap {
    type Output = HoloMap;
    fn neg(self) -> HoloMap {
        -self.clone()
    }
}

impl From<f64> for HoloMap {
    fn from(r: f64) -> Self {
        HoloMap::real(r)
    }
}

impl From<Complex64> for HoloMap {
    fn from(c: Complex64) -> Self {
        HoloMap::constant(c)
    }
}

/// `v -> conj(base(conj v))`, evaluated literally through the base map.
#[derive(Debug, Clone, PartialEq)]
pub struct ReflectedMap {
    pub base: HoloMap,
}

impl ReflectedMap {
    pub fn new(base: HoloMap) -> Self {
        ReflectedMap { base }
    }

    pub fn eval(&self, v: Complex64) -> Result<Complex64> {
        Ok(clean(self.base.eval(v.conj())?.conj()))
    }

    pub fn reflect(&self) -> HoloMap {
        self.base.clone()
    }

    /// Expression for the same map, valid off the square-root cuts.
    pub fn to_holo(&self) -> HoloMap {
        self.base.reflect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eval_examples() {
        let sq = HoloMap::var().powi(2);
        assert_eq!(sq.eval(c(1.0, 1.0)).unwrap(), c(0.0, 2.0));

        let s = (HoloMap::one() - HoloMap::var().powi(2)).sqrt();
        assert_eq!(s.eval(c(0.0, 0.0)).unwrap(), c(1.0, 0.0));

        let xi1 = HoloMap::real(-1.25) * HoloMap::var().powi(2) - 4.0;
        assert_eq!(xi1.eval(c(0.0, -4.0)).unwrap(), c(16.0, 0.0));
    }

    #[test]
    fn poles_are_errors() {
        let r = HoloMap::var().recip();
        assert!(matches!(r.eval(c(0.0, 0.0)), Err(Error::Pole { .. })));
        let p = HoloMap::var().powi(-2);
        assert!(matches!(p.eval(c(0.0, 0.0)), Err(Error::Pole { .. })));
        assert!(matches!(p.eval(c(-0.0, -0.0)), Err(Error::Pole { .. })));
    }

    #[test]
    fn signed_zero_does_not_flip_branch() {
        let s = HoloMap::var().sqrt();
        assert_eq!(s.eval(c(-4.0, -0.0)).unwrap(), c(0.0, 2.0));
        assert_eq!(s.eval(c(-4.0, 0.0)).unwrap(), c(0.0, 2.0));
    }

    #[test]
    fn guarded_eval_sees_the_cut() {
        let s = (HoloMap::one() - HoloMap::var().powi(2)).sqrt();
        // 1 - v^2 is negative real for real |v| > 1
        assert!(matches!(
            s.eval_guarded(c(2.0, 1e-6), 1e-3),
            Err(Error::BranchCut { .. })
        ));
        assert!(s.eval_guarded(c(0.5, 0.5), 1e-3).is_ok());
        let m = s.branch_margin(c(2.0, 0.0)).unwrap();
        assert_eq!(m, 0.0);
        assert_eq!(HoloMap::var().branch_margin(c(1.0, 1.0)).unwrap(), f64::INFINITY);
    }

    #[test]
    fn sqrt_cut_sides_differ() {
        // across v = 2 the argument 1 - v^2 crosses the negative axis
        let s = (HoloMap::one() - HoloMap::var().powi(2)).sqrt();
        let above = s.eval(c(2.0, 1e-9)).unwrap();
        let below = s.eval(c(2.0, -1e-9)).unwrap();
        assert!((above + below).norm() < 1e-6);
        assert!((above - below).norm() > 3.0);
    }

    #[test]
    fn derivative_examples() {
        let d = HoloMap::var().powi(2).derivative();
        assert_eq!(d.eval(c(1.5, -2.0)).unwrap(), c(3.0, -4.0));
        let d = HoloMap::var().recip().derivative();
        let v = c(0.3, 0.7);
        assert!((d.eval(v).unwrap() + 1.0 / (v * v)).norm() < 1e-14);

        let s = (HoloMap::one() - HoloMap::var().powi(2)).sqrt();
        let ds = s.derivative().eval(c(0.0, 1.0)).unwrap();
        let want = c(0.0, -1.0) / 2f64.sqrt();
        assert!((ds - want).norm() < 1e-14);
        let h = 1e-5;
        let fd = (s.eval(c(0.0, 1.0) + h).unwrap() - s.eval(c(0.0, 1.0) - h).unwrap()) / (2.0 * h);
        assert!((fd - ds).norm() < 1e-9);
    }

    #[test]
    fn reflection() {
        let m = HoloMap::constant(c(1.0, 2.0)) * HoloMap::var() + HoloMap::var().exp();
        let r = ReflectedMap::new(m.clone());
        let v = c(0.4, 1.1);
        assert!((r.eval(v).unwrap() - m.reflect().eval(v).unwrap()).norm() < 1e-14);
        assert!((r.eval(v).unwrap() - (c(1.0, -2.0) * v + v.exp())).norm() < 1e-14);
        // real coefficients: reflection is the identity on maps
        let p = HoloMap::var().powi(3) - HoloMap::var() * 2.0;
        assert_eq!(p.reflect(), p);
        assert_eq!(p.reflect().reflect(), p);
    }

    #[test]
    fn domains() {
        let d = Domain::UpperHalfPlane.intersect(&Domain::Punctured(vec![c(0.0, 1.0)]));
        assert!(d.contains(c(0.0, 2.0)));
        assert!(!d.contains(c(0.0, 1.0)));
        assert!(!d.contains(c(0.0, -1.0)));
        let m = HoloMap::var();
        assert!(matches!(
            m.eval_in(&Domain::UpperHalfPlane, c(1.0, -1.0)),
            Err(Error::OutOfDomain { .. })
        ));
    }

    #[test]
    fn smart_constructors_fold() {
        let v = HoloMap::var();
        assert_eq!(v.clone() + HoloMap::zero(), v);
        assert_eq!(v.clone() * HoloMap::one(), v);
        assert_eq!(-(-v.clone()), v);
        assert!((v.clone() * HoloMap::zero()).is_zero());
        assert_eq!((HoloMap::real(2.0) + HoloMap::real(3.0)).as_const(), Some(c(5.0, 0.0)));
    }
}
