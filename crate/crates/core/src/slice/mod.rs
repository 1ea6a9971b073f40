//! Slice functions on circular domains of `H`.
//!
//! The working representation is the splitting quadruple `(g, ĝ, h, ĥ)` of
//! holomorphic maps on the upper half-plane: on `C_i` the function reads
//! `g(v) + h(v) j`, and on `C_{-i}` at the point `v̄` it reads
//! `conj ĝ(v) + conj ĥ(v) j`. Everything else is recovered from these two
//! restrictions by the representation formula.
//!
//! Functions can also wrap a stem closure. Those evaluate fine but have no
//! splitting, so geometric operations reject them and derivatives fall back
//! to finite differences.

mod calculus;
pub mod catalog;
mod stem;

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde_json::{Value, json};

use crate::error::{Error, Result};
use crate::holo::{Domain, HoloMap};
use crate::qcore::{ImaginaryUnit, Quaternion, SliceCoords, decompose};

pub use calculus::{
    Classification, SlicenessReport, check_regular, check_sliceness, classify_constant_affine,
    conjugate, extends_to_r, is_real, normal, reciprocal, slice_derivative, slice_product,
    spherical_derivative, spherical_derivative_fn,
};
pub use stem::{StemPair, from_stem, to_stem};

/// Points closer than this to the real axis are rejected.
pub const REAL_AXIS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Splitting {
    pub g: HoloMap,
    pub ghat: HoloMap,
    pub h: HoloMap,
    pub hhat: HoloMap,
}

impl Splitting {
    pub fn new(g: HoloMap, ghat: HoloMap, h: HoloMap, hhat: HoloMap) -> Self {
        Splitting { g, ghat, h, hhat }
    }

    pub fn channels(&self) -> [&HoloMap; 4] {
        [&self.g, &self.ghat, &self.h, &self.hhat]
    }

    pub fn map(&self, f: impl Fn(&HoloMap) -> HoloMap) -> Splitting {
        Splitting::new(f(&self.g), f(&self.ghat), f(&self.h), f(&self.hhat))
    }

    /// `[g, ĝ, h, ĥ]` at `v`.
    pub fn eval(&self, v: Complex64) -> Result<[Complex64; 4]> {
        Ok([self.g.eval(v)?, self.ghat.eval(v)?, self.h.eval(v)?, self.hhat.eval(v)?])
    }

    /// As [`Splitting::eval`], refusing points within `margin` of a cut.
    pub fn eval_guarded(&self, v: Complex64, margin: f64) -> Result<[Complex64; 4]> {
        Ok([
            self.g.eval_guarded(v, margin)?,
            self.ghat.eval_guarded(v, margin)?,
            self.h.eval_guarded(v, margin)?,
            self.hhat.eval_guarded(v, margin)?,
        ])
    }

    pub fn branch_margin(&self, v: Complex64) -> Result<f64> {
        let mut m = f64::INFINITY;
        for c in self.channels() {
            m = m.min(c.branch_margin(v)?);
        }
        Ok(m)
    }

    pub fn is_rational(&self) -> bool {
        self.channels().iter().all(|c| c.is_rational())
    }
}

pub type StemFn = Arc<dyn Fn(Complex64) -> Result<(Quaternion, Quaternion)> + Send + Sync>;

#[derive(Clone)]
enum Repr {
    Split(Splitting),
    Stem(StemFn),
}

/// How a function came to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Expression,
    /// Output of a combinator; the name is the combinator.
    Derived(&'static str),
    Stem,
}

#[derive(Clone)]
pub struct SliceFunction {
    repr: Repr,
    domain: Domain,
    provenance: Provenance,
}

impl fmt::Debug for SliceFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Split(s) => f
                .debug_struct("SliceFunction")
                .field("g", &s.g)
                .field("ghat", &s.ghat)
                .field("h", &s.h)
                .field("hhat", &s.hhat)
                .field("provenance", &self.provenance)
                .finish(),
            Repr::Stem(_) => f.write_str("SliceFunction(<stem>)"),
        }
    }
}

impl SliceFunction {
    pub fn from_splitting(g: HoloMap, ghat: HoloMap, h: HoloMap, hhat: HoloMap) -> Self {
        SliceFunction {
            repr: Repr::Split(Splitting::new(g, ghat, h, hhat)),
            domain: Domain::UpperHalfPlane,
            provenance: Provenance::Expression,
        }
    }

    /// Parses the four channels.
    pub fn parse(g: &str, ghat: &str, h: &str, hhat: &str) -> Result<Self> {
        use crate::holo::parse;
        Ok(Self::from_splitting(parse(g)?, parse(ghat)?, parse(h)?, parse(hhat)?))
    }

    pub(crate) fn derived(split: Splitting, domain: Domain, name: &'static str) -> Self {
        SliceFunction { repr: Repr::Split(split), domain, provenance: Provenance::Derived(name) }
    }

    pub(crate) fn from_stem_fn(f: StemFn, domain: Domain) -> Self {
        SliceFunction { repr: Repr::Stem(f), domain, provenance: Provenance::Stem }
    }

    pub fn with_domain(mut self, domain: Domain) -> Self {
        self.domain = domain;
        self
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Identity `x`.
    pub fn identity() -> Self {
        let v = HoloMap::var();
        Self::from_splitting(v.clone(), v, HoloMap::zero(), HoloMap::zero())
    }

    /// The constant `q = p1 + p2 j`.
    pub fn constant(q: Quaternion) -> Self {
        Self::polynomial(&[q])
    }

    /// `Σ x^n a_n` with quaternionic right coefficients `a_n = p_n + r_n j`:
    /// `g = Σ v^n p_n`, `h = Σ v^n r_n`, and the hatted channels use the
    /// conjugated coefficients.
    pub fn polynomial(coeffs: &[Quaternion]) -> Self {
        let mut ch = [HoloMap::zero(), HoloMap::zero(), HoloMap::zero(), HoloMap::zero()];
        for (n, a) in coeffs.iter().enumerate() {
            let (p, r) = a.split();
            let vn = HoloMap::var().powi(n as i32);
            for (slot, c) in ch.iter_mut().zip([p, p.conj(), r, r.conj()]) {
                *slot = slot.clone() + vn.clone() * HoloMap::constant(c);
            }
        }
        let [g, ghat, h, hhat] = ch;
        Self::from_splitting(g, ghat, h, hhat)
    }

    /// A function whose stem is constant on the upper half-plane,
    /// `f(α + Iβ) = F1 + I F2`.
    pub fn from_constant_stem(f1: Quaternion, f2: Quaternion) -> Self {
        let upper = f1 + Quaternion::I * f2;
        let lower = f1 - Quaternion::I * f2;
        let (g, h) = upper.split();
        let (gb, hb) = lower.split();
        Self::from_splitting(
            HoloMap::constant(g),
            HoloMap::constant(gb.conj()),
            HoloMap::constant(h),
            HoloMap::constant(hb.conj()),
        )
    }

    pub fn splitting(&self) -> Result<&Splitting> {
        match &self.repr {
            Repr::Split(s) => Ok(s),
            Repr::Stem(_) => Err(Error::NotExpressionBuilt),
        }
    }

    pub fn is_expression_built(&self) -> bool {
        matches!(self.repr, Repr::Split(_))
    }

    fn pole_error(&self, e: Error) -> Error {
        match (e, self.provenance) {
            (Error::Pole { .. }, Provenance::Derived("reciprocal")) => Error::ZeroNormal,
            (e, _) => e,
        }
    }

    fn check_v(&self, v: Complex64) -> Result<()> {
        if v.im <= REAL_AXIS_TOL {
            return Err(Error::RealInput { tol: REAL_AXIS_TOL });
        }
        if !self.domain.contains(v) {
            return Err(Error::OutOfDomain { re: v.re, im: v.im });
        }
        Ok(())
    }

    /// Value at `α + Iβ`; `β` may have either sign.
    pub fn eval_coords(&self, alpha: f64, beta: f64, unit: ImaginaryUnit) -> Result<Quaternion> {
        let (beta, unit) = if beta < 0.0 { (-beta, unit.neg()) } else { (beta, unit) };
        let v = Complex64::new(alpha, beta);
        self.check_v(v)?;
        match &self.repr {
            Repr::Split(s) => {
                let [g, gh, h, hh] = s.eval(v).map_err(|e| self.pole_error(e))?;
                let on_plus = Quaternion::from_split(g, h);
                let on_minus = Quaternion::from_split(gh.conj(), hh.conj());
                let ii = unit.to_quaternion() * Quaternion::I;
                Ok(((Quaternion::ONE - ii) * on_plus + (Quaternion::ONE + ii) * on_minus) * 0.5)
            }
            Repr::Stem(f) => {
                let (f1, f2) = f(v)?;
                Ok(f1 + unit.to_quaternion() * f2)
            }
        }
    }

    pub fn eval_slice(&self, s: &SliceCoords) -> Result<Quaternion> {
        self.eval_coords(s.alpha, s.beta, s.unit)
    }

    pub fn eval(&self, x: Quaternion) -> Result<Quaternion> {
        let s = decompose(x)?;
        self.eval_slice(&s)
    }

    /// Restriction to `C_i`, as a function of `v` in either half-plane.
    pub fn eval_ci(&self, v: Complex64) -> Result<Quaternion> {
        self.eval_coords(v.re, v.im, ImaginaryUnit::I)
    }

    /// Evaluates through the values on `C_J` and `C_K`.
    pub fn eval_repr_general(
        &self,
        x: Quaternion,
        j: ImaginaryUnit,
        k: ImaginaryUnit,
    ) -> Result<Quaternion> {
        let (jq, kq) = (j.to_quaternion(), k.to_quaternion());
        let jk_inv = (jq - kq).inv().filter(|_| j.dist(k) > REAL_AXIS_TOL);
        let jk_inv = jk_inv.ok_or(Error::DegenerateUnits)?;
        let s = decompose(x)?;
        let iq = s.unit.to_quaternion();
        let fj = self.eval_coords(s.alpha, s.beta, j)?;
        let fk = self.eval_coords(s.alpha, s.beta, k)?;
        Ok((iq - kq) * jk_inv * fj - (iq - jq) * jk_inv * fk)
    }

    pub fn to_json(&self) -> Result<Value> {
        let s = self.splitting()?;
        Ok(json!({
            "g": s.g.to_string(),
            "ghat": s.ghat.to_string(),
            "h": s.h.to_string(),
            "hhat": s.hhat.to_string(),
            "domain": domain_to_json(&self.domain),
        }))
    }

    /// Reads `{"g", "ghat", "h", "hhat", "domain"}`; absent channels are 0.
    pub fn from_json(value: &Value) -> Result<Self> {
        let obj = value.as_object().ok_or_else(|| Error::Json("expected an object".into()))?;
        let ch = |k: &str| -> Result<HoloMap> {
            match obj.get(k) {
                None | Some(Value::Null) => Ok(HoloMap::zero()),
                Some(v) => HoloMap::from_json(v),
            }
        };
        let f = Self::from_splitting(ch("g")?, ch("ghat")?, ch("h")?, ch("hhat")?);
        let domain = match obj.get("domain") {
            None | Some(Value::Null) => Domain::UpperHalfPlane,
            Some(d) => domain_from_json(d)?,
        };
        Ok(f.with_domain(domain))
    }
}

pub fn domain_to_json(d: &Domain) -> Value {
    match d {
        Domain::Plane => json!("plane"),
        Domain::UpperHalfPlane => json!("upper"),
        Domain::Punctured(p) => {
            json!({"punctured": p.iter().map(|z| json!([z.re, z.im])).collect::<Vec<_>>()})
        }
        Domain::Box { x0, x1, y0, y1 } => json!({"box": [x0, x1, y0, y1]}),
        Domain::All(ds) => json!({"all": ds.iter().map(domain_to_json).collect::<Vec<_>>()}),
    }
}

pub fn domain_from_json(v: &Value) -> Result<Domain> {
    let bad = || Error::Json(format!("unknown domain {v}"));
    if let Some(s) = v.as_str() {
        return match s {
            "plane" => Ok(Domain::Plane),
            "upper" => Ok(Domain::UpperHalfPlane),
            _ => Err(bad()),
        };
    }
    let obj = v.as_object().ok_or_else(bad)?;
    let nums = |a: &Value| -> Result<Vec<f64>> {
        a.as_array()
            .ok_or_else(bad)?
            .iter()
            .map(|x| x.as_f64().ok_or_else(bad))
            .collect()
    };
    if let Some(b) = obj.get("box") {
        let b = nums(b)?;
        if b.len() != 4 {
            return Err(bad());
        }
        return Ok(Domain::Box { x0: b[0], x1: b[1], y0: b[2], y1: b[3] });
    }
    if let Some(p) = obj.get("punctured") {
        let pts = p
            .as_array()
            .ok_or_else(bad)?
            .iter()
            .map(|z| {
                let z = nums(z)?;
                if z.len() != 2 {
                    return Err(bad());
                }
                Ok(Complex64::new(z[0], z[1]))
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(Domain::Punctured(pts));
    }
    if let Some(a) = obj.get("all") {
        let ds = a.as_array().ok_or_else(bad)?.iter().map(domain_from_json).collect::<Result<_>>()?;
        return Ok(Domain::All(ds));
    }
    Err(bad())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;

    fn q(a: f64, b: f64, c: f64, d: f64) -> Quaternion {
        Quaternion::new(a, b, c, d)
    }

    #[test]
    fn eval_examples() {
        let id = SliceFunction::identity();
        assert_eq!(id.eval(q(1.0, 0.0, 2.0, 0.0)).unwrap(), q(1.0, 0.0, 2.0, 0.0));

        let f0 = catalog::f0();
        assert_eq!(f0.eval(Quaternion::I).unwrap(), Quaternion::I);
        assert_eq!(f0.eval(-Quaternion::I).unwrap(), Quaternion::ZERO);
        // identity on C_i^+, zero on C_{-i}^+
        assert_eq!(f0.eval(q(0.5, 3.0, 0.0, 0.0)).unwrap(), q(0.5, 3.0, 0.0, 0.0));
        assert_eq!(f0.eval(q(0.5, -3.0, 0.0, 0.0)).unwrap(), Quaternion::ZERO);
    }

    #[test]
    fn real_points_rejected() {
        let id = SliceFunction::identity();
        assert!(matches!(id.eval(Quaternion::real(1.0)), Err(Error::RealInput { .. })));
        assert!(matches!(
            id.eval(q(1.0, 1e-13, 0.0, 0.0)),
            Err(Error::RealInput { .. })
        ));
    }

    #[test]
    fn domain_is_enforced() {
        let f = SliceFunction::identity().with_domain(Domain::Box { x0: 0.0, x1: 1.0, y0: 0.0, y1: 1.0 });
        assert!(f.eval(q(0.5, 0.5, 0.0, 0.0)).is_ok());
        assert!(matches!(f.eval(q(2.0, 0.5, 0.0, 0.0)), Err(Error::OutOfDomain { .. })));
    }

    #[test]
    fn well_posed_under_sign_flip() {
        let f = SliceFunction::parse("v^2 + 1i", "v - 2", "3v", "1/v").unwrap();
        let mut rng = sampling::rng(3);
        for _ in 0..200 {
            let v = sampling::upper(&mut rng);
            let u = sampling::unit(&mut rng);
            let a = f.eval_coords(v.re, v.im, u).unwrap();
            let b = f.eval_coords(v.re, -v.im, u.neg()).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn general_representation_formula() {
        let id = SliceFunction::identity();
        let x = q(1.0, 1.0, 0.0, 0.0);
        let got = id.eval_repr_general(x, ImaginaryUnit::J, ImaginaryUnit::K).unwrap();
        assert!(got.dist(x) < 1e-15);

        let f0 = catalog::f0();
        let x = q(1.0, 0.0, 1.0, 0.0);
        let got = f0.eval_repr_general(x, ImaginaryUnit::J, ImaginaryUnit::K).unwrap();
        assert!(got.dist(f0.eval(x).unwrap()) < 1e-14);

        let f = SliceFunction::parse("v^3", "2i v", "sqrt(v)", "exp(v)").unwrap();
        let x = q(0.2, -0.4, 0.9, 0.3);
        let a = f.eval_repr_general(x, ImaginaryUnit::I, ImaginaryUnit::MINUS_I).unwrap();
        assert!(a.dist(f.eval(x).unwrap()) < 1e-13);
        assert_eq!(
            f.eval_repr_general(x, ImaginaryUnit::J, ImaginaryUnit::J),
            Err(Error::DegenerateUnits)
        );
    }

    #[test]
    fn polynomial_splitting() {
        let a = q(1.0, 2.0, -1.0, 0.5);
        let b = q(0.0, 1.0, 3.0, -2.0);
        let f = SliceFunction::polynomial(&[b, a]);
        let mut rng = sampling::rng(9);
        for _ in 0..100 {
            let x = sampling::non_real(&mut rng);
            assert!(f.eval(x).unwrap().dist(x * a + b) < 1e-13);
        }
        let c = q(0.3, -0.1, 2.0, 1.0);
        assert!(SliceFunction::constant(c).eval(q(0.0, 0.0, 0.0, 1.0)).unwrap().dist(c) < 1e-15);
    }

    #[test]
    fn constant_stem_function() {
        let f = SliceFunction::from_constant_stem(Quaternion::ONE, -Quaternion::I);
        let s = f.splitting().unwrap();
        assert_eq!(s.g.as_const(), Some(Complex64::new(2.0, 0.0)));
        assert!(s.ghat.is_zero() && s.h.is_zero() && s.hhat.is_zero());
    }

    #[test]
    fn json_round_trip() {
        let f = SliceFunction::parse("v", "0", "2i + v/2", "-1/v").unwrap();
        let j = f.to_json().unwrap();
        let back = SliceFunction::from_json(&j).unwrap();
        assert_eq!(back.splitting().unwrap(), f.splitting().unwrap());
        let g = SliceFunction::from_json(&json!({"g": "v", "domain": {"box": [0, 1, 0, 1]}})).unwrap();
        assert!(g.splitting().unwrap().h.is_zero());
        assert_eq!(g.domain(), &Domain::Box { x0: 0.0, x1: 1.0, y0: 0.0, y1: 1.0 });
    }
}
