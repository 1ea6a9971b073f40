//! Exact evaluation of rational expression trees over `Q(i)`.

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{HoloMap, Node};

pub type ExactComplex = Complex<BigRational>;

pub fn rational(r: f64) -> BigRational {
    BigRational::from_float(r).unwrap_or_else(BigRational::zero)
}

pub fn exact_from(z: Complex64) -> ExactComplex {
    Complex::new(rational(z.re), rational(z.im))
}

pub fn exact_int(re: i64, im: i64) -> ExactComplex {
    Complex::new(
        BigRational::from_integer(BigInt::from(re)),
        BigRational::from_integer(BigInt::from(im)),
    )
}

fn inv(z: &ExactComplex) -> Option<ExactComplex> {
    let n = &z.re * &z.re + &z.im * &z.im;
    if n.is_zero() {
        return None;
    }
    Some(Complex::new(&z.re / &n, -&z.im / &n))
}

fn powi(z: &ExactComplex, n: i32) -> Option<ExactComplex> {
    let base = if n < 0 { inv(z)? } else { z.clone() };
    let mut acc = Complex::new(BigRational::one(), BigRational::zero());
    for _ in 0..n.unsigned_abs() {
        acc = &acc * &base;
    }
    Some(acc)
}

/// Evaluates a tree without `sqrt`/`exp` exactly; `None` on a pole or when
/// the tree is not rational. Float constants are taken at their exact binary
/// value.
pub fn eval_exact(m: &HoloMap, v: &ExactComplex) -> Option<ExactComplex> {
    Some(match m.node() {
        Node::Const(c) => exact_from(*c),
        Node::Var => v.clone(),
        Node::Add(a, b) => eval_exact(a, v)? + eval_exact(b, v)?,
        Node::Sub(a, b) => eval_exact(a, v)? - eval_exact(b, v)?,
        Node::Mul(a, b) => eval_exact(a, v)? * eval_exact(b, v)?,
        Node::Div(a, b) => eval_exact(a, v)? * inv(&eval_exact(b, v)?)?,
        Node::Neg(a) => -eval_exact(a, v)?,
        Node::Pow(a, n) => powi(&eval_exact(a, v)?, *n)?,
        Node::Sqrt(_) | Node::Exp(_) => return None,
    })
}
