//! Stem functions `F = F1 + √-1 F2` and the conversions to and from slice
//! functions.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::{SliceFunction, StemFn};
use crate::error::{Error, Result};
use crate::holo::Domain;
use crate::qcore::{CQuaternion, Quaternion};
use crate::sampling::{self, SampleRng};

/// A stem given by a closure on `C \ R` returning `(F1(z), F2(z))`.
#[derive(Clone)]
pub struct StemPair {
    f: StemFn,
}

impl fmt::Debug for StemPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("StemPair(<closure>)")
    }
}

impl StemPair {
    pub fn new<F>(f: F) -> Self
    where
        F: Fn(Complex64) -> Result<(Quaternion, Quaternion)> + Send + Sync + 'static,
    {
        StemPair { f: Arc::new(f) }
    }

    /// `F1 = a`, `F2 = 0`.
    pub fn constant(a: Quaternion) -> Self {
        StemPair::new(move |_| Ok((a, Quaternion::ZERO)))
    }

    /// `F1(z) = Re z`, `F2(z) = Im z`: the stem of the identity.
    pub fn identity() -> Self {
        StemPair::new(|z| Ok((Quaternion::real(z.re), Quaternion::real(z.im))))
    }

    /// `F1 = a` and `F2 = ±b` on the upper/lower half-plane.
    pub fn locally_constant(a: Quaternion, b: Quaternion) -> Self {
        StemPair::new(move |z| Ok((a, if z.im > 0.0 { b } else { -b })))
    }

    pub fn eval(&self, z: Complex64) -> Result<(Quaternion, Quaternion)> {
        (self.f)(z)
    }

    pub fn eval_cq(&self, z: Complex64) -> Result<CQuaternion> {
        let (a, b) = self.eval(z)?;
        Ok(CQuaternion::new(a, b))
    }

    /// Largest violation of `F1(z̄) = F1(z)`, `F2(z̄) = -F2(z)` over `samples`
    /// random points of the upper half-plane.
    pub fn parity_residual(&self, rng: &mut SampleRng, samples: usize) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for _ in 0..samples {
            let z = sampling::upper(rng);
            let (a1, a2) = self.eval(z)?;
            let (b1, b2) = self.eval(z.conj())?;
            worst = worst.max(a1.dist(b1)).max((a2 + b2).norm());
        }
        Ok(worst)
    }
}

/// Builds the slice function induced by `stem` after a parity check.
pub fn from_stem(
    stem: &StemPair,
    rng: &mut SampleRng,
    samples: usize,
    tol: f64,
) -> Result<SliceFunction> {
    let residual = stem.parity_residual(rng, samples)?;
    if residual > tol {
        return Err(Error::NotAStem { residual });
    }
    Ok(SliceFunction::from_stem_fn(stem.f.clone(), Domain::UpperHalfPlane))
}

/// `F1(v) = (f_i(v) + f_i(v̄))/2`, `F2(v) = -i (f_i(v) - f_i(v̄))/2`.
pub fn to_stem(f: &SliceFunction) -> StemPair {
    let f = f.clone();
    StemPair::new(move |z| {
        let a = f.eval_ci(z)?;
        let b = f.eval_ci(z.conj())?;
        Ok(((a + b) * 0.5, -Quaternion::I * (a - b) * 0.5))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slice::catalog;

    #[test]
    fn constant_and_identity_stems() {
        let mut rng = sampling::rng(4);
        let a = Quaternion::new(1.0, -2.0, 0.5, 3.0);
        let f = from_stem(&StemPair::constant(a), &mut rng, 50, 1e-12).unwrap();
        assert_eq!(f.eval(Quaternion::new(0.3, 0.0, 0.0, 2.0)).unwrap(), a);

        let id = from_stem(&StemPair::identity(), &mut rng, 50, 1e-12).unwrap();
        let x = Quaternion::new(0.3, 0.4, -1.0, 2.0);
        assert!(id.eval(x).unwrap().dist(x) < 1e-15);
    }

    #[test]
    fn one_minus_ii_stem() {
        let mut rng = sampling::rng(5);
        let stem = StemPair::locally_constant(Quaternion::ONE, -Quaternion::I);
        let f = from_stem(&stem, &mut rng, 50, 1e-12).unwrap();
        let g = SliceFunction::from_constant_stem(Quaternion::ONE, -Quaternion::I);
        let want = catalog::one_minus_ii();
        for _ in 0..100 {
            let x = sampling::non_real(&mut rng);
            let w = want.eval(x).unwrap();
            assert!(f.eval(x).unwrap().dist(w) < 1e-14);
            assert!(g.eval(x).unwrap().dist(w) < 1e-14);
        }
    }

    #[test]
    fn non_stems_rejected() {
        let mut rng = sampling::rng(6);
        // F2 constant on both half-planes is even, not odd
        let bad = StemPair::new(|_| Ok((Quaternion::ZERO, Quaternion::ONE)));
        assert!(matches!(from_stem(&bad, &mut rng, 20, 1e-10), Err(Error::NotAStem { .. })));
    }

    #[test]
    fn stem_round_trip() {
        let mut rng = sampling::rng(8);
        for (_, f) in catalog::all() {
            let stem = to_stem(&f);
            let back = from_stem(&stem, &mut rng, 100, 1e-10).unwrap();
            for _ in 0..200 {
                let x = sampling::non_real(&mut rng);
                let (a, b) = (f.eval(x), back.eval(x));
                if let (Ok(a), Ok(b)) = (a, b) {
                    assert!(a.dist(b) <= 1e-10 * (1.0 + a.norm()));
                }
            }
        }
    }
}
