//! Seeded random sampling of test points.
//!
//! Every routine takes the generator explicitly; nothing reads ambient
//! randomness, so a seed pins down every sample set.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::qcore::{ImaginaryUnit, Quaternion};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform in the box `[-r, r]^4`.
pub fn quaternion(rng: &mut SampleRng, r: f64) -> Quaternion {
    Quaternion::new(
        rng.gen_range(-r..r),
        rng.gen_range(-r..r),
        rng.gen_range(-r..r),
        rng.gen_range(-r..r),
    )
}

/// Uniform on the sphere of imaginary units.
pub fn unit(rng: &mut SampleRng) -> ImaginaryUnit {
    loop {
        let (a, b, c): (f64, f64, f64) =
            (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let n = a * a + b * b + c * c;
        if n > 1e-4 && n <= 1.0 {
            return ImaginaryUnit::new(a, b, c).expect("nonzero");
        }
    }
}

/// A unit kept at least `gap` away from `-i`, so its chart coordinate is tame.
pub fn unit_off_south(rng: &mut SampleRng, gap: f64) -> ImaginaryUnit {
    loop {
        let u = unit(rng);
        if u.dist(ImaginaryUnit::MINUS_I) > gap {
            return u;
        }
    }
}

pub fn complex(rng: &mut SampleRng, r: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-r..r), rng.gen_range(-r..r))
}

/// A point of the upper half-plane with `re ∈ [-2, 2]`, `im ∈ [0.1, 2]`.
pub fn upper(rng: &mut SampleRng) -> Complex64 {
    Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(0.1..2.0))
}

/// `alpha + I beta` with `v = alpha + i beta` drawn by [`upper`].
pub fn non_real(rng: &mut SampleRng) -> Quaternion {
    let v = upper(rng);
    Quaternion::real(v.re) + unit(rng).to_quaternion() * v.im
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_streams_repeat() {
        let a: Vec<_> = (0..5).map({
            let mut r = rng(7);
            move |_| quaternion(&mut r, 1.0)
        }).collect();
        let b: Vec<_> = (0..5).map({
            let mut r = rng(7);
            move |_| quaternion(&mut r, 1.0)
        }).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn ranges() {
        let mut r = rng(1);
        for _ in 0..1000 {
            let u = unit(&mut r);
            assert!((u.to_quaternion().norm() - 1.0).abs() < 1e-14);
            let v = upper(&mut r);
            assert!(v.im >= 0.1);
            assert!(non_real(&mut r).im_norm() >= 0.1 - 1e-12);
        }
    }
}
