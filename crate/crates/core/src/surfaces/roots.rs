//! Binary forms in `[s : t]` and their roots with multiplicity.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// A root of a binary form: `t/s`, or infinity for `s = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Root {
    Finite(Complex64),
    Infinity,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootCluster {
    pub root: Root,
    pub multiplicity: usize,
}

/// Roots of `Σ c_m t^m` by the eigenvalues of the companion matrix.
/// Leading coefficients at or below `zero_tol` are dropped.
pub fn poly_roots(coeffs: &[Complex64], zero_tol: f64) -> Vec<Complex64> {
    let mut deg = coeffs.len();
    while deg > 0 && coeffs[deg - 1].norm() <= zero_tol {
        deg -= 1;
    }
    if deg <= 1 {
        return Vec::new();
    }
    let n = deg - 1;
    let lead = coeffs[n];
    if n == 1 {
        return vec![-coeffs[0] / lead];
    }
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -coeffs[i] / lead;
    }
    let schur = nalgebra::Schur::new(m);
    let (_, t) = schur.unpack();
    let mut roots: Vec<Complex64> = (0..n).map(|i| t[(i, i)]).collect();
    for r in roots.iter_mut() {
        *r = newton_polish(coeffs, deg, *r);
    }
    roots
}

fn horner(coeffs: &[Complex64], deg: usize, z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs[..deg].iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn newton_polish(coeffs: &[Complex64], deg: usize, z: Complex64) -> Complex64 {
    // a couple of steps for simple roots; multiple roots are left alone
    let mut z = z;
    for _ in 0..3 {
        let (p, dp) = horner(coeffs, deg, z);
        if dp.norm() < 1e-8 * (1.0 + p.norm()) {
            break;
        }
        let step = p / dp;
        if !step.re.is_finite() || step.norm() > 1e-3 * (1.0 + z.norm()) {
            break;
        }
        z -= step;
    }
    z
}

/// Roots of the binary form `Σ_m c_m s^{d-m} t^m` of degree `d =
/// coeffs.len() - 1`, grouped into clusters of radius `radius`.
/// Vanishing top coefficients turn into roots at infinity.
pub fn binary_roots(coeffs: &[Complex64], zero_tol: f64, radius: f64) -> Vec<RootCluster> {
    let d = coeffs.len() - 1;
    let mut deg = coeffs.len();
    while deg > 0 && coeffs[deg - 1].norm() <= zero_tol {
        deg -= 1;
    }
    let finite = poly_roots(&coeffs[..deg], zero_tol);
    let at_inf = d + 1 - deg.max(1);
    let mut clusters: Vec<RootCluster> = Vec::new();
    let mut used = vec![false; finite.len()];
    for i in 0..finite.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let mut members = vec![finite[i]];
        // single-linkage so that a ring of perturbed multiple roots joins up
        let mut grew = true;
        while grew {
            grew = false;
            for j in 0..finite.len() {
                if !used[j] && members.iter().any(|m| (finite[j] - m).norm() <= radius * (1.0 + m.norm())) {
                    used[j] = true;
                    members.push(finite[j]);
                    grew = true;
                }
            }
        }
        let n = members.len() as f64;
        let centre = members.iter().sum::<Complex64>() / n;
        clusters.push(RootCluster { root: Root::Finite(centre), multiplicity: members.len() });
    }
    if at_inf > 0 {
        clusters.push(RootCluster { root: Root::Infinity, multiplicity: at_inf });
    }
    clusters
}
