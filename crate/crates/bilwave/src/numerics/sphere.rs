//! Sphere integration: zonal reduction to a Jacobi-weighted line integral,
//! and seeded Monte-Carlo sampling of the uniform measure on S^{d−1}.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::numerics::gamma::sphere_area;
use crate::numerics::quadrature::{gauss_jacobi, KahanSum};

/// ∫_{S^{d−1}} F(ω·e₁) dω = |S^{d−2}| ∫_{−1}^1 (1−t²)^{(d−3)/2} F(t) dt,
/// by Gauss–Jacobi quadrature with n nodes (|S^0| = 2 convention for d = 2).
pub fn sphere_integrate_zonal(d: usize, f: impl Fn(f64) -> f64, n: usize) -> Result<f64> {
    if d < 2 {
        return Err(Error::Domain("sphere_integrate_zonal requires d >= 2".into()));
    }
    let al = (d as f64 - 3.0) / 2.0;
    let q = gauss_jacobi(n, al, al)?;
    Ok(sphere_area(d - 2) * q.integrate(f))
}

/// n i.i.d. uniform samples on S^{d−1}, deterministic in the seed.
pub fn mc_sphere(d: usize, n: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let v: Vec<f64> = (0..d).map(|_| StandardNormal.sample(&mut rng)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            out.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    out
}

/// An equal-weight Monte-Carlo "rule" on S^{d−1}: weights sum to |S^{d−1}|.
#[derive(Debug, Clone)]
pub struct SphereRule {
    pub dimension: usize,
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

impl SphereRule {
    pub fn monte_carlo(d: usize, n: usize, seed: u64) -> Self {
        let nodes = mc_sphere(d, n, seed);
        let w = sphere_area(d - 1) / n as f64;
        SphereRule {
            dimension: d,
            nodes,
            weights: vec![w; n],
        }
    }

    /// Mean and standard error of the weighted integral Σ w_i F(ω_i).
    pub fn integrate_with_stderr(&self, f: impl Fn(&[f64]) -> f64) -> (f64, f64) {
        let n = self.nodes.len() as f64;
        let area = sphere_area(self.dimension - 1);
        let mut sum = KahanSum::new();
        let mut sumsq = KahanSum::new();
        for node in &self.nodes {
            let v = f(node);
            sum.add(v);
            sumsq.add(v * v);
        }
        let mean = sum.value() / n;
        let var = (sumsq.value() / n - mean * mean).max(0.0);
        (area * mean, area * (var / n).sqrt())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn zonal_constant_recovers_sphere_area() {
        assert!(rel(sphere_integrate_zonal(3, |_| 1.0, 20).unwrap(), 4.0 * PI) <= 1e-12);
        assert!(rel(sphere_integrate_zonal(2, |_| 1.0, 20).unwrap(), 2.0 * PI) <= 1e-12);
        assert!(rel(sphere_integrate_zonal(5, |_| 1.0, 20).unwrap(), sphere_area(4)) <= 1e-12);
    }

    #[test]
    fn zonal_exponential_closed_form() {
        // ∫_{S^2} e^{c ω·e₁} dω = 4π sinh(c)/c
        let c = 1.7f64;
        let v = sphere_integrate_zonal(3, |t| (c * t).exp(), 40).unwrap();
        let truth = 4.0 * PI * c.sinh() / c;
        assert!(rel(v, truth) <= 1e-12, "{v} vs {truth}");
    }

    #[test]
    fn mc_samples_are_unit_and_reproducible() {
        let a = mc_sphere(4, 500, 99);
        let b = mc_sphere(4, 500, 99);
        assert_eq!(a, b);
        for v in &a {
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn mc_isotropy() {
        let d = 3usize;
        let samples = mc_sphere(d, 1_000_000, 7);
        let mut mean = vec![0.0; d];
        let mut m2 = 0.0;
        for v in &samples {
            for (m, x) in mean.iter_mut().zip(v) {
                *m += x;
            }
            m2 += v[0] * v[0];
        }
        let n = samples.len() as f64;
        for m in &mean {
            assert!((m / n).abs() <= 5e-3);
        }
        assert!((m2 / n - 1.0 / d as f64).abs() <= 5e-3);
    }

    #[test]
    fn sphere_rule_weight_sum() {
        let rule = SphereRule::monte_carlo(3, 1000, 1);
        let total: f64 = rule.weights.iter().sum();
        assert!(rel(total, 4.0 * PI) <= 1e-10);
        let (v, se) = rule.integrate_with_stderr(|w| w[2] * w[2]);
        // ∫ ω₃² dω = |S²|/3
        assert!((v - 4.0 * PI / 3.0).abs() <= 4.0 * se.max(1e-3));
    }
}
