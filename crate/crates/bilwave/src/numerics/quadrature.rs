//! Gauss–Jacobi quadrature via the Golub–Welsch eigenvalue method.
//!
//! A rule of `n` points for the weight (1−x)^α (1+x)^β on [−1, 1] is obtained
//! from the symmetric tridiagonal Jacobi matrix of the three-term recurrence;
//! nodes are its eigenvalues and weights are μ₀ times the squared first
//! components of the normalised eigenvectors.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::numerics::gamma::beta_fn;

/// A one-dimensional quadrature rule with its domain of validity.
#[derive(Debug, Clone)]
pub struct Quadrature1D {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub domain: (f64, f64),
}

/// Compensated (Kahan–Neumaier) accumulator used on all outer quadrature
/// loops so that results do not depend on the evaluation order.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl Quadrature1D {
    /// Apply the rule to an integrand (with respect to the built-in weight).
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        let mut acc = KahanSum::new();
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc.add(w * f(x));
        }
        acc.value()
    }

    /// Total mass of the weight function (the F ≡ 1 integral).
    pub fn total_mass(&self) -> f64 {
        let mut acc = KahanSum::new();
        for &w in &self.weights {
            acc.add(w);
        }
        acc.value()
    }
}

fn jacobi_rule_uncached(n: usize, alpha: f64, beta_w: f64) -> Result<Quadrature1D> {
    if n == 0 {
        return Err(Error::Domain("gauss_jacobi requires n >= 1".into()));
    }
    if !(alpha > -1.0) || !(beta_w > -1.0) {
        return Err(Error::Domain(format!(
            "gauss_jacobi exponents must exceed -1, got alpha={alpha}, beta={beta_w}"
        )));
    }
    let (a, b) = (alpha, beta_w);
    let apb = a + b;
    // Diagonal (a_k) and squared off-diagonal (b_k^2) recurrence coefficients
    // for the monic Jacobi polynomials; k = 0 and k = 1 are special-cased so
    // that the generic denominators (which contain a+b and a+b-1) are never
    // evaluated where they vanish.
    let diag = |k: usize| -> f64 {
        if k == 0 {
            (b - a) / (apb + 2.0)
        } else {
            let kk = 2.0 * k as f64 + apb;
            (b * b - a * a) / (kk * (kk + 2.0))
        }
    };
    let offdiag_sq = |k: usize| -> f64 {
        if k == 1 {
            4.0 * (a + 1.0) * (b + 1.0) / ((apb + 2.0) * (apb + 2.0) * (apb + 3.0))
        } else {
            let kf = k as f64;
            let kk = 2.0 * kf + apb;
            4.0 * kf * (kf + a) * (kf + b) * (kf + apb) / (kk * kk * (kk + 1.0) * (kk - 1.0))
        }
    };
    let mu0 = 2f64.powf(apb + 1.0) * beta_fn(a + 1.0, b + 1.0)?;
    if n == 1 {
        return Ok(Quadrature1D {
            nodes: vec![diag(0)],
            weights: vec![mu0],
            domain: (-1.0, 1.0),
        });
    }
    let mut m = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        m[(k, k)] = diag(k);
        if k + 1 < n {
            let o = offdiag_sq(k + 1).sqrt();
            m[(k, k + 1)] = o;
            m[(k + 1, k)] = o;
        }
    }
    let eig = SymmetricEigen::new(m);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|j| {
            let x = eig.eigenvalues[j];
            let q0 = eig.eigenvectors[(0, j)];
            (x, mu0 * q0 * q0)
        })
        .collect();
    pairs.sort_by(|p, q| p.0.partial_cmp(&q.0).unwrap());
    Ok(Quadrature1D {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
        domain: (-1.0, 1.0),
    })
}

type RuleKey = (usize, u64, u64);

fn rule_cache() -> &'static Mutex<HashMap<RuleKey, Arc<Quadrature1D>>> {
    static CACHE: OnceLock<Mutex<HashMap<RuleKey, Arc<Quadrature1D>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Gauss–Jacobi rule for ∫_{−1}^{1} (1−x)^α (1+x)^β F(x) dx, exact for
/// polynomials F of degree ≤ 2n−1. Rules are cached by (n, α, β).
pub fn gauss_jacobi(n: usize, alpha: f64, beta_w: f64) -> Result<Arc<Quadrature1D>> {
    let key = (n, alpha.to_bits(), beta_w.to_bits());
    if let Some(r) = rule_cache().lock().unwrap().get(&key) {
        return Ok(Arc::clone(r));
    }
    let rule = Arc::new(jacobi_rule_uncached(n, alpha, beta_w)?);
    rule_cache().lock().unwrap().insert(key, Arc::clone(&rule));
    Ok(rule)
}

/// Rule for ∫_0^1 x^α F(x) dx, derived from gauss_jacobi(n, 0, α) by the
/// affine map x = (1+u)/2.
pub fn gauss_jacobi_01(n: usize, alpha: f64) -> Result<Quadrature1D> {
    let base = gauss_jacobi(n, 0.0, alpha)?;
    let scale = 0.5f64.powf(alpha + 1.0);
    Ok(Quadrature1D {
        nodes: base.nodes.iter().map(|x| (x + 1.0) / 2.0).collect(),
        weights: base.weights.iter().map(|w| w * scale).collect(),
        domain: (0.0, 1.0),
    })
}
