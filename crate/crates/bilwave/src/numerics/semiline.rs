//! Double-exponential quadrature on the half line (0, ∞).
//!
//! The substitution r = c·exp(t − e^{−t}) sends t ∈ (−∞, ∞) to r ∈ (0, ∞)
//! with doubly-exponential clustering of nodes at the origin, which absorbs
//! algebraic endpoint singularities r^{−s}, s < 1 (the extremiser profiles
//! behave like r^{−1} e^{−cr}, giving integrands with s up to just below 1).
//! Evaluations that overflow in deep tail nodes (where r underflows to
//! ~1e−300 and 1/r² overflows before being damped) are treated as zero, the
//! standard truncation for double-exponential grids.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::quadrature::KahanSum;

const T_MIN: f64 = -6.2;
const T_MAX: f64 = 4.2;

/// Fixed-resolution double-exponential rule with `n` nodes; `scale` should be
/// roughly the decay length of the integrand (1/decay-rate).
pub fn de_semiline_n(f: impl Fn(f64) -> f64, scale: f64, n: usize) -> f64 {
    let h = (T_MAX - T_MIN) / (n as f64 - 1.0);
    let mut acc = KahanSum::new();
    for i in 0..n {
        let t = T_MIN + h * i as f64;
        let g = (t - (-t).exp()).exp();
        let r = scale * g;
        let w = scale * (1.0 + (-t).exp()) * g * h;
        let v = f(r);
        if v.is_finite() {
            let p = v * w;
            if p.is_finite() {
                acc.add(p);
            }
        }
    }
    acc.value()
}

/// Complex-valued variant of [`de_semiline_n`].
pub fn de_semiline_n_c(f: impl Fn(f64) -> Complex64, scale: f64, n: usize) -> Complex64 {
    let h = (T_MAX - T_MIN) / (n as f64 - 1.0);
    let mut re = KahanSum::new();
    let mut im = KahanSum::new();
    for i in 0..n {
        let t = T_MIN + h * i as f64;
        let g = (t - (-t).exp()).exp();
        let r = scale * g;
        let w = scale * (1.0 + (-t).exp()) * g * h;
        let v = f(r);
        if v.re.is_finite() && v.im.is_finite() {
            let p = v * w;
            if p.re.is_finite() && p.im.is_finite() {
                re.add(p.re);
                im.add(p.im);
            }
        }
    }
    Complex64::new(re.value(), im.value())
}

/// Adaptive integral ∫_0^∞ F(r) dr for F ~ r^{−sing_order} near 0 with
/// exponential decay at rate ≈ decay_hint. Node count is doubled until two
/// consecutive levels agree to 1e−11 relative; failure to converge to 1e−9
/// is reported as an accuracy error.
pub fn integrate_semiline(
    f: impl Fn(f64) -> f64,
    sing_order: f64,
    decay_hint: f64,
) -> Result<f64> {
    if !(sing_order < 1.0) {
        return Err(Error::Domain(format!(
            "integrate_semiline requires an integrable origin singularity (order < 1), got {sing_order}"
        )));
    }
    if !(decay_hint > 0.0) {
        return Err(Error::Domain(
            "integrate_semiline requires a positive decay hint".into(),
        ));
    }
    let scale = 1.0 / decay_hint;
    let mut prev = de_semiline_n(&f, scale, 51);
    let mut last_diff = f64::INFINITY;
    for n in [101usize, 201, 401, 801, 1601] {
        let cur = de_semiline_n(&f, scale, n);
        last_diff = (cur - prev).abs();
        if last_diff <= 1e-11 * cur.abs().max(1e-300) {
            return Ok(cur);
        }
        prev = cur;
    }
    if last_diff <= 1e-9 * prev.abs().max(1e-300) {
        Ok(prev)
    } else {
        Err(Error::Accuracy(format!(
            "semiline quadrature did not converge: last refinement changed the value by {last_diff:.3e} (value {prev:.6e})"
        )))
    }
}
