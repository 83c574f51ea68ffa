//! Tanh-sinh quadrature on a finite interval.
//!
//! Used where an integrand has (possibly unknown) integrable endpoint
//! singularities, e.g. the diagonal kink of the chordal-distance kernel in
//! the sphere pairing. Non-finite endpoint evaluations are discarded, as is
//! standard for this rule.

use crate::numerics::quadrature::KahanSum;

/// ∫_a^b f(x, x−a, b−x) dx with the endpoint offsets supplied at full
/// precision. Integrands singular at an endpoint should build the singular
/// factor from the offsets rather than from x itself, since near an endpoint
/// the offsets carry many more significant digits than recomputing them
/// from x would.
pub fn tanh_sinh_offsets(f: impl Fn(f64, f64, f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    // wide enough that truncation is below double precision even for
    // endpoint singularities up to order −1/2
    const T_MAX: f64 = 4.5;
    let h = 2.0 * T_MAX / (2 * n) as f64;
    let hl = 0.5 * (b - a);
    let len = b - a;
    let mut acc = KahanSum::new();
    for i in 0..=(2 * n) {
        let t = -T_MAX + h * i as f64;
        let u = std::f64::consts::FRAC_PI_2 * t.sinh();
        // Place nodes by their distance to the nearest endpoint:
        // min(1∓x) = 2e^{−2|u|}/(1+e^{−2|u|}) for x = tanh(u). Computing
        // the node as midpoint + hl·tanh(u) directly would lose all
        // precision exactly where endpoint singularities matter most.
        let em = (-2.0 * u.abs()).exp();
        let gap = hl * 2.0 * em / (1.0 + em);
        let (xx, da, db) = if u >= 0.0 {
            (b - gap, len - gap, gap)
        } else {
            (a + gap, gap, len - gap)
        };
        // Skip only when the offset truly underflows: xx itself may round to
        // an endpoint while the offsets still carry real weight.
        if gap <= 0.0 {
            continue;
        }
        // sech²(u) written overflow-free
        let w = std::f64::consts::FRAC_PI_2 * t.cosh() * 4.0 * em / ((1.0 + em) * (1.0 + em));
        let v = f(xx, da, db) * hl * w * h;
        if v.is_finite() {
            acc.add(v);
        }
    }
    acc.value()
}

/// ∫_a^b f(x) dx by tanh-sinh quadrature with 2n+1 nodes.
pub fn tanh_sinh(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    tanh_sinh_offsets(|x, _, _| f(x), a, b, n)
}
