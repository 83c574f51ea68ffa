//! Right-hand-side functionals: the sphere map T_β, the chordal pairing H_λ,
//! the bilinear functional I_β, and L^p sphere norms. The weighted space-time
//! norms of the left-hand side live in the [`lhs`] submodule.

pub mod lhs;

use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::model::{FourierData, Setting};
use crate::numerics::{
    gauss_jacobi, gauss_jacobi_01, integrate_semiline, log_gamma, mc_sphere, sphere_area,
    sphere_integrate_zonal, tanh_sinh, KahanSum,
};
use crate::util::{dot, norm};

/// Distinguishes the bilinear product u v̄ (PlusMinus, supported outside the
/// light cone) from u v (PlusPlus, supported inside).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignMode {
    PlusMinus,
    PlusPlus,
}

impl SignMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            SignMode::PlusMinus => "pm",
            SignMode::PlusPlus => "pp",
        }
    }
}

/// A nonnegative function on S^{d−1}, evaluable at quadrature nodes.
#[derive(Clone)]
pub enum SphKind {
    /// Depends only on ω·axis.
    Zonal {
        axis: Vec<f64>,
        profile: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    },
    General {
        eval: Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>,
    },
}

#[derive(Clone)]
pub struct SphericalFunction {
    pub d: usize,
    pub kind: SphKind,
    /// True when the function is known to be constant (axis irrelevant).
    pub is_constant: bool,
}

impl SphericalFunction {
    pub fn constant(d: usize, v: f64) -> Self {
        let mut axis = vec![0.0; d];
        axis[0] = 1.0;
        SphericalFunction {
            d,
            kind: SphKind::Zonal {
                axis,
                profile: Arc::new(move |_| v),
            },
            is_constant: true,
        }
    }

    pub fn zonal(d: usize, axis: Vec<f64>, profile: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        let n = norm(&axis);
        SphericalFunction {
            d,
            kind: SphKind::Zonal {
                axis: axis.iter().map(|x| x / n).collect(),
                profile: Arc::new(profile),
            },
            is_constant: false,
        }
    }

    pub fn general(d: usize, eval: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        SphericalFunction {
            d,
            kind: SphKind::General { eval: Arc::new(eval) },
            is_constant: false,
        }
    }

    pub fn eval(&self, omega: &[f64]) -> f64 {
        match &self.kind {
            SphKind::Zonal { axis, profile } => profile(dot(omega, axis)),
            SphKind::General { eval } => eval(omega),
        }
    }

    pub fn zonal_parts(&self) -> Option<(&[f64], &Arc<dyn Fn(f64) -> f64 + Send + Sync>)> {
        match &self.kind {
            SphKind::Zonal { axis, profile } => Some((axis, profile)),
            SphKind::General { .. } => None,
        }
    }

    /// ∫_{S^{d−1}} g dω.
    pub fn integral(&self, n: usize) -> Result<f64> {
        match &self.kind {
            SphKind::Zonal { profile, .. } => {
                let p = profile.clone();
                sphere_integrate_zonal(self.d, move |t| p(t), n)
            }
            SphKind::General { eval } => {
                let samples = mc_sphere(self.d, n.max(10_000), 424_242);
                let area = sphere_area(self.d - 1);
                let mut acc = KahanSum::new();
                for s in &samples {
                    acc.add(eval(s));
                }
                Ok(area * acc.value() / samples.len() as f64)
            }
        }
    }
}

/// T_β f(ω) = (2π)^{−d} ∫_0^∞ |f̂(rω)|² r^{(3d−3)/2+2β} dr as a spherical
/// function: a constant for radially-symmetric-modulus data, the closed-form
/// zonal profile C (1 − κ ω·u)^{−m} for family data with Re b ≠ 0.
pub fn t_beta(data: &FourierData, setting: &Setting) -> Result<SphericalFunction> {
    let d = setting.d;
    let df = setting.df();
    let two_pi_pow = (2.0 * PI).powf(-df);
    let exponent = (3.0 * df - 3.0) / 2.0 + 2.0 * setting.beta;
    if let Some(prof) = data.radial_closure() {
        let origin_order = 2.0 * prof.sing_order - exponent;
        if !(origin_order < 1.0) {
            return Err(Error::Domain(format!(
                "T_beta integral diverges at r = 0 (integrand ~ r^{:.3})",
                -origin_order
            )));
        }
        let ev = prof.eval.clone();
        let integral = integrate_semiline(
            move |r| ev(r).norm_sqr() * r.powf(exponent),
            origin_order.max(0.0),
            2.0 * prof.decay_rate,
        )?;
        return Ok(SphericalFunction::constant(d, two_pi_pow * integral));
    }
    let p = data
        .as_extremiser()
        .ok_or_else(|| Error::UnsupportedData("T_beta needs radial or family data".into()))?;
    let m = (3.0 * df - 5.0) / 2.0 + 2.0 * setting.beta;
    if !(m > 0.0) {
        return Err(Error::Domain(format!(
            "T_beta diverges for family data unless (3d−5)/2+2β > 0, got {m}"
        )));
    }
    let ra = -p.a.re;
    let rb = p.re_b();
    let rb_norm = norm(&rb);
    let kappa = rb_norm / ra;
    let c0 = two_pi_pow * (2.0 * p.c.re).exp() * log_gamma(m)?.exp() / (2.0 * ra).powf(m);
    let axis: Vec<f64> = rb.iter().map(|x| x / rb_norm).collect();
    Ok(SphericalFunction::zonal(d, axis, move |t| {
        c0 * (1.0 - kappa * t).powf(-m)
    }))
}

/// (∫ |g|^p dω)^{1/p}; p < 1 is allowed (used by the reverse-type checks).
pub fn lp_sphere_norm(g: &SphericalFunction, p: f64) -> Result<f64> {
    if !(p > 0.0) {
        return Err(Error::Domain(format!("lp_sphere_norm requires p > 0, got {p}")));
    }
    match &g.kind {
        SphKind::Zonal { profile, .. } => {
            let pr = profile.clone();
            let v = sphere_integrate_zonal(g.d, move |t| pr(t).abs().powf(p), 200)?;
            Ok(v.powf(1.0 / p))
        }
        SphKind::General { eval } => {
            let samples = mc_sphere(g.d, 200_000, 31_337);
            let mut acc = KahanSum::new();
            for s in &samples {
                acc.add(eval(s).abs().powf(p));
            }
            Ok((sphere_area(g.d - 1) * acc.value() / samples.len() as f64).powf(1.0 / p))
        }
    }
}

/// Value of the sphere pairing together with a statistical error when the
/// Monte-Carlo path was used (None for the quadrature paths).
#[derive(Debug, Clone, Copy)]
pub struct PairingValue {
    pub value: f64,
    pub stderr: Option<f64>,
}

/// Node counts of the nested zonal quadrature for H_λ.
#[derive(Debug, Clone, Copy)]
pub struct HLambdaOpts {
    pub n_outer: usize,
    pub n_chord: usize,
    pub n_split: usize,
    pub mc_samples: usize,
    pub mc_seed: u64,
}

impl Default for HLambdaOpts {
    fn default() -> Self {
        HLambdaOpts {
            n_outer: 60,
            n_chord: 40,
            n_split: 50,
            mc_samples: 200_000,
            mc_seed: 2024,
        }
    }
}

/// ∫_{−1}^{1} (1−c²)^{(d−4)/2} (D − E c)^{−λ/2} dc with the c → 1 region
/// resolved by the exact substitution 1 − c = ε(e^s − 1), ε = (D−E)/E, under
/// which D − Ec = (D−E) e^s. Requires λ < d − 2 (for the exactly-singular
/// branch) and D ≥ E ≥ 0.
fn inner_chord_integral(d: usize, lam: f64, dd: f64, ee: f64, n: usize) -> Result<f64> {
    let al = (d as f64 - 4.0) / 2.0;
    let q = gauss_jacobi_01(n, al)?;
    // c ∈ [−1, 0]: substitute c = −1 + x.
    let p1 = q.integrate(|x| (2.0 - x).powf(al) * (dd - ee * (x - 1.0)).powf(-lam / 2.0));
    if ee <= 1e-300 {
        // Kernel is constant in c: mirror the first half.
        let p2 = q.integrate(|x| (2.0 - x).powf(al) * (dd - ee * (1.0 - x)).powf(-lam / 2.0));
        return Ok(p1 + p2);
    }
    if dd - ee <= 1e-15 * dd {
        // Exactly on the diagonal: (D − Ec) ≈ E(1 − c); fold the kernel power
        // into the Jacobi weight.
        let q2 = gauss_jacobi_01(n, al - lam / 2.0)?;
        let p2 = q2.integrate(|x| (2.0 - x).powf(al)) * ee.powf(-lam / 2.0);
        return Ok(p1 + p2);
    }
    let eps = (dd - ee) / ee;
    let big_l = (1.0 + 1.0 / eps).ln();
    let p2 = q.integrate(|x| {
        let s = big_l * x;
        let em = s.exp_m1();
        eps * s.exp()
            * (eps * em / s).powf(al)
            * (2.0 - eps * em).powf(al)
            * ((dd - ee) * s.exp()).powf(-lam / 2.0)
    });
    Ok(p1 + p2 * big_l.powf(al + 1.0))
}

/// Zonal-quadrature evaluation of H_λ for d ≥ 3 and λ < d − 2, both factors
/// zonal about the pole axis with profiles F1, F2 in t = ω·axis.
fn h_lambda_zonal(
    d: usize,
    lam: f64,
    f1: &dyn Fn(f64) -> f64,
    f2: &dyn Fn(f64) -> f64,
    opts: &HLambdaOpts,
) -> Result<f64> {
    let al = (d as f64 - 3.0) / 2.0;
    let tq = gauss_jacobi(opts.n_outer, al, al)?;
    let sdm2 = sphere_area(d - 2);
    let sdm3 = if d >= 4 { sphere_area(d - 3) } else { 2.0 };
    let mut acc = KahanSum::new();
    for (&t1, &w1) in tq.nodes.iter().zip(&tq.weights) {
        let s1sq = 1.0 - t1 * t1;
        let g = |t2: f64| {
            let dd = 2.0 - 2.0 * t1 * t2;
            let ee = 2.0 * (s1sq * (1.0 - t2 * t2)).max(0.0).sqrt();
            (1.0 - t2 * t2).powf(al)
                * f2(t2)
                * inner_chord_integral(d, lam, dd, ee, opts.n_chord).unwrap_or(f64::NAN)
        };
        // Split the t2 integration at the diagonal kink t2 = t1.
        let r = sdm3
            * (tanh_sinh(&g, -1.0, t1, opts.n_split) + tanh_sinh(&g, t1, 1.0, opts.n_split));
        acc.add(w1 * f1(t1) * r);
    }
    let v = sdm2 * acc.value();
    if !v.is_finite() {
        return Err(Error::Accuracy("zonal pairing quadrature produced a non-finite value".into()));
    }
    Ok(v)
}

/// d = 2 evaluation: reduce to the angle difference ψ with weight ψ^{−λ}
/// resolved by Jacobi quadrature and a periodic-trapezoid correlation in the
/// base angle.
fn h_lambda_d2(
    lam: f64,
    f1: &dyn Fn(f64) -> f64,
    f2: &dyn Fn(f64) -> f64,
    n_psi: usize,
    n_theta: usize,
) -> Result<f64> {
    let q = gauss_jacobi_01(n_psi, -lam)?;
    let thetas: Vec<f64> = (0..n_theta)
        .map(|k| 2.0 * PI * k as f64 / n_theta as f64)
        .collect();
    let f2v: Vec<f64> = thetas.iter().map(|&t| f2(t.cos())).collect();
    let mut acc = KahanSum::new();
    for (&x, &w) in q.nodes.iter().zip(&q.weights) {
        let psi = PI * x;
        let mut corr = KahanSum::new();
        for (&th, &v2) in thetas.iter().zip(&f2v) {
            corr.add(0.5 * (f1((th + psi).cos()) + f1((th - psi).cos())) * v2);
        }
        let c = corr.value() * (2.0 * PI / n_theta as f64);
        acc.add(w * (2.0 * (psi / 2.0).sin() / psi).powf(-lam) * c);
    }
    Ok(2.0 * acc.value() * PI.powf(1.0 - lam))
}

/// H_λ(g₁, g₂) = ∬ g₁(ω₁) g₂(ω₂) |ω₁ − ω₂|^{−λ} dω₁ dω₂.
/// Zonal inputs about a common axis are evaluated by nested quadrature;
/// everything else falls back to Monte-Carlo with a reported standard error.
pub fn h_lambda(g1: &SphericalFunction, g2: &SphericalFunction, lambda: f64) -> Result<PairingValue> {
    h_lambda_opts(g1, g2, lambda, &HLambdaOpts::default())
}

pub fn h_lambda_opts(
    g1: &SphericalFunction,
    g2: &SphericalFunction,
    lambda: f64,
    opts: &HLambdaOpts,
) -> Result<PairingValue> {
    if g1.d != g2.d {
        return Err(Error::Domain("pairing requires equal dimensions".into()));
    }
    let d = g1.d;
    let df = d as f64;
    if !(lambda < df - 1.0) {
        return Err(Error::Domain(format!(
            "pairing requires lambda < d-1 = {}, got {lambda}",
            df - 1.0
        )));
    }
    // Try a common-axis zonal path first.
    if let (Some((ax1, p1)), Some((ax2, p2))) = (g1.zonal_parts(), g2.zonal_parts()) {
        let align = dot(ax1, ax2);
        let axis_ok = g1.is_constant || g2.is_constant || align.abs() >= 1.0 - 1e-12;
        if axis_ok {
            // Flip the second profile if the axes are anti-aligned.
            let flip = !g1.is_constant && !g2.is_constant && align < 0.0;
            let p1 = p1.clone();
            let p2 = p2.clone();
            let f2 = move |t: f64| if flip { p2(-t) } else { p2(t) };
            if d == 2 {
                let v = h_lambda_d2(lambda, &*p1, &f2, 80, 256)?;
                return Ok(PairingValue { value: v, stderr: None });
            }
            if lambda < df - 2.0 {
                let v = h_lambda_zonal(d, lambda, &*p1, &f2, opts)?;
                return Ok(PairingValue { value: v, stderr: None });
            }
        }
    }
    // Monte-Carlo fallback.
    let n = opts.mc_samples;
    let w1 = mc_sphere(d, n, opts.mc_seed);
    let w2 = mc_sphere(d, n, opts.mc_seed.wrapping_add(1));
    let area2 = sphere_area(d - 1).powi(2);
    let mut sum = KahanSum::new();
    let mut sumsq = KahanSum::new();
    for (a, b) in w1.iter().zip(&w2) {
        let dist2: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
        let v = g1.eval(a) * g2.eval(b) * dist2.sqrt().powf(-lambda);
        sum.add(v);
        sumsq.add(v * v);
    }
    let mean = sum.value() / n as f64;
    let var = (sumsq.value() / n as f64 - mean * mean).max(0.0);
    Ok(PairingValue {
        value: area2 * mean,
        stderr: Some(area2 * (var / n as f64).sqrt()),
    })
}

/// Direct product-quadrature route for I_β with data of radially symmetric
/// modulus: two radial integrals times one Jacobi-weighted angular integral.
fn i_beta_radial(f: &FourierData, g: &FourierData, setting: &Setting) -> Result<f64> {
    let d = setting.d;
    let df = setting.df();
    let tf = t_beta(f, setting)?;
    let tg = t_beta(g, setting)?;
    // The constants carry (2π)^{−d} each; undo them.
    let rf = (2.0 * PI).powf(df) * tf.eval(&unit_e1(d));
    let rg = (2.0 * PI).powf(df) * tg.eval(&unit_e1(d));
    let a_ang = df - 3.0 + 2.0 * setting.beta;
    if !(a_ang > -1.0) {
        return Err(Error::Domain(format!(
            "angular factor of the bilinear functional diverges: (1−t) exponent {a_ang} <= -1"
        )));
    }
    let j_ang = gauss_jacobi(80, a_ang, (df - 3.0) / 2.0)?.total_mass();
    Ok(sphere_area(d - 1) * sphere_area(d - 2) * j_ang * rf * rg)
}

fn unit_e1(d: usize) -> Vec<f64> {
    let mut e = vec![0.0; d];
    e[0] = 1.0;
    e
}

/// Route through the sphere pairing:
/// I_β(f,g) = (2π)^{2d} 2^{−((d−3)/2+2β)} H_λ(T_β f, T_β g), λ = 3−d−4β.
pub fn i_beta_via_hls(f: &FourierData, g: &FourierData, setting: &Setting) -> Result<f64> {
    let df = setting.df();
    let lambda = 3.0 - df - 4.0 * setting.beta;
    let tf = t_beta(f, setting)?;
    let tg = t_beta(g, setting)?;
    let h = h_lambda(&tf, &tg, lambda)?;
    Ok((2.0 * PI).powf(2.0 * df) * 2f64.powf(-((df - 3.0) / 2.0 + 2.0 * setting.beta)) * h.value)
}

/// The bilinear functional
/// I_β(f,g) = ∬ |f̂(y₁)|²|ĝ(y₂)|² (|y₁||y₂|)^{(d−1)/2+2β} (1−ŷ₁·ŷ₂)^{(d−3)/2+2β} dy₁ dy₂.
pub fn i_beta(f: &FourierData, g: &FourierData, setting: &Setting) -> Result<f64> {
    if !(setting.beta > (1.0 - setting.df()) / 4.0) {
        return Err(Error::Domain(format!(
            "angular exponent requires beta > (1-d)/4 = {}",
            (1.0 - setting.df()) / 4.0
        )));
    }
    let both_radial = f.radial_closure().is_some() && g.radial_closure().is_some();
    if both_radial {
        i_beta_radial(f, g, setting)
    } else {
        i_beta_via_hls(f, g, setting)
    }
}
