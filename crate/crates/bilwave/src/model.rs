//! Problem setting, Fourier-side data, the analytic equality family, and the
//! half-wave decomposition.
//!
//! Fourier convention (fixed once, used everywhere): f̂(ξ) = ∫ e^{−ix·ξ} f(x) dx,
//! so ∫|f̂|² = (2π)^d ∫|f|². All norms and functionals are computed on the
//! Fourier side with the explicit (2π)^{−d} factor.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{integrate_semiline, sphere_area};
use crate::util::{dot, norm};

/// Dimension d ≥ 2 and weight exponent β, with the admissibility thresholds
/// of the estimate family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Setting {
    pub d: usize,
    pub beta: f64,
}

impl Setting {
    pub fn new(d: usize, beta: f64) -> Result<Self> {
        if d < 2 {
            return Err(Error::Domain(format!("dimension must be >= 2, got {d}")));
        }
        Ok(Setting { d, beta })
    }

    pub fn df(&self) -> f64 {
        self.d as f64
    }

    /// Sharpness threshold β_d = max{(1−d)/4, (2−d)/2}; equals 0 for d = 2.
    pub fn beta_d(&self) -> f64 {
        ((1.0 - self.df()) / 4.0).max((2.0 - self.df()) / 2.0)
    }

    /// The (+−) inequality holds for β > (1−d)/4.
    pub fn admissible_inequality(&self) -> bool {
        self.beta > (1.0 - self.df()) / 4.0
    }

    /// The (+−) constant is sharp for β > β_d.
    pub fn admissible_sharp(&self) -> bool {
        self.beta > self.beta_d()
    }

    /// The (++) constant is sharp for β > (2−d)/2.
    pub fn admissible_sharp_pp(&self) -> bool {
        self.beta > (2.0 - self.df()) / 2.0
    }
}

/// Parameters (a, b, c, λ) of the analytic equality family
/// f̂(ξ) = e^{a|ξ| + b·ξ + c}/|ξ| with Re a < 0 and |Re b| < −Re a.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremiserParams {
    pub a: Complex64,
    pub b: Vec<Complex64>,
    pub c: Complex64,
    pub lambda: Complex64,
}

impl ExtremiserParams {
    pub fn new(a: Complex64, b: Vec<Complex64>, c: Complex64, lambda: Complex64) -> Result<Self> {
        if !(a.re < 0.0) {
            return Err(Error::Domain(format!("Re a must be negative, got {}", a.re)));
        }
        let re_b: Vec<f64> = b.iter().map(|z| z.re).collect();
        if !(norm(&re_b) < -a.re) {
            return Err(Error::Domain(format!(
                "|Re b| = {} must be smaller than -Re a = {}",
                norm(&re_b),
                -a.re
            )));
        }
        Ok(ExtremiserParams { a, b, c, lambda })
    }

    /// Real (axially symmetric) family member with b = b1·e₁.
    pub fn real_axial(d: usize, a: f64, b1: f64, c: f64) -> Result<Self> {
        let mut b = vec![Complex64::new(0.0, 0.0); d];
        b[0] = Complex64::new(b1, 0.0);
        ExtremiserParams::new(
            Complex64::new(a, 0.0),
            b,
            Complex64::new(c, 0.0),
            Complex64::new(1.0, 0.0),
        )
    }

    pub fn re_b(&self) -> Vec<f64> {
        self.b.iter().map(|z| z.re).collect()
    }

    pub fn re_b_norm(&self) -> f64 {
        norm(&self.re_b())
    }

    pub fn is_radial_modulus(&self) -> bool {
        self.re_b_norm() <= 1e-14 * (-self.a.re)
    }
}

/// Evaluate e^{a|ξ| + b·ξ + c}/|ξ| (the family member itself).
pub fn extremiser_eval(p: &ExtremiserParams, xi: &[f64]) -> Result<Complex64> {
    let r = norm(xi);
    if !(r > 0.0) {
        return Err(Error::Domain(
            "the equality-family profile has a 1/|xi| singularity at xi = 0".into(),
        ));
    }
    let mut exponent = p.a * r + p.c;
    for (bj, xj) in p.b.iter().zip(xi) {
        exponent += bj * *xj;
    }
    Ok(exponent.exp() / r)
}

/// A radial Fourier-side profile given as an evaluable closure together with
/// the endpoint metadata quadrature needs.
#[derive(Clone)]
pub struct RadialProfile {
    pub eval: Arc<dyn Fn(f64) -> Complex64 + Send + Sync>,
    /// φ(r) ~ r^{−sing_order} as r → 0.
    pub sing_order: f64,
    /// |φ(r)| ≲ e^{−decay_rate·r} as r → ∞ (hint for quadrature scaling).
    pub decay_rate: f64,
    pub label: String,
}

impl fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialProfile")
            .field("sing_order", &self.sing_order)
            .field("decay_rate", &self.decay_rate)
            .field("label", &self.label)
            .finish()
    }
}

/// Initial datum represented on the Fourier side.
#[derive(Debug, Clone)]
pub enum FourierData {
    Radial(RadialProfile),
    Extremiser(ExtremiserParams),
}

impl FourierData {
    pub fn radial(
        eval: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
        sing_order: f64,
        decay_rate: f64,
        label: impl Into<String>,
    ) -> Self {
        FourierData::Radial(RadialProfile {
            eval: Arc::new(eval),
            sing_order,
            decay_rate,
            label: label.into(),
        })
    }

    /// Radial constructor that verifies by quadrature that the weighted norm
    /// ∫ |φ(r)|² r^{(3d−3)/2+2β} dr is finite for the given setting.
    pub fn radial_checked(
        eval: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
        sing_order: f64,
        decay_rate: f64,
        label: impl Into<String>,
        setting: &Setting,
    ) -> Result<Self> {
        let data = Self::radial(eval, sing_order, decay_rate, label);
        let prof = data.radial_closure().unwrap();
        let exponent = (3.0 * setting.df() - 3.0) / 2.0 + 2.0 * setting.beta;
        let origin_order = 2.0 * prof.sing_order - exponent;
        if !(origin_order < 1.0) {
            return Err(Error::Domain(format!(
                "radial profile norm diverges at r = 0 (integrand order r^{:.3})",
                -origin_order
            )));
        }
        let ev = prof.eval.clone();
        integrate_semiline(
            move |r| ev(r).norm_sqr() * r.powf(exponent),
            origin_order.max(0.0),
            2.0 * prof.decay_rate,
        )?;
        Ok(data)
    }

    pub fn gaussian() -> Self {
        Self::radial(
            |r| Complex64::new((-r * r).exp(), 0.0),
            0.0,
            2.0,
            "gaussian",
        )
    }

    pub fn extremiser(p: ExtremiserParams) -> Self {
        FourierData::Extremiser(p)
    }

    pub fn label(&self) -> String {
        match self {
            FourierData::Radial(p) => p.label.clone(),
            FourierData::Extremiser(p) => {
                if p.is_radial_modulus() && p.a == Complex64::new(-1.0, 0.0) && p.c.norm() == 0.0 {
                    "foschi".into()
                } else {
                    format!(
                        "extremiser(a={:.3}{:+.3}i, |Re b|={:.4}, c={:.3}{:+.3}i)",
                        p.a.re,
                        p.a.im,
                        p.re_b_norm(),
                        p.c.re,
                        p.c.im
                    )
                }
            }
        }
    }

    pub fn as_extremiser(&self) -> Option<&ExtremiserParams> {
        match self {
            FourierData::Extremiser(p) => Some(p),
            _ => None,
        }
    }

    /// A radial closure view, available for genuinely radial data and for
    /// family members with b = 0 (whose profile is e^{ar+c}/r).
    pub fn radial_closure(&self) -> Option<RadialProfile> {
        match self {
            FourierData::Radial(p) => Some(p.clone()),
            FourierData::Extremiser(p) => {
                let b_norm: f64 = p.b.iter().map(|z| z.norm()).sum();
                if b_norm <= 1e-14 * (-p.a.re) {
                    let (a, c) = (p.a, p.c);
                    Some(RadialProfile {
                        eval: Arc::new(move |r: f64| (a * r + c).exp() / r),
                        sing_order: 1.0,
                        decay_rate: -a.re,
                        label: self.label(),
                    })
                } else {
                    None
                }
            }
        }
    }

    /// Pointwise evaluation at a frequency vector.
    pub fn eval(&self, xi: &[f64]) -> Result<Complex64> {
        match self {
            FourierData::Radial(p) => {
                let r = norm(xi);
                if !(r > 0.0) {
                    return Err(Error::Domain("cannot evaluate radial profile at xi = 0".into()));
                }
                Ok((p.eval)(r))
            }
            FourierData::Extremiser(p) => extremiser_eval(p, xi),
        }
    }

    /// The datum multiplied by a real constant μ.
    pub fn scaled(&self, mu: f64) -> Self {
        match self {
            FourierData::Radial(p) => {
                let ev = p.eval.clone();
                FourierData::Radial(RadialProfile {
                    eval: Arc::new(move |r| mu * ev(r)),
                    sing_order: p.sing_order,
                    decay_rate: p.decay_rate,
                    label: format!("{}*{mu}", p.label),
                })
            }
            FourierData::Extremiser(p) => {
                let mut p = p.clone();
                p.c += Complex64::new(mu.abs().ln(), if mu < 0.0 { std::f64::consts::PI } else { 0.0 });
                FourierData::Extremiser(p)
            }
        }
    }

    /// The datum with dilated frequency variable: ξ ↦ f̂(ξ/μ), μ > 0.
    pub fn dilated(&self, mu: f64) -> Self {
        match self {
            FourierData::Radial(p) => {
                let ev = p.eval.clone();
                FourierData::Radial(RadialProfile {
                    eval: Arc::new(move |r| ev(r / mu)),
                    sing_order: p.sing_order,
                    decay_rate: p.decay_rate / mu,
                    label: format!("{}(r/{mu})", p.label),
                })
            }
            FourierData::Extremiser(p) => {
                // e^{a|ξ/μ| + b·ξ/μ + c} / |ξ/μ| = e^{(a/μ)|ξ| + (b/μ)·ξ + c + ln μ}/|ξ|
                let mut q = p.clone();
                q.a /= mu;
                for bj in &mut q.b {
                    *bj /= mu;
                }
                q.c += Complex64::new(mu.ln(), 0.0);
                FourierData::Extremiser(q)
            }
        }
    }
}

/// ‖f‖²_{Ḣ^s} = (2π)^{−d} ∫ |f̂(ξ)|² |ξ|^{2s} dξ under the fixed convention.
pub fn sobolev_norm_sq(data: &FourierData, s: f64, setting: &Setting) -> Result<f64> {
    let d = setting.df();
    let two_pi_pow = (2.0 * std::f64::consts::PI).powf(-d);
    if let Some(prof) = data.radial_closure() {
        let exponent = 2.0 * s + d - 1.0;
        let origin_order = 2.0 * prof.sing_order - exponent;
        if !(origin_order < 1.0) {
            return Err(Error::Accuracy(format!(
                "Sobolev norm diverges at the r = 0 endpoint (integrand ~ r^{:.3})",
                -origin_order
            )));
        }
        let ev = prof.eval.clone();
        let integral = integrate_semiline(
            move |r| ev(r).norm_sqr() * r.powf(exponent),
            origin_order.max(0.0),
            2.0 * prof.decay_rate,
        )?;
        return Ok(two_pi_pow * sphere_area(setting.d - 1) * integral);
    }
    // General family member with Re b ≠ 0: the radial integral is a gamma
    // function, the angular integral is Jacobi-weighted.
    let p = data
        .as_extremiser()
        .ok_or_else(|| Error::UnsupportedData("Sobolev norm needs radial or family data".into()))?;
    let m = 2.0 * s + d - 2.0;
    if !(m > 0.0) {
        return Err(Error::Accuracy(format!(
            "Sobolev norm diverges at the r = 0 endpoint (radial integrand ~ r^{:.3})",
            m - 1.0
        )));
    }
    let ra = -p.a.re;
    let rb = p.re_b_norm();
    let gamma_m = crate::numerics::log_gamma(m)?.exp();
    let pref = two_pi_pow * (2.0 * p.c.re).exp() * gamma_m;
    // ∫_{S^{d−1}} (2(|Re a| − |Re b| t))^{−m} dω, zonal about the Re b axis.
    let angular = crate::numerics::sphere_integrate_zonal(
        setting.d,
        |t| (2.0 * (ra - rb * t)).powf(-m),
        120,
    )?;
    Ok(pref * angular)
}

/// Space-time vector (t, x) ∈ R^{1+d}.
#[derive(Debug, Clone, PartialEq)]
pub struct MinkowskiVector {
    pub t: f64,
    pub x: Vec<f64>,
}

impl MinkowskiVector {
    pub fn new(t: f64, x: Vec<f64>) -> Self {
        MinkowskiVector { t, x }
    }

    /// The quadratic form Q(t, x) = t² − |x|².
    pub fn q_form(&self) -> f64 {
        self.t * self.t - dot(&self.x, &self.x)
    }
}

/// Half-wave decomposition of Cauchy data (û₀, û₁):
/// f̂_± = (û₀ ∓ i û₁/|ξ|)/2, so f̂_+ + f̂_− = û₀ and i|ξ|(f̂_+ − f̂_−) = û₁.
pub fn wave_split(u0_hat: &FourierData, u1_hat: &FourierData) -> Result<(FourierData, FourierData)> {
    let p0 = u0_hat.radial_closure().ok_or_else(|| {
        Error::UnsupportedData("wave_split is implemented for radially representable data".into())
    })?;
    let p1 = u1_hat.radial_closure().ok_or_else(|| {
        Error::UnsupportedData("wave_split is implemented for radially representable data".into())
    })?;
    let mk = |sign: f64, p0: RadialProfile, p1: RadialProfile, tag: &str| {
        let (e0, e1) = (p0.eval.clone(), p1.eval.clone());
        FourierData::Radial(RadialProfile {
            eval: Arc::new(move |r: f64| {
                (e0(r) + sign * Complex64::i() * e1(r) / r) * 0.5
            }),
            sing_order: p0.sing_order.max(p1.sing_order + 1.0),
            decay_rate: p0.decay_rate.min(p1.decay_rate),
            label: format!("split{tag}({}, {})", p0.label, p1.label),
        })
    };
    Ok((
        mk(-1.0, p0.clone(), p1.clone(), "+"),
        mk(1.0, p0, p1, "-"),
    ))
}

/// Parse a CLI data preset: "foschi", "gaussian", "extremiser(a,b1,c)",
/// "prop13(delta)".
pub fn parse_preset(spec: &str, d: usize) -> Result<FourierData> {
    let s = spec.trim();
    if s == "foschi" {
        return Ok(FourierData::Extremiser(ExtremiserParams::real_axial(
            d, -1.0, 0.0, 0.0,
        )?));
    }
    if s == "gaussian" {
        return Ok(FourierData::gaussian());
    }
    let parse_args = |inner: &str| -> Result<Vec<f64>> {
        inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Usage(format!("cannot parse number '{}' in preset '{s}'", p.trim())))
            })
            .collect()
    };
    if let Some(inner) = s.strip_prefix("extremiser(").and_then(|t| t.strip_suffix(')')) {
        let args = parse_args(inner)?;
        if args.len() != 3 {
            return Err(Error::Usage(
                "extremiser preset takes exactly three arguments: extremiser(a,b1,c)".into(),
            ));
        }
        return Ok(FourierData::Extremiser(ExtremiserParams::real_axial(
            d, args[0], args[1], args[2],
        )?));
    }
    if let Some(inner) = s.strip_prefix("prop13(").and_then(|t| t.strip_suffix(')')) {
        let args = parse_args(inner)?;
        if args.len() != 1 {
            return Err(Error::Usage("prop13 preset takes one argument: prop13(delta)".into()));
        }
        let delta = args[0];
        if !(delta > 0.0 && delta < 0.01) {
            return Err(Error::Usage(format!(
                "prop13 delta must lie in (0, 1/100), got {delta}"
            )));
        }
        return Ok(FourierData::Extremiser(ExtremiserParams::real_axial(
            d,
            -1.0,
            1.0 - delta,
            0.0,
        )?));
    }
    Err(Error::Usage(format!(
        "unknown data preset '{s}' (expected foschi, gaussian, extremiser(a,b1,c), prop13(delta))"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::rel_err;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    #[test]
    fn setting_thresholds() {
        for d in 2..=8usize {
            let s = Setting::new(d, 0.0).unwrap();
            let expect = if d == 2 { 0.0 } else { (1.0 - d as f64) / 4.0 };
            assert!((s.beta_d() - expect).abs() <= 1e-15, "d={d}");
            // sharp admissibility implies inequality admissibility
            let s2 = Setting::new(d, s.beta_d() + 0.01).unwrap();
            assert!(s2.admissible_sharp() && s2.admissible_inequality());
        }
        assert!(Setting::new(1, 0.0).is_err());
    }

    #[test]
    fn extremiser_param_constraints() {
        assert!(ExtremiserParams::real_axial(3, 0.5, 0.0, 0.0).is_err());
        assert!(ExtremiserParams::real_axial(3, -1.0, 1.0, 0.0).is_err());
        assert!(ExtremiserParams::real_axial(3, -1.0, 0.99, 0.0).is_ok());
    }

    #[test]
    fn extremiser_eval_values() {
        let p = ExtremiserParams::real_axial(3, -1.0, 0.0, 0.0).unwrap();
        let v = extremiser_eval(&p, &[1.0, 0.0, 0.0]).unwrap();
        assert!(rel_err(v.re, (-1.0f64).exp()) <= 1e-14 && v.im.abs() <= 1e-16);
        assert!(extremiser_eval(&p, &[0.0, 0.0, 0.0]).is_err());
        // prop13 family member
        let q = ExtremiserParams::real_axial(3, -1.0, 0.9, 0.0).unwrap();
        let xi = [0.3, -0.4, 1.2];
        let r = norm(&xi);
        let v = extremiser_eval(&q, &xi).unwrap();
        let truth = ((-r + 0.9 * xi[0]).exp()) / r;
        assert!(rel_err(v.re, truth) <= 1e-14);
    }

    #[test]
    fn radial_modulus_for_zero_re_b() {
        // With Re b = 0 the modulus is radial: check 100 random pairs of
        // equal-norm points (here with an imaginary b component).
        let mut b = vec![Complex64::new(0.0, 0.0); 3];
        b[1] = Complex64::new(0.0, 0.7);
        let p = ExtremiserParams::new(
            Complex64::new(-1.0, 0.3),
            b,
            Complex64::new(0.2, -0.1),
            Complex64::new(1.0, 0.0),
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let v1: Vec<f64> = (0..3).map(|_| rng.gen::<f64>() - 0.5).collect();
            let mut v2: Vec<f64> = (0..3).map(|_| rng.gen::<f64>() - 0.5).collect();
            let scale = norm(&v1) / norm(&v2);
            for x in &mut v2 {
                *x *= scale;
            }
            let m1 = extremiser_eval(&p, &v1).unwrap().norm();
            let m2 = extremiser_eval(&p, &v2).unwrap().norm();
            assert!(rel_err(m1, m2) <= 1e-12);
        }
    }

    #[test]
    fn sobolev_norm_radial_reference() {
        // d=3, s=1/2, f̂ = e^{−r}/r: norm² = (2π)^{−3}·4π·(1/4) = 1/(8π²)
        let setting = Setting::new(3, 0.0).unwrap();
        let f = FourierData::foschi_in_dim(3);
        let v = sobolev_norm_sq(&f, 0.5, &setting).unwrap();
        assert!(rel_err(v, 1.0 / (8.0 * PI * PI)) <= 1e-10, "{v}");
    }

    #[test]
    fn sobolev_norm_divergent_configuration() {
        // 2s+d−1 = 0 with a profile that is O(1) at the origin: log-divergent.
        let setting = Setting::new(3, 0.0).unwrap();
        let f = FourierData::radial(
            |r| Complex64::new((-r).exp(), 0.0),
            0.5,
            1.0,
            "half-singular",
        );
        // 2s + d - 1 - 2*0.5 = -1 exactly: divergent
        assert!(sobolev_norm_sq(&f, -1.0, &setting).is_err());
    }

    #[test]
    fn sobolev_norm_dilation_covariance() {
        // φ(r/μ) multiplies the norm² by μ^{2s+d}.
        let setting = Setting::new(3, 0.0).unwrap();
        let s = 0.5;
        let f = FourierData::foschi_in_dim(3);
        let base = sobolev_norm_sq(&f, s, &setting).unwrap();
        let mu = 2.0;
        let v = sobolev_norm_sq(&f.dilated(mu), s, &setting).unwrap();
        assert!(rel_err(v, base * mu.powf(2.0 * s + 3.0)) <= 1e-9);
    }

    #[test]
    fn sobolev_norm_nonradial_family_matches_radial_limit() {
        // The zonal closed-form path must agree with the radial path as the
        // b parameter goes to 0.
        let setting = Setting::new(4, 0.1).unwrap();
        let s = 0.8;
        let radial = sobolev_norm_sq(&FourierData::foschi_in_dim(4), s, &setting).unwrap();
        let tiny_b = FourierData::Extremiser(
            ExtremiserParams::real_axial(4, -1.0, 1e-9, 0.0).unwrap(),
        );
        let v = sobolev_norm_sq(&tiny_b, s, &setting).unwrap();
        assert!(rel_err(v, radial) <= 1e-7, "{v} vs {radial}");
    }

    #[test]
    fn wave_split_roundtrip() {
        let u0 = FourierData::radial(|r| Complex64::new((-r).exp(), 0.0), 0.0, 1.0, "u0");
        let u1 = FourierData::radial(
            |r| Complex64::new(r * (-r).exp(), 0.5 * (-r).exp()),
            0.0,
            1.0,
            "u1",
        );
        let (fp, fm) = wave_split(&u0, &u1).unwrap();
        for r in [0.2, 1.0, 3.7] {
            let xi = [r, 0.0, 0.0];
            let vp = fp.eval(&xi).unwrap();
            let vm = fm.eval(&xi).unwrap();
            let sum = vp + vm;
            let diff = Complex64::i() * r * (vp - vm);
            assert!((sum - u0.eval(&xi).unwrap()).norm() <= 1e-14);
            assert!((diff - u1.eval(&xi).unwrap()).norm() <= 1e-14);
        }
        // û₁ = 0 → both halves are û₀/2
        let zero = FourierData::radial(|_| Complex64::new(0.0, 0.0), 0.0, 1.0, "0");
        let (fp, fm) = wave_split(&u0, &zero).unwrap();
        let xi = [1.3, 0.0, 0.0];
        assert!((fp.eval(&xi).unwrap() - u0.eval(&xi).unwrap() / 2.0).norm() <= 1e-15);
        assert!((fm.eval(&xi).unwrap() - u0.eval(&xi).unwrap() / 2.0).norm() <= 1e-15);
    }

    #[test]
    fn preset_parsing() {
        assert!(parse_preset("foschi", 3).is_ok());
        assert!(parse_preset("gaussian", 2).is_ok());
        assert!(parse_preset("extremiser(-1,0.5,0)", 3).is_ok());
        assert!(parse_preset("prop13(0.005)", 4).is_ok());
        assert!(parse_preset("prop13(0.5)", 4).is_err());
        assert!(parse_preset("extremiser(1,0,0)", 3).is_err());
        assert!(parse_preset("bogus", 3).is_err());
    }

    #[test]
    fn radial_checked_rejects_divergent_profiles() {
        let setting = Setting::new(2, 0.0).unwrap();
        // φ = r^{-2} e^{-r}: |φ|² r^{(3d-3)/2} = r^{-4+3/2} diverges for d=2
        assert!(FourierData::radial_checked(
            |r| Complex64::new(r.powf(-2.0) * (-r).exp(), 0.0),
            2.0,
            1.0,
            "too singular",
            &setting
        )
        .is_err());
        assert!(FourierData::radial_checked(
            |r| Complex64::new((-r).exp(), 0.0),
            0.0,
            1.0,
            "fine",
            &setting
        )
        .is_ok());
    }
}

impl FourierData {
    /// Convenience used across tests: the b = 0 family member in dimension d.
    pub fn foschi_in_dim(d: usize) -> Self {
        FourierData::Extremiser(ExtremiserParams::real_axial(d, -1.0, 0.0, 0.0).unwrap())
    }
}
