//! Closed-form sharp constants and gamma-ratio identities as pure functions
//! of (β, d). Every constant is computed in log space first; both the value
//! and the log-value are exposed.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::Setting;
use crate::numerics::log_gamma;
use crate::util::norm;

const LN_2: f64 = std::f64::consts::LN_2;

fn ln_pi() -> f64 {
    PI.ln()
}

/// ln of the sharp (+−) constant
/// W(β,d) = 2^{(1−5d+4β)/2} π^{(1−5d)/2} Γ((d−1)/2+2β)/Γ(d−1+2β).
pub fn w_log(beta: f64, d: usize) -> Result<f64> {
    let df = d as f64;
    if !(beta > (1.0 - df) / 4.0) {
        return Err(Error::Domain(format!(
            "W(beta,d) requires beta > (1-d)/4 = {}, got {beta}",
            (1.0 - df) / 4.0
        )));
    }
    Ok((1.0 - 5.0 * df + 4.0 * beta) / 2.0 * LN_2
        + (1.0 - 5.0 * df) / 2.0 * ln_pi()
        + log_gamma((df - 1.0) / 2.0 + 2.0 * beta)?
        - log_gamma(df - 1.0 + 2.0 * beta)?)
}

pub fn w(beta: f64, d: usize) -> Result<f64> {
    Ok(w_log(beta, d)?.exp())
}

/// ln of the sharp (++) constant W′(β,d) = 2^{(5−7d+4β)/2} π^{(2−5d)/2}/Γ(d/2).
pub fn w_pp_log(beta: f64, d: usize) -> Result<f64> {
    let df = d as f64;
    Ok((5.0 - 7.0 * df + 4.0 * beta) / 2.0 * LN_2 + (2.0 - 5.0 * df) / 2.0 * ln_pi()
        - log_gamma(df / 2.0)?)
}

pub fn w_pp(beta: f64, d: usize) -> Result<f64> {
    Ok(w_pp_log(beta, d)?.exp())
}

/// ln of the sharp radial (+−) constant
/// C(β,d) = 2^{d−3+4β} Γ(d/2) Γ((d−1)/2+2β) / (π^{d/2}(d−2+2β) Γ((3d−5)/2+2β)).
pub fn c_radial_log(beta: f64, d: usize) -> Result<f64> {
    let setting = Setting::new(d, beta)?;
    if !setting.admissible_sharp() {
        return Err(Error::Domain(format!(
            "C(beta,d) requires beta > beta_d = {}, got {beta}",
            setting.beta_d()
        )));
    }
    let df = d as f64;
    Ok((df - 3.0 + 4.0 * beta) * LN_2 + log_gamma(df / 2.0)?
        + log_gamma((df - 1.0) / 2.0 + 2.0 * beta)?
        - df / 2.0 * ln_pi()
        - (df - 2.0 + 2.0 * beta).ln()
        - log_gamma((3.0 * df - 5.0) / 2.0 + 2.0 * beta)?)
}

pub fn c_radial(beta: f64, d: usize) -> Result<f64> {
    Ok(c_radial_log(beta, d)?.exp())
}

/// ln of the sharp radial (++) constant
/// C′(β,d) = 2^{4β−1} π^{(1−d)/2} Γ(d−2+2β)/Γ((3d−5)/2+2β).
pub fn c_radial_pp_log(beta: f64, d: usize) -> Result<f64> {
    let df = d as f64;
    if !(beta > (2.0 - df) / 2.0) {
        return Err(Error::Domain(format!(
            "C'(beta,d) requires beta > (2-d)/2 = {}, got {beta}",
            (2.0 - df) / 2.0
        )));
    }
    Ok((4.0 * beta - 1.0) * LN_2 + (1.0 - df) / 2.0 * ln_pi()
        + log_gamma(df - 2.0 + 2.0 * beta)?
        - log_gamma((3.0 * df - 5.0) / 2.0 + 2.0 * beta)?)
}

pub fn c_radial_pp(beta: f64, d: usize) -> Result<f64> {
    Ok(c_radial_pp_log(beta, d)?.exp())
}

/// ln of the scalar factor relating the bilinear functional to the product
/// of homogeneous Sobolev norms for radial data:
/// radial_factor(β,d) = 2^{7(d−1)/2+2β} π^{(4d−1)/2} Γ(d/2)Γ(d−2+2β)/Γ((3d−5)/2+2β).
pub fn radial_factor_log(beta: f64, d: usize) -> Result<f64> {
    let df = d as f64;
    if !(beta > (2.0 - df) / 2.0) {
        return Err(Error::Domain(format!(
            "radial_factor requires beta > (2-d)/2 = {}, got {beta}",
            (2.0 - df) / 2.0
        )));
    }
    Ok((7.0 * (df - 1.0) / 2.0 + 2.0 * beta) * LN_2 + (4.0 * df - 1.0) / 2.0 * ln_pi()
        + log_gamma(df / 2.0)?
        + log_gamma(df - 2.0 + 2.0 * beta)?
        - log_gamma((3.0 * df - 5.0) / 2.0 + 2.0 * beta)?)
}

pub fn radial_factor(beta: f64, d: usize) -> Result<f64> {
    Ok(radial_factor_log(beta, d)?.exp())
}

/// Closed form of the delta-constrained double integral over the bilinear
/// constraint set:
/// (2π)^{(d−1)/2} Γ((d−1)/2+2β)/Γ(d−1+2β) · (|y₁||y₂|−y₁·y₂)^{(d−3)/2+2β}.
/// Returns 0 for parallel directions when the exponent is positive; parallel
/// directions with a non-positive exponent are a degenerate configuration.
pub fn lemma31_closed_form(y1: &[f64], y2: &[f64], beta: f64, d: usize) -> Result<f64> {
    if !(beta > (1.0 - d as f64) / 4.0) {
        return Err(Error::Domain(format!(
            "closed form requires beta > (1-d)/4, got {beta}"
        )));
    }
    let (n1, n2) = (norm(y1), norm(y2));
    if !(n1 > 0.0) || !(n2 > 0.0) {
        return Err(Error::Domain("direction vectors must be nonzero".into()));
    }
    let g = n1 * n2 - crate::util::dot(y1, y2);
    let exponent = (d as f64 - 3.0) / 2.0 + 2.0 * beta;
    if g <= 1e-12 * n1 * n2 {
        return if exponent > 0.0 {
            Ok(0.0)
        } else {
            Err(Error::Degenerate(
                "parallel directions with non-positive angular exponent".into(),
            ))
        };
    }
    let pref = (2.0 * PI).powf((d as f64 - 1.0) / 2.0)
        * (log_gamma((d as f64 - 1.0) / 2.0 + 2.0 * beta)?
            - log_gamma(d as f64 - 1.0 + 2.0 * beta)?)
        .exp();
    Ok(pref * g.powf(exponent))
}

/// Sharp constant of the Hardy–Littlewood–Sobolev inequality on S^{d−1}:
/// π^{λ/2} Γ((d−1−λ)/2)/Γ(d−1−λ/2) · (Γ(d−1)/Γ((d−1)/2))^{1−λ/(d−1)}.
pub fn hls_constant(lambda: f64, d: usize) -> Result<f64> {
    let df = d as f64;
    if !(lambda > 0.0 && lambda < df - 1.0) {
        return Err(Error::Domain(format!(
            "HLS constant requires 0 < lambda < d-1, got {lambda}"
        )));
    }
    Ok((lambda / 2.0 * ln_pi()
        + log_gamma((df - 1.0 - lambda) / 2.0)?
        - log_gamma(df - 1.0 - lambda / 2.0)?
        + (1.0 - lambda / (df - 1.0)) * (log_gamma(df - 1.0)? - log_gamma((df - 1.0) / 2.0)?))
    .exp())
}

/// Sharp constant of the sphere pairing bound H_λ(g,g) ≤ const·(∫g)² for
/// λ = 3−d−4β ∈ [−2, 0):
/// 2^{2d−5+4β} π^{−1/2} Γ(d−2+2β) Γ(d/2)/Γ((3d−5)/2+2β).
pub fn lemma21_constant(beta: f64, d: usize) -> Result<f64> {
    let df = d as f64;
    let lambda = 3.0 - df - 4.0 * beta;
    if !((-2.0..0.0).contains(&lambda)) {
        return Err(Error::Domain(format!(
            "pairing bound requires lambda = 3-d-4beta in [-2, 0), got {lambda}"
        )));
    }
    Ok(((2.0 * df - 5.0 + 4.0 * beta) * LN_2 - 0.5 * ln_pi()
        + log_gamma(df - 2.0 + 2.0 * beta)?
        + log_gamma(df / 2.0)?
        - log_gamma((3.0 * df - 5.0) / 2.0 + 2.0 * beta)?)
    .exp())
}

/// One named constant evaluated at given inputs.
#[derive(Debug, Clone)]
pub struct ConstantEntry {
    pub name: String,
    pub value: f64,
    pub log_value: f64,
}

/// Table of every constant admissible at (β, d).
pub fn constant_table(setting: &Setting) -> Vec<ConstantEntry> {
    let (beta, d) = (setting.beta, setting.d);
    let mut out = Vec::new();
    let mut push = |name: &str, v: Result<f64>| {
        if let Ok(value) = v {
            out.push(ConstantEntry {
                name: name.to_string(),
                value,
                log_value: value.ln(),
            });
        }
    };
    push("W", w(beta, d));
    push("W_pp", w_pp(beta, d));
    push("C_radial", c_radial(beta, d));
    push("C_radial_pp", c_radial_pp(beta, d));
    push("radial_factor", radial_factor(beta, d));
    push("lemma21_constant", lemma21_constant(beta, d));
    let lambda = 3.0 - d as f64 - 4.0 * beta;
    push("hls_constant", hls_constant(lambda, d));
    out
}
