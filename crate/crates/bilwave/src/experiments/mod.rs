//! End-to-end verification suites. Each suite runs the relevant quadrature
//! engines against closed-form references and produces a structured,
//! reproducible report.

pub mod optim;

use std::collections::BTreeMap;
use std::time::Instant;

use num_complex::Complex64;

use crate::constants::{c_radial, c_radial_pp, hls_constant, lemma21_constant, w, w_pp};
use crate::error::{Error, Result};
use crate::functionals::lhs::{lhs_norm_sq_opts, LhsOpts};
use crate::functionals::{
    h_lambda_opts, i_beta, lp_sphere_norm, t_beta, HLambdaOpts, SignMode, SphericalFunction,
};
use crate::model::{sobolev_norm_sq, FourierData, Setting};
use crate::numerics::{gauss_jacobi_01, sphere_area, KahanSum};

/// A named batch of computed-vs-reference comparisons with per-key
/// tolerances. `passed` holds exactly when every relative error is within
/// its tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub name: String,
    pub inputs: BTreeMap<String, String>,
    pub computed: BTreeMap<String, f64>,
    pub reference: BTreeMap<String, f64>,
    pub rel_errors: BTreeMap<String, f64>,
    pub tolerances: BTreeMap<String, f64>,
    pub passed: bool,
    pub inconclusive: bool,
    pub runtime_ms: u64,
}

impl VerificationReport {
    pub fn new(name: impl Into<String>) -> Self {
        VerificationReport {
            name: name.into(),
            inputs: BTreeMap::new(),
            computed: BTreeMap::new(),
            reference: BTreeMap::new(),
            rel_errors: BTreeMap::new(),
            tolerances: BTreeMap::new(),
            passed: false,
            inconclusive: false,
            runtime_ms: 0,
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) {
        self.inputs.insert(key.into(), value.to_string());
    }

    /// Two-sided comparison: |computed − reference| / |reference| ≤ tol.
    pub fn add_check(&mut self, key: &str, computed: f64, reference: f64, tol: f64) {
        self.computed.insert(key.into(), computed);
        self.reference.insert(key.into(), reference);
        self.rel_errors.insert(
            key.into(),
            (computed - reference).abs() / reference.abs().max(1e-300),
        );
        self.tolerances.insert(key.into(), tol);
    }

    /// One-sided comparison: value ≤ bound·(1 + tol); the recorded error is
    /// the relative overshoot, clamped at zero.
    pub fn add_bound(&mut self, key: &str, value: f64, bound: f64, tol: f64) {
        self.computed.insert(key.into(), value);
        self.reference.insert(key.into(), bound);
        self.rel_errors.insert(
            key.into(),
            ((value - bound) / bound.abs().max(1e-300)).max(0.0),
        );
        self.tolerances.insert(key.into(), tol);
    }

    /// Reported value with no pass/fail meaning (margins, diagnostics).
    pub fn add_info(&mut self, key: &str, value: f64) {
        self.computed.insert(key.into(), value);
    }

    pub fn finalize(&mut self, start: Instant) {
        self.passed = self
            .rel_errors
            .iter()
            .all(|(k, e)| *e <= *self.tolerances.get(k).unwrap_or(&0.0));
        self.runtime_ms = start.elapsed().as_millis() as u64;
    }
}

/// A log-log parameter scan with its fitted slope.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub name: String,
    pub deltas: Vec<f64>,
    pub values: Vec<f64>,
    pub fitted_slope: f64,
    pub slope_stderr: f64,
    pub theory_slope: f64,
}

/// Ordinary least squares of ln(value) against ln(delta) over the k
/// smallest deltas; returns (slope, stderr of the slope).
fn fit_loglog_slope(deltas: &[f64], values: &[f64], k: usize) -> (f64, f64) {
    let mut pairs: Vec<(f64, f64)> = deltas
        .iter()
        .zip(values)
        .map(|(d, v)| (d.ln(), v.ln()))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let pairs = &pairs[..k.min(pairs.len())];
    let n = pairs.len() as f64;
    let mx = pairs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pairs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pairs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pairs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let rss: f64 = pairs
        .iter()
        .map(|p| (p.1 - my - slope * (p.0 - mx)).powi(2))
        .sum();
    let dof = (n - 2.0).max(1.0);
    (slope, (rss / dof / sxx).sqrt())
}

fn mode_constant(setting: &Setting, mode: SignMode) -> Result<f64> {
    match mode {
        SignMode::PlusMinus => w(setting.beta, setting.d),
        SignMode::PlusPlus => w_pp(setting.beta, setting.d),
    }
}

fn mode_radial_constant(setting: &Setting, mode: SignMode) -> Result<f64> {
    match mode {
        SignMode::PlusMinus => c_radial(setting.beta, setting.d),
        SignMode::PlusPlus => c_radial_pp(setting.beta, setting.d),
    }
}

fn require_sharp_admissible(setting: &Setting, mode: SignMode) -> Result<()> {
    let ok = match mode {
        SignMode::PlusMinus => setting.admissible_sharp(),
        SignMode::PlusPlus => setting.admissible_sharp_pp(),
    };
    if !ok {
        return Err(Error::Domain(format!(
            "beta = {} is outside the sharp range for mode {} in dimension {} (beta must exceed {})",
            setting.beta,
            mode.as_str(),
            setting.d,
            match mode {
                SignMode::PlusMinus => setting.beta_d(),
                SignMode::PlusPlus => (2.0 - setting.df()) / 2.0,
            }
        )));
    }
    Ok(())
}

/// True when the pair is an equality case of the main bilinear estimate:
/// both data in the exponential family with equal a and b (the scalar c may
/// differ — it only rescales).
fn extremal_pair(f: &FourierData, g: &FourierData) -> bool {
    match (f.as_extremiser(), g.as_extremiser()) {
        (Some(p), Some(q)) => {
            (p.a - q.a).norm() <= 1e-12 * p.a.norm()
                && p.b
                    .iter()
                    .zip(&q.b)
                    .all(|(x, y)| (x - y).norm() <= 1e-12 * (1.0 + x.norm()))
        }
        _ => false,
    }
}

/// Options shared by suites that run the space-time norm quadrature.
#[derive(Debug, Clone, Copy)]
pub struct SuiteOpts {
    pub tol: f64,
    pub lhs: LhsOpts,
    pub h_lambda: HLambdaOpts,
}

impl Default for SuiteOpts {
    fn default() -> Self {
        SuiteOpts {
            tol: 1e-3,
            lhs: LhsOpts::default(),
            h_lambda: HLambdaOpts::default(),
        }
    }
}

fn echo_common(report: &mut VerificationReport, setting: &Setting, opts: &SuiteOpts) {
    report.input("dim", setting.d);
    report.input("beta", setting.beta);
    report.input("tol", opts.tol);
    report.input(
        "lhs_nodes",
        format!("{}/{}/{}", opts.lhs.n_gap, opts.lhs.n_inner, opts.lhs.n_outer),
    );
}

/// Main estimate: ratio = ‖·‖²/(W_mode · I_β) ≤ 1, equality on the family.
pub fn verify_theorem(
    setting: &Setting,
    f: &FourierData,
    g: &FourierData,
    mode: SignMode,
    opts: &SuiteOpts,
) -> Result<VerificationReport> {
    let start = Instant::now();
    require_sharp_admissible(setting, mode)?;
    let mut report = VerificationReport::new(format!("theorem_{}", mode.as_str()));
    echo_common(&mut report, setting, opts);
    report.input("f", f.label());
    report.input("g", g.label());

    let lhs = lhs_norm_sq_opts(f, g, setting, mode, &opts.lhs)?;
    let ib = i_beta(f, g, setting)?;
    let constant = mode_constant(setting, mode)?;
    let rhs = constant * ib;
    let ratio = lhs / rhs;
    report.add_info("lhs_norm_sq", lhs);
    report.add_info("i_beta", ib);
    report.add_info("sharp_constant", constant);
    if extremal_pair(f, g) {
        report.add_check("ratio", ratio, 1.0, opts.tol);
    } else {
        report.add_bound("ratio", ratio, 1.0, opts.tol);
        report.add_info("strictness_margin", 1.0 - ratio);
    }

    // the ratio statistic is invariant under data rescaling f -> mu f
    let f3 = f.scaled(3.0);
    let lhs3 = lhs_norm_sq_opts(&f3, g, setting, mode, &opts.lhs)?;
    let ib3 = i_beta(&f3, g, setting)?;
    report.add_check("ratio_rescaled", lhs3 / (constant * ib3), ratio, 1e-10);

    report.finalize(start);
    Ok(report)
}

/// Radial corollary: ‖·‖² ≤ C_mode(β,d) ‖f‖² ‖g‖² with Ḣ^{(d−1)/4+β} norms;
/// equality on the radial-modulus family members.
pub fn verify_radial_corollary(
    setting: &Setting,
    f: &FourierData,
    g: &FourierData,
    mode: SignMode,
    opts: &SuiteOpts,
) -> Result<VerificationReport> {
    let start = Instant::now();
    require_sharp_admissible(setting, mode)?;
    let mut report = VerificationReport::new(format!("radial_{}", mode.as_str()));
    echo_common(&mut report, setting, opts);
    report.input("f", f.label());
    report.input("g", g.label());

    let s = (setting.df() - 1.0) / 4.0 + setting.beta;
    let lhs = lhs_norm_sq_opts(f, g, setting, mode, &opts.lhs)?;
    let nf = sobolev_norm_sq(f, s, setting)?;
    let ng = sobolev_norm_sq(g, s, setting)?;
    let constant = mode_radial_constant(setting, mode)?;
    let rhs = constant * nf * ng;
    let ratio = lhs / rhs;
    report.add_info("lhs_norm_sq", lhs);
    report.add_info("norm_product", nf * ng);
    report.add_info("radial_constant", constant);
    let radial_extremal = extremal_pair(f, g)
        && f.as_extremiser().map(|p| p.is_radial_modulus()).unwrap_or(false);
    if radial_extremal {
        report.add_check("ratio", ratio, 1.0, opts.tol);
    } else {
        report.add_bound("ratio", ratio, 1.0, opts.tol);
        report.add_info("strictness_margin", 1.0 - ratio);
    }
    report.finalize(start);
    Ok(report)
}

/// The sphere-pairing bound H_λ(g,g) ≤ K (∫g)² for λ = 3−d−4β ∈ [−2, 0),
/// with equality exactly at constants when λ > −2.
pub fn verify_lemma21(
    setting: &Setting,
    trials: &[SphericalFunction],
    opts: &SuiteOpts,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let lambda = 3.0 - setting.df() - 4.0 * setting.beta;
    if !(lambda < 0.0 && lambda >= -2.0) {
        return Err(Error::Domain(format!(
            "the pairing bound needs lambda = 3-d-4beta in [-2, 0), got {lambda} \
             (beta must lie in ((3-d)/4, (5-d)/4])"
        )));
    }
    let mut report = VerificationReport::new("lemma21");
    echo_common(&mut report, setting, opts);
    report.input("lambda", lambda);
    report.input("n_trials", trials.len());
    let k = lemma21_constant(setting.beta, setting.d)?;
    report.add_info("bound_constant", k);

    // equality witness at g ≡ 1
    let one = SphericalFunction::constant(setting.d, 1.0);
    let h1 = h_lambda_opts(&one, &one, lambda, &opts.h_lambda)?;
    let area = sphere_area(setting.d - 1);
    report.add_check("constant_ratio", h1.value / (k * area * area), 1.0, 1e-6);

    for (i, g) in trials.iter().enumerate() {
        let h = h_lambda_opts(g, g, lambda, &opts.h_lambda)?;
        let mass = g.integral(400)?;
        let ratio = h.value / (k * mass * mass);
        let tol = h
            .stderr
            .map(|se| (3.0 * se / (k * mass * mass)).max(opts.tol))
            .unwrap_or(opts.tol);
        if g.is_constant {
            report.add_check(&format!("trial{i}_ratio"), ratio, 1.0, tol);
        } else {
            report.add_bound(&format!("trial{i}_ratio"), ratio, 1.0, tol);
            if lambda > -2.0 {
                // strictness away from the boundary: the ratio must sit
                // measurably below 1
                report.add_bound(&format!("trial{i}_strict"), ratio, 1.0 - 1e-6, 0.0);
            }
        }
    }
    report.finalize(start);
    Ok(report)
}

/// The sharp sphere Hardy–Littlewood–Sobolev step:
/// H_λ(T_βf, T_βg) ≤ K_HLS ‖T_βf‖_p ‖T_βg‖_p for λ = 3−d−4β ∈ (0, d−1).
///
/// Equality holds whenever both T_β profiles are (1+ξ·ω)-power extremisers
/// of the matching exponent — which includes every member of the
/// exponential family and all radially-symmetric-modulus data (constant
/// T_β): strictness of the full product estimate for such data comes from
/// the main-theorem step, not from this one.
pub fn verify_hls(
    setting: &Setting,
    f: &FourierData,
    g: &FourierData,
    opts: &SuiteOpts,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let lambda = 3.0 - setting.df() - 4.0 * setting.beta;
    let df = setting.df();
    if !(lambda > 0.0 && lambda < df - 1.0 && setting.beta > setting.beta_d()) {
        return Err(Error::Domain(format!(
            "the sphere HLS step needs beta in (beta_d, (3-d)/4), i.e. lambda = {lambda} in (0, d-1)"
        )));
    }
    let p = 2.0 * (df - 1.0) / (3.0 * df - 5.0 + 4.0 * setting.beta);
    if !(p > 1.0 && p < 2.0) {
        return Err(Error::Domain(format!("derived Lebesgue exponent p = {p} not in (1,2)")));
    }
    let mut report = VerificationReport::new("hls");
    echo_common(&mut report, setting, opts);
    report.input("f", f.label());
    report.input("g", g.label());
    report.add_info("lambda", lambda);
    report.add_info("p", p);

    let tf = t_beta(f, setting)?;
    let tg = t_beta(g, setting)?;
    let h = h_lambda_opts(&tf, &tg, lambda, &opts.h_lambda)?;
    let k = hls_constant(lambda, setting.d)?;
    let rhs = k * lp_sphere_norm(&tf, p)? * lp_sphere_norm(&tg, p)?;
    let ratio = h.value / rhs;
    let tol = h
        .stderr
        .map(|se| (3.0 * se / rhs).max(opts.tol))
        .unwrap_or(opts.tol);
    report.add_info("h_lambda", h.value);
    report.add_info("rhs", rhs);
    // every supported data class yields an extremal T_β profile, so the
    // step itself is always an equality here
    let extremal_step = match (tf.zonal_parts(), tg.zonal_parts()) {
        (Some(_), Some(_)) => true,
        _ => false,
    };
    if extremal_step {
        report.add_check("ratio", ratio, 1.0, tol);
    } else {
        report.add_bound("ratio", ratio, 1.0, tol);
    }
    report.finalize(start);
    Ok(report)
}

/// The general-data corollary. Branch (i), β > (3−d)/4: symmetric estimate
/// against the fourth power of the Ḣ^{(d−1)/4+β} norm. Branch (ii),
/// β ≤ (3−d)/4: product estimate against sphere L^p norms of T_β with the
/// |S^{d−1}| power.
pub fn verify_corollary14(
    setting: &Setting,
    f: &FourierData,
    g: &FourierData,
    opts: &SuiteOpts,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let df = setting.df();
    let beta = setting.beta;
    if !(beta > setting.beta_d() && beta <= (5.0 - df) / 4.0) {
        return Err(Error::Domain(format!(
            "the corollary needs beta in (beta_d, (5-d)/4], got {beta} (beta_d = {})",
            setting.beta_d()
        )));
    }
    let mut report = VerificationReport::new("corollary14");
    echo_common(&mut report, setting, opts);
    report.input("f", f.label());
    report.input("g", g.label());

    if beta > (3.0 - df) / 4.0 {
        // branch (i): f = g, fourth power of the homogeneous Sobolev norm
        report.input("branch", "i");
        let s = (df - 1.0) / 4.0 + beta;
        let lhs = lhs_norm_sq_opts(f, f, setting, SignMode::PlusMinus, &opts.lhs)?;
        let nf = sobolev_norm_sq(f, s, setting)?;
        let rhs = c_radial(beta, setting.d)? * nf * nf;
        let ratio = lhs / rhs;
        report.add_info("lhs_norm_sq", lhs);
        report.add_info("rhs", rhs);
        let extremal = f
            .as_extremiser()
            .map(|p| p.is_radial_modulus())
            .unwrap_or(false);
        if extremal {
            report.add_check("ratio", ratio, 1.0, opts.tol);
        } else {
            report.add_bound("ratio", ratio, 1.0, opts.tol);
            report.add_info("strictness_margin", 1.0 - ratio);
        }
    } else {
        // branch (ii): sphere L^p norms of T_β; p = 1 at the threshold
        report.input("branch", "ii");
        let p = 2.0 * (df - 1.0) / (3.0 * df - 5.0 + 4.0 * beta);
        report.add_info("p", p);
        let lambda = 3.0 - df - 4.0 * beta;
        // For data without a radial Fourier profile the space-time quadrature
        // is unavailable; substitute the sharp main-theorem value W·I_β
        // (an upper bound for the left side, and its exact value on the
        // family), which turns the check into the right-hand-side chain.
        let both_radial = f.radial_closure().is_some() && g.radial_closure().is_some();
        let lhs = if both_radial {
            lhs_norm_sq_opts(f, g, setting, SignMode::PlusMinus, &opts.lhs)?
        } else {
            report.input("lhs_source", "sharp_bound_surrogate");
            w(beta, setting.d)? * i_beta(f, g, setting)?
        };
        let tf = t_beta(f, setting)?;
        let tg = t_beta(g, setting)?;
        let area_pow = sphere_area(setting.d - 1).powf(lambda / (df - 1.0));
        let rhs =
            c_radial(beta, setting.d)? * area_pow * lp_sphere_norm(&tf, p)? * lp_sphere_norm(&tg, p)?;
        let ratio = lhs / rhs;
        report.add_info("lhs_norm_sq", lhs);
        report.add_info("rhs", rhs);
        if extremal_pair(f, g) {
            report.add_check("ratio", ratio, 1.0, opts.tol);
        } else {
            report.add_bound("ratio", ratio, 1.0, opts.tol);
            report.add_info("strictness_margin", 1.0 - ratio);
        }
    }
    report.finalize(start);
    Ok(report)
}

/// ∫_{−1}^1 (1−t²)^{(d−3)/2} (1−(1−δ)t)^{−σ} dt with the near-endpoint
/// concentration at t = 1 resolved exactly: on [0,1] substitute
/// s = (1−(1−δ)t)/δ followed by s = e^v, so that the δ-scale layer becomes
/// a fixed-size smooth integral.
pub fn blowup_model_integral(d: usize, sigma: f64, delta: f64, n: usize) -> Result<f64> {
    let df = d as f64;
    let al = (df - 3.0) / 2.0;
    let q = gauss_jacobi_01(n, al)?;
    // [−1, 0]: t = −1 + x, the (1+t)^{al} factor is the quadrature weight
    let mut left = KahanSum::new();
    for (&x, &w) in q.nodes.iter().zip(&q.weights) {
        let t = -1.0 + x;
        left.add(w * (1.0 - t).powf(al) * (1.0 - (1.0 - delta) * t).powf(-sigma));
    }
    // [0, 1]: J = δ^{al+1−σ}(1−δ)^{−2al−1} ∫_1^{1/δ} (s−1)^{al}(2−δ−δs)^{al} s^{−σ} ds,
    // then s = e^{v}, v = L x, L = ln(1/δ); (e^v−1)^{al} ~ v^{al} is the weight
    let l = -(delta.ln());
    let mut right = KahanSum::new();
    for (&x, &w) in q.nodes.iter().zip(&q.weights) {
        let v = l * x;
        let em = v.exp_m1();
        let smooth = (em / v).powf(al) * (2.0 - delta - delta * (em + 1.0)).powf(al)
            * ((1.0 - sigma) * v).exp();
        right.add(w * smooth);
    }
    let right_val = right.value()
        * l.powf(al + 1.0)
        * delta.powf(al + 1.0 - sigma)
        * (1.0 - delta).powf(-2.0 * al - 1.0);
    Ok(left.value() + right_val)
}

/// Blow-up scan: the two model integrals behind the failure of the sharp
/// symmetric estimate below the threshold, with fitted log-log slopes.
pub struct CounterexampleScan {
    pub i1: ScanResult,
    pub i2: ScanResult,
    pub report: VerificationReport,
}

pub fn counterexample_scan(
    setting: &Setting,
    deltas: &[f64],
    n_nodes: usize,
) -> Result<CounterexampleScan> {
    let start = Instant::now();
    let df = setting.df();
    let beta = setting.beta;
    if !(beta > setting.beta_d() && beta < (3.0 - df) / 4.0) {
        return Err(Error::Domain(format!(
            "the blow-up scan needs beta in (beta_d, (3-d)/4), got {beta}"
        )));
    }
    if deltas.len() < 6 || deltas.iter().any(|&d| !(d > 0.0 && d < 0.01)) {
        return Err(Error::Usage(
            "the scan needs at least 6 deltas, each in (0, 1/100)".into(),
        ));
    }
    let p = 2.0 * (df - 1.0) / (3.0 * df - 5.0 + 4.0 * beta);
    let n = n_nodes.max(60);

    let mut i1 = Vec::with_capacity(deltas.len());
    let mut i2 = Vec::with_capacity(deltas.len());
    for &delta in deltas {
        i1.push(blowup_model_integral(setting.d, df - 1.0, delta, n)?.powf(1.0 / p));
        i2.push(blowup_model_integral(setting.d, (df - 1.0) / p, delta, n)?);
    }
    let theory1 = (1.0 - df) / (2.0 * p);
    let theory2 = (1.0 - df) / p + (df - 1.0) / 2.0;
    let (s1, se1) = fit_loglog_slope(deltas, &i1, 5);
    let (s2, se2) = fit_loglog_slope(deltas, &i2, 5);

    let mut report = VerificationReport::new("counterexample_scan");
    report.input("dim", setting.d);
    report.input("beta", beta);
    report.input("p", p);
    report.input("n_deltas", deltas.len());
    report.add_check("slope_i1", s1, theory1, 0.05);
    report.add_check("slope_i2", s2, theory2, 0.05);
    // blow-up: the ratio I1/I2 must increase monotonically as delta decreases
    let mut order: Vec<usize> = (0..deltas.len()).collect();
    order.sort_by(|&a, &b| deltas[b].total_cmp(&deltas[a]));
    let mut monotone = true;
    let mut prev = f64::NEG_INFINITY;
    for &i in &order {
        let r = i1[i] / i2[i];
        if r <= prev {
            monotone = false;
        }
        prev = r;
    }
    report.add_check("ratio_monotone", if monotone { 1.0 } else { 0.0 }, 1.0, 0.0);
    report.add_info("ratio_smallest_delta", {
        let i = *order.last().unwrap();
        i1[i] / i2[i]
    });
    report.finalize(start);

    Ok(CounterexampleScan {
        i1: ScanResult {
            name: "I1".into(),
            deltas: deltas.to_vec(),
            values: i1,
            fitted_slope: s1,
            slope_stderr: se1,
            theory_slope: theory1,
        },
        i2: ScanResult {
            name: "I2".into(),
            deltas: deltas.to_vec(),
            values: i2,
            fitted_slope: s2,
            slope_stderr: se2,
            theory_slope: theory2,
        },
        report,
    })
}

/// Derivative-free search for the best ratio over the radial family
/// r ↦ r^{−1} e^{−e^{θ₀} r} (1 + Σ_k θ_k r^k e^{−r}); numerically
/// corroborates optimality of the constant. Budget exhausted before simplex
/// convergence marks the report inconclusive rather than failed.
pub fn extremiser_search(
    setting: &Setting,
    mode: SignMode,
    n_params: usize,
    seed: u64,
    budget: usize,
) -> Result<VerificationReport> {
    use rand::{Rng, SeedableRng};
    let start = Instant::now();
    require_sharp_admissible(setting, mode)?;
    if n_params == 0 || n_params > 8 {
        return Err(Error::Usage("the search family takes 1..=8 parameters".into()));
    }
    let mut report = VerificationReport::new(format!("search_{}", mode.as_str()));
    report.input("dim", setting.d);
    report.input("beta", setting.beta);
    report.input("n_params", n_params);
    report.input("seed", seed);
    report.input("budget", budget);

    let constant = mode_constant(setting, mode)?;
    // coarser nodes than the verification suites: the optimizer needs many
    // evaluations and only ~1e-6 accuracy
    let lhs_opts = LhsOpts {
        n_gap: 24,
        n_inner: 60,
        n_outer: 120,
    };
    let setting_c = setting.clone();
    let objective = move |theta: &[f64]| -> f64 {
        let rate = theta[0].exp();
        let coeffs: Vec<f64> = theta[1..].to_vec();
        let data = FourierData::radial(
            move |r: f64| {
                let mut pert = 1.0;
                let e = (-r).exp();
                let mut rk = 1.0;
                for c in &coeffs {
                    rk *= r;
                    pert += c * rk * e;
                }
                Complex64::new((-rate * r).exp() * pert / r, 0.0)
            },
            1.0,
            rate,
            "search",
        );
        let lhs = match lhs_norm_sq_opts(&data, &data, &setting_c, mode, &lhs_opts) {
            Ok(v) => v,
            Err(_) => return f64::NEG_INFINITY,
        };
        let ib = match i_beta(&data, &data, &setting_c) {
            Ok(v) => v,
            Err(_) => return f64::NEG_INFINITY,
        };
        lhs / (constant * ib)
    };

    // start away from the optimum (θ = 0 is the exact family member), with
    // a small seeded jitter so independent runs explore different simplices
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut start_pt = vec![0.0; n_params];
    let base = [0.3, 0.05, -0.05, 0.05, -0.04, 0.04, -0.03, 0.03];
    for (i, x) in start_pt.iter_mut().enumerate() {
        *x = base[i] + rng.gen_range(-0.01..0.01);
    }
    let outcome = optim::nelder_mead_max(objective, &start_pt, 0.1, budget, 1e-9);

    report.add_info("evaluations", outcome.evaluations as f64);
    report.add_info("best_rate_log", outcome.best_point[0]);
    for (k, c) in outcome.best_point[1..].iter().enumerate() {
        report.add_info(&format!("best_coeff{}", k + 1), *c);
        report.add_bound(&format!("coeff{}_small", k + 1), c.abs(), 5e-2, 0.0);
    }
    // the inequality itself must hold at every evaluation point
    report.add_bound("max_ratio_seen", outcome.max_seen, 1.0, 1e-3);
    // the optimizer must rediscover the family: best ratio in [0.99, 1+1e-3]
    report.add_bound("best_ratio", outcome.best_value, 1.0, 1e-3);
    report.add_bound("best_ratio_from_below", 0.99 - outcome.best_value, 0.0, 0.0);
    report.add_info("converged", if outcome.converged { 1.0 } else { 0.0 });
    report.finalize(start);
    if !outcome.converged && !report.passed {
        report.inconclusive = true;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{parse_preset, ExtremiserParams};
    use crate::util::rel_err;

    fn foschi(d: usize) -> FourierData {
        parse_preset("foschi", d).unwrap()
    }

    #[test]
    fn theorem_equality_d3() {
        let setting = Setting::new(3, 0.0).unwrap();
        let f = foschi(3);
        let rep = verify_theorem(&setting, &f, &f, SignMode::PlusMinus, &SuiteOpts::default())
            .unwrap();
        assert!(rep.passed, "{:?}", rep.rel_errors);
        assert!(rel_err(rep.computed["ratio"], 1.0) <= 1e-6);
        // frozen closed-form value of the left side
        assert!(
            rel_err(rep.computed["lhs_norm_sq"], 2.5529403461354574e-5) <= 1e-9,
            "{}",
            rep.computed["lhs_norm_sq"]
        );
    }

    #[test]
    fn theorem_gaussian_strict() {
        let setting = Setting::new(3, 0.0).unwrap();
        let g = FourierData::gaussian();
        let rep = verify_theorem(&setting, &g, &g, SignMode::PlusMinus, &SuiteOpts::default())
            .unwrap();
        assert!(rep.passed);
        assert!(rep.computed["ratio"] < 0.999);
        assert!(rep.computed["strictness_margin"] > 1e-3);
    }

    #[test]
    fn theorem_rejects_inadmissible() {
        let setting = Setting::new(3, -0.6).unwrap();
        let f = foschi(3);
        assert!(matches!(
            verify_theorem(&setting, &f, &f, SignMode::PlusMinus, &SuiteOpts::default()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn radial_corollary_equality_and_strictness() {
        let setting = Setting::new(3, 0.5).unwrap();
        let f = foschi(3);
        let rep =
            verify_radial_corollary(&setting, &f, &f, SignMode::PlusMinus, &SuiteOpts::default())
                .unwrap();
        assert!(rep.passed, "{:?}", rep.rel_errors);
        assert!(rel_err(rep.computed["ratio"], 1.0) <= 1e-6);

        let g = FourierData::gaussian();
        let rep =
            verify_radial_corollary(&setting, &g, &g, SignMode::PlusMinus, &SuiteOpts::default())
                .unwrap();
        assert!(rep.passed);
        assert!(rep.computed["ratio"] < 1.0);
    }

    #[test]
    fn lemma21_suite() {
        let setting = Setting::new(3, 0.15).unwrap(); // lambda = -0.6
        let trials = vec![
            SphericalFunction::constant(3, 2.5),
            SphericalFunction::zonal(3, vec![1.0, 0.0, 0.0], |t| 1.0 + 0.5 * t),
            SphericalFunction::zonal(3, vec![0.0, 1.0, 0.0], |t| (0.7 * t).exp()),
        ];
        let rep = verify_lemma21(&setting, &trials, &SuiteOpts::default()).unwrap();
        assert!(rep.passed, "{:?}", rep.rel_errors);
        // non-constant trials strictly below the bound
        assert!(rep.computed["trial1_ratio"] < 1.0);
        assert!(rep.computed["trial2_ratio"] < 1.0);
    }

    #[test]
    fn lemma21_boundary_no_strictness_assertion() {
        let setting = Setting::new(3, 0.5).unwrap(); // lambda = -2 boundary
        let trials = vec![SphericalFunction::zonal(3, vec![1.0, 0.0, 0.0], |t| {
            1.0 + 0.5 * t
        })];
        let rep = verify_lemma21(&setting, &trials, &SuiteOpts::default()).unwrap();
        assert!(!rep.rel_errors.contains_key("trial0_strict"));
        assert!(rep.passed, "{:?}", rep.rel_errors);
    }

    #[test]
    fn hls_equality_for_family_profile() {
        let setting = Setting::new(4, -0.3).unwrap();
        let p = ExtremiserParams::real_axial(4, -1.0, 0.5, 0.0).unwrap();
        let f = FourierData::Extremiser(p);
        let mut opts = SuiteOpts::default();
        opts.tol = 1e-4;
        let rep = verify_hls(&setting, &f, &f, &opts).unwrap();
        assert!(rep.passed, "{:?}", rep.rel_errors);
    }

    #[test]
    fn hls_rejects_out_of_range() {
        let setting = Setting::new(3, 0.25).unwrap(); // lambda < 0
        let f = foschi(3);
        assert!(matches!(
            verify_hls(&setting, &f, &f, &SuiteOpts::default()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn corollary14_branch_i_equality() {
        let setting = Setting::new(3, 0.25).unwrap();
        let f = foschi(3);
        let rep = verify_corollary14(&setting, &f, &f, &SuiteOpts::default()).unwrap();
        assert!(rep.inputs["branch"] == "i");
        assert!(rep.passed, "{:?}", rep.rel_errors);
        assert!(rel_err(rep.computed["ratio"], 1.0) <= 1e-6);
    }

    #[test]
    fn corollary14_branch_ii_equality_and_threshold() {
        // strictly below the threshold: HLS path
        let setting = Setting::new(4, -0.4).unwrap();
        let p = ExtremiserParams::real_axial(4, -1.0, 0.4, 0.0).unwrap();
        let f = FourierData::Extremiser(p);
        let rep = verify_corollary14(&setting, &f, &f, &SuiteOpts::default()).unwrap();
        assert!(rep.inputs["branch"] == "ii");
        assert!(rep.passed, "{:?}", rep.rel_errors);

        // at the threshold: p = 1, the chain collapses to the main theorem
        let setting = Setting::new(4, -0.25).unwrap();
        let rep = verify_corollary14(&setting, &f, &f, &SuiteOpts::default()).unwrap();
        assert!(rep.inputs["branch"] == "ii");
        assert!((rep.computed["p"] - 1.0).abs() <= 1e-12);
        assert!(rep.passed, "{:?}", rep.rel_errors);
    }

    #[test]
    fn blowup_model_integral_matches_reference_scaling() {
        // sigma = d-1 = 2 > (d-1)/2 in d=3: J ~ delta^{(d-1)/2 - sigma} = delta^{-1}
        let deltas: Vec<f64> = (7..=14).map(|k| 2f64.powi(-k)).collect();
        let vals: Vec<f64> = deltas
            .iter()
            .map(|&dl| blowup_model_integral(3, 2.0, dl, 80).unwrap())
            .collect();
        let (slope, _) = fit_loglog_slope(&deltas, &vals, 5);
        assert!((slope + 1.0).abs() <= 0.05, "slope {slope}");
        // closed form check d=3, sigma=1: J = -ln(... ) — use sigma=0: J = 2
        let v = blowup_model_integral(3, 0.0, 1e-3, 80).unwrap();
        assert!(rel_err(v, 2.0) <= 1e-12);
    }

    #[test]
    fn counterexample_scan_d3() {
        let setting = Setting::new(3, -0.25).unwrap();
        let deltas: Vec<f64> = (7..=14).map(|k| 2f64.powi(-k)).collect();
        let scan = counterexample_scan(&setting, &deltas, 80).unwrap();
        assert!(scan.report.passed, "{:?}", scan.report.rel_errors);
        assert!((scan.i1.fitted_slope - (-0.75)).abs() <= 0.05 * 0.75);
        assert!((scan.i2.fitted_slope - (-0.5)).abs() <= 0.05 * 0.5);
    }

    #[test]
    fn scan_rejects_bad_inputs() {
        let setting = Setting::new(3, -0.25).unwrap();
        assert!(counterexample_scan(&setting, &[1e-3, 2e-3], 60).is_err());
        let bad = Setting::new(3, 0.25).unwrap();
        let deltas: Vec<f64> = (7..=12).map(|k| 2f64.powi(-k)).collect();
        assert!(counterexample_scan(&bad, &deltas, 60).is_err());
    }

    #[test]
    fn report_pass_logic() {
        let start = Instant::now();
        let mut r = VerificationReport::new("t");
        r.add_check("a", 1.0, 1.0, 1e-12);
        r.add_bound("b", 0.9, 1.0, 0.0);
        r.finalize(start);
        assert!(r.passed);
        r.add_check("c", 2.0, 1.0, 1e-3);
        r.finalize(start);
        assert!(!r.passed);
    }
}
