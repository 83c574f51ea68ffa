//! Command-line front end: run verification suites, print constants, emit
//! JSON/CSV/text reports and plot-ready scan tables.
//!
//! Exit status: 0 when every executed check passed, 1 on failure, 2 on
//! usage/domain errors, 3 when an optimizer run was inconclusive.

use std::io::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::constants::{constant_table, lemma31_closed_form};
use crate::error::{Error, Result};
use crate::experiments::{
    counterexample_scan, extremiser_search, verify_corollary14, verify_hls, verify_lemma21,
    verify_radial_corollary, verify_theorem, SuiteOpts, VerificationReport,
};
use crate::functionals::lhs::LhsOpts;
use crate::functionals::{SignMode, SphericalFunction};
use crate::geometry::{
    boost_apply, boost_determinant, boost_for, i_beta_numeric, lemma32_check,
};
use crate::model::{parse_preset, FourierData, MinkowskiVector, Setting};
use crate::report::{
    report_to_csv, report_to_json, report_to_text, scan_to_csv, scan_to_json, scan_to_text,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Pm,
    Pp,
}

impl ModeArg {
    fn sign_mode(self) -> SignMode {
        match self {
            ModeArg::Pm => SignMode::PlusMinus,
            ModeArg::Pp => SignMode::PlusPlus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "bilwave",
    about = "Numerical verification of sharp bilinear space-time estimates for half-wave propagators",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Spatial dimension d >= 2.
    #[arg(long, global = true, default_value_t = 3)]
    pub dim: usize,
    /// Weight exponent beta.
    #[arg(long, global = true, default_value_t = 0.0, allow_hyphen_values = true)]
    pub beta: f64,
    /// Product sign mode: pm (u conj v) or pp (u v).
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Pm)]
    pub mode: ModeArg,
    /// Data preset: foschi | gaussian | extremiser(a,b1,c) | prop13(delta).
    #[arg(long, global = true, default_value = "foschi")]
    pub data: String,
    /// Second datum preset; defaults to --data.
    #[arg(long, global = true)]
    pub data2: Option<String>,
    /// Relative tolerance for equality checks.
    #[arg(long, global = true, default_value_t = 1e-3)]
    pub tol: f64,
    /// Quadrature node count (per rule; suites scale their defaults by n/100).
    #[arg(long, global = true, default_value_t = 100)]
    pub nodes: usize,
    /// RNG seed for sampled checks.
    #[arg(long, global = true, default_value_t = 2024)]
    pub seed: u64,
    /// Output file (default: stdout, or $BILWAVE_OUT/<command>.<ext> if set).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    pub format: FormatArg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the closed-form constants admissible at (beta, d).
    Constants,
    /// Compare the ellipsoid oracle for the convolution functional with its
    /// closed form on random direction pairs.
    Lemma31,
    /// Boost invariants: Minkowski-form preservation, unit determinant,
    /// base-point mapping, and the cone identity with its maximiser.
    Lorentz,
    /// Main estimate: space-time norm against the sharp constant times the
    /// bilinear functional.
    Verify,
    /// Radial corollary: space-time norm against Sobolev norms.
    Radial,
    /// Sphere inequalities at this (beta, d): the pairing bound for
    /// lambda in [-2,0), the sharp sphere HLS step for lambda in (0,d-1),
    /// and the general-data corollary when beta is in its range.
    Sphere,
    /// Blow-up scan of the model integrals below the sharpness threshold.
    Counterexample,
    /// Derivative-free search for data beating the sharp constant.
    Search {
        /// Number of family parameters (1..=8).
        #[arg(long, default_value_t = 4)]
        params: usize,
        /// Objective evaluation budget.
        #[arg(long, default_value_t = 500)]
        budget: usize,
    },
    /// Run the full verification grid and print a summary matrix.
    All,
}

struct Sink {
    path: Option<PathBuf>,
    buffer: String,
}

impl Sink {
    fn new(cli: &Cli, default_name: &str) -> Sink {
        let ext = match cli.format {
            FormatArg::Json => "json",
            FormatArg::Csv => "csv",
            FormatArg::Text => "txt",
        };
        let path = cli.out.clone().or_else(|| {
            std::env::var_os("BILWAVE_OUT")
                .map(|dir| PathBuf::from(dir).join(format!("{default_name}.{ext}")))
        });
        Sink {
            path,
            buffer: String::new(),
        }
    }

    fn push(&mut self, s: &str) {
        self.buffer.push_str(s);
        if !s.ends_with('\n') {
            self.buffer.push('\n');
        }
    }

    fn flush(self) -> Result<()> {
        match self.path {
            Some(p) => std::fs::write(p, self.buffer.as_bytes()).map_err(Error::Io),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(self.buffer.as_bytes()).map_err(Error::Io)
            }
        }
    }
}

fn emit_report(report: &VerificationReport, format: FormatArg, sink: &mut Sink) {
    let s = match format {
        FormatArg::Json => report_to_json(report),
        FormatArg::Csv => report_to_csv(report),
        FormatArg::Text => report_to_text(report),
    };
    sink.push(&s);
}

fn suite_opts(cli: &Cli) -> SuiteOpts {
    let factor = cli.nodes as f64 / 100.0;
    let mut opts = SuiteOpts::default();
    opts.tol = cli.tol;
    opts.lhs = LhsOpts::with_factor(factor);
    opts
}

fn data_pair(cli: &Cli, d: usize) -> Result<(FourierData, FourierData)> {
    let f = parse_preset(&cli.data, d)?;
    let g = match &cli.data2 {
        Some(s) => parse_preset(s, d)?,
        None => f.clone(),
    };
    Ok((f, g))
}

fn exit_code(reports: &[VerificationReport]) -> i32 {
    if reports.iter().all(|r| r.passed) {
        0
    } else if reports
        .iter()
        .all(|r| r.passed || r.inconclusive)
    {
        3
    } else {
        1
    }
}

fn rand_nonzero(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| StandardNormal.sample(rng)).collect();
        if v.iter().map(|x| x * x).sum::<f64>().sqrt() > 1e-3 {
            return v;
        }
    }
}

fn run_lemma31(cli: &Cli, setting: &Setting) -> Result<VerificationReport> {
    let start = std::time::Instant::now();
    let mut report = VerificationReport::new("lemma31_oracle");
    report.input("dim", setting.d);
    report.input("beta", setting.beta);
    report.input("nodes", cli.nodes);
    report.input("seed", cli.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let mut worst = 0.0f64;
    let mut tested = 0usize;
    while tested < 100 {
        let y1 = rand_nonzero(&mut rng, setting.d);
        let y2 = rand_nonzero(&mut rng, setting.d);
        // skip the measure-zero neighbourhood of parallel directions, where
        // the closed form degenerates and the oracle's chart loses accuracy
        let (n1, n2) = (
            y1.iter().map(|x| x * x).sum::<f64>().sqrt(),
            y2.iter().map(|x| x * x).sum::<f64>().sqrt(),
        );
        let cosang = y1.iter().zip(&y2).map(|(a, b)| a * b).sum::<f64>() / (n1 * n2);
        if cosang.abs() > 1.0 - 1e-4 {
            continue;
        }
        let cf = match lemma31_closed_form(&y1, &y2, setting.beta, setting.d) {
            Ok(v) => v,
            Err(Error::Degenerate(_)) => continue,
            Err(e) => return Err(e),
        };
        match i_beta_numeric(&y1, &y2, setting.beta, setting.d, cli.nodes.max(150)) {
            Ok(v) => {
                worst = worst.max((v - cf).abs() / cf.abs());
                tested += 1;
            }
            Err(Error::Degenerate(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    report.add_bound("max_rel_err", worst, 1e-6, 0.0);
    if setting.d == 3 && setting.beta == 0.0 {
        let v = i_beta_numeric(&[1.0, 0.2, 0.0], &[-0.3, 0.8, 0.1], 0.0, 3, cli.nodes.max(60))?;
        report.add_check("d3_beta0_value", v, 2.0 * std::f64::consts::PI, 1e-8);
    }
    report.finalize(start);
    Ok(report)
}

fn run_lorentz(cli: &Cli) -> Result<VerificationReport> {
    let start = std::time::Instant::now();
    let mut report = VerificationReport::new("lorentz_invariants");
    report.input("seed", cli.seed);
    report.input("n_boosts", 1000);
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let mut worst_q = 0.0f64;
    let mut worst_det = 0.0f64;
    let mut worst_base = 0.0f64;
    let mut worst_cone = 0.0f64;
    for _ in 0..1000 {
        let d = 2 + (rng.gen::<u32>() % 4) as usize;
        // random timelike (tau, xi)
        let mut xi = rand_nonzero(&mut rng, d);
        let tau: f64 = rng.gen_range(1.0..3.0);
        let nx: f64 = xi.iter().map(|x| x * x).sum::<f64>().sqrt();
        let target: f64 = rng.gen_range(0.0..0.95) * tau;
        for c in &mut xi {
            *c *= target / nx;
        }
        let boost = boost_for(tau, &xi)?;
        // Minkowski-form preservation
        let w = MinkowskiVector::new(rng.gen_range(-2.0..2.0), rand_nonzero(&mut rng, d));
        let img = boost_apply(&boost, &w);
        worst_q = worst_q
            .max((img.q_form() - w.q_form()).abs() / w.q_form().abs().max(1.0));
        worst_det = worst_det.max((boost_determinant(&boost) - 1.0).abs());
        // base point ((tau^2-|xi|^2)^{1/2}, 0) -> (tau, xi)
        let base = MinkowskiVector::new((tau * tau - target * target).sqrt(), vec![0.0; d]);
        let mapped = boost_apply(&boost, &base);
        let mut gap = (mapped.t - tau).abs();
        for (a, b) in mapped.x.iter().zip(&xi) {
            gap = gap.max((a - b).abs());
        }
        worst_base = worst_base.max(gap / tau);
        // cone identity
        let y1 = rand_nonzero(&mut rng, d);
        let y2 = rand_nonzero(&mut rng, d);
        let x = rand_nonzero(&mut rng, d);
        match lemma32_check(&y1, &y2, &x) {
            Ok(rec) => {
                worst_cone = worst_cone.max(
                    (rec.lhs - rec.predicted).abs() / rec.predicted.abs().max(1.0),
                );
            }
            Err(Error::Degenerate(_)) => {}
            Err(e) => return Err(e),
        }
    }
    report.add_bound("q_form_rel_err", worst_q, 1e-10, 0.0);
    report.add_bound("det_gap", worst_det, 1e-10, 0.0);
    report.add_bound("base_point_rel_err", worst_base, 1e-12, 0.0);
    report.add_bound("cone_identity_rel_err", worst_cone, 1e-10, 0.0);
    report.finalize(start);
    Ok(report)
}

fn run_sphere(cli: &Cli, setting: &Setting, opts: &SuiteOpts) -> Result<Vec<VerificationReport>> {
    let lambda = 3.0 - setting.df() - 4.0 * setting.beta;
    let mut reports = Vec::new();
    if lambda < 0.0 && lambda >= -2.0 {
        let e1 = {
            let mut v = vec![0.0; setting.d];
            v[0] = 1.0;
            v
        };
        let trials = vec![
            SphericalFunction::constant(setting.d, 1.0),
            SphericalFunction::zonal(setting.d, e1.clone(), |t| 1.0 + 0.5 * t),
            SphericalFunction::zonal(setting.d, e1, |t| (0.7 * t).exp()),
        ];
        reports.push(verify_lemma21(setting, &trials, opts)?);
    }
    if lambda > 0.0 && lambda < setting.df() - 1.0 {
        let (f, g) = data_pair(cli, setting.d)?;
        reports.push(verify_hls(setting, &f, &g, opts)?);
    }
    if setting.beta > setting.beta_d() && setting.beta <= (5.0 - setting.df()) / 4.0 {
        let (f, g) = data_pair(cli, setting.d)?;
        reports.push(verify_corollary14(setting, &f, &g, opts)?);
    }
    if reports.is_empty() {
        return Err(Error::Usage(format!(
            "no sphere inequality applies at beta = {} in dimension {}: lambda = {lambda} \
             is outside [-2, 0) and (0, d-1), and beta is outside (beta_d, (5-d)/4]",
            setting.beta, setting.d
        )));
    }
    Ok(reports)
}

/// Run the parsed configuration; returns the process exit code.
pub fn run(cli: &Cli) -> Result<i32> {
    let setting = Setting::new(cli.dim, cli.beta)?;
    let opts = suite_opts(cli);
    match &cli.command {
        Command::Constants => {
            let mut sink = Sink::new(cli, "constants");
            let table = constant_table(&setting);
            match cli.format {
                FormatArg::Json => {
                    let body: Vec<String> = table
                        .iter()
                        .map(|e| format!("  \"{}\": {:.16e}", e.name, e.value))
                        .collect();
                    sink.push(&format!("{{\n{}\n}}", body.join(",\n")));
                }
                FormatArg::Csv => {
                    sink.push("name,value,log_value");
                    for e in &table {
                        sink.push(&format!("{},{:.16e},{:.16e}", e.name, e.value, e.log_value));
                    }
                }
                FormatArg::Text => {
                    sink.push(&format!(
                        "constants at d = {}, beta = {}",
                        setting.d, setting.beta
                    ));
                    for e in &table {
                        sink.push(&format!("  {:<24} = {:.12e}", e.name, e.value));
                    }
                }
            }
            sink.flush()?;
            Ok(0)
        }
        Command::Lemma31 => {
            let report = run_lemma31(cli, &setting)?;
            let mut sink = Sink::new(cli, "lemma31");
            emit_report(&report, cli.format, &mut sink);
            sink.flush()?;
            Ok(exit_code(std::slice::from_ref(&report)))
        }
        Command::Lorentz => {
            let report = run_lorentz(cli)?;
            let mut sink = Sink::new(cli, "lorentz");
            emit_report(&report, cli.format, &mut sink);
            sink.flush()?;
            Ok(exit_code(std::slice::from_ref(&report)))
        }
        Command::Verify => {
            let (f, g) = data_pair(cli, setting.d)?;
            let report = verify_theorem(&setting, &f, &g, cli.mode.sign_mode(), &opts)?;
            let mut sink = Sink::new(cli, "verify");
            emit_report(&report, cli.format, &mut sink);
            sink.flush()?;
            Ok(exit_code(std::slice::from_ref(&report)))
        }
        Command::Radial => {
            let (f, g) = data_pair(cli, setting.d)?;
            let report = verify_radial_corollary(&setting, &f, &g, cli.mode.sign_mode(), &opts)?;
            let mut sink = Sink::new(cli, "radial");
            emit_report(&report, cli.format, &mut sink);
            sink.flush()?;
            Ok(exit_code(std::slice::from_ref(&report)))
        }
        Command::Sphere => {
            let reports = run_sphere(cli, &setting, &opts)?;
            let mut sink = Sink::new(cli, "sphere");
            for r in &reports {
                emit_report(r, cli.format, &mut sink);
            }
            sink.flush()?;
            Ok(exit_code(&reports))
        }
        Command::Counterexample => {
            let deltas: Vec<f64> = (7..=14).map(|k| 2f64.powi(-k)).collect();
            let scan = counterexample_scan(&setting, &deltas, cli.nodes.max(60))?;
            let mut sink = Sink::new(cli, "counterexample");
            emit_report(&scan.report, cli.format, &mut sink);
            for s in [&scan.i1, &scan.i2] {
                let rendered = match cli.format {
                    FormatArg::Json => scan_to_json(s),
                    FormatArg::Csv => scan_to_csv(s),
                    FormatArg::Text => scan_to_text(s),
                };
                sink.push(&rendered);
            }
            sink.flush()?;
            Ok(exit_code(std::slice::from_ref(&scan.report)))
        }
        Command::Search { params, budget } => {
            let report =
                extremiser_search(&setting, cli.mode.sign_mode(), *params, cli.seed, *budget)?;
            let mut sink = Sink::new(cli, "search");
            emit_report(&report, cli.format, &mut sink);
            sink.flush()?;
            Ok(exit_code(std::slice::from_ref(&report)))
        }
        Command::All => run_all(cli),
    }
}

/// The full verification grid with a summary matrix.
fn run_all(cli: &Cli) -> Result<i32> {
    let mut sink = Sink::new(cli, "all");
    let mut reports: Vec<VerificationReport> = Vec::new();
    let mut summary: Vec<String> = Vec::new();
    let push = |r: VerificationReport,
                    reports: &mut Vec<VerificationReport>,
                    summary: &mut Vec<String>,
                    label: String| {
        summary.push(format!(
            "{:<40} {}",
            label,
            if r.passed {
                "PASS"
            } else if r.inconclusive {
                "INCONCLUSIVE"
            } else {
                "FAIL"
            }
        ));
        reports.push(r);
    };

    let lorentz = run_lorentz(cli)?;
    push(lorentz, &mut reports, &mut summary, "lorentz".into());

    for d in [2usize, 3, 4, 5] {
        let mut betas = vec![0.0, 0.25, 0.5, (3.0 - d as f64) / 4.0];
        betas.sort_by(f64::total_cmp);
        betas.dedup();
        for beta in betas {
            if beta <= (1.0 - d as f64) / 4.0 {
                continue;
            }
            let setting = Setting::new(d, beta)?;
            let sub = Cli {
                command: Command::Lemma31,
                dim: d,
                beta,
                ..clone_flags(cli)
            };
            let r = run_lemma31(&sub, &setting)?;
            push(r, &mut reports, &mut summary, format!("lemma31 d={d} beta={beta}"));
        }
    }

    let opts = suite_opts(cli);
    for (d, beta) in [(3usize, 0.0f64), (2, 0.25), (3, 0.5), (4, 0.0)] {
        let setting = Setting::new(d, beta)?;
        let f = parse_preset("foschi", d)?;
        for mode in [SignMode::PlusMinus, SignMode::PlusPlus] {
            let r = verify_theorem(&setting, &f, &f, mode, &opts)?;
            push(
                r,
                &mut reports,
                &mut summary,
                format!("theorem {} d={d} beta={beta}", mode.as_str()),
            );
        }
        let r = verify_radial_corollary(&setting, &f, &f, SignMode::PlusMinus, &opts)?;
        push(r, &mut reports, &mut summary, format!("radial d={d} beta={beta}"));
    }

    {
        let setting = Setting::new(3, 0.0)?;
        let g = parse_preset("gaussian", 3)?;
        let r = verify_theorem(&setting, &g, &g, SignMode::PlusMinus, &opts)?;
        push(r, &mut reports, &mut summary, "theorem gaussian strictness".into());
    }

    for (d, beta, label) in [
        (3usize, 0.15f64, "lemma21 d=3"),
        (4, -0.3, "hls d=4"),
        (3, -0.1, "hls d=3"),
    ] {
        let setting = Setting::new(d, beta)?;
        let sub = Cli {
            command: Command::Sphere,
            dim: d,
            beta,
            ..clone_flags(cli)
        };
        for r in run_sphere(&sub, &setting, &opts)? {
            let tag = format!("{label} ({})", r.name);
            push(r, &mut reports, &mut summary, tag);
        }
    }

    {
        let setting = Setting::new(3, -0.25)?;
        let deltas: Vec<f64> = (7..=14).map(|k| 2f64.powi(-k)).collect();
        let scan = counterexample_scan(&setting, &deltas, cli.nodes.max(60))?;
        push(scan.report, &mut reports, &mut summary, "counterexample d=3".into());
    }

    {
        let setting = Setting::new(3, 0.0)?;
        let r = extremiser_search(&setting, SignMode::PlusMinus, 4, cli.seed, 500)?;
        push(r, &mut reports, &mut summary, "search d=3 beta=0".into());
    }

    for r in &reports {
        emit_report(r, cli.format, &mut sink);
    }
    sink.push("summary:");
    for line in &summary {
        sink.push(&format!("  {line}"));
    }
    sink.flush()?;
    Ok(exit_code(&reports))
}

fn clone_flags(cli: &Cli) -> Cli {
    Cli {
        command: Command::Constants,
        dim: cli.dim,
        beta: cli.beta,
        mode: cli.mode,
        data: cli.data.clone(),
        data2: cli.data2.clone(),
        tol: cli.tol,
        nodes: cli.nodes,
        seed: cli.seed,
        out: cli.out.clone(),
        format: cli.format,
    }
}

/// Map library errors to process exit codes per the CLI contract.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) | Error::Domain(_) => 2,
        _ => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    #[test]
    fn parses_basic_invocations() {
        let cli = Cli::parse_from(["bilwave", "verify", "--dim", "3", "--beta", "0", "--mode", "pm"]);
        assert!(matches!(cli.command, Command::Verify));
        assert_eq!(cli.dim, 3);
        let cli = Cli::parse_from(["bilwave", "search", "--params", "4", "--budget", "100"]);
        match cli.command {
            Command::Search { params, budget } => {
                assert_eq!(params, 4);
                assert_eq!(budget, 100);
            }
            _ => panic!(),
        }
        let cli = Cli::parse_from(["bilwave", "sphere", "--beta", "-0.3", "--dim", "4"]);
        assert_eq!(cli.beta, -0.3);
        assert!(matches!(cli.command, Command::Sphere));
    }

    #[test]
    fn lemma31_command_passes() {
        let cli = Cli::parse_from(["bilwave", "lemma31", "--nodes", "80", "--seed", "7"]);
        let setting = Setting::new(3, 0.0).unwrap();
        let r = run_lemma31(&cli, &setting).unwrap();
        assert!(r.passed, "{:?}", r.rel_errors);
    }

    #[test]
    fn lorentz_command_passes() {
        let cli = Cli::parse_from(["bilwave", "lorentz", "--seed", "5"]);
        let r = run_lorentz(&cli).unwrap();
        assert!(r.passed, "{:?}", r.rel_errors);
    }

    #[test]
    fn usage_errors_name_the_condition() {
        let cli = Cli::parse_from(["bilwave", "verify", "--dim", "3", "--beta", "-0.7"]);
        match run(&cli) {
            Err(e) => {
                assert_eq!(error_exit_code(&e), 2);
                assert!(e.to_string().contains("beta"), "{e}");
            }
            Ok(_) => panic!("expected a usage error"),
        }
    }
}
