//! Suite orchestration and report serialization for the `zetaline` binary.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::constants::{self, EULER_GAMMA, KAPPA1, PI_SQ_OVER_12, STIELTJES_GAMMA1};
use crate::integral_reps::{
    agreement_records, corollary_integral_with_tol, format_omega, nu_via_critical_line,
    nu_via_three_halves_line, psi_integral, sign_convention_check, three_methods, CorollaryCase,
    Line,
};
use crate::nu_series::{nu_direct, OmegaArgument, SeriesConfig};
use crate::proof_checks::{
    arc_integral_decay, contour_assembly_check_with, i_r_decay_check, i_r_integral,
    i_r_integral_direct, kernel_identity_errors, residue_double_pole, residue_grid, residue_record,
    sin_bound_check, zeta_growth_on_arc, ASSEMBLY_TOL, MAX_ARC_RADIUS, RESIDUE_TOL,
};
use crate::quadrature::QuadratureConfig;
use crate::record::complex_json;
use crate::special::{eta_oracle, zeta_complex};
use crate::{Complex, Error, EvalResult, Result, VerificationRecord};

pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_CROSS_COUNT: usize = 20;
pub const DEFAULT_EXTENSION_COUNT: usize = 10;
pub const DEFAULT_R_MAX: u32 = 50;
/// Nominal threshold for cross-method agreement.
pub const CROSS_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Nu,
    Zeta,
    Constants,
    VerifyCorollary,
    VerifyCross,
    VerifyProof,
    VerifyAll,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NuMethod {
    #[default]
    Series,
    HalfLine,
    ThreeHalves,
    All,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZetaMethod {
    #[default]
    Em,
    Eta,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub omega: Option<Complex>,
    pub s: Option<Complex>,
    pub tol: f64,
    pub seed: u64,
    pub count: usize,
    pub r_max: u32,
    pub format: Format,
    /// Where the report goes; not echoed, so identical runs to different files match.
    #[serde(skip)]
    pub output_path: Option<PathBuf>,
    pub nu_method: NuMethod,
    pub zeta_method: ZetaMethod,
    pub max_nodes: usize,
    pub trunc_x: Option<f64>,
    pub timestamp: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            omega: None,
            s: None,
            tol: DEFAULT_TOL,
            seed: DEFAULT_SEED,
            count: DEFAULT_CROSS_COUNT,
            r_max: DEFAULT_R_MAX,
            format: Format::Text,
            output_path: None,
            nu_method: NuMethod::Series,
            zeta_method: ZetaMethod::Em,
            max_nodes: 1 << 17,
            trunc_x: None,
            timestamp: false,
        }
    }

    /// Quadrature settings derived from the run tolerance.
    pub fn quadrature(&self) -> QuadratureConfig {
        QuadratureConfig {
            tol: (self.tol / 10.0).clamp(1e-13, 1e-3),
            truncation_x: self.trunc_x,
            max_nodes: self.max_nodes,
            ..Default::default()
        }
    }

    /// A record's threshold: its nominal value, tightened by the run tolerance.
    pub fn record_tol(&self, nominal: f64) -> f64 {
        nominal.min(self.tol)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

impl Summary {
    pub fn of(records: &[VerificationRecord]) -> Self {
        let passed = records.iter().filter(|r| r.pass).count();
        Summary {
            total: records.len(),
            passed,
            failed: records.len() - passed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportBundle {
    pub version: String,
    pub config: RunConfig,
    pub summary: Summary,
    pub records: Vec<VerificationRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

impl ReportBundle {
    pub fn new(config: RunConfig, records: Vec<VerificationRecord>) -> Self {
        ReportBundle {
            version: TOOLKIT_VERSION.to_string(),
            summary: Summary::of(&records),
            config,
            records,
            timestamp: None,
        }
    }
}

/// One evaluated quantity in a `nu`, `zeta` or `constants` report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalRow {
    pub label: String,
    #[serde(with = "complex_json")]
    pub value: Complex,
    pub err_estimate: f64,
    pub method: String,
    pub terms: u64,
    pub nodes: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub digits: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

impl EvalRow {
    fn from_result(label: impl Into<String>, r: &EvalResult) -> Self {
        EvalRow {
            label: label.into(),
            value: r.value,
            err_estimate: r.err_estimate,
            method: r.method.as_str().to_string(),
            terms: r.work.terms,
            nodes: r.work.nodes,
            digits: None,
            provenance: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub version: String,
    pub config: RunConfig,
    pub rows: Vec<EvalRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum RunOutput {
    Verification(ReportBundle),
    Evaluation(EvaluationReport),
}

impl RunOutput {
    /// Nonzero only for verification runs with failed records.
    pub fn failed(&self) -> usize {
        match self {
            RunOutput::Verification(b) => b.summary.failed,
            RunOutput::Evaluation(_) => 0,
        }
    }

    pub fn set_timestamp(&mut self, t: u64) {
        match self {
            RunOutput::Verification(b) => b.timestamp = Some(t),
            RunOutput::Evaluation(e) => e.timestamp = Some(t),
        }
    }
}

/// 64-bit linear congruential generator shared by every implementation of
/// the cross sweeps: `state = state * 6364136223846793005 + 1442695040888963407`,
/// uniform draw `(state >> 11) / 2^53` taken after each step.
#[derive(Clone, Debug)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub const MULTIPLIER: u64 = 6364136223846793005;
    pub const INCREMENT: u64 = 1442695040888963407;

    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(Self::MULTIPLIER)
            .wrapping_add(Self::INCREMENT);
        self.state
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

/// `count` points with `Re` uniform in `(re_lo, re_hi)` and `Im` in `[-2, 2]`,
/// drawn as (re, im) pairs.
pub fn sample_omegas(seed: u64, count: usize, re_lo: f64, re_hi: f64) -> Vec<Complex> {
    let mut rng = Lcg::new(seed);
    (0..count)
        .map(|_| {
            let re = rng.uniform(re_lo, re_hi);
            let im = rng.uniform(-2.0, 2.0);
            Complex::new(re, im)
        })
        .collect()
}

/// The main cross-method sweep: `Re omega in (-0.4, 3)`.
pub fn cross_sweep_omegas(seed: u64, count: usize) -> Vec<Complex> {
    sample_omegas(seed, count, -0.4, 3.0)
}

/// The 3/2-line extension set: `Re omega in (-0.45, -0.05)`, seeded with `seed + 1`.
pub fn extension_omegas(seed: u64, count: usize) -> Vec<Complex> {
    sample_omegas(seed.wrapping_add(1), count, -0.45, -0.05)
}

/// A record standing in for a check whose computation failed; never passes.
fn error_record(id: impl Into<String>, err: &Error) -> VerificationRecord {
    let lhs = match err {
        Error::NoConvergence { best, .. } if best.re.is_finite() && best.im.is_finite() => *best,
        _ => Complex::new(0.0, 0.0),
    };
    VerificationRecord::new(
        id,
        lhs,
        Complex::new(0.0, 0.0),
        -1.0,
        format!("error: {err}"),
    )
}

fn push(records: &mut Vec<VerificationRecord>, id: &str, r: Result<VerificationRecord>) {
    match r {
        Ok(rec) => records.push(rec),
        Err(e) => records.push(error_record(id, &e)),
    }
}

pub fn corollary_suite(cfg: &RunConfig) -> Vec<VerificationRecord> {
    let q = cfg.quadrature();
    let mut out = Vec::with_capacity(5);
    for case in CorollaryCase::ALL {
        let tol = cfg.record_tol(case.nominal_tol());
        push(
            &mut out,
            &format!("corollary.{}", case.index()),
            corollary_integral_with_tol(case, &q, tol),
        );
    }
    out
}

/// `2 int_0^1 (psi(x+1)+gamma)/x dx` against the fifth closed-form integral.
pub fn psi_consistency(cfg: &RunConfig) -> Result<VerificationRecord> {
    let q = cfg.quadrature();
    let case5 = corollary_integral_with_tol(CorollaryCase::Five, &q, 1.0)?;
    let psi = psi_integral(&q)?;
    Ok(VerificationRecord::new(
        "corollary.5-psi",
        case5.lhs,
        psi.value * 2.0,
        cfg.record_tol(1e-8),
        "int zeta(3/2+ix)/((1/2+ix) cosh(pi x)) dx = 2 int_0^1 (psi(x+1)+gamma)/x dx",
    ))
}

pub fn sign_suite(cfg: &RunConfig) -> Vec<VerificationRecord> {
    let q = cfg.quadrature();
    let cases = [
        (Line::Half, Complex::new(0.0, 0.0)),
        (Line::Half, Complex::new(1.0, 1.0)),
        (Line::ThreeHalves, Complex::new(-1.0, 0.0)),
    ];
    let mut out = Vec::new();
    for (line, w) in cases {
        let id = format!("sign.{line}.{}", format_omega(w));
        push(
            &mut out,
            &id,
            sign_convention_check(line, &OmegaArgument::new(w), &q),
        );
    }
    out
}

pub fn cross_suite(cfg: &RunConfig) -> Vec<VerificationRecord> {
    let q = cfg.quadrature();
    let tol = cfg.record_tol(CROSS_TOL);
    let mut out = Vec::new();
    for (k, w) in cross_sweep_omegas(cfg.seed, cfg.count)
        .into_iter()
        .enumerate()
    {
        let omega = OmegaArgument::new(w);
        match three_methods(&omega, &q) {
            Ok(m) => out.extend(agreement_records(&format!("cross.{k}"), &omega, &m, tol)),
            Err(e) => out.push(error_record(format!("cross.{k}"), &e)),
        }
    }
    let mut extension = extension_omegas(cfg.seed, DEFAULT_EXTENSION_COUNT);
    extension.push(Complex::new(-1.0, 0.0));
    for (k, w) in extension.into_iter().enumerate() {
        let omega = OmegaArgument::new(w);
        let label = format!("extension.{k}[w={}]", format_omega(w));
        let pair = nu_via_three_halves_line(&omega, &q)
            .and_then(|a| nu_direct(&omega, &SeriesConfig::default()).map(|b| (a, b)));
        match pair {
            Ok((a, b)) => out.push(VerificationRecord::new(
                label,
                a.value,
                b.value,
                tol + a.err_estimate + b.err_estimate,
                "3/2-line integral = direct series",
            )),
            Err(e) => out.push(error_record(label, &e)),
        }
    }
    let minus_one = OmegaArgument::real(-1.0);
    let closed = KAPPA1 + PI_SQ_OVER_12 - EULER_GAMMA * EULER_GAMMA / 2.0 - STIELTJES_GAMMA1;
    push(
        &mut out,
        "extension.closed-form[w=-1]",
        nu_via_three_halves_line(&minus_one, &q).map(|a| {
            VerificationRecord::new(
                "extension.closed-form[w=-1]",
                a.value,
                Complex::new(closed, 0.0),
                tol,
                "nu(-1) = kappa1 + pi^2/12 - gamma^2/2 - gamma1",
            )
        }),
    );
    out
}

/// Assembly grid: `omega in {0, 1, 0.5+0.5i}`, `R in {5, 10}`.
pub fn assembly_grid() -> Vec<(Complex, u32)> {
    let omegas = [
        Complex::new(0.0, 0.0),
        Complex::new(1.0, 0.0),
        Complex::new(0.5, 0.5),
    ];
    omegas
        .iter()
        .flat_map(|&w| [5u32, 10].map(|r| (w, r)))
        .collect()
}

pub fn proof_suite(cfg: &RunConfig) -> Vec<VerificationRecord> {
    let r_max = cfg.r_max.max(1);
    let q = QuadratureConfig {
        tol: 1e-12,
        ..cfg.quadrature()
    };
    let mut out = Vec::new();

    let radii: Vec<u32> = (1..=r_max.min(10)).collect();
    let points = 1000 / radii.len();
    let (identity, symmetry) = kernel_identity_errors(&radii, points);
    out.push(VerificationRecord::real(
        "kernel.identity",
        identity,
        0.0,
        1e-12,
        "1/|cosh(pi R e^{i phi})| = sqrt2 / sqrt(cosh(2 pi R cos phi) + cos(2 pi R sin phi))",
    ));
    out.push(VerificationRecord::real(
        "kernel.symmetry",
        symmetry,
        0.0,
        1e-12,
        "kernel symmetric about phi = pi/2",
    ));

    for r in 1..=r_max {
        push(&mut out, &format!("sandwich[R={r}]"), sin_bound_check(r));
        let id = format!("ir.two-paths[R={r}]");
        let rec = i_r_integral(r, &q).and_then(|a| {
            i_r_integral_direct(r, &q).map(|b| {
                VerificationRecord::real(
                    id.clone(),
                    a,
                    b,
                    1e-10,
                    "I_R via doubled half-interval form = I_R via direct |cosh| over [0, pi]",
                )
            })
        });
        push(&mut out, &id, rec);
    }
    if r_max >= 10 {
        match i_r_decay_check(r_max) {
            Ok(recs) => out.extend(recs),
            Err(e) => out.push(error_record("ir-decay", &e)),
        }
    }

    let growth_radii: Vec<u32> = [5u32, 10, 20, 40]
        .into_iter()
        .filter(|&r| r <= r_max)
        .collect();
    if growth_radii.len() >= 2 {
        let ratios: Result<Vec<f64>> = growth_radii
            .iter()
            .map(|&r| zeta_growth_on_arc(r).map(|g| g / (r as f64).sqrt()))
            .collect();
        match ratios {
            Ok(v) => out.push(VerificationRecord::real(
                "zeta-growth.ratio",
                v.iter().cloned().fold(0.0, f64::max),
                0.0,
                2.0 * v[0],
                "max_phi |zeta(1/2 - i R e^{i phi})| / sqrt(R) <= 2x its value at R = 5",
            )),
            Err(e) => out.push(error_record("zeta-growth.ratio", &e)),
        }
    }
    let top = r_max.min(MAX_ARC_RADIUS);
    push(
        &mut out,
        "zeta-growth.real-axis",
        zeta_complex(Complex::new(0.5 + top as f64, 0.0), 1e-14).and_then(|z| {
            zeta_complex(Complex::new(1.5, 0.0), 1e-14).map(|bound| {
                VerificationRecord::real(
                    format!("zeta-growth.real-axis[R={top}]"),
                    z.value.norm(),
                    0.0,
                    bound.value.re,
                    "|zeta(1/2 + R)| <= zeta(3/2)",
                )
            })
        }),
    );

    if r_max >= 20 {
        let zero = OmegaArgument::real(0.0);
        let arcs: Result<Vec<f64>> = [5u32, 10, 20]
            .iter()
            .map(|&r| arc_integral_decay(r, &zero, &q))
            .collect();
        match arcs {
            Ok(v) => {
                let violations = v.windows(2).filter(|w| !(w[1] < w[0])).count();
                out.push(VerificationRecord::real(
                    "arc.decreasing[R=5,10,20]",
                    violations as f64,
                    0.0,
                    0.0,
                    "|int_{C_R} F dz| strictly decreasing over R = 5, 10, 20",
                ));
                out.push(VerificationRecord::real(
                    "arc.envelope[R=20]",
                    v[2],
                    0.0,
                    v[0] * 0.5 * 4.0,
                    "|int_{C_20} F dz| <= 4 (5/20)^{1/2} |int_{C_5} F dz|",
                ));
            }
            Err(e) => out.push(error_record("arc.decay", &e)),
        }
    }

    let residue_tol = cfg.record_tol(RESIDUE_TOL);
    for case in residue_grid() {
        match residue_record(case) {
            Ok(mut rec) => {
                rec = VerificationRecord::new(rec.id, rec.lhs, rec.rhs, residue_tol, rec.reference);
                out.push(rec);
            }
            Err(e) => out.push(error_record("residue", &e)),
        }
    }

    let assembly_tol = cfg.record_tol(ASSEMBLY_TOL);
    let mut grid = assembly_grid();
    if let Some(w) = cfg.omega {
        push(
            &mut out,
            "residue.double[user]",
            residue_double_pole(&OmegaArgument::new(w)).map(|rec| {
                VerificationRecord::new(rec.id, rec.lhs, rec.rhs, residue_tol, rec.reference)
            }),
        );
        grid.push((w, 10));
    }
    for (w, r) in grid.into_iter().filter(|&(_, r)| r <= r_max) {
        let id = format!("assembly[w={},R={r}]", format_omega(w));
        push(
            &mut out,
            &id,
            contour_assembly_check_with(&OmegaArgument::new(w), r, r, &q, assembly_tol),
        );
    }
    out
}

fn nu_rows(cfg: &RunConfig) -> Result<Vec<EvalRow>> {
    let w = cfg
        .omega
        .ok_or_else(|| Error::Config("nu requires --omega".into()))?;
    let omega = OmegaArgument::new(w);
    let q = cfg.quadrature();
    let series_cfg = SeriesConfig::default();
    let mut rows = Vec::new();
    if matches!(cfg.nu_method, NuMethod::Series | NuMethod::All) {
        rows.push(EvalRow::from_result(
            "series",
            &nu_direct(&omega, &series_cfg)?,
        ));
    }
    if matches!(cfg.nu_method, NuMethod::HalfLine | NuMethod::All) {
        match nu_via_critical_line(&omega, &q) {
            Ok(r) => rows.push(EvalRow::from_result("half-line", &r)),
            // outside Re omega > -1/2 the other methods still apply
            Err(Error::HalfLineDomain(_)) if cfg.nu_method == NuMethod::All => {}
            Err(e) => return Err(e),
        }
    }
    if matches!(cfg.nu_method, NuMethod::ThreeHalves | NuMethod::All) {
        match nu_via_three_halves_line(&omega, &q) {
            Ok(r) => rows.push(EvalRow::from_result("three-halves", &r)),
            Err(Error::ThreeHalvesLineDomain(_)) if cfg.nu_method == NuMethod::All => {}
            Err(e) => return Err(e),
        }
    }
    Ok(rows)
}

fn zeta_rows(cfg: &RunConfig) -> Result<Vec<EvalRow>> {
    let s = cfg
        .s
        .ok_or_else(|| Error::Config("zeta requires --s".into()))?;
    let tol = cfg.tol.clamp(1e-14, 1e-3);
    let r = match cfg.zeta_method {
        ZetaMethod::Em => zeta_complex(s, tol)?,
        ZetaMethod::Eta => eta_oracle(s, tol)?,
    };
    Ok(vec![EvalRow::from_result(
        format!("zeta({})", format_omega(s)),
        &r,
    )])
}

fn constant_rows() -> Vec<EvalRow> {
    constants::TABLE
        .iter()
        .map(|c| EvalRow {
            label: c.name.to_string(),
            value: Complex::new(c.value, 0.0),
            err_estimate: 0.0,
            method: "literal".to_string(),
            terms: 0,
            nodes: 0,
            digits: Some(c.digits.to_string()),
            provenance: Some(c.provenance.as_str().to_string()),
        })
        .collect()
}

/// Dispatches one command. Suite computations that fail become failing
/// records; only argument problems surface as errors.
pub fn run(config: &RunConfig) -> Result<RunOutput> {
    if !(config.tol > 0.0 && config.tol.is_finite()) {
        return Err(Error::Config(format!(
            "tolerance {} must be > 0",
            config.tol
        )));
    }
    config.quadrature().validate()?;
    let records = match config.command {
        Command::Nu | Command::Zeta | Command::Constants => {
            let rows = match config.command {
                Command::Nu => nu_rows(config)?,
                Command::Zeta => zeta_rows(config)?,
                _ => constant_rows(),
            };
            return Ok(RunOutput::Evaluation(EvaluationReport {
                version: TOOLKIT_VERSION.to_string(),
                config: config.clone(),
                rows,
                timestamp: None,
            }));
        }
        Command::VerifyCorollary => corollary_suite(config),
        Command::VerifyCross => cross_suite(config),
        Command::VerifyProof => proof_suite(config),
        Command::VerifyAll => {
            let mut all = corollary_suite(config);
            push(&mut all, "corollary.5-psi", psi_consistency(config));
            all.extend(sign_suite(config));
            all.extend(cross_suite(config));
            all.extend(proof_suite(config));
            all
        }
    };
    Ok(RunOutput::Verification(ReportBundle::new(
        config.clone(),
        records,
    )))
}

/// `%.12g`-style rendering.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..12).contains(&exp) {
        let s = format!("{x:.11e}");
        let (mantissa, e) = s.split_once('e').unwrap_or((&s, "0"));
        return format!("{}e{}", trim_zeros(mantissa), e);
    }
    let decimals = (11 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `a+bi` with 12 significant digits in each part.
pub fn fmt_complex(z: Complex) -> String {
    let im = fmt_sig(z.im.abs());
    let sign = if z.im.is_sign_negative() && z.im != 0.0 {
        '-'
    } else {
        '+'
    };
    format!("{}{sign}{im}i", fmt_sig(z.re))
}

fn text_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<&str>, out: &mut String| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}", w = *w))
            .collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(header.to_vec(), &mut out);
    line(
        widths
            .iter()
            .map(|w| "-".repeat(*w))
            .collect::<Vec<_>>()
            .iter()
            .map(|s| s.as_str())
            .collect(),
        &mut out,
    );
    for row in rows {
        line(row.iter().map(|s| s.as_str()).collect(), &mut out);
    }
    out
}

/// Shortest round-trip decimal, switching to exponent form away from unity.
fn csv_num(x: f64) -> String {
    if x != 0.0 && x.is_finite() && !(1e-4..1e16).contains(&x.abs()) {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Config(format!("csv encoding failed: {e}"))
}

pub fn serialize(output: &RunOutput, format: Format) -> Result<Vec<u8>> {
    match (output, format) {
        (RunOutput::Verification(b), Format::Json) => {
            let mut bytes =
                serde_json::to_vec_pretty(b).map_err(|e| Error::Config(e.to_string()))?;
            bytes.push(b'\n');
            Ok(bytes)
        }
        (RunOutput::Evaluation(e), Format::Json) => {
            let mut bytes =
                serde_json::to_vec_pretty(e).map_err(|e| Error::Config(e.to_string()))?;
            bytes.push(b'\n');
            Ok(bytes)
        }
        (RunOutput::Verification(b), Format::Csv) => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "id",
                "lhs_re",
                "lhs_im",
                "rhs_re",
                "rhs_im",
                "abs_diff",
                "tol",
                "pass",
                "paper_ref",
            ])
            .map_err(csv_error)?;
            for r in &b.records {
                w.write_record([
                    r.id.clone(),
                    csv_num(r.lhs.re),
                    csv_num(r.lhs.im),
                    csv_num(r.rhs.re),
                    csv_num(r.rhs.im),
                    csv_num(r.abs_diff),
                    csv_num(r.tol),
                    r.pass.to_string(),
                    r.reference.clone(),
                ])
                .map_err(csv_error)?;
            }
            w.into_inner().map_err(|e| Error::Config(e.to_string()))
        }
        (RunOutput::Evaluation(e), Format::Csv) => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "label",
                "value_re",
                "value_im",
                "err_estimate",
                "method",
                "terms",
                "nodes",
                "digits",
                "provenance",
            ])
            .map_err(csv_error)?;
            for r in &e.rows {
                w.write_record([
                    r.label.clone(),
                    csv_num(r.value.re),
                    csv_num(r.value.im),
                    csv_num(r.err_estimate),
                    r.method.clone(),
                    r.terms.to_string(),
                    r.nodes.to_string(),
                    r.digits.clone().unwrap_or_default(),
                    r.provenance.clone().unwrap_or_default(),
                ])
                .map_err(csv_error)?;
            }
            w.into_inner().map_err(|e| Error::Config(e.to_string()))
        }
        (RunOutput::Verification(b), Format::Text) => {
            let rows: Vec<Vec<String>> = b
                .records
                .iter()
                .map(|r| {
                    vec![
                        r.id.clone(),
                        fmt_complex(r.lhs),
                        fmt_complex(r.rhs),
                        fmt_sig(r.abs_diff),
                        fmt_sig(r.tol),
                        if r.pass { "PASS" } else { "FAIL" }.to_string(),
                    ]
                })
                .collect();
            let mut out = text_table(&["id", "lhs", "rhs", "abs_diff", "tol", "pass"], &rows);
            let _ = writeln!(
                out,
                "\n{} records: {} passed, {} failed (zetaline {})",
                b.summary.total, b.summary.passed, b.summary.failed, b.version
            );
            Ok(out.into_bytes())
        }
        (RunOutput::Evaluation(e), Format::Text) => {
            let constants = e.rows.iter().any(|r| r.digits.is_some());
            let out = if constants {
                let rows: Vec<Vec<String>> = e
                    .rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.label.clone(),
                            fmt_sig(r.value.re),
                            r.digits.clone().unwrap_or_default(),
                            r.provenance.clone().unwrap_or_default(),
                        ]
                    })
                    .collect();
                text_table(&["name", "value", "digits", "provenance"], &rows)
            } else {
                let rows: Vec<Vec<String>> = e
                    .rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.label.clone(),
                            fmt_complex(r.value),
                            fmt_sig(r.err_estimate),
                            r.method.clone(),
                            r.terms.to_string(),
                            r.nodes.to_string(),
                        ]
                    })
                    .collect();
                text_table(
                    &["method", "value", "err_estimate", "via", "terms", "nodes"],
                    &rows,
                )
            };
            Ok(out.into_bytes())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lcg_is_reproducible() {
        let mut a = Lcg::new(42);
        let first = a.next_u64();
        assert_eq!(
            first,
            42u64
                .wrapping_mul(Lcg::MULTIPLIER)
                .wrapping_add(Lcg::INCREMENT)
        );
        let xs = sample_omegas(42, 20, -0.4, 3.0);
        assert_eq!(xs, sample_omegas(42, 20, -0.4, 3.0));
        assert!(xs
            .iter()
            .all(|w| w.re > -0.4 && w.re < 3.0 && w.im.abs() <= 2.0));
        let ext = extension_omegas(42, 10);
        assert!(ext.iter().all(|w| w.re > -0.45 && w.re < -0.05));
        assert_ne!(xs[0], sample_omegas(43, 1, -0.4, 3.0)[0]);
    }

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(0.577215664901532860), "0.577215664902");
        assert_eq!(fmt_sig(-2.0), "-2");
        assert_eq!(fmt_sig(1.5e-20), "1.5e-20");
        assert_eq!(fmt_sig(123456789.123456789), "123456789.123");
        assert_eq!(fmt_complex(Complex::new(1.0, -0.5)), "1-0.5i");
        assert_eq!(fmt_complex(Complex::new(-2.0, 0.0)), "-2+0i");
    }

    #[test]
    fn empty_bundle_json() {
        let b = ReportBundle::new(RunConfig::new(Command::VerifyCorollary), vec![]);
        let bytes = serialize(&RunOutput::Verification(b), Format::Json).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(v["summary"]["total"], 0);
        assert_eq!(v["summary"]["passed"], 0);
        assert_eq!(v["summary"]["failed"], 0);
        assert!(v["records"].as_array().unwrap().is_empty());
        assert!(v.get("timestamp").is_none());
    }

    #[test]
    fn record_json_schema() {
        let rec = VerificationRecord::real("x", 1.0, 1.0 + 1e-10, 1e-8, "1 = 1");
        let b = ReportBundle::new(RunConfig::new(Command::VerifyCorollary), vec![rec]);
        let bytes = serialize(&RunOutput::Verification(b), Format::Json).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
        let r = &v["records"][0];
        assert_eq!(r["pass"], true);
        assert!(r["abs_diff"].as_f64().unwrap() <= r["tol"].as_f64().unwrap());
        assert_eq!(r["lhs"]["re"], 1.0);
        assert_eq!(r["lhs"]["im"], 0.0);
        assert_eq!(r["paper_ref"], "1 = 1");
        let text = String::from_utf8(bytes).unwrap();
        let order = |hay: &str, keys: &[&str]| {
            let pos: Vec<usize> = keys
                .iter()
                .map(|k| hay.find(&format!("\"{k}\":")).unwrap())
                .collect();
            assert!(pos.windows(2).all(|w| w[0] < w[1]), "{keys:?} at {pos:?}");
        };
        order(&text, &["version", "config", "summary", "records"]);
        let rec = &text[text.find("\"records\":").unwrap()..];
        order(
            rec,
            &["id", "lhs", "rhs", "abs_diff", "tol", "pass", "paper_ref"],
        );
    }

    #[test]
    fn csv_layout() {
        let rec = VerificationRecord::real("a,b", 1.0, 2.0, 0.5, "q");
        let b = ReportBundle::new(RunConfig::new(Command::VerifyProof), vec![rec]);
        let text = String::from_utf8(serialize(&RunOutput::Verification(b), Format::Csv).unwrap())
            .unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "id,lhs_re,lhs_im,rhs_re,rhs_im,abs_diff,tol,pass,paper_ref"
        );
        assert_eq!(lines.next().unwrap(), "\"a,b\",1,0,2,0,1,0.5,false,q");
    }

    #[test]
    fn corollary_suite_at_loose_tolerance() {
        let mut cfg = RunConfig::new(Command::VerifyCorollary);
        cfg.tol = 1e-7;
        let out = run(&cfg).unwrap();
        let RunOutput::Verification(b) = out else {
            panic!()
        };
        assert_eq!(
            b.summary,
            Summary {
                total: 5,
                passed: 5,
                failed: 0
            }
        );
    }

    #[test]
    fn nu_all_methods_agree() {
        let mut cfg = RunConfig::new(Command::Nu);
        cfg.omega = Some(Complex::new(0.0, 0.0));
        cfg.nu_method = NuMethod::All;
        let RunOutput::Evaluation(e) = run(&cfg).unwrap() else {
            panic!()
        };
        assert_eq!(e.rows.len(), 3);
        for r in &e.rows {
            assert!((r.value.re - EULER_GAMMA).abs() < 1e-9, "{r:?}");
        }
        cfg.omega = None;
        assert!(run(&cfg).is_err());
    }

    #[test]
    fn proof_suite_smallest_sweep() {
        let mut cfg = RunConfig::new(Command::VerifyProof);
        cfg.r_max = 1;
        let RunOutput::Verification(b) = run(&cfg).unwrap() else {
            panic!()
        };
        assert_eq!(
            b.summary.failed,
            0,
            "{:?}",
            b.records.iter().filter(|r| !r.pass).collect::<Vec<_>>()
        );
        assert!(b.records.iter().any(|r| r.id == "sandwich[R=1]"));
        assert!(b.records.iter().any(|r| r.id == "ir.two-paths[R=1]"));
        assert!(!b.records.iter().any(|r| r.id.starts_with("sandwich[R=2")));
    }

    fn arb_record() -> impl Strategy<Value = VerificationRecord> {
        (
            "[a-z.\\[\\]=0-9]{1,12}",
            any::<f64>().prop_filter("finite", |x| x.is_finite()),
            -1e3f64..1e3,
            -1e3f64..1e3,
            -1e3f64..1e3,
            0.0f64..1.0,
            "[ -~]{0,30}",
        )
            .prop_map(|(id, a, b, c, d, tol, reference)| {
                VerificationRecord::new(id, Complex::new(a, b), Complex::new(c, d), tol, reference)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn json_round_trip_is_exact(records in proptest::collection::vec(arb_record(), 0..6), seed in any::<u64>(), tol in 1e-14f64..1e-3) {
            let mut cfg = RunConfig::new(Command::VerifyAll);
            cfg.seed = seed;
            cfg.tol = tol;
            cfg.omega = Some(Complex::new(0.25, -1.5));
            let bundle = ReportBundle::new(cfg, records);
            let bytes = serialize(&RunOutput::Verification(bundle.clone()), Format::Json).unwrap();
            let back: ReportBundle = serde_json::from_slice(&bytes).unwrap();
            prop_assert_eq!(&back, &bundle);
            for (x, y) in back.records.iter().zip(&bundle.records) {
                prop_assert_eq!(x.lhs.re.to_bits(), y.lhs.re.to_bits());
                prop_assert_eq!(x.abs_diff.to_bits(), y.abs_diff.to_bits());
            }
        }
    }
}
