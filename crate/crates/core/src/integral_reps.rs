//! `nu(omega)` as `sech`-weighted integrals of zeta along `Re s = 1/2` and
//! `Re s = 3/2`, and the closed-form values of five such integrals.

use std::fmt;

use crate::constants::{
    EULER_GAMMA, GLAISHER_A, KAPPA1, LN_TWO_PI, PI_SQ_OVER_6, STIELTJES_GAMMA1,
};
use crate::nu_series::{nu_direct, OmegaArgument, SeriesConfig};
use crate::quadrature::{
    integrate_finite, integrate_line, DecayClass, LineIntegrand, QuadratureConfig,
};
use crate::special::{digamma, zeta_complex, zeta_integer};
use crate::{Complex, Error, EvalResult, Method, Result, VerificationRecord, Work};

/// Vertical integration line `Re s = c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Line {
    Half,
    ThreeHalves,
}

impl Line {
    pub fn abscissa(self) -> f64 {
        match self {
            Line::Half => 0.5,
            Line::ThreeHalves => 1.5,
        }
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Line::Half => f.write_str("1/2"),
            Line::ThreeHalves => f.write_str("3/2"),
        }
    }
}

/// Which of `c + ix` / `c - ix` is fed to the integrand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

fn zeta_tol(cfg: &QuadratureConfig) -> f64 {
    (cfg.tol * 1e-3).clamp(1e-14, 1e-3)
}

/// `int zeta(c +- ix) / ((c +- ix + omega) cosh(pi x)) dx` over the real line.
pub fn line_integral(
    line: Line,
    sign: Sign,
    omega: Complex,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    let c = line.abscissa();
    let dir = match sign {
        Sign::Plus => 1.0,
        Sign::Minus => -1.0,
    };
    let shift = c + omega.re;
    if !(shift > 0.0) {
        return Err(Error::Domain(format!(
            "denominator c + ix + omega vanishes on the real line (omega = {omega})"
        )));
    }
    let ztol = zeta_tol(cfg);
    let integrand = LineIntegrand::new(
        move |x: f64| {
            let s = Complex::new(c, dir * x);
            match zeta_complex(s, ztol) {
                Ok(z) => z.value / (s + omega),
                Err(_) => Complex::new(f64::NAN, f64::NAN),
            }
        },
        DecayClass::PolynomialGrowth(1),
    );
    let r = integrate_line(&integrand, cfg)?;
    // zeta errors enter through int sech(pi x) / |c + ix + omega| dx <= 1 / shift
    let err = r.err_estimate + ztol / shift;
    Ok(EvalResult::new(r.value, err, Method::Quadrature, r.work))
}

/// `nu(omega) = -1/(omega+1)^2 + gamma/(omega+1) - (1/2) int zeta(1/2+ix)/((1/2+ix+omega) cosh pi x) dx`
/// for `Re omega > -1/2`.
pub fn nu_via_critical_line(omega: &OmegaArgument, cfg: &QuadratureConfig) -> Result<EvalResult> {
    if !omega.half_line_ok() {
        return Err(Error::HalfLineDomain(omega.value()));
    }
    let w = omega.value();
    let integral = line_integral(Line::Half, Sign::Plus, w, cfg)?;
    let shifted = w + 1.0;
    let value = -(shifted * shifted).inv() + EULER_GAMMA / shifted - integral.value * 0.5;
    let err = 0.5 * integral.err_estimate + 4.0 * f64::EPSILON * (value.norm() + 1.0);
    Ok(EvalResult::new(
        value,
        err,
        Method::IntegralHalfLine,
        integral.work,
    ))
}

/// `nu(omega) = (1/2) int zeta(3/2+ix)/((3/2+ix+omega) cosh pi x) dx` for
/// `Re omega > -3/2`.
pub fn nu_via_three_halves_line(
    omega: &OmegaArgument,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    if !omega.three_halves_ok() {
        return Err(Error::ThreeHalvesLineDomain(omega.value()));
    }
    let integral = line_integral(Line::ThreeHalves, Sign::Plus, omega.value(), cfg)?;
    Ok(EvalResult::new(
        integral.value * 0.5,
        0.5 * integral.err_estimate,
        Method::IntegralThreeHalvesLine,
        integral.work,
    ))
}

/// The five closed-form line integrals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorollaryCase {
    /// line 1/2, denominator 1/2 + ix: `-2`
    One,
    /// line 1/2, denominator 3/2 + ix: `ln 2pi - 5/2`
    Two,
    /// line 1/2, denominator 5/2 + ix: `ln 2pi - 4 ln A - 11/9`
    Three,
    /// line 3/2, denominator 3/2 + ix: `2 gamma`
    Four,
    /// line 3/2, denominator 1/2 + ix: `2 kappa1 + pi^2/6 - gamma^2 - 2 gamma1`
    Five,
}

impl CorollaryCase {
    pub const ALL: [CorollaryCase; 5] = [
        CorollaryCase::One,
        CorollaryCase::Two,
        CorollaryCase::Three,
        CorollaryCase::Four,
        CorollaryCase::Five,
    ];

    pub fn from_index(i: u8) -> Result<Self> {
        match i {
            1 => Ok(CorollaryCase::One),
            2 => Ok(CorollaryCase::Two),
            3 => Ok(CorollaryCase::Three),
            4 => Ok(CorollaryCase::Four),
            5 => Ok(CorollaryCase::Five),
            _ => Err(Error::Config(format!("closed-form case {i} not in 1..=5"))),
        }
    }

    pub fn index(self) -> u8 {
        self as u8 + 1
    }

    pub fn line(self) -> Line {
        match self {
            CorollaryCase::One | CorollaryCase::Two | CorollaryCase::Three => Line::Half,
            CorollaryCase::Four | CorollaryCase::Five => Line::ThreeHalves,
        }
    }

    /// Real part of the denominator at `x = 0`.
    pub fn shift(self) -> f64 {
        match self {
            CorollaryCase::One | CorollaryCase::Five => 0.5,
            CorollaryCase::Two | CorollaryCase::Four => 1.5,
            CorollaryCase::Three => 2.5,
        }
    }

    pub fn omega(self) -> f64 {
        self.shift() - self.line().abscissa()
    }

    pub fn closed_form(self) -> f64 {
        let g = EULER_GAMMA;
        match self {
            CorollaryCase::One => -2.0,
            CorollaryCase::Two => LN_TWO_PI - 2.5,
            CorollaryCase::Three => LN_TWO_PI - 4.0 * GLAISHER_A.ln() - 11.0 / 9.0,
            CorollaryCase::Four => 2.0 * g,
            CorollaryCase::Five => 2.0 * KAPPA1 + PI_SQ_OVER_6 - g * g - 2.0 * STIELTJES_GAMMA1,
        }
    }

    /// Agreement threshold for the record.
    pub fn nominal_tol(self) -> f64 {
        match self {
            CorollaryCase::Five => 1e-7,
            _ => 1e-8,
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            CorollaryCase::One => "int zeta(1/2+ix)/((1/2+ix) cosh(pi x)) dx = -2",
            CorollaryCase::Two => "int zeta(1/2+ix)/((3/2+ix) cosh(pi x)) dx = ln(2pi) - 5/2",
            CorollaryCase::Three => {
                "int zeta(1/2+ix)/((5/2+ix) cosh(pi x)) dx = ln(2pi) - 4 ln(A) - 11/9"
            }
            CorollaryCase::Four => "int zeta(3/2+ix)/((3/2+ix) cosh(pi x)) dx = 2 gamma",
            CorollaryCase::Five => {
                "int zeta(3/2+ix)/((1/2+ix) cosh(pi x)) dx = 2 kappa1 + pi^2/6 - gamma^2 - 2 gamma1"
            }
        }
    }
}

/// Imaginary residue tolerated before the real part alone is recorded.
pub const REALNESS_TOL: f64 = 1e-9;

fn realify(v: Complex) -> Complex {
    if v.im.abs() <= REALNESS_TOL {
        Complex::new(v.re, 0.0)
    } else {
        v
    }
}

pub fn corollary_integral(
    case: CorollaryCase,
    cfg: &QuadratureConfig,
) -> Result<VerificationRecord> {
    corollary_integral_with_tol(case, cfg, case.nominal_tol())
}

/// Computes one closed-form case with an explicit record tolerance. A
/// non-converged quadrature still yields a record built from its best
/// estimate.
pub fn corollary_integral_with_tol(
    case: CorollaryCase,
    cfg: &QuadratureConfig,
    tol: f64,
) -> Result<VerificationRecord> {
    let lhs = match line_integral(
        case.line(),
        Sign::Plus,
        Complex::new(case.omega(), 0.0),
        cfg,
    ) {
        Ok(r) => r.value,
        Err(Error::NoConvergence { best, .. }) => best,
        Err(e) => return Err(e),
    };
    Ok(VerificationRecord::new(
        format!("corollary.{}", case.index()),
        realify(lhs),
        Complex::new(case.closed_form(), 0.0),
        tol,
        case.statement(),
    ))
}

/// Width of the interval near 0 handled by the Taylor series.
pub const PSI_SERIES_CUTOFF: f64 = 1e-3;
const PSI_SERIES_TERMS: i64 = 12;

/// `(psi(1+x) + gamma) / x`, finite at 0 where it tends to `zeta(2)`.
pub fn psi_integrand(x: f64) -> Result<f64> {
    if x == 0.0 {
        return zeta_integer(2, 1e-14);
    }
    Ok((digamma(1.0 + x, 1e-17)? + EULER_GAMMA) / x)
}

/// `int_0^1 (psi(x+1) + gamma) / x dx`. On `[0, 1e-3]` the integrand's
/// series `sum_{k>=2} (-1)^k zeta(k) x^{k-2}` is integrated termwise.
pub fn psi_integral(cfg: &QuadratureConfig) -> Result<EvalResult> {
    let delta = PSI_SERIES_CUTOFF;
    let mut head = 0.0;
    let mut abs_head = 0.0;
    for k in 2..2 + PSI_SERIES_TERMS {
        let z = zeta_integer(k, 1e-14)?;
        let term = z * delta.powi((k - 1) as i32) / (k - 1) as f64;
        head += if k % 2 == 0 { term } else { -term };
        abs_head += term;
    }
    let next = 1.1 * delta.powi(PSI_SERIES_TERMS as i32 + 1) / (PSI_SERIES_TERMS + 1) as f64;

    let body = integrate_finite(|x| psi_integrand(x).unwrap_or(f64::NAN), delta, 1.0, cfg)?;
    let value = head + body.value.re;
    // digamma absolute error ~1e-15, divided by x >= delta
    let digamma_err = 1e-15 * (1.0 / delta).ln();
    let err = body.err_estimate + next + digamma_err + f64::EPSILON * abs_head;
    Ok(EvalResult::new(
        Complex::new(value, 0.0),
        err,
        Method::Quadrature,
        Work {
            terms: PSI_SERIES_TERMS as u64,
            nodes: body.work.nodes,
        },
    ))
}

/// Compares the `+ix` and `-ix` forms of a line integral; they agree by
/// the substitution `x -> -x`.
pub fn sign_convention_check(
    line: Line,
    omega: &OmegaArgument,
    cfg: &QuadratureConfig,
) -> Result<VerificationRecord> {
    let ok = match line {
        Line::Half => omega.half_line_ok(),
        Line::ThreeHalves => omega.three_halves_ok(),
    };
    if !ok {
        return Err(match line {
            Line::Half => Error::HalfLineDomain(omega.value()),
            Line::ThreeHalves => Error::ThreeHalvesLineDomain(omega.value()),
        });
    }
    let w = omega.value();
    let plus = line_integral(line, Sign::Plus, w, cfg)?;
    let minus = line_integral(line, Sign::Minus, w, cfg)?;
    Ok(VerificationRecord::new(
        format!("sign.{line}.{}", format_omega(w)),
        plus.value,
        minus.value,
        2.0 * cfg.tol,
        format!("int zeta({line}+ix)/(({line}+ix+w) cosh(pi x)) dx = same with -ix"),
    ))
}

/// Compact `re+imi` form used in record ids.
pub fn format_omega(w: Complex) -> String {
    if w.im == 0.0 {
        format!("{}", w.re)
    } else {
        format!("{}{:+}i", w.re, w.im)
    }
}

/// The three evaluations of `nu(omega)` used by the cross-method sweeps.
#[derive(Clone, Copy, Debug)]
pub struct ThreeMethods {
    pub series: EvalResult,
    pub half_line: Option<EvalResult>,
    pub three_halves: EvalResult,
}

pub fn three_methods(omega: &OmegaArgument, cfg: &QuadratureConfig) -> Result<ThreeMethods> {
    let series = nu_direct(omega, &SeriesConfig::default())?;
    let half_line = if omega.half_line_ok() {
        Some(nu_via_critical_line(omega, cfg)?)
    } else {
        None
    };
    let three_halves = nu_via_three_halves_line(omega, cfg)?;
    Ok(ThreeMethods {
        series,
        half_line,
        three_halves,
    })
}

/// Pairwise agreement records for one `omega`: each pair must agree within
/// `tol` plus both reported error estimates.
pub fn agreement_records(
    label: &str,
    omega: &OmegaArgument,
    m: &ThreeMethods,
    tol: f64,
) -> Vec<VerificationRecord> {
    let w = format_omega(omega.value());
    let mut out = Vec::with_capacity(3);
    let mut pair = |name: &str, a: &EvalResult, b: &EvalResult, what: &str| {
        out.push(VerificationRecord::new(
            format!("{label}.{name}[w={w}]"),
            a.value,
            b.value,
            tol + a.err_estimate + b.err_estimate,
            what.to_string(),
        ));
    };
    if let Some(h) = &m.half_line {
        pair(
            "half-vs-series",
            h,
            &m.series,
            "critical-line integral = direct series",
        );
        pair(
            "half-vs-three-halves",
            h,
            &m.three_halves,
            "critical-line integral = 3/2-line integral",
        );
    }
    pair(
        "three-halves-vs-series",
        &m.three_halves,
        &m.series,
        "3/2-line integral = direct series",
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::PI_SQ_OVER_12;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::with_tol(1e-10)
    }

    #[test]
    fn critical_line_examples() {
        let g = EULER_GAMMA;
        let r0 = nu_via_critical_line(&OmegaArgument::real(0.0), &cfg()).unwrap();
        assert!((r0.value.re - g).abs() < 1e-9);
        let r1 = nu_via_critical_line(&OmegaArgument::real(1.0), &cfg()).unwrap();
        assert!((r1.value.re - (1.0 + g / 2.0 - LN_TWO_PI / 2.0)).abs() < 1e-9);
        let r2 = nu_via_critical_line(&OmegaArgument::real(2.0), &cfg()).unwrap();
        let expect = -1.0 / 9.0 + g / 3.0 - 0.5 * (LN_TWO_PI - 4.0 * GLAISHER_A.ln() - 11.0 / 9.0);
        assert!((r2.value.re - expect).abs() < 1e-9);
        for r in [r0, r1, r2] {
            assert!(r.value.im.abs() < 1e-10);
            assert!(r.err_estimate < 1e-9);
        }
    }

    #[test]
    fn three_halves_examples() {
        let g = EULER_GAMMA;
        let r0 = nu_via_three_halves_line(&OmegaArgument::real(0.0), &cfg()).unwrap();
        assert!((r0.value.re - g).abs() < 1e-9);
        let rm1 = nu_via_three_halves_line(&OmegaArgument::real(-1.0), &cfg()).unwrap();
        let expect = KAPPA1 + PI_SQ_OVER_12 - g * g / 2.0 - STIELTJES_GAMMA1;
        assert!((rm1.value.re - expect).abs() < 1e-9);
        let a = nu_via_three_halves_line(&OmegaArgument::real(1.0), &cfg()).unwrap();
        let b = nu_via_critical_line(&OmegaArgument::real(1.0), &cfg()).unwrap();
        assert!((a.value - b.value).norm() <= a.err_estimate + b.err_estimate);
    }

    #[test]
    fn domain_errors() {
        let e = nu_via_critical_line(&OmegaArgument::real(-0.6), &cfg()).unwrap_err();
        assert!(matches!(e, Error::HalfLineDomain(_)));
        let e = nu_via_three_halves_line(&OmegaArgument::real(-1.6), &cfg()).unwrap_err();
        assert!(matches!(e, Error::ThreeHalvesLineDomain(_)));
        assert!(CorollaryCase::from_index(6).is_err());
    }

    #[test]
    fn case_map() {
        let omegas: Vec<f64> = CorollaryCase::ALL.iter().map(|c| c.omega()).collect();
        assert_eq!(omegas, vec![0.0, 1.0, 2.0, 0.0, -1.0]);
        for (i, c) in CorollaryCase::ALL.iter().enumerate() {
            assert_eq!(CorollaryCase::from_index(i as u8 + 1).unwrap(), *c);
        }
    }

    #[test]
    fn corollary_records_pass() {
        for case in CorollaryCase::ALL {
            let r = corollary_integral(case, &cfg()).unwrap();
            assert!(r.pass, "{r:?}");
            assert!(r.abs_diff < 1e-9, "{r:?}");
            assert_eq!(r.lhs.im, 0.0);
        }
    }

    #[test]
    fn psi_integral_matches_closed_form() {
        let r = psi_integral(&QuadratureConfig::with_tol(1e-12)).unwrap();
        let expect = KAPPA1 + PI_SQ_OVER_12 - EULER_GAMMA * EULER_GAMMA / 2.0 - STIELTJES_GAMMA1;
        assert!((r.value.re - expect).abs() < 1e-10, "{}", r.value.re);
        // reference value of the integral from a 45-digit run
        assert!((r.value.re - 1.257_746_886_944_369_6).abs() < 1e-10);
        let case5 = corollary_integral(CorollaryCase::Five, &cfg()).unwrap();
        assert!((2.0 * r.value.re - case5.lhs.re).abs() < 1e-8);
    }

    #[test]
    fn psi_integrand_near_zero() {
        let z2 = zeta_integer(2, 1e-14).unwrap();
        assert_eq!(psi_integrand(0.0).unwrap(), z2);
        assert!((psi_integrand(1e-8).unwrap() - z2).abs() < 1e-6);
        // the part on [delta, 1] alone is finite and below the full value
        let body = integrate_finite(|x| psi_integrand(x).unwrap(), 1e-3, 1.0, &cfg()).unwrap();
        let full = psi_integral(&cfg()).unwrap();
        assert!(body.value.re.is_finite() && body.value.re < full.value.re);
        assert!((full.value.re - body.value.re - z2 * 1e-3).abs() < 2e-6);
    }

    #[test]
    fn sign_conventions() {
        let r = sign_convention_check(Line::Half, &OmegaArgument::real(0.0), &cfg()).unwrap();
        assert!(r.pass);
        assert!((r.lhs.re + 2.0).abs() < 1e-9);
        let r = sign_convention_check(
            Line::Half,
            &OmegaArgument::new(Complex::new(1.0, 1.0)),
            &cfg(),
        )
        .unwrap();
        assert!(r.pass, "{r:?}");
        let r =
            sign_convention_check(Line::ThreeHalves, &OmegaArgument::real(-1.0), &cfg()).unwrap();
        assert!(r.pass);
        assert!(sign_convention_check(Line::Half, &OmegaArgument::real(-1.0), &cfg()).is_err());
    }

    #[test]
    fn complex_omega_three_ways() {
        let omega = OmegaArgument::new(Complex::new(0.8, -1.7));
        let m = three_methods(&omega, &cfg()).unwrap();
        for rec in agreement_records("t", &omega, &m, 1e-7) {
            assert!(rec.pass, "{rec:?}");
        }
    }

    #[test]
    fn beyond_half_line_domain_uses_two_methods() {
        let omega = OmegaArgument::real(-1.0);
        let m = three_methods(&omega, &cfg()).unwrap();
        assert!(m.half_line.is_none());
        let recs = agreement_records("t", &omega, &m, 1e-7);
        assert_eq!(recs.len(), 1);
        assert!(recs[0].pass);
    }
}
