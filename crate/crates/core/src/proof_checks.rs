//! Numerical replay of the contour argument behind the critical-line
//! formula.
//!
//! The contour is `[-R, R]` closed by the upper semicircle `C_R` (integer
//! `R`), applied to
//!
//! ```text
//! F(z) = zeta(1/2 - iz) / ((1/2 - iz + omega) cosh(pi z))
//! ```
//!
//! Inside sit a double pole at `z = i/2` (sech zero meeting the zeta pole)
//! and simple poles at `z_n = i(n - 1/2)`, `n >= 2`. Everything here is
//! computed numerically and compared with the closed forms: the kernel
//! integral `I_R` and its bounds, the growth of zeta on the arc, the decay of
//! the arc integral, both kinds of residue, and the full Cauchy balance.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use rayon::prelude::*;

use crate::constants::EULER_GAMMA;
use crate::integral_reps::format_omega;
use crate::nu_series::OmegaArgument;
use crate::quadrature::{
    circle_integral, integrate_arc, integrate_finite, integrate_finite_complex, QuadratureConfig,
};
use crate::special::{zeta_complex, zeta_integer};
use crate::{Complex, Error, EvalResult, Result, VerificationRecord};

/// Radius of the small circles used for residues.
pub const SMALL_CIRCLE_RADIUS: f64 = 0.25;
/// Equispaced trapezoid nodes on each small circle.
pub const SMALL_CIRCLE_NODES: usize = 256;
/// Largest semicircle on which zeta is evaluated.
pub const MAX_ARC_RADIUS: u32 = 40;
/// Roundoff slack on the sine-bound sandwich.
pub const SANDWICH_SLACK: f64 = 1e-12;
pub const RESIDUE_TOL: f64 = 1e-8;
pub const ASSEMBLY_TOL: f64 = 1e-6;

const ZETA_TOL: f64 = 1e-14;

/// A closed curve or arc in the `z` plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ArcSpec {
    /// Upper semicircle `|z| = radius`, integer radius.
    Semicircle { radius: u32 },
    /// Full circle around `center`, radius in `(0, 1/2)`.
    SmallCircle { center: Complex, radius: f64 },
}

impl ArcSpec {
    pub fn semicircle(radius: u32) -> Result<Self> {
        if radius < 1 {
            return Err(Error::Domain(
                "semicircle radius must be an integer >= 1".into(),
            ));
        }
        Ok(ArcSpec::Semicircle { radius })
    }

    pub fn small_circle(center: Complex, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius < 0.5) {
            return Err(Error::Domain(format!(
                "small-circle radius {radius} not in (0, 1/2)"
            )));
        }
        Ok(ArcSpec::SmallCircle { center, radius })
    }
}

/// `1/|cosh(pi R e^{i phi})|` straight from complex arithmetic.
pub fn kernel_direct(radius: f64, phi: f64) -> f64 {
    let z = Complex::from_polar(radius, phi) * PI;
    z.cosh().norm().recip()
}

/// The same kernel as `sqrt 2 / sqrt(cosh(2 pi R cos phi) + cos(2 pi R sin phi))`.
pub fn kernel_closed_form(radius: f64, phi: f64) -> f64 {
    let a = 2.0 * PI * radius;
    SQRT_2 / ((a * phi.cos()).cosh() + (a * phi.sin()).cos()).sqrt()
}

fn check_radius(radius: u32) -> Result<()> {
    if radius < 1 {
        return Err(Error::Domain("R must be an integer >= 1".into()));
    }
    Ok(())
}

/// `I_R = int_0^pi dphi / |cosh(pi R e^{i phi})|`, via the closed-form kernel
/// on `[0, pi/2]` doubled (the kernel is symmetric about `pi/2`).
pub fn i_r_integral(radius: u32, cfg: &QuadratureConfig) -> Result<f64> {
    check_radius(radius)?;
    let r = radius as f64;
    let half = integrate_finite(|phi| kernel_closed_form(r, phi), 0.0, FRAC_PI_2, cfg)?;
    Ok(2.0 * half.value.re)
}

/// `I_R` by integrating `1/|cosh|` directly over `[0, pi]`.
pub fn i_r_integral_direct(radius: u32, cfg: &QuadratureConfig) -> Result<f64> {
    check_radius(radius)?;
    let r = radius as f64;
    let v = integrate_arc(|phi| Complex::new(kernel_direct(r, phi), 0.0), 0.0, PI, cfg)?;
    Ok(v.value.re)
}

/// Largest pointwise gap between the two kernel forms, and the largest
/// asymmetry about `pi/2`, on an `radii x points` grid.
pub fn kernel_identity_errors(radii: &[u32], points: usize) -> (f64, f64) {
    let mut identity: f64 = 0.0;
    let mut symmetry: f64 = 0.0;
    for &radius in radii {
        let r = radius as f64;
        for k in 0..points {
            let phi = PI * (k as f64 + 0.5) / points as f64;
            let direct = kernel_direct(r, phi);
            let closed = kernel_closed_form(r, phi);
            identity = identity.max((direct - closed).abs());
            symmetry = symmetry.max((closed - kernel_closed_form(r, PI - phi)).abs());
        }
    }
    (identity, symmetry)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sandwich {
    pub lower: f64,
    pub middle: f64,
    pub upper: f64,
}

impl Sandwich {
    pub fn strict(&self) -> bool {
        self.lower < self.middle && self.middle < self.upper
    }
}

/// `(1 - e^{-pi^2 R/2})/(pi R) <= int_0^{pi/2} e^{-pi R sin t} dt <= (1 - e^{-pi R})/(2R)`.
pub fn sin_bound_values(radius: u32) -> Result<Sandwich> {
    check_radius(radius)?;
    let r = radius as f64;
    let cfg = QuadratureConfig::with_tol(1e-13);
    let middle = integrate_finite(|t| (-PI * r * t.sin()).exp(), 0.0, FRAC_PI_2, &cfg)?
        .value
        .re;
    Ok(Sandwich {
        lower: (1.0 - (-PI * PI * r / 2.0).exp()) / (PI * r),
        middle,
        upper: (1.0 - (-PI * r).exp()) / (2.0 * r),
    })
}

/// Sandwich as a record: `rhs` is the interval midpoint and `tol` its
/// half-width plus slack, so `pass` means the middle lies in the interval.
pub fn sin_bound_check(radius: u32) -> Result<VerificationRecord> {
    let s = sin_bound_values(radius)?;
    let center = 0.5 * (s.lower + s.upper);
    let half_width = 0.5 * (s.upper - s.lower);
    Ok(VerificationRecord::real(
        format!("sandwich[R={radius}]"),
        s.middle,
        center,
        half_width + SANDWICH_SLACK,
        "(1-exp(-pi^2 R/2))/(pi R) <= int_0^{pi/2} exp(-pi R sin t) dt <= (1-exp(-pi R))/(2R)",
    ))
}

/// `I_R` for `R = 1..=r_max`, in ascending order.
pub fn i_r_sweep(r_max: u32, cfg: &QuadratureConfig) -> Result<Vec<f64>> {
    (1..=r_max)
        .into_par_iter()
        .map(|r| i_r_integral(r, cfg))
        .collect()
}

/// Two records: `max R I_R <= 2 max_{R<=5} R I_R` on `1..=r_max`, and the
/// number of places where `I_R` fails to strictly decrease (must be 0).
pub fn i_r_decay_check(r_max: u32) -> Result<Vec<VerificationRecord>> {
    if r_max < 10 {
        return Err(Error::Domain(format!(
            "decay sweep needs R_max >= 10, got {r_max}"
        )));
    }
    let cfg = QuadratureConfig::with_tol(1e-12);
    let values = i_r_sweep(r_max, &cfg)?;
    let scaled: Vec<f64> = values
        .iter()
        .enumerate()
        .map(|(i, v)| (i + 1) as f64 * v)
        .collect();
    let bound = 2.0 * scaled[..5].iter().cloned().fold(0.0, f64::max);
    let peak = scaled.iter().cloned().fold(0.0, f64::max);
    let violations = values.windows(2).filter(|w| !(w[1] < w[0])).count();
    Ok(vec![
        VerificationRecord::real(
            format!("ir-bounded[R<={r_max}]"),
            peak,
            0.0,
            bound,
            "R I_R <= 2 max_{R<=5} R I_R",
        ),
        VerificationRecord::real(
            format!("ir-decreasing[R<={r_max}]"),
            violations as f64,
            0.0,
            0.0,
            "I_R strictly decreasing in R",
        ),
    ])
}

/// `zeta(1/2 - iz)` with `z = R e^{i phi}`.
fn zeta_on_arc(r: f64, phi: f64) -> Result<Complex> {
    let z = Complex::from_polar(r, phi);
    let s = Complex::new(0.5, 0.0) - Complex::i() * z;
    Ok(zeta_complex(s, ZETA_TOL)?.value)
}

/// `max |zeta(1/2 - i R e^{i phi})|` over 181 equispaced `phi` in `[0, pi]`.
pub fn zeta_growth_on_arc(radius: u32) -> Result<f64> {
    if !(1..=MAX_ARC_RADIUS).contains(&radius) {
        return Err(Error::Domain(format!(
            "arc radius {radius} outside 1..={MAX_ARC_RADIUS}"
        )));
    }
    let r = radius as f64;
    (0..181)
        .map(|k| zeta_on_arc(r, PI * k as f64 / 180.0).map(|z| z.norm()))
        .try_fold(0.0f64, |acc, v| v.map(|v| acc.max(v)))
}

/// The contour integrand `zeta(1/2 - iz) / ((1/2 - iz + omega) cosh(pi z))`.
pub fn contour_integrand(z: Complex, omega: Complex) -> Complex {
    let s = Complex::new(0.5, 0.0) - Complex::i() * z;
    match zeta_complex(s, ZETA_TOL) {
        Ok(zeta) => zeta.value / ((s + omega) * (z * PI).cosh()),
        Err(_) => Complex::new(f64::NAN, f64::NAN),
    }
}

fn require_half_line(omega: &OmegaArgument) -> Result<Complex> {
    if !omega.half_line_ok() {
        return Err(Error::HalfLineDomain(omega.value()));
    }
    Ok(omega.value())
}

/// `int_{C_R} F(z) dz` with `z = R e^{i phi}`, `dz = i R e^{i phi} dphi`.
pub fn arc_integral(
    radius: u32,
    omega: &OmegaArgument,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    if !(1..=MAX_ARC_RADIUS).contains(&radius) {
        return Err(Error::Domain(format!(
            "arc radius {radius} outside 1..={MAX_ARC_RADIUS}"
        )));
    }
    let w = require_half_line(omega)?;
    let r = radius as f64;
    integrate_arc(
        |phi| {
            let e = Complex::from_polar(1.0, phi);
            contour_integrand(e * r, w) * Complex::i() * e * r
        },
        0.0,
        PI,
        cfg,
    )
}

pub fn arc_integral_decay(
    radius: u32,
    omega: &OmegaArgument,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    Ok(arc_integral(radius, omega, cfg)?.value.norm())
}

/// `int_{-R}^{R} F(x) dx` along the real axis.
pub fn segment_integral(
    radius: u32,
    omega: &OmegaArgument,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    check_radius(radius)?;
    let w = require_half_line(omega)?;
    let r = radius as f64;
    integrate_finite_complex(|x| contour_integrand(Complex::new(x, 0.0), w), -r, r, cfg)
}

/// `(1/(2 pi i)) oint F dz` around `center`.
fn numeric_residue(center: Complex, omega: Complex) -> Result<Complex> {
    let spec = ArcSpec::small_circle(center, SMALL_CIRCLE_RADIUS)?;
    let ArcSpec::SmallCircle { center, radius } = spec else {
        unreachable!()
    };
    let integral = circle_integral(
        |z| contour_integrand(z, omega),
        center,
        radius,
        SMALL_CIRCLE_NODES,
    );
    Ok(integral / Complex::new(0.0, 2.0 * PI))
}

/// Closed-form residue at the double pole `z = i/2`:
/// `(1/(pi i)) (gamma (1 + omega) - 1) / (1 + omega)^2`.
pub fn double_pole_residue_closed_form(omega: Complex) -> Complex {
    let p = omega + 1.0;
    (p * EULER_GAMMA - 1.0) / (p * p) / Complex::new(0.0, PI)
}

/// Closed-form residue at `z_n = i(n - 1/2)`:
/// `(1/(pi i)) (-1)^{n+1} zeta(n) / (n + omega)`.
pub fn simple_pole_residue_closed_form(n: u32, omega: Complex) -> Result<Complex> {
    let zeta = zeta_integer(n as i64, ZETA_TOL)?;
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    Ok(sign * zeta / (omega + n as f64) / Complex::new(0.0, PI))
}

pub fn residue_double_pole(omega: &OmegaArgument) -> Result<VerificationRecord> {
    let w = require_half_line(omega)?;
    let lhs = numeric_residue(Complex::new(0.0, 0.5), w)?;
    Ok(VerificationRecord::new(
        format!("residue.double[w={}]", format_omega(w)),
        lhs,
        double_pole_residue_closed_form(w),
        RESIDUE_TOL,
        "Res_{z=i/2} F = (gamma(1+w) - 1) / (pi i (1+w)^2)",
    ))
}

pub fn residue_simple_pole(n: u32, omega: &OmegaArgument) -> Result<VerificationRecord> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "simple poles start at n = 2, got {n}"
        )));
    }
    let w = require_half_line(omega)?;
    let center = Complex::new(0.0, n as f64 - 0.5);
    let lhs = numeric_residue(center, w)?;
    Ok(VerificationRecord::new(
        format!("residue.simple[n={n},w={}]", format_omega(w)),
        lhs,
        simple_pole_residue_closed_form(n, w)?,
        RESIDUE_TOL,
        "Res_{z=i(n-1/2)} F = (-1)^{n+1} zeta(n) / (pi i (n+w))",
    ))
}

/// A residue case: `None` is the double pole, `Some(n)` the simple pole `z_n`.
pub type ResidueCase = (Option<u32>, Complex);

/// Fixed grid of ten residue checks.
pub fn residue_grid() -> [ResidueCase; 10] {
    let c = Complex::new;
    [
        (None, c(0.0, 0.0)),
        (None, c(1.0, 0.0)),
        (None, c(0.3, 0.7)),
        (None, c(2.5, 0.0)),
        (None, c(-0.3, 0.2)),
        (Some(2), c(0.0, 0.0)),
        (Some(3), c(0.0, 0.0)),
        (Some(5), c(1.0, -0.2)),
        (Some(4), c(0.5, 0.5)),
        (Some(8), c(-0.25, 0.0)),
    ]
}

pub fn residue_record(case: ResidueCase) -> Result<VerificationRecord> {
    let omega = OmegaArgument::new(case.1);
    match case.0 {
        None => residue_double_pole(&omega),
        Some(n) => residue_simple_pole(n, &omega),
    }
}

/// Every numeric piece of the Cauchy balance on one contour.
#[derive(Clone, Debug)]
pub struct Assembly {
    pub segment: Complex,
    pub arc: Complex,
    pub double_residue: Complex,
    /// Numeric residues at `z_n`, `n = 2..=n_poles`.
    pub simple_residues: Vec<Complex>,
}

impl Assembly {
    pub fn residue_sum(&self) -> Complex {
        self.double_residue + self.simple_residues.iter().sum::<Complex>()
    }
}

pub fn assemble(
    omega: &OmegaArgument,
    radius: u32,
    n_poles: u32,
    cfg: &QuadratureConfig,
) -> Result<Assembly> {
    let w = require_half_line(omega)?;
    let segment = segment_integral(radius, omega, cfg)?.value;
    let arc = arc_integral(radius, omega, cfg)?.value;
    let double_residue = numeric_residue(Complex::new(0.0, 0.5), w)?;
    let simple_residues = (2..=n_poles)
        .map(|n| numeric_residue(Complex::new(0.0, n as f64 - 0.5), w))
        .collect::<Result<Vec<_>>>()?;
    Ok(Assembly {
        segment,
        arc,
        double_residue,
        simple_residues,
    })
}

/// `int_{[-R,R]} F + int_{C_R} F = 2 pi i (Res_{i/2} + sum_{n=2}^{N} Res_{z_n})`.
pub fn contour_assembly_check(
    omega: &OmegaArgument,
    radius: u32,
    n_poles: u32,
) -> Result<VerificationRecord> {
    contour_assembly_check_with(
        omega,
        radius,
        n_poles,
        &QuadratureConfig::with_tol(1e-10),
        ASSEMBLY_TOL,
    )
}

pub fn contour_assembly_check_with(
    omega: &OmegaArgument,
    radius: u32,
    n_poles: u32,
    cfg: &QuadratureConfig,
    tol: f64,
) -> Result<VerificationRecord> {
    if n_poles != radius {
        return Err(Error::Domain(format!(
            "poles enclosed by radius {radius} are n = 2..={radius}, got N = {n_poles}"
        )));
    }
    let a = assemble(omega, radius, n_poles, cfg)?;
    Ok(VerificationRecord::new(
        format!("assembly[w={},R={radius}]", format_omega(omega.value())),
        a.segment + a.arc,
        a.residue_sum() * Complex::new(0.0, 2.0 * PI),
        tol,
        "int_[-R,R] F + int_{C_R} F = 2 pi i (sum of enclosed residues)",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::with_tol(1e-11)
    }

    #[test]
    fn i_r_against_fine_grid() {
        // 10^6-point midpoint rule on [0, pi], independent of the adaptive path
        let n = 1_000_000;
        let h = PI / n as f64;
        let reference: f64 = (0..n)
            .map(|k| kernel_direct(1.0, (k as f64 + 0.5) * h))
            .sum::<f64>()
            * h;
        let got = i_r_integral(1, &cfg()).unwrap();
        assert!((got - reference).abs() < 1e-9, "{got} vs {reference}");
        assert!(got > 0.0);
    }

    #[test]
    fn i_r_two_paths_agree() {
        for r in [1, 3, 10, 25] {
            let a = i_r_integral(r, &cfg()).unwrap();
            let b = i_r_integral_direct(r, &cfg()).unwrap();
            assert!((a - b).abs() < 1e-10, "R={r}");
        }
        assert!(i_r_integral(10, &cfg()).unwrap() < i_r_integral(1, &cfg()).unwrap());
        assert!(i_r_integral(0, &cfg()).is_err());
    }

    #[test]
    fn kernel_forms_agree() {
        let radii: Vec<u32> = (1..=10).collect();
        let (identity, symmetry) = kernel_identity_errors(&radii, 100);
        assert!(identity <= 1e-12, "{identity:e}");
        assert!(symmetry <= 1e-12, "{symmetry:e}");
    }

    #[test]
    fn sandwich_examples() {
        let s = sin_bound_values(1).unwrap();
        assert!((s.lower - (1.0 - (-PI * PI / 2.0).exp()) / PI).abs() < 1e-16);
        assert!((s.upper - (1.0 - (-PI).exp()) / 2.0).abs() < 1e-16);
        assert!(s.strict());
        assert!(sin_bound_check(1).unwrap().pass);
        assert!(sin_bound_check(50).unwrap().pass);
        assert!(sin_bound_values(50).unwrap().strict());
    }

    #[test]
    fn decay_sweep() {
        let recs = i_r_decay_check(50).unwrap();
        assert!(recs.iter().all(|r| r.pass), "{recs:?}");
        let sweep = i_r_sweep(50, &QuadratureConfig::with_tol(1e-12)).unwrap();
        assert!(sweep[49] < sweep[9] && sweep[9] < sweep[0]);
        assert!(i_r_decay_check(9).is_err());
    }

    #[test]
    fn zeta_growth() {
        let g1 = zeta_growth_on_arc(1).unwrap();
        assert!(g1.is_finite() && g1 > 0.0);
        let ratio5 = zeta_growth_on_arc(5).unwrap() / 5f64.sqrt();
        for r in [10u32, 20, 40] {
            let ratio = zeta_growth_on_arc(r).unwrap() / (r as f64).sqrt();
            assert!(ratio <= 2.0 * ratio5, "R={r}");
        }
        let z32 = zeta_complex(Complex::new(1.5, 0.0), 1e-14)
            .unwrap()
            .value
            .re;
        for r in [1u32, 7, 40] {
            assert!(zeta_on_arc(r as f64, FRAC_PI_2).unwrap().norm() <= z32);
        }
        assert!(zeta_growth_on_arc(41).is_err());
    }

    #[test]
    fn arc_decays() {
        let zero = OmegaArgument::real(0.0);
        let v: Vec<f64> = [5, 10, 20]
            .iter()
            .map(|&r| arc_integral_decay(r, &zero, &cfg()).unwrap())
            .collect();
        assert!(v[0] > v[1] && v[1] > v[2], "{v:?}");
        assert!(v[2] <= v[0] * (5.0f64 / 20.0).sqrt() * 4.0);
    }

    #[test]
    fn residue_examples() {
        let g = EULER_GAMMA;
        let ipi = Complex::new(0.0, PI);
        let r = residue_double_pole(&OmegaArgument::real(0.0)).unwrap();
        assert!((r.rhs - Complex::new(g - 1.0, 0.0) / ipi).norm() < 1e-15);
        assert!(r.pass, "{r:?}");
        let r = residue_double_pole(&OmegaArgument::real(1.0)).unwrap();
        assert!((r.rhs - Complex::new(2.0 * g - 1.0, 0.0) / (ipi * 4.0)).norm() < 1e-15);
        assert!(r.pass);
        let z2 = zeta_integer(2, 1e-14).unwrap();
        let z3 = zeta_integer(3, 1e-14).unwrap();
        let r = residue_simple_pole(2, &OmegaArgument::real(0.0)).unwrap();
        assert!((r.rhs + z2 / (ipi * 2.0)).norm() < 1e-15);
        assert!(r.pass);
        let r = residue_simple_pole(3, &OmegaArgument::real(0.0)).unwrap();
        assert!((r.rhs - z3 / (ipi * 3.0)).norm() < 1e-15);
        assert!(r.pass);
        for case in residue_grid() {
            let r = residue_record(case).unwrap();
            assert!(r.pass, "{r:?}");
        }
        assert!(residue_simple_pole(1, &OmegaArgument::real(0.0)).is_err());
    }

    #[test]
    fn cauchy_balance() {
        for w in [Complex::new(0.0, 0.0), Complex::new(1.0, 0.0)] {
            let r = contour_assembly_check(&OmegaArgument::new(w), 10, 10).unwrap();
            assert!(r.pass, "{r:?}");
        }
        let omega = OmegaArgument::real(0.0);
        let small = assemble(&omega, 5, 5, &cfg()).unwrap();
        let large = assemble(&omega, 10, 10, &cfg()).unwrap();
        let extra: Complex = (6..=10)
            .map(|n| simple_pole_residue_closed_form(n, Complex::new(0.0, 0.0)).unwrap())
            .sum();
        assert!((large.residue_sum() - small.residue_sum() - extra).norm() < 1e-8);
        assert!(contour_assembly_check(&omega, 10, 9).is_err());
    }

    #[test]
    fn small_circle_radius_is_validated() {
        assert!(ArcSpec::small_circle(Complex::new(0.0, 0.5), 0.5).is_err());
        assert!(ArcSpec::small_circle(Complex::new(0.0, 0.5), 0.25).is_ok());
        assert!(ArcSpec::semicircle(0).is_err());
    }
}
