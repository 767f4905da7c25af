//! Line integrals against the `1/cosh(pi x)` kernel, and adaptive Simpson
//! on finite intervals and circular arcs.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::{Complex, Error, EvalResult, Method, Result, Work};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Refinement {
    /// Halve the trapezoid step, reusing existing nodes; stop when two
    /// successive levels agree.
    NodeDoublingRichardson,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureConfig {
    pub tol: f64,
    /// `None` selects the truncation point automatically.
    pub truncation_x: Option<f64>,
    pub max_nodes: usize,
    pub refinement: Refinement,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            tol: 1e-9,
            truncation_x: None,
            max_nodes: 1 << 17,
            refinement: Refinement::NodeDoublingRichardson,
        }
    }
}

impl QuadratureConfig {
    pub fn with_tol(tol: f64) -> Self {
        QuadratureConfig {
            tol,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(1e-13..=1e-3).contains(&self.tol) {
            return Err(Error::Config(format!(
                "quadrature tol {:e} outside [1e-13, 1e-3]",
                self.tol
            )));
        }
        if self.max_nodes < 64 {
            return Err(Error::Config(format!("max_nodes {} < 64", self.max_nodes)));
        }
        if let Some(x) = self.truncation_x {
            if !(x > 0.0 && x.is_finite()) {
                return Err(Error::Config(format!("truncation_x {x} must be > 0")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecayClass {
    Bounded,
    PolynomialGrowth(u32),
}

/// The factor multiplying `1/cosh(pi x)` in a whole-line integral.
pub struct LineIntegrand<F> {
    pub evaluator: F,
    pub decay_class: DecayClass,
}

impl<F> LineIntegrand<F>
where
    F: Fn(f64) -> Complex + Sync,
{
    pub fn new(evaluator: F, decay_class: DecayClass) -> Self {
        LineIntegrand {
            evaluator,
            decay_class,
        }
    }

    fn eval(&self, x: f64) -> Complex {
        (self.evaluator)(x)
    }
}

/// `1/cosh(pi x)`, zero once `cosh` overflows.
pub fn sech_pi(x: f64) -> f64 {
    1.0 / (PI * x).cosh()
}

/// Full breakdown of a line integration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineReport {
    pub result: EvalResult,
    pub truncation_x: f64,
    pub truncation_bound: f64,
    pub refinement_diff: f64,
}

/// `X = max(8, (ln(1/tol) + ln(1 + max|f|)) / pi + 1)` with `|f|` probed at
/// `0, +-2, +-4, +-8`.
pub fn auto_truncation<F>(f: &LineIntegrand<F>, tol: f64) -> f64
where
    F: Fn(f64) -> Complex + Sync,
{
    let probe = [0.0, 2.0, -2.0, 4.0, -4.0, 8.0, -8.0]
        .iter()
        .map(|&x| f.eval(x).norm())
        .fold(0.0, f64::max);
    let x = ((1.0 / tol).ln() + (1.0 + probe).ln()) / PI + 1.0;
    x.max(8.0)
}

/// Bound on the two discarded tails `|x| > X`.
pub fn truncation_bound<F>(f: &LineIntegrand<F>, x_max: f64) -> f64
where
    F: Fn(f64) -> Complex + Sync,
{
    let edge = f.eval(x_max).norm().max(f.eval(-x_max).norm());
    // int_X^inf (x/X)^p 2 e^{-pi x} dx <= (2/pi) e^{-pi X} / (1 - p/(pi X))
    let growth = match f.decay_class {
        DecayClass::Bounded => 1.0,
        DecayClass::PolynomialGrowth(p) => {
            let r = p as f64 / (PI * x_max);
            if r < 0.5 {
                1.0 / (1.0 - r)
            } else {
                2.0 * (1.0 + x_max).powi(p as i32)
            }
        }
    };
    2.0 * edge * growth * (2.0 / PI) * (-PI * x_max).exp()
}

/// `int_{-inf}^{inf} f(x) / cosh(pi x) dx` by the trapezoid rule on
/// `[-X, X]` with node doubling.
pub fn integrate_line<F>(f: &LineIntegrand<F>, cfg: &QuadratureConfig) -> Result<EvalResult>
where
    F: Fn(f64) -> Complex + Sync,
{
    integrate_line_detailed(f, cfg).map(|r| r.result)
}

pub fn integrate_line_detailed<F>(
    f: &LineIntegrand<F>,
    cfg: &QuadratureConfig,
) -> Result<LineReport>
where
    F: Fn(f64) -> Complex + Sync,
{
    cfg.validate()?;
    let x_max = cfg
        .truncation_x
        .unwrap_or_else(|| auto_truncation(f, cfg.tol));
    let weighted = |x: f64| f.eval(x) * sech_pi(x);

    let mut intervals: usize = 64;
    let mut h = 2.0 * x_max / intervals as f64;
    // sum over nodes with endpoint half-weights
    let values: Vec<Complex> = (0..=intervals)
        .into_par_iter()
        .map(|i| weighted(-x_max + i as f64 * h))
        .collect();
    let mut node_sum = Complex::new(0.0, 0.0);
    for (i, v) in values.iter().enumerate() {
        let w = if i == 0 || i == intervals { 0.5 } else { 1.0 };
        node_sum += v * w;
    }
    let mut estimate = node_sum * h;
    let mut last_diff = f64::INFINITY;

    loop {
        let next_intervals = intervals * 2;
        if next_intervals + 1 > cfg.max_nodes {
            return Err(Error::NoConvergence {
                best: estimate,
                last_diff,
                nodes: (intervals + 1) as u64,
            });
        }
        let half = h / 2.0;
        let mids: Vec<Complex> = (0..intervals)
            .into_par_iter()
            .map(|i| weighted(-x_max + (2 * i + 1) as f64 * half))
            .collect();
        for m in &mids {
            node_sum += m;
        }
        intervals = next_intervals;
        h = half;
        let refined = node_sum * h;
        last_diff = (refined - estimate).norm();
        estimate = refined;
        if !estimate.re.is_finite() || !estimate.im.is_finite() {
            return Err(Error::NoConvergence {
                best: estimate,
                last_diff: f64::INFINITY,
                nodes: (intervals + 1) as u64,
            });
        }
        if last_diff < cfg.tol / 4.0 {
            break;
        }
    }

    let tail = truncation_bound(f, x_max);
    Ok(LineReport {
        result: EvalResult::new(
            estimate,
            last_diff + tail,
            Method::Quadrature,
            Work {
                terms: 0,
                nodes: (intervals + 1) as u64,
            },
        ),
        truncation_x: x_max,
        truncation_bound: tail,
        refinement_diff: last_diff,
    })
}

struct Panel {
    a: f64,
    b: f64,
    fa: Complex,
    fm: Complex,
    fb: Complex,
    whole: Complex,
    tol: f64,
    depth: u32,
}

const MAX_DEPTH: u32 = 40;

/// Adaptive Simpson for complex-valued integrands on `[a, b]`.
fn adaptive_simpson<F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<EvalResult>
where
    F: Fn(f64) -> Complex,
{
    cfg.validate()?;
    if !(a < b) {
        return Err(Error::Config(format!("interval [{a}, {b}] is empty")));
    }
    let panels = 16;
    let width = (b - a) / panels as f64;
    let evals = std::cell::Cell::new(0u64);
    let eval = |x: f64| {
        evals.set(evals.get() + 1);
        f(x)
    };

    let mut stack = Vec::with_capacity(64);
    let mut f_left = eval(a);
    for p in 0..panels {
        let pa = a + p as f64 * width;
        let pb = if p + 1 == panels { b } else { pa + width };
        let pm = 0.5 * (pa + pb);
        let fm = eval(pm);
        let fb = eval(pb);
        let whole = (f_left + fm * 4.0 + fb) * ((pb - pa) / 6.0);
        stack.push(Panel {
            a: pa,
            b: pb,
            fa: f_left,
            fm,
            fb,
            whole,
            tol: cfg.tol / panels as f64,
            depth: 0,
        });
        f_left = fb;
    }
    // process left to right for a fixed summation order
    stack.reverse();

    let mut total = Complex::new(0.0, 0.0);
    let mut err = 0.0;
    while let Some(p) = stack.pop() {
        let m = 0.5 * (p.a + p.b);
        let lm = 0.5 * (p.a + m);
        let rm = 0.5 * (m + p.b);
        let flm = eval(lm);
        let frm = eval(rm);
        let left = (p.fa + flm * 4.0 + p.fm) * ((m - p.a) / 6.0);
        let right = (p.fm + frm * 4.0 + p.fb) * ((p.b - m) / 6.0);
        let refined = left + right;
        let delta = (refined - p.whole).norm();
        if delta <= 15.0 * p.tol || p.depth >= MAX_DEPTH {
            total += refined + (refined - p.whole) / 15.0;
            err += delta / 15.0;
        } else {
            if evals.get() as usize > cfg.max_nodes {
                return Err(Error::NoConvergence {
                    best: total + p.whole,
                    last_diff: delta,
                    nodes: evals.get(),
                });
            }
            let depth = p.depth + 1;
            let tol = p.tol / 2.0;
            stack.push(Panel {
                a: m,
                b: p.b,
                fa: p.fm,
                fm: frm,
                fb: p.fb,
                whole: right,
                tol,
                depth,
            });
            stack.push(Panel {
                a: p.a,
                b: m,
                fa: p.fa,
                fm: flm,
                fb: p.fm,
                whole: left,
                tol,
                depth,
            });
        }
    }
    if !total.re.is_finite() || !total.im.is_finite() || err > cfg.tol {
        return Err(Error::NoConvergence {
            best: total,
            last_diff: err,
            nodes: evals.get(),
        });
    }
    Ok(EvalResult::new(
        total,
        err,
        Method::Quadrature,
        Work {
            terms: 0,
            nodes: evals.get(),
        },
    ))
}

/// Adaptive Simpson on `[a, b]` for a real integrand.
pub fn integrate_finite<F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<EvalResult>
where
    F: Fn(f64) -> f64,
{
    adaptive_simpson(|x| Complex::new(f(x), 0.0), a, b, cfg)
}

/// Adaptive Simpson on `[a, b]` for a complex integrand of a real variable.
pub fn integrate_finite_complex<F>(
    f: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<EvalResult>
where
    F: Fn(f64) -> Complex,
{
    adaptive_simpson(f, a, b, cfg)
}

/// `int_{phi_a}^{phi_b} g(phi) dphi` for a complex function of an angle.
pub fn integrate_arc<G>(g: G, phi_a: f64, phi_b: f64, cfg: &QuadratureConfig) -> Result<EvalResult>
where
    G: Fn(f64) -> Complex,
{
    adaptive_simpson(g, phi_a, phi_b, cfg)
}

/// `oint f(z) dz` over the circle `|z - center| = radius`, trapezoid rule
/// with `nodes` equispaced points (spectrally accurate for periodic data).
pub fn circle_integral<F>(f: F, center: Complex, radius: f64, nodes: usize) -> Complex
where
    F: Fn(Complex) -> Complex,
{
    let step = 2.0 * PI / nodes as f64;
    let mut sum = Complex::new(0.0, 0.0);
    for k in 0..nodes {
        let e = Complex::from_polar(1.0, k as f64 * step);
        let z = center + e * radius;
        // dz = i r e^{i theta} dtheta
        sum += f(z) * Complex::i() * e * radius;
    }
    sum * step
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(tol: f64) -> QuadratureConfig {
        QuadratureConfig::with_tol(tol)
    }

    /// Fine-grid midpoint reference on [-X, X], independent of the doubling
    /// machinery.
    fn reference_line<F: Fn(f64) -> Complex>(f: F, x: f64, n: usize) -> Complex {
        let h = 2.0 * x / n as f64;
        (0..n)
            .map(|i| {
                let t = -x + (i as f64 + 0.5) * h;
                f(t) * sech_pi(t)
            })
            .sum::<Complex>()
            * h
    }

    #[test]
    fn kernel_has_unit_mass() {
        let f = LineIntegrand::new(|_| Complex::new(1.0, 0.0), DecayClass::Bounded);
        let r = integrate_line(&f, &cfg(1e-12)).unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-12);
        assert!(r.value.im.abs() < 1e-15);
        assert!(r.err_estimate < 1e-11);
    }

    #[test]
    fn odd_integrand_vanishes() {
        let f = LineIntegrand::new(|x| Complex::new(x, 0.0), DecayClass::PolynomialGrowth(1));
        let r = integrate_line(&f, &cfg(1e-12)).unwrap();
        assert!(r.value.norm() < 1e-12);
    }

    #[test]
    fn fourier_pair_of_sech() {
        let f = LineIntegrand::new(|x| Complex::from_polar(1.0, x), DecayClass::Bounded);
        let r = integrate_line(&f, &cfg(1e-12)).unwrap();
        let reference = reference_line(|x| Complex::from_polar(1.0, x), 12.0, 400_000);
        let frozen = 0.886_818_883_970_073_9;
        assert!((reference.re - frozen).abs() < 1e-10);
        assert!((r.value.re - frozen).abs() < 1e-12);
        assert!((r.value.re - (0.5f64).cosh().recip()).abs() < 1e-12);
    }

    #[test]
    fn explicit_truncation_is_sound() {
        let g = |x: f64| Complex::from_polar(1.0 + 0.1 * x * x, 0.7 * x);
        for x in [3.0, 4.0] {
            let f = LineIntegrand::new(g, DecayClass::PolynomialGrowth(2));
            // endpoint values are not negligible here, so the trapezoid is
            // only O(h^2); 1e-8 is still far below the tail bound
            let mut c = cfg(1e-8);
            c.truncation_x = Some(x);
            let near = integrate_line_detailed(&f, &c).unwrap();
            c.truncation_x = Some(x + 2.0);
            let far = integrate_line_detailed(&f, &c).unwrap();
            let change = (near.result.value - far.result.value).norm();
            assert!(
                change < near.truncation_bound,
                "X={x}: {change:e} vs {:e}",
                near.truncation_bound
            );
        }
    }

    #[test]
    fn non_convergence_reports_best_estimate() {
        let f = LineIntegrand::new(|x| Complex::from_polar(1.0, 40.0 * x), DecayClass::Bounded);
        let mut c = cfg(1e-13);
        c.max_nodes = 64;
        match integrate_line(&f, &c) {
            Err(Error::NoConvergence { best, nodes, .. }) => {
                assert!(best.re.is_finite());
                assert!(nodes > 0);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn invalid_configs() {
        let f = LineIntegrand::new(|_| Complex::new(1.0, 0.0), DecayClass::Bounded);
        assert!(integrate_line(&f, &cfg(1e-15)).is_err());
        let mut c = cfg(1e-9);
        c.max_nodes = 10;
        assert!(integrate_line(&f, &c).is_err());
        c.max_nodes = 1024;
        c.truncation_x = Some(-1.0);
        assert!(integrate_line(&f, &c).is_err());
        assert!(integrate_finite(|x| x, 1.0, 1.0, &cfg(1e-9)).is_err());
    }

    #[test]
    fn finite_interval_exactness() {
        let one = integrate_finite(|_| 1.0, 0.0, 1.0, &cfg(1e-12)).unwrap();
        assert!((one.value.re - 1.0).abs() < 1e-14);
        let sq = integrate_finite(|x| x * x, 0.0, 1.0, &cfg(1e-12)).unwrap();
        assert!((sq.value.re - 1.0 / 3.0).abs() < 1e-14);
        assert!(sq.err_estimate <= 1e-12);
        let smooth = integrate_finite(|x| x.exp() * x.sin(), 0.0, 3.0, &cfg(1e-11)).unwrap();
        let exact = 0.5 * (1.0 + 3f64.exp() * (3f64.sin() - 3f64.cos()));
        assert!((smooth.value.re - exact).abs() < 1e-10);
    }

    #[test]
    fn arc_examples() {
        let half = integrate_arc(|_| Complex::new(1.0, 0.0), 0.0, PI, &cfg(1e-12)).unwrap();
        assert!((half.value.re - PI).abs() < 1e-13);
        let full =
            integrate_arc(|p| Complex::from_polar(1.0, p), 0.0, 2.0 * PI, &cfg(1e-12)).unwrap();
        assert!(full.value.norm() < 1e-12);
    }

    #[test]
    fn circle_integral_of_simple_pole() {
        let z0 = Complex::new(0.3, -0.2);
        let v = circle_integral(|z| (z - z0).inv(), z0, 0.25, 256);
        assert!((v - Complex::new(0.0, 2.0 * PI)).norm() < 1e-13);
        let v = circle_integral(|z| z * z, z0, 0.25, 256);
        assert!(v.norm() < 1e-14);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(24))]
        #[test]
        fn line_integration_is_linear(alpha in -2.0f64..2.0, beta in -2.0f64..2.0) {
            let tol = 1e-10;
            let f = |x: f64| Complex::from_polar(1.0, 0.3 * x);
            let g = |x: f64| Complex::new(1.0 / (1.0 + x * x), x);
            let lin = LineIntegrand::new(|x| f(x) * alpha + g(x) * beta, DecayClass::PolynomialGrowth(1));
            let fi = integrate_line(&LineIntegrand::new(f, DecayClass::Bounded), &cfg(tol)).unwrap();
            let gi = integrate_line(&LineIntegrand::new(g, DecayClass::PolynomialGrowth(1)), &cfg(tol)).unwrap();
            let li = integrate_line(&lin, &cfg(tol)).unwrap();
            let combo = fi.value * alpha + gi.value * beta;
            proptest::prop_assert!((li.value - combo).norm() <= 2.0 * tol);
        }
    }
}
