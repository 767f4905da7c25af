//! Direct evaluation of `nu(omega) = sum_{j>=2} (-1)^j zeta(j) / (j + omega)`.
//!
//! The sum is split as `zeta(j) = 1 + (zeta(j) - 1)`. The second piece
//! decays like `2^-j` and is summed directly with a geometric tail bound.
//! The first piece, `sum_{j>=2} (-1)^j / (j + omega)`, is classical: a
//! digamma difference for real `omega`, an Euler transform otherwise.

use crate::special::{digamma, zeta_minus_one};
use crate::{Complex, Error, EvalResult, Method, Result, Work};

/// Margin kept from the boundary of each integral representation.
pub const DOMAIN_MARGIN: f64 = 1e-6;

/// An `omega` together with the domains it falls into. Tags are computed
/// here and never taken from the caller.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OmegaArgument {
    omega: Complex,
    series_ok: bool,
    half_line_ok: bool,
    three_halves_ok: bool,
}

impl OmegaArgument {
    pub fn new(omega: Complex) -> Self {
        let finite = omega.re.is_finite() && omega.im.is_finite();
        let on_negative_integer =
            omega.im == 0.0 && omega.re <= -2.0 && (omega.re - omega.re.round()).abs() < 1e-12;
        OmegaArgument {
            omega,
            series_ok: finite && !on_negative_integer,
            half_line_ok: finite && omega.re > -0.5 + DOMAIN_MARGIN,
            three_halves_ok: finite && omega.re > -1.5 + DOMAIN_MARGIN,
        }
    }

    pub fn real(omega: f64) -> Self {
        Self::new(Complex::new(omega, 0.0))
    }

    pub fn value(&self) -> Complex {
        self.omega
    }

    pub fn series_ok(&self) -> bool {
        self.series_ok
    }

    /// `Re omega > -1/2`: the critical-line integral applies.
    pub fn half_line_ok(&self) -> bool {
        self.half_line_ok
    }

    /// `Re omega > -3/2`: the `Re s = 3/2` integral applies.
    pub fn three_halves_ok(&self) -> bool {
        self.three_halves_ok
    }
}

impl From<Complex> for OmegaArgument {
    fn from(omega: Complex) -> Self {
        OmegaArgument::new(omega)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesConfig {
    pub max_terms: usize,
    pub acceleration_order: usize,
    pub tol: f64,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig {
            max_terms: 400,
            acceleration_order: 56,
            tol: 1e-14,
        }
    }
}

impl SeriesConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_terms < 16 {
            return Err(Error::Config(format!("max_terms {} < 16", self.max_terms)));
        }
        if !(4..=64).contains(&self.acceleration_order) {
            return Err(Error::Config(format!(
                "acceleration_order {} outside [4, 64]",
                self.acceleration_order
            )));
        }
        if !(self.tol > 0.0) {
            return Err(Error::Config(format!("tol {} must be > 0", self.tol)));
        }
        Ok(())
    }
}

/// Shift `a` until `Re a >= 1`, returning the explicit leading terms of
/// `sum_{m>=0} (-1)^m / (m + a)`, the shifted `a` and the sign of the rest.
fn shift_start(a: Complex) -> (Complex, Complex, f64) {
    let mut head = Complex::new(0.0, 0.0);
    let mut a = a;
    let mut sign = 1.0;
    while a.re < 1.0 {
        head += sign / a;
        sign = -sign;
        a += 1.0;
    }
    (head, a, sign)
}

/// `sum_{j>=2} (-1)^j / (j + omega)` for real `omega` via
/// `sum_{m>=0} (-1)^m / (m + a) = (psi((a+1)/2) - psi(a/2)) / 2`.
pub fn alternating_tail_digamma(omega: f64) -> Result<(f64, f64)> {
    let (head, a, sign) = shift_start(Complex::new(omega + 2.0, 0.0));
    let tol = 1e-16;
    let rest = 0.5 * (digamma((a.re + 1.0) / 2.0, tol)? - digamma(a.re / 2.0, tol)?);
    let value = head.re + sign * rest;
    let err = 4.0 * f64::EPSILON * (head.re.abs() + rest.abs() + 1.0);
    Ok((value, err))
}

/// `sum_{j>=2} (-1)^j / (j + omega)` by the Euler transform
/// `sum_{m>=0} (-1)^m/(m+a) = sum_k k! / (2^{k+1} (a)_{k+1})`, truncated at
/// `order` terms. With `Re a >= 1` the tail is at most `2^-order/(order+1)`.
pub fn alternating_tail_euler(omega: Complex, order: usize) -> (Complex, f64) {
    let (head, a, sign) = shift_start(omega + 2.0);
    let mut sum = Complex::new(0.0, 0.0);
    // term_k = k! / (2^{k+1} a (a+1) ... (a+k))
    let mut term = 0.5 / a;
    for k in 0..order {
        sum += term;
        term = term * ((k + 1) as f64) / (2.0 * (a + (k + 1) as f64));
    }
    let tail = 0.5f64.powi(order as i32) / (order as f64 + 1.0);
    let err = tail + 4.0 * f64::EPSILON * (head.norm() + sum.norm() + 1.0);
    (head + sum * sign, err)
}

/// `nu(omega)` from the defining series, accelerated, with a rigorous
/// truncation bound in `err_estimate`.
pub fn nu_direct(omega: &OmegaArgument, cfg: &SeriesConfig) -> Result<EvalResult> {
    cfg.validate()?;
    if !omega.series_ok() {
        return Err(Error::SeriesUndefined(omega.value()));
    }
    let w = omega.value();

    // sum (-1)^j (zeta(j) - 1) / (j + w), with
    // zeta(j) - 1 <= 2^-j (1 + 2/(j-1))
    let mut geometric = Complex::new(0.0, 0.0);
    let mut bound = f64::INFINITY;
    let mut j = 2usize;
    while j <= cfg.max_terms {
        let zm1 = zeta_minus_one(j as u32)?;
        let term = zm1 / (w + j as f64);
        if j % 2 == 0 {
            geometric += term;
        } else {
            geometric -= term;
        }
        let jf = j as f64;
        let gap = jf + 1.0 + w.re;
        if gap >= 1.0 {
            bound = (1.0 + 2.0 / jf) * 0.5f64.powi(j as i32) / gap;
            if bound <= 0.5 * cfg.tol {
                break;
            }
        }
        j += 1;
    }
    if bound > 0.5 * cfg.tol {
        return Err(Error::Config(format!(
            "series tail bound {bound:e} above tol {:e} after {} terms",
            cfg.tol, cfg.max_terms
        )));
    }

    let (tail, tail_err, tail_terms) = if w.im == 0.0 {
        let (v, e) = alternating_tail_digamma(w.re)?;
        (Complex::new(v, 0.0), e, 1)
    } else {
        let (v, e) = alternating_tail_euler(w, cfg.acceleration_order);
        (v, e, cfg.acceleration_order)
    };

    let value = geometric + tail;
    let err = bound + tail_err + 4.0 * f64::EPSILON * (geometric.norm() + tail.norm());
    Ok(EvalResult::new(
        value,
        err,
        Method::SeriesAccelerated,
        Work {
            terms: (j - 1 + tail_terms) as u64,
            nodes: 0,
        },
    ))
}

/// Plain partial sum `sum_{j=2}^{last} (-1)^j zeta(j) / (j + omega)`.
pub fn nu_partial_sum(omega: &OmegaArgument, last: usize) -> Result<Complex> {
    if !omega.series_ok() {
        return Err(Error::SeriesUndefined(omega.value()));
    }
    if last < 2 {
        return Err(Error::Domain(format!(
            "partial sum needs J >= 2, got {last}"
        )));
    }
    let w = omega.value();
    let mut sum = Complex::new(0.0, 0.0);
    for j in 2..=last {
        let zeta = 1.0 + zeta_minus_one(j as u32)?;
        let term = zeta / (w + j as f64);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(sum)
}
