//! Riemann zeta for `Re s >= 1/2`, an independent eta-series cross-check,
//! zeta at integers, and the real digamma function.

use std::f64::consts::PI;

use crate::{Complex, Error, EvalResult, Method, Result, Work};

/// Even-index Bernoulli numbers `B_0, B_2, ..., B_30`.
pub const BERNOULLI_EVEN: [f64; 16] = [
    1.0,
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

/// Radius around `s = 1` inside which zeta is refused.
pub const POLE_EXCLUSION: f64 = 1e-6;

const MIN_TOL: f64 = 1e-14;
const MAX_TOL: f64 = 1e-3;

fn check_tol(tol: f64) -> Result<()> {
    if !(MIN_TOL..=MAX_TOL).contains(&tol) {
        return Err(Error::Config(format!(
            "tolerance {tol:e} outside [{MIN_TOL:e}, {MAX_TOL:e}]"
        )));
    }
    Ok(())
}

fn check_zeta_domain(s: Complex) -> Result<()> {
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::Domain(format!("non-finite argument {s}")));
    }
    let distance = (s - 1.0).norm();
    if distance < POLE_EXCLUSION {
        return Err(Error::PoleProximity { distance });
    }
    if s.re < 0.5 {
        return Err(Error::Domain(format!("Re s = {} < 1/2", s.re)));
    }
    Ok(())
}

/// `B_{2k} / (2k)!` for k = 1..=15.
fn bernoulli_over_factorial() -> [f64; 15] {
    let mut out = [0.0; 15];
    let mut fact = 1.0;
    for k in 1..=15 {
        let m = 2 * k;
        fact *= ((m - 1) * m) as f64;
        out[k - 1] = BERNOULLI_EVEN[k] / fact;
    }
    out
}

/// Core Euler–Maclaurin evaluation with `n_terms` direct terms.
/// Returns (value, remainder bound, roundoff scale, corrections used).
fn euler_maclaurin(s: Complex, n_terms: usize, target: f64) -> (Complex, f64, f64, usize) {
    let mut head = Complex::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    for n in 1..n_terms {
        let t = (-s * (n as f64).ln()).exp();
        abs_sum += t.norm();
        head += t;
    }
    let big_n = n_terms as f64;
    let ln_n = big_n.ln();
    let n_pow = (-s * ln_n).exp(); // N^{-s}
    let mut value = head + n_pow * big_n / (s - 1.0) + n_pow * 0.5;

    let coeffs = bernoulli_over_factorial();
    // rising = s (s+1) ... (s+2k-2); power = N^{-s-2k+1}
    let mut rising = s;
    let mut power = n_pow / big_n;
    let mut bound = f64::INFINITY;
    let mut used = 0;
    for k in 1..coeffs.len() {
        let term = rising * power * coeffs[k - 1];
        value += term;
        abs_sum += term.norm();
        used = k;
        // next term magnitude times |s + 2k + 1| / (Re s + 2k + 1)
        let next_rising = rising * (s + (2 * k - 1) as f64) * (s + (2 * k) as f64);
        let next_power = power / (big_n * big_n);
        let next = (next_rising * next_power * coeffs[k]).norm();
        let sigma_shift = s.re + (2 * k + 1) as f64;
        bound = if sigma_shift > 0.0 {
            next * (s + (2 * k + 1) as f64).norm() / sigma_shift
        } else {
            f64::INFINITY
        };
        rising = next_rising;
        power = next_power;
        if bound <= target {
            break;
        }
    }
    (value, bound, abs_sum, used)
}

/// Euler–Maclaurin zeta without the `Re s >= 1/2` guard. Only the pole is
/// excluded. Used for finite-difference checks of `zeta'(-1)`.
pub fn zeta_euler_maclaurin_unchecked(s: Complex) -> Complex {
    let n = 30usize.max((1.3 * s.im.abs()).ceil() as usize + 10);
    euler_maclaurin(s, n, 1e-16).0
}

/// `zeta(s)` by Euler–Maclaurin summation with a certified remainder.
pub fn zeta_complex(s: Complex, tol: f64) -> Result<EvalResult> {
    check_tol(tol)?;
    check_zeta_domain(s)?;
    let mut n_terms = 20usize.max((1.3 * s.im.abs()).ceil() as usize + 10);
    for _ in 0..8 {
        let (value, bound, abs_sum, used) = euler_maclaurin(s, n_terms, 0.5 * tol);
        let roundoff = f64::EPSILON * abs_sum;
        let err = bound + roundoff;
        if err <= tol {
            let value = if s.im == 0.0 {
                Complex::new(value.re, 0.0)
            } else {
                value
            };
            return Ok(EvalResult::new(
                value,
                err,
                Method::EulerMaclaurin,
                Work {
                    terms: (n_terms + used) as u64,
                    nodes: 0,
                },
            ));
        }
        n_terms *= 2;
    }
    Err(Error::Domain(format!(
        "Euler-Maclaurin could not certify tol {tol:e} at s = {s}"
    )))
}

/// `zeta(s) = eta(s) / (1 - 2^{1-s})` with the alternating eta series
/// accelerated by Chebyshev-derived weights.
pub fn eta_oracle(s: Complex, tol: f64) -> Result<EvalResult> {
    check_tol(tol)?;
    check_zeta_domain(s)?;
    let factor =
        Complex::new(1.0, 0.0) - (Complex::new(std::f64::consts::LN_2, 0.0) * (1.0 - s)).exp();
    if factor.norm() < 1e-6 {
        return Err(Error::Domain(format!(
            "1 - 2^(1-s) vanishes near s = {s}; eta quotient undefined"
        )));
    }
    let t = s.im.abs();
    let rate = (3.0 + 8f64.sqrt()).ln();
    // 3 (1 + 2|t|) e^{pi |t| / 2} / (3 + sqrt 8)^n / |1 - 2^{1-s}| <= tol / 2
    let log_needed = (3.0 * (1.0 + 2.0 * t)).ln() + PI * t / 2.0 - (0.5 * tol * factor.norm()).ln();
    let n = ((log_needed / rate).ceil().max(8.0)) as usize;
    if n > 300 {
        return Err(Error::Domain(format!(
            "eta oracle height budget exceeded at |Im s| = {t}"
        )));
    }

    // d_k = n * sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
    let mut d = Vec::with_capacity(n + 1);
    let mut e = 1.0 / n as f64;
    let mut acc = e;
    d.push(n as f64 * acc);
    for i in 0..n {
        let i_f = i as f64;
        let n_f = n as f64;
        e *= 4.0 * (n_f + i_f) * (n_f - i_f) / ((2.0 * i_f + 1.0) * (2.0 * i_f + 2.0));
        acc += e;
        d.push(n_f * acc);
    }
    let d_n = d[n];
    let mut sum = Complex::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    for k in 0..n {
        let w = (d_n - d[k]) / d_n;
        let term = (-s * ((k + 1) as f64).ln()).exp() * w;
        abs_sum += term.norm();
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let value = sum / factor;
    let truncation =
        3.0 * (1.0 + 2.0 * t) * (PI * t / 2.0).exp() / (rate * n as f64).exp() / factor.norm();
    let roundoff = 4.0 * f64::EPSILON * (abs_sum + n as f64) / factor.norm();
    let value = if s.im == 0.0 {
        Complex::new(value.re, 0.0)
    } else {
        value
    };
    Ok(EvalResult::new(
        value,
        truncation + roundoff,
        Method::EtaOracle,
        Work {
            terms: n as u64,
            nodes: 0,
        },
    ))
}

/// `zeta(n) - 1` for integers `n >= 2`, without the cancellation of
/// subtracting 1 from a value near 1.
pub fn zeta_minus_one(n: u32) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!("zeta integer argument {n} < 2")));
    }
    if n >= 30 {
        let nf = n as f64;
        let mut sum = 0.0;
        let mut k = 2.0f64;
        loop {
            let term = (-nf * k.ln()).exp();
            sum += term;
            // tail <= k^{1-n}/(n-1)
            if term == 0.0 || term * k / (nf - 1.0) < 1e-20 * sum {
                break;
            }
            k += 1.0;
        }
        return Ok(sum);
    }
    if n % 2 == 0 && (n as usize) / 2 < BERNOULLI_EVEN.len() {
        return Ok(zeta_even_closed_form(n) - 1.0);
    }
    let r = zeta_complex(Complex::new(n as f64, 0.0), MIN_TOL)?;
    Ok(r.value.re - 1.0)
}

fn zeta_even_closed_form(n: u32) -> f64 {
    let b = BERNOULLI_EVEN[(n / 2) as usize].abs();
    let mut fact = 1.0;
    for k in 2..=n {
        fact *= k as f64;
    }
    b * (2.0 * PI).powi(n as i32) / (2.0 * fact)
}

/// `zeta(n)` for integers `n >= 2`. Even `n` up to 30 use the exact
/// Bernoulli closed form.
pub fn zeta_integer(n: i64, tol: f64) -> Result<f64> {
    check_tol(tol.clamp(MIN_TOL, MAX_TOL))?;
    if n < 2 {
        return Err(Error::Domain(format!("zeta integer argument {n} < 2")));
    }
    let n = u32::try_from(n).map_err(|_| Error::Domain(format!("argument {n} too large")))?;
    if n % 2 == 0 && (n as usize) / 2 < BERNOULLI_EVEN.len() {
        return Ok(zeta_even_closed_form(n));
    }
    if n >= 30 {
        return Ok(1.0 + zeta_minus_one(n)?);
    }
    Ok(
        zeta_complex(Complex::new(n as f64, 0.0), tol.clamp(MIN_TOL, MAX_TOL))?
            .value
            .re,
    )
}

/// Real digamma `psi(x)` for `x > 0`: upward recurrence to `x >= 10`, then
/// the asymptotic Bernoulli series.
pub fn digamma(x: f64, tol: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("digamma argument {x} must be > 0")));
    }
    let tol = tol.max(1e-17);
    let mut x = x;
    let mut shift = 0.0;
    while x < 10.0 {
        shift -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    let mut series = 0.0;
    let mut pow = inv2;
    for k in 1..BERNOULLI_EVEN.len() {
        let term = BERNOULLI_EVEN[k] / (2.0 * k as f64) * pow;
        series += term;
        if term.abs() < 0.1 * tol {
            break;
        }
        pow *= inv2;
    }
    Ok(shift + x.ln() - 0.5 / x - series)
}
