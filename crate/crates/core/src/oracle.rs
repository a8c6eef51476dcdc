//! Brute-force `ζ_ν(s)` for `Re s > 1`: a direct sum over computed zeros plus a
//! Hurwitz tail built on the leading McMahon term `j_{ν,n} ≈ (n + ν/2 - 1/4)π`.

use std::fmt;

use rug::{Complex, Float, Integer, Rational};

use crate::bessel::{self, ZeroTable};
use crate::coefficients::Order;
use crate::numerics::{abs_complex, bernoulli, pi};
use crate::{Error, Result};

/// Euler–Maclaurin depth used by [`direct_sum`].
pub const EM_TERMS: usize = 8;

/// Zeros used to extrapolate the McMahon residual.
const RESIDUAL_WINDOW: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailMethod {
    /// The residual between true zeros and McMahon approximants dominates the bound.
    IntegralBound,
    /// The Euler–Maclaurin remainder dominates.
    EulerMaclaurin,
}

impl fmt::Display for TailMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TailMethod::IntegralBound => "integral-bound",
            TailMethod::EulerMaclaurin => "euler-maclaurin",
        })
    }
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub value: Complex,
    pub partial_terms: usize,
    pub tail_estimate: Float,
    pub tail_method: TailMethod,
}

fn check_domain(s: &Complex) -> Result<()> {
    if *s.real() <= 1 {
        return Err(Error::Domain(format!("the direct sum needs Re(s) > 1, got {}", s.real().to_f64())));
    }
    Ok(())
}

/// `x^{-s}` for real `x > 0`.
fn pow_neg(x: &Float, s: &Complex, prec: u32) -> Complex {
    let ln = Float::with_val(prec, x.ln_ref());
    Complex::with_val(prec, Complex::with_val(prec, s * ln) * -1i32).exp()
}

/// `Σ_{m>=0} (m + a)^{-s}` by Euler–Maclaurin with `terms` Bernoulli corrections after
/// summing enough leading terms directly. The error is the first omitted correction.
pub fn hurwitz_tail(s: &Complex, a: &Float, terms: usize) -> Result<(Complex, Float)> {
    check_domain(s)?;
    if *a <= 0 {
        return Err(Error::Domain(format!("Hurwitz parameter must be positive, got {}", a.to_f64())));
    }
    if terms == 0 {
        return Err(Error::Argument("Euler-Maclaurin depth must be positive".into()));
    }
    let target = s.prec().0 as i32;
    let prec = s.prec().0.max(a.prec()) + 32;

    // Shift the start point until the first omitted correction is negligible.
    let mut shift = 0u64;
    loop {
        let x = Float::with_val(prec, a + shift);
        let (_, err) = em_remainder(s, &x, terms, prec);
        let head = abs_complex(&pow_neg(&x, s, prec), 64);
        let small = err.is_zero() || err < Float::with_val(64, head >> target);
        if small || shift >= 1 << 20 {
            break;
        }
        shift = (2 * shift).max(16);
    }

    let mut sum = Complex::new(prec);
    for m in 0..shift {
        sum += pow_neg(&Float::with_val(prec, a + m), s, prec);
    }
    let x = Float::with_val(prec, a + shift);
    let (em, err) = em_remainder(s, &x, terms, prec);
    sum += em;
    let roundoff = abs_complex(&sum, 64) >> (prec as i32 - 40);
    Ok((sum, err + roundoff))
}

/// `Σ_{m>=0} (m + x)^{-s}` from the Euler–Maclaurin formula at `x`, and the first omitted term.
fn em_remainder(s: &Complex, x: &Float, terms: usize, prec: u32) -> (Complex, Float) {
    let x_ms = pow_neg(x, s, prec);
    let inv_x = Float::with_val(prec, x.recip_ref());
    let sm1 = Complex::with_val(prec, s - 1u32);
    let mut sum = Complex::with_val(prec, &x_ms * x) / &sm1;
    sum += Complex::with_val(prec, &x_ms / 2u32);
    // B_{2j}/(2j)! · s(s+1)···(s+2j-2) · x^{-s-2j+1}
    let mut rising = Complex::with_val(prec, s);
    let mut pw = Complex::with_val(prec, &x_ms * &inv_x);
    let mut fact = Integer::from(2);
    let mut omitted = Float::with_val(64, 0);
    for j in 1..=terms + 1 {
        let b = bernoulli(2 * j) / Rational::from(fact.clone());
        let term = Complex::with_val(prec, &rising * &pw) * Float::with_val(prec, &b);
        if j > terms {
            omitted = abs_complex(&term, 64);
            break;
        }
        sum += term;
        let k = 2 * j as u32;
        rising *= Complex::with_val(prec, s + (k - 1));
        rising *= Complex::with_val(prec, s + k);
        pw *= Float::with_val(prec, inv_x.square_ref());
        fact *= (k + 1) * (k + 2);
    }
    (sum, omitted)
}

/// `Σ_{n<=N} j_{ν,n}^{-s}` over freshly computed zeros plus the McMahon/Hurwitz tail.
pub fn direct_sum(order: &Order, s: &Complex, terms: usize) -> Result<OracleResult> {
    check_domain(s)?;
    if terms < 16 {
        return Err(Error::Argument(format!("the direct sum needs at least 16 terms, got {terms}")));
    }
    let table = bessel::zeros(order, terms, s.prec().0)?;
    direct_sum_with_table(&table, s)
}

/// As [`direct_sum`], reusing a zero table; all of its zeros are summed.
pub fn direct_sum_with_table(table: &ZeroTable, s: &Complex) -> Result<OracleResult> {
    check_domain(s)?;
    let n = table.len();
    if n < 16 {
        return Err(Error::Argument(format!("the direct sum needs at least 16 zeros, got {n}")));
    }
    let prec = s.prec().0.max(table.precision()) + 32;
    let mut sum = Complex::new(prec);
    for z in table.zeros() {
        sum += pow_neg(z, s, prec);
    }

    // (N + 1 + ν/2 - 1/4), scaled by π^{-s}
    let nu = table.order().to_float(prec);
    let a = Float::with_val(prec, &nu / 2u32) + (n as f64 + 0.75);
    let (h, em_err) = hurwitz_tail(s, &a, EM_TERMS)?;
    let s_wide = Complex::with_val(prec, s);
    let pi_ms = pow_neg(&pi(prec), &s_wide, prec);
    sum += Complex::with_val(prec, &h * &pi_ms);
    let em_err = Float::with_val(64, em_err * abs_complex(&pi_ms, 64));

    // McMahon residual: |j^{-s} - β^{-s}| decays like n^{-σ-2}. Take the worst scaled
    // residual over the last zeros and bound Σ_{n>N} K n^{-σ-2} by 2 K N^{-σ-1}/(σ+1).
    let sigma = s.real().to_f64();
    let mut k_max = Float::with_val(64, 0);
    for idx in n.saturating_sub(RESIDUAL_WINDOW)..n {
        let m = idx + 1;
        let beta = bessel::mcmahon(table.order(), m, prec);
        let diff = Complex::with_val(prec, pow_neg(&table.zeros()[idx], s, prec) - pow_neg(&beta, s, prec));
        let scaled = abs_complex(&diff, 64) * (m as f64).powf(sigma + 2.0);
        if scaled > k_max {
            k_max = scaled;
        }
    }
    let resid = k_max * (n as f64).powf(-sigma - 1.0) * 2u32 / (sigma + 1.0);
    let method = if resid > em_err { TailMethod::IntegralBound } else { TailMethod::EulerMaclaurin };
    Ok(OracleResult {
        value: Complex::with_val(s.prec(), sum),
        partial_terms: n,
        tail_estimate: resid + em_err,
        tail_method: method,
    })
}
