//! The Riemann zeta function as the `ν = 1/2` case, `ζ(s) = π^s ζ_{1/2}(s)`.
//!
//! At `T = 1` the α coefficients become Bernoulli numbers and every β_n vanishes, so
//!
//! ```text
//! ζ(s) = π^{s-1} sin(sπ/2) [ Σ 2^{2n-1} B_{2n} s / (n (2n)! (2n-s)) + s/(s-1) - ln 2 - 1/s + s C(s) ]
//! ```
//!
//! with `C(s) = ∫_1^∞ ln(1 - e^{-2x}) x^{-s-1} dx`.

use rug::{Complex, Float, Integer, Rational};

use super::series::Hawkins;
use super::{Argument, EvalConfig, EvalResult, ExactValue, Method, PointClass, Remainder};
use crate::coefficients::Order;
use crate::numerics::{abs_complex, bernoulli, ln2, pi};
use crate::{Error, Result};

fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

pub fn riemann(s: &Argument, config: &EvalConfig) -> Result<EvalResult> {
    config.validate()?;
    let prec = config.precision;
    let mut warnings = Vec::new();
    let mut n = s.near_integer(prec / 2);
    if n.is_none() {
        if let Some(m) = s.near_integer(prec / 4) {
            if m % 2 == 0 {
                warnings.push(format!("s = {} is within 2^-{} of {m}; evaluated at {m}", s.label(), prec / 4));
                n = Some(m);
            }
        }
    }
    if let Some(n) = n {
        if let Some(mut r) = special(n, prec)? {
            r.warnings.extend(warnings);
            return Ok(r);
        }
    }
    generic(s, config)
}

/// Closed forms at integers: the pole, the origin, the even integers and the negative odd integers.
fn special(n: i64, prec: u32) -> Result<Option<EvalResult>> {
    let r = match n {
        1 => return Err(Error::Pole { pole: 1, residue: Float::with_val(prec, 1) }),
        0 => EvalResult::from_exact(ExactValue::rational(Rational::from((-1, 2))), PointClass::Origin, Method::ClosedForm, prec),
        n if n > 0 && n % 2 == 0 => {
            // (-1)^{k+1} 2^{2k} B_{2k} / (2 (2k)!) π^{2k}
            let k = (n / 2) as u32;
            let mut coeff = bernoulli(2 * k as usize) << (2 * k);
            coeff /= Rational::from(factorial(2 * k) * 2u32);
            if k % 2 == 0 {
                coeff = -coeff;
            }
            EvalResult::from_exact(ExactValue { coeff, pi_power: 2 * k as i32 }, PointClass::PosEven(k), Method::ClosedForm, prec)
        }
        n if n > 0 => return Ok(None),
        n if n % 2 == 0 => EvalResult::from_exact(
            ExactValue::rational(Rational::new()),
            PointClass::NegEven((-n / 2) as u32),
            Method::ClosedForm,
            prec,
        ),
        n => {
            // -B_{2k} / 2k
            let k = ((1 - n) / 2) as u32;
            let coeff = -bernoulli(2 * k as usize) / Rational::from(2 * k);
            EvalResult::from_exact(ExactValue::rational(coeff), PointClass::RemovedNegOdd(k), Method::Bernoulli, prec)
        }
    };
    Ok(Some(r))
}

fn generic(s: &Argument, config: &EvalConfig) -> Result<EvalResult> {
    let prec = config.precision;
    let w = prec + 64;
    let z = s.value(w);
    let tol = config.tolerance();

    // Bernoulli series; the terms shrink like π^{-2n}.
    let mut sum = Complex::new(w);
    let mut used = 0;
    let mut last = Float::with_val(64, 0);
    let mut scale_pow = Integer::from(1);
    for n in 1..=config.alpha_terms {
        scale_pow <<= 2;
        let nn = n as u32;
        // 2^{2n-1} B_{2n} / (n (2n)!)
        let coef = bernoulli(2 * n) * Rational::from((scale_pow.clone(), factorial(2 * nn) * 2u32 * nn));
        let term = Complex::with_val(w, &z * Float::with_val(w, &coef)) / Complex::with_val(w, (2 * nn) - &z);
        last = abs_complex(&term, 64);
        sum += term;
        used = n;
        let floor = Float::with_val(64, abs_complex(&sum, 64).max(&Float::with_val(64, 1))) >> (w as i32);
        if 2.0 * n as f64 > abs_complex(&z, 64).to_f64() + 1.0 && last < floor {
            break;
        }
    }
    // geometric tail with ratio 1/π²
    let pi2 = Float::with_val(64, pi(64).square());
    let mut err = Float::with_val(64, &last / Float::with_val(64, &pi2 - 1u32));
    let scale = Float::with_val(64, abs_complex(&sum, 64).max(&Float::with_val(64, 1)));
    if err > Float::with_val(64, &scale >> tol as i32) {
        return Err(Error::NonConvergence(format!(
            "Bernoulli series budget of {} terms exhausted with tail estimate {:.3e}",
            config.alpha_terms,
            err.to_f64()
        )));
    }

    let mut bracket = sum;
    bracket += Complex::with_val(w, &z / Complex::with_val(w, &z - 1u32));
    bracket -= ln2(w);
    bracket -= Complex::with_val(w, z.recip_ref());

    let hawkins_config = EvalConfig { remainder: Remainder::Quadrature, ..config.clone() }.split_at(1.0);
    let hawkins = Hawkins::new(&Order::ratio(1, 2)?, &hawkins_config, 1.0);
    let (c, c_err) = hawkins.bare_remainder(&z);
    let sc = Complex::with_val(w, &z * &c);
    match config.remainder {
        Remainder::Quadrature => {
            bracket += &sc;
            err += Float::with_val(64, c_err * abs_complex(&z, 64));
        }
        Remainder::Omit => err += abs_complex(&sc, 64),
    }

    // π^{s-1} sin(sπ/2)
    let pw = Complex::with_val(w, &z - 1u32);
    let pi_w = pi(w);
    let factor = Complex::with_val(w, Complex::with_val(w, &pw * Float::with_val(w, pi_w.ln_ref())).exp_ref())
        * Complex::with_val(w, Complex::with_val(w, &z * Float::with_val(w, &pi_w / 2u32)).sin_ref());
    let value = Complex::with_val(w, &factor * &bracket);
    let fmag = abs_complex(&factor, 64);
    let error_estimate = Float::with_val(64, err * fmag) + (abs_complex(&value, 64) >> prec as i32);
    Ok(EvalResult {
        value: Complex::with_val(prec, value),
        exact: None,
        error_estimate,
        classification: PointClass::Generic,
        alpha_terms_used: used,
        beta_terms_used: 0,
        method: Method::Series,
        split: Some(1.0),
        warnings: Vec::new(),
    })
}
