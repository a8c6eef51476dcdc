//! The Z-representation
//! `Z_ν(s) = (sin(sπ/2)/2π) [ Σ a_n 2^{1-2n}/(2n-s) + 2/(s-1) - (1+2ν)/s + (ν²-1/4) Σ_{n>=2} d_n/(s+n-1) ]`.
//!
//! The d-series is asymptotic and is cut before its first local minimum.

use std::sync::{Arc, Mutex};

use rug::{Complex, Float, Rational};

use super::{Argument, BetaPolicy, EvalConfig, EvalResult, Evaluator, Method, PointClass};
use crate::coefficients::{a_values, d_values, CoefficientTable, Family, Order};
use crate::numerics::{abs_complex, pi, Num};
use crate::{Error, Result};

pub(crate) struct ZTables {
    work: u32,
    nu: Float,
    /// `ν² - 1/4`
    q: Float,
    a: Mutex<Arc<Vec<Float>>>,
    d: Mutex<Arc<Vec<Float>>>,
}

impl ZTables {
    pub(crate) fn new(order: &Order, config: &EvalConfig) -> Self {
        let work = config.work();
        let nu = order.to_float(work);
        let q = Float::with_val(work, nu.square_ref()) - 0.25f64;
        ZTables { work, nu, q, a: Mutex::new(Arc::new(Vec::new())), d: Mutex::new(Arc::new(Vec::new())) }
    }

    fn a(&self, need: usize) -> Arc<Vec<Float>> {
        let mut g = self.a.lock().expect("a table poisoned");
        if g.len() <= need {
            *g = Arc::new(a_values(&self.nu, (need + 1).max(2 * g.len()).max(32)));
        }
        g.clone()
    }

    /// Entry `i` holds `d_{i+2}`.
    fn d(&self, need: usize) -> Arc<Vec<Float>> {
        let mut g = self.d.lock().expect("d table poisoned");
        if g.len() + 2 <= need {
            *g = Arc::new(d_values(&self.nu, (need + 1).max(2 * g.len()).max(32)));
        }
        g.clone()
    }
}

fn mag(z: &Complex) -> Float {
    abs_complex(z, 64)
}

pub(crate) fn z_value(ev: &Evaluator, s: &Argument, class: PointClass) -> Result<EvalResult> {
    let prec = ev.prec();
    let order = ev.order();
    match class {
        PointClass::Origin => {
            // -(1 + 2ν)/4
            let v = match order.to_num(ev.config.work()) {
                Num::Exact(r) => Num::Exact(-(Rational::from(&r * 2) + 1u32) / 4u32),
                Num::Approx(f) => Num::Approx(-(Float::with_val(f.prec(), &f * 2u32) + 1u32) / 4u32),
            };
            Ok(EvalResult::from_num(&v, class, prec))
        }
        PointClass::PosEven(k) => {
            // (-1)^{k+1} a_k 2^{-1-2k}
            let k = k as usize;
            let a = CoefficientTable::build(Family::A, order, k + 1, ev.config.work())?.get(k).cloned().expect("built");
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let v = match a {
                Num::Exact(r) => Num::Exact(Rational::from(&r * sign) >> (2 * k as u32 + 1)),
                Num::Approx(f) => Num::Approx(Float::with_val(f.prec(), &f * sign) >> (2 * k as i32 + 1)),
            };
            Ok(EvalResult::from_num(&v, class, prec))
        }
        PointClass::NegEven(k) => {
            // (-1)^k (ν² - 1/4) d_{2k+1} / 4
            let k = k as usize;
            let d = CoefficientTable::build(Family::D, order, 2 * k, ev.config.work())?.get(2 * k + 1).cloned().expect("built");
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let v = match (d, order.to_num(ev.config.work())) {
                (Num::Exact(d), Num::Exact(nu)) => {
                    let q = Rational::from(&nu * &nu) - Rational::from((1, 4));
                    Num::Exact(q * d * sign / 4u32)
                }
                (d, nu) => {
                    let w = ev.config.work();
                    let nu = nu.to_float(w);
                    let q = Float::with_val(w, nu.square_ref()) - 0.25f64;
                    Num::Approx(Float::with_val(w, q * d.to_float(w)) * sign / 4u32)
                }
            };
            Ok(EvalResult::from_num(&v, class, prec))
        }
        PointClass::PoleAtOne => {
            let residue = Float::with_val(prec, pi(prec).recip());
            Err(Error::Pole { pole: 1, residue })
        }
        PointClass::PoleNegOdd(k) | PointClass::RemovedNegOdd(k) => {
            let tables = ev.zrep();
            let w = tables.work;
            let n = 2 * k as usize;
            let coeff = Float::with_val(w, &tables.q * &tables.d(n)[n - 2]);
            if coeff.is_zero() {
                z_series(ev, &s.value(w), class, Some(n))
            } else {
                // sin((1-2k)π/2) / (2π) · (ν² - 1/4) d_{2k}
                let sign: i32 = if k % 2 == 0 { 1 } else { -1 };
                let residue = Float::with_val(prec, coeff * sign / (pi(w) * 2u32));
                Err(Error::Pole { pole: 1 - 2 * i64::from(k), residue })
            }
        }
        PointClass::Generic => z_series(ev, &s.value(ev.config.work()), class, None),
    }
}

fn z_series(ev: &Evaluator, s: &Complex, class: PointClass, skip_d: Option<usize>) -> Result<EvalResult> {
    let tables = ev.zrep();
    let w = tables.work;
    let prec = ev.prec();
    let budget = ev.config.alpha_terms;
    let eps = w as i32;

    let mut asum = Complex::new(w);
    let mut a_err = Float::with_val(64, 0);
    let mut converged = false;
    let mut prev = Float::with_val(64, 0);
    let mut used = 0;
    let s_abs = mag(s).to_f64();
    for n in 1..=budget {
        let a = tables.a(n);
        let coef = Float::with_val(w, &a[n] >> (2 * n as i32 - 1));
        let term = Complex::with_val(w, &coef / Complex::with_val(w, (2 * n) as u32 - s));
        let m = mag(&term);
        asum += term;
        used = n;
        let cm = Float::with_val(64, coef.abs_ref());
        let ratio = if n > 1 && !prev.is_zero() { Float::with_val(64, &cm / &prev) } else { Float::with_val(64, 1) };
        prev = cm;
        let scale = mag(&asum).max(&Float::with_val(64, 1));
        if (2 * n) as f64 > s_abs + 1.0 && ratio < 1 && m < Float::with_val(64, &scale >> eps) {
            a_err = Float::with_val(64, &m * &ratio) / Float::with_val(64, 1u32 - &ratio);
            converged = true;
            break;
        }
        if n >= 64 && ratio >= 1 {
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence(format!(
            "a-series of the Z-representation did not converge within {used} terms (needs j_1 > 1)"
        )));
    }

    let mut bracket = asum;
    bracket += Complex::with_val(w, 2u32 / Complex::with_val(w, s - 1u32));
    let one_2nu = Float::with_val(w, &tables.nu * 2u32) + 1u32;
    bracket -= Complex::with_val(w, &one_2nu / s);

    // d-series
    let mut d_used = 0;
    let mut d_err = Float::with_val(64, 0);
    if !tables.q.is_zero() {
        let mut seq: Vec<(usize, Float)> = Vec::new();
        let mut cut = None;
        let mut n = 2;
        while cut.is_none() && n < 1_000 {
            let d = tables.d(n + 1);
            if Some(n) != skip_d && !d[n - 2].is_zero() {
                let den = mag(&Complex::with_val(64, s + (n - 1) as u32));
                let u = Float::with_val(64, d[n - 2].abs_ref()) / den;
                if u.get_exp().unwrap_or(0) < -(w as i32) - 16 {
                    cut = Some((n + 1, u.clone()));
                }
                seq.push((n, u));
                let l = seq.len();
                if l >= 3 && seq[l - 3].1 <= seq[l - 2].1 && seq[l - 3].1 <= seq[l - 1].1 {
                    cut = Some(seq[l - 3].clone());
                }
            }
            n += 1;
            if n > seq.last().map_or(2, |(m, _)| *m) + 64 {
                // the expansion terminates
                cut = Some((n, Float::with_val(64, 0)));
            }
        }
        let (min_n, min_u) = cut.unwrap_or((n, Float::with_val(64, 0)));
        let end = match ev.config.beta_policy {
            BetaPolicy::OptimalTruncation => min_n - 1,
            BetaPolicy::Fixed(b) => b.max(1),
        };
        let d = tables.d(end + 1);
        let mut dsum = Complex::new(w);
        for n in 2..=end {
            if Some(n) == skip_d {
                continue;
            }
            dsum += Complex::with_val(w, &d[n - 2] / Complex::with_val(w, s + (n - 1) as u32));
        }
        bracket += Complex::with_val(w, &dsum * &tables.q);
        d_used = end.saturating_sub(1);
        let first_omitted = if end == min_n - 1 {
            min_u
        } else {
            let dd = tables.d(end + 2);
            Float::with_val(64, dd[end - 1].abs_ref()) / mag(&Complex::with_val(64, s + end as u32))
        };
        d_err = Float::with_val(64, &first_omitted * Float::with_val(64, tables.q.abs_ref()));
    }

    let half_pi = Float::with_val(w, pi(w) / 2u32);
    let sin = Complex::with_val(w, s * &half_pi).sin();
    let factor = Complex::with_val(w, sin / Float::with_val(w, pi(w) * 2u32));
    let v = Complex::with_val(w, &factor * &bracket);
    let err = Float::with_val(64, mag(&factor) * Float::with_val(64, &a_err + &d_err)) + (mag(&v) >> prec as i32);
    let mut r = EvalResult {
        value: Complex::with_val(prec, v),
        exact: None,
        error_estimate: err,
        classification: class,
        alpha_terms_used: used,
        beta_terms_used: d_used,
        method: Method::Series,
        split: None,
        warnings: Vec::new(),
    };
    if skip_d.is_some() {
        r.warnings.push("removed pole of the d-series; its vanishing term was dropped".into());
    }
    Ok(r)
}

pub(crate) fn z_slope_at_origin(ev: &Evaluator) -> Result<EvalResult> {
    let prec = ev.prec();
    let bits = (prec / 8).min(40);
    let h = Float::with_val(prec, 1u32) >> bits as i32;
    let plus = ev.z_repr(&Argument::real(h.clone()))?;
    let minus = ev.z_repr(&Argument::real(Float::with_val(prec, -&h)))?;
    let w = prec + 16;
    let diff = Complex::with_val(w, &plus.value - &minus.value);
    let slope = Complex::with_val(prec, diff / Float::with_val(w, &h * 2u32));
    let noise = Float::with_val(64, &plus.error_estimate + &minus.error_estimate) / Float::with_val(64, &h * 2u32);
    // central-difference truncation is O(h²)
    let fd = Float::with_val(64, h.square_ref());
    Ok(EvalResult {
        value: slope,
        exact: None,
        error_estimate: noise + fd,
        classification: PointClass::Origin,
        alpha_terms_used: plus.alpha_terms_used.max(minus.alpha_terms_used),
        beta_terms_used: plus.beta_terms_used.max(minus.beta_terms_used),
        method: Method::Series,
        split: None,
        warnings: vec![format!("central difference with h = 2^-{bits}")],
    })
}
