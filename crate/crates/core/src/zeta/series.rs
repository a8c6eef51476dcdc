//! The split-point Hawkins series, its term-by-term derivative, and the
//! remainder correction for the truncated expansion at infinity.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rug::ops::Pow;
use rug::{Complex, Float};

use super::{BetaPolicy, EvalConfig, EvalResult, Method, PointClass, Remainder};
use crate::bessel::i_series;
use crate::coefficients::{alpha_values, beta_values, beta_zero, Order};
use crate::numerics::{abs_complex, pi};
use crate::quadrature;
use crate::{Error, Result};

/// Term of the generic series that a special point evaluates in closed form instead.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Skip {
    None,
    Alpha(usize),
    Beta(usize),
}

/// Quadrature node with everything that does not depend on `s`.
struct Node {
    x: Float,
    ln_x: Float,
    weight: Float,
    /// `ln S(x) - x - β_0 + (ν + 1/2) ln x`, the remainder before any β_n is subtracted.
    r0: Float,
}

/// `M(s)` (the bracket multiplying `sin(sπ/2)/π`) and optionally `M'(s)`, with error bounds.
struct Parts {
    m: Complex,
    dm: Complex,
    err: Float,
    derr: Float,
    alpha_used: usize,
    beta_used: usize,
    warnings: Vec<String>,
}

pub(crate) struct Hawkins {
    prec: u32,
    work: u32,
    tol_bits: u32,
    alpha_budget: usize,
    policy: BetaPolicy,
    remainder: Remainder,
    nu: Float,
    nu_half: Float,
    beta0: Float,
    split: f64,
    t: Float,
    ln_t: Float,
    /// ±1 when ν = ±1/2 exactly, where the remainder has the closed form `ln(1 ∓ e^{-2x})`.
    half: i32,
    first_zero: f64,
    alpha: Mutex<Arc<Vec<Float>>>,
    beta: Mutex<Arc<Vec<Float>>>,
    panels: Mutex<HashMap<(u32, usize), Arc<Vec<Node>>>>,
}

fn mag(z: &Complex) -> Float {
    abs_complex(z, 64)
}

fn fmag(x: &Float) -> Float {
    Float::with_val(64, x.abs_ref())
}

impl Hawkins {
    pub(crate) fn new(order: &Order, config: &EvalConfig, split: f64) -> Self {
        let work = config.work();
        let nu = order.to_float(work);
        let nu_half = Float::with_val(work, &nu + 0.5f64);
        let beta0 = beta_zero(order, work).expect("order validated");
        let t = Float::with_val(work, split);
        let ln_t = Float::with_val(work, t.ln_ref());
        let half = if order.is_half() {
            1
        } else if order.is_minus_half() {
            -1
        } else {
            0
        };
        let first_zero = crate::bessel::zeros(order, 1, 64).map(|z| z.zeros()[0].to_f64()).unwrap_or(f64::INFINITY);
        Hawkins {
            prec: config.precision,
            work,
            tol_bits: config.tolerance(),
            alpha_budget: config.alpha_terms,
            policy: config.beta_policy,
            remainder: config.remainder,
            nu,
            nu_half,
            beta0,
            split,
            t,
            ln_t,
            half,
            first_zero,
            alpha: Mutex::new(Arc::new(Vec::new())),
            beta: Mutex::new(Arc::new(Vec::new())),
            panels: Mutex::new(HashMap::new()),
        }
    }

    /// Float `α_k` (k >= 1) at working precision.
    pub(crate) fn alpha(&self, k: usize) -> Float {
        self.alpha_table(k)[k - 1].clone()
    }

    fn alpha_table(&self, need: usize) -> Arc<Vec<Float>> {
        let mut guard = self.alpha.lock().expect("alpha table poisoned");
        if guard.len() < need {
            let count = need.max(2 * guard.len()).max(32);
            *guard = Arc::new(alpha_values(&self.nu, count));
        }
        guard.clone()
    }

    /// Float table with `β_n` at index `n` (index 0 holds `β_0`).
    fn beta_table(&self, need: usize) -> Arc<Vec<Float>> {
        let mut guard = self.beta.lock().expect("beta table poisoned");
        if guard.len() <= need {
            let count = (need + 1).max(2 * guard.len()).max(64);
            let mut values = beta_values(&self.nu, count);
            values[0] = self.beta0.clone();
            *guard = Arc::new(values);
        }
        guard.clone()
    }

    fn check_split(&self) -> Result<()> {
        if self.split >= self.first_zero {
            return Err(Error::Argument(format!(
                "split point T = {} must lie below the first zero j = {:.6} for the alpha series to converge",
                self.split, self.first_zero
            )));
        }
        Ok(())
    }

    fn sin_over_pi(&self, s: &Complex) -> (Complex, Complex) {
        let w = self.work;
        let half_pi = Float::with_val(w, pi(w) / 2u32);
        let arg = Complex::with_val(w, s * &half_pi);
        let sin = Complex::with_val(w, arg.sin_ref());
        let cos = Complex::with_val(w, arg.cos_ref());
        (Complex::with_val(w, sin / pi(w)), cos)
    }

    pub(crate) fn value(&self, s: &Complex, class: PointClass) -> Result<EvalResult> {
        self.check_split()?;
        let parts = self.parts(s, Skip::None, false)?;
        let w = self.work;
        let (factor, _) = self.sin_over_pi(s);
        let v = Complex::with_val(w, &factor * &parts.m);
        let err = Float::with_val(64, mag(&factor) * &parts.err);
        Ok(self.finish(v, err, class, &parts))
    }

    pub(crate) fn derivative(&self, s: &Complex, class: PointClass) -> Result<EvalResult> {
        self.check_split()?;
        let w = self.work;
        match class {
            PointClass::PosEven(k) => {
                // ((-1)^k / 2) [M_rest + 2k C] + (α_k / 2)(1 - 2k ln T)
                let k = k as usize;
                let parts = self.parts(s, Skip::Alpha(k), false)?;
                let sign: i32 = if k % 2 == 0 { 1 } else { -1 };
                let mut v = Complex::with_val(w, &parts.m * sign) / 2u32;
                let lead = Float::with_val(w, &self.ln_t * (2 * k) as u32);
                let lead = Float::with_val(w, 1u32 - lead) * self.alpha(k) / 2u32;
                v += lead;
                let err = Float::with_val(64, &parts.err / 2u32);
                Ok(self.finish(v, err, class, &parts))
            }
            PointClass::NegEven(k) => {
                // ((-1)^k / 2) [M_rest - 2k C] + ((-1)^k β_{2k} / 2)(1 + 2k ln T)
                let k = k as usize;
                let parts = self.parts(s, Skip::Beta(2 * k), false)?;
                let sign: i32 = if k % 2 == 0 { 1 } else { -1 };
                let beta = self.beta_table(2 * k)[2 * k].clone();
                let lead = Float::with_val(w, &self.ln_t * (2 * k) as u32) + 1u32;
                let lead = Float::with_val(w, lead * beta) * sign / 2u32;
                let mut v = Complex::with_val(w, &parts.m * sign) / 2u32;
                v += lead;
                let err = Float::with_val(64, &parts.err / 2u32);
                Ok(self.finish(v, err, class, &parts))
            }
            _ => {
                // (cos(sπ/2)/2) M + (sin(sπ/2)/π) M'
                let parts = self.parts(s, Skip::None, true)?;
                let (factor, cos) = self.sin_over_pi(s);
                let half_cos = Complex::with_val(w, &cos / 2u32);
                let mut v = Complex::with_val(w, &half_cos * &parts.m);
                v += Complex::with_val(w, &factor * &parts.dm);
                let err = Float::with_val(64, mag(&half_cos) * &parts.err) + Float::with_val(64, mag(&factor) * &parts.derr);
                Ok(self.finish(v, err, class, &parts))
            }
        }
    }

    fn finish(&self, v: Complex, err: Float, class: PointClass, parts: &Parts) -> EvalResult {
        let roundoff = Float::with_val(64, mag(&v)) >> (self.prec as i32);
        EvalResult {
            value: Complex::with_val(self.prec, v),
            exact: None,
            error_estimate: err + roundoff,
            classification: class,
            alpha_terms_used: parts.alpha_used,
            beta_terms_used: parts.beta_used,
            method: Method::Series,
            split: Some(self.split),
            warnings: parts.warnings.clone(),
        }
    }

    /// Smallest β count the remainder integral tolerates at `s`, and the excluded index.
    fn beta_floor(&self, s: &Complex, skip: Skip) -> usize {
        let sigma = s.real().to_f64();
        let mut floor = if sigma < 0.0 { (-sigma).ceil() as usize } else { 0 };
        if let Skip::Beta(n) = skip {
            floor = floor.max(n);
        }
        floor
    }

    /// Index just before the first local minimum of `|β_n| x^{-n} / |n + s|` over nonzero
    /// terms starting at `start`, together with that minimal term (without the `|x^{-s}|` factor).
    fn optimal_cut(&self, x: &Float, s: &Complex, start: usize, skip: Skip) -> (usize, Float) {
        let w = self.work;
        let inv = Float::with_val(w, x.recip_ref());
        let mut seq: Vec<(usize, Float)> = Vec::new();
        let mut n = start;
        let mut table = self.beta_table(start + 64);
        loop {
            if n >= table.len() {
                table = self.beta_table(2 * n);
            }
            let b = &table[n];
            if !b.is_zero() && skip != Skip::Beta(n) {
                let denom = mag(&Complex::with_val(64, s + n as u32));
                let pw = Float::with_val(w, (&inv).pow(n as i32));
                let u = Float::with_val(64, fmag(b) * pw) / denom;
                if u.is_zero() || u.get_exp().unwrap_or(0) < -(w as i32) - 16 {
                    // already below working precision (convergent case)
                    return (n, u);
                }
                seq.push((n, u));
                let len = seq.len();
                if len >= 3 && seq[len - 3].1 <= seq[len - 2].1 && seq[len - 3].1 <= seq[len - 1].1 {
                    let (m, u) = seq[len - 3].clone();
                    return (m - 1, u);
                }
            }
            n += 1;
            // No nonzero terms for a long stretch: the expansion terminates (half-integer ν).
            let last = seq.last().map_or(start, |(m, _)| *m);
            if n > last + 64 {
                return (last, Float::with_val(64, 0));
            }
            if n > start + 1_000 {
                let (m, u) = seq.last().cloned().unwrap_or((n, Float::with_val(64, 0)));
                return (m, u);
            }
        }
    }

    fn parts(&self, s: &Complex, skip: Skip, deriv: bool) -> Result<Parts> {
        let w = self.work;
        let t = &self.t;
        let ln_t = &self.ln_t;
        let mut warnings = Vec::new();
        let neg_s = Complex::with_val(w, -s);
        let t_ms = Complex::with_val(w, Complex::with_val(w, &neg_s * ln_t).exp_ref()); // T^{-s}
        let s_tms = Complex::with_val(w, s * &t_ms);
        let eps_bits = w as i32;

        // α series
        let mut asum = Complex::new(w);
        let mut dsum = Complex::new(w);
        let mut alpha_err = Float::with_val(64, 0);
        let mut dalpha_err = Float::with_val(64, 0);
        let t2 = Float::with_val(w, t * t);
        let mut t2n = Float::with_val(w, 1);
        let mut history: Vec<Float> = Vec::new();
        let mut used = 0;
        let mut converged = false;
        let s_abs = mag(s).to_f64();
        let mut last_mag = Float::with_val(64, 0);
        let mut last_dmag = Float::with_val(64, 0);
        for n in 1..=self.alpha_budget {
            t2n *= &t2;
            let table = self.alpha_table(n);
            let mut coef = Float::with_val(w, &table[n - 1] * &t2n);
            if n % 2 == 0 {
                coef = -coef;
            }
            history.push(fmag(&coef));
            used = n;
            if skip == Skip::Alpha(n) {
                continue;
            }
            let d = Complex::with_val(w, (2 * n) as u32 - s);
            let term = Complex::with_val(w, &s_tms * &coef) / &d;
            let m = mag(&term);
            asum += &term;
            if deriv {
                // T^{2n-s} [2n/(2n-s)^2 - s ln T/(2n-s)]
                let a = Complex::with_val(w, (2 * n) as u32 / Complex::with_val(w, d.square_ref()));
                let b = Complex::with_val(w, s * ln_t) / &d;
                let dt = Complex::with_val(w, &t_ms * &coef) * Complex::with_val(w, a - b);
                last_dmag = mag(&dt);
                dsum += dt;
            }
            last_mag = m;
            let scale = Float::with_val(64, mag(&asum).max(&Float::with_val(64, 1)));
            let ratio = if n >= 2 && !history[n - 2].is_zero() {
                Float::with_val(64, &history[n - 1] / &history[n - 2])
            } else {
                Float::with_val(64, 1)
            };
            if (2 * n) as f64 > s_abs + 1.0 && ratio < 1 && last_mag < Float::with_val(64, &scale >> eps_bits) {
                let geo = Float::with_val(64, &ratio / Float::with_val(64, 1u32 - &ratio));
                alpha_err = Float::with_val(64, &last_mag * &geo);
                dalpha_err = Float::with_val(64, &last_dmag * &geo);
                converged = true;
                break;
            }
            if n >= 64 && history[n - 1] >= history[n - 33] {
                return Err(Error::NonConvergence(format!(
                    "alpha series is not decreasing at n = {n}; the split point T = {} is too close to the first zero",
                    self.split
                )));
            }
        }
        if !converged {
            let n = history.len();
            let ratio = Float::with_val(64, &history[n - 1] / &history[n - 2]);
            let tail = if ratio < 1 {
                let geo = Float::with_val(64, &ratio / Float::with_val(64, 1u32 - &ratio));
                dalpha_err = Float::with_val(64, &last_dmag * &geo);
                Float::with_val(64, &last_mag * &geo)
            } else {
                Float::with_val(64, f64::INFINITY)
            };
            let scale = Float::with_val(64, mag(&asum).max(&Float::with_val(64, 1)));
            if tail > Float::with_val(64, &scale >> self.tol_bits as i32) {
                return Err(Error::NonConvergence(format!(
                    "alpha series budget of {} terms exhausted with tail estimate {:.3e}",
                    self.alpha_budget,
                    tail.to_f64()
                )));
            }
            alpha_err = tail;
        }

        // elementary terms
        let sm1 = Complex::with_val(w, s - 1u32);
        let t_1ms = Complex::with_val(w, &t_ms * t);
        let pole = Complex::with_val(w, s * &t_1ms) / &sm1;
        let b0 = Complex::with_val(w, &t_ms * &self.beta0);
        let inv_s = Complex::with_val(w, s.recip_ref());
        let log_bracket = Complex::with_val(w, &inv_s + ln_t);
        let log_term = Complex::with_val(w, &t_ms * &log_bracket) * &self.nu_half;
        let mut m = Complex::with_val(w, &asum + &pole);
        m += &b0;
        m -= &log_term;
        let mut dm = dsum;
        if deriv {
            // T^{1-s} [-1/(s-1)^2 - s ln T/(s-1)]
            let a = Complex::with_val(w, sm1.square_ref()).recip();
            let b = Complex::with_val(w, s * ln_t) / &sm1;
            dm -= Complex::with_val(w, &t_1ms * Complex::with_val(w, a + b));
            dm -= Complex::with_val(w, &b0 * ln_t);
            // -(ν+1/2) T^{-s} [-ln T (ln T + 1/s) - 1/s^2]
            let inner = Complex::with_val(w, &log_bracket * ln_t) + Complex::with_val(w, inv_s.square_ref());
            dm += Complex::with_val(w, &t_ms * &inner) * &self.nu_half;
        }

        // β series at T
        let floor = self.beta_floor(s, skip);
        let (cut, cut_err) = self.optimal_cut(t, s, 1, skip);
        let b = match self.policy {
            BetaPolicy::OptimalTruncation => cut.max(floor),
            BetaPolicy::Fixed(n) => {
                if n < floor && self.remainder == Remainder::Quadrature {
                    warnings.push(format!("beta terms raised from {n} to {floor} so the remainder integral converges"));
                }
                if self.remainder == Remainder::Quadrature {
                    n.max(floor)
                } else {
                    n.max(if let Skip::Beta(k) = skip { k } else { 0 })
                }
            }
        };
        let beta = self.beta_table(b + 2);
        let inv_t = Float::with_val(w, t.recip_ref());
        let mut t_mn = Float::with_val(w, 1);
        for n in 1..=b {
            t_mn *= &inv_t;
            if beta[n].is_zero() || skip == Skip::Beta(n) {
                continue;
            }
            let d = Complex::with_val(w, s + n as u32);
            let coef = Float::with_val(w, &beta[n] * &t_mn);
            m += Complex::with_val(w, &s_tms * &coef) / &d;
            if deriv {
                let a = Complex::with_val(w, n as u32 / Complex::with_val(w, d.square_ref()));
                let bb = Complex::with_val(w, s * ln_t) / &d;
                dm += Complex::with_val(w, &t_ms * &coef) * Complex::with_val(w, a - bb);
            }
        }

        let (err, derr) = match self.remainder {
            Remainder::Omit => {
                let first_omitted = if b == cut {
                    cut_err
                } else {
                    let (_, e) = self.optimal_cut(t, s, b + 1, skip);
                    e
                };
                let e = Float::with_val(64, &first_omitted * mag(&s_tms));
                let de = Float::with_val(64, &e * Float::with_val(64, ln_t.abs_ref()) + 1u32);
                (e + &alpha_err, de + &dalpha_err)
            }
            Remainder::Quadrature => {
                let r = self.remainder(s, b, skip, deriv);
                m += Complex::with_val(w, s * &r.c);
                if deriv {
                    dm += &r.c;
                    dm += Complex::with_val(w, s * &r.dc);
                }
                let s_mag = mag(s);
                let e = Float::with_val(64, &r.err * &s_mag) + &alpha_err;
                let de = Float::with_val(64, &r.derr * &s_mag) + &r.err + &dalpha_err;
                (e, de)
            }
        };

        Ok(Parts { m, dm, err, derr, alpha_used: used, beta_used: b, warnings })
    }

    /// Nodes of panel `[T 2^i, T 2^{i+1}]` for the `n`-point rule, with `s`-independent data.
    fn panel(&self, i: u32, n: usize) -> Arc<Vec<Node>> {
        if let Some(p) = self.panels.lock().expect("panel cache poisoned").get(&(i, n)) {
            return p.clone();
        }
        let w = self.work;
        let rule = quadrature::rule(n, w);
        let a = Float::with_val(w, &self.t * Float::with_val(w, 1u32) << i as i32);
        let half = Float::with_val(w, &a / 2u32);
        let mid = Float::with_val(w, &a * 1.5f64);
        let nodes = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(u, wt)| {
                let x = Float::with_val(w, &mid + Float::with_val(w, u * &half));
                let ln_x = Float::with_val(w, x.ln_ref());
                let weight = Float::with_val(w, wt * &half);
                let r0 = self.r0(&x, &ln_x);
                Node { x, ln_x, weight, r0 }
            })
            .collect::<Vec<_>>();
        let nodes = Arc::new(nodes);
        self.panels.lock().expect("panel cache poisoned").insert((i, n), nodes.clone());
        nodes
    }

    fn r0(&self, x: &Float, ln_x: &Float) -> Float {
        let w = self.work;
        if self.half != 0 {
            let e = Float::with_val(w, Float::with_val(w, x * -2i32).exp_ref());
            let arg = if self.half > 0 { -e } else { e };
            return Float::with_val(w, arg.ln_1p_ref());
        }
        let wide = w + 16 + (x.to_f64().log2().max(0.0) as u32);
        let l = i_series(&self.nu, x, wide).ln();
        let mut r = Float::with_val(wide, l - x);
        r -= &self.beta0;
        r += Float::with_val(wide, &self.nu_half * ln_x);
        Float::with_val(w, r)
    }

    fn remainder(&self, s: &Complex, b: usize, skip: Skip, deriv: bool) -> RemainderValue {
        let w = self.work;
        let sigma = s.real().to_f64();
        let im = s.imag().to_f64().abs();
        let wf = f64::from(w);
        let x_min = (wf * std::f64::consts::LN_2 + ((-sigma).max(0.0) + 1.0) * wf.ln()) / 2.0 + 2.0;
        let panels = ((x_min / self.split).log2().ceil().max(1.0)) as u32;
        let x_cut = Float::with_val(w, &self.t * Float::with_val(w, 1u32) << panels as i32);
        let n_hi = ((4.0 / 3.0) * wf * std::f64::consts::LN_2 / (2.0 * 5.83f64.ln())).ceil() as usize + (im / 2.0).ceil() as usize + 4;
        let n_lo = 3 * n_hi / 4;
        let beta = self.beta_table(b + 2);
        let s1 = Complex::with_val(w, s + 1u32);
        let mut acc = [Complex::new(w), Complex::new(w)];
        let mut dacc = [Complex::new(w), Complex::new(w)];
        for i in 0..panels {
            for (slot, n) in [(0usize, n_hi), (1usize, n_lo)] {
                for node in self.panel(i, n).iter() {
                    let mut r = node.r0.clone();
                    if b > 0 {
                        let inv = Float::with_val(w, node.x.recip_ref());
                        let mut p = Float::with_val(w, 1);
                        for bk in beta.iter().take(b + 1).skip(1) {
                            p *= &inv;
                            if !bk.is_zero() {
                                r -= Float::with_val(w, bk * &p);
                            }
                        }
                    }
                    // R_B(x) x^{-s-1} w
                    let pw = Complex::with_val(w, Complex::with_val(w, &s1 * &node.ln_x) * -1i32).exp();
                    let f = Complex::with_val(w, &pw * Float::with_val(w, &r * &node.weight));
                    if deriv {
                        dacc[slot] -= Complex::with_val(w, &f * &node.ln_x);
                    }
                    acc[slot] += f;
                }
            }
        }
        let err_q = mag(&Complex::with_val(w, &acc[0] - &acc[1]));
        let derr_q = mag(&Complex::with_val(w, &dacc[0] - &dacc[1]));
        let [mut c, _] = acc;
        let [mut dc, _] = dacc;

        // Expansion tail beyond X, optimally truncated.
        let ln_x = Float::with_val(w, x_cut.ln_ref());
        let x_ms = Complex::with_val(w, Complex::with_val(w, s * &ln_x) * -1i32).exp();
        let (cut, cut_err) = self.optimal_cut(&x_cut, s, b + 1, skip);
        let beta = self.beta_table(cut + 2);
        let inv_x = Float::with_val(w, x_cut.recip_ref());
        let mut p = Float::with_val(w, (&inv_x).pow(b as i32));
        for (n, bn) in beta.iter().enumerate().take(cut + 1).skip(b + 1) {
            p *= &inv_x;
            if bn.is_zero() || skip == Skip::Beta(n) {
                continue;
            }
            let d = Complex::with_val(w, s + n as u32);
            let term = Complex::with_val(w, &x_ms * Float::with_val(w, bn * &p)) / &d;
            if deriv {
                // β_n X^{-n-s} (-ln X/(n+s) - 1/(n+s)^2)
                dc -= Complex::with_val(w, &term * &ln_x);
                dc -= Complex::with_val(w, &term / &d);
            }
            c += term;
        }
        // smallest omitted term plus the exponentially small part e^{-2X} X^{-σ-1} / 2
        let xs_mag = mag(&x_ms);
        let expo = Float::with_val(64, Float::with_val(64, &x_cut * -2i32).exp()) * Float::with_val(64, (&x_cut).pow(-sigma - 1.0)) / 2u32;
        let err_t = Float::with_val(64, &cut_err * &xs_mag) + expo;
        let derr_t = Float::with_val(64, &err_t * Float::with_val(64, &ln_x + 1u32));
        RemainderValue { c, dc, err: err_q + err_t, derr: derr_q + derr_t }
    }
}

impl Hawkins {
    /// `C(s)` with no β terms subtracted and its error bound; used by the Riemann case at ν = 1/2.
    pub(crate) fn bare_remainder(&self, s: &Complex) -> (Complex, Float) {
        let r = self.remainder(s, 0, Skip::None, false);
        (r.c, r.err)
    }
}

struct RemainderValue {
    c: Complex,
    dc: Complex,
    err: Float,
    derr: Float,
}
