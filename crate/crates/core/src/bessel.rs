//! `J_ν`, `J_ν'`, `I_ν` by ascending series, and the positive zeros of `J_ν`.
//!
//! The series are summed with enough extra precision to absorb cancellation
//! (about `1.45 x` bits at argument `x`), so no asymptotic expansions are needed.

use rug::Float;

use crate::coefficients::Order;
use crate::numerics::{pi, pow2};
use crate::{Error, Result};

/// Extra bits needed to sum the alternating series at `x`.
fn cancellation_bits(x: &Float) -> u32 {
    (x.to_f64() * std::f64::consts::LOG2_E).ceil().max(0.0) as u32 + 32
}

/// `Σ_m t_m` and `Σ_m (ν + 2m) t_m` with `t_m = (-x²/4)^m / (m! (ν+1)_m)`.
///
/// Then `J_ν = (x/2)^ν / Γ(ν+1) · first` and `J_ν' = (x/2)^ν / Γ(ν+1) · second / x`.
fn j_series(nu: &Float, x: &Float, prec: u32) -> (Float, Float) {
    let wp = prec + cancellation_bits(x);
    let nu = Float::with_val(wp, nu);
    let y = Float::with_val(wp, x * x) / 4u32;
    let mut t = Float::with_val(wp, 1);
    let mut sum = Float::with_val(wp, 1);
    let mut dsum = Float::with_val(wp, &nu);
    let mut max = Float::with_val(64, 1);
    let sqrt_y = y.to_f64().sqrt();
    let mut m = 0u32;
    loop {
        m += 1;
        let denom = Float::with_val(wp, &nu + m) * m;
        t *= &y;
        t /= denom;
        t = -t;
        let weight = Float::with_val(wp, &nu + 2 * m);
        sum += &t;
        dsum += Float::with_val(wp, &t * &weight);
        let mag = Float::with_val(64, t.abs_ref());
        if mag > max {
            max = mag.clone();
        }
        if f64::from(m) > sqrt_y + 1.0 && mag < Float::with_val(64, &max >> (wp as i32 + 8)) {
            break;
        }
    }
    (Float::with_val(prec, sum), Float::with_val(prec, dsum))
}

fn check_arg(x: &Float) -> Result<()> {
    if x.is_nan() || *x < 0 {
        return Err(Error::Domain(format!("Bessel argument must be >= 0, got {}", x.to_f64())));
    }
    Ok(())
}

/// `(x/2)^ν / Γ(ν+1)`.
fn prefactor(nu: &Float, x: &Float, prec: u32) -> Float {
    let wp = prec + 16;
    let half = Float::with_val(wp, x / 2u32);
    let pow = Float::with_val(wp, half.ln() * nu).exp();
    let gamma = Float::with_val(wp, nu + 1u32).gamma();
    Float::with_val(prec, pow / gamma)
}

/// `J_ν(x)` and `J_ν'(x)` at the precision of `x`.
pub fn eval_j(order: &Order, x: &Float) -> Result<(Float, Float)> {
    check_arg(x)?;
    let prec = x.prec();
    let nu = order.to_float(prec + 16);
    if x.is_zero() {
        let value = if nu.is_zero() {
            Float::with_val(prec, 1)
        } else if nu > 0 {
            Float::with_val(prec, 0)
        } else {
            Float::with_val(prec, f64::INFINITY)
        };
        let deriv = if nu == 1 {
            Float::with_val(prec, 0.5)
        } else if nu.is_zero() || nu > 1 {
            Float::with_val(prec, 0)
        } else if nu > 0 {
            Float::with_val(prec, f64::INFINITY)
        } else {
            Float::with_val(prec, f64::NEG_INFINITY)
        };
        return Ok((value, deriv));
    }
    let (s, ds) = j_series(&nu, x, prec + 16);
    let pre = prefactor(&nu, x, prec + 16);
    let value = Float::with_val(prec, &s * &pre);
    let deriv = Float::with_val(prec, Float::with_val(prec + 16, &ds * &pre) / x);
    Ok((value, deriv))
}

/// `Σ_m (x²/4)^m / (m! (ν+1)_m) = Γ(ν+1) (x/2)^{-ν} I_ν(x)`; all terms positive.
pub(crate) fn i_series(nu: &Float, x: &Float, prec: u32) -> Float {
    let wp = prec + 16;
    let nu = Float::with_val(wp, nu);
    let y = Float::with_val(wp, x * x) / 4u32;
    let mut t = Float::with_val(wp, 1);
    let mut sum = Float::with_val(wp, 1);
    let tiny = wp as i32 + 8;
    let yf = y.to_f64();
    let mut m = 0u32;
    loop {
        m += 1;
        let denom = Float::with_val(wp, &nu + m) * m;
        t *= &y;
        t /= denom;
        sum += &t;
        if f64::from(m) * f64::from(m) > yf && Float::with_val(64, &t << tiny) < sum {
            break;
        }
    }
    Float::with_val(prec, sum)
}

/// `I_ν(x)` at the precision of `x`.
pub fn eval_i(order: &Order, x: &Float) -> Result<Float> {
    check_arg(x)?;
    let prec = x.prec();
    let nu = order.to_float(prec + 16);
    if x.is_zero() {
        return Ok(if nu.is_zero() {
            Float::with_val(prec, 1)
        } else if nu > 0 {
            Float::with_val(prec, 0)
        } else {
            Float::with_val(prec, f64::INFINITY)
        });
    }
    let s = i_series(&nu, x, prec + 16);
    Ok(Float::with_val(prec, s * prefactor(&nu, x, prec + 16)))
}

/// First-order McMahon estimate `(n + ν/2 - 1/4) π`.
pub fn mcmahon(order: &Order, n: usize, prec: u32) -> Float {
    let nu = order.to_float(prec);
    let b = Float::with_val(prec, &nu / 2u32) + n as u32;
    Float::with_val(prec, b - 0.25f64) * pi(prec)
}

/// Three-term McMahon estimate, used only as a Newton start.
fn mcmahon3(nu: f64, n: usize) -> f64 {
    let b = (n as f64 + nu / 2.0 - 0.25) * std::f64::consts::PI;
    let mu = 4.0 * nu * nu;
    let e = 8.0 * b;
    b - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e.powi(3))
}

/// Sign of `J_ν` (equivalently of the reduced series) at `x > 0`.
fn sign_at(nu: &Float, x: &Float, prec: u32) -> i32 {
    let (s, _) = j_series(nu, x, prec);
    match s.cmp0() {
        Some(std::cmp::Ordering::Greater) => 1,
        Some(std::cmp::Ordering::Less) => -1,
        _ => 0,
    }
}

/// Ordered positive zeros of `J_ν` at a fixed precision.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroTable {
    order: Order,
    zeros: Vec<Float>,
    precision: u32,
}

impl ZeroTable {
    pub fn order(&self) -> &Order {
        &self.order
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn zeros(&self) -> &[Float] {
        &self.zeros
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    /// The first `n` zeros (all of them if `n` exceeds the table).
    pub fn prefix(&self, n: usize) -> ZeroTable {
        ZeroTable { order: self.order.clone(), zeros: self.zeros[..n.min(self.zeros.len())].to_vec(), precision: self.precision }
    }

    /// `j_{ν,n}` for `n >= 1`.
    pub fn get(&self, n: usize) -> Option<&Float> {
        n.checked_sub(1).and_then(|i| self.zeros.get(i))
    }

    /// Checks ordering, positivity, the residual bound
    /// `|J_ν(z)| <= 2^{16-P} |J_ν'(z)| z` and interlacing with the McMahon estimates.
    pub fn check(&self) -> Result<()> {
        let prec = self.precision;
        let mut prev = Float::with_val(prec, 0);
        let nu = self.order.to_float(64).to_f64();
        for (i, z) in self.zeros.iter().enumerate() {
            let n = i + 1;
            if *z <= prev {
                return Err(Error::NonConvergence(format!("zero {n} is not above zero {}", n - 1)));
            }
            let (j, dj) = eval_j(&self.order, z)?;
            let bound = Float::with_val(prec, dj.abs() * z) << (16 - prec as i32);
            if Float::with_val(prec, j.abs()) > bound {
                return Err(Error::NonConvergence(format!("residual too large at zero {n}")));
            }
            if interlacing_applies(nu, n) {
                let dist = Float::with_val(prec, z - mcmahon(&self.order, n, prec)).abs();
                if dist.to_f64() >= std::f64::consts::FRAC_PI_2 {
                    return Err(Error::NonConvergence(format!("zero {n} is not interlaced with its McMahon estimate")));
                }
            }
            prev = z.clone();
        }
        Ok(())
    }
}

/// McMahon's expansion is in powers of `ν²/n`; interlacing is only asserted once `n >= max(3, 2ν)`.
fn interlacing_applies(nu: f64, n: usize) -> bool {
    n >= 3 && n as f64 >= 2.0 * nu
}

/// The first `count` positive zeros of `J_ν` at `prec` bits.
pub fn zeros(order: &Order, count: usize, prec: u32) -> Result<ZeroTable> {
    if count == 0 {
        return Err(Error::Argument("zero count must be positive".into()));
    }
    let wp = prec + 16;
    let nu_f = order.to_float(wp);
    let nu = nu_f.to_f64();
    let pi_w = pi(wp);
    let step = Float::with_val(wp, &pi_w / 8u32);
    let quarter = Float::with_val(wp, &pi_w / 4u32);
    let mut out: Vec<Float> = Vec::with_capacity(count);
    for n in 1..=count {
        let prev = out.last().cloned().unwrap_or_else(|| Float::with_val(wp, 0));
        // Sign just past the previous zero, and just past the next one.
        let before = if n % 2 == 1 { 1 } else { -1 };
        let mut bracket = None;
        if n >= 3 {
            let c = mcmahon(order, n, wp);
            let lo = Float::with_val(wp, &c - &quarter);
            let hi = Float::with_val(wp, &c + &quarter);
            let min_gap = if nu >= 0.5 {
                std::f64::consts::PI
            } else {
                Float::with_val(64, &out[n - 2] - &out[n - 3]).to_f64()
            };
            let room = Float::with_val(64, &hi - &prev).to_f64();
            if lo > prev
                && room < 1.99 * min_gap
                && sign_at(&nu_f, &lo, 64) == before
                && sign_at(&nu_f, &hi, 64) == -before
            {
                bracket = Some((lo, hi));
            }
        }
        let (lo, hi) = match bracket {
            Some(b) => b,
            None => scan(&nu_f, &prev, &step, before, n)?,
        };
        let guess = if n >= 3 { Some(mcmahon3(nu, n)) } else { None };
        out.push(refine(&nu_f, lo, hi, guess, before, prec, n)?);
    }
    let zeros = out.into_iter().map(|z| Float::with_val(prec, z)).collect();
    Ok(ZeroTable { order: order.clone(), zeros, precision: prec })
}

fn scan(nu: &Float, prev: &Float, step: &Float, before: i32, n: usize) -> Result<(Float, Float)> {
    let wp = prev.prec();
    let mut a = Float::with_val(wp, prev);
    for _ in 0..100_000 {
        let b = Float::with_val(wp, &a + step);
        let sb = sign_at(nu, &b, 64);
        if sb == -before {
            return Ok((a, b));
        }
        if sb == 0 {
            // Landed on the zero itself; widen by half a step.
            let lo = Float::with_val(wp, &b - Float::with_val(wp, step / 2u32));
            let hi = Float::with_val(wp, &b + Float::with_val(wp, step / 2u32));
            return Ok((lo, hi));
        }
        a = b;
    }
    Err(Error::NonConvergence(format!("no sign change found for zero {n}")))
}

/// Bracketed Newton with precision doubling; bisection whenever Newton leaves the bracket.
fn refine(nu: &Float, lo: Float, hi: Float, guess: Option<f64>, before: i32, prec: u32, n: usize) -> Result<Float> {
    let wp = prec + 16;
    let mut lo = lo;
    let mut hi = hi;
    let mut x = match guess {
        Some(g) if Float::with_val(64, g) > lo && Float::with_val(64, g) < hi => Float::with_val(wp, g),
        _ => Float::with_val(wp, &lo + &hi) / 2u32,
    };
    let mut p = 64u32;
    let target_rel = 32i64 - i64::from(prec);
    for _ in 0..400 {
        let xp = Float::with_val(p, &x);
        let (s, ds) = j_series(nu, &xp, p);
        // update the bracket from the sign of J at x
        let sx = s.cmp0().map(|o| o as i32).unwrap_or(0);
        if sx == 0 {
            return Ok(x);
        }
        if sx == before {
            lo = Float::with_val(wp, &x);
        } else {
            hi = Float::with_val(wp, &x);
        }
        // Newton step: J / J' = x · s / ds
        let step = Float::with_val(p, Float::with_val(p, &s * &xp) / &ds);
        let cand = Float::with_val(wp, &x - &step);
        let converged_here = Float::with_val(64, step.abs_ref()) < Float::with_val(64, &x * pow2(target_rel, 64));
        if p >= wp && converged_here {
            return Ok(cand);
        }
        if cand > lo && cand < hi {
            x = cand;
            let small = Float::with_val(64, step.abs_ref()) < Float::with_val(64, &x * pow2(8 - i64::from(p) / 2, 64));
            if p < wp && small {
                p = (2 * p).min(wp);
            }
        } else {
            x = Float::with_val(wp, &lo + &hi) / 2u32;
            let width = Float::with_val(64, &hi - &lo);
            if width < Float::with_val(64, &x * pow2(-8 - i64::from(prec), 64)) {
                return Ok(x);
            }
        }
    }
    Err(Error::NonConvergence(format!("Newton refinement of zero {n} did not converge")))
}
