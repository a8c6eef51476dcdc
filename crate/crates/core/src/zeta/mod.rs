//! The Bessel zeta function `ζ_ν(s)`: classification, values, derivatives,
//! residues, the Z-representation, the product of roots and the Riemann case.
//!
//! Generic arguments use the split-point series
//!
//! ```text
//! (sin(sπ/2)/π) [ Σ (-1)^{n+1} α_n s T^{2n-s}/(2n-s) + s T^{1-s}/(s-1) + β_0 T^{-s}
//!                 + Σ β_n s T^{-n-s}/(n+s) - (ν+1/2) T^{-s}(ln T + 1/s) + s C(s) ]
//! ```
//!
//! where `C(s)` integrates what the truncated expansion at infinity leaves out
//! (see [`Remainder`]). Even integers, the origin and the poles use closed forms.

mod riemann;
mod series;
mod zrepr;

use std::fmt;
use std::sync::{Mutex, OnceLock};

use rug::{Complex, Float, Rational};

use crate::bessel;
use crate::coefficients::{CoefficientTable, Family, Order};
use crate::numerics::{self, bernoulli, Num, DEFAULT_PRECISION};
use crate::{Error, Result};

pub use riemann::riemann;

/// Extra working bits on top of the requested precision.
const GUARD_BITS: u32 = 64;

/// An evaluation point `s`. Integer literals are kept exactly so that
/// classification never depends on rounding.
#[derive(Clone, Debug, PartialEq)]
pub struct Argument {
    value: Complex,
    integer: Option<i64>,
}

impl Argument {
    pub fn integer(n: i64) -> Self {
        Argument { value: Complex::with_val(64, (n, 0)), integer: Some(n) }
    }

    pub fn real(x: Float) -> Self {
        let prec = x.prec();
        Argument { value: Complex::with_val(prec, (x, 0)), integer: None }
    }

    pub fn complex(z: Complex) -> Self {
        Argument { value: z, integer: None }
    }

    pub fn from_f64(x: f64) -> Self {
        Self::real(Float::with_val(64, x))
    }

    /// Parses `re` or `re,im`. A bare integer literal (optionally with `,0`) is exact.
    pub fn parse(text: &str, prec: u32) -> Result<Self> {
        let (re, im) = match text.split_once(',') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (text.trim(), None),
        };
        let im_zero = im.map_or(true, |t| t.parse::<i64>() == Ok(0));
        if im_zero {
            if let Ok(n) = re.parse::<i64>() {
                return Ok(Self::integer(n));
            }
        }
        let parse = |t: &str| {
            Float::parse(t)
                .map(|p| Float::with_val(prec, p))
                .map_err(|e| Error::Argument(format!("cannot parse {t:?} as a number: {e}")))
        };
        let re = parse(re)?;
        let im = match im {
            Some(t) => parse(t)?,
            None => Float::with_val(prec, 0),
        };
        Ok(Self::complex(Complex::with_val(prec, (re, im))))
    }

    pub fn value(&self, prec: u32) -> Complex {
        match self.integer {
            Some(n) => Complex::with_val(prec, (n, 0)),
            None => Complex::with_val(prec, &self.value),
        }
    }

    pub fn exact_integer(&self) -> Option<i64> {
        self.integer
    }

    pub fn is_real(&self) -> bool {
        self.integer.is_some() || self.value.imag().is_zero()
    }

    pub fn label(&self) -> String {
        match self.integer {
            Some(n) => n.to_string(),
            None if self.value.imag().is_zero() => self.value.real().to_string_radix(10, None),
            None => format!(
                "{},{}",
                self.value.real().to_string_radix(10, None),
                self.value.imag().to_string_radix(10, None)
            ),
        }
    }

    /// The integer `s` equals: exactly for integer literals, else within `2^{-tol_bits}`.
    pub fn near_integer(&self, tol_bits: u32) -> Option<i64> {
        if let Some(n) = self.integer {
            return Some(n);
        }
        let tol = numerics::pow2(-i64::from(tol_bits), 64);
        let re = self.value.real();
        if !re.is_finite() || Float::with_val(64, self.value.imag().abs_ref()) >= tol {
            return None;
        }
        let rounded = Float::with_val(re.prec(), re.round_ref());
        let n = rounded.to_i32_saturating()?;
        if Float::with_val(re.prec(), re - &rounded).abs() < tol && rounded.abs() < 1e9 {
            Some(i64::from(n))
        } else {
            None
        }
    }
}

impl fmt::Display for Argument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointClass {
    Generic,
    Origin,
    PosEven(u32),
    NegEven(u32),
    PoleAtOne,
    PoleNegOdd(u32),
    RemovedNegOdd(u32),
}

impl PointClass {
    pub fn is_pole(self) -> bool {
        matches!(self, PointClass::PoleAtOne | PointClass::PoleNegOdd(_))
    }
}

impl fmt::Display for PointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointClass::Generic => f.write_str("Generic"),
            PointClass::Origin => f.write_str("Origin"),
            PointClass::PosEven(k) => write!(f, "PosEven({k})"),
            PointClass::NegEven(k) => write!(f, "NegEven({k})"),
            PointClass::PoleAtOne => f.write_str("PoleAtOne"),
            PointClass::PoleNegOdd(k) => write!(f, "PoleNegOdd({k})"),
            PointClass::RemovedNegOdd(k) => write!(f, "RemovedNegOdd({k})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BetaPolicy {
    /// Stop before the first local minimum of the term magnitudes.
    OptimalTruncation,
    Fixed(usize),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Split {
    Fixed(f64),
    /// `min(2, 0.8 j_{ν,1})`.
    Auto,
}

/// What to do with the part of `ln I_ν` that the truncated expansion at infinity misses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Remainder {
    /// Integrate it numerically from `T` to a cutoff and add the optimally truncated tail beyond.
    Quadrature,
    /// Drop it: the bare two-series formula, with the first omitted β term as the error estimate.
    Omit,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvalConfig {
    pub precision: u32,
    /// Budget for the α series.
    pub alpha_terms: usize,
    pub beta_policy: BetaPolicy,
    pub split: Split,
    pub remainder: Remainder,
    /// Accepted relative error, in bits; defaults to `precision - 16`.
    pub tolerance_bits: Option<u32>,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            precision: DEFAULT_PRECISION,
            alpha_terms: 1000,
            beta_policy: BetaPolicy::OptimalTruncation,
            split: Split::Fixed(1.0),
            remainder: Remainder::Quadrature,
            tolerance_bits: None,
        }
    }
}

impl EvalConfig {
    pub fn with_precision(precision: u32) -> Self {
        EvalConfig { precision, ..Self::default() }
    }

    pub fn auto_split(mut self) -> Self {
        self.split = Split::Auto;
        self
    }

    pub fn split_at(mut self, t: f64) -> Self {
        self.split = Split::Fixed(t);
        self
    }

    pub fn tolerance(&self) -> u32 {
        self.tolerance_bits.unwrap_or(self.precision.saturating_sub(16)).max(8)
    }

    pub fn validate(&self) -> Result<()> {
        if self.precision < 32 {
            return Err(Error::Argument(format!("precision must be at least 32 bits, got {}", self.precision)));
        }
        if self.alpha_terms < 4 {
            return Err(Error::Argument(format!("alpha_terms must be at least 4, got {}", self.alpha_terms)));
        }
        if let Split::Fixed(t) = self.split {
            if !(t.is_finite() && t > 0.0) {
                return Err(Error::Argument(format!("split point must be positive, got {t}")));
            }
        }
        Ok(())
    }

    fn work(&self) -> u32 {
        self.precision + GUARD_BITS
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Series,
    Residue,
    Bernoulli,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closed-form",
            Method::Series => "series",
            Method::Residue => "residue",
            Method::Bernoulli => "bernoulli",
        })
    }
}

/// A value of the form `coeff · π^pi_power` with rational `coeff`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactValue {
    pub coeff: Rational,
    pub pi_power: i32,
}

impl ExactValue {
    pub fn rational(coeff: Rational) -> Self {
        ExactValue { coeff, pi_power: 0 }
    }

    pub fn to_float(&self, prec: u32) -> Float {
        let wp = prec + 16;
        let v = Float::with_val(wp, &self.coeff) * Float::with_val(wp, numerics::pi(wp).pow(self.pi_power));
        Float::with_val(prec, v)
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pi_power {
            0 => write!(f, "{}", self.coeff),
            1 => write!(f, "{}*pi", self.coeff),
            p => write!(f, "{}*pi^{}", self.coeff, p),
        }
    }
}

use rug::ops::Pow;

#[derive(Clone, Debug, PartialEq)]
pub struct EvalResult {
    pub value: Complex,
    pub exact: Option<ExactValue>,
    pub error_estimate: Float,
    pub classification: PointClass,
    pub alpha_terms_used: usize,
    pub beta_terms_used: usize,
    pub method: Method,
    /// Split point used by series evaluations.
    pub split: Option<f64>,
    pub warnings: Vec<String>,
}

impl EvalResult {
    fn closed(value: Complex, exact: Option<ExactValue>, class: PointClass, method: Method) -> Self {
        let prec = value.prec().0;
        let err = Float::with_val(64, numerics::abs_complex(&value, 64)) >> (prec as i32);
        EvalResult {
            value,
            exact,
            error_estimate: err,
            classification: class,
            alpha_terms_used: 0,
            beta_terms_used: 0,
            method,
            split: None,
            warnings: Vec::new(),
        }
    }

    fn from_exact(exact: ExactValue, class: PointClass, method: Method, prec: u32) -> Self {
        let v = exact.to_float(prec);
        Self::closed(Complex::with_val(prec, (v, 0)), Some(exact), class, method)
    }

    fn from_num(num: &Num, class: PointClass, prec: u32) -> Self {
        match num {
            Num::Exact(r) => Self::from_exact(ExactValue::rational(r.clone()), class, Method::ClosedForm, prec),
            Num::Approx(f) => Self::closed(Complex::with_val(prec, (f, 0)), None, class, Method::ClosedForm),
        }
    }

    /// Real part as a float (values on the real axis have zero imaginary part).
    pub fn real(&self) -> &Float {
        self.value.real()
    }
}

/// Classifies `s` for order `ν` at precision `prec`.
pub fn classify(order: &Order, s: &Argument, prec: u32) -> PointClass {
    let Some(n) = s.near_integer(prec / 2) else {
        return PointClass::Generic;
    };
    classify_integer(order, n)
}

fn classify_integer(order: &Order, n: i64) -> PointClass {
    match n {
        0 => PointClass::Origin,
        1 => PointClass::PoleAtOne,
        n if n > 0 && n % 2 == 0 => PointClass::PosEven((n / 2) as u32),
        n if n > 0 => PointClass::Generic,
        n if n % 2 == 0 => PointClass::NegEven((-n / 2) as u32),
        n => {
            let k = ((1 - n) / 2) as u32;
            if c_coefficient(order, 2 * k as usize - 2, 128).is_zero() {
                PointClass::RemovedNegOdd(k)
            } else {
                PointClass::PoleNegOdd(k)
            }
        }
    }
}

fn c_coefficient(order: &Order, m: usize, prec: u32) -> Num {
    let table = CoefficientTable::build(Family::C, order, m + 1, prec).expect("order already validated");
    table.get(m).expect("table long enough").clone()
}

fn num_mul_int(n: &Num, k: i64) -> Num {
    match n {
        Num::Exact(r) => Num::Exact(Rational::from(r * k)),
        Num::Approx(f) => Num::Approx(Float::with_val(f.prec(), f * k)),
    }
}

/// Evaluates `ζ_ν` for one order and configuration, caching coefficient tables
/// and quadrature data between calls.
pub struct Evaluator {
    order: Order,
    config: EvalConfig,
    first_zero: Float,
    split: f64,
    hawkins: OnceLock<series::Hawkins>,
    zrep: OnceLock<zrepr::ZTables>,
    exact_alpha: Mutex<Option<CoefficientTable>>,
}

impl fmt::Debug for Evaluator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Evaluator").field("order", &self.order).field("config", &self.config).finish()
    }
}

impl Evaluator {
    pub fn new(order: Order, config: EvalConfig) -> Result<Self> {
        config.validate()?;
        let first_zero = bessel::zeros(&order, 1, 64)?.zeros()[0].clone();
        let split = match config.split {
            Split::Fixed(t) => t,
            Split::Auto => (0.8 * first_zero.to_f64()).min(2.0),
        };
        Ok(Evaluator {
            order,
            config,
            first_zero,
            split,
            hawkins: OnceLock::new(),
            zrep: OnceLock::new(),
            exact_alpha: Mutex::new(None),
        })
    }

    pub fn order(&self) -> &Order {
        &self.order
    }

    pub fn config(&self) -> &EvalConfig {
        &self.config
    }

    /// The split point `T` in use.
    pub fn split_point(&self) -> f64 {
        self.split
    }

    /// `j_{ν,1}` to about 64 bits.
    pub fn first_zero(&self) -> &Float {
        &self.first_zero
    }

    fn prec(&self) -> u32 {
        self.config.precision
    }

    fn hawkins(&self) -> &series::Hawkins {
        self.hawkins.get_or_init(|| series::Hawkins::new(&self.order, &self.config, self.split))
    }

    pub fn classify(&self, s: &Argument) -> PointClass {
        classify(&self.order, s, self.prec())
    }

    /// Classification plus the near-special guard: a generic `s` within `2^{-P/4}`
    /// of a removable dispatch point is moved onto it.
    fn dispatch(&self, s: &Argument) -> (Argument, PointClass, Vec<String>) {
        let class = self.classify(s);
        if class != PointClass::Generic {
            return (s.clone(), class, Vec::new());
        }
        if let Some(n) = s.near_integer(self.prec() / 4) {
            let snapped = classify_integer(&self.order, n);
            let removable = matches!(
                snapped,
                PointClass::Origin | PointClass::PosEven(_) | PointClass::NegEven(_) | PointClass::RemovedNegOdd(_)
            );
            if removable {
                let warning = format!("s = {} is within 2^-{} of {n}; evaluated at {n}", s.label(), self.prec() / 4);
                return (Argument::integer(n), snapped, vec![warning]);
            }
        }
        (s.clone(), class, Vec::new())
    }

    fn pole_error(&self, class: PointClass) -> Error {
        let pole = match class {
            PointClass::PoleAtOne => 1,
            PointClass::PoleNegOdd(k) => 1 - 2 * i64::from(k),
            _ => unreachable!("not a pole"),
        };
        let residue = self.residue(pole).map(|r| r.real().clone()).unwrap_or_else(|_| Float::new(64));
        Error::Pole { pole, residue }
    }

    /// `α_k`, exact when the order is exact.
    fn alpha_k(&self, k: usize) -> Num {
        if self.order.is_exact() {
            let mut guard = self.exact_alpha.lock().expect("alpha cache poisoned");
            let table = match guard.take() {
                Some(t) if t.end_index() > k => t,
                Some(t) => t.extend(k.max(2 * t.len())).expect("valid order"),
                None => CoefficientTable::build(Family::Alpha, &self.order, k.max(8), self.prec())
                    .expect("valid order"),
            };
            let v = table.get(k).expect("extended").clone();
            *guard = Some(table);
            v
        } else {
            Num::Approx(self.hawkins().alpha(k))
        }
    }

    /// `β_n` for `n >= 1`, exact when the order is exact.
    fn beta_n(&self, n: usize) -> Num {
        let c = c_coefficient(&self.order, n - 1, self.config.work());
        match c {
            Num::Exact(r) => Num::Exact(-r / Rational::from(n as u64)),
            Num::Approx(f) => Num::Approx(-f / n as u32),
        }
    }

    pub fn eval(&self, s: &Argument) -> Result<EvalResult> {
        let prec = self.prec();
        let (s, class, warnings) = self.dispatch(s);
        let mut result = match class {
            PointClass::PoleAtOne | PointClass::PoleNegOdd(_) => return Err(self.pole_error(class)),
            PointClass::Origin => {
                // -(ν + 1/2)/2
                let v = match self.order.to_num(self.config.work()) {
                    Num::Exact(r) => Num::Exact(-(r + Rational::from((1, 2))) / 2),
                    Num::Approx(f) => Num::Approx(-(f + 0.5f64) / 2u32),
                };
                EvalResult::from_num(&v, class, prec)
            }
            PointClass::PosEven(k) => {
                let v = num_mul_int(&self.alpha_k(k as usize), i64::from(k));
                EvalResult::from_num(&v, class, prec)
            }
            PointClass::NegEven(k) => {
                let sign = if k % 2 == 1 { 1 } else { -1 };
                let v = num_mul_int(&self.beta_n(2 * k as usize), sign * i64::from(k));
                EvalResult::from_num(&v, class, prec)
            }
            PointClass::RemovedNegOdd(k) if self.order.is_half() => {
                // π^{-s} ζ(s) at s = 1 - 2k: π^{2k-1} (-B_{2k} / 2k)
                let coeff = -bernoulli(2 * k as usize) / Rational::from(2 * k);
                EvalResult::from_exact(ExactValue { coeff, pi_power: 2 * k as i32 - 1 }, class, Method::Bernoulli, prec)
            }
            PointClass::RemovedNegOdd(_) | PointClass::Generic => {
                let mut r = self.hawkins().value(&s.value(self.config.work()), class)?;
                if let PointClass::RemovedNegOdd(k) = class {
                    r.warnings.push(format!(
                        "s = {} is a removed pole (c_{} = 0); evaluated by the series without the vanishing term",
                        1 - 2 * i64::from(k),
                        2 * k - 2
                    ));
                }
                r
            }
        };
        result.warnings.extend(warnings);
        Ok(result)
    }

    pub fn derivative(&self, s: &Argument) -> Result<EvalResult> {
        let prec = self.prec();
        let (s, class, warnings) = self.dispatch(s);
        let mut result = match class {
            PointClass::PoleAtOne | PointClass::PoleNegOdd(_) => return Err(self.pole_error(class)),
            PointClass::Origin => {
                let b0 = crate::coefficients::beta_zero(&self.order, self.config.work())?;
                let v = Float::with_val(prec, b0 / 2u32);
                EvalResult::closed(Complex::with_val(prec, (v, 0)), None, class, Method::ClosedForm)
            }
            _ => self.hawkins().derivative(&s.value(self.config.work()), class)?,
        };
        result.warnings.extend(warnings);
        Ok(result)
    }

    /// Residue at `s = 1` or `s = 1 - 2k`, using the k-indexed form `((-1)^k/π) c_{2k-2}`.
    pub fn residue(&self, pole: i64) -> Result<EvalResult> {
        if pole == 1 {
            let exact = ExactValue { coeff: Rational::from(1), pi_power: -1 };
            return Ok(EvalResult::from_exact(exact, PointClass::PoleAtOne, Method::Residue, self.prec()));
        }
        if pole > 0 || pole % 2 == 0 {
            return Err(Error::Argument(format!("s = {pole} is not a possible pole (1, -1, -3, ...)")));
        }
        let k = (1 - pole) / 2;
        let c = c_coefficient(&self.order, (2 * k - 2) as usize, self.config.work());
        let signed = num_mul_int(&c, if k % 2 == 0 { 1 } else { -1 });
        Ok(self.residue_result(signed, classify_integer(&self.order, pole)))
    }

    /// Residue at `s = -2m - 1` from the m-indexed form `(-1)^{m-1} c_{2m} / π`.
    pub fn residue_m_indexed(&self, m: u32) -> Result<EvalResult> {
        let c = c_coefficient(&self.order, 2 * m as usize, self.config.work());
        // (-1)^{m-1}
        let signed = num_mul_int(&c, if m % 2 == 1 { 1 } else { -1 });
        Ok(self.residue_result(signed, classify_integer(&self.order, -2 * i64::from(m) - 1)))
    }

    fn residue_result(&self, coeff: Num, class: PointClass) -> EvalResult {
        let prec = self.prec();
        match coeff {
            Num::Exact(r) => EvalResult::from_exact(ExactValue { coeff: r, pi_power: -1 }, class, Method::Residue, prec),
            Num::Approx(f) => {
                let wp = prec + 16;
                let v = Float::with_val(prec, Float::with_val(wp, f) / numerics::pi(wp));
                EvalResult::closed(Complex::with_val(prec, (v, 0)), None, class, Method::Residue)
            }
        }
    }

    /// `Π_n j_{ν,n} = exp(-ζ_ν'(0)) = (√(2π) / (Γ(ν+1) 2^ν))^{1/2}`.
    pub fn product_of_roots(&self) -> Result<Float> {
        let prec = self.prec();
        let b0 = crate::coefficients::beta_zero(&self.order, prec + 32)?;
        Ok(Float::with_val(prec, (-b0 / 2u32).exp()))
    }

    /// The Z-representation (the incomplete contour form) at `s`.
    pub fn z_repr(&self, s: &Argument) -> Result<EvalResult> {
        let (s, class, warnings) = self.dispatch(s);
        let mut r = zrepr::z_value(self, &s, class)?;
        r.warnings.extend(warnings);
        Ok(r)
    }

    /// Central-difference slope of the Z-representation at the origin. The error
    /// estimate carries the truncation errors of both samples divided by `2h`.
    pub fn z_slope_at_origin(&self) -> Result<EvalResult> {
        zrepr::z_slope_at_origin(self)
    }

    fn zrep(&self) -> &zrepr::ZTables {
        self.zrep.get_or_init(|| zrepr::ZTables::new(&self.order, &self.config))
    }
}

/// Convenience wrapper: classify with the default precision.
pub fn classify_default(order: &Order, s: &Argument) -> PointClass {
    classify(order, s, DEFAULT_PRECISION)
}

pub fn eval(order: &Order, s: &Argument, config: &EvalConfig) -> Result<EvalResult> {
    Evaluator::new(order.clone(), config.clone())?.eval(s)
}

pub fn derivative(order: &Order, s: &Argument, config: &EvalConfig) -> Result<EvalResult> {
    Evaluator::new(order.clone(), config.clone())?.derivative(s)
}

pub fn residue(order: &Order, pole: i64) -> Result<Float> {
    Ok(Evaluator::new(order.clone(), EvalConfig::default())?.residue(pole)?.real().clone())
}

pub fn z_repr(order: &Order, s: &Argument, config: &EvalConfig) -> Result<EvalResult> {
    Evaluator::new(order.clone(), config.clone())?.z_repr(s)
}

pub fn product_of_roots(order: &Order) -> Result<Float> {
    Evaluator::new(order.clone(), EvalConfig::default())?.product_of_roots()
}

#[cfg(test)]
mod tests;
