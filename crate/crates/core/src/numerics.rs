//! Precision backends and number-theoretic primitives.
//!
//! Exact quantities live in [`Rational`] (always reduced, positive denominator).
//! Approximate quantities are MPFR floats whose precision is always explicit.

use std::fmt;
use std::sync::RwLock;

use rug::float::Constant;
use rug::{Complex, Float, Integer};

use crate::{Error, Result};

pub use rug::Rational;

pub type BigReal = Float;
pub type BigComplex = Complex;

/// Working precision in bits used when the caller does not choose one.
pub const DEFAULT_PRECISION: u32 = 256;

static BERNOULLI: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

/// Exact Bernoulli number `B_n` (with `B_1 = -1/2`), memoized.
pub fn bernoulli(n: usize) -> Rational {
    if n >= 3 && n % 2 == 1 {
        return Rational::new();
    }
    if let Some(b) = BERNOULLI.read().expect("bernoulli table poisoned").get(n) {
        return b.clone();
    }
    let mut table = BERNOULLI.write().expect("bernoulli table poisoned");
    if table.is_empty() {
        table.push(Rational::from(1));
    }
    while table.len() <= n {
        // Σ_{k=0}^{m} C(m+1, k) B_k = 0, solved for B_m.
        let m = table.len();
        let mut acc = Rational::new();
        let mut binom = Integer::from(1);
        for (k, b) in table.iter().enumerate() {
            if !b.is_zero() {
                let mut term = b.clone();
                term *= &binom;
                acc += term;
            }
            binom *= (m + 1 - k) as u64;
            binom /= (k + 1) as u64;
        }
        acc /= (m + 1) as u64;
        table.push(-acc);
    }
    table[n].clone()
}

/// Arithmetic shared by the exact and the approximate coefficient recursions.
pub trait Scalar: Clone + fmt::Debug {
    fn int_like(&self, v: i64) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;
    fn mul_int(&self, v: i64) -> Self;
    fn div_int(&self, v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn to_num(&self) -> Num;

    fn ratio_like(&self, num: i64, den: i64) -> Self {
        self.int_like(num).div_int(den)
    }

    fn neg(&self) -> Self {
        self.mul_int(-1)
    }
}

impl Scalar for Rational {
    fn int_like(&self, v: i64) -> Self {
        Rational::from(v)
    }
    fn add(&self, other: &Self) -> Self {
        Rational::from(self + other)
    }
    fn sub(&self, other: &Self) -> Self {
        Rational::from(self - other)
    }
    fn mul(&self, other: &Self) -> Self {
        Rational::from(self * other)
    }
    fn div(&self, other: &Self) -> Self {
        Rational::from(self / other)
    }
    fn mul_int(&self, v: i64) -> Self {
        Rational::from(self * v)
    }
    fn div_int(&self, v: i64) -> Self {
        Rational::from(self / v)
    }
    fn is_zero(&self) -> bool {
        self.cmp0() == std::cmp::Ordering::Equal
    }
    fn to_num(&self) -> Num {
        Num::Exact(self.clone())
    }
}

impl Scalar for Float {
    fn int_like(&self, v: i64) -> Self {
        Float::with_val(self.prec(), v)
    }
    fn add(&self, other: &Self) -> Self {
        Float::with_val(self.prec(), self + other)
    }
    fn sub(&self, other: &Self) -> Self {
        Float::with_val(self.prec(), self - other)
    }
    fn mul(&self, other: &Self) -> Self {
        Float::with_val(self.prec(), self * other)
    }
    fn div(&self, other: &Self) -> Self {
        Float::with_val(self.prec(), self / other)
    }
    fn mul_int(&self, v: i64) -> Self {
        Float::with_val(self.prec(), self * v)
    }
    fn div_int(&self, v: i64) -> Self {
        Float::with_val(self.prec(), self / v)
    }
    fn is_zero(&self) -> bool {
        Float::is_zero(self)
    }
    fn to_num(&self) -> Num {
        Num::Approx(self.clone())
    }
}

/// Rising factorial `x (x+1) ... (x+n-1)`; exact when `x` is rational.
pub fn pochhammer<S: Scalar>(x: &S, n: u32) -> S {
    let mut acc = x.int_like(1);
    for k in 0..n {
        acc = acc.mul(&x.add(&x.int_like(k as i64)));
    }
    acc
}

/// `ln Γ(x)` for `x > 0`, evaluated with 16 guard bits and rounded to the precision of `x`.
pub fn log_gamma(x: &Float) -> Result<Float> {
    if x.is_nan() || *x <= 0 {
        return Err(Error::Domain(format!("log_gamma needs x > 0, got {}", x.to_f64())));
    }
    let wide = Float::with_val(x.prec() + 16, x);
    Ok(Float::with_val(x.prec(), wide.ln_gamma()))
}

/// A coefficient value: exact in rational mode, a multiprecision float otherwise.
#[derive(Clone, Debug, PartialEq)]
pub enum Num {
    Exact(Rational),
    Approx(Float),
}

impl Num {
    pub fn to_float(&self, prec: u32) -> Float {
        match self {
            Num::Exact(r) => Float::with_val(prec, r),
            Num::Approx(f) => Float::with_val(prec, f),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Num::Exact(r) => Some(r),
            Num::Approx(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Num::Exact(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Num::Exact(r) => r.cmp0() == std::cmp::Ordering::Equal,
            Num::Approx(f) => f.is_zero(),
        }
    }
}

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Num::Exact(r) => write!(f, "{r}"),
            Num::Approx(x) => f.write_str(&format_float(x, decimal_digits(x.prec()))),
        }
    }
}

/// Number of significant decimal digits carried by `prec` bits.
pub fn decimal_digits(prec: u32) -> usize {
    (f64::from(prec) * std::f64::consts::LOG10_2).ceil() as usize + 1
}

/// Scientific-notation decimal rendering with `digits` significant digits.
pub fn format_float(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let text = x.to_string_radix(10, Some(digits));
    // MPFR writes "d.ddde±x"; drop trailing zeros of the mantissa for readability.
    match text.split_once('e') {
        Some((mantissa, exp)) => {
            let mantissa = trim_zeros(mantissa);
            let exp: i64 = exp.parse().unwrap_or(0);
            if exp == 0 {
                mantissa.to_string()
            } else {
                format!("{mantissa}e{exp}")
            }
        }
        None => trim_zeros(&text).to_string(),
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

pub fn ln2(prec: u32) -> Float {
    Float::with_val(prec, Constant::Log2)
}

/// `|z|` as a float at `prec` bits.
pub fn abs_complex(z: &Complex, prec: u32) -> Float {
    Float::with_val(prec, z.abs_ref())
}

pub fn complex_from_real(x: &Float, prec: u32) -> Complex {
    Complex::with_val(prec, (x, 0))
}

/// `2^e` as a float.
pub fn pow2(e: i64, prec: u32) -> Float {
    let one = Float::with_val(prec, 1);
    one << (e as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), q(1, 1));
        assert_eq!(bernoulli(1), q(-1, 2));
        assert_eq!(bernoulli(2), q(1, 6));
        assert_eq!(bernoulli(4), q(-1, 30));
        assert_eq!(bernoulli(12), q(-691, 2730));
        assert_eq!(bernoulli(13), Rational::new());
    }

    #[test]
    fn bernoulli_odd_vanish_and_even_alternate() {
        for n in 1..40 {
            assert!(bernoulli(2 * n + 1).is_zero());
        }
        for n in 1..40 {
            let a = bernoulli(2 * n).cmp0();
            let b = bernoulli(2 * n + 2).cmp0();
            assert_ne!(a, b, "signs of B_{} and B_{} should alternate", 2 * n, 2 * n + 2);
        }
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&q(7, 3), 0), q(1, 1));
        assert_eq!(pochhammer(&q(3, 2), 2), q(15, 4));
        assert_eq!(pochhammer(&q(1, 1), 5), q(120, 1));
        let x = Float::with_val(128, 1.5);
        assert_eq!(pochhammer(&x, 2), 3.75);
    }

    #[test]
    fn log_gamma_values() {
        let prec = DEFAULT_PRECISION;
        assert!(log_gamma(&Float::with_val(prec, 1)).unwrap().is_zero());
        assert!(log_gamma(&Float::with_val(prec, 2)).unwrap().is_zero());
        let half = log_gamma(&Float::with_val(prec, 1.5)).unwrap();
        // Γ(3/2) = √π / 2
        let expected = Float::with_val(prec, pi(prec).sqrt() / 2u32).ln();
        let diff = Float::with_val(prec, &half - &expected).abs();
        assert!(diff < pow2(8 - prec as i64, prec));
        assert!((half.to_f64() + 0.120_782_237_635_245_2).abs() < 1e-15);
    }

    #[test]
    fn log_gamma_domain() {
        assert!(matches!(log_gamma(&Float::with_val(64, 0)), Err(Error::Domain(_))));
        assert!(matches!(log_gamma(&Float::with_val(64, -2.5)), Err(Error::Domain(_))));
    }

    #[test]
    fn format_float_trims() {
        assert_eq!(format_float(&Float::with_val(64, 0.25), 10), "2.5e-1");
        assert_eq!(format_float(&Float::with_val(64, 3), 10), "3");
        assert_eq!(format_float(&Float::with_val(64, 0), 10), "0");
    }

    proptest! {
        #[test]
        fn pochhammer_splits(num in -200i64..200, den in 1i64..30, m in 0u32..=20, n in 0u32..=20) {
            let x = q(num, den);
            let lhs = pochhammer(&x, m + n);
            let shifted = Rational::from(&x + m);
            let rhs = pochhammer(&x, m) * pochhammer(&shifted, n);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn log_gamma_functional_equation(x in 0.1f64..10.0) {
            let prec = DEFAULT_PRECISION;
            let xf = Float::with_val(prec, x);
            let x1 = Float::with_val(prec, &xf + 1u32);
            let ratio = Float::with_val(prec, log_gamma(&x1).unwrap() - log_gamma(&xf).unwrap()).exp();
            let err = Float::with_val(prec, &ratio - &xf).abs();
            prop_assert!(err <= pow2(12 - prec as i64, prec));
        }
    }
}
