//! The five coefficient families of the Bessel zeta function.
//!
//! - `c_m` (from 0): the Hawkins coefficients, `c_0 = c_1 = (ν² - 1/4)/2`,
//!   `c_{m+2} = ((m+3) c_{m+1} - Σ_{k=0}^{m} c_{m-k} c_k) / 2`.
//! - `d_n` (from 2): the series about infinity of `(I_{ν-1} + I_{ν+1}) / I_ν`.
//! - `a_n` (from 0): the series about the origin of the same ratio.
//! - `α_k` (from 1): the series about the origin of `ln(2^ν Γ(ν+1) x^{-ν} I_ν(x))`.
//! - `β_n` (from 0): its series about infinity; `β_0` contains `ln Γ` and is never exact.
//!
//! Tables are immutable snapshots. [`CoefficientTable::extend`] returns a new,
//! longer snapshot whose prefix is identical to the original.

use std::fmt;
use std::str::FromStr;

use rug::{Float, Rational};

use crate::numerics::{self, log_gamma, Num, Scalar, DEFAULT_PRECISION};
use crate::{Error, Result};

/// The Bessel order ν (> -1), exact when supplied as a rational.
#[derive(Clone, Debug, PartialEq)]
pub struct Order {
    value: OrderValue,
}

#[derive(Clone, Debug, PartialEq)]
enum OrderValue {
    Exact(Rational),
    Approx(Float),
}

impl Order {
    pub fn exact(nu: Rational) -> Result<Self> {
        if nu <= -1 {
            return Err(Error::Domain(format!("order must satisfy nu > -1, got {nu}")));
        }
        Ok(Order { value: OrderValue::Exact(nu) })
    }

    pub fn approx(nu: Float) -> Result<Self> {
        if nu.is_nan() || nu <= -1 {
            return Err(Error::Domain(format!("order must satisfy nu > -1, got {}", nu.to_f64())));
        }
        Ok(Order { value: OrderValue::Approx(nu) })
    }

    /// Exact order `num/den`.
    pub fn ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Argument("zero denominator in order".into()));
        }
        Self::exact(Rational::from((num, den)))
    }

    /// Parses `p/q` or an integer as an exact order and a decimal literal as a float order.
    pub fn parse(text: &str, prec: u32) -> Result<Self> {
        let text = text.trim();
        let is_rational = !text.is_empty()
            && text
                .chars()
                .enumerate()
                .all(|(i, ch)| ch.is_ascii_digit() || ch == '/' || ((ch == '-' || ch == '+') && i == 0));
        if is_rational {
            let r = Rational::from_str(text)
                .map_err(|e| Error::Argument(format!("cannot parse order {text:?}: {e}")))?;
            return Self::exact(r);
        }
        let parsed = Float::parse(text)
            .map_err(|e| Error::Argument(format!("cannot parse order {text:?}: {e}")))?;
        Self::approx(Float::with_val(prec, parsed))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.value, OrderValue::Exact(_))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match &self.value {
            OrderValue::Exact(r) => Some(r),
            OrderValue::Approx(_) => None,
        }
    }

    pub fn to_float(&self, prec: u32) -> Float {
        match &self.value {
            OrderValue::Exact(r) => Float::with_val(prec, r),
            OrderValue::Approx(f) => Float::with_val(prec, f),
        }
    }

    /// ν as a coefficient value: exact in rational mode, a float at `prec` otherwise.
    pub fn to_num(&self, prec: u32) -> Num {
        match &self.value {
            OrderValue::Exact(r) => Num::Exact(r.clone()),
            OrderValue::Approx(f) => Num::Approx(Float::with_val(prec, f)),
        }
    }

    /// Precision of a float order; `None` in exact mode.
    pub fn precision(&self) -> Option<u32> {
        match &self.value {
            OrderValue::Exact(_) => None,
            OrderValue::Approx(f) => Some(f.prec()),
        }
    }

    /// True when ν = 1/2, compared exactly (a float order must equal 0.5 exactly).
    pub fn is_half(&self) -> bool {
        match &self.value {
            OrderValue::Exact(r) => *r == Rational::from((1, 2)),
            OrderValue::Approx(f) => *f == 0.5,
        }
    }

    /// True when ν = -1/2 (same comparison rule as [`Order::is_half`]).
    pub fn is_minus_half(&self) -> bool {
        match &self.value {
            OrderValue::Exact(r) => *r == Rational::from((-1, 2)),
            OrderValue::Approx(f) => *f == -0.5,
        }
    }

    /// Exact string form: `p/q` in rational mode, a full-precision decimal otherwise.
    pub fn label(&self) -> String {
        match &self.value {
            OrderValue::Exact(r) => r.to_string(),
            OrderValue::Approx(f) => f.to_string_radix(10, None),
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    C,
    D,
    A,
    Alpha,
    Beta,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::C, Family::D, Family::A, Family::Alpha, Family::Beta];

    /// Index of the first stored entry.
    pub fn first_index(self) -> usize {
        match self {
            Family::C | Family::A | Family::Beta => 0,
            Family::Alpha => 1,
            Family::D => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::C => "c",
            Family::D => "d",
            Family::A => "a",
            Family::Alpha => "alpha",
            Family::Beta => "beta",
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Argument(format!("unknown coefficient family {s:?}")))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An immutable prefix of one coefficient family at a fixed order and precision.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientTable {
    family: Family,
    order: Order,
    entries: Vec<Num>,
    beta0: Option<Float>,
    precision: u32,
    exact: bool,
}

impl CoefficientTable {
    /// Builds `count` entries; exact iff the order is exact.
    pub fn build(family: Family, order: &Order, count: usize, precision: u32) -> Result<Self> {
        Self::build_with(family, order, count, precision, order.is_exact())
    }

    /// Builds `count` entries in float arithmetic at `precision` bits, even for an exact order.
    pub fn build_float(family: Family, order: &Order, count: usize, precision: u32) -> Result<Self> {
        Self::build_with(family, order, count, precision, false)
    }

    fn build_with(family: Family, order: &Order, count: usize, precision: u32, exact: bool) -> Result<Self> {
        let min = if family == Family::D { 2 } else { 1 };
        if count < min {
            return Err(Error::Argument(format!("{family} table needs count >= {min}, got {count}")));
        }
        if exact && !order.is_exact() {
            return Err(Error::Argument("exact tables need a rational order".into()));
        }
        let beta0 = if family == Family::Beta {
            Some(beta_zero(order, precision)?)
        } else {
            None
        };
        let entries = if exact {
            let nu = order.as_rational().expect("checked above").clone();
            generate(family, &nu, count, beta0.as_ref())
        } else {
            generate(family, &order.to_float(precision), count, beta0.as_ref())
        };
        Ok(CoefficientTable { family, order: order.clone(), entries, beta0, precision, exact })
    }

    /// Reassembles a table from stored parts (the cache uses this). Entries must match
    /// the exactness flag and, for the β family, slot 0 must hold β_0.
    pub fn from_parts(
        family: Family,
        order: Order,
        entries: Vec<Num>,
        beta0: Option<Float>,
        precision: u32,
    ) -> Result<Self> {
        let exact = entries.iter().skip(usize::from(family == Family::Beta)).all(Num::is_exact);
        let mixed = entries.iter().skip(usize::from(family == Family::Beta)).any(Num::is_exact) && !exact;
        if mixed || (exact && !order.is_exact()) {
            return Err(Error::Argument("inconsistent exactness in stored table".into()));
        }
        if (family == Family::Beta) != beta0.is_some() {
            return Err(Error::Argument("beta0 must be present exactly for the beta family".into()));
        }
        if entries.is_empty() {
            return Err(Error::Argument("empty coefficient table".into()));
        }
        Ok(CoefficientTable { family, order, entries, beta0, precision, exact })
    }

    /// A longer snapshot; existing entries are carried over unchanged.
    pub fn extend(&self, count: usize) -> Result<Self> {
        if count <= self.entries.len() {
            return Ok(self.clone());
        }
        let mut next = Self::build_with(self.family, &self.order, count, self.precision, self.exact)?;
        next.entries[..self.entries.len()].clone_from_slice(&self.entries);
        if let Some(b0) = &self.beta0 {
            next.beta0 = Some(b0.clone());
            next.entries[0] = Num::Approx(b0.clone());
        }
        Ok(next)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn order(&self) -> &Order {
        &self.order
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn first_index(&self) -> usize {
        self.family.first_index()
    }

    /// One past the largest stored index.
    pub fn end_index(&self) -> usize {
        self.first_index() + self.entries.len()
    }

    /// Entry at the family's own index (`d` from 2, `α` from 1, the rest from 0).
    pub fn get(&self, index: usize) -> Option<&Num> {
        index.checked_sub(self.first_index()).and_then(|i| self.entries.get(i))
    }

    pub fn entries(&self) -> &[Num] {
        &self.entries
    }

    pub fn beta0(&self) -> Option<&Float> {
        self.beta0.as_ref()
    }

    /// All entries as floats at `prec` bits.
    pub fn to_floats(&self, prec: u32) -> Vec<Float> {
        self.entries.iter().map(|n| n.to_float(prec)).collect()
    }
}

/// `β_0 = ln(Γ(ν+1) 2^ν / √(2π))`.
pub fn beta_zero(order: &Order, prec: u32) -> Result<Float> {
    let wide = prec + 32;
    let nu = order.to_float(wide);
    let nu1 = Float::with_val(wide, &nu + 1u32);
    let lg = log_gamma(&nu1)?;
    let two_pi = Float::with_val(wide, numerics::pi(wide) * 2u32);
    let value = lg + nu * numerics::ln2(wide) - two_pi.ln() / 2u32;
    Ok(Float::with_val(prec, value))
}

fn generate<S: Scalar>(family: Family, nu: &S, count: usize, beta0: Option<&Float>) -> Vec<Num> {
    match family {
        Family::C => c_values(nu, count).iter().map(Scalar::to_num).collect(),
        Family::D => d_values(nu, count).iter().map(Scalar::to_num).collect(),
        Family::A => a_values(nu, count).iter().map(Scalar::to_num).collect(),
        Family::Alpha => alpha_values(nu, count).iter().map(Scalar::to_num).collect(),
        Family::Beta => {
            let mut out = Vec::with_capacity(count);
            out.push(Num::Approx(beta0.expect("beta0 computed for beta tables").clone()));
            out.extend(beta_values(nu, count).iter().skip(1).map(Scalar::to_num));
            out
        }
    }
}

/// `c_0 .. c_{count-1}`.
pub(crate) fn c_values<S: Scalar>(nu: &S, count: usize) -> Vec<S> {
    let quarter = nu.ratio_like(1, 4);
    let c0 = nu.mul(nu).sub(&quarter).div_int(2);
    let mut c = vec![c0.clone(), c0];
    while c.len() < count {
        let m = c.len() - 2;
        let mut conv = nu.int_like(0);
        for k in 0..=m {
            conv = conv.add(&c[m - k].mul(&c[k]));
        }
        let next = c[m + 1].mul_int(m as i64 + 3).sub(&conv).div_int(2);
        c.push(next);
    }
    c.truncate(count.max(1));
    c
}

/// `d_2 .. d_{count+1}` (entry `i` holds `d_{i+2}`).
pub(crate) fn d_values<S: Scalar>(nu: &S, count: usize) -> Vec<S> {
    let one = nu.int_like(1);
    // (1 - 4ν²)/16
    let q = one.sub(&nu.mul(nu).mul_int(4)).div_int(16);
    let mut d = vec![one.clone(), one];
    while d.len() < count {
        // entry index i = m holds d_{m+2}; compute d_{m+2} for m = len.
        let m = d.len();
        let mut conv = nu.int_like(0);
        for k in 0..=(m - 2) {
            conv = conv.add(&d[m - k - 2].mul(&d[k]));
        }
        let next = d[m - 1].mul_int(m as i64 + 1).div_int(2).add(&q.mul(&conv));
        d.push(next);
    }
    d.truncate(count);
    d
}

/// `a_0 .. a_{count-1}` with every Γ-ratio written as a reciprocal Pochhammer product:
/// `a_n = (2n+ν) w_n - Σ_{k<n} a_k w_{n-k}`, `w_m = 1 / (m! (ν+1)_m)`.
pub(crate) fn a_values<S: Scalar>(nu: &S, count: usize) -> Vec<S> {
    let nu1 = nu.add(&nu.int_like(1));
    let mut w = vec![nu.int_like(1)];
    let mut a = vec![nu.clone()];
    for n in 1..count {
        let prev = &w[n - 1];
        // w_n = w_{n-1} / (n (ν + n))
        let denom = nu1.add(&nu.int_like(n as i64 - 1)).mul_int(n as i64);
        w.push(prev.div(&denom));
        let lead = nu.add(&nu.int_like(2 * n as i64)).mul(&w[n]);
        let mut acc = nu.int_like(0);
        for k in 0..n {
            acc = acc.add(&a[k].mul(&w[n - k]));
        }
        a.push(lead.sub(&acc));
    }
    a
}

/// `α_1 .. α_count` from `α_k = (-1)^{k+1} a_k / (k 2^{2k+1})`.
pub(crate) fn alpha_values<S: Scalar>(nu: &S, count: usize) -> Vec<S> {
    let a = a_values(nu, count + 1);
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(k, ak)| {
            let mut v = ak.div_int(k as i64);
            for _ in 0..(2 * k + 1) {
                v = v.div_int(2);
            }
            if k % 2 == 0 {
                v.neg()
            } else {
                v
            }
        })
        .collect()
}

/// `β_0 .. β_{count-1}` with a placeholder in slot 0 (β_0 is not rational);
/// `β_n = -c_{n-1} / n` covers both parities of `β_{2k-1}` and `β_{2k}`.
pub(crate) fn beta_values<S: Scalar>(nu: &S, count: usize) -> Vec<S> {
    let c = c_values(nu, count.max(2));
    let mut out = vec![nu.int_like(0)];
    for n in 1..count {
        out.push(c[n - 1].neg().div_int(n as i64));
    }
    out
}

pub fn c_seq(order: &Order, count: usize) -> Result<CoefficientTable> {
    CoefficientTable::build(Family::C, order, count, DEFAULT_PRECISION)
}

pub fn d_seq(order: &Order, count: usize) -> Result<CoefficientTable> {
    CoefficientTable::build(Family::D, order, count, DEFAULT_PRECISION)
}

pub fn a_seq(order: &Order, count: usize) -> Result<CoefficientTable> {
    CoefficientTable::build(Family::A, order, count, DEFAULT_PRECISION)
}

pub fn alpha_seq(order: &Order, count: usize) -> Result<CoefficientTable> {
    CoefficientTable::build(Family::Alpha, order, count, DEFAULT_PRECISION)
}

pub fn beta_seq(order: &Order, count: usize) -> Result<CoefficientTable> {
    CoefficientTable::build(Family::Beta, order, count, DEFAULT_PRECISION)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::bernoulli;
    use proptest::prelude::*;
    use rug::Integer;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn exact(table: &CoefficientTable, index: usize) -> Rational {
        table.get(index).and_then(Num::as_rational).expect("exact entry").clone()
    }

    fn order(n: i64, d: i64) -> Order {
        Order::ratio(n, d).unwrap()
    }

    #[test]
    fn order_domain() {
        assert!(matches!(Order::ratio(-1, 1), Err(Error::Domain(_))));
        assert!(matches!(Order::ratio(-3, 2), Err(Error::Domain(_))));
        assert!(Order::ratio(-99, 100).is_ok());
        assert!(matches!(Order::parse("-1.0", 64), Err(Error::Domain(_))));
        assert!(matches!(c_seq(&Order::parse("-2", 64).unwrap_or_else(|_| order(0, 1)), 0), Err(_)));
    }

    #[test]
    fn order_parse_modes() {
        assert!(Order::parse("1/2", 64).unwrap().is_exact());
        assert!(Order::parse("3", 64).unwrap().is_exact());
        let f = Order::parse("0.5", 64).unwrap();
        assert!(!f.is_exact());
        assert!(f.is_half());
        assert_eq!(Order::parse("-1/2", 64).unwrap().label(), "-1/2");
        assert!(Order::parse("abc", 64).is_err());
    }

    #[test]
    fn c_examples() {
        let t = c_seq(&order(0, 1), 4).unwrap();
        assert_eq!(exact(&t, 0), q(-1, 8));
        assert_eq!(exact(&t, 1), q(-1, 8));
        assert_eq!(exact(&t, 3), q(-13, 32));
        let half = c_seq(&order(1, 2), 10).unwrap();
        assert!(half.entries().iter().all(Num::is_zero));
    }

    #[test]
    fn c_matches_printed_polynomials() {
        for (n, d) in [(0, 1), (1, 4), (1, 1), (3, 2), (7, 3)] {
            let nu = q(n, d);
            let nu2 = Rational::from(&nu * &nu);
            let t = c_seq(&order(n, d), 6).unwrap();
            let c0 = Rational::from(&nu2 - q(1, 4)) / 2;
            assert_eq!(exact(&t, 2), -Rational::from(&nu2 - q(25, 4)) / 4 * &c0);
            assert_eq!(exact(&t, 3), -Rational::from(&nu2 - q(13, 4)) * &c0);
            let nu4 = Rational::from(&nu2 * &nu2);
            let p4 = nu4.clone() - Rational::from(&nu2 * q(57, 2)) + q(1073, 16);
            assert_eq!(exact(&t, 4), p4 / 8 * &c0);
            let p5 = nu4 - Rational::from(&nu2 * q(53, 4)) + q(103, 4);
            assert_eq!(exact(&t, 5), p5 * &c0);
        }
    }

    #[test]
    fn d_examples() {
        let t = d_seq(&order(0, 1), 8).unwrap();
        assert_eq!(t.first_index(), 2);
        assert_eq!(exact(&t, 2), q(1, 1));
        assert_eq!(exact(&t, 3), q(1, 1));
        assert_eq!(exact(&t, 4), q(25, 16));
        assert_eq!(exact(&t, 5), q(13, 4));
        assert_eq!(exact(&t, 6), q(1073, 128));
        assert_eq!(exact(&t, 7), q(103, 4));
        assert_eq!(exact(&t, 8), q(375_733, 4096));
        assert!(t.get(1).is_none());
        assert!(matches!(d_seq(&order(0, 1), 1), Err(Error::Argument(_))));
    }

    #[test]
    fn d_matches_printed_polynomials_at_general_order() {
        let nu = q(2, 3);
        let nu2 = Rational::from(&nu * &nu);
        let nu4 = Rational::from(&nu2 * &nu2);
        let nu6 = Rational::from(&nu4 * &nu2);
        let t = d_seq(&order(2, 3), 8).unwrap();
        let d8: Rational = -(Rational::from(&nu6 * 320) - Rational::from(&nu4 * 24560) + Rational::from(&nu2 * 218_812)
            - 375_733i32)
            / 4096;
        assert_eq!(exact(&t, 8), d8);
        let d9: Rational = -(Rational::from(&nu6 * 64) - Rational::from(&nu4 * 2160) + Rational::from(&nu2 * 15084) - 23797i32)
            / 64;
        assert_eq!(exact(&t, 9), d9);
    }

    #[test]
    fn d_and_c_cross_identity() {
        for (n, d) in [(0, 1), (1, 4), (1, 1), (5, 3)] {
            let c = c_seq(&order(n, d), 31).unwrap();
            let dd = d_seq(&order(n, d), 31).unwrap();
            let c0 = exact(&c, 0);
            for m in 0..=30 {
                assert_eq!(exact(&dd, m + 2) * &c0, exact(&c, m), "m = {m}, nu = {n}/{d}");
            }
        }
    }

    #[test]
    fn a_examples() {
        let t = a_seq(&order(1, 2), 3).unwrap();
        assert_eq!(exact(&t, 0), q(1, 2));
        assert_eq!(exact(&t, 1), q(4, 3));
        let z = a_seq(&order(0, 1), 3).unwrap();
        assert_eq!(exact(&z, 2), q(-1, 1));
        let g = a_seq(&order(3, 7), 1).unwrap();
        assert_eq!(exact(&g, 0), q(3, 7));
    }

    #[test]
    fn a_matches_printed_forms() {
        for (n, d) in [(0, 1), (1, 4), (2, 1), (5, 2)] {
            let nu = q(n, d);
            let p = |k: i64| Rational::from(&nu + k);
            let t = a_seq(&order(n, d), 5).unwrap();
            assert_eq!(exact(&t, 1), Rational::from(2) / p(1));
            assert_eq!(exact(&t, 2), Rational::from(-2) / (p(2) * p(1) * p(1)));
            assert_eq!(exact(&t, 3), Rational::from(4) / (p(3) * p(2) * p(1) * p(1) * p(1)));
            let num: Rational = Rational::from(&nu * 10) + 22i32;
            let den = p(4) * p(3) * p(2) * p(2) * p(1) * p(1) * p(1) * p(1);
            assert_eq!(exact(&t, 4), -num / den);
        }
    }

    #[test]
    fn a_bernoulli_identity_at_half() {
        let t = a_seq(&order(1, 2), 13).unwrap();
        for n in 1..=12usize {
            let mut fact = Integer::from(1);
            for k in 1..=(2 * n) as u64 {
                fact *= k;
            }
            let expected = bernoulli(2 * n) * Rational::from(Integer::from(1) << (4 * n as u32)) / fact;
            assert_eq!(exact(&t, n), expected, "n = {n}");
        }
        // The Bernoulli form does not extend to n = 0: it would give 1, but a_0 = ν.
        assert_eq!(exact(&t, 0), q(1, 2));
    }

    #[test]
    fn alpha_examples() {
        for (n, d) in [(0, 1), (1, 2), (3, 4)] {
            let t = alpha_seq(&order(n, d), 2).unwrap();
            let nu1 = Rational::from(&q(n, d) + 1);
            assert_eq!(exact(&t, 1), Rational::from(1) / (nu1 * 4));
        }
        let t = alpha_seq(&order(0, 1), 5).unwrap();
        assert_eq!(exact(&t, 2), q(1, 64));
        // α_3 = 1/(3·2^5·1·2·3), α_4 = 11/(2^10·4·3·4), α_5 = 19/(5·2^9·4·3·4·5)
        assert_eq!(exact(&t, 3), q(1, 3 * 32 * 6));
        assert_eq!(exact(&t, 4), q(11, 1024 * 48));
        assert_eq!(exact(&t, 5), q(19, 5 * 512 * 240));
        assert_eq!(exact(&alpha_seq(&order(1, 2), 1).unwrap(), 1), q(1, 6));
        assert!(t.get(0).is_none());
    }

    #[test]
    fn beta_examples() {
        let half = beta_seq(&order(1, 2), 12).unwrap();
        let ln2 = numerics::ln2(DEFAULT_PRECISION);
        let b0 = half.beta0().unwrap();
        assert!(Float::with_val(DEFAULT_PRECISION, b0 + &ln2).abs() < numerics::pow2(-250, 64));
        assert!(half.entries()[1..].iter().all(Num::is_zero));
        let zero = beta_seq(&order(0, 1), 5).unwrap();
        assert_eq!(exact(&zero, 1), q(1, 8));
        assert_eq!(exact(&zero, 2), q(1, 16));
        assert_eq!(exact(&zero, 3), q(25, 384));
        assert!(!zero.get(0).unwrap().is_exact());
    }

    #[test]
    fn beta_matches_printed_forms() {
        let nu = q(1, 3);
        let nu2 = Rational::from(&nu * &nu);
        let base = Rational::from(&nu2 - q(1, 4));
        let t = beta_seq(&order(1, 3), 7).unwrap();
        assert_eq!(exact(&t, 1), -base.clone() / 2);
        assert_eq!(exact(&t, 2), -base.clone() / 4);
        assert_eq!(exact(&t, 3), Rational::from(&nu2 - q(25, 4)) * &base / 24);
        assert_eq!(exact(&t, 4), Rational::from(&nu2 - q(13, 4)) * &base / 8);
        let nu4 = Rational::from(&nu2 * &nu2);
        let p5 = nu4.clone() - Rational::from(&nu2 * q(57, 2)) + q(1073, 16);
        assert_eq!(exact(&t, 5), -p5 * &base / 80);
        let p6 = nu4 - Rational::from(&nu2 * q(53, 4)) + q(103, 4);
        assert_eq!(exact(&t, 6), -p6 * &base / 12);
    }

    #[test]
    fn float_tables_track_exact_tables() {
        let o = order(1, 4);
        for family in Family::ALL {
            let e = CoefficientTable::build(family, &o, 25, 256).unwrap();
            let f = CoefficientTable::build_float(family, &o, 25, 256).unwrap();
            assert!(!f.is_exact());
            for (x, y) in e.to_floats(256).iter().zip(f.to_floats(256)) {
                let scale = Float::with_val(256, x.abs_ref()).max(&Float::with_val(256, 1));
                let diff = Float::with_val(256, x - &y).abs() / scale;
                assert!(diff < numerics::pow2(-200, 64), "{family}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn stolarsky_trend() {
        let nu = c_seq(&order(1, 4), 41).unwrap();
        let zero = c_seq(&order(0, 1), 41).unwrap();
        let target = Float::with_val(256, numerics::pi(256) / 4u32).cos();
        let dist = |m: usize| {
            let r = Float::with_val(256, exact(&nu, m) / exact(&zero, m));
            Float::with_val(256, r - &target).abs()
        };
        assert!(dist(40) < dist(10));
    }

    #[test]
    fn extend_keeps_prefix_and_matches_fresh_build() {
        for family in Family::ALL {
            let o = order(2, 5);
            let short = CoefficientTable::build(family, &o, 6, 256).unwrap();
            let long = short.extend(15).unwrap();
            assert_eq!(&long.entries()[..6], short.entries());
            let fresh = CoefficientTable::build(family, &o, 15, 256).unwrap();
            assert_eq!(long, fresh);
        }
    }

    proptest! {
        #[test]
        fn exact_tables_are_deterministic(n in -9i64..40, d in 1i64..10, count in 2usize..20) {
            prop_assume!(Rational::from((n, d)) > -1);
            let o = order(n, d);
            for family in Family::ALL {
                let a = CoefficientTable::build(family, &o, count, 128).unwrap();
                let b = CoefficientTable::build(family, &o, count, 512).unwrap();
                let skip = usize::from(family == Family::Beta);
                prop_assert_eq!(&a.entries()[skip..], &b.entries()[skip..]);
            }
        }
    }
}
