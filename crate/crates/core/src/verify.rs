//! Verification suites: each criterion recomputes a published identity or an
//! independent reference value and reports one pass/fail line.

use std::fmt;
use std::str::FromStr;

use rug::{Complex, Float, Integer, Rational};

use crate::bessel;
use crate::coefficients::{CoefficientTable, Family, Order};
use crate::numerics::{abs_complex, bernoulli, pi, pochhammer};
use crate::oracle;
use crate::zeta::{riemann, Argument, EvalConfig, EvalResult, Evaluator, PointClass};
use crate::{Error, Result};

/// Working precision of every float check.
pub const PRECISION: u32 = 256;
/// Tolerance for closed-form float comparisons.
pub const TOL_CLOSED: f64 = 1e-40;
/// Finite-difference derivative check.
pub const TOL_FINITE_DIFFERENCE: f64 = 1e-20;
/// Step of the central difference.
pub const FD_STEP: &str = "1e-12";
/// Oracle agreement at ν = 1/2, where the representation has no β-series.
pub const TOL_ORACLE_HALF: f64 = 1e-30;
/// Zeros of `J_{1/2}` against `nπ`.
pub const TOL_ZEROS_HALF: f64 = 1e-40;
/// Terms of the oracle direct sum.
pub const ORACLE_TERMS: usize = 400;
/// Required ratio of the Z-slope gap to the combined error estimates.
pub const SLOPE_MARGIN: u32 = 10;

/// Criteria that cannot pass as stated. They are still run and reported.
pub const UNATTAINABLE: &[&str] = &["10b"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Known,
    Recursions,
    Oracle,
    Stolarsky,
    All,
}

impl Suite {
    pub fn criteria(self) -> &'static [&'static str] {
        match self {
            Suite::Known => &["1", "2", "4", "8", "9", "10a", "10b", "11"],
            Suite::Recursions => &["3", "5", "6"],
            Suite::Oracle => &["7", "13"],
            Suite::Stolarsky => &["12"],
            Suite::All => &["1", "2", "3", "4", "5", "6", "7", "8", "9", "10a", "10b", "11", "12", "13"],
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "known" => Ok(Suite::Known),
            "recursions" => Ok(Suite::Recursions),
            "oracle" => Ok(Suite::Oracle),
            "stolarsky" => Ok(Suite::Stolarsky),
            "all" => Ok(Suite::All),
            other => Err(Error::Argument(format!(
                "unknown suite {other:?} (expected known, recursions, oracle, stolarsky or all)"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub id: &'static str,
    pub name: &'static str,
    pub passed: bool,
    /// Failures, or a short summary when everything passed.
    pub detail: String,
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} criterion {:<3} {}: {}", self.id, self.name, self.detail)
    }
}

/// Collects failed sub-checks.
struct Check {
    failures: Vec<String>,
    count: usize,
}

impl Check {
    fn new() -> Self {
        Check { failures: Vec::new(), count: 0 }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.count += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn result<T>(&mut self, r: Result<T>, what: &str) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.count += 1;
                self.failures.push(format!("{what}: {e}"));
                None
            }
        }
    }

    fn finish(self, id: &'static str, name: &'static str, summary: String) -> Report {
        let passed = self.failures.is_empty();
        let detail = if passed {
            format!("{} check{}; {summary}", self.count, if self.count == 1 { "" } else { "s" })
        } else {
            let shown: Vec<_> = self.failures.iter().take(3).cloned().collect();
            let more = self.failures.len().saturating_sub(3);
            let tail = if more > 0 { format!(" (+{more} more)") } else { String::new() };
            format!("{}/{} failed: {}{tail}", self.failures.len(), self.count, shown.join("; "))
        };
        Report { id, name, passed, detail }
    }
}

pub fn run(suite: Suite) -> Vec<Report> {
    suite.criteria().iter().map(|id| criterion(id).expect("listed criterion")).collect()
}

pub fn criterion(id: &str) -> Option<Report> {
    Some(match id {
        "1" => known_even_values(),
        "2" => origin_value_and_slope(),
        "3" => negative_even_values(),
        "4" => residues(),
        "5" => rayleigh_recursions(),
        "6" => coefficient_identities(),
        "7" => oracle_equivalence(),
        "8" => riemann_specialization(),
        "9" => product_of_roots(),
        "10a" => z_agreement(),
        "10b" => z_slope_gap(),
        "11" => derivative_checks(),
        "12" => stolarsky_trend(),
        "13" => zero_finder(),
        _ => return None,
    })
}

fn q(p: i64, d: i64) -> Rational {
    Rational::from((p, d))
}

fn order(nu: &Rational) -> Order {
    Order::exact(nu.clone()).expect("valid order")
}

fn evaluator(nu: &Rational) -> Result<Evaluator> {
    Evaluator::new(order(nu), EvalConfig::with_precision(PRECISION))
}

fn exact_of(r: &EvalResult) -> Option<Rational> {
    r.exact.as_ref().filter(|e| e.pi_power == 0).map(|e| e.coeff.clone())
}

fn float(x: &Rational) -> Float {
    Float::with_val(PRECISION, x)
}

fn diff(a: &Float, b: &Float) -> Float {
    Float::with_val(PRECISION, a - b).abs()
}

fn nu_list(list: &[(i64, i64)]) -> Vec<Rational> {
    list.iter().map(|&(p, d)| q(p, d)).collect()
}

/// The Rayleigh sums `ζ_ν(2k)`, `k = 1..5`, as printed.
fn rayleigh_closed_form(nu: &Rational, k: u32) -> Rational {
    let p = |j: i64, e: u32| -> Rational {
        let base = Rational::from(nu + j);
        let mut acc = Rational::from(1);
        for _ in 0..e {
            acc *= &base;
        }
        acc
    };
    let (num, den) = match k {
        1 => (Rational::from(1), Rational::from(4) * p(1, 1)),
        2 => (Rational::from(1), Rational::from(16) * p(1, 2) * p(2, 1)),
        3 => (Rational::from(1), Rational::from(32) * p(1, 3) * p(2, 1) * p(3, 1)),
        4 => (Rational::from(nu * 5u32) + 11u32, Rational::from(256) * p(1, 4) * p(2, 2) * p(3, 1) * p(4, 1)),
        5 => (Rational::from(nu * 7u32) + 19u32, Rational::from(512) * p(1, 5) * p(2, 2) * p(3, 1) * p(4, 1) * p(5, 1)),
        _ => unreachable!("only five closed forms are printed"),
    };
    num / den
}

fn known_even_values() -> Report {
    let mut c = Check::new();
    for nu in nu_list(&[(0, 1), (1, 4), (1, 2), (1, 1), (3, 2)]) {
        let Some(e) = c.result(evaluator(&nu), "evaluator") else { continue };
        for k in 1..=5u32 {
            let want = rayleigh_closed_form(&nu, k);
            let got = c.result(e.eval(&Argument::integer(2 * i64::from(k))), "eval").and_then(|r| exact_of(&r));
            c.expect(got.as_ref() == Some(&want), || format!("ν={nu} s={}: got {got:?}, want {want}", 2 * k));
        }
    }
    c.finish("1", "known even values", "exact rational agreement for ν ∈ {0, 1/4, 1/2, 1, 3/2}, k = 1..5".into())
}

fn origin_value_and_slope() -> Report {
    let mut c = Check::new();
    for nu in nu_list(&[(0, 1), (1, 2), (1, 1)]) {
        let Some(e) = c.result(evaluator(&nu), "evaluator") else { continue };
        let want = -(Rational::from(&nu + q(1, 2))) / 2u32;
        let got = c.result(e.eval(&Argument::integer(0)), "eval").and_then(|r| exact_of(&r));
        c.expect(got.as_ref() == Some(&want), || format!("ν={nu}: ζ(0) = {got:?}, want {want}"));

        // (1/2) ln(2^ν Γ(ν+1) / √(2π)) with the gamma function taken directly
        let w = PRECISION + 32;
        let nuf = Float::with_val(w, &nu);
        let gamma = Float::with_val(w, Float::with_val(w, &nuf + 1u32).gamma_ref());
        let two_nu = Float::with_val(w, &nuf * Float::with_val(w, 2u32).ln()).exp();
        let root = Float::with_val(w, pi(w) * 2u32).sqrt();
        let want = Float::with_val(w, two_nu * gamma / root).ln() / 2u32;
        if let Some(d) = c.result(e.derivative(&Argument::integer(0)), "derivative") {
            let err = diff(d.real(), &want);
            c.expect(err < TOL_CLOSED, || format!("ν={nu}: ζ'(0) off by {:.3e}", err.to_f64()));
        }
    }
    c.finish("2", "origin value and slope", format!("ζ(0) exact, ζ'(0) within {TOL_CLOSED:e} for ν ∈ {{0, 1/2, 1}}"))
}

fn negative_even_values() -> Report {
    let mut c = Check::new();
    for nu in nu_list(&[(0, 1), (1, 4), (1, 1)]) {
        let Some(e) = c.result(evaluator(&nu), "evaluator") else { continue };
        let Some(table) = c.result(CoefficientTable::build(Family::C, &order(&nu), 12, PRECISION), "c table") else {
            continue;
        };
        for k in 1..=6usize {
            let ck = table.get(2 * k - 1).and_then(|n| n.as_rational()).cloned().expect("exact c");
            let mut want = ck / 2u32;
            if k % 2 == 1 {
                want = -want;
            }
            let got = c.result(e.eval(&Argument::integer(-2 * k as i64)), "eval").and_then(|r| exact_of(&r));
            c.expect(got.as_ref() == Some(&want), || format!("ν={nu} s=-{}: got {got:?}, want {want}", 2 * k));
        }
    }
    c.finish("3", "negative even values", "β-route equals (-1)^k c_{2k-1}/2 exactly for k = 1..6".into())
}

fn residues() -> Report {
    let mut c = Check::new();
    let inv_pi = pi(PRECISION).recip();
    for nu in nu_list(&[(0, 1), (1, 2), (1, 1)]) {
        if let Some(e) = c.result(evaluator(&nu), "evaluator") {
            if let Some(r) = c.result(e.residue(1), "residue") {
                let err = diff(r.real(), &inv_pi);
                c.expect(err < TOL_CLOSED, || format!("ν={nu}: Res(1) off by {:.3e}", err.to_f64()));
            }
        }
    }
    if let Some(e) = c.result(evaluator(&q(0, 1)), "evaluator") {
        if let Some(r) = c.result(e.residue(-1), "residue") {
            let want = Float::with_val(PRECISION, pi(PRECISION) * 8u32).recip();
            let err = diff(r.real(), &want);
            c.expect(err < TOL_CLOSED, || format!("ν=0: Res(-1) off by {:.3e}", err.to_f64()));
        }
    }
    if let Some(e) = c.result(evaluator(&q(1, 2)), "evaluator") {
        for k in 1..=4i64 {
            if let Some(r) = c.result(e.residue(1 - 2 * k), "residue") {
                c.expect(r.real().is_zero(), || format!("ν=1/2: Res({}) = {}", 1 - 2 * k, r.value));
            }
        }
    }
    for nu in nu_list(&[(0, 1), (1, 4), (1, 1)]) {
        let Some(e) = c.result(evaluator(&nu), "evaluator") else { continue };
        for k in 1..=5u32 {
            let a = c.result(e.residue(1 - 2 * i64::from(k)), "residue");
            let b = c.result(e.residue_m_indexed(k - 1), "residue");
            if let (Some(a), Some(b)) = (a, b) {
                c.expect(a.exact.is_some() && a.exact == b.exact, || {
                    format!("ν={nu} k={k}: k-indexed {} vs m-indexed {}", a.value, b.value)
                });
            }
        }
    }
    c.finish("4", "residues", "Res(1) = 1/π, Res_0(-1) = 1/(8π), ν = 1/2 residues vanish, both indexings agree".into())
}

/// `ζ_ν(2n)` for `n = 1..=count` from `ζ_ν(2) = 1/(4(ν+1))` and the quadratic recursion.
fn rayleigh_by_quadratic(nu: &Rational, count: usize) -> Vec<Rational> {
    let mut z = vec![Rational::new(), Rational::from(1) / (Rational::from(nu + 1u32) * 4u32)];
    for n in 2..=count {
        let mut acc = Rational::new();
        for k in 1..n {
            acc += Rational::from(&z[k] * &z[n - k]);
        }
        z.push(acc / Rational::from(nu + n as u32));
    }
    z
}

fn factorial(n: u32) -> Rational {
    Rational::from(Integer::from(Integer::factorial(n)))
}

fn rayleigh_recursions() -> Report {
    let mut c = Check::new();
    for nu in nu_list(&[(0, 1), (1, 4), (1, 1)]) {
        let Some(e) = c.result(evaluator(&nu), "evaluator") else { continue };
        let mut zeta = vec![Rational::new()];
        for k in 1..=9i64 {
            let v = c.result(e.eval(&Argument::integer(2 * k)), "eval").and_then(|r| exact_of(&r));
            zeta.push(v.unwrap_or_default());
        }
        // linear: Σ_k (-1)^k 4^k ζ(2k+2) / ((n-k)! (ν+1)_{n-k}) = 1 / (4 n! (ν+1)_{n+1})
        let nu1 = Rational::from(&nu + 1u32);
        for n in 0..=8u32 {
            let mut lhs = Rational::new();
            for k in 0..=n {
                let mut t = Rational::from(&zeta[k as usize + 1] << (2 * k));
                t /= factorial(n - k) * pochhammer(&nu1, n - k);
                if k % 2 == 1 {
                    t = -t;
                }
                lhs += t;
            }
            let rhs = Rational::from(1) / (factorial(n) * pochhammer(&nu1, n + 1) * 4u32);
            c.expect(lhs == rhs, || format!("ν={nu} linear n={n}: {lhs} vs {rhs}"));
        }
        // quadratic: ζ(2n)(n + ν) = Σ ζ(2k) ζ(2n-2k)
        for n in 2..=6usize {
            let mut rhs = Rational::new();
            for k in 1..n {
                rhs += Rational::from(&zeta[k] * &zeta[n - k]);
            }
            let lhs = Rational::from(&zeta[n] * Rational::from(&nu + n as u32));
            c.expect(lhs == rhs, || format!("ν={nu} quadratic n={n}: {lhs} vs {rhs}"));
        }
    }
    c.finish("5", "Rayleigh recursions", "linear (n ≤ 8) and quadratic (n = 2..6) hold exactly for ν ∈ {0, 1/4, 1}".into())
}

fn exact_table(family: Family, nu: &Rational, count: usize, c: &mut Check) -> Option<Vec<Rational>> {
    let t = c.result(CoefficientTable::build(family, &order(nu), count, PRECISION), "table")?;
    Some(t.entries().iter().map(|n| n.as_rational().cloned().expect("exact table")).collect())
}

fn coefficient_identities() -> Report {
    let mut c = Check::new();
    // d_{m+2} c_0 = c_m at ν = 0
    let zero = q(0, 1);
    if let (Some(cs), Some(ds)) = (exact_table(Family::C, &zero, 31, &mut c), exact_table(Family::D, &zero, 31, &mut c)) {
        for m in 0..=30usize {
            let lhs = Rational::from(&ds[m] * &cs[0]);
            c.expect(lhs == cs[m], || format!("m={m}: d_{} c_0 = {lhs}, c_m = {}", m + 2, cs[m]));
        }
    }
    // a_n = (-1)^{n+1} 2^{2n+1} ζ_ν(2n), with ζ_ν(2n) from the quadratic recursion
    for nu in nu_list(&[(0, 1), (1, 4), (1, 2), (1, 1)]) {
        let Some(a) = exact_table(Family::A, &nu, 11, &mut c) else { continue };
        let z = rayleigh_by_quadratic(&nu, 10);
        for n in 1..=10usize {
            let mut want = Rational::from(&z[n] << (2 * n as u32 + 1));
            if n % 2 == 0 {
                want = -want;
            }
            c.expect(a[n] == want, || format!("ν={nu} n={n}: a_n = {}, want {want}", a[n]));
        }
    }
    // a_n = 2^{4n} B_{2n} / (2n)! at ν = 1/2
    if let Some(a) = exact_table(Family::A, &q(1, 2), 13, &mut c) {
        for n in 1..=12usize {
            let want = Rational::from(bernoulli(2 * n) << (4 * n as u32)) / factorial(2 * n as u32);
            c.expect(a[n] == want, || format!("ν=1/2 n={n}: a_n = {}, want {want}", a[n]));
        }
    }
    c.finish("6", "coefficient cross-identities", "d/c (m ≤ 30), a/ζ(2n) (n ≤ 10), Bernoulli (n ≤ 12), all exact".into())
}

fn oracle_equivalence() -> Report {
    let mut c = Check::new();
    for (nu, s) in [(q(0, 1), "2.5"), (q(0, 1), "3"), (q(1, 2), "2.5"), (q(1, 1), "3.5")] {
        let config = EvalConfig::with_precision(PRECISION).auto_split();
        let Some(e) = c.result(Evaluator::new(order(&nu), config), "evaluator") else { continue };
        let sf = Float::with_val(PRECISION, Float::parse(s).expect("literal"));
        let Some(r) = c.result(e.eval(&Argument::real(sf.clone())), "eval") else { continue };
        let sc = Complex::with_val(PRECISION, (sf, 0));
        let Some(o) = c.result(oracle::direct_sum(&order(&nu), &sc, ORACLE_TERMS), "oracle") else { continue };
        let d = abs_complex(&Complex::with_val(PRECISION, &r.value - &o.value), 64);
        let bound = Float::with_val(64, &r.error_estimate + &o.tail_estimate);
        c.expect(d <= bound, || format!("ν={nu} s={s}: |Δ| = {:.3e} > {:.3e}", d.to_f64(), bound.to_f64()));
        if nu == q(1, 2) {
            c.expect(d <= TOL_ORACLE_HALF, || format!("ν=1/2 s={s}: |Δ| = {:.3e}", d.to_f64()));
        }
    }
    c.finish("7", "oracle equivalence", format!("{ORACLE_TERMS}-term direct sums agree within combined estimates"))
}

fn riemann_specialization() -> Report {
    let mut c = Check::new();
    let config = EvalConfig::with_precision(PRECISION);
    for k in 1..=6u32 {
        // (2π)^{2k} (-1)^{k+1} B_{2k} / (2 (2k)!)
        let mut coeff = Rational::from(bernoulli(2 * k as usize) << (2 * k)) / (factorial(2 * k) * 2u32);
        if k % 2 == 0 {
            coeff = -coeff;
        }
        let got = c.result(riemann(&Argument::integer(2 * i64::from(k)), &config), "riemann");
        let ok = got.as_ref().and_then(|r| r.exact.as_ref()).is_some_and(|e| e.coeff == coeff && e.pi_power == 2 * k as i32);
        c.expect(ok, || format!("ζ({}) is not exactly {coeff}·π^{}", 2 * k, 2 * k));
    }
    let zero = c.result(riemann(&Argument::integer(0), &config), "riemann").and_then(|r| exact_of(&r));
    c.expect(zero == Some(q(-1, 2)), || format!("ζ(0) = {zero:?}"));
    for k in 1..=4i64 {
        if let Some(r) = c.result(riemann(&Argument::integer(-2 * k), &config), "riemann") {
            let m = abs_complex(&r.value, 64);
            c.expect(m < TOL_CLOSED, || format!("ζ({}) = {}", -2 * k, r.value));
        }
    }
    for k in 1..=6u32 {
        let want = -bernoulli(2 * k as usize) / Rational::from(2 * k);
        let got = c.result(riemann(&Argument::integer(1 - 2 * i64::from(k)), &config), "riemann").and_then(|r| exact_of(&r));
        c.expect(got.as_ref() == Some(&want), || format!("ζ({}) = {got:?}, want {want}", 1 - 2 * i64::from(k)));
    }
    if let Some(e) = c.result(evaluator(&q(1, 2)), "evaluator") {
        let w = PRECISION + 64;
        for s in ["-2", "-0.5", "0", "0.5", "2", "2.5", "3", "4"] {
            let arg = Argument::parse(s, PRECISION).expect("literal");
            let (Some(b), Some(r)) = (c.result(e.eval(&arg), "eval"), c.result(riemann(&arg, &config), "riemann")) else {
                continue;
            };
            let sv = arg.value(w);
            let scale = Complex::with_val(w, Complex::with_val(w, &sv * pi(w).ln()).exp_ref());
            let bridged = Complex::with_val(w, &b.value * &scale);
            let d = abs_complex(&Complex::with_val(w, &bridged - &r.value), 64);
            let bound = Float::with_val(64, &b.error_estimate * abs_complex(&scale, 64)) + &r.error_estimate;
            c.expect(d <= bound, || format!("bridge at s={s}: |Δ| = {:.3e} > {:.3e}", d.to_f64(), bound.to_f64()));
        }
    }
    c.finish("8", "Riemann specialization", "even, origin, negative even and Bernoulli branches exact; bridge within estimates".into())
}

fn product_of_roots() -> Report {
    let mut c = Check::new();
    let root2 = Float::with_val(PRECISION, 2u32).sqrt();
    let quarter = Float::with_val(PRECISION, pi(PRECISION) * 2u32).sqrt().sqrt();
    for (nu, want) in [(q(1, 2), root2), (q(0, 1), quarter)] {
        let Some(e) = c.result(evaluator(&nu), "evaluator") else { continue };
        let Some(p) = c.result(e.product_of_roots(), "product") else { continue };
        let err = diff(&p, &want);
        c.expect(err < TOL_CLOSED, || format!("ν={nu}: off by {:.3e}", err.to_f64()));
        if let Some(d) = c.result(e.derivative(&Argument::integer(0)), "derivative") {
            let via = Float::with_val(PRECISION, -d.real()).exp();
            let err = diff(&p, &via);
            let roundoff = Float::with_val(64, p.abs_ref()) >> (PRECISION as i32 - 8);
            c.expect(err <= roundoff, || format!("ν={nu}: exp(-ζ'(0)) differs by {:.3e}", err.to_f64()));
        }
    }
    c.finish("9", "product of roots", format!("√2 and (2π)^(1/4) within {TOL_CLOSED:e}, equal to exp(-ζ'(0))"))
}

fn z_agreement() -> Report {
    let mut c = Check::new();
    if let Some(e) = c.result(evaluator(&q(0, 1)), "evaluator") {
        for s in [0i64, 2, -2, 4, -4] {
            let arg = Argument::integer(s);
            let (Some(a), Some(z)) = (c.result(e.eval(&arg), "eval"), c.result(e.z_repr(&arg), "z_repr")) else {
                continue;
            };
            let d = diff(a.real(), z.real());
            let bound = Float::with_val(64, &a.error_estimate + &z.error_estimate);
            c.expect(d <= bound, || format!("s={s}: |Δ| = {:.3e} > {:.3e}", d.to_f64(), bound.to_f64()));
        }
    }
    c.finish("10a", "Z-representation values", "z_repr equals eval at s ∈ {0, ±2, ±4} for ν = 0".into())
}

fn z_slope_gap() -> Report {
    let mut c = Check::new();
    let mut summary = String::new();
    if let Some(e) = c.result(evaluator(&q(0, 1)), "evaluator") {
        let slope = c.result(e.z_slope_at_origin(), "Z slope");
        let deriv = c.result(e.derivative(&Argument::integer(0)), "derivative");
        if let (Some(z), Some(d)) = (slope, deriv) {
            let gap = diff(z.real(), d.real());
            let err = Float::with_val(64, &z.error_estimate + &d.error_estimate);
            let need = Float::with_val(64, &err * SLOPE_MARGIN);
            summary = format!(
                "|Z'(0) - β_0/2| = {:.4e}, combined error {:.4e}",
                gap.to_f64(),
                err.to_f64()
            );
            c.expect(gap > need, || format!("{summary}; need the gap to exceed {SLOPE_MARGIN}× the error"));
        }
    }
    c.finish("10b", "Z-representation slope gap", summary)
}

fn derivative_checks() -> Report {
    let mut c = Check::new();
    let h = Float::with_val(PRECISION, Float::parse(FD_STEP).expect("literal"));
    if let Some(e) = c.result(evaluator(&q(1, 2)), "evaluator") {
        for s in ["0.5", "2.5", "-1.5"] {
            let sf = Float::with_val(PRECISION, Float::parse(s).expect("literal"));
            let d = c.result(e.derivative(&Argument::real(sf.clone())), "derivative");
            let p = c.result(e.eval(&Argument::real(Float::with_val(PRECISION, &sf + &h))), "eval");
            let m = c.result(e.eval(&Argument::real(Float::with_val(PRECISION, &sf - &h))), "eval");
            if let (Some(d), Some(p), Some(m)) = (d, p, m) {
                let fd = Float::with_val(PRECISION, p.real() - m.real()) / Float::with_val(PRECISION, &h * 2u32);
                let err = diff(d.real(), &fd);
                c.expect(err <= TOL_FINITE_DIFFERENCE, || format!("s={s}: off by {:.3e}", err.to_f64()));
            }
        }
    }
    if let Some(e) = c.result(evaluator(&q(0, 1)), "evaluator") {
        for k in 1..=3i64 {
            for s in [2 * k, -2 * k] {
                if let Some(d) = c.result(e.derivative(&Argument::integer(s)), "derivative") {
                    let expected = if s > 0 { PointClass::PosEven(k as u32) } else { PointClass::NegEven(k as u32) };
                    let finite = d.value.real().is_finite() && d.error_estimate.is_finite();
                    c.expect(finite && d.classification == expected, || format!("ζ_0'({s}) = {} ± {}", d.value, d.error_estimate));
                }
            }
        }
    }
    c.finish("11", "derivatives", format!("finite differences within {TOL_FINITE_DIFFERENCE:e}; ζ_0'(±2k) finite for k ≤ 3"))
}

fn stolarsky_trend() -> Report {
    let mut c = Check::new();
    let mut summary = String::new();
    let nu = q(1, 4);
    if let (Some(a), Some(b)) = (exact_table(Family::C, &nu, 41, &mut c), exact_table(Family::C, &q(0, 1), 41, &mut c)) {
        let target = Float::with_val(PRECISION, pi(PRECISION) * float(&nu)).cos();
        let gap = |m: usize| diff(&float(&Rational::from(&a[m] / &b[m])), &target);
        let (g10, g40) = (gap(10), gap(40));
        summary = format!("|c_10 ratio - cos(νπ)| = {:.4e}, |c_40 ratio - cos(νπ)| = {:.4e}", g10.to_f64(), g40.to_f64());
        c.expect(g40 < g10, || summary.clone());
    }
    c.finish("12", "Stolarsky trend", summary)
}

fn zero_finder() -> Report {
    let mut c = Check::new();
    for nu in nu_list(&[(0, 1), (1, 2), (1, 1)]) {
        let Some(t) = c.result(bessel::zeros(&order(&nu), 200, PRECISION), "zeros") else { continue };
        c.result(t.check(), &format!("ν={nu} table check"));
        c.expect(t.len() == 200, || format!("ν={nu}: {} zeros", t.len()));
        if nu == q(1, 2) {
            let p = pi(PRECISION);
            let worst = t
                .zeros()
                .iter()
                .enumerate()
                .map(|(i, z)| diff(z, &Float::with_val(PRECISION, &p * (i as u32 + 1))))
                .fold(Float::with_val(64, 0), |m, d| if d > m { Float::with_val(64, d) } else { m });
            c.expect(worst < TOL_ZEROS_HALF, || format!("ν=1/2: max |j - nπ| = {:.3e}", worst.to_f64()));
        }
    }
    c.finish("13", "zero finder", "200 zeros for ν ∈ {0, 1/2, 1} ordered with small residuals; ν = 1/2 zeros are nπ".into())
}
