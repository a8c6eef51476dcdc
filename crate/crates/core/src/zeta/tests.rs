use super::*;
use crate::coefficients::beta_seq;
use crate::numerics::{abs_complex, pi};

const ZETA3: &str = "1.2020569031595942853997381615114499907649862923405";

fn order(p: i64, q: i64) -> Order {
    Order::ratio(p, q).unwrap()
}

fn ev(p: i64, q: i64) -> Evaluator {
    Evaluator::new(order(p, q), EvalConfig::default()).unwrap()
}

fn f(text: &str) -> Float {
    Float::with_val(256, Float::parse(text).unwrap())
}

fn close(a: &Float, b: &Float, tol: f64) -> bool {
    Float::with_val(256, a - b).abs() < tol
}

fn exact(r: &EvalResult) -> Rational {
    let e = r.exact.as_ref().expect("exact value");
    assert_eq!(e.pi_power, 0);
    e.coeff.clone()
}

#[test]
fn classification() {
    assert_eq!(classify_default(&order(0, 1), &Argument::integer(1)), PointClass::PoleAtOne);
    assert_eq!(classify_default(&order(1, 2), &Argument::integer(-3)), PointClass::RemovedNegOdd(2));
    assert_eq!(classify_default(&order(0, 1), &Argument::from_f64(2.5)), PointClass::Generic);
    assert_eq!(classify_default(&order(0, 1), &Argument::integer(-3)), PointClass::PoleNegOdd(2));
    assert_eq!(classify_default(&order(0, 1), &Argument::integer(3)), PointClass::Generic);
    assert_eq!(classify_default(&order(0, 1), &Argument::integer(-4)), PointClass::NegEven(2));
    assert_eq!(classify_default(&order(3, 1), &Argument::from_f64(4.0)), PointClass::PosEven(2));
}

#[test]
fn special_values_at_nu_zero() {
    let e = ev(0, 1);
    assert_eq!(exact(&e.eval(&Argument::integer(2)).unwrap()), Rational::from((1, 4)));
    assert_eq!(exact(&e.eval(&Argument::integer(0)).unwrap()), Rational::from((-1, 4)));
    assert_eq!(exact(&e.eval(&Argument::integer(-2)).unwrap()), Rational::from((1, 16)));
}

#[test]
fn riemann_cubed_over_pi_cubed() {
    let r = ev(1, 2).eval(&Argument::integer(3)).unwrap();
    let want = f(ZETA3) / pi(256).pow(3u32);
    assert!(close(r.real(), &want, 1e-45), "{}", r.value);
    assert!(r.error_estimate < 1e-60);
}

#[test]
fn poles_carry_residues() {
    match ev(0, 1).eval(&Argument::integer(1)) {
        Err(Error::Pole { pole: 1, residue }) => assert!(close(&residue, &pi(256).recip(), 1e-70)),
        other => panic!("{other:?}"),
    }
    match ev(0, 1).eval(&Argument::integer(-1)) {
        Err(Error::Pole { pole: -1, residue }) => assert!(close(&residue, &(pi(256) * 8u32).recip(), 1e-70)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn residues() {
    let e = ev(0, 1);
    assert!(close(e.residue(1).unwrap().real(), &pi(256).recip(), 1e-70));
    assert!(close(e.residue(-1).unwrap().real(), &(pi(256) * 8u32).recip(), 1e-70));
    assert!(ev(1, 2).residue(-3).unwrap().real().is_zero());
    assert!(matches!(e.residue(2), Err(Error::Argument(_))));
    for nu in [(0, 1), (1, 3), (2, 1)] {
        let e = ev(nu.0, nu.1);
        for m in 0..5u32 {
            let a = e.residue(-2 * i64::from(m) - 1).unwrap();
            let b = e.residue_m_indexed(m).unwrap();
            assert_eq!(a.exact, b.exact);
        }
    }
}

#[test]
fn derivative_at_origin() {
    let half = ev(1, 2).derivative(&Argument::integer(0)).unwrap();
    let want = -Float::with_val(256, 2u32).ln() / 2u32;
    assert!(close(half.real(), &want, 1e-70));
    let zero = ev(0, 1).derivative(&Argument::integer(0)).unwrap();
    let want = -(pi(256) * 2u32).ln() / 4u32;
    assert!(close(zero.real(), &want, 1e-70));
}

#[test]
fn derivative_matches_finite_difference() {
    let h = f("1e-12");
    for (nu, s) in [((1, 2), 0.5), ((0, 1), 2.5), ((1, 1), -0.75)] {
        let e = ev(nu.0, nu.1);
        let s = f(&s.to_string());
        let d = e.derivative(&Argument::real(s.clone())).unwrap();
        let p = e.eval(&Argument::real(Float::with_val(256, &s + &h))).unwrap();
        let m = e.eval(&Argument::real(Float::with_val(256, &s - &h))).unwrap();
        let fd = Float::with_val(256, p.real() - m.real()) / Float::with_val(256, &h * 2u32);
        assert!(close(d.real(), &fd, 1e-20), "ν={nu:?} s={s}: {} vs {fd}", d.value);
    }
}

#[test]
fn derivative_at_even_integers_matches_neighbours() {
    let h = f("1e-15");
    for (nu, s) in [((0, 1), 2), ((0, 1), -2), ((1, 3), 4), ((1, 3), -4)] {
        let e = ev(nu.0, nu.1);
        let d = e.derivative(&Argument::integer(s)).unwrap();
        let sf = Float::with_val(256, s);
        let p = e.derivative(&Argument::real(Float::with_val(256, &sf + &h))).unwrap();
        let m = e.derivative(&Argument::real(Float::with_val(256, &sf - &h))).unwrap();
        let mid = Float::with_val(256, p.real() + m.real()) / 2u32;
        assert!(close(d.real(), &mid, 1e-25), "ν={nu:?} s={s}: {} vs {mid}", d.value);
    }
}

#[test]
fn product_of_roots() {
    let half = ev(1, 2).product_of_roots().unwrap();
    assert!(close(&half, &Float::with_val(256, 2u32).sqrt(), 1e-70));
    let zero = ev(0, 1).product_of_roots().unwrap();
    assert!(close(&zero, &(pi(256) * 2u32).sqrt().sqrt(), 1e-70));
    let e = ev(1, 3);
    let d = e.derivative(&Argument::integer(0)).unwrap();
    let via = Float::with_val(256, -d.real()).exp();
    assert!(close(&e.product_of_roots().unwrap(), &via, 1e-70));
}

#[test]
fn z_representation_limits() {
    let e = ev(0, 1);
    assert_eq!(exact(&e.z_repr(&Argument::integer(2)).unwrap()), Rational::from((1, 4)));
    assert_eq!(exact(&e.z_repr(&Argument::integer(0)).unwrap()), Rational::from((-1, 4)));
    match e.z_repr(&Argument::integer(1)) {
        Err(Error::Pole { pole: 1, residue }) => assert!(close(&residue, &pi(256).recip(), 1e-70)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn z_representation_agrees_with_eval() {
    for nu in [(0, 1), (1, 3), (2, 1)] {
        let e = ev(nu.0, nu.1);
        for s in [0i64, 2, -2, 4, -4] {
            let a = e.eval(&Argument::integer(s)).unwrap();
            let z = e.z_repr(&Argument::integer(s)).unwrap();
            let tol = Float::with_val(64, &a.error_estimate + &z.error_estimate) + 1e-70;
            assert!(Float::with_val(256, a.real() - z.real()).abs() <= tol, "ν={nu:?} s={s}");
        }
    }
}

#[test]
fn riemann_branches() {
    let c = EvalConfig::default();
    let two = riemann(&Argument::integer(2), &c).unwrap();
    assert_eq!(two.exact.as_ref().unwrap().coeff, Rational::from((1, 6)));
    assert_eq!(two.exact.as_ref().unwrap().pi_power, 2);
    assert_eq!(exact(&riemann(&Argument::integer(0), &c).unwrap()), Rational::from((-1, 2)));
    let m1 = riemann(&Argument::integer(-1), &c).unwrap();
    assert_eq!(exact(&m1), Rational::from((-1, 12)));
    assert_eq!(m1.method, Method::Bernoulli);
    assert!(riemann(&Argument::integer(-2), &c).unwrap().real().is_zero());
    match riemann(&Argument::integer(1), &c) {
        Err(Error::Pole { pole: 1, residue }) => assert_eq!(residue, 1),
        other => panic!("{other:?}"),
    }
    let three = riemann(&Argument::integer(3), &c).unwrap();
    assert!(close(three.real(), &f(ZETA3), 1e-45));
    let half = riemann(&Argument::from_f64(0.5), &c).unwrap();
    assert!(close(half.real(), &f("-1.4603545088095868128894991525152980125"), 1e-36));
}

#[test]
fn riemann_bridge() {
    let c = EvalConfig::default();
    let e = ev(1, 2);
    for s in ["-2", "-0.5", "0", "0.5", "2", "2.5", "3", "4"] {
        let arg = Argument::parse(s, 256).unwrap();
        let z = e.eval(&arg).unwrap();
        let r = riemann(&arg, &c).unwrap();
        let sv = arg.value(320);
        let scale = Complex::with_val(320, Complex::with_val(320, &sv * pi(320).ln()).exp_ref());
        let bridged = Complex::with_val(320, &z.value * &scale);
        let diff = abs_complex(&Complex::with_val(320, &bridged - &r.value), 64);
        let tol = Float::with_val(64, &z.error_estimate * abs_complex(&scale, 64)) + &r.error_estimate + 1e-70;
        assert!(diff <= tol, "s={s}: {diff} > {tol}");
    }
}

#[test]
fn split_invariance() {
    for s in ["0.5", "2.5", "-1.5"] {
        let arg = Argument::parse(s, 256).unwrap();
        let one = Evaluator::new(order(1, 2), EvalConfig::default()).unwrap().eval(&arg).unwrap();
        let two = Evaluator::new(order(1, 2), EvalConfig::default().split_at(2.0)).unwrap().eval(&arg).unwrap();
        assert!(close(one.real(), two.real(), 2f64.powi(64 - 256)), "s={s}");

        let one = Evaluator::new(order(0, 1), EvalConfig::default()).unwrap().eval(&arg).unwrap();
        let two = Evaluator::new(order(0, 1), EvalConfig::default().split_at(2.0)).unwrap().eval(&arg).unwrap();
        let tol = Float::with_val(64, &one.error_estimate + &two.error_estimate);
        assert!(Float::with_val(256, one.real() - two.real()).abs() <= tol, "s={s}");
    }
}

#[test]
fn split_at_or_beyond_first_zero_is_rejected() {
    let e = Evaluator::new(order(0, 1), EvalConfig::default().split_at(2.5)).unwrap();
    assert!(matches!(e.eval(&Argument::from_f64(2.5)), Err(Error::Argument(_))));
}

#[test]
fn auto_split_stays_below_first_zero() {
    let e = Evaluator::new(order(0, 1), EvalConfig::default().auto_split()).unwrap();
    assert!(e.split_point() < e.first_zero().to_f64());
    assert!(e.split_point() <= 2.0);
}

#[test]
fn shifted_order() {
    let r = ev(-1, 2).eval(&Argument::integer(2)).unwrap();
    assert_eq!(exact(&r), Rational::from((1, 2)));
    // π^{-2} (2² - 1) ζ(2) = 1/2 as well
    let z2 = riemann(&Argument::integer(2), &EvalConfig::default()).unwrap();
    let via = Float::with_val(256, z2.real() * 3u32) / pi(256).square();
    assert!(close(&via, &f("0.5"), 1e-70));
    let g = ev(-1, 2).eval(&Argument::from_f64(2.000001)).unwrap();
    assert!(close(g.real(), &f("0.5"), 1e-5));
}

/// The T = 1 formula written out directly from the α and β tables.
#[test]
fn reduction_at_unit_split() {
    let config = EvalConfig { beta_policy: BetaPolicy::Fixed(4), remainder: Remainder::Omit, ..EvalConfig::default() };
    for (nu, s) in [((0, 1), 2.5), ((1, 3), 0.75), ((3, 2), -0.5)] {
        let o = order(nu.0, nu.1);
        let got = eval(&o, &Argument::from_f64(s), &config).unwrap();
        let w = 320;
        let s = Float::with_val(w, s);
        let alpha = CoefficientTable::build_float(Family::Alpha, &o, got.alpha_terms_used + 1, w).unwrap();
        let beta = beta_seq(&o, 6).unwrap();
        let mut sum = Float::new(w);
        for n in 1..=got.alpha_terms_used {
            let a = alpha.get(n).unwrap().to_float(w);
            let t = Float::with_val(w, &a * &s) / Float::with_val(w, (2 * n) as u32 - &s);
            if n % 2 == 1 {
                sum += t;
            } else {
                sum -= t;
            }
        }
        sum += Float::with_val(w, &s / Float::with_val(w, &s - 1u32));
        sum += beta.beta0().unwrap();
        for n in 1..=4usize {
            let b = beta.get(n).unwrap().to_float(w);
            sum += Float::with_val(w, &b * &s) / Float::with_val(w, &s + n as u32);
        }
        let nu_half = o.to_float(w) + 0.5f64;
        sum -= nu_half / &s;
        let sin = Float::with_val(w, &s * pi(w) / 2u32).sin();
        let want = Float::with_val(w, sin * sum) / pi(w);
        assert!(close(got.real(), &want, 1e-60), "{} vs {want}", got.value);
    }
}

#[test]
fn near_special_guard_snaps() {
    let e = ev(0, 1);
    let s = Float::with_val(256, 2u32) + Float::with_val(256, 1u32) / Float::with_val(256, 2u32).pow(100u32);
    let r = e.eval(&Argument::real(s)).unwrap();
    assert_eq!(r.classification, PointClass::PosEven(1));
    assert!(!r.warnings.is_empty());
}

#[test]
fn complex_arguments() {
    // ζ_{1/2}(s) conjugates with s
    let e = ev(1, 2);
    let a = e.eval(&Argument::parse("0.5,3", 256).unwrap()).unwrap();
    let b = e.eval(&Argument::parse("0.5,-3", 256).unwrap()).unwrap();
    assert!(close(a.value.real(), b.value.real(), 1e-60));
    assert!(close(a.value.imag(), &Float::with_val(256, -b.value.imag()), 1e-60));
    // π^s ζ_{1/2}(s) = ζ(s) at the first nontrivial zero
    let rho = Argument::parse("0.5,14.134725141734693790457251983562470270784257115699", 256).unwrap();
    let r = riemann(&rho, &EvalConfig::default()).unwrap();
    assert!(abs_complex(&r.value, 64) < 1e-45, "{}", r.value);
}

#[test]
fn alpha_budget_exhaustion_is_nonconvergence() {
    let config = EvalConfig { alpha_terms: 4, ..EvalConfig::default() };
    let e = Evaluator::new(order(0, 1), config.split_at(2.0)).unwrap();
    assert!(matches!(e.eval(&Argument::from_f64(2.5)), Err(Error::NonConvergence(_))));
}

#[test]
fn removed_point_away_from_half() {
    let r = ev(-1, 2).eval(&Argument::integer(-1)).unwrap();
    assert_eq!(r.classification, PointClass::RemovedNegOdd(1));
    // zeros of J_{-1/2} are (n - 1/2)π, so ζ_{-1/2}(s) = π^{-s} (2^s - 1) ζ(s)
    let want = Float::with_val(256, pi(256) * Rational::from((-1, 12))) * Float::with_val(256, -0.5f64);
    assert!(close(r.real(), &want, 1e-60), "{}", r.value);
}
