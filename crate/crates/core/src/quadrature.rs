//! Gauss–Legendre rules at arbitrary precision, cached per (nodes, precision).

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::Float;

use crate::numerics::pi;

/// Nodes in (-1, 1) and matching weights.
#[derive(Debug)]
pub(crate) struct Rule {
    pub nodes: Vec<Float>,
    pub weights: Vec<Float>,
}

type RuleCache = Mutex<HashMap<(usize, u32), Arc<Rule>>>;

fn cache() -> &'static RuleCache {
    static CACHE: OnceLock<RuleCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub(crate) fn rule(n: usize, prec: u32) -> Arc<Rule> {
    if let Some(r) = cache().lock().expect("quadrature cache poisoned").get(&(n, prec)) {
        return r.clone();
    }
    let r = Arc::new(build(n, prec));
    cache().lock().expect("quadrature cache poisoned").insert((n, prec), r.clone());
    r
}

/// `P_n(x)` and `P_n'(x)` by the three-term recurrence.
fn legendre(n: usize, x: &Float, prec: u32) -> (Float, Float) {
    let mut p0 = Float::with_val(prec, 1);
    let mut p1 = Float::with_val(prec, x);
    for k in 2..=n {
        let k = k as u32;
        let t = Float::with_val(prec, x * &p1) * (2 * k - 1) - Float::with_val(prec, &p0 * (k - 1));
        p0 = p1;
        p1 = t / k;
    }
    // P_n' = n (x P_n - P_{n-1}) / (x^2 - 1)
    let x2m1 = Float::with_val(prec, x * x) - 1u32;
    let d = (Float::with_val(prec, x * &p1) - &p0) * n as u32 / x2m1;
    (p1, d)
}

fn build(n: usize, prec: u32) -> Rule {
    let wp = prec + 32;
    let pi = pi(wp);
    let tol = Float::with_val(wp, 1) >> (prec as i32 + 8);
    let half = n.div_ceil(2);
    let mut pos_nodes = Vec::with_capacity(half);
    let mut pos_weights = Vec::with_capacity(half);
    for i in 1..=half {
        // Tricomi's initial guess for the i-th largest root.
        let theta = Float::with_val(wp, &pi * (4 * i - 1) as u32) / (4 * n + 2) as u32;
        let mut x = theta.cos();
        // Newton at doubling precision, then a couple of steps at full precision.
        let mut p = 64u32.min(wp);
        for _ in 0..200 {
            let xp = Float::with_val(p, &x);
            let (f, df) = legendre(n, &xp, p);
            let step = Float::with_val(p, &f / &df);
            x = Float::with_val(wp, &xp - &step);
            if p == wp {
                if step.abs() < tol {
                    break;
                }
            } else {
                p = (2 * p).min(wp);
            }
        }
        let (_, df) = legendre(n, &x, wp);
        let w = Float::with_val(wp, 2u32) / ((Float::with_val(wp, 1u32) - Float::with_val(wp, &x * &x)) * df.square());
        pos_nodes.push(Float::with_val(prec, &x));
        pos_weights.push(Float::with_val(prec, &w));
    }
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..half {
        if n % 2 == 1 && i == half - 1 {
            continue;
        }
        nodes.push(Float::with_val(prec, -&pos_nodes[i]));
        weights.push(pos_weights[i].clone());
    }
    for i in (0..half).rev() {
        nodes.push(pos_nodes[i].clone());
        weights.push(pos_weights[i].clone());
    }
    if n % 2 == 1 {
        // The middle root is exactly 0; snap it.
        let mid = n / 2;
        nodes[mid] = Float::with_val(prec, 0);
    }
    Rule { nodes, weights }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::ops::Pow;

    #[test]
    fn weights_sum_to_two_and_integrate_polynomials() {
        for n in [1usize, 2, 5, 12, 31] {
            let r = rule(n, 200);
            assert_eq!(r.nodes.len(), n);
            let sum = r.weights.iter().fold(Float::with_val(200, 0), |acc, w| acc + w);
            assert!(Float::with_val(200, sum - 2u32).abs() < Float::with_val(200, 1) >> 190);
            // ∫ x^{2n-2} dx over [-1, 1] = 2 / (2n - 1), exact for this rule
            let deg = 2 * n as i32 - 2;
            let q = r
                .nodes
                .iter()
                .zip(&r.weights)
                .fold(Float::with_val(200, 0), |acc, (x, w)| acc + Float::with_val(200, x.pow(deg)) * w);
            let exact = Float::with_val(200, 2u32) / (2 * n as u32 - 1);
            assert!(Float::with_val(200, q - exact).abs() < Float::with_val(200, 1) >> 185, "n = {n}");
        }
    }

    #[test]
    fn nodes_are_sorted_and_symmetric() {
        let r = rule(20, 128);
        for w in r.nodes.windows(2) {
            assert!(w[0] < w[1]);
        }
        for i in 0..10 {
            let s = Float::with_val(128, &r.nodes[i] + &r.nodes[19 - i]);
            assert!(s.is_zero());
        }
    }
}
