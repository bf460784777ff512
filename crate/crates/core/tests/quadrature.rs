use rhjacobi::quadrature::{christoffel_weight, growth_exponent, moments_check};
use rhjacobi::{gauss_rule, Engine, QuadMethod, WeightSpec};
use std::f64::consts::PI;

/// P_n(x) and P_n′(x) by the textbook recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    (p1, nf * (x * p1 - p0) / (x * x - 1.0))
}

fn jacobi_mu0(a: f64, b: f64) -> f64 {
    ((a + b + 1.0) * 2f64.ln() + libm::lgamma(a + 1.0) + libm::lgamma(b + 1.0) - libm::lgamma(a + b + 2.0)).exp()
}

fn check_shape(nodes: &[f64], weights: &[f64]) {
    assert!(nodes.windows(2).all(|w| w[0] < w[1]));
    assert!(nodes[0] > -1.0 && *nodes.last().unwrap() < 1.0);
    assert!(weights.iter().all(|w| *w > 0.0));
}

#[test]
fn two_point_legendre() {
    let eng = Engine::new(WeightSpec::jacobi(0.0, 0.0).unwrap(), 4).unwrap();
    let rule = gauss_rule(&eng, 2).unwrap();
    let x = 3f64.sqrt().recip();
    assert!((rule.nodes[0] + x).abs() < 1e-15 && (rule.nodes[1] - x).abs() < 1e-15);
    assert!(rule.weights.iter().all(|w| (w - 1.0).abs() < 1e-15));
    assert!(gauss_rule(&eng, 0).is_err());
}

#[test]
fn chebyshev_closed_form() {
    let eng = Engine::new(WeightSpec::jacobi(-0.5, -0.5).unwrap(), 4).unwrap();
    for n in [10, 50, 301] {
        let rule = gauss_rule(&eng, n).unwrap();
        assert_eq!(rule.method, if n < 20 { QuadMethod::GolubWelsch } else { QuadMethod::Asymptotic });
        check_shape(&rule.nodes, &rule.weights);
        for (k, (x, w)) in rule.nodes.iter().zip(&rule.weights).enumerate() {
            // ascending order
            let want = ((2 * (n - k) - 1) as f64 * PI / (2 * n) as f64).cos();
            assert!((x - want).abs() < 1e-15, "n={n} k={k}");
            // the outermost weights carry the most rounding
            assert!((w - PI / n as f64).abs() < 1e-11 * PI / n as f64, "n={n} k={k}");
        }
    }
}

#[test]
fn legendre_against_recurrence() {
    let eng = Engine::new(WeightSpec::jacobi(0.0, 0.0).unwrap(), 8).unwrap();
    for n in [100, 500] {
        let rule = gauss_rule(&eng, n).unwrap();
        check_shape(&rule.nodes, &rule.weights);
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            // one Newton step from the computed node measures its error
            let (p, dp) = legendre(n, *x);
            let step = p / dp;
            assert!(step.abs() < 2e-16 * n as f64, "n={n} x={x} step={step:e}");
            let xe = x - step;
            let (_, dp) = legendre(n, xe);
            let want = 2.0 / ((1.0 - xe * xe) * dp * dp);
            assert!((w - want).abs() < 1e-11 * want, "n={n} x={x}");
        }
        assert!(rule.max_residual < 1e-13);
    }
}

#[test]
fn weights_sum_to_mass() {
    for (a, b) in [(0.0, 0.0), (0.4, -0.3), (-0.7, 2.0)] {
        let eng = Engine::new(WeightSpec::jacobi(a, b).unwrap(), 6).unwrap();
        // the truncation error of the sum decays like n^{−T−1}
        for n in [80, 200] {
            let rule = gauss_rule(&eng, n).unwrap();
            let s: f64 = rule.weights.iter().sum();
            let mu0 = jacobi_mu0(a, b);
            assert!((s - mu0).abs() < 1e-12 * mu0, "({a},{b}) n={n}: {s} vs {mu0}");
        }
    }
}

#[test]
fn symmetric_weights_give_symmetric_rules() {
    let eng = Engine::new(WeightSpec::exp_even_power(7.0, 2).unwrap(), 6).unwrap();
    for n in [40, 41] {
        let rule = gauss_rule(&eng, n).unwrap();
        for k in 0..n {
            assert_eq!(rule.nodes[k], -rule.nodes[n - 1 - k]);
            assert_eq!(rule.weights[k], rule.weights[n - 1 - k]);
        }
        if n % 2 == 1 {
            assert_eq!(rule.nodes[n / 2], 0.0);
        }
    }
}

#[test]
fn nodes_interlace() {
    let eng = Engine::new(WeightSpec::toda(0.3, -0.6, 1.0).unwrap(), 6).unwrap();
    let mut prev = gauss_rule(&eng, 18).unwrap();
    for n in 19..=200 {
        let rule = gauss_rule(&eng, n).unwrap();
        check_shape(&rule.nodes, &rule.weights);
        for k in 0..n - 1 {
            assert!(rule.nodes[k] < prev.nodes[k] && prev.nodes[k] < rule.nodes[k + 1], "n={n} k={k}");
        }
        prev = rule;
    }
}

#[test]
fn exact_on_polynomials() {
    for spec in [WeightSpec::toda(0.3, -0.6, 1.0).unwrap(), WeightSpec::inverse_sqrt_shifted().unwrap()] {
        let eng = Engine::new(spec.clone(), 6).unwrap();
        let rule = gauss_rule(&eng, 60).unwrap();
        assert!(moments_check(&rule, &spec, 119).unwrap() < 1e-11);
        let rule = gauss_rule(&eng, 120).unwrap();
        assert!(moments_check(&rule, &spec, 239).unwrap() < 1e-12);
    }
}

#[test]
fn christoffel_weight_at_node() {
    let eng = Engine::new(WeightSpec::jacobi(0.0, 0.0).unwrap(), 6).unwrap();
    let rule = gauss_rule(&eng, 64).unwrap();
    let w = christoffel_weight(&eng, 64, rule.nodes[10]).unwrap();
    assert_eq!(w, rule.weights[10]);
}

#[test]
fn growth_exponent_of_power_law() {
    let n = [10, 100, 1000];
    let t: Vec<f64> = n.iter().map(|&k| 3.0 * (k as f64).powf(1.5)).collect();
    assert!((growth_exponent(&n, &t) - 1.5).abs() < 1e-12);
}
