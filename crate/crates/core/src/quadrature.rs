//! Gauss quadrature rules from the asymptotic evaluators.
//!
//! Nodes come from Newton's method on π_n, started from phase-inversion and
//! Bessel-zero guesses; weights from the Christoffel identity.

use crate::bessel::besselj_zero;
use crate::error::{Error, Result};
use crate::eval::Engine;
use crate::jet::{r, Jet};
use crate::oracle;
use crate::weights::WeightSpec;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::time::Instant;

/// How a rule was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuadMethod {
    /// Newton iteration on the asymptotic expansions.
    Asymptotic,
    /// Eigenvalues of the Jacobi matrix from Stieltjes recurrence coefficients.
    GolubWelsch,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuadRule {
    pub n: usize,
    /// Strictly increasing, inside (−1, 1).
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// Largest final Newton step |π_n/π_n′|.
    pub max_residual: f64,
    pub method: QuadMethod,
}

/// Below this degree rules come from the recurrence oracle.
pub const SMALL_N: usize = 20;
const MAX_NEWTON: usize = 20;
const STEP_TOL: f64 = 1e-14;
/// Nodes this close to an endpoint (counted from it) get Bessel-zero guesses.
const BESSEL_GUESSES: usize = 10;

/// Gauss rule with n nodes for the engine's weight.
pub fn gauss_rule(engine: &Engine, n: usize) -> Result<QuadRule> {
    if n == 0 {
        return Err(Error::InvalidDegree(0));
    }
    if n < SMALL_N {
        let table = oracle::stieltjes(&engine.spec, n)?;
        return oracle::golub_welsch(&table, n);
    }
    let symmetric = engine.spec.is_symmetric();
    // k counts nodes from the right endpoint, k = 1..=n
    let k_hi = if symmetric { n.div_ceil(2) } else { n };
    let mut right: Vec<(f64, f64, f64)> = Vec::with_capacity(k_hi);
    for k in 1..=k_hi {
        if symmetric && n % 2 == 1 && k == k_hi {
            right.push(node_and_weight(engine, n, k, Some(0.0))?);
        } else {
            right.push(node_and_weight(engine, n, k, None)?);
        }
    }
    let mut pts: Vec<(f64, f64, f64)> = if symmetric {
        let mut v: Vec<_> = right.iter().map(|&(x, w, s)| (-x, w, s)).collect();
        let skip = if n % 2 == 1 { 1 } else { 0 };
        v.extend(right.iter().rev().skip(skip).copied());
        v
    } else {
        right.into_iter().rev().collect()
    };
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let min_gap = 1e-8 / (n as f64 * n as f64);
    for i in 0..n - 1 {
        if pts[i + 1].0 - pts[i].0 <= min_gap {
            return Err(Error::DuplicateRoot { index: i, other: i + 1 });
        }
    }
    if pts[0].0 <= -1.0 || pts[n - 1].0 >= 1.0 {
        return Err(Error::NewtonStall { index: 0, step: f64::NAN });
    }
    Ok(QuadRule {
        n,
        nodes: pts.iter().map(|p| p.0).collect(),
        weights: pts.iter().map(|p| p.1).collect(),
        max_residual: pts.iter().map(|p| p.2).fold(0.0, f64::max),
        method: QuadMethod::Asymptotic,
    })
}

/// Φ(θ) = (n+½)θ + ψ(cos θ) and its θ-derivative.
fn phase(engine: &Engine, n: usize, th: f64) -> Result<(f64, f64)> {
    let x = th.cos();
    let p = engine.aux.psi_jet(&engine.spec, Jet::var(r(x)))?;
    let nh = n as f64 + 0.5;
    Ok((nh * th + p.v.re, nh - p.d.re * th.sin()))
}

/// Initial guess for the k-th node from the right.
fn initial_guess(engine: &Engine, n: usize, k: usize) -> Result<f64> {
    let (a, b) = (engine.spec.alpha, engine.spec.beta);
    let nf = n as f64;
    let n_eff = nf + (a + b + 1.0) / 2.0;
    let kl = n + 1 - k;
    // Zeros of cos λ: Φ(θ) = target.
    let (target, mut th) = if k <= BESSEL_GUESSES && k <= kl {
        let j = besselj_zero(a, k)?;
        (j - a * PI / 2.0, j / n_eff)
    } else if kl <= BESSEL_GUESSES {
        let j = besselj_zero(b, kl)?;
        ((nf + 0.5 + b / 2.0) * PI - j, PI - j / n_eff)
    } else {
        let t = (k as f64 - 0.25) * PI;
        (t, (k as f64 + a / 2.0 - 0.25) * PI / n_eff)
    };
    th = th.clamp(1e-3 / nf, PI - 1e-3 / nf);
    for _ in 0..30 {
        let (f, df) = phase(engine, n, th)?;
        let step = (f - target) / df;
        let mut next = th - step;
        if !(next > 0.0 && next < PI) {
            next = if next <= 0.0 { th / 2.0 } else { (th + PI) / 2.0 };
        }
        let done = (next - th).abs() < 1e-15;
        th = next;
        if done {
            break;
        }
    }
    Ok(th.cos())
}

/// Newton step π_n/π_n′ at x, and the values it came from.
fn newton_ratio(engine: &Engine, n: usize, x: f64) -> Result<(f64, f64)> {
    let (v, d) = engine.eval_orthonormal_jet(n, r(x), None)?;
    let step = (v.mantissa / d.mantissa).re;
    Ok((step, v.mantissa.norm() / d.mantissa.norm().max(f64::MIN_POSITIVE)))
}

fn node_and_weight(engine: &Engine, n: usize, k: usize, fixed: Option<f64>) -> Result<(f64, f64, f64)> {
    let mut x = match fixed {
        Some(x) => x,
        None => initial_guess(engine, n, k)?,
    };
    let mut last = 0.0;
    if fixed.is_none() {
        let mut converged = false;
        let (mut step, mut res) = newton_ratio(engine, n, x)?;
        for _ in 0..MAX_NEWTON {
            let mut h = step;
            let mut trial = x - h;
            let (mut s2, mut r2) = (f64::NAN, f64::INFINITY);
            for _ in 0..40 {
                if trial > -1.0 && trial < 1.0 {
                    let out = newton_ratio(engine, n, trial)?;
                    s2 = out.0;
                    r2 = out.1;
                    if r2 <= res || h.abs() < 1e-12 {
                        break;
                    }
                }
                h *= 0.5;
                trial = x - h;
            }
            last = h.abs();
            x = trial;
            step = s2;
            res = r2;
            if last <= STEP_TOL || step.abs() <= STEP_TOL * 1e-2 {
                converged = true;
                // the next step is quadratically small; take it for free
                if step.is_finite() && (x - step).abs() < 1.0 {
                    x -= step;
                    last = step.abs();
                }
                break;
            }
        }
        if !converged {
            return Err(Error::NewtonStall { index: k - 1, step: last });
        }
    }
    let w = christoffel_weight(engine, n, x)?;
    Ok((x, w, last))
}

/// Christoffel weight 1/(γ_{n−1}² (π_n′π_{n−1} − π_{n−1}′π_n)) at a node.
///
/// The π_n term vanishes at an exact root; keeping it makes the result
/// insensitive to the last-bit rounding of x.
pub fn christoffel_weight(engine: &Engine, n: usize, x: f64) -> Result<f64> {
    let (pm, dm) = engine.eval_monic_jet(n - 1, r(x), None)?;
    let (pn, dn) = engine.eval_monic_jet(n, r(x), None)?;
    let lg = engine.log_gamma_n(n - 1)?;
    let m = dn.mantissa * pm.mantissa - dm.mantissa * pn.mantissa;
    Ok((r(1.0) / m).re * (-2.0 * lg - pm.log_scale - pn.log_scale).exp())
}

/// max_j |Σ w_k x_k^j − μ_j| over j ≤ degree.
pub fn moments_check(rule: &QuadRule, spec: &WeightSpec, degree: usize) -> Result<f64> {
    let mu = oracle::moments(spec, degree)?;
    let mut err: f64 = 0.0;
    for (j, m) in mu.iter().enumerate() {
        let s: f64 = rule.nodes.iter().zip(&rule.weights).map(|(x, w)| w * x.powi(j as i32)).sum();
        err = err.max((s - m).abs());
    }
    Ok(err)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TimingReport {
    pub n_list: Vec<usize>,
    /// Wall time of gauss_rule per n, seconds.
    pub rule_seconds: Vec<f64>,
    /// Mean wall time of one evaluation at degree n, seconds.
    pub eval_seconds: Vec<f64>,
    /// Least-squares slope of log time against log n.
    pub rule_exponent: f64,
    pub eval_ratio: f64,
}

/// Fitted slope of log y against log x.
pub fn growth_exponent(n: &[usize], t: &[f64]) -> f64 {
    let xs: Vec<f64> = n.iter().map(|&v| (v as f64).ln()).collect();
    let ys: Vec<f64> = t.iter().map(|v| v.max(1e-12).ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Times gauss_rule and single evaluations over n_list.
pub fn timing_profile(engine: &Engine, n_list: &[usize]) -> Result<TimingReport> {
    let mut rule_seconds = Vec::new();
    let mut eval_seconds = Vec::new();
    for &n in n_list {
        let t0 = Instant::now();
        let rule = gauss_rule(engine, n)?;
        rule_seconds.push(t0.elapsed().as_secs_f64());
        std::hint::black_box(&rule);
        let pts = 400;
        let t0 = Instant::now();
        for i in 0..pts {
            let x = -0.99 + 1.98 * (i as f64 + 0.5) / pts as f64;
            std::hint::black_box(engine.eval_monic(n, r(x), None)?);
        }
        eval_seconds.push(t0.elapsed().as_secs_f64() / pts as f64);
    }
    let rule_exponent = growth_exponent(n_list, &rule_seconds);
    let eval_ratio = match (eval_seconds.first(), eval_seconds.last()) {
        (Some(a), Some(b)) => b / a,
        _ => 1.0,
    };
    Ok(TimingReport { n_list: n_list.to_vec(), rule_seconds, eval_seconds, rule_exponent, eval_ratio })
}
