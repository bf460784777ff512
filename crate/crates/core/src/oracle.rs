//! Reference machinery: recurrence coefficients by the discretized Stieltjes
//! procedure, polynomial evaluation by the three-term recurrence, and
//! Golub–Welsch quadrature.
//!
//! Costs are O(n²) or worse; this is for testing and small degrees only.

use crate::error::{Error, Result};
use crate::jet::{r, C64};
use crate::quadrature::{QuadMethod, QuadRule};
use crate::weights::WeightSpec;

/// Recurrence π_{k+1} = (x − α_k)π_k − β_k π_{k−1}, with β_0 = μ_0.
#[derive(Debug, Clone)]
pub struct RecurrenceTable {
    pub alpha_rec: Vec<f64>,
    pub beta_rec: Vec<f64>,
    pub mu0: f64,
}

impl RecurrenceTable {
    pub fn len(&self) -> usize {
        self.alpha_rec.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha_rec.is_empty()
    }
}

/// Classical Jacobi recurrence coefficients for k < n.
pub fn jacobi_recurrence(a: f64, b: f64, n: usize) -> RecurrenceTable {
    let ab = a + b;
    let mu0 = (ab + 1.0) * std::f64::consts::LN_2 + libm::lgamma(a + 1.0) + libm::lgamma(b + 1.0)
        - libm::lgamma(ab + 2.0);
    let mu0 = mu0.exp();
    let mut al = Vec::with_capacity(n);
    let mut be = Vec::with_capacity(n);
    for k in 0..n {
        let kf = k as f64;
        let s = 2.0 * kf + ab;
        let ak = if k == 0 {
            (b - a) / (ab + 2.0)
        } else {
            (b * b - a * a) / (s * (s + 2.0))
        };
        let bk = match k {
            0 => mu0,
            1 => 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab)),
            _ => 4.0 * kf * (kf + a) * (kf + b) * (kf + ab) / (s * s * (s + 1.0) * (s - 1.0)),
        };
        al.push(ak);
        be.push(bk);
    }
    RecurrenceTable { alpha_rec: al, beta_rec: be, mu0 }
}

/// Eigenvalues and squared first eigenvector components of the Jacobi matrix
/// with diagonal `d` and off-diagonal `e` (e[i] couples i and i+1).
///
/// Implicit QL with Wilkinson shifts, tracking only the first row of the
/// eigenvector matrix.
pub fn tridiag_eig_first(d: &[f64], e: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = d.len();
    let mut d = d.to_vec();
    let mut e: Vec<f64> = e.iter().copied().chain(std::iter::once(0.0)).take(n).collect();
    let mut z = vec![0.0; n];
    if n == 0 {
        return Ok((d, z));
    }
    z[0] = 1.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::EigenFailure);
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut rr = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + rr.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut i = m;
            let mut early = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                rr = f.hypot(g);
                e[i + 1] = rr;
                if rr == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    early = true;
                    break;
                }
                s = f / rr;
                c = g / rr;
                g = d[i + 1] - p;
                rr = (d[i] - g) * s + 2.0 * c * b;
                p = s * rr;
                d[i + 1] = g + p;
                g = c * rr - b;
                let fz = z[i + 1];
                z[i + 1] = s * z[i] + c * fz;
                z[i] = c * z[i] - s * fz;
            }
            if early {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    let w: Vec<f64> = z.iter().map(|x| x * x).collect();
    Ok((d, w))
}

/// Gauss rule of size n from recurrence coefficients.
pub fn golub_welsch(table: &RecurrenceTable, n: usize) -> Result<QuadRule> {
    if n == 0 {
        return Err(Error::InvalidDegree(0));
    }
    if n > table.len() {
        return Err(Error::DegreeExceedsTable { n, len: table.len() });
    }
    let d = &table.alpha_rec[..n];
    let e: Vec<f64> = table.beta_rec[1..n].iter().map(|b| b.sqrt()).collect();
    let (x, w) = tridiag_eig_first(d, &e)?;
    let mut pairs: Vec<(f64, f64)> = x.into_iter().zip(w.into_iter().map(|v| v * table.mu0)).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(QuadRule {
        n,
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
        max_residual: 0.0,
        method: QuadMethod::GolubWelsch,
    })
}

/// Stieltjes procedure on a fixed discrete measure.
fn stieltjes_discrete(x: &[f64], w: &[f64], n: usize) -> RecurrenceTable {
    let mu0: f64 = w.iter().sum();
    let mut al = Vec::with_capacity(n);
    let mut be = Vec::with_capacity(n);
    let s0 = mu0.sqrt();
    let mut q: Vec<f64> = vec![1.0 / s0; x.len()];
    let mut qm: Vec<f64> = vec![0.0; x.len()];
    let mut bprev = 0.0f64;
    be.push(mu0);
    for k in 0..n {
        let a: f64 = x.iter().zip(w).zip(&q).map(|((xi, wi), qi)| wi * xi * qi * qi).sum();
        al.push(a);
        if k + 1 == n {
            break;
        }
        let sb = bprev.sqrt();
        let mut rv: Vec<f64> = (0..x.len()).map(|i| (x[i] - a) * q[i] - sb * qm[i]).collect();
        // one reorthogonalization pass against q and qm keeps the recursion clean
        let c1: f64 = (0..x.len()).map(|i| w[i] * rv[i] * q[i]).sum();
        let c0: f64 = (0..x.len()).map(|i| w[i] * rv[i] * qm[i]).sum();
        for i in 0..x.len() {
            rv[i] -= c1 * q[i] + c0 * qm[i];
        }
        let b: f64 = (0..x.len()).map(|i| w[i] * rv[i] * rv[i]).sum();
        be.push(b);
        let sb1 = b.sqrt();
        qm = q;
        q = rv.into_iter().map(|v| v / sb1).collect();
        bprev = b;
    }
    RecurrenceTable { alpha_rec: al, beta_rec: be, mu0 }
}

/// Discrete measure: Gauss–Jacobi(α, β) nodes with weights scaled by h.
pub fn base_measure(spec: &WeightSpec, size: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let jt = jacobi_recurrence(spec.alpha, spec.beta, size);
    let rule = golub_welsch(&jt, size)?;
    let mut w = Vec::with_capacity(size);
    for (x, wk) in rule.nodes.iter().zip(&rule.weights) {
        let h = spec.eval_h(r(*x))?;
        w.push(wk * h.re);
    }
    Ok((rule.nodes, w))
}

/// Recurrence coefficients α_k, β_k for k < n_max + 1.
pub fn stieltjes(spec: &WeightSpec, n_max: usize) -> Result<RecurrenceTable> {
    if n_max > 2000 {
        return Err(Error::InvalidParameter("stieltjes supports n_max <= 2000".into()));
    }
    let n = n_max + 1;
    if spec.logh_polynomial().map(|p| p.iter().all(|c| *c == 0.0)).unwrap_or(false) {
        return Ok(jacobi_recurrence(spec.alpha, spec.beta, n));
    }
    let mut size = n + 40;
    let (x, w) = base_measure(spec, size)?;
    let mut prev = stieltjes_discrete(&x, &w, n);
    let mut last_rel = f64::INFINITY;
    for _ in 0..4 {
        size *= 2;
        let (x, w) = base_measure(spec, size)?;
        let next = stieltjes_discrete(&x, &w, n);
        let b0 = prev.beta_rec[n - 1];
        let b1 = next.beta_rec[n - 1];
        last_rel = ((b1 - b0) / b1).abs();
        if last_rel <= 1e-13 {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::NoConvergence { m_used: size, residual: last_rel })
}

/// Monic π_n(x) by forward recurrence.
pub fn eval_recurrence(table: &RecurrenceTable, n: usize, x: C64) -> Result<C64> {
    if n > table.len() {
        return Err(Error::DegreeExceedsTable { n, len: table.len() });
    }
    let mut p0 = r(1.0);
    if n == 0 {
        return Ok(p0);
    }
    let mut p1 = x - table.alpha_rec[0];
    for k in 1..n {
        let p2 = (x - table.alpha_rec[k]) * p1 - p0 * table.beta_rec[k];
        p0 = p1;
        p1 = p2;
    }
    Ok(p1)
}

/// Orthonormal p_n(x) and p_n′(x) by the normalized recurrence.
pub fn eval_orthonormal_recurrence(table: &RecurrenceTable, n: usize, x: C64) -> Result<(C64, C64)> {
    if n + 1 > table.len() && n > 0 {
        return Err(Error::DegreeExceedsTable { n, len: table.len() });
    }
    let mut p0 = r(0.0);
    let mut d0 = r(0.0);
    let mut p1 = r(1.0 / table.mu0.sqrt());
    let mut d1 = r(0.0);
    for k in 0..n {
        let sb1 = table.beta_rec[k + 1].sqrt();
        let sb = if k == 0 { 0.0 } else { table.beta_rec[k].sqrt() };
        let p2 = ((x - table.alpha_rec[k]) * p1 - p0 * sb) / sb1;
        let d2 = (p1 + (x - table.alpha_rec[k]) * d1 - d0 * sb) / sb1;
        p0 = p1;
        p1 = p2;
        d0 = d1;
        d1 = d2;
    }
    Ok((p1, d1))
}

/// ln γ_n = −½ Σ_{k≤n} ln β_k.
pub fn log_gamma_recurrence(table: &RecurrenceTable, n: usize) -> Result<f64> {
    if n + 1 > table.len() {
        return Err(Error::DegreeExceedsTable { n, len: table.len() });
    }
    Ok(-0.5 * table.beta_rec[..=n].iter().map(|b| b.ln()).sum::<f64>())
}

/// Moments μ_j = ∫ x^j w(x) dx for j ≤ degree.
pub fn moments(spec: &WeightSpec, degree: usize) -> Result<Vec<f64>> {
    let mut size = degree / 2 + 64;
    let mut prev: Option<Vec<f64>> = None;
    for _ in 0..6 {
        let (x, w) = base_measure(spec, size)?;
        let mut mu = vec![0.0; degree + 1];
        for (xi, wi) in x.iter().zip(&w) {
            let mut p = *wi;
            for m in mu.iter_mut() {
                *m += p;
                p *= xi;
            }
        }
        if let Some(pm) = &prev {
            let d = pm.iter().zip(&mu).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            if d <= 1e-15 * mu[0].abs() {
                return Ok(mu);
            }
        }
        prev = Some(mu);
        size *= 2;
    }
    Ok(prev.expect("at least one pass"))
}
