//! Higher-order correction data of R(z): the Laurent coefficients W_{k,m} of
//! s_k at each endpoint, the pole coefficients U_{k,m} of R_k outside the
//! disks, and the Taylor coefficients Q_{k,n} of R_k inside the disks.
//!
//! Everything is built from explicit power series around z = ±1, without
//! symbolic algebra. Stored matrices are already conjugated by D_∞^{σ3}.

use crate::contours::{half_binom_scaled, logphi_f, AuxData, Endpoint};
use crate::error::{Error, Result};
use crate::jet::{r, ComplexMat2, C64, I};
use serde::{Deserialize, Serialize};

/// (q, m) = Π_{n=1}^m (4q² − (2n−1)²) / (4^m m!), with (q, 0) = 1.
pub fn bracket(q: f64, m: usize) -> f64 {
    let mut p = 1.0;
    for n in 1..=m {
        let odd = (2 * n - 1) as f64;
        p *= (4.0 * q * q - odd * odd) / (4.0 * n as f64);
    }
    p
}

/// binom(−i, n) = (−1)^n C(i+n−1, n).
fn binom_neg(i: usize, n: usize) -> f64 {
    let mut b = 1.0;
    for k in 0..n {
        b *= -((i + k) as f64) / (k + 1) as f64;
    }
    b
}

#[inline]
fn ceil_half(k: usize) -> usize {
    k.div_ceil(2)
}

fn conv(a: &[C64], b: &[C64], n: usize) -> Vec<C64> {
    (0..n)
        .map(|k| (0..=k).map(|j| a[j] * b[k - j]).sum())
        .collect()
}

fn conv_real(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| (0..=k).map(|j| a[j] * b[k - j]).sum())
        .collect()
}

/// Power-series data of one endpoint.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeriesData {
    /// f_n of log(±φ) = (±2v)^{1/2} Σ f_n v^n.
    pub f: Vec<f64>,
    /// g[k][n] of log(±φ)^{−k} = (±2v)^{−k/2} Σ g_{k,n} v^n, k ≥ 1 (g[0] unused).
    pub g: Vec<Vec<f64>>,
}

/// f_n and g_{k,n} for k ≤ t, n < len.
pub fn logphi_series(endpoint: Endpoint, t: usize, len: usize) -> SeriesData {
    let f = logphi_f(endpoint, len);
    let mut g1 = vec![0.0; len];
    g1[0] = 1.0;
    for n in 1..len {
        g1[n] = -(0..n).map(|j| g1[j] * f[n - j]).sum::<f64>();
    }
    let mut g = vec![Vec::new(), g1.clone()];
    for k in 2..=t {
        let next = conv_real(&g[k - 1], &g1, len);
        g.push(next);
    }
    SeriesData { f, g }
}

/// Power tables ρ_{k,n,γ} of y_γ = −i(±2v)^{1/2} Σ ρ_{1,n,γ} v^n for k ≤ kmax.
pub fn rho_series(
    aux: &AuxData,
    gamma: f64,
    endpoint: Endpoint,
    kmax: usize,
    len: usize,
) -> Result<Vec<Vec<C64>>> {
    let cd = match endpoint {
        Endpoint::Right => &aux.cn,
        Endpoint::Left => &aux.dn,
    };
    if cd.len() < len {
        return Err(Error::InsufficientCoefficients { needed: len, available: cd.len() });
    }
    let s = endpoint.sigma();
    let f = logphi_f(endpoint, len);
    let hb = half_binom_scaled(endpoint, len);
    let rho1: Vec<C64> = (0..len)
        .map(|n| {
            let conv: C64 = (0..=n).map(|j| cd[n - j] * hb[j]).sum();
            r(gamma * f[n]) + conv * s
        })
        .collect();
    let mut out = vec![vec![r(0.0); len]; kmax + 1];
    out[0][0] = r(1.0);
    if kmax >= 1 {
        out[1] = rho1.clone();
    }
    for k in 2..=kmax {
        out[k] = conv(&out[k - 1], &rho1, len);
    }
    Ok(out)
}

/// Coefficients H^odd (cos y_γ) and H^even (sin y_γ = −i(±2v)^{1/2} Σ H^even v^n).
fn h_coeffs(rho: &[Vec<C64>], endpoint: Endpoint, len: usize) -> (Vec<C64>, Vec<C64>) {
    let s2 = 2.0 * endpoint.sigma();
    let mut hodd = vec![r(0.0); len];
    let mut heven = vec![r(0.0); len];
    for n in 0..len {
        let mut fact = 1.0; // (2j)!
        let mut pw = 1.0; // (±2)^j
        for j in 0..=n {
            if j > 0 {
                fact *= (2 * j - 1) as f64 * (2 * j) as f64;
                pw *= s2;
            }
            hodd[n] += rho[2 * j][n - j] * (pw / fact);
            heven[n] += rho[2 * j + 1][n - j] * (pw / (fact * (2 * j + 1) as f64));
        }
    }
    (hodd, heven)
}

/// Taylor coefficients Ĝ_n of the matrix G_k around an endpoint.
///
/// For odd k, G_k(z) = (±2v)^{−1/2} Σ Ĝ_n v^n; for even k, G_k(z) = Σ Ĝ_n v^n.
/// D_∞ conjugation is not applied here.
pub fn g_matrices(
    aux: &AuxData,
    k: usize,
    endpoint: Endpoint,
    len: usize,
) -> Result<Vec<ComplexMat2>> {
    let s = endpoint.sigma();
    let q = match endpoint {
        Endpoint::Right => aux.alpha,
        Endpoint::Left => aux.beta,
    };
    let ab = aux.alpha + aux.beta;
    let kmax = 2 * len + 1;
    let mut h = Vec::new();
    for gamma in [ab, ab + 1.0, ab - 1.0] {
        let rho = rho_series(aux, gamma, endpoint, kmax, len)?;
        h.push(h_coeffs(&rho, endpoint, len));
    }
    // u/(z²−1)^{1/2} = Σ e_n v^n with u = (±2v)^{1/2}.
    let hb: Vec<f64> = {
        let mut out = Vec::with_capacity(len);
        let mut b = 1.0;
        for n in 0..len {
            if n > 0 {
                b *= (-0.5 - (n - 1) as f64) / n as f64 * (s / 2.0);
            }
            out.push(b);
        }
        out
    };
    let e: Vec<C64> = hb.iter().map(|&x| r(s * x)).collect();
    // u z/(z²−1)^{1/2}
    let zs: Vec<C64> = (0..len)
        .map(|n| r(hb[n] + if n > 0 { s * hb[n - 1] } else { 0.0 }))
        .collect();
    let a = (q * q + k as f64 / 2.0 - 0.25) / k as f64;
    let b = I * (-s * (k as f64 - 0.5));
    let mut out = Vec::with_capacity(len);
    if k % 2 == 1 {
        let c0 = conv(&e, &h[0].0, len);
        let cp = conv(&e, &h[1].0, len);
        let cm = conv(&e, &h[2].0, len);
        for n in 0..len {
            out.push(ComplexMat2::new(
                -zs[n] * a + I * b * c0[n],
                I * e[n] * a + b * cp[n] * s,
                I * e[n] * a + b * cm[n] * s,
                zs[n] * a - I * b * c0[n],
            ));
        }
    } else {
        let s0 = conv(&e, &h[0].1, len);
        let sp = conv(&e, &h[1].1, len);
        let sm = conv(&e, &h[2].1, len);
        let mib = -I * b;
        for n in 0..len {
            let mut m = ComplexMat2::new(
                -s0[n] * mib,
                I * sp[n] * s * mib,
                I * sm[n] * s * mib,
                s0[n] * mib,
            );
            if n == 0 {
                m += ComplexMat2::scalar(r(a));
            }
            out.push(m);
        }
    }
    Ok(out)
}

/// Coefficient tables of one endpoint.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EndpointTable {
    pub endpoint: Endpoint,
    /// w[k][m + ⌈k/2⌉] = W_{k,m}, for −⌈k/2⌉ ≤ m ≤ m_hi.
    pub w: Vec<Vec<ComplexMat2>>,
    /// u[k][m − 1] = U_{k,m}, 1 ≤ m ≤ ⌈k/2⌉.
    pub u: Vec<Vec<ComplexMat2>>,
    /// q[k][n] = Q_{k,n}, 0 ≤ n ≤ n_max.
    pub q: Vec<Vec<ComplexMat2>>,
    pub series: SeriesData,
}

impl EndpointTable {
    /// W_{k,m}.
    pub fn w(&self, k: usize, m: i64) -> ComplexMat2 {
        let idx = m + ceil_half(k) as i64;
        if idx < 0 {
            return ComplexMat2::zero();
        }
        self.w[k][idx as usize]
    }
    /// U_{k,m}, zero outside 1 ≤ m ≤ ⌈k/2⌉.
    pub fn u(&self, k: usize, m: usize) -> ComplexMat2 {
        if k == 0 || m == 0 || m > self.u[k].len() {
            return ComplexMat2::zero();
        }
        self.u[k][m - 1]
    }
    pub fn q(&self, k: usize, n: usize) -> ComplexMat2 {
        self.q[k][n]
    }
}

/// Precomputed correction data for T terms.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoeffTable {
    pub t: usize,
    pub n_max: usize,
    pub alpha: f64,
    pub beta: f64,
    pub dinf: f64,
    pub right: EndpointTable,
    pub left: EndpointTable,
}

impl CoeffTable {
    /// Number of c_n, d_n values needed for `t` terms and `n_max` Taylor terms.
    pub fn required_coefficients(t: usize, n_max: usize) -> usize {
        n_max + t + 3
    }

    /// Build W, U and Q for k ≤ t with Q_{k,n} for n ≤ n_max.
    pub fn new(aux: &AuxData, t: usize, n_max: usize) -> Result<Self> {
        let len = Self::required_coefficients(t, n_max);
        let m_hi = (n_max + ceil_half(t)) as i64;
        let mut w_r = vec![Vec::new()];
        let mut w_l = vec![Vec::new()];
        for k in 1..=t {
            w_r.push(w_coeffs(aux, k, Endpoint::Right, m_hi, len)?);
            w_l.push(w_coeffs(aux, k, Endpoint::Left, m_hi, len)?);
        }
        let mut right = EndpointTable {
            endpoint: Endpoint::Right,
            w: w_r,
            u: vec![Vec::new()],
            q: vec![Vec::new()],
            series: logphi_series(Endpoint::Right, t, len),
        };
        let mut left = EndpointTable {
            endpoint: Endpoint::Left,
            w: w_l,
            u: vec![Vec::new()],
            q: vec![Vec::new()],
            series: logphi_series(Endpoint::Left, t, len),
        };
        for k in 1..=t {
            let ur = u_from_w(&right, &left, k);
            let ul = u_from_w(&left, &right, k);
            right.u.push(ur);
            left.u.push(ul);
        }
        for k in 1..=t {
            let qr = (0..=n_max).map(|n| q_from_u_w(&right, &left, k, n)).collect();
            let ql = (0..=n_max).map(|n| q_from_u_w(&left, &right, k, n)).collect();
            right.q.push(qr);
            left.q.push(ql);
        }
        Ok(CoeffTable { t, n_max, alpha: aux.alpha, beta: aux.beta, dinf: aux.dinf, right, left })
    }

    pub fn side(&self, e: Endpoint) -> &EndpointTable {
        match e {
            Endpoint::Right => &self.right,
            Endpoint::Left => &self.left,
        }
    }

    /// Serialize as JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("coefficient table is serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// W_{k,m} for −⌈k/2⌉ ≤ m ≤ m_hi, conjugated by D_∞^{σ3}.
pub fn w_coeffs(
    aux: &AuxData,
    k: usize,
    endpoint: Endpoint,
    m_hi: i64,
    len: usize,
) -> Result<Vec<ComplexMat2>> {
    let s = endpoint.sigma();
    let q = match endpoint {
        Endpoint::Right => aux.alpha,
        Endpoint::Left => aux.beta,
    };
    let gh = g_matrices(aux, k, endpoint, len)?;
    let series = logphi_series(endpoint, k, len);
    let gk = &series.g[k];
    let (shift, pref) = if k % 2 == 1 {
        let sh = k.div_ceil(2);
        (sh, bracket(q, k - 1) * 2f64.powi(-(k as i32)) * (2.0 * s).powi(-(sh as i32)))
    } else {
        let sh = k / 2;
        (sh, bracket(q, k - 1) * 2f64.powi(-(k as i32)) * (2.0 * s).powi(-(sh as i32)))
    };
    let lo = -(ceil_half(k) as i64);
    let mut out = Vec::new();
    for m in lo..=m_hi {
        let idx = (m + shift as i64) as usize;
        if idx >= len {
            return Err(Error::InsufficientCoefficients { needed: idx + 1, available: len });
        }
        let mut acc = ComplexMat2::zero();
        for j in 0..=idx {
            acc += gh[idx - j] * r(gk[j]);
        }
        if k % 2 == 0 {
            let shift_id = (4.0 * q * q + 2.0 * k as f64 - 1.0) / (2.0 * k as f64) * gk[idx];
            acc -= ComplexMat2::scalar(r(shift_id));
        }
        out.push((acc * pref).conj_sigma3(aux.dinf));
    }
    Ok(out)
}

/// Σ_i binom(−i, n)(2σ)^{−i−n} U^{opp}_{k,i}: Taylor coefficient of the
/// opposite endpoint's poles at this endpoint.
fn opp_taylor(same: &EndpointTable, opp: &EndpointTable, k: usize, n: usize) -> ComplexMat2 {
    let s2 = 2.0 * same.endpoint.sigma();
    let mut acc = ComplexMat2::zero();
    for i in 1..=ceil_half(k) {
        acc += opp.u(k, i) * (binom_neg(i, n) * s2.powi(-((i + n) as i32)));
    }
    acc
}

/// U_{k,m} for 1 ≤ m ≤ ⌈k/2⌉ from W and lower-order U of both endpoints.
pub fn u_from_w(same: &EndpointTable, opp: &EndpointTable, k: usize) -> Vec<ComplexMat2> {
    let mut out = Vec::new();
    for m in 1..=ceil_half(k) {
        let mut acc = same.w(k, -(m as i64));
        for j in 1..k {
            let lo = (m as i64 - ceil_half(j) as i64).max(1) as usize;
            for l in lo..=ceil_half(k - j) {
                acc += same.u(k - j, l) * same.w(j, l as i64 - m as i64);
            }
            if ceil_half(j) >= m {
                for n in 0..=(ceil_half(j) - m) {
                    acc += opp_taylor(same, opp, k - j, n) * same.w(j, -(n as i64) - m as i64);
                }
            }
        }
        out.push(acc);
    }
    out
}

/// Q_{k,n}: Taylor coefficient of R_k inside the disk of `same`.
pub fn q_from_u_w(same: &EndpointTable, opp: &EndpointTable, k: usize, n: usize) -> ComplexMat2 {
    let mut acc = opp_taylor(same, opp, k, n) - same.w(k, n as i64);
    for j in 1..k {
        for l in 1..=ceil_half(k - j) {
            acc -= same.u(k - j, l) * same.w(j, (n + l) as i64);
        }
        for np in 0..=(n + ceil_half(j)) {
            acc -= opp_taylor(same, opp, k - j, np) * same.w(j, n as i64 - np as i64);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket(0.7, 0), 1.0);
        for m in 1..6 {
            assert_eq!(bracket(0.5, m), 0.0);
        }
        assert!((bracket(0.0, 1) + 0.25).abs() < 1e-16);
        assert_eq!(bracket(2.5, 3), 0.0);
        assert!(bracket(2.5, 2) != 0.0);
    }

    #[test]
    fn series_heads() {
        for e in [Endpoint::Right, Endpoint::Left] {
            let s = logphi_series(e, 3, 6);
            assert_eq!(s.f[0], 1.0);
            assert_eq!(s.g[1][0], 1.0);
        }
    }

    #[test]
    fn binom_neg_values() {
        assert_eq!(binom_neg(1, 3), -1.0);
        assert_eq!(binom_neg(2, 2), 3.0);
        assert_eq!(binom_neg(3, 0), 1.0);
    }
}
