//! Bessel functions of the first kind for real order ν > −1 and complex
//! argument.
//!
//! The disk evaluators work with the even entire function
//! Ĵ_ν(w) = J_ν(w)/(w/2)^ν, scaled by e^{−|Im w|} so that large arguments
//! slightly off the real axis do not overflow. Three methods are used:
//! the power series for small |w|, the Hankel expansion for large |w|, and
//! Miller's backward recurrence normalized by the Gegenbauer sum otherwise.

use crate::error::{Error, Result};
use crate::jet::{c, r, C64, I};
use std::f64::consts::PI;

const SERIES_RADIUS: f64 = 2.0;

/// Ĵ_{ν+j}(w)·e^{−|Im w|} for j < count, together with |Im w|.
pub fn jhat_scaled(nu: f64, w: C64, count: usize) -> Result<(Vec<C64>, f64)> {
    if !(nu > -1.0) || !nu.is_finite() {
        return Err(Error::InvalidParameter(format!("Bessel order {nu} must exceed -1")));
    }
    if !(w.re.is_finite() && w.im.is_finite()) {
        return Err(Error::DomainError("non-finite Bessel argument".into()));
    }
    let count = count.max(1);
    let sc = w.im.abs();
    let aw = w.norm();
    let vals = if aw <= SERIES_RADIUS {
        let damp = (-sc).exp();
        (0..count)
            .map(|j| jhat_series(nu + j as f64, w * w) * damp)
            .collect()
    } else if aw >= 25.0 + (nu + count as f64).powi(2) {
        (0..count).map(|j| jhat_hankel(nu + j as f64, w)).collect()
    } else {
        jhat_miller(nu, w, count)
    };
    Ok((vals, sc))
}

/// Σ_k (−x/4)^k / (k! Γ(ν+k+1)) with x = w².
pub fn jhat_series(nu: f64, x: C64) -> C64 {
    let g = libm::tgamma(nu + 1.0);
    let mut term = r(1.0 / g);
    let mut sum = term;
    let q = -x / 4.0;
    for k in 1..200 {
        term = term * q / (k as f64 * (nu + k as f64));
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    sum
}

/// Hankel expansion of Ĵ_ν(w)·e^{−|Im w|}, for Re w > 0 and large |w|.
fn jhat_hankel(nu: f64, w: C64) -> C64 {
    let mu = 4.0 * nu * nu;
    let mut p = r(1.0);
    let mut q = r(0.0);
    let mut term = r(1.0);
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        term = term * (mu - odd * odd) / (k as f64 * 8.0) / w;
        let t = term.norm();
        if t > last {
            break;
        }
        last = t;
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if t < 1e-17 {
            break;
        }
    }
    // e^{±iχ}, χ = w − (ν/2+¼)π; the shift is applied as a rotation so the
    // large argument is reduced only once, inside exp
    let rot = c(0.0, -(nu * 0.5 + 0.25) * PI).exp();
    let sc = w.im.abs();
    let ep = (I * w - sc).exp() * rot;
    let em = (-I * w - sc).exp() * rot.conj();
    let cos = (ep + em) * 0.5;
    let sin = (ep - em) / (2.0 * I);
    let j = (r(2.0) / (w * PI)).sqrt() * (p * cos - q * sin);
    j / (w * 0.5).powf(nu)
}

/// Miller's algorithm; returns Ĵ_{ν+j}(w)·e^{−|Im w|}, j < count.
fn jhat_miller(nu: f64, w: C64, count: usize) -> Vec<C64> {
    let aw = w.norm();
    let n = (aw + 8.0 * aw.cbrt() + 25.0).ceil() as usize + count;
    // sign s with |e^{isw}| = e^{|Im w|}
    let s = if w.im >= 0.0 { -1.0 } else { 1.0 };
    let is = c(0.0, s);
    // b_k = 2 (2ν+1)_{k−1} (ν+k)/k!, b_0 = 1
    let mut p = vec![0.0; n + 1];
    if n >= 1 {
        p[1] = 1.0;
    }
    for k in 1..n {
        p[k + 1] = p[k] * (2.0 * nu + k as f64) / (k + 1) as f64;
    }
    let mut ipow = vec![r(1.0); n + 1];
    for k in 1..=n {
        ipow[k] = ipow[k - 1] * is;
    }
    // Neumann weights (w/2)^ν = Σ_j c_j J_{ν+2j}: c_0 = Γ(ν+1),
    // c_j = (ν+2j)Γ(ν+j)/j!
    let g0 = libm::tgamma(nu + 1.0);
    let mut cn = vec![0.0; n / 2 + 1];
    cn[0] = g0;
    let mut gj = g0;
    for j in 1..cn.len() {
        if j > 1 {
            gj *= (nu + (j - 1) as f64) / j as f64;
        }
        cn[j] = (nu + 2.0 * j as f64) * gj;
    }
    let mut stored = vec![r(0.0); count];
    let mut hi = r(0.0);
    let mut cur = r(1e-30);
    let mut sum = r(0.0);
    let mut nsum = r(0.0);
    for k in (0..=n).rev() {
        // cur = J̃_{ν+k}
        let b = if k == 0 { 1.0 } else { 2.0 * p[k] * (nu + k as f64) };
        sum += cur * ipow[k] * b;
        if k % 2 == 0 {
            nsum += cur * cn[k / 2];
        }
        if k < count {
            stored[k] = cur;
        }
        if k == 0 {
            break;
        }
        let mu = nu + k as f64;
        let next = cur * (2.0 * mu) / w - hi;
        hi = cur;
        cur = next;
        let big = cur.norm().max(hi.norm());
        if big > 1e200 {
            let f = 1e-200;
            cur *= f;
            hi *= f;
            sum *= f;
            nsum *= f;
            for v in stored.iter_mut() {
                *v *= f;
            }
        }
    }
    let half = w * 0.5;
    if w.im.abs() <= 1.0 {
        // The Neumann sum only cancels by e^{|Im w|}, against (2|w|)^ν for
        // the exponential-phase sum.
        let norm = nsum.norm();
        let nsum = nsum / norm;
        let damp = (-w.im.abs()).exp();
        let mut out = Vec::with_capacity(count);
        let mut hp = r(1.0);
        for v in stored {
            out.push((v / norm) / (nsum * hp) * damp);
            hp *= half;
        }
        return out;
    }
    // keep magnitudes near one so complex division stays in range
    let norm = sum.norm();
    let sum = sum / norm;
    let g = libm::tgamma(nu + 1.0);
    let phase = c(0.0, s * w.re).exp();
    let mut out = Vec::with_capacity(count);
    let mut hp = r(1.0);
    for v in stored {
        out.push(phase * (v / norm) / (sum * g * hp));
        hp *= half;
    }
    out
}

fn check_real(nu: f64, x: f64) -> Result<()> {
    if !(nu > -1.0) {
        return Err(Error::DomainError(format!("order {nu} must exceed -1")));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::DomainError(format!("argument {x} must be finite and non-negative")));
    }
    Ok(())
}

/// J_ν(x) for ν > −1, x ≥ 0.
pub fn besselj(nu: f64, x: f64) -> Result<f64> {
    check_real(nu, x)?;
    Ok(besselj_complex(nu, r(x))?.re)
}

/// J_ν′(x) for ν > −1, x > 0.
pub fn besselj_prime(nu: f64, x: f64) -> Result<f64> {
    check_real(nu, x)?;
    if x == 0.0 {
        return Err(Error::DomainError("J' is evaluated at x > 0 only".into()));
    }
    Ok(besselj_prime_complex(nu, r(x))?.re)
}

/// J_ν(w) for Re w ≥ 0 (principal branch of (w/2)^ν).
pub fn besselj_complex(nu: f64, w: C64) -> Result<C64> {
    if w.norm() == 0.0 {
        return Ok(if nu == 0.0 { r(1.0) } else { r(0.0) });
    }
    let (v, sc) = jhat_scaled(nu, w, 1)?;
    Ok(v[0] * sc.exp() * (w * 0.5).powf(nu))
}

/// J_ν′(w) = (ν/w) J_ν(w) − J_{ν+1}(w).
pub fn besselj_prime_complex(nu: f64, w: C64) -> Result<C64> {
    let (v, sc) = jhat_scaled(nu, w, 2)?;
    let h = w * 0.5;
    let e = sc.exp() * h.powf(nu);
    Ok((v[0] * nu / w - v[1] * h) * e)
}

/// k-th positive zero of J_ν (k ≥ 1), from McMahon's expansion refined by Newton.
pub fn besselj_zero(nu: f64, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidParameter("zero index starts at 1".into()));
    }
    let mu = 4.0 * nu * nu;
    let b = (k as f64 + nu / 2.0 - 0.25) * PI;
    let e = 8.0 * b;
    let mut x = b - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e.powi(3));
    if k == 1 && nu > 1.0 {
        // McMahon is poor for the first zero of larger orders.
        x = x.max(nu + 1.8557 * nu.cbrt());
    }
    let x0 = x.max(0.5);
    x = x0;
    for _ in 0..60 {
        let j = besselj_complex(nu, r(x))?.re;
        let jp = besselj_prime_complex(nu, r(x))?.re;
        let step = j / jp;
        x -= step;
        if !(x > 0.0) {
            x = x0 * 0.5;
        }
        if step.abs() <= 4e-16 * x {
            break;
        }
    }
    Ok(x)
}
