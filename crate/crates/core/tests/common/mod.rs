//! Closed-form reference values shared by the integration tests.
#![allow(dead_code)]

use num_complex::Complex64 as C;

pub mod closed_forms;

pub fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / b.norm()
}

/// Textbook Jacobi recurrence coefficients (α_k, β_k) of the monic family.
pub fn jacobi_ab(a: f64, b: f64, k: usize) -> (f64, f64) {
    let kf = k as f64;
    let s = 2.0 * kf + a + b;
    let al = if k == 0 { (b - a) / (a + b + 2.0) } else { (b * b - a * a) / (s * (s + 2.0)) };
    let be = match k {
        0 => 0.0,
        1 => 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b).powi(2) * (3.0 + a + b)),
        _ => 4.0 * kf * (kf + a) * (kf + b) * (kf + a + b) / (s * s * (s + 1.0) * (s - 1.0)),
    };
    (al, be)
}

/// Monic Jacobi polynomial by the three-term recurrence.
pub fn jacobi_monic(a: f64, b: f64, n: usize, z: C) -> C {
    let mut p0 = C::new(1.0, 0.0);
    if n == 0 {
        return p0;
    }
    let mut p1 = z - jacobi_ab(a, b, 0).0;
    for k in 1..n {
        let (al, be) = jacobi_ab(a, b, k);
        let p2 = (z - al) * p1 - p0 * be;
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// Monic Jacobi derivative: π_n′ = n·π^{(α+1,β+1)}_{n−1}.
pub fn jacobi_monic_derivative(a: f64, b: f64, n: usize, z: C) -> C {
    jacobi_monic(a + 1.0, b + 1.0, n - 1, z) * n as f64
}

/// Monic Chebyshev T_n/2^{n−1} at real x = cos θ, with θ passed in for accuracy.
pub fn chebyshev_monic_theta(n: usize, th: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    (n as f64 * th).cos() / 2f64.powi(n as i32 - 1)
}

/// Legendre norm ∫P_n² = 2/(2n+1) and leading coefficient (2n)!/(2^n n!²),
/// combined into ln γ_n of the orthonormal family.
pub fn legendre_log_gamma(n: usize) -> f64 {
    let nf = n as f64;
    let mut lead = 0.0;
    for k in 1..=n {
        // (2n)!/(2^n n!²) = Π (2k−1)/k
        lead += ((2 * k - 1) as f64 / k as f64).ln();
    }
    lead + 0.5 * ((2.0 * nf + 1.0) / 2.0).ln()
}
