//! Branch-cut primitives: φ(z), θ(z), arccos with boundary-side selection,
//! and the algebraic powers of z²−1 and 1−z².
//!
//! All square roots are products of principal roots, e.g.
//! (z²−1)^{1/2} = √(z−1)·√(z+1), which has its only cut on [−1,1] and
//! behaves like z at infinity.

use crate::error::{Error, Result};
use crate::jet::{c, r, Jet, C64, I};
use std::f64::consts::PI;

/// A point in the complex plane.
pub type CPoint = C64;

/// Which boundary value to take for a point lying exactly on a branch cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Side {
    /// Limit from Im z > 0.
    Above,
    /// Limit from Im z < 0.
    Below,
    /// Whatever the principal-branch formula returns on the cut.
    #[default]
    Principal,
}

/// Reject non-finite input and normalise a negative zero imaginary part.
pub fn check_point(z: CPoint) -> Result<CPoint> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::DomainError(format!("non-finite point {z}")));
    }
    Ok(normalize(z))
}

#[inline]
fn normalize(z: C64) -> C64 {
    if z.im == 0.0 {
        c(z.re, 0.0)
    } else {
        z
    }
}

/// Evaluate a real-symmetric function honouring `side` on the real axis.
///
/// `f` must satisfy f(z̄) = conj f(z) off its cuts and return the upper
/// boundary value for real input.
#[inline]
fn sided(z: C64, side: Side, f: impl Fn(C64) -> C64) -> C64 {
    let z = normalize(z);
    if z.im == 0.0 && side == Side::Below {
        f(z).conj()
    } else {
        f(z)
    }
}

/// (z²−1)^{1/2}, analytic off [−1,1], ~z at infinity.
#[inline]
pub fn sq(z: C64) -> C64 {
    let z = normalize(z);
    (z - 1.0).sqrt() * (z + 1.0).sqrt()
}

/// (z²−1)^{1/2} with explicit side on the cut.
pub fn sq_side(z: C64, side: Side) -> C64 {
    sided(z, side, sq)
}

/// φ(z) = z + (z²−1)^{1/2}.
#[inline]
pub fn phi(z: CPoint) -> CPoint {
    z + sq(z)
}

pub fn phi_side(z: CPoint, side: Side) -> CPoint {
    z + sq_side(z, side)
}

/// +1 when arg(z−1) > 0, −1 otherwise (so θ(1) = −1).
pub fn theta(z: CPoint) -> i32 {
    let w = normalize(z) - 1.0;
    let arg = if w.re == 0.0 && w.im == 0.0 { 0.0 } else { w.im.atan2(w.re) };
    if arg > 0.0 {
        1
    } else {
        -1
    }
}

/// Principal arccos with cuts (−∞,−1] ∪ [1,∞); `side` picks the one-sided
/// limit on the cuts.
pub fn acos_cut(z: CPoint, side: Side) -> CPoint {
    let z = normalize(z);
    if z.im == 0.0 && z.re.abs() > 1.0 && side != Side::Principal {
        let x = z.re;
        let ach = (x.abs() + (x * x - 1.0).sqrt()).ln();
        let s = if side == Side::Above { -1.0 } else { 1.0 };
        return if x > 0.0 { c(0.0, s * ach) } else { c(PI, s * ach) };
    }
    acos_principal(z)
}

/// Principal arccos via acos z = −i·log(z + i(1−z²)^{1/2}).
pub fn acos_principal(z: C64) -> C64 {
    let z = normalize(z);
    let s = (r(1.0) - z).sqrt() * (r(1.0) + z).sqrt();
    let w = z + I * s;
    let v = -I * w.ln();
    // Re acos ∈ [0, π]; guard the tiny negative real parts produced by
    // cancellation near z = 1.
    if v.re < 0.0 && v.re > -1e-300 {
        c(0.0, v.im)
    } else {
        v
    }
}

/// acos as a jet: value from [`acos_principal`], derivative −1/(1−z²)^{1/2}.
pub fn acos_jet(z: Jet) -> Jet {
    let s = one_minus_sq(z.v);
    z.chain(acos_principal(z.v), -s.inv())
}

/// (1−z²)^{1/2} = √(1−z)·√(1+z), positive on (−1,1).
#[inline]
pub fn one_minus_sq(z: C64) -> C64 {
    let z = normalize(z);
    (r(1.0) - z).sqrt() * (r(1.0) + z).sqrt()
}

/// Algebraic powers of z²−1 and 1−z² on the branches used throughout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgPowers {
    /// (z²−1)^{1/2}
    pub sq_plus: C64,
    /// (1−z²)^{1/2}
    pub sq_minus: C64,
    /// (z²−1)^{1/4}
    pub q4_plus: C64,
    /// (1−z²)^{1/4}
    pub q4_minus: C64,
}

pub fn alg_powers(z: CPoint, side: Side) -> AlgPowers {
    let q4p = |z: C64| (z - 1.0).powf(0.25) * (z + 1.0).powf(0.25);
    let q4m = |z: C64| (r(1.0) - z).powf(0.25) * (r(1.0) + z).powf(0.25);
    AlgPowers {
        sq_plus: sided(z, side, sq),
        sq_minus: sided(z, side, one_minus_sq),
        q4_plus: sided(z, side, q4p),
        q4_minus: sided(z, side, q4m),
    }
}

/// Bernstein-ellipse parameter of a point: ρ(z) = |φ(z)|.
pub fn bernstein_rho(z: CPoint) -> f64 {
    phi(z).norm()
}
