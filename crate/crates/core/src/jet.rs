//! Complex dual numbers and 2x2 complex matrices.
//!
//! A [`Jet`] carries a value together with its derivative with respect to
//! the evaluation point, so every regional formula yields the polynomial and
//! its derivative in a single pass.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

pub type C64 = Complex64;

pub const I: C64 = C64::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn r(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Value and first derivative of an analytic function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub v: C64,
    pub d: C64,
}

impl Jet {
    #[inline]
    pub fn new(v: C64, d: C64) -> Self {
        Jet { v, d }
    }
    #[inline]
    pub fn cst(v: C64) -> Self {
        Jet { v, d: C64::new(0.0, 0.0) }
    }
    #[inline]
    pub fn real(v: f64) -> Self {
        Jet::cst(r(v))
    }
    /// The independent variable itself.
    #[inline]
    pub fn var(z: C64) -> Self {
        Jet { v: z, d: r(1.0) }
    }
    #[inline]
    pub fn zero() -> Self {
        Jet::real(0.0)
    }
    #[inline]
    pub fn one() -> Self {
        Jet::real(1.0)
    }
    /// Apply f with f(v) = fv and f'(v) = dfv.
    #[inline]
    pub fn chain(self, fv: C64, dfv: C64) -> Self {
        Jet { v: fv, d: dfv * self.d }
    }
    pub fn exp(self) -> Self {
        let e = self.v.exp();
        self.chain(e, e)
    }
    pub fn ln(self) -> Self {
        self.chain(self.v.ln(), self.v.inv())
    }
    pub fn sqrt(self) -> Self {
        let s = self.v.sqrt();
        self.chain(s, 0.5 / s)
    }
    /// Principal power self^p.
    pub fn powf(self, p: f64) -> Self {
        if p == 0.0 {
            return Jet::one();
        }
        let val = self.v.powf(p);
        self.chain(val, p * val / self.v)
    }
    pub fn powi(self, k: i32) -> Self {
        let val = self.v.powi(k);
        let dv = if k == 0 { r(0.0) } else { k as f64 * self.v.powi(k - 1) };
        self.chain(val, dv)
    }
    pub fn cos(self) -> Self {
        self.chain(self.v.cos(), -self.v.sin())
    }
    pub fn sin(self) -> Self {
        self.chain(self.v.sin(), self.v.cos())
    }
    pub fn inv(self) -> Self {
        let iv = self.v.inv();
        self.chain(iv, -iv * iv)
    }
    pub fn scale(self, s: C64) -> Self {
        Jet { v: self.v * s, d: self.d * s }
    }
}

impl Add for Jet {
    type Output = Jet;
    #[inline]
    fn add(self, o: Jet) -> Jet {
        Jet { v: self.v + o.v, d: self.d + o.d }
    }
}
impl Sub for Jet {
    type Output = Jet;
    #[inline]
    fn sub(self, o: Jet) -> Jet {
        Jet { v: self.v - o.v, d: self.d - o.d }
    }
}
impl Mul for Jet {
    type Output = Jet;
    #[inline]
    fn mul(self, o: Jet) -> Jet {
        Jet { v: self.v * o.v, d: self.d * o.v + self.v * o.d }
    }
}
impl Div for Jet {
    type Output = Jet;
    #[inline]
    fn div(self, o: Jet) -> Jet {
        let q = self.v / o.v;
        Jet { v: q, d: (self.d - q * o.d) / o.v }
    }
}
impl Neg for Jet {
    type Output = Jet;
    #[inline]
    fn neg(self) -> Jet {
        Jet { v: -self.v, d: -self.d }
    }
}
impl Add<C64> for Jet {
    type Output = Jet;
    #[inline]
    fn add(self, o: C64) -> Jet {
        Jet { v: self.v + o, d: self.d }
    }
}
impl Sub<C64> for Jet {
    type Output = Jet;
    #[inline]
    fn sub(self, o: C64) -> Jet {
        Jet { v: self.v - o, d: self.d }
    }
}
impl Mul<C64> for Jet {
    type Output = Jet;
    #[inline]
    fn mul(self, o: C64) -> Jet {
        self.scale(o)
    }
}
impl Add<f64> for Jet {
    type Output = Jet;
    #[inline]
    fn add(self, o: f64) -> Jet {
        Jet { v: self.v + o, d: self.d }
    }
}
impl Sub<f64> for Jet {
    type Output = Jet;
    #[inline]
    fn sub(self, o: f64) -> Jet {
        Jet { v: self.v - o, d: self.d }
    }
}
impl Mul<f64> for Jet {
    type Output = Jet;
    #[inline]
    fn mul(self, o: f64) -> Jet {
        Jet { v: self.v * o, d: self.d * o }
    }
}
impl Div<f64> for Jet {
    type Output = Jet;
    #[inline]
    fn div(self, o: f64) -> Jet {
        Jet { v: self.v / o, d: self.d / o }
    }
}
impl AddAssign for Jet {
    fn add_assign(&mut self, o: Jet) {
        *self = *self + o;
    }
}
impl SubAssign for Jet {
    fn sub_assign(&mut self, o: Jet) {
        *self = *self - o;
    }
}

/// 2x2 complex matrix in row-major order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexMat2 {
    pub a11: C64,
    pub a12: C64,
    pub a21: C64,
    pub a22: C64,
}

impl ComplexMat2 {
    pub const fn new(a11: C64, a12: C64, a21: C64, a22: C64) -> Self {
        ComplexMat2 { a11, a12, a21, a22 }
    }
    pub fn zero() -> Self {
        let z = r(0.0);
        ComplexMat2::new(z, z, z, z)
    }
    pub fn identity() -> Self {
        ComplexMat2::new(r(1.0), r(0.0), r(0.0), r(1.0))
    }
    pub fn scalar(s: C64) -> Self {
        ComplexMat2::new(s, r(0.0), r(0.0), s)
    }
    pub fn scale(&self, s: C64) -> Self {
        ComplexMat2::new(self.a11 * s, self.a12 * s, self.a21 * s, self.a22 * s)
    }
    /// d^{σ3} X d^{-σ3}.
    pub fn conj_sigma3(&self, d: f64) -> Self {
        let d2 = d * d;
        ComplexMat2::new(self.a11, self.a12 * d2, self.a21 / d2, self.a22)
    }
    pub fn max_abs(&self) -> f64 {
        self.a11
            .norm()
            .max(self.a12.norm())
            .max(self.a21.norm())
            .max(self.a22.norm())
    }
    /// Largest entrywise absolute difference.
    pub fn max_abs_diff(&self, o: &ComplexMat2) -> f64 {
        (*self - *o).max_abs()
    }
    pub fn det(&self) -> C64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }
    pub fn inverse(&self) -> Self {
        let d = self.det();
        ComplexMat2::new(self.a22 / d, -self.a12 / d, -self.a21 / d, self.a11 / d)
    }
    pub fn is_finite(&self) -> bool {
        [self.a11, self.a12, self.a21, self.a22]
            .iter()
            .all(|x| x.re.is_finite() && x.im.is_finite())
    }
}

impl Add for ComplexMat2 {
    type Output = ComplexMat2;
    fn add(self, o: Self) -> Self {
        ComplexMat2::new(self.a11 + o.a11, self.a12 + o.a12, self.a21 + o.a21, self.a22 + o.a22)
    }
}
impl Sub for ComplexMat2 {
    type Output = ComplexMat2;
    fn sub(self, o: Self) -> Self {
        ComplexMat2::new(self.a11 - o.a11, self.a12 - o.a12, self.a21 - o.a21, self.a22 - o.a22)
    }
}
impl Mul for ComplexMat2 {
    type Output = ComplexMat2;
    fn mul(self, o: Self) -> Self {
        ComplexMat2::new(
            self.a11 * o.a11 + self.a12 * o.a21,
            self.a11 * o.a12 + self.a12 * o.a22,
            self.a21 * o.a11 + self.a22 * o.a21,
            self.a21 * o.a12 + self.a22 * o.a22,
        )
    }
}
impl Mul<C64> for ComplexMat2 {
    type Output = ComplexMat2;
    fn mul(self, s: C64) -> Self {
        self.scale(s)
    }
}
impl Mul<f64> for ComplexMat2 {
    type Output = ComplexMat2;
    fn mul(self, s: f64) -> Self {
        self.scale(r(s))
    }
}
impl Neg for ComplexMat2 {
    type Output = ComplexMat2;
    fn neg(self) -> Self {
        self.scale(r(-1.0))
    }
}
impl AddAssign for ComplexMat2 {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}
impl SubAssign for ComplexMat2 {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

/// Matrix-valued jet: value and derivative of a 2x2 matrix function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatJet {
    pub v: ComplexMat2,
    pub d: ComplexMat2,
}

impl MatJet {
    pub fn cst(v: ComplexMat2) -> Self {
        MatJet { v, d: ComplexMat2::zero() }
    }
    pub fn zero() -> Self {
        MatJet::cst(ComplexMat2::zero())
    }
    pub fn identity() -> Self {
        MatJet::cst(ComplexMat2::identity())
    }
    /// Constant matrix times a scalar jet.
    pub fn from_scaled(m: ComplexMat2, s: Jet) -> Self {
        MatJet { v: m.scale(s.v), d: m.scale(s.d) }
    }
    pub fn scale(&self, s: Jet) -> Self {
        MatJet { v: self.v.scale(s.v), d: self.d.scale(s.v) + self.v.scale(s.d) }
    }
    pub fn entry(&self, i: usize, j: usize) -> Jet {
        let pick = |m: &ComplexMat2| match (i, j) {
            (0, 0) => m.a11,
            (0, 1) => m.a12,
            (1, 0) => m.a21,
            _ => m.a22,
        };
        Jet::new(pick(&self.v), pick(&self.d))
    }
    pub fn from_entries(e11: Jet, e12: Jet, e21: Jet, e22: Jet) -> Self {
        MatJet {
            v: ComplexMat2::new(e11.v, e12.v, e21.v, e22.v),
            d: ComplexMat2::new(e11.d, e12.d, e21.d, e22.d),
        }
    }
}

impl Add for MatJet {
    type Output = MatJet;
    fn add(self, o: Self) -> Self {
        MatJet { v: self.v + o.v, d: self.d + o.d }
    }
}
impl Sub for MatJet {
    type Output = MatJet;
    fn sub(self, o: Self) -> Self {
        MatJet { v: self.v - o.v, d: self.d - o.d }
    }
}
impl Mul for MatJet {
    type Output = MatJet;
    fn mul(self, o: Self) -> Self {
        MatJet { v: self.v * o.v, d: self.d * o.v + self.v * o.d }
    }
}
impl AddAssign for MatJet {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}
impl SubAssign for MatJet {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jet_quotient_rule() {
        let z = Jet::var(c(0.3, 0.2));
        let f = (z * z + 1.0) / z.exp();
        let h = 1e-6;
        let g = |x: C64| (x * x + 1.0) / x.exp();
        let fd = (g(z.v + h) - g(z.v - h)) / (2.0 * h);
        assert!((f.d - fd).norm() < 1e-8);
    }

    #[test]
    fn mat_inverse() {
        let m = ComplexMat2::new(c(1.0, 2.0), c(0.5, 0.0), c(-0.3, 1.0), c(2.0, -1.0));
        let p = m * m.inverse();
        assert!(p.max_abs_diff(&ComplexMat2::identity()) < 1e-14);
    }

    #[test]
    fn sigma3_conjugation_matches_product() {
        let m = ComplexMat2::new(c(1.0, 2.0), c(0.5, 0.0), c(-0.3, 1.0), c(2.0, -1.0));
        let d = 1.7;
        let ds = ComplexMat2::new(r(d), r(0.0), r(0.0), r(1.0 / d));
        let direct = ds * m * ds.inverse();
        assert!(direct.max_abs_diff(&m.conj_sigma3(d)) < 1e-14);
    }
}
