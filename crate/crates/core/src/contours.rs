//! Auxiliary scalar data of the weight: D_∞, the Taylor coefficients c_n, d_n
//! of m(z) at ±1, and the phase function ψ(z).
//!
//! m(z) = (1/2πi)∮ log h(ζ)/((ζ²−1)^{1/2}(ζ−z)) dζ is evaluated exactly when
//! log h is a polynomial (residue at infinity) and by the trapezoidal rule on
//! a Bernstein ellipse E_ρ otherwise.

use crate::branches::{acos_jet, bernstein_rho, one_minus_sq, sq, CPoint};
use crate::error::{Error, Result};
use crate::jet::{c, r, Jet, C64, I};
use crate::weights::WeightSpec;
use std::f64::consts::PI;

/// Trapezoidal-rule settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourParams {
    /// Ellipse parameter ρ > 1 (None: the weight's default).
    pub rho: Option<f64>,
    /// Starting number of points.
    pub m0: usize,
    /// Relative stopping tolerance between successive doublings.
    pub tol: f64,
    /// Largest number of points tried.
    pub m_max: usize,
}

impl Default for ContourParams {
    fn default() -> Self {
        ContourParams { rho: None, m0: 16, tol: 1e-13, m_max: 1 << 14 }
    }
}

/// Point of E_ρ at angle θ and the derivative dζ/dθ.
#[inline]
pub fn ellipse_point(rho: f64, th: f64) -> (C64, C64) {
    let e = c(th.cos(), th.sin());
    let ei = e.conj();
    let zeta = (e * rho + ei / rho) * 0.5;
    let dz = (e * rho - ei / rho) * (I * 0.5);
    (zeta, dz)
}

/// (1/2πi)∮_{E_ρ} F(ζ) dζ by the M-point trapezoidal rule.
pub fn trapezoid_ellipse<F>(f: F, rho: f64, m: usize) -> Result<C64>
where
    F: Fn(C64) -> Result<C64>,
{
    if m < 4 {
        return Err(Error::InvalidParameter("trapezoidal rule needs M >= 4".into()));
    }
    let mut acc = r(0.0);
    for k in 0..m {
        let th = 2.0 * PI * k as f64 / m as f64;
        let (zeta, dz) = ellipse_point(rho, th);
        acc += f(zeta)? * dz;
    }
    Ok(acc / (I * m as f64))
}

#[derive(Debug, Clone)]
enum MKind {
    /// m(z) is the polynomial Σ coef_k z^k.
    Polynomial { coef: Vec<f64> },
    /// Quadrature data on E_ρ: nodes ζ_k and weights log h(ζ_k)/(ζ_k²−1)^{1/2}·ζ'(θ_k)/(iM).
    Contour(ContourNodes),
    /// Only the endpoint coefficients are known.
    SeriesOnly,
}

#[derive(Debug, Clone)]
struct ContourNodes {
    rho: f64,
    nodes: Vec<C64>,
    wts: Vec<C64>,
}

impl ContourNodes {
    fn build(spec: &WeightSpec, rho: f64, m: usize) -> Result<Self> {
        let mut nodes = Vec::with_capacity(m);
        let mut wts = Vec::with_capacity(m);
        for k in 0..m {
            let th = 2.0 * PI * (k as f64 + 0.5) / m as f64;
            let (zeta, dz) = ellipse_point(rho, th);
            let lh = spec.eval_logh(zeta)?;
            nodes.push(zeta);
            wts.push(lh / sq(zeta) * dz / (I * m as f64));
        }
        Ok(ContourNodes { rho, nodes, wts })
    }

    /// Cauchy integral (1/2πi)∮ log h/((ζ²−1)^{1/2}(ζ−z)) dζ and its z-derivative.
    fn cauchy(&self, z: C64) -> Jet {
        let mut v = r(0.0);
        let mut d = r(0.0);
        for (zeta, w) in self.nodes.iter().zip(&self.wts) {
            let q = (zeta - z).inv();
            v += w * q;
            d += w * q * q;
        }
        Jet::new(v, d)
    }
}

/// Auxiliary data shared by all evaluators of one weight.
#[derive(Debug, Clone)]
pub struct AuxData {
    pub alpha: f64,
    pub beta: f64,
    /// D_∞ > 0.
    pub dinf: f64,
    /// Taylor coefficients of m at z = 1.
    pub cn: Vec<C64>,
    /// Taylor coefficients of m at z = −1.
    pub dn: Vec<C64>,
    /// Ellipse parameter used (∞ when computed by residues).
    pub rho_used: f64,
    /// Trapezoid points used (0 when computed by residues).
    pub m_used: usize,
    rho_max: f64,
    m_max: usize,
    kind: MKind,
}

/// C(2j, j)/4^j, the coefficients of (1−x²)^{−1/2}.
fn central_binom_over_4(j: usize) -> f64 {
    let mut a = 1.0;
    for i in 1..=j {
        a *= (2 * i - 1) as f64 / (2 * i) as f64;
    }
    a
}

/// Taylor coefficients of a real polynomial at x0.
fn taylor_shift(coef: &[f64], x0: f64, n: usize) -> Vec<C64> {
    let mut p = coef.to_vec();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        // synthetic division: p(x) = q(x)(x − x0) + p(x0)
        let deg = p.len();
        if deg == 0 {
            out.push(r(0.0));
            continue;
        }
        let mut q = vec![0.0; deg.saturating_sub(1)];
        let mut acc = 0.0;
        for k in (0..deg).rev() {
            acc = acc * x0 + p[k];
            if k > 0 {
                q[k - 1] = acc;
            }
        }
        out.push(r(acc));
        p = q;
    }
    out
}

impl AuxData {
    /// Compute D_∞ and the first `n_coef` coefficients c_n, d_n.
    pub fn new(spec: &WeightSpec, n_coef: usize, params: &ContourParams) -> Result<Self> {
        let ab = spec.alpha + spec.beta;
        if let Some(p) = spec.logh_polynomial() {
            // Residue at infinity.
            let deg = p.len();
            let mut coef = vec![0.0; deg.max(1)];
            for (k, &pk) in p.iter().enumerate() {
                if pk == 0.0 || k == 0 {
                    continue;
                }
                let mut j = 0;
                while 2 * j < k {
                    coef[k - 1 - 2 * j] += pk * central_binom_over_4(j);
                    j += 1;
                }
            }
            let integral: f64 = p
                .iter()
                .enumerate()
                .filter(|(k, _)| k % 2 == 0)
                .map(|(k, pk)| pk * central_binom_over_4(k / 2))
                .sum();
            let dinf = 2f64.powf(-ab / 2.0) * (integral / 2.0).exp();
            return Ok(AuxData {
                alpha: spec.alpha,
                beta: spec.beta,
                dinf,
                cn: taylor_shift(&coef, 1.0, n_coef),
                dn: taylor_shift(&coef, -1.0, n_coef),
                rho_used: f64::INFINITY,
                m_used: 0,
                rho_max: f64::INFINITY,
                m_max: params.m_max,
                kind: MKind::Polynomial { coef },
            });
        }
        let rho_max = spec.rho_max();
        let rho = match params.rho {
            Some(rho) => {
                if !(rho > 1.0 && rho < rho_max) {
                    return Err(Error::InvalidParameter(format!(
                        "contour rho = {rho} must lie in (1, {rho_max})"
                    )));
                }
                spec.check_re_positive(rho)?;
                rho
            }
            // fall back to √ρ_max when Re h changes sign on the larger ellipse
            None => {
                let rho = spec.default_rho();
                if rho.is_finite() && rho < rho_max && spec.check_re_positive(rho).is_ok() {
                    rho
                } else {
                    let rho = rho_max.sqrt();
                    spec.check_re_positive(rho)?;
                    rho
                }
            }
        };
        let moments = |m: usize| -> Result<Moments> {
            let nodes = ContourNodes::build(spec, rho, m)?;
            let mut cn = vec![r(0.0); n_coef];
            let mut dn = vec![r(0.0); n_coef];
            let mut integral = r(0.0);
            // Σ|terms| per entry: the rounding floor of each sum
            let mut floor = vec![0.0; 2 * n_coef + 1];
            for (zeta, w) in nodes.nodes.iter().zip(&nodes.wts) {
                integral += w;
                floor[2 * n_coef] += w.norm();
                let qa = (zeta - 1.0).inv();
                let qb = (zeta + 1.0).inv();
                let (mut pa, mut pb) = (qa, qb);
                for n in 0..n_coef {
                    cn[n] += w * pa;
                    dn[n] += w * pb;
                    floor[n] += (w * pa).norm();
                    floor[n_coef + n] += (w * pb).norm();
                    pa *= qa;
                    pb *= qb;
                }
            }
            Ok(Moments { cn, dn, integral, floor, last_change: f64::NAN })
        };
        let mut m = params.m0.max(4);
        let mut prev = moments(m)?;
        loop {
            let m2 = 2 * m;
            if m2 > params.m_max {
                return Err(Error::NoConvergence { m_used: m, residual: prev.last_change });
            }
            let mut next = moments(m2)?;
            let (res, excess) = next.change_from(&prev);
            next.last_change = res;
            m = m2;
            prev = next;
            if excess <= params.tol {
                break;
            }
        }
        let Moments { cn, dn, integral, .. } = prev;
        let dinf = 2f64.powf(-ab / 2.0) * (integral.re / 2.0).exp();
        let nodes = ContourNodes::build(spec, rho, m)?;
        Ok(AuxData {
            alpha: spec.alpha,
            beta: spec.beta,
            dinf,
            cn,
            dn,
            rho_used: rho,
            m_used: m,
            rho_max,
            m_max: params.m_max,
            kind: MKind::Contour(nodes),
        })
    }

    /// Auxiliary data from given endpoint coefficients alone.
    ///
    /// Enough for coefficient tables; evaluating m(z) off the endpoints fails.
    pub fn from_coefficients(alpha: f64, beta: f64, dinf: f64, cn: Vec<C64>, dn: Vec<C64>) -> Self {
        AuxData {
            alpha,
            beta,
            dinf,
            cn,
            dn,
            rho_used: f64::INFINITY,
            m_used: 0,
            rho_max: f64::INFINITY,
            m_max: 0,
            kind: MKind::SeriesOnly,
        }
    }

    /// True when m(z) is an exact polynomial.
    pub fn is_exact(&self) -> bool {
        matches!(self.kind, MKind::Polynomial { .. })
    }

    /// m(z) for a contour enclosing both [−1,1] and z.
    pub fn m_jet(&self, spec: &WeightSpec, z: Jet) -> Result<Jet> {
        match &self.kind {
            MKind::Polynomial { coef } => Ok(poly_jet(coef, z)),
            MKind::SeriesOnly => Err(Error::DomainError("m(z) is not available".into())),
            MKind::Contour(nodes) => {
                let rz = bernstein_rho(z.v);
                if rz >= self.rho_max {
                    return Err(Error::OutsideAnalyticRegion { re: z.v.re, im: z.v.im });
                }
                let margin = 0.05;
                if (nodes.rho / rz).ln() >= margin {
                    let m = self.points_for(nodes.rho, rz).max(nodes.nodes.len());
                    let cj = if m == nodes.nodes.len() {
                        nodes.cauchy(z.v)
                    } else {
                        ContourNodes::build(spec, nodes.rho, m)?.cauchy(z.v)
                    };
                    return Ok(cj.chain_with(z));
                }
                // Grow the contour beyond z, staying inside the analytic region.
                let grown = (rz * self.rho_max).sqrt();
                if (grown / rz).ln() < margin || (self.rho_max / grown).ln() < margin {
                    let dist = nodes
                        .nodes
                        .iter()
                        .map(|zeta| (zeta - z.v).norm())
                        .fold(f64::INFINITY, f64::min);
                    return Err(Error::ContourTooClose { distance: dist });
                }
                let m = self.points_for(grown, rz);
                let alt = ContourNodes::build(spec, grown, m)?;
                Ok(alt.cauchy(z.v).chain_with(z))
            }
        }
    }

    /// ½(z²−1)^{1/2}·m̃(z), where m̃ uses a contour around [−1,1] but not z.
    ///
    /// Equal to ½(z²−1)^{1/2} m(z) − ½ log h(z) wherever both are defined.
    pub fn outer_exponent(&self, spec: &WeightSpec, z: Jet) -> Result<Jet> {
        let s = sq_jet(z);
        match &self.kind {
            MKind::Polynomial { coef } => {
                Ok(s * poly_jet(coef, z) * 0.5 - spec.logh_jet(z)? * 0.5)
            }
            MKind::SeriesOnly => Err(Error::DomainError("m(z) is not available".into())),
            MKind::Contour(nodes) => {
                let rz = bernstein_rho(z.v);
                let margin = 0.05;
                if (rz / nodes.rho).ln() >= margin {
                    let m = self.points_for(nodes.rho, rz).max(nodes.nodes.len());
                    let cj = if m == nodes.nodes.len() {
                        nodes.cauchy(z.v)
                    } else {
                        ContourNodes::build(spec, nodes.rho, m)?.cauchy(z.v)
                    };
                    return Ok(s * cj.chain_with(z) * 0.5);
                }
                let m = self.m_jet(spec, z)?;
                Ok(s * m * 0.5 - spec.logh_jet(z)? * 0.5)
            }
        }
    }

    fn points_for(&self, rho_c: f64, rz: f64) -> usize {
        let mut rate = rho_c.ln().min((rz / rho_c).ln().abs());
        if self.rho_max.is_finite() {
            rate = rate.min((self.rho_max / rho_c).ln());
        }
        let need = (37.0 / rate.max(1e-3)).ceil() as usize;
        need.next_power_of_two().clamp(16, self.m_max)
    }

    /// ψ(z) as a jet.
    pub fn psi_jet(&self, spec: &WeightSpec, z: Jet) -> Result<Jet> {
        let t = acos_jet(z);
        let m = self.m_jet(spec, z)?;
        let s = one_minus_sq_jet(z);
        Ok(t * ((self.alpha + self.beta) / 2.0) - self.alpha * PI / 2.0 + s * m * 0.5)
    }
}

trait ChainWith {
    fn chain_with(self, z: Jet) -> Jet;
}

impl ChainWith for Jet {
    /// Reinterpret a (value, d/dz) pair as a function of the jet variable.
    #[inline]
    fn chain_with(self, z: Jet) -> Jet {
        Jet::new(self.v, self.d * z.d)
    }
}

struct Moments {
    cn: Vec<C64>,
    dn: Vec<C64>,
    integral: C64,
    floor: Vec<f64>,
    last_change: f64,
}

impl Moments {
    /// (largest change relative to the largest entry, the same with each
    /// entry's rounding floor discounted).
    fn change_from(&self, prev: &Moments) -> (f64, f64) {
        let mut scale: f64 = 1.0;
        let mut d: f64 = 0.0;
        let mut ex: f64 = 0.0;
        let pairs = self
            .cn
            .iter()
            .zip(&prev.cn)
            .chain(self.dn.iter().zip(&prev.dn))
            .chain(std::iter::once((&self.integral, &prev.integral)));
        for ((x, y), fl) in pairs.zip(&self.floor) {
            let dd = (x - y).norm();
            d = d.max(dd);
            ex = ex.max(dd - 64.0 * f64::EPSILON * fl);
            scale = scale.max(x.norm());
        }
        (d / scale, ex.max(0.0) / scale)
    }
}

/// Σ coef_k z^k as a jet.
pub fn poly_jet(coef: &[f64], z: Jet) -> Jet {
    let mut acc = Jet::zero();
    for &ck in coef.iter().rev() {
        acc = acc * z + ck;
    }
    acc
}

/// (z²−1)^{1/2} as a jet; derivative z/(z²−1)^{1/2}.
pub fn sq_jet(z: Jet) -> Jet {
    let s = sq(z.v);
    z.chain(s, z.v / s)
}

/// (1−z²)^{1/2} as a jet; derivative −z/(1−z²)^{1/2}.
pub fn one_minus_sq_jet(z: Jet) -> Jet {
    let s = one_minus_sq(z.v);
    z.chain(s, -z.v / s)
}

/// ψ(z) = ((α+β)/2)·arccos z − απ/2 + ½(1−z²)^{1/2} m(z).
pub fn compute_psi(spec: &WeightSpec, z: CPoint, aux: &AuxData) -> Result<C64> {
    Ok(aux.psi_jet(spec, Jet::cst(z))?.v)
}

/// Endpoint at which a local expansion is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Endpoint {
    Right,
    Left,
}

impl Endpoint {
    /// +1 for the right endpoint, −1 for the left.
    #[inline]
    pub fn sigma(self) -> f64 {
        match self {
            Endpoint::Right => 1.0,
            Endpoint::Left => -1.0,
        }
    }
    pub fn other(self) -> Endpoint {
        match self {
            Endpoint::Right => Endpoint::Left,
            Endpoint::Left => Endpoint::Right,
        }
    }
}

/// ψ near an endpoint: ψ(z) = constant + (2(1∓z))^{1/2} Σ coeffs[n] v^n with v = z∓1.
#[derive(Debug, Clone, PartialEq)]
pub struct PsiSeries {
    pub endpoint: Endpoint,
    pub constant: f64,
    pub coeffs: Vec<C64>,
}

impl PsiSeries {
    pub fn eval(&self, z: C64) -> C64 {
        let s = self.endpoint.sigma();
        let v = z - s;
        let root = (r(2.0) * (r(1.0) - z * s)).sqrt();
        let mut acc = r(0.0);
        for cf in self.coeffs.iter().rev() {
            acc = acc * v + cf;
        }
        r(self.constant) + root * acc
    }
}

/// f_n of the expansion log(±φ(z)) = (±2v)^{1/2} Σ f_n v^n.
pub fn logphi_f(endpoint: Endpoint, n: usize) -> Vec<f64> {
    let s = endpoint.sigma();
    let mut out = Vec::with_capacity(n);
    // (1/2)_k / ((−2σ)^k k!)
    let mut ratio = 1.0;
    for k in 0..n {
        if k > 0 {
            ratio *= (k as f64 - 0.5) / (-2.0 * s * k as f64);
        }
        out.push(ratio / (2 * k + 1) as f64);
    }
    out
}

/// binom(1/2, j) (σ/2)^j for j < n.
pub fn half_binom_scaled(endpoint: Endpoint, n: usize) -> Vec<f64> {
    let s = endpoint.sigma();
    let mut out = Vec::with_capacity(n);
    let mut b = 1.0;
    for j in 0..n {
        if j > 0 {
            b *= (0.5 - (j - 1) as f64) / j as f64 * (s / 2.0);
        }
        out.push(b);
    }
    out
}

/// Taylor data of ψ at an endpoint, `order` coefficients.
pub fn psi_series_endpoint(aux: &AuxData, endpoint: Endpoint, order: usize) -> Result<PsiSeries> {
    let cd = match endpoint {
        Endpoint::Right => &aux.cn,
        Endpoint::Left => &aux.dn,
    };
    if order > cd.len() {
        return Err(Error::InsufficientCoefficients { needed: order, available: cd.len() });
    }
    let ab = aux.alpha + aux.beta;
    let f = logphi_f(endpoint, order);
    let hb = half_binom_scaled(endpoint, order);
    let s = endpoint.sigma();
    let mut coeffs = Vec::with_capacity(order);
    for n in 0..order {
        let mut conv = r(0.0);
        for j in 0..=n {
            conv += cd[n - j] * hb[j];
        }
        // ρ_{1,n,α+β} = (α+β) f_n + σ Σ_j binom(1/2,j)(σ/2)^j c̃_{n−j}
        let rho1 = r(ab * f[n]) + conv * s;
        coeffs.push(rho1 * (0.5 * s));
    }
    let constant = match endpoint {
        Endpoint::Right => -aux.alpha * PI / 2.0,
        Endpoint::Left => aux.beta * PI / 2.0,
    };
    Ok(PsiSeries { endpoint, constant, coeffs })
}
