//! Evaluation of the monic and orthonormal polynomials, their derivatives,
//! the leading coefficients γ_n and the recurrence coefficients α_n, β_n.
//!
//! All values are produced as a mantissa times e^{log_scale}; the factors
//! 2^{±n}, |φ|^n and the Bessel growth e^{|Im w|} stay in the log scale
//! until the very end so that large degrees do not overflow.

use crate::bessel::jhat_scaled;
use crate::branches::{acos_jet, acos_principal, check_point};
use crate::coeffs::{bracket, CoeffTable};
use crate::contours::{sq_jet, AuxData, ContourParams, Endpoint};
use crate::error::{Error, Result};
use crate::jet::{c, r, ComplexMat2, Jet, MatJet, C64, I};
use crate::weights::WeightSpec;
use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_2, PI};

/// Expansion used at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    Lens,
    Outer,
    RightDisk,
    LeftDisk,
    /// Right disk with R taken from its Taylor series at z = 1.
    RightSeries,
    /// Left disk with R taken from its Taylor series at z = −1.
    LeftSeries,
}

impl Region {
    pub fn name(self) -> &'static str {
        match self {
            Region::Lens => "lens",
            Region::Outer => "outer",
            Region::RightDisk => "rightdisk",
            Region::LeftDisk => "leftdisk",
            Region::RightSeries => "rightseries",
            Region::LeftSeries => "leftseries",
        }
    }

    pub fn parse(s: &str) -> Result<Option<Region>> {
        Ok(Some(match s.to_ascii_lowercase().as_str() {
            "auto" => return Ok(None),
            "lens" => Region::Lens,
            "outer" => Region::Outer,
            "rightdisk" | "right" => Region::RightDisk,
            "leftdisk" | "left" => Region::LeftDisk,
            "rightseries" => Region::RightSeries,
            "leftseries" => Region::LeftSeries,
            other => return Err(Error::Parse(format!("unknown region '{other}'"))),
        }))
    }

    fn endpoint(self) -> Option<Endpoint> {
        match self {
            Region::RightDisk | Region::RightSeries => Some(Endpoint::Right),
            Region::LeftDisk | Region::LeftSeries => Some(Endpoint::Left),
            _ => None,
        }
    }
}

/// Result of one evaluation. `value = mantissa · e^{log_scale}`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: C64,
    pub mantissa: C64,
    pub log_scale: f64,
    pub region: Region,
    pub terms_used: usize,
    /// Size of the last included correction ‖R_T‖/n^T.
    pub next_term_estimate: f64,
}

impl EvalResult {
    fn new(mantissa: C64, log_scale: f64, region: Region, terms: usize, est: f64) -> Self {
        let value = if mantissa == r(0.0) { mantissa } else { mantissa * log_scale.exp() };
        EvalResult { value, mantissa, log_scale, region, terms_used: terms, next_term_estimate: est }
    }
}

/// Engine construction options.
#[derive(Debug, Clone)]
pub struct EngineOptions {
    /// Number of correction terms T.
    pub terms: usize,
    pub disk_radius: f64,
    /// Inside this distance of ±1, R comes from the Q series.
    pub series_radius: f64,
    /// Half-height of the lens region.
    pub lens_height: f64,
    pub contour: ContourParams,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            terms: 4,
            disk_radius: 0.2,
            series_radius: 0.02,
            lens_height: 0.6,
            contour: ContourParams::default(),
        }
    }
}

/// Precomputed data for one weight.
#[derive(Debug, Clone)]
pub struct Engine {
    pub spec: WeightSpec,
    pub aux: AuxData,
    pub table: CoeffTable,
    pub opts: EngineOptions,
}

/// Evaluation with its z-derivative, before scaling.
struct Raw {
    f: Jet,
    log_scale: f64,
    est: f64,
}

impl Engine {
    pub fn new(spec: WeightSpec, terms: usize) -> Result<Self> {
        Engine::with_options(spec, EngineOptions { terms, ..EngineOptions::default() })
    }

    pub fn with_options(spec: WeightSpec, opts: EngineOptions) -> Result<Self> {
        if !(opts.disk_radius > 0.0 && opts.disk_radius < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "disk radius {} must lie in (0, 1)",
                opts.disk_radius
            )));
        }
        if !(opts.series_radius >= 0.0 && opts.series_radius < opts.disk_radius) {
            return Err(Error::InvalidParameter("series radius must be below the disk radius".into()));
        }
        let n_max = opts.terms + 10;
        let n_coef = CoeffTable::required_coefficients(opts.terms, n_max);
        let aux = AuxData::new(&spec, n_coef, &opts.contour)?;
        let table = CoeffTable::new(&aux, opts.terms, n_max)?;
        Ok(Engine { spec, aux, table, opts })
    }

    pub fn terms(&self) -> usize {
        self.opts.terms
    }

    fn q(&self, e: Endpoint) -> f64 {
        match e {
            Endpoint::Right => self.aux.alpha,
            Endpoint::Left => self.aux.beta,
        }
    }

    /// Region chosen automatically for z. Ties go disk, then lens, then outer.
    pub fn select_region(&self, z: C64) -> Region {
        let dr = (z - 1.0).norm();
        let dl = (z + 1.0).norm();
        if dr < self.opts.disk_radius && dr <= dl {
            if dr <= self.opts.series_radius {
                Region::RightSeries
            } else {
                Region::RightDisk
            }
        } else if dl < self.opts.disk_radius {
            if dl <= self.opts.series_radius {
                Region::LeftSeries
            } else {
                Region::LeftDisk
            }
        } else if z.re.abs() < 1.0 && z.im.abs() <= self.opts.lens_height {
            Region::Lens
        } else {
            Region::Outer
        }
    }

    // ---------------------------------------------------------------- R

    /// R^O_k(z) for k = 0..=k_max (R^O_0 = I).
    fn r_outer_jets(&self, z: Jet, k_max: usize) -> Vec<MatJet> {
        let mut out = vec![MatJet::identity()];
        let vr = z - 1.0;
        let vl = z + 1.0;
        for k in 1..=k_max {
            let mut acc = MatJet::zero();
            for m in 1..=self.table.right.u[k].len() {
                acc += MatJet::from_scaled(self.table.right.u(k, m), vr.powi(-(m as i32)));
                acc += MatJet::from_scaled(self.table.left.u(k, m), vl.powi(-(m as i32)));
            }
            out.push(acc);
        }
        out
    }

    /// R_k at z inside the disk around endpoint e, k = 0..=k_max.
    fn r_disk_jets(&self, z: Jet, e: Endpoint, k_max: usize, series: bool) -> Result<Vec<MatJet>> {
        let v = z - e.sigma();
        if series {
            let side = self.table.side(e);
            let mut out = vec![MatJet::identity()];
            for k in 1..=k_max {
                let mut acc = MatJet::zero();
                let mut p = Jet::one();
                for n in 0..=self.table.n_max {
                    acc += MatJet::from_scaled(side.q(k, n), p);
                    p = p * v;
                }
                out.push(acc);
            }
            return Ok(out);
        }
        let ro = self.r_outer_jets(z, k_max);
        let s = self.s_jets(z, e, k_max)?;
        let mut out = vec![MatJet::identity()];
        for k in 1..=k_max {
            let mut acc = ro[k];
            for m in 1..=k {
                acc -= ro[k - m] * s[m];
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Δ_k(z) for k = 1..=k_max by direct evaluation (index 0 unused).
    fn delta_jets(&self, z: Jet, e: Endpoint, k_max: usize) -> Result<Vec<MatJet>> {
        let sg = e.sigma();
        let q = self.q(e);
        let s = sq_jet(z);
        let phi = z + s;
        let l = (phi * sg).ln();
        let m = self.aux.m_jet(&self.spec, z)?;
        let big_e = (l * (self.aux.alpha + self.aux.beta) + s * m).exp();
        let big_ei = big_e.inv();
        let zs = z / s;
        let p2 = zs * 2.0 + 2.0;
        let m2 = zs * 2.0 - 2.0;
        let pm = s.inv() * (-2.0);
        let d2 = self.aux.dinf * self.aux.dinf;
        let mut out = vec![MatJet::zero()];
        for k in 1..=k_max {
            let kf = k as f64;
            let a = (q * q + kf / 2.0 - 0.25) / kf;
            let sgn = if k % 2 == 0 { 1.0 } else { -1.0 };
            let x1 = r(sgn * a);
            let x4 = r(a);
            let (x2, x3) = match e {
                Endpoint::Right => (c(0.0, -(kf - 0.5)), c(0.0, sgn * (kf - 0.5))),
                Endpoint::Left => (c(0.0, kf - 0.5), c(0.0, -sgn * (kf - 0.5))),
            };
            let x3e = big_ei * x3;
            let x2e = big_e * x2;
            let ipm = pm * I;
            let e11 = (p2 * x1 - ipm * (x3e + x2e) - m2 * x4) * 0.25;
            let e12 = (ipm * x1 + m2 * x3e + p2 * x2e - ipm * x4) * 0.25;
            let e21 = (ipm * x1 + p2 * x3e + m2 * x2e - ipm * x4) * 0.25;
            let e22 = (m2 * (-x1) + ipm * (x3e + x2e) + p2 * x4) * 0.25;
            let pref = (l * 2.0).powi(-(k as i32)) * bracket(q, k - 1);
            let mat = MatJet::from_entries(e11, e12 * d2, e21 * (1.0 / d2), e22);
            out.push(mat.scale(pref));
        }
        Ok(out)
    }

    /// s_m = Δ_m, minus a multiple of I for even m.
    fn s_jets(&self, z: Jet, e: Endpoint, k_max: usize) -> Result<Vec<MatJet>> {
        let mut d = self.delta_jets(z, e, k_max)?;
        let q = self.q(e);
        let l = (z + sq_jet(z)) * e.sigma();
        let l = l.ln();
        for (m, dm) in d.iter_mut().enumerate().skip(2).step_by(2) {
            let mf = m as f64;
            let coef = (4.0 * q * q + 2.0 * mf - 1.0) * bracket(q, m - 1) / (2f64.powi(m as i32 + 1) * mf);
            let sh = l.powi(-(m as i32)) * coef;
            *dm -= MatJet::from_scaled(ComplexMat2::identity(), sh);
        }
        Ok(d)
    }

    /// Δ_k(z) by direct evaluation, conjugated by D_∞^{σ3}.
    pub fn delta_direct(&self, z: C64, e: Endpoint, k: usize) -> Result<ComplexMat2> {
        Ok(self.delta_jets(Jet::cst(z), e, k)?[k].v)
    }

    /// s_k(z) from Δ_k and the even-order shift.
    pub fn s_direct(&self, z: C64, e: Endpoint, k: usize) -> Result<ComplexMat2> {
        Ok(self.s_jets(Jet::cst(z), e, k)?[k].v)
    }

    /// R^O_1..R^O_{k_max} at z outside both disks.
    pub fn r_outer(&self, z: C64, k_max: usize) -> Result<Vec<ComplexMat2>> {
        let z = check_point(z)?;
        if (z - 1.0).norm() < self.opts.disk_radius || (z + 1.0).norm() < self.opts.disk_radius {
            return Err(Error::InsideDisk);
        }
        let k_max = k_max.min(self.terms());
        Ok(self.r_outer_jets(Jet::cst(z), k_max)[1..].iter().map(|m| m.v).collect())
    }

    /// R_1..R_{k_max} inside the disk around e.
    pub fn r_disk(&self, z: C64, e: Endpoint, k_max: usize) -> Result<Vec<ComplexMat2>> {
        let z = check_point(z)?;
        let dist = (z - e.sigma()).norm();
        if dist >= self.opts.disk_radius {
            return Err(Error::OutsideDisk);
        }
        let k_max = k_max.min(self.terms());
        let series = dist <= self.opts.series_radius;
        Ok(self.r_disk_jets(Jet::cst(z), e, k_max, series)?[1..].iter().map(|m| m.v).collect())
    }

    /// Same as [`Engine::r_disk`] with the path chosen explicitly.
    pub fn r_disk_path(&self, z: C64, e: Endpoint, k_max: usize, series: bool) -> Result<Vec<ComplexMat2>> {
        let z = check_point(z)?;
        Ok(self.r_disk_jets(Jet::cst(z), e, k_max.min(self.terms()), series)?[1..]
            .iter()
            .map(|m| m.v)
            .collect())
    }

    /// Largest residual of R^O_k − R_k − Σ_j R_{k−j}Δ_j, k ≤ k_max, on `points`
    /// equispaced points of the ring |z − e| = radius around each endpoint.
    ///
    /// R_k is built from the simplified s_m recursion, Δ_j directly, so a small
    /// residual ties the two together.
    pub fn crosscheck_jump(&self, k_max: usize, radius: f64, points: usize) -> Result<f64> {
        let k_max = k_max.min(self.terms());
        let mut worst: f64 = 0.0;
        for e in [Endpoint::Right, Endpoint::Left] {
            for i in 0..points {
                let th = 2.0 * PI * (i as f64 + 0.5) / points as f64;
                let z = r(e.sigma()) + c(th.cos(), th.sin()) * radius;
                let zj = Jet::cst(z);
                let ro = self.r_outer_jets(zj, k_max);
                let rd = self.r_disk_jets(zj, e, k_max, false)?;
                let dl = self.delta_jets(zj, e, k_max)?;
                for k in 1..=k_max {
                    let mut acc = ro[k].v - rd[k].v;
                    for j in 1..=k {
                        acc -= rd[k - j].v * dl[j].v;
                    }
                    worst = worst.max(acc.max_abs());
                }
            }
        }
        Ok(worst)
    }

    fn sum_r(terms: &[MatJet], n: usize) -> (MatJet, f64) {
        let nf = n as f64;
        let mut acc = MatJet::identity();
        let mut last = 0.0;
        for (k, rk) in terms.iter().enumerate().skip(1) {
            let w = nf.powi(-(k as i32));
            acc += MatJet { v: rk.v * w, d: rk.d * w };
            last = rk.v.max_abs() * w;
        }
        (acc, last)
    }

    // ---------------------------------------------------------- regions

    /// exp(−(α/2+¼)log(1−z) − (β/2+¼)log(1+z) + extra).
    fn endpoint_factor(&self, z: Jet) -> Jet {
        let a = self.aux.alpha / 2.0 + 0.25;
        let b = self.aux.beta / 2.0 + 0.25;
        ((-z + 1.0).ln() * (-a) - (z + 1.0).ln() * b).exp()
    }

    fn lens(&self, n: usize, z: Jet, terms: usize) -> Result<Raw> {
        let nf = n as f64;
        let t = acos_jet(z);
        let psi = self.aux.psi_jet(&self.spec, z)?;
        let l1 = t * (nf + 0.5) + psi - PI / 4.0;
        let l2 = t * (nf - 0.5) + psi - PI / 4.0;
        let sc = l1.v.im.abs().max(l2.v.im.abs());
        let c1 = cos_scaled(l1, sc);
        let c2 = cos_scaled(l2, sc);
        let pref = self.endpoint_factor(z) * (self.spec.logh_jet(z)? * (-0.5)).exp();
        let (rm, est) = Engine::sum_r(&self.r_outer_jets(z, terms), n);
        let d = self.aux.dinf;
        let f = pref * (rm.entry(0, 0) * c1 * d + rm.entry(0, 1) * c2 * c(0.0, -1.0 / d));
        Ok(Raw { f, log_scale: (0.5 - nf) * LN_2 + sc, est })
    }

    fn outer(&self, n: usize, z: Jet, terms: usize) -> Result<Raw> {
        let nf = n as f64;
        let s = sq_jet(z);
        let phi = z + s;
        let mut lv = phi.v.ln();
        if z.v.im == 0.0 && z.v.re < -1.0 {
            // upper-side value on the cut, matching the principal powers below
            lv = c(lv.re, PI);
        }
        let l = Jet::new(lv, s.v.inv() * z.d);
        let shift = l.v.re;
        let x = self.aux.outer_exponent(&self.spec, z)?;
        let a = self.aux.alpha / 2.0 + 0.25;
        let b = self.aux.beta / 2.0 + 0.25;
        let alg = ((z - 1.0).ln() * (-a) - (z + 1.0).ln() * b).exp();
        let base = alg * (l * ((self.aux.alpha + self.aux.beta) / 2.0) + x + (l - shift) * nf).exp();
        let half = (l * 0.5).exp();
        let halfi = half.inv();
        let (rm, est) = Engine::sum_r(&self.r_outer_jets(z, terms), n);
        let d = self.aux.dinf;
        let f = base * (rm.entry(0, 0) * half * d + rm.entry(0, 1) * halfi * c(0.0, -1.0 / d));
        Ok(Raw { f, log_scale: (-0.5 - nf) * LN_2 + nf * shift, est })
    }

    fn disk(&self, n: usize, z: Jet, e: Endpoint, series: bool, terms: usize) -> Result<Raw> {
        let nf = n as f64;
        let sg = e.sigma();
        let (nu, nu_o) = match e {
            Endpoint::Right => (self.aux.alpha, self.aux.beta),
            Endpoint::Left => (self.aux.beta, self.aux.alpha),
        };
        let w = z * sg;
        let te = acos_principal(w.v);
        let tau = Jet::new(te * te, r(-2.0 * sg) / sinc(te) * z.d);
        let m = self.aux.m_jet(&self.spec, z)?;
        let st = sinc_tau(tau);
        let ab = self.aux.alpha + self.aux.beta;
        let (vals, sc) = jhat_scaled(nu, te * nf, 3)?;
        let n2 = nf * nf;
        let j0 = Jet::new(vals[0], -vals[1] / 4.0 * n2 * tau.d);
        let j1 = Jet::new(vals[1], -vals[2] / 4.0 * n2 * tau.d);
        let bterm = |gamma: f64| {
            let u = m * st * (sg * 0.5) + gamma;
            let x = tau * u * u;
            let cos_eta = cos_tau(x);
            let sin_eta_t = u * sinc_tau(x);
            cos_eta * j0 + sin_eta_t * (j0 * (nu / nf) - j1 * tau * (nf / 2.0))
        };
        let b1 = bterm((ab + 1.0) / 2.0);
        let b2 = bterm((ab - 1.0) / 2.0);
        let ratio = acos_sq_ratio(-w + 1.0);
        let k = ratio.powf((nu + 0.5) / 2.0)
            * ((w + 1.0).ln() * (-(nu_o / 2.0 + 0.25))).exp()
            * (self.spec.logh_jet(z)? * (-0.5)).exp();
        let (rm, est) = Engine::sum_r(&self.r_disk_jets(z, e, terms, series)?, n);
        let d = self.aux.dinf;
        let mut f = k * (rm.entry(0, 0) * b1 * d + rm.entry(0, 1) * b2 * c(0.0, -sg / d));
        if sg < 0.0 && n % 2 == 1 {
            f = -f;
        }
        let log_scale = 0.5 * PI.ln() + (nu + 0.5) * nf.ln() - (nu + nf) * LN_2 + sc;
        Ok(Raw { f, log_scale, est })
    }

    fn raw(&self, n: usize, z: C64, region: Option<Region>, terms: usize) -> Result<(Raw, Region)> {
        if n == 0 {
            return Err(Error::InvalidDegree(n));
        }
        let z = check_point(z)?;
        let terms = terms.min(self.terms());
        let region = region.unwrap_or_else(|| self.select_region(z));
        let zj = Jet::var(z);
        let raw = match region {
            Region::Lens => self.lens(n, zj, terms)?,
            Region::Outer => self.outer(n, zj, terms)?,
            Region::RightDisk | Region::LeftDisk | Region::RightSeries | Region::LeftSeries => {
                let e = region.endpoint().expect("disk region");
                let series = matches!(region, Region::RightSeries | Region::LeftSeries);
                self.disk(n, zj, e, series, terms)?
            }
        };
        Ok((raw, region))
    }

    /// Monic π_n(z).
    pub fn eval_monic(&self, n: usize, z: C64, region: Option<Region>) -> Result<EvalResult> {
        self.eval_monic_terms(n, z, region, self.terms())
    }

    /// Monic π_n(z) using only the first `terms` corrections.
    pub fn eval_monic_terms(&self, n: usize, z: C64, region: Option<Region>, terms: usize) -> Result<EvalResult> {
        let (raw, reg) = self.raw(n, z, region, terms)?;
        Ok(EvalResult::new(raw.f.v, raw.log_scale, reg, terms.min(self.terms()), raw.est))
    }

    /// Orthonormal p_n(z) = γ_n π_n(z).
    pub fn eval_orthonormal(&self, n: usize, z: C64, region: Option<Region>) -> Result<EvalResult> {
        let (raw, reg) = self.raw(n, z, region, self.terms())?;
        let lg = self.log_gamma_n(n)?;
        Ok(EvalResult::new(raw.f.v, raw.log_scale + lg, reg, self.terms(), raw.est))
    }

    /// π_n′(z).
    pub fn eval_derivative(&self, n: usize, z: C64, region: Option<Region>) -> Result<EvalResult> {
        let (raw, reg) = self.raw(n, z, region, self.terms())?;
        Ok(EvalResult::new(raw.f.d, raw.log_scale, reg, self.terms(), raw.est))
    }

    /// (π_n(z), π_n′(z)) from one evaluation.
    pub fn eval_monic_jet(&self, n: usize, z: C64, region: Option<Region>) -> Result<(EvalResult, EvalResult)> {
        let (raw, reg) = self.raw(n, z, region, self.terms())?;
        let t = self.terms();
        Ok((
            EvalResult::new(raw.f.v, raw.log_scale, reg, t, raw.est),
            EvalResult::new(raw.f.d, raw.log_scale, reg, t, raw.est),
        ))
    }

    /// (p_n(z), p_n′(z)) for the orthonormal polynomial, sharing one evaluation.
    pub fn eval_orthonormal_jet(&self, n: usize, z: C64, region: Option<Region>) -> Result<(EvalResult, EvalResult)> {
        let (raw, reg) = self.raw(n, z, region, self.terms())?;
        let lg = self.log_gamma_n(n)?;
        let t = self.terms();
        Ok((
            EvalResult::new(raw.f.v, raw.log_scale + lg, reg, t, raw.est),
            EvalResult::new(raw.f.d, raw.log_scale + lg, reg, t, raw.est),
        ))
    }

    // ------------------------------------------------- scalar sequences

    fn u1_sum(&self) -> Vec<ComplexMat2> {
        (0..=self.terms())
            .map(|k| {
                if k == 0 {
                    ComplexMat2::zero()
                } else {
                    self.table.right.u(k, 1) + self.table.left.u(k, 1)
                }
            })
            .collect()
    }

    /// ln γ_n.
    pub fn log_gamma_n(&self, n: usize) -> Result<f64> {
        let d2 = self.aux.dinf * self.aux.dinf;
        let u = self.u1_sum();
        let np1 = (n + 1) as f64;
        let mut corr = r(1.0);
        for (k, uk) in u.iter().enumerate().skip(1) {
            corr += I * 2.0 * d2 * uk.a21 / np1.powi(k as i32);
        }
        if !(corr.re > 0.0) {
            return Err(Error::NegativeSquare(n));
        }
        Ok(n as f64 * LN_2 - 0.5 * PI.ln() - self.aux.dinf.ln() + 0.5 * corr.re.ln())
    }

    /// Leading coefficient γ_n of the orthonormal polynomial.
    pub fn gamma_n(&self, n: usize) -> Result<f64> {
        Ok(self.log_gamma_n(n)?.exp())
    }

    /// Recurrence coefficients (α_n, β_n) of the monic polynomials.
    pub fn recurrence_coeffs(&self, n: usize) -> Result<(f64, f64)> {
        if n == 0 {
            return Err(Error::InvalidDegree(n));
        }
        let d2 = self.aux.dinf * self.aux.dinf;
        let u = self.u1_sum();
        let nf = n as f64;
        let np1 = nf + 1.0;
        let mut a = r(0.0);
        let mut b1 = r(1.0) / (I * 2.0 * d2);
        let mut b2 = r(-d2) / (I * 2.0);
        for (k, uk) in u.iter().enumerate().skip(1) {
            let ki = k as i32;
            a -= uk.a11 / np1.powi(ki) + uk.a22 / nf.powi(ki);
            b1 += uk.a21 / nf.powi(ki);
            b2 += uk.a12 / nf.powi(ki);
        }
        Ok((a.re, (b1 * b2).re))
    }
}

/// cos(x)·e^{−s}, computed without forming cos(x).
fn cos_scaled(x: Jet, s: f64) -> Jet {
    let ep = (I * x.v - s).exp();
    let em = (-I * x.v - s).exp();
    let v = (ep + em) * 0.5;
    let dv = (ep - em) * (I * 0.5);
    Jet::new(v, dv * x.d)
}

/// sin(t)/t.
fn sinc(t: C64) -> C64 {
    if t.norm() < 1e-4 {
        let t2 = t * t;
        r(1.0) - t2 / 6.0 + t2 * t2 / 120.0
    } else {
        t.sin() / t
    }
}

/// sin(√x)/√x as a function of x (entire, even in √x).
fn sinc_tau(x: Jet) -> Jet {
    if x.v.norm() < 1e-3 {
        let y = x.v;
        let v = r(1.0) - y / 6.0 + y * y / 120.0 - y * y * y / 5040.0 + y * y * y * y / 362880.0;
        let d = r(-1.0 / 6.0) + y / 60.0 - y * y / 1680.0 + y * y * y / 90720.0;
        return Jet::new(v, d * x.d);
    }
    let s = x.v.sqrt();
    let v = s.sin() / s;
    let d = (s.cos() - v) / (x.v * 2.0);
    Jet::new(v, d * x.d)
}

/// cos(√x) as a function of x.
fn cos_tau(x: Jet) -> Jet {
    let s = x.v.sqrt();
    let st = sinc_tau(Jet::cst(x.v)).v;
    Jet::new(s.cos(), -st / 2.0 * x.d)
}

/// arccos(1−e)²/e, analytic at e = 0 where it equals 2.
fn acos_sq_ratio(e: Jet) -> Jet {
    if e.v.norm() < 0.5 {
        // arccos(1−e)² = Σ_{k≥1} 2(2e)^k / (k² C(2k,k))
        let mut v = r(0.0);
        let mut d = r(0.0);
        let mut cb = 1.0; // C(2k, k)
        let mut pw = r(1.0); // e^{k−1}
        let mut pwd = r(0.0); // (k−1) e^{k−2}
        let mut two = 1.0;
        for k in 1..80 {
            let kf = k as f64;
            cb *= (2.0 * kf - 1.0) * (2.0 * kf) / (kf * kf);
            two *= 2.0;
            let coef = 2.0 * two / (kf * kf * cb);
            v += pw * coef;
            d += pwd * coef;
            pwd = pw * kf;
            pw *= e.v;
            if (pw.norm() + pwd.norm()) * coef < 1e-18 {
                break;
            }
        }
        return Jet::new(v, d * e.d);
    }
    let w = -e + 1.0;
    let t = acos_principal(w.v);
    let v = t * t / e.v;
    // d/de [t²/e] with dt/de = 1/sin t
    let dt = t.sin().inv();
    let d = (t * 2.0 * dt - v) / e.v;
    Jet::new(v, d * e.d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_series_matches_direct() {
        for &e in &[c(0.3, 0.1), c(0.45, -0.2), c(1e-3, 0.0)] {
            let s = acos_sq_ratio(Jet::var(e));
            let t = acos_principal(r(1.0) - e);
            assert!((s.v - t * t / e).norm() < 1e-14);
            let h = 1e-6;
            let f = |x: C64| {
                let t = acos_principal(r(1.0) - x);
                t * t / x
            };
            let fd = (f(e + h) - f(e - h)) / (2.0 * h);
            assert!((s.d - fd).norm() < 1e-7, "{} {}", s.d, fd);
        }
    }

    #[test]
    fn sinc_tau_branches_agree() {
        for &x in &[c(9.9e-4, 0.0), c(0.0, 9.9e-4)] {
            let a = sinc_tau(Jet::var(x));
            let s = x.sqrt();
            assert!((a.v - s.sin() / s).norm() < 1e-15);
            let b = sinc_tau(Jet::var(x * 1.02));
            assert!((b.v - a.v).norm() < 1e-4);
        }
    }
}
