//! Weight functions w(x) = (1−x)^α (1+x)^β h(x) on [−1,1].
//!
//! `h` is drawn from a closed grammar so that log h has an exact structural
//! analytic continuation; see [`HSpec`].

use crate::branches::{bernstein_rho, CPoint};
use crate::error::{Error, Result};
use crate::jet::{c, r, Jet, C64};
use std::fmt;
use std::sync::Arc;

/// Analytic log h supplied by the caller: returns log h and its derivative.
pub type LogHFn = Arc<dyn Fn(C64) -> (C64, C64) + Send + Sync>;

/// A factor |x − root|^exponent of a product weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFactor {
    pub root: C64,
    pub exponent: f64,
}

/// The analytic factor h(x) of the weight.
#[derive(Clone)]
pub enum HSpec {
    /// h ≡ 1.
    One,
    /// h(x) = exp(−c·x^{2m}).
    ExpEvenPower { c: f64, m: u32 },
    /// h(x) = exp(−t·x).
    ExpLinear { t: f64 },
    /// h(x) = scale · Π |x − r_i|^{p_i}; non-real roots come in conjugate
    /// pairs with equal exponents.
    LinearFactors { factors: Vec<LinearFactor>, scale: f64 },
    /// Caller-provided analytic log h, trusted inside E_{rho_max}.
    Generic { logh: LogHFn, rho_max: f64, even: bool, label: String },
}

impl fmt::Debug for HSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HSpec::One => write!(f, "One"),
            HSpec::ExpEvenPower { c, m } => write!(f, "ExpEvenPower {{ c: {c}, m: {m} }}"),
            HSpec::ExpLinear { t } => write!(f, "ExpLinear {{ t: {t} }}"),
            HSpec::LinearFactors { factors, scale } => {
                write!(f, "LinearFactors {{ factors: {factors:?}, scale: {scale} }}")
            }
            HSpec::Generic { rho_max, label, .. } => {
                write!(f, "Generic {{ label: {label:?}, rho_max: {rho_max} }}")
            }
        }
    }
}

/// The full weight specification.
#[derive(Debug, Clone)]
pub struct WeightSpec {
    pub alpha: f64,
    pub beta: f64,
    pub h: HSpec,
}

impl WeightSpec {
    pub fn new(alpha: f64, beta: f64, h: HSpec) -> Result<Self> {
        if !(alpha > -1.0 && alpha.is_finite()) {
            return Err(Error::InvalidParameter(format!("alpha = {alpha} must exceed -1")));
        }
        if !(beta > -1.0 && beta.is_finite()) {
            return Err(Error::InvalidParameter(format!("beta = {beta} must exceed -1")));
        }
        validate_h(&h)?;
        Ok(WeightSpec { alpha, beta, h })
    }

    /// Classical Jacobi weight (h ≡ 1).
    pub fn jacobi(alpha: f64, beta: f64) -> Result<Self> {
        WeightSpec::new(alpha, beta, HSpec::One)
    }

    /// w(x) = exp(−c x^{2m}).
    pub fn exp_even_power(c: f64, m: u32) -> Result<Self> {
        WeightSpec::new(0.0, 0.0, HSpec::ExpEvenPower { c, m })
    }

    /// Toda-type weight (1−x)^α(1+x)^β e^{−tx}.
    pub fn toda(alpha: f64, beta: f64, t: f64) -> Result<Self> {
        WeightSpec::new(alpha, beta, HSpec::ExpLinear { t })
    }

    /// w(x) = 1/√((1−x)(x+3)).
    pub fn inverse_sqrt_shifted() -> Result<Self> {
        WeightSpec::new(
            -0.5,
            0.0,
            HSpec::LinearFactors {
                factors: vec![LinearFactor { root: r(-3.0), exponent: -0.5 }],
                scale: 1.0,
            },
        )
    }

    /// Largest admissible Bernstein-ellipse parameter (∞ for entire log h).
    pub fn rho_max(&self) -> f64 {
        match &self.h {
            HSpec::One | HSpec::ExpEvenPower { .. } | HSpec::ExpLinear { .. } => f64::INFINITY,
            HSpec::LinearFactors { factors, .. } => factors
                .iter()
                .map(|f| bernstein_rho(f.root))
                .fold(f64::INFINITY, f64::min),
            HSpec::Generic { rho_max, .. } => *rho_max,
        }
    }

    /// Default working ellipse parameter ρ_max^{3/4}.
    ///
    /// Endpoint Taylor coefficients of order n lose about dist(±1, E_ρ)^{−n}
    /// to rounding, so ρ is kept well away from 1.
    pub fn default_rho(&self) -> f64 {
        let rm = self.rho_max();
        if rm.is_finite() {
            rm.powf(0.75)
        } else {
            2.0
        }
    }

    pub fn is_entire_logh(&self) -> bool {
        matches!(self.h, HSpec::One | HSpec::ExpEvenPower { .. } | HSpec::ExpLinear { .. })
    }

    /// True when h(−x) = h(x).
    pub fn is_even_h(&self) -> bool {
        match &self.h {
            HSpec::One | HSpec::ExpEvenPower { .. } => true,
            HSpec::ExpLinear { t } => *t == 0.0,
            HSpec::LinearFactors { factors, .. } => factors.iter().all(|f| {
                factors
                    .iter()
                    .any(|g| (g.root + f.root).norm() < 1e-14 && g.exponent == f.exponent)
            }),
            HSpec::Generic { even, .. } => *even,
        }
    }

    /// Whether the whole measure is symmetric about 0.
    pub fn is_symmetric(&self) -> bool {
        self.alpha == self.beta && self.is_even_h()
    }

    /// Coefficients p_k of log h(x) = Σ p_k x^k for the entire presets.
    pub fn logh_polynomial(&self) -> Option<Vec<f64>> {
        match &self.h {
            HSpec::One => Some(vec![0.0]),
            HSpec::ExpEvenPower { c, m } => {
                let mut p = vec![0.0; 2 * *m as usize + 1];
                p[2 * *m as usize] = -c;
                Some(p)
            }
            HSpec::ExpLinear { t } => Some(vec![0.0, -t]),
            _ => None,
        }
    }

    /// log h as a jet, by structural continuation from [−1,1].
    pub fn logh_jet(&self, z: Jet) -> Result<Jet> {
        match &self.h {
            HSpec::One => Ok(Jet::zero()),
            HSpec::ExpEvenPower { c, m } => Ok(z.powi(2 * *m as i32) * (-c)),
            HSpec::ExpLinear { t } => Ok(z * (-t)),
            HSpec::LinearFactors { factors, scale } => {
                if bernstein_rho(z.v) >= self.rho_max() {
                    return Err(Error::OutsideAnalyticRegion { re: z.v.re, im: z.v.im });
                }
                let mut acc = Jet::real(scale.ln());
                for f in factors {
                    let lin = Jet::one() - z * f.root.inv();
                    acc += (lin.ln() + f.root.norm().ln()) * f.exponent;
                }
                Ok(acc)
            }
            HSpec::Generic { logh, rho_max, .. } => {
                if bernstein_rho(z.v) >= *rho_max {
                    return Err(Error::OutsideAnalyticRegion { re: z.v.re, im: z.v.im });
                }
                let (v, d) = logh(z.v);
                Ok(Jet::new(v, d * z.d))
            }
        }
    }

    pub fn eval_logh(&self, z: CPoint) -> Result<C64> {
        Ok(self.logh_jet(Jet::cst(z))?.v)
    }

    pub fn eval_h(&self, z: CPoint) -> Result<C64> {
        Ok(self.eval_logh(z)?.exp())
    }

    /// w(z) = (1−z)^α (1+z)^β h(z) with principal powers.
    pub fn eval_w(&self, z: CPoint) -> Result<C64> {
        let pole = |e: f64, at: f64| e < 0.0 && (z - at).norm() == 0.0;
        if pole(self.alpha, 1.0) {
            return Err(Error::PoleAtEndpoint(1.0));
        }
        if pole(self.beta, -1.0) {
            return Err(Error::PoleAtEndpoint(-1.0));
        }
        let a = if self.alpha == 0.0 { r(1.0) } else { (r(1.0) - z).powf(self.alpha) };
        let b = if self.beta == 0.0 { r(1.0) } else { (r(1.0) + z).powf(self.beta) };
        Ok(a * b * self.eval_h(z)?)
    }

    /// Fail unless Re h > 0 at 256 points of the ellipse E_ρ.
    pub fn check_re_positive(&self, rho: f64) -> Result<()> {
        for k in 0..256 {
            let th = 2.0 * std::f64::consts::PI * k as f64 / 256.0;
            let e = c(th.cos(), th.sin());
            let zeta = (e * rho + e.inv() / rho) * 0.5;
            let h = self.eval_h(zeta)?;
            if !(h.re > 0.0) {
                return Err(Error::NonPositiveWeight { rho, value: h.re });
            }
        }
        Ok(())
    }

    /// Parse `jacobi(alpha, beta) * <h>`; see [`parse_weight`].
    pub fn parse(text: &str) -> Result<Self> {
        parse_weight(text)
    }
}

fn validate_h(h: &HSpec) -> Result<()> {
    match h {
        HSpec::One => Ok(()),
        HSpec::ExpEvenPower { c, m } => {
            if *m == 0 || !c.is_finite() {
                return Err(Error::InvalidParameter("exp(-c x^(2m)) needs m >= 1 and finite c".into()));
            }
            Ok(())
        }
        HSpec::ExpLinear { t } => {
            if !t.is_finite() {
                return Err(Error::InvalidParameter("exp(-t x) needs finite t".into()));
            }
            Ok(())
        }
        HSpec::LinearFactors { factors, scale } => {
            if !(*scale > 0.0 && scale.is_finite()) {
                return Err(Error::InvalidParameter("scale must be positive".into()));
            }
            for f in factors {
                if !(f.root.re.is_finite() && f.root.im.is_finite() && f.exponent.is_finite()) {
                    return Err(Error::InvalidParameter("non-finite factor".into()));
                }
                if f.root.im == 0.0 && f.root.re.abs() <= 1.0 {
                    return Err(Error::InvalidParameter(format!(
                        "root {} lies on [-1, 1]",
                        f.root.re
                    )));
                }
                if f.root.im != 0.0 {
                    let paired = factors.iter().any(|g| {
                        (g.root - f.root.conj()).norm() < 1e-14 && g.exponent == f.exponent
                    });
                    if !paired {
                        return Err(Error::InvalidParameter(format!(
                            "complex root {} needs its conjugate with the same exponent",
                            f.root
                        )));
                    }
                }
            }
            Ok(())
        }
        HSpec::Generic { rho_max, .. } => {
            if !(*rho_max > 1.0) {
                return Err(Error::InvalidParameter("generic h needs rho_max > 1".into()));
            }
            Ok(())
        }
    }
}

impl fmt::Display for WeightSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "jacobi({}, {}) * ", self.alpha, self.beta)?;
        match &self.h {
            HSpec::One => write!(f, "1"),
            HSpec::ExpEvenPower { c, m } => write!(f, "exp(-{}*x^({}))", c, 2 * m),
            HSpec::ExpLinear { t } => write!(f, "exp(-{}*x)", t),
            HSpec::LinearFactors { factors, scale } => {
                let mut parts = Vec::new();
                if *scale != 1.0 {
                    parts.push(format!("{scale}"));
                }
                for fa in factors {
                    let root = if fa.root.im == 0.0 {
                        format!("{}", fa.root.re)
                    } else {
                        format!("{}{:+}i", fa.root.re, fa.root.im)
                    };
                    parts.push(format!("(x - ({root}))^({})", fa.exponent));
                }
                if parts.is_empty() {
                    parts.push("1".into());
                }
                write!(f, "{}", parts.join(" * "))
            }
            HSpec::Generic { label, .. } => write!(f, "generic({label})"),
        }
    }
}

/// Parse the text form of a weight.
///
/// Grammar (whitespace-insensitive):
/// ```text
/// weight := "jacobi(" num "," num ")" [ "*" h ]
/// h      := "1" | "exp(" ["-"] num "*x^" ["("] int [")"] ")"
///         | "exp(" ["-"] num "*x)" | factor { "*" factor }
/// factor := num | "(x" ("-"|"+") root ")^" ["("] num [")"]
/// root   := num | "(" num ("+"|"-") num "i)"
/// ```
pub fn parse_weight(text: &str) -> Result<WeightSpec> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let rest = s
        .strip_prefix("jacobi(")
        .ok_or_else(|| Error::Parse(format!("expected 'jacobi(' at start of {text:?}")))?;
    let close = rest.find(')').ok_or_else(|| Error::Parse("unclosed jacobi(".into()))?;
    let args: Vec<&str> = rest[..close].split(',').collect();
    if args.len() != 2 {
        return Err(Error::Parse("jacobi(alpha, beta) needs two arguments".into()));
    }
    let alpha = parse_num(args[0])?;
    let beta = parse_num(args[1])?;
    let tail = &rest[close + 1..];
    let h = if tail.is_empty() {
        HSpec::One
    } else {
        let hs = tail
            .strip_prefix('*')
            .ok_or_else(|| Error::Parse(format!("expected '*' after jacobi(...), got {tail:?}")))?;
        parse_h(hs)?
    };
    WeightSpec::new(alpha, beta, h)
}

fn parse_num(s: &str) -> Result<f64> {
    let s = s.trim_start_matches('+');
    s.parse::<f64>().map_err(|_| Error::Parse(format!("bad number {s:?}")))
}

fn strip_parens(s: &str) -> &str {
    s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s)
}

fn parse_h(s: &str) -> Result<HSpec> {
    if s == "1" {
        return Ok(HSpec::One);
    }
    if let Some(inner) = s.strip_prefix("exp(").and_then(|t| t.strip_suffix(')')) {
        let (neg, body) = match inner.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, inner.strip_prefix('+').unwrap_or(inner)),
        };
        let (coef, xpart) = match body.find('x') {
            Some(0) => ("1", body),
            Some(i) => (body[..i].trim_end_matches('*'), &body[i..]),
            None => return Err(Error::Parse(format!("expected x in exp({inner})"))),
        };
        let mut cval = parse_num(coef)?;
        if !neg {
            cval = -cval;
        }
        if xpart == "x" {
            return Ok(HSpec::ExpLinear { t: cval });
        }
        let pow = xpart
            .strip_prefix("x^")
            .ok_or_else(|| Error::Parse(format!("unsupported exponent form {xpart:?}")))?;
        let k: u32 = strip_parens(pow)
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer power {pow:?}")))?;
        if k == 1 {
            return Ok(HSpec::ExpLinear { t: cval });
        }
        if k == 0 || k % 2 != 0 {
            return Err(Error::Parse(format!("power {k} must be even")));
        }
        return Ok(HSpec::ExpEvenPower { c: cval, m: k / 2 });
    }
    let mut factors = Vec::new();
    let mut scale = 1.0;
    for part in split_top_level(s, '*')? {
        if part.starts_with("(x") {
            factors.push(parse_factor(&part)?);
        } else {
            scale *= parse_num(strip_parens(&part))?;
        }
    }
    Ok(HSpec::LinearFactors { factors, scale })
}

fn split_top_level(s: &str, sep: char) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse(format!("unbalanced parentheses in {s:?}")));
        }
        // "x^(...)" style exponents are never split; '*' only separates
        // factors at depth 0.
        if ch == sep && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(ch);
        }
        i += 1;
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in {s:?}")));
    }
    out.push(cur);
    if out.iter().any(|p| p.is_empty()) {
        return Err(Error::Parse(format!("empty factor in {s:?}")));
    }
    Ok(out)
}

fn parse_factor(s: &str) -> Result<LinearFactor> {
    // (x - r)^p  or  (x + r)^p
    let close = matching_paren(s, 0)?;
    let inner = &s[1..close];
    let after = &s[close + 1..];
    let exponent = match after.strip_prefix('^') {
        Some(p) => parse_num(strip_parens(p))?,
        None if after.is_empty() => 1.0,
        None => return Err(Error::Parse(format!("bad factor {s:?}"))),
    };
    let body = inner
        .strip_prefix('x')
        .ok_or_else(|| Error::Parse(format!("factor must start with x: {s:?}")))?;
    let (sign, rs) = if let Some(t) = body.strip_prefix('-') {
        (1.0, t)
    } else if let Some(t) = body.strip_prefix('+') {
        (-1.0, t)
    } else {
        return Err(Error::Parse(format!("expected x - r in {s:?}")));
    };
    let root = parse_complex(strip_parens(rs))? * sign;
    Ok(LinearFactor { root, exponent })
}

fn matching_paren(s: &str, open: usize) -> Result<usize> {
    let mut depth = 0;
    for (i, ch) in s.char_indices().skip(open) {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Ok(i);
                }
            }
            _ => {}
        }
    }
    Err(Error::Parse(format!("unbalanced parentheses in {s:?}")))
}

/// Parse `a`, `bi`, or `a+bi` / `a-bi`.
pub fn parse_complex(s: &str) -> Result<C64> {
    if let Some(body) = s.strip_suffix('i') {
        // split at the last sign that is not part of an exponent
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'e' && bytes[k - 1] != b'E' {
                split = Some(k);
                break;
            }
        }
        let (re, im) = match split {
            Some(k) => (parse_num(&body[..k])?, &body[k..]),
            None => (0.0, body),
        };
        let im = match im {
            "" | "+" => 1.0,
            "-" => -1.0,
            t => parse_num(t)?,
        };
        Ok(c(re, im))
    } else {
        Ok(r(parse_num(s)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_w_examples() {
        let w = WeightSpec::jacobi(0.0, 0.0).unwrap();
        assert_eq!(w.eval_w(r(0.3)).unwrap(), r(1.0));
        let w = WeightSpec::inverse_sqrt_shifted().unwrap();
        assert!((w.eval_w(r(0.0)).unwrap() - r(1.0 / 3f64.sqrt())).norm() < 1e-15);
        let w = WeightSpec::toda(0.0, 0.0, 2.0).unwrap();
        assert!((w.eval_w(r(1.0)).unwrap() - r((-2.0f64).exp())).norm() < 1e-15);
        let w = WeightSpec::jacobi(-0.5, 0.0).unwrap();
        assert_eq!(w.eval_w(r(1.0)), Err(Error::PoleAtEndpoint(1.0)));
    }

    #[test]
    fn eval_logh_examples() {
        let w = WeightSpec::exp_even_power(7.0, 2).unwrap();
        assert!((w.eval_logh(c(0.0, 1.0)).unwrap() - r(-7.0)).norm() < 1e-14);
        let w = WeightSpec::toda(0.0, 0.0, -2.0).unwrap();
        assert!((w.eval_logh(r(0.5)).unwrap() - r(1.0)).norm() < 1e-15);
        assert_eq!(WeightSpec::jacobi(0.0, 0.0).unwrap().eval_logh(c(3.0, 1.0)).unwrap(), r(0.0));
    }

    #[test]
    fn entire_flags() {
        assert!(WeightSpec::jacobi(0.0, 0.0).unwrap().is_entire_logh());
        assert!(WeightSpec::exp_even_power(1.0, 1).unwrap().is_entire_logh());
        assert!(!WeightSpec::inverse_sqrt_shifted().unwrap().is_entire_logh());
    }

    #[test]
    fn rho_max_of_root() {
        let w = WeightSpec::inverse_sqrt_shifted().unwrap();
        assert!((w.rho_max() - (3.0 + 8f64.sqrt())).abs() < 1e-13);
        assert!((w.default_rho() - (3.0 + 8f64.sqrt()).powf(0.75)).abs() < 1e-13);
    }

    #[test]
    fn outside_region_is_reported() {
        let w = WeightSpec::inverse_sqrt_shifted().unwrap();
        assert!(matches!(w.eval_logh(r(-4.0)), Err(Error::OutsideAnalyticRegion { .. })));
    }

    #[test]
    fn logh_matches_product_on_interval() {
        let h = HSpec::LinearFactors {
            factors: vec![
                LinearFactor { root: c(0.3, 0.5), exponent: 0.7 },
                LinearFactor { root: c(0.3, -0.5), exponent: 0.7 },
                LinearFactor { root: r(2.0), exponent: -1.5 },
            ],
            scale: 2.5,
        };
        let w = WeightSpec::new(0.0, 0.0, h).unwrap();
        for &x in &[-0.9, -0.2, 0.4, 0.95] {
            let direct = 2.5
                * (r(x) - c(0.3, 0.5)).norm().powf(1.4)
                * (x - 2.0f64).abs().powf(-1.5);
            let hv = w.eval_h(r(x)).unwrap();
            assert!((hv - r(direct)).norm() < 1e-13 * direct, "x={x}");
        }
    }

    #[test]
    fn unpaired_complex_root_rejected() {
        let h = HSpec::LinearFactors {
            factors: vec![LinearFactor { root: c(0.3, 0.5), exponent: 1.0 }],
            scale: 1.0,
        };
        assert!(WeightSpec::new(0.0, 0.0, h).is_err());
        assert!(WeightSpec::jacobi(-1.0, 0.0).is_err());
    }

    #[test]
    fn parse_round_trip() {
        let w = parse_weight("jacobi(-0.5, 0) * (x - -3)^(-0.5)").unwrap();
        assert!((w.eval_w(r(0.0)).unwrap() - r(1.0 / 3f64.sqrt())).norm() < 1e-15);
        let w = parse_weight("jacobi(0,0)*exp(-7*x^4)").unwrap();
        assert!(matches!(w.h, HSpec::ExpEvenPower { m: 2, .. }));
        let w2 = parse_weight(&w.to_string()).unwrap();
        assert!(matches!(w2.h, HSpec::ExpEvenPower { m: 2, .. }));
        let w = parse_weight("jacobi(-0.5,-0.5)*exp(-2*x)").unwrap();
        assert!(matches!(w.h, HSpec::ExpLinear { t } if t == 2.0));
        let w = parse_weight("jacobi(0.2,0.1)*1").unwrap();
        assert!(matches!(w.h, HSpec::One));
        let w = parse_weight("jacobi(0,0)*(x+3)^(-0.5)*(x-(0.2+1.5i))^2*(x-(0.2-1.5i))^2").unwrap();
        let w2 = parse_weight(&w.to_string()).unwrap();
        assert!((w.eval_h(r(0.3)).unwrap() - w2.eval_h(r(0.3)).unwrap()).norm() < 1e-14);
        assert!(parse_weight("jacobi(0,0)*exp(-x^3)").is_err());
        assert!(parse_weight("legendre").is_err());
    }

    #[test]
    fn symmetry_detection() {
        assert!(WeightSpec::exp_even_power(7.0, 2).unwrap().is_even_h());
        assert!(!WeightSpec::toda(0.0, 0.0, 2.0).unwrap().is_even_h());
        let w = parse_weight("jacobi(0,0)*(x-2)^0.5*(x+2)^0.5").unwrap();
        assert!(w.is_even_h());
    }
}
