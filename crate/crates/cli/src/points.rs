//! Point lists and integer ranges from the command line.

use anyhow::{bail, Context, Result};
use num_complex::Complex64;

/// A real or complex literal: `0.3`, `-1e-2`, `0.2+0.5i`, `-0.1-2i`, `3i`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t = s.trim();
    if t.is_empty() {
        bail!("empty point");
    }
    let Some(body) = t.strip_suffix('i') else {
        let x: f64 = t.parse().with_context(|| format!("bad point '{t}'"))?;
        return Ok(Complex64::new(x, 0.0));
    };
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let mut split = None;
    for k in (1..bytes.len()).rev() {
        if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
            split = Some(k);
            break;
        }
    }
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other,
    };
    let re: f64 = re.parse().with_context(|| format!("bad real part in '{t}'"))?;
    let im: f64 = im.trim_start_matches('+').parse().with_context(|| format!("bad imaginary part in '{t}'"))?;
    Ok(Complex64::new(re, im))
}

/// `a,b,c`, `linspace(a,b,k)` or `grid(x0,x1,nx,y0,y1,ny)`.
pub fn parse_points(s: &str) -> Result<Vec<Complex64>> {
    let t = s.trim();
    if let Some(args) = call_args(t, "linspace") {
        let a = parse_f64_list(args)?;
        if a.len() != 3 {
            bail!("linspace takes (start, stop, count)");
        }
        let k = count(a[2])?;
        return Ok(linspace(a[0], a[1], k).into_iter().map(|x| Complex64::new(x, 0.0)).collect());
    }
    if let Some(args) = call_args(t, "grid") {
        let a = parse_f64_list(args)?;
        if a.len() != 6 {
            bail!("grid takes (re0, re1, nre, im0, im1, nim)");
        }
        let xs = linspace(a[0], a[1], count(a[2])?);
        let ys = linspace(a[3], a[4], count(a[5])?);
        return Ok(ys.iter().flat_map(|y| xs.iter().map(move |x| Complex64::new(*x, *y))).collect());
    }
    t.split(',').map(parse_complex).collect()
}

/// `a..b` (inclusive) or a comma list.
pub fn parse_usize_range(s: &str) -> Result<Vec<usize>> {
    if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().with_context(|| format!("bad range '{s}'"))?;
        let b: usize = b.trim().parse().with_context(|| format!("bad range '{s}'"))?;
        if a > b {
            bail!("empty range '{s}'");
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|v| v.trim().parse().with_context(|| format!("bad integer '{v}'"))).collect()
}

/// Powers of two from a to b for `a..b`, or a comma list.
pub fn parse_degree_range(s: &str) -> Result<Vec<usize>> {
    if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().with_context(|| format!("bad range '{s}'"))?;
        let b: usize = b.trim().parse().with_context(|| format!("bad range '{s}'"))?;
        if a == 0 || a > b {
            bail!("degree range '{s}' must satisfy 0 < a <= b");
        }
        let mut out = Vec::new();
        let mut n = a;
        while n <= b {
            out.push(n);
            n *= 2;
        }
        return Ok(out);
    }
    parse_usize_range(s)
}

fn call_args<'a>(t: &'a str, name: &str) -> Option<&'a str> {
    t.strip_prefix(name)?.trim_start().strip_prefix('(')?.strip_suffix(')')
}

fn parse_f64_list(s: &str) -> Result<Vec<f64>> {
    s.split(',').map(|v| v.trim().parse::<f64>().with_context(|| format!("bad number '{v}'"))).collect()
}

fn count(x: f64) -> Result<usize> {
    if x < 1.0 || x.fract() != 0.0 {
        bail!("point count {x} must be a positive integer");
    }
    Ok(x as usize)
}

fn linspace(a: f64, b: f64, k: usize) -> Vec<f64> {
    if k == 1 {
        return vec![a];
    }
    (0..k).map(|j| a + (b - a) * j as f64 / (k - 1) as f64).collect()
}
