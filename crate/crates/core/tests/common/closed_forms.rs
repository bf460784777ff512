//! Closed forms of the pole coefficients U_{k,m}, k ≤ 4, in α, β, c_0, c_1,
//! d_0, d_1 and D_∞.

use num_complex::Complex64 as C;
use rhjacobi::{ComplexMat2, Endpoint};

fn m(a: [[C; 2]; 2], d: f64) -> ComplexMat2 {
    ComplexMat2::new(a[0][0], a[0][1], a[1][0], a[1][1]).conj_sigma3(d)
}

fn re(x: f64) -> C {
    C::new(x, 0.0)
}

fn im(x: f64) -> C {
    C::new(0.0, x)
}

/// Closed forms keyed by (endpoint, k, m).
#[allow(clippy::too_many_arguments)]
pub fn closed_forms(a: f64, b: f64, c0: f64, d0: f64, c1: f64, d1: f64, d: f64) -> Vec<(Endpoint, usize, usize, ComplexMat2)> {
    use Endpoint::{Left, Right};
    let mut out = Vec::new();
    out.push((Right, 1, 1, m([[re(-1.0), im(1.0)], [im(1.0), re(1.0)]], d) * ((4.0 * a * a - 1.0) / 16.0)));
    out.push((Left, 1, 1, m([[re(1.0), im(1.0)], [im(1.0), re(-1.0)]], d) * ((4.0 * b * b - 1.0) / 16.0)));

    let a2 = |x: f64, y: f64, c: f64| 8.0 * x + 8.0 * y + 8.0 * c - 4.0 * y * y + 1.0;
    let b2 = |x: f64, y: f64, c: f64| -8.0 * x - 8.0 * y - 8.0 * c + 4.0 * x * x + 4.0 * y * y - 10.0;
    let c2 = |x: f64, y: f64, c: f64| -8.0 * x - 8.0 * y - 8.0 * c - 4.0 * x * x - 4.0 * y * y + 10.0;
    let d2 = |x: f64, y: f64, c: f64| -8.0 * x - 8.0 * y - 8.0 * c - 4.0 * y * y + 1.0;
    out.push((
        Right,
        2,
        1,
        m([[re(a2(a, b, c0)), im(b2(a, b, c0))], [im(c2(a, b, c0)), re(d2(a, b, c0))]], d)
            * ((4.0 * a * a - 1.0) / 256.0),
    ));
    out.push((
        Left,
        2,
        1,
        m([[re(-a2(b, a, -d0)), im(b2(b, a, -d0))], [im(c2(b, a, -d0)), re(-d2(b, a, -d0))]], d)
            * ((4.0 * b * b - 1.0) / 256.0),
    ));

    let a3 = |a: f64, b: f64, f: f64, g: f64| {
        16.0 * (4.0 * b * b - 1.0) * (f + g + 2.0 * a + 2.0 * b)
            - 2.0 * (4.0 * b * b - 1.0) * (2.0 * a * a + 2.0 * b * b - 1.0)
            - 128.0 * ((a + b).powi(2) + f * (f + 2.0 * a + 2.0 * b))
    };
    let q3 = |a: f64, b: f64, f: f64, _g: f64| {
        128.0 * (a + b).powi(2) + 128.0 * f * (f + 2.0 * a + 2.0 * b) - 388.0 / 3.0 * a * a - 84.0 * b * b
            + 64.0 / 3.0 * a.powi(4)
            + 16.0 * b.powi(4)
            + 48.0 * a * a * b * b
            + 176.0
    };
    let r3 = |a: f64, b: f64, f: f64, g: f64| {
        -128.0 * (a + b) * (a * a + b * b) + 320.0 * (a + b) - 64.0 * b * b * (f + g) - 128.0 * f * a * a
            + 304.0 * f
            + 16.0 * g
    };
    let d3 = |a: f64, b: f64, f: f64, g: f64| {
        16.0 * (4.0 * b * b - 1.0) * (f + g + 2.0 * a + 2.0 * b)
            + 2.0 * (4.0 * b * b - 1.0) * (2.0 * a * a + 2.0 * b * b - 1.0)
            + 128.0 * ((a + b).powi(2) + f * (f + 2.0 * a + 2.0 * b))
    };
    let p = (a, b, c0, -d0);
    out.push((
        Right,
        3,
        1,
        m(
            [
                [re(a3(p.0, p.1, p.2, p.3)), im(q3(p.0, p.1, p.2, p.3) + r3(p.0, p.1, p.2, p.3))],
                [im(q3(p.0, p.1, p.2, p.3) - r3(p.0, p.1, p.2, p.3)), re(d3(p.0, p.1, p.2, p.3))],
            ],
            d,
        ) * ((4.0 * a * a - 1.0) / 8192.0),
    ));
    let p = (b, a, -d0, c0);
    out.push((
        Left,
        3,
        1,
        m(
            [
                [re(-a3(p.0, p.1, p.2, p.3)), im(q3(p.0, p.1, p.2, p.3) + r3(p.0, p.1, p.2, p.3))],
                [im(q3(p.0, p.1, p.2, p.3) - r3(p.0, p.1, p.2, p.3)), re(-d3(p.0, p.1, p.2, p.3))],
            ],
            d,
        ) * ((4.0 * b * b - 1.0) / 8192.0),
    ));
    let ka = (4.0 * a * a - 1.0) * (4.0 * a * a - 9.0) * (4.0 * a * a - 25.0) / 12288.0;
    let kb = (4.0 * b * b - 1.0) * (4.0 * b * b - 9.0) * (4.0 * b * b - 25.0) / 12288.0;
    out.push((Right, 3, 2, m([[re(-1.0), im(1.0)], [im(1.0), re(1.0)]], d) * ka));
    out.push((Left, 3, 2, m([[re(-1.0), im(-1.0)], [im(-1.0), re(1.0)]], d) * kb));

    let v4 = |a: f64, b: f64, f0: f64, g0: f64, _f1: f64| {
        (1.0 - 4.0 * b * b) / 6.0
            * (384.0 * (f0 * f0 + g0 * g0 - f0 * g0 + 3.0 * (a + b) * (f0 - g0))
                + 16.0 * ((a * a + b * b).powi(2) + a * a * b * b)
                + 1196.0 * (a + b).powi(2)
                - 88.0 * a * b
                - 219.0)
    };
    let w4 = |a: f64, b: f64, f0: f64, g0: f64, f1: f64| {
        -4.0 * ((4.0 * b * b - 1.0) * (8.0 * b * b + 4.0 * a * a - 11.0) * g0 + 48.0 * (4.0 * a * a - 9.0) * f1
            - 768.0 * a * b * f0
            - f0 * (128.0 * f0 * (f0 + 3.0 * (a + b)) + 16.0 * b * b * (b * b + 2.0 * a * a + 25.0) + 312.0 * a * a + 139.0)
            - 2.0 * (a + b) * (b * b * (24.0 * b * b + 24.0 * a * a + 46.0) + 58.0 * a * a + 128.0 * a * b + 3.0))
    };
    let x4 = |a: f64, b: f64, f0: f64, g0: f64, f1: f64| {
        4.0 * ((4.0 * b * b - 1.0) * (8.0 * b * b + 12.0 * a * a - 29.0) * g0 + 48.0 * (4.0 * a * a - 9.0) * f1
            - 768.0 * a * b * f0
            - f0 * (128.0 * f0 * (f0 + 3.0 * (a + b))
                + 16.0 * b * b * (b * b + 6.0 * a * a + 16.0)
                + 8.0 * a * a * (8.0 * a * a - 7.0)
                + 643.0)
            - 4.0 * (a + b) * (b * b * (12.0 * b * b + 36.0 * a * a - 31.0) + a * a * (16.0 * a * a - 65.0) + 64.0 * a * b + 132.0))
    };
    let y4 = |a: f64, b: f64, f0: f64, g0: f64, _f1: f64| {
        4.0 / 3.0
            * (48.0 * (4.0 * b * b - 1.0) * g0 * (g0 - f0 - 3.0 * (a + b))
                + b.powi(4) * (48.0 * a * a + 542.0)
                + 48.0 * f0 * f0 * (4.0 * b * b + 12.0 * a * a - 28.0)
                + 144.0 * (a + b) * (4.0 * b * b + 8.0 * a * a - 19.0) * f0
                + a.powi(4) * (56.0 * b * b + 422.0)
                + a * b * (1152.0 * (a * a + b * b) + 988.0 * a * b - 2880.0)
                + 16.0 * a.powi(6)
                - 1393.0 * b * b
                - 951.0 * a * a
                - 498.0
                + 8.0 * b.powi(6))
    };
    let quad = |p: (f64, f64, f64, f64, f64), sgn: f64| {
        let (v, w, x, y) = (
            v4(p.0, p.1, p.2, p.3, p.4),
            w4(p.0, p.1, p.2, p.3, p.4),
            x4(p.0, p.1, p.2, p.3, p.4),
            y4(p.0, p.1, p.2, p.3, p.4),
        );
        [[re(sgn * (v + w)), im(x + y)], [im(x - y), re(sgn * (v - w))]]
    };
    out.push((Right, 4, 1, m(quad((a, b, c0, d0, c1), 1.0), d) * ((4.0 * a * a - 1.0) / 65536.0)));
    out.push((Left, 4, 1, m(quad((b, a, -d0, -c0, d1), -1.0), d) * ((4.0 * b * b - 1.0) / 65536.0)));

    let k = (4.0 * a * a - 1.0) * (4.0 * a * a - 9.0) * (4.0 * a * a - 25.0) / (131072.0 * 3.0);
    let s = 48.0 * (a + b);
    out.push((
        Right,
        4,
        2,
        m(
            [
                [re(-4.0 * a * a - 8.0 * b * b + 48.0 * c0 + s + 3.0), im(8.0 * a * a + 8.0 * b * b - 48.0 * c0 - s - 52.0)],
                [im(-8.0 * a * a - 8.0 * b * b - 48.0 * c0 - s + 52.0), re(-4.0 * a * a - 8.0 * b * b - 48.0 * c0 - s + 3.0)],
            ],
            d,
        ) * k,
    ));
    let k = (4.0 * b * b - 1.0) * (4.0 * b * b - 9.0) * (4.0 * b * b - 25.0) / (131072.0 * 3.0);
    out.push((
        Left,
        4,
        2,
        m(
            [
                [re(-8.0 * a * a - 4.0 * b * b - 48.0 * d0 + s + 3.0), im(-8.0 * a * a - 8.0 * b * b - 48.0 * d0 + s + 52.0)],
                [im(8.0 * a * a + 8.0 * b * b - 48.0 * d0 + s - 52.0), re(-8.0 * a * a - 4.0 * b * b + 48.0 * d0 - s + 3.0)],
            ],
            d,
        ) * k,
    ));
    out
}
