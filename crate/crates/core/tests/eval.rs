mod common;

use common::{chebyshev_monic_theta, jacobi_ab, jacobi_monic, jacobi_monic_derivative, legendre_log_gamma, rel};
use num_complex::Complex64 as C;
use rhjacobi::{Endpoint, Engine, EngineOptions, Error, Region, WeightSpec};

fn re(x: f64) -> C {
    C::new(x, 0.0)
}

/// Orthonormal Legendre value by the textbook recurrence for P_n.
fn legendre_orthonormal(n: usize, x: f64) -> f64 {
    let (mut p0, mut p1) = (1.0, x);
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    p1 * ((2 * n + 1) as f64 / 2.0).sqrt()
}

#[test]
fn chebyshev_monic_value() {
    let eng = Engine::new(WeightSpec::jacobi(-0.5, -0.5).unwrap(), 1).unwrap();
    let th = 0.3f64.acos();
    let want = chebyshev_monic_theta(5, th);
    assert!((want - 0.0624300).abs() < 1e-7);
    let got = eng.eval_monic(5, re(0.3), None).unwrap();
    assert_eq!(got.region, Region::Lens);
    assert!((got.value.re - want).abs() < 1e-14 * want.abs(), "{} vs {want}", got.value);
    assert!(got.value.im.abs() < 1e-15);
}

#[test]
fn chebyshev_every_region() {
    let eng = Engine::new(WeightSpec::jacobi(-0.5, -0.5).unwrap(), 2).unwrap();
    for z in [C::new(0.3, 0.1), re(3.0), C::new(1.1, 0.05), C::new(-1.01, 0.0), C::new(-0.9, -0.1), re(1.0)] {
        // the outer expansion drops terms of relative size |φ|^{−2n}
        for n in [20, 40] {
            let got = eng.eval_monic(n, z, None).unwrap();
            let want = jacobi_monic(-0.5, -0.5, n, z);
            assert!(rel(got.value, want) < 1e-12, "n={n} z={z} {:?}", got.region);
        }
    }
}

#[test]
fn jacobi_monic_across_regions() {
    let points = [
        C::new(0.3, 0.0),
        C::new(-0.7, 0.2),
        C::new(0.2, 0.9),
        re(2.5),
        C::new(1.12, 0.05),
        C::new(0.995, 0.0),
        C::new(-1.0, 0.01),
        C::new(-0.85, -0.02),
    ];
    for (a, b) in [(0.0, 0.0), (0.3, -0.6), (1.7, 0.5)] {
        let eng = Engine::new(WeightSpec::jacobi(a, b).unwrap(), 6).unwrap();
        for z in points {
            let got = eng.eval_monic(100, z, None).unwrap();
            let want = jacobi_monic(a, b, 100, z);
            assert!(rel(got.value, want) < 1e-11, "({a},{b}) z={z} {:?}: {:e}", got.region, rel(got.value, want));
        }
    }
}

#[test]
fn derivative_matches_closed_form_and_differences() {
    let eng = Engine::new(WeightSpec::jacobi(0.0, 0.0).unwrap(), 6).unwrap();
    for z in [re(0.41), C::new(1.05, 0.03), re(-1.5), C::new(-0.3, 0.4)] {
        let d = eng.eval_derivative(50, z, None).unwrap().value;
        assert!(rel(d, jacobi_monic_derivative(0.0, 0.0, 50, z)) < 1e-10, "z={z}");
        let h = 1e-5;
        let fd = (eng.eval_monic(50, z + h, None).unwrap().value - eng.eval_monic(50, z - h, None).unwrap().value) / (2.0 * h);
        assert!(rel(fd, d) < 1e-6, "z={z}");
        let (v, dv) = eng.eval_monic_jet(50, z, None).unwrap();
        assert_eq!(v.value, eng.eval_monic(50, z, None).unwrap().value);
        assert_eq!(dv.value, d);
    }
}

#[test]
fn orthonormal_legendre() {
    let eng = Engine::new(WeightSpec::jacobi(0.0, 0.0).unwrap(), 6).unwrap();
    for n in [50, 1000, 20000] {
        for x in [0.3, -0.77, 0.999] {
            let got = eng.eval_orthonormal(n, re(x), None).unwrap().value.re;
            let want = legendre_orthonormal(n, x);
            assert!((got - want).abs() < 1e-10 * (1.0 + want.abs()), "n={n} x={x}: {got} vs {want}");
        }
    }
}

#[test]
fn legendre_leading_coefficients() {
    let eng = Engine::new(WeightSpec::jacobi(0.0, 0.0).unwrap(), 6).unwrap();
    for n in [20, 50, 100, 1000, 100000] {
        let lg = eng.log_gamma_n(n).unwrap();
        let want = legendre_log_gamma(n);
        assert!((lg - want).abs() < 1e-9, "n={n}: {lg} vs {want}");
    }
    assert!((eng.gamma_n(30).unwrap() / legendre_log_gamma(30).exp() - 1.0).abs() < 1e-9);
}

#[test]
fn recurrence_coefficients_match_jacobi() {
    for (a, b) in [(0.0, 0.0), (0.3, -0.6), (-0.5, 1.5)] {
        let eng = Engine::new(WeightSpec::jacobi(a, b).unwrap(), 6).unwrap();
        for n in [40, 100, 1000] {
            let (al, be) = eng.recurrence_coeffs(n).unwrap();
            let (wa, wb) = jacobi_ab(a, b, n);
            assert!((al - wa).abs() < 1e-12, "({a},{b}) n={n}: α {al} vs {wa}");
            assert!((be - wb).abs() < 1e-12, "({a},{b}) n={n}: β {be} vs {wb}");
        }
    }
}

#[test]
fn region_selection() {
    let eng = Engine::new(WeightSpec::jacobi(0.0, 0.0).unwrap(), 2).unwrap();
    assert_eq!(eng.select_region(re(0.3)), Region::Lens);
    assert_eq!(eng.select_region(C::new(0.0, 0.6)), Region::Lens);
    assert_eq!(eng.select_region(C::new(0.0, 0.61)), Region::Outer);
    assert_eq!(eng.select_region(re(3.0)), Region::Outer);
    assert_eq!(eng.select_region(re(1.1)), Region::RightDisk);
    assert_eq!(eng.select_region(re(0.99)), Region::RightSeries);
    assert_eq!(eng.select_region(re(-1.0)), Region::LeftSeries);
    assert_eq!(eng.select_region(C::new(-1.0, 0.15)), Region::LeftDisk);
    assert_eq!(eng.select_region(re(1.25)), Region::Outer);
    assert_eq!(Region::parse("auto").unwrap(), None);
    assert_eq!(Region::parse("Outer").unwrap(), Some(Region::Outer));
    assert!(Region::parse("middle").is_err());
    for r in [Region::Lens, Region::Outer, Region::RightDisk, Region::LeftDisk, Region::RightSeries, Region::LeftSeries] {
        assert_eq!(Region::parse(r.name()).unwrap(), Some(r));
    }
}

#[test]
fn forced_regions_agree() {
    // inside both the lens and the right disk
    let eng = Engine::new(WeightSpec::toda(0.2, -0.4, 1.0).unwrap(), 6).unwrap();
    let z = C::new(0.88, 0.03);
    let lens = eng.eval_monic(200, z, Some(Region::Lens)).unwrap().value;
    let disk = eng.eval_monic(200, z, Some(Region::RightDisk)).unwrap().value;
    assert!(rel(lens, disk) < 1e-12);
    let z = C::new(1.15, 0.0);
    let outer = eng.eval_monic(200, z, Some(Region::Outer)).unwrap().value;
    let disk = eng.eval_monic(200, z, Some(Region::RightDisk)).unwrap().value;
    assert!(rel(outer, disk) < 1e-12);
}

#[test]
fn conjugate_symmetry() {
    let eng = Engine::new(WeightSpec::toda(0.3, -0.6, 1.5).unwrap(), 4).unwrap();
    for z in [C::new(0.3, 0.2), C::new(1.05, 0.1), C::new(-1.1, 0.02), C::new(2.0, 1.0)] {
        let a = eng.eval_monic(64, z, None).unwrap().value;
        let b = eng.eval_monic(64, z.conj(), None).unwrap().value;
        assert!((a.conj() - b).norm() <= 1e-13 * a.norm(), "z={z}");
    }
    let v = eng.eval_monic(64, re(0.37), None).unwrap().value;
    assert!(v.im.abs() <= 1e-14 * v.norm());
}

#[test]
fn endpoints_are_finite() {
    let eng = Engine::new(WeightSpec::jacobi(0.4, -0.3).unwrap(), 6).unwrap();
    for x in [1.0, -1.0] {
        let got = eng.eval_monic(80, re(x), None).unwrap();
        assert!(got.value.re.is_finite());
        assert!(rel(got.value, jacobi_monic(0.4, -0.3, 80, re(x))) < 1e-11, "x={x}");
        let d = eng.eval_derivative(80, re(x), None).unwrap().value;
        assert!(rel(d, jacobi_monic_derivative(0.4, -0.3, 80, re(x))) < 1e-10);
    }
}

#[test]
fn disk_paths_meet_at_series_radius() {
    let eng = Engine::new(WeightSpec::toda(0.3, -0.6, 1.0).unwrap(), 4).unwrap();
    let r = eng.opts.series_radius;
    for e in [Endpoint::Right, Endpoint::Left] {
        for j in 0..8 {
            let z = re(e.sigma()) + C::from_polar(r, 0.3 + j as f64 * 0.78);
            let a = eng.r_disk_path(z, e, 4, true).unwrap();
            let b = eng.r_disk_path(z, e, 4, false).unwrap();
            for (x, y) in a.iter().zip(&b) {
                assert!(x.max_abs_diff(y) < 1e-10 * y.max_abs().max(1.0), "{e:?} {z}");
            }
        }
    }
}

#[test]
fn huge_degree_keeps_scale_separate() {
    let eng = Engine::new(WeightSpec::jacobi(0.0, 0.0).unwrap(), 4).unwrap();
    let got = eng.eval_monic(1_000_000, re(0.3), None).unwrap();
    assert_eq!(got.value, re(0.0));
    assert!(got.mantissa.norm() > 0.0 && got.mantissa.norm().is_finite());
    assert!(got.log_scale < -600_000.0);
    assert!(got.next_term_estimate < 1e-20);
}

#[test]
fn terms_and_errors() {
    let eng = Engine::new(WeightSpec::jacobi(0.0, 0.0).unwrap(), 3).unwrap();
    assert!(matches!(eng.eval_monic(0, re(0.1), None), Err(Error::InvalidDegree(0))));
    assert!(eng.eval_monic(5, C::new(f64::NAN, 0.0), None).is_err());
    assert!(eng.r_outer(re(1.05), 2).is_err());
    assert!(eng.r_disk(re(0.5), Endpoint::Right, 2).is_err());
    assert_eq!(eng.eval_monic_terms(10, re(0.2), None, 9).unwrap().terms_used, 3);
    assert!(eng.recurrence_coeffs(0).is_err());
    let bad = EngineOptions { disk_radius: 1.5, ..EngineOptions::default() };
    assert!(Engine::with_options(WeightSpec::jacobi(0.0, 0.0).unwrap(), bad).is_err());
    let bad = EngineOptions { series_radius: 0.3, ..EngineOptions::default() };
    assert!(Engine::with_options(WeightSpec::jacobi(0.0, 0.0).unwrap(), bad).is_err());
}
