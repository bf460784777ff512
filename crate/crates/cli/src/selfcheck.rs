//! Built-in consistency suites: closed-form correction matrices, branch
//! identities on a grid around the cut, and exactness on Chebyshev weights.

use num_complex::Complex64 as C;
use rhjacobi::{branches, ComplexMat2, Engine, Region, WeightSpec};
use std::f64::consts::PI;

pub struct SuiteReport {
    pub name: &'static str,
    pub max_residual: f64,
    pub tolerance: f64,
    /// Labels of the vectors that exceeded the tolerance.
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str, tolerance: f64) -> Self {
        SuiteReport { name, max_residual: 0.0, tolerance, failures: Vec::new() }
    }

    fn record(&mut self, label: impl FnOnce() -> String, residual: f64) {
        self.max_residual = self.max_residual.max(residual);
        if !(residual <= self.tolerance) {
            self.failures.push(format!("{} (residual {residual:.2e})", label()));
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn cm(a: [[C; 2]; 2]) -> ComplexMat2 {
    ComplexMat2::new(a[0][0], a[0][1], a[1][0], a[1][1])
}

fn mat_residual(got: ComplexMat2, want: ComplexMat2) -> f64 {
    got.max_abs_diff(&want) / want.max_abs().max(1.0)
}

/// Closed-form U matrices against the tables. `perturb` is added to
/// U^{right}_{1,1} before comparison; it exists to exercise the failure path.
pub fn golden(perturb: f64) -> SuiteReport {
    let mut rep = SuiteReport::new("golden", 1e-12);
    let i = C::i();
    let one = C::new(1.0, 0.0);
    let right_shape = cm([[-one, i], [i, one]]);
    let left_shape = cm([[one, i], [i, -one]]);
    for (a, b) in [(0.0, 0.0), (-0.5, 0.0), (0.3, -0.7), (2.5, 0.0), (-0.9, -0.9), (1.0, 1.0)] {
        let engine = match WeightSpec::toda(a, b, 1.0).and_then(|w| Engine::new(w, 3)) {
            Ok(e) => e,
            Err(e) => {
                rep.record(|| format!("table construction (alpha={a}, beta={b}): {e}"), f64::INFINITY);
                continue;
            }
        };
        let d = engine.aux.dinf;
        let mut u11r = engine.table.right.u(1, 1);
        u11r.a11 += perturb;
        let want = right_shape * ((4.0 * a * a - 1.0) / 16.0);
        rep.record(|| format!("U_{{1,1}}^right (alpha={a}, beta={b})"), mat_residual(u11r, want.conj_sigma3(d)));
        let want = left_shape * ((4.0 * b * b - 1.0) / 16.0);
        let got = engine.table.left.u(1, 1);
        rep.record(|| format!("U_{{1,1}}^left (alpha={a}, beta={b})"), mat_residual(got, want.conj_sigma3(d)));
        let q = 4.0 * a * a;
        let want = right_shape * ((q - 1.0) * (q - 9.0) * (q - 25.0) / 12288.0);
        let got = engine.table.right.u(3, 2);
        rep.record(|| format!("U_{{3,2}}^right (alpha={a}, beta={b})"), mat_residual(got, want.conj_sigma3(d)));
    }
    match WeightSpec::jacobi(0.0, 0.0).and_then(|w| Engine::new(w, 2)) {
        Ok(engine) => {
            let want = cm([[one, -i * 10.0], [i * 10.0, one]]) * (-1.0 / 256.0);
            let got = engine.table.right.u(2, 1);
            rep.record(|| "U_{2,1}^right (Legendre)".to_string(), mat_residual(got, want));
        }
        Err(e) => rep.record(|| format!("table construction (Legendre): {e}"), f64::INFINITY),
    }
    rep
}

pub fn branch_grid() -> SuiteReport {
    let mut rep = SuiteReport::new("branches", 1e-13);
    for ii in -40..=40 {
        for jj in -40..=40 {
            if jj == 0 {
                continue;
            }
            let z = C::new(ii as f64 * 0.075, jj as f64 * 0.05 * (jj as f64).abs() / 40.0);
            let s = branches::sq(z);
            let p = branches::phi(z);
            let mut r = (s * s - (z * z - 1.0)).norm() / (z * z - 1.0).norm().max(1.0);
            r = r.max(((p + p.inv()) / 2.0 - z).norm() / z.norm().max(1.0));
            r = r.max((branches::acos_principal(z).cos() - z).norm() / z.norm().max(1.0));
            if p.norm() < 1.0 {
                r = f64::INFINITY;
            }
            rep.record(|| format!("branch identities at {z}"), r);
        }
    }
    rep
}

pub fn chebyshev() -> SuiteReport {
    let mut rep = SuiteReport::new("chebyshev", 1e-13);
    let engine = match WeightSpec::jacobi(-0.5, -0.5).and_then(|w| Engine::new(w, 1)) {
        Ok(e) => e,
        Err(e) => {
            rep.record(|| format!("engine construction: {e}"), f64::INFINITY);
            return rep;
        }
    };
    for n in 1..=50usize {
        let scale = 2f64.powi(1 - n as i32);
        for j in 0..100 {
            let th = PI * (j as f64 + 0.5) / 100.0;
            let want = (n as f64 * th).cos() * scale;
            let r = match engine.eval_monic(n, C::new(th.cos(), 0.0), Some(Region::Lens)) {
                Ok(v) => (v.value - want).norm() / scale,
                Err(_) => f64::INFINITY,
            };
            rep.record(|| format!("monic Chebyshev n={n} at cos({th:.4})"), r);
        }
    }
    rep
}

/// Runs all suites; the perturbation feeds the golden suite only.
pub fn run(perturb: f64) -> Vec<SuiteReport> {
    vec![golden(perturb), branch_grid(), chebyshev()]
}
