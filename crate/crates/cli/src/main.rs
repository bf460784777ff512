mod points;
mod selfcheck;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use rhjacobi::{gauss_rule, oracle, AuxData, ContourParams, Engine, EngineOptions, Region, WeightSpec};
use serde_json::json;
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "rhjacobi", version, about = "Large-degree Jacobi-type orthogonal polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate π_n (or p_n, or a derivative) at a list of points.
    Eval(EvalArgs),
    /// Dump the contour data and the W/U/Q tables as JSON.
    Coeffs(CoeffsArgs),
    /// Gauss quadrature rule with n nodes.
    Quad(QuadArgs),
    /// Relative error against the recurrence oracle over degrees and term counts.
    Study(StudyArgs),
    /// Run the built-in consistency suites.
    Selfcheck(SelfcheckArgs),
}

#[derive(Args)]
struct WeightArgs {
    /// Weight, e.g. "jacobi(0,0)*exp(-7*x^4)".
    #[arg(long)]
    weight: String,
    /// Number of correction terms T.
    #[arg(long, default_value_t = 4)]
    terms: usize,
    /// Contour ellipse parameter for the h coefficients.
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long, default_value_t = 0.2)]
    disk_radius: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Monic,
    Orthonormal,
    Derivative,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    w: WeightArgs,
    #[arg(long)]
    n: usize,
    /// "0.3,0.2+0.5i", "linspace(a,b,k)" or "grid(x0,x1,nx,y0,y1,ny)".
    #[arg(long, allow_hyphen_values = true)]
    points: String,
    /// auto, lens, outer, rightdisk, leftdisk, rightseries or leftseries.
    #[arg(long, default_value = "auto")]
    region: String,
    #[arg(long, value_enum, default_value_t = Kind::Monic)]
    kind: Kind,
}

#[derive(Args)]
struct CoeffsArgs {
    #[command(flatten)]
    w: WeightArgs,
    /// Highest Taylor index of the Q tables (default T + 10).
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
struct QuadArgs {
    #[command(flatten)]
    w: WeightArgs,
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct StudyArgs {
    #[arg(long)]
    weight: String,
    #[arg(long, allow_hyphen_values = true)]
    point: String,
    /// Term counts, "1..7" or a list.
    #[arg(long, default_value = "1..4")]
    terms: String,
    /// Degrees: "16..512" doubles from 16 up to 512; a list is taken as is.
    #[arg(long, default_value = "16..256")]
    n: String,
    #[arg(long, default_value = "auto")]
    region: String,
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long, default_value_t = 0.2)]
    disk_radius: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct SelfcheckArgs {
    /// Added to one table entry before the golden comparison.
    #[arg(long, hide = true, default_value_t = 0.0)]
    perturb_u: f64,
}

/// Failure classes with their exit codes.
enum Failure {
    Config(anyhow::Error),
    Numeric(anyhow::Error),
}

type Outcome<T> = std::result::Result<T, Failure>;

trait Classify<T> {
    fn config(self) -> Outcome<T>;
    fn numeric(self, op: &str) -> Outcome<T>;
}

impl<T, E: Into<anyhow::Error>> Classify<T> for std::result::Result<T, E> {
    fn config(self) -> Outcome<T> {
        self.map_err(|e| Failure::Config(e.into()))
    }
    fn numeric(self, op: &str) -> Outcome<T> {
        self.map_err(|e| Failure::Numeric(e.into().context(op.to_string())))
    }
}

/// 17 significant digits.
fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

fn engine_for(w: &WeightArgs, spec: WeightSpec) -> Outcome<Engine> {
    let opts = EngineOptions {
        terms: w.terms,
        disk_radius: w.disk_radius,
        contour: ContourParams { rho: w.rho, ..ContourParams::default() },
        ..EngineOptions::default()
    };
    match Engine::with_options(spec, opts) {
        Err(e @ rhjacobi::Error::InvalidParameter(_)) => Err(Failure::Config(e.into())),
        r => r.numeric("building the coefficient tables"),
    }
}

fn parse_weight(s: &str) -> Outcome<WeightSpec> {
    WeightSpec::parse(s).with_context(|| format!("weight '{s}'")).config()
}

fn run_eval(a: &EvalArgs, out: &mut impl Write) -> Outcome<()> {
    let spec = parse_weight(&a.w.weight)?;
    let pts = points::parse_points(&a.points).config()?;
    let region = Region::parse(&a.region).config()?;
    let engine = engine_for(&a.w, spec)?;
    let rows: Vec<_> = pts
        .par_iter()
        .map(|z| {
            let r = match a.kind {
                Kind::Monic => engine.eval_monic(a.n, *z, region),
                Kind::Orthonormal => engine.eval_orthonormal(a.n, *z, region),
                Kind::Derivative => engine.eval_derivative(a.n, *z, region),
            };
            r.with_context(|| format!("evaluating degree {} at {z}", a.n))
        })
        .collect();
    let rows = rows.into_iter().collect::<anyhow::Result<Vec<_>>>().numeric("eval")?;
    match a.w.format {
        Format::Csv => {
            writeln!(out, "point_re,point_im,value_re,value_im,region,terms").config()?;
            for (z, r) in pts.iter().zip(&rows) {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    fmt(z.re),
                    fmt(z.im),
                    fmt(r.value.re),
                    fmt(r.value.im),
                    r.region.name(),
                    r.terms_used
                )
                .config()?;
            }
        }
        Format::Json => {
            let items: Vec<_> = pts
                .iter()
                .zip(&rows)
                .map(|(z, r)| {
                    json!({
                        "point": [z.re, z.im],
                        "value": [r.value.re, r.value.im],
                        "mantissa": [r.mantissa.re, r.mantissa.im],
                        "log_scale": r.log_scale,
                        "region": r.region.name(),
                        "terms": r.terms_used,
                        "next_term_estimate": r.next_term_estimate,
                    })
                })
                .collect();
            writeln!(out, "{}", serde_json::Value::Array(items)).config()?;
        }
    }
    Ok(())
}

fn pairs(v: &[Complex64]) -> serde_json::Value {
    v.iter().map(|c| json!([c.re, c.im])).collect()
}

fn run_coeffs(a: &CoeffsArgs, out: &mut impl Write) -> Outcome<()> {
    let spec = parse_weight(&a.w.weight)?;
    let n_max = a.n.unwrap_or(a.w.terms + 10);
    let params = ContourParams { rho: a.w.rho, ..ContourParams::default() };
    let n_coef = rhjacobi::CoeffTable::required_coefficients(a.w.terms, n_max);
    let aux = AuxData::new(&spec, n_coef, &params).numeric("computing the h coefficients")?;
    let table = rhjacobi::CoeffTable::new(&aux, a.w.terms, n_max).numeric("building the coefficient tables")?;
    let table: serde_json::Value = serde_json::from_str(&table.to_json()).numeric("serializing tables")?;
    let doc = json!({
        "weight": spec.to_string(),
        "aux": {
            "alpha": aux.alpha,
            "beta": aux.beta,
            "dinf": aux.dinf,
            "rho": aux.rho_used,
            "contour_points": aux.m_used,
            "c": pairs(&aux.cn),
            "d": pairs(&aux.dn),
        },
        "table": table,
    });
    writeln!(out, "{doc}").config()
}

fn run_quad(a: &QuadArgs, out: &mut impl Write) -> Outcome<()> {
    let spec = parse_weight(&a.w.weight)?;
    let engine = engine_for(&a.w, spec)?;
    let rule = gauss_rule(&engine, a.n).numeric("quadrature rule")?;
    match a.w.format {
        Format::Csv => {
            writeln!(out, "node,weight").config()?;
            for (x, w) in rule.nodes.iter().zip(&rule.weights) {
                writeln!(out, "{},{}", fmt(*x), fmt(*w)).config()?;
            }
        }
        Format::Json => {
            writeln!(out, "{}", serde_json::to_string(&rule).numeric("serializing the rule")?).config()?;
        }
    }
    Ok(())
}

fn run_study(a: &StudyArgs, out: &mut impl Write) -> Outcome<()> {
    let spec = parse_weight(&a.weight)?;
    let z = points::parse_complex(&a.point).config()?;
    let terms = points::parse_usize_range(&a.terms).config()?;
    let degrees = points::parse_degree_range(&a.n).config()?;
    let region = Region::parse(&a.region).config()?;
    let n_top = degrees.iter().copied().max().unwrap_or(1);
    let table = oracle::stieltjes(&spec, n_top).numeric("recurrence oracle")?;
    let t_max = terms.iter().copied().max().unwrap_or(1);
    let w = WeightArgs { weight: a.weight.clone(), terms: t_max, rho: a.rho, disk_radius: a.disk_radius, format: a.format };
    let engine = engine_for(&w, spec)?;
    let jobs: Vec<(usize, usize)> = degrees.iter().flat_map(|&n| terms.iter().map(move |&t| (n, t))).collect();
    let rows: Vec<_> = jobs
        .par_iter()
        .map(|&(n, t)| -> anyhow::Result<f64> {
            let exact = oracle::eval_recurrence(&table, n, z)?;
            let got = engine.eval_monic_terms(n, z, region, t)?;
            Ok((got.value - exact).norm() / exact.norm())
        })
        .collect();
    let rows = rows.into_iter().collect::<anyhow::Result<Vec<_>>>().numeric("study")?;
    match a.format {
        Format::Csv => {
            writeln!(out, "n,terms,rel_error").config()?;
            for ((n, t), e) in jobs.iter().zip(&rows) {
                writeln!(out, "{n},{t},{}", fmt(*e)).config()?;
            }
        }
        Format::Json => {
            let items: Vec<_> =
                jobs.iter().zip(&rows).map(|((n, t), e)| json!({"n": n, "terms": t, "rel_error": e})).collect();
            writeln!(out, "{}", serde_json::Value::Array(items)).config()?;
        }
    }
    Ok(())
}

fn run_selfcheck(a: &SelfcheckArgs, out: &mut impl Write) -> Outcome<bool> {
    let reports = selfcheck::run(a.perturb_u);
    let mut ok = true;
    for r in &reports {
        let status = if r.passed() { "ok" } else { "FAIL" };
        writeln!(out, "{:<10} max_residual {:.2e}  tolerance {:.0e}  {status}", r.name, r.max_residual, r.tolerance)
            .config()?;
        for f in &r.failures {
            writeln!(out, "  failed: {f}").config()?;
        }
        ok &= r.passed();
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let res = match &cli.command {
        Command::Eval(a) => run_eval(a, &mut out).map(|_| true),
        Command::Coeffs(a) => run_coeffs(a, &mut out).map(|_| true),
        Command::Quad(a) => run_quad(a, &mut out).map(|_| true),
        Command::Study(a) => run_study(a, &mut out).map(|_| true),
        Command::Selfcheck(a) => run_selfcheck(a, &mut out),
    };
    let _ = out.flush();
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Config(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(e)) => {
            eprintln!("numerical failure: {e:#}");
            ExitCode::from(3)
        }
    }
}
