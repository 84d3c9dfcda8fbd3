//! Command-line front end for the `slelong` toolkit.

pub mod figure;
pub mod io;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};
use slelong_core::analysis::{
    classify, decay_demo, example41, taylor_coefficients, verify_corollaries, Classification, ClassifyOptions,
    CoefficientWindow, DecayOptions, Example41Params, Nodes,
};
use slelong_core::cones::{theorem_cone, Cone};
use slelong_core::field::parse_rational;
use slelong_core::geometry::shapes;
use slelong_core::geometry::{lattice_gap, Arith, Polytope};
use slelong_core::integrals::{finiteness_lp, monomial_norm_closed_form, quadrature_norm, QuadratureBudget, Status, WeightSpec};
use slelong_core::random::{random_polygon, rng};

pub use figure::{emit_figure, FigureData, FigurePart, FigureSpec};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{field}: {message}")]
    Input { field: String, message: String },
    #[error(transparent)]
    Core(#[from] slelong_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn input(field: &str, message: impl Into<String>) -> Self {
        CliError::Input {
            field: field.to_string(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "slelong", version, about = "Weighted L² finiteness of monomials and Γ-hulls of polytopes")]
pub struct Cli {
    /// Decide membership questions in exact rational arithmetic.
    #[arg(long, global = true)]
    pub exact: bool,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write artifacts into this directory instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

/// Problem description shared by the table and report subcommands.
#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Polytope JSON file.
    #[arg(long)]
    pub polytope: PathBuf,
    #[arg(short, long)]
    pub m: u64,
    #[arg(long, default_value_t = 0.0)]
    pub gamma: f64,
    /// `auto` for the theorem cone, otherwise a cone JSON file.
    #[arg(long, default_value = "auto")]
    pub cone: String,
    /// Lattice units beyond the bounding box; default depends on the hull.
    #[arg(long)]
    pub margin: Option<f64>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.m == 0 {
            return Err(CliError::input("m", "must be at least 1"));
        }
        if !(self.gamma >= 0.0) {
            return Err(CliError::input("gamma", "must be nonnegative"));
        }
        if let Some(x) = self.margin {
            if !(x >= 0.0) {
                return Err(CliError::input("margin", "must be nonnegative"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Closed,
    Quad,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify lattice exponents near m·S (CSV).
    Classify(RunConfig),
    /// Check the hull theorem and its corollaries (JSON; exit 1 on FAIL).
    Verify {
        #[command(flatten)]
        config: RunConfig,
        /// Polyhedral cone JSON for the Λ-convexity case.
        #[arg(long)]
        lambda: Option<PathBuf>,
    },
    /// The quadrilateral counterexample: four cell integrals and cross-checks.
    Example41 {
        #[arg(short, long)]
        m: u64,
        #[arg(short)]
        a: String,
        #[arg(short)]
        b: String,
        #[arg(short)]
        k: i64,
        #[arg(long, default_value_t = 1e-8)]
        rel_tol: f64,
    },
    /// Weighted L² norm of a monomial.
    Norm {
        #[arg(long)]
        polytope: PathBuf,
        #[arg(short, long)]
        m: u64,
        #[arg(long, default_value_t = 0.0)]
        gamma: f64,
        #[arg(long)]
        alpha: String,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Taylor coefficients of a polynomial by averaging over a polyannulus.
    Coeff {
        /// Polynomial JSON file.
        #[arg(long)]
        poly: PathBuf,
        /// Comma-separated exponent; all listed terms when omitted.
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        tau: String,
    },
    /// Coefficient bound curve for an exponent outside the hull.
    Decay {
        #[command(flatten)]
        config: RunConfig,
        #[arg(long)]
        alpha: String,
        /// Norm of f multiplying the bound.
        #[arg(long, default_value_t = 1.0)]
        norm: f64,
    },
    /// SVG of m·S with its hull, the normal fan and Γ.
    Figure {
        #[arg(long, conflicts_with = "quad")]
        polytope: Option<PathBuf>,
        /// The quadrilateral ch{0, (a,0), (b,1−b), (0,1)} given as `a,b`.
        #[arg(long)]
        quad: Option<String>,
        #[arg(short, long)]
        m: u64,
        #[arg(long, default_value_t = 0.0)]
        gamma: f64,
        #[arg(long, default_value = "auto")]
        cone: String,
        #[arg(long, value_enum, default_value_t = FigurePart::All)]
        what: FigurePart,
        #[arg(long, default_value_t = 60.0)]
        scale: f64,
        #[arg(long)]
        no_annotations: bool,
    },
    /// Theorem check over seeded random polygons (CSV; exit 1 on FAIL).
    Suite {
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 5)]
        max_m: u64,
    },
    /// Polytope JSON for a built-in shape: square, simplex N, segment END, quad A B.
    Shape {
        name: String,
        params: Vec<String>,
    },
}

/// What a subcommand produced: the artifact text, its file name, and whether
/// a verification passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub file_name: String,
    pub text: String,
    pub pass: bool,
}

impl Outcome {
    fn ok(file_name: &str, text: String) -> Self {
        Self {
            file_name: file_name.to_string(),
            text,
            pass: true,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_polytope(path: &Path) -> Result<Polytope, CliError> {
    io::parse_polytope(&read(path)?)
}

fn arith(exact: bool) -> Arith {
    if exact {
        Arith::Exact
    } else {
        Arith::Auto
    }
}

fn resolve_cone(spec: &str, s: &Polytope, m: u64, gamma: f64, exact: bool) -> Result<Cone, CliError> {
    if spec == "auto" {
        let d = lattice_gap(s, m, arith(exact))?.distance;
        Ok(Cone::Angular(theorem_cone(s.dim(), d, gamma)?))
    } else {
        io::parse_cone(&read(Path::new(spec))?, s.dim())
    }
}

fn with_schema<T: Serialize>(value: &T) -> String {
    let mut v = serde_json::to_value(value).expect("serializable report");
    if let Value::Object(map) = &mut v {
        map.insert("schema_version".into(), json!(SCHEMA_VERSION));
    }
    let mut text = serde_json::to_string_pretty(&v).expect("serializable report");
    text.push('\n');
    text
}

fn parse_alpha(text: &str, dim: usize) -> Result<Vec<i64>, CliError> {
    let a: Vec<i64> = io::parse_list(text, "alpha")?;
    if a.len() != dim || a.iter().any(|&v| v < 0) {
        return Err(CliError::input("alpha", format!("expected {dim} nonnegative integers")));
    }
    Ok(a)
}

fn classify_options(config: &RunConfig, s: &Polytope, exact: bool) -> Result<ClassifyOptions, CliError> {
    Ok(ClassifyOptions {
        cone: Some(resolve_cone(&config.cone, s, config.m, config.gamma, exact)?),
        margin: config.margin,
        arith: arith(exact),
        ..Default::default()
    })
}

fn hull_text(row: &slelong_core::analysis::ExponentClassification) -> String {
    match row.in_hull() {
        Some(true) => "inside".into(),
        Some(false) => "outside".into(),
        None => "boundary".into(),
    }
}

fn status_text(s: Status) -> &'static str {
    match s {
        Status::Finite => "finite",
        Status::Divergent => "divergent",
        Status::Marginal => "marginal",
    }
}

pub fn classification_csv(table: &Classification) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["alpha", "in_ms", "hull", "status", "max_face", "distance"])
        .expect("in-memory write");
    for r in &table.rows {
        let alpha: Vec<String> = r.alpha.iter().map(i64::to_string).collect();
        w.write_record([
            alpha.join(" "),
            r.in_ms.to_string(),
            hull_text(r),
            status_text(r.finite.status).to_string(),
            format!("{:.12e}", r.finite.max),
            format!("{:.12e}", r.distance),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn quad_params(text: &str) -> Result<(String, String), CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => Ok((a.to_string(), b.to_string())),
        _ => Err(CliError::input("quad", "expected `a,b`")),
    }
}

fn shape(name: &str, params: &[String]) -> Result<Polytope, CliError> {
    let q = |i: usize| -> Result<_, CliError> {
        let s = params
            .get(i)
            .ok_or_else(|| CliError::input("params", format!("{name} needs more parameters")))?;
        parse_rational(s).map_err(|e| CliError::input("params", e.to_string()))
    };
    match name {
        "square" => Ok(shapes::unit_square()),
        "simplex" => {
            let n: usize = params
                .first()
                .map(|s| s.parse())
                .transpose()
                .map_err(|_| CliError::input("params", "simplex dimension must be an integer"))?
                .unwrap_or(2);
            if n == 0 {
                return Err(CliError::input("params", "simplex dimension must be positive"));
            }
            Ok(shapes::standard_simplex(n))
        }
        "segment" => {
            let end = q(0)?;
            Ok(Polytope::from_rational(1, vec![vec![num_rational::BigRational::from_integer(0.into())], vec![end]])?)
        }
        "quad" => Ok(shapes::quadrilateral(&q(0)?, &q(1)?)?),
        other => Err(CliError::input("name", format!("unknown shape {other:?}"))),
    }
}

#[derive(Serialize)]
struct VerifyReport {
    pass: bool,
    theorem: slelong_core::analysis::TheoremReport,
    corollaries: CorollarySummary,
}

#[derive(Serialize)]
struct CorollarySummary {
    lower_set: bool,
    lambda_convex: Option<bool>,
    lambda_note: Option<String>,
    same_lattice_points: bool,
    applies: bool,
    strengthened_pass: Option<bool>,
    violations: Vec<Vec<i64>>,
}

/// Executes one subcommand and returns its artifact.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Classify(config) => {
            config.validate()?;
            let s = load_polytope(&config.polytope)?;
            let opts = classify_options(config, &s, cli.exact)?;
            let table = classify(&s, config.m, config.gamma, &opts)?;
            Ok(Outcome::ok("classify.csv", classification_csv(&table)))
        }
        Command::Verify { config, lambda } => {
            config.validate()?;
            let s = load_polytope(&config.polytope)?;
            let opts = classify_options(config, &s, cli.exact)?;
            let lambda = match lambda {
                Some(p) => match io::parse_cone(&read(p)?, s.dim())? {
                    Cone::Polyhedral(c) => Some(c),
                    Cone::Angular(_) => return Err(CliError::input("lambda", "expected a polyhedral cone")),
                },
                None => None,
            };
            let rep = verify_corollaries(&s, config.m, config.gamma, lambda.as_ref(), &opts)?;
            let pass = rep.theorem.pass && rep.strengthened_pass != Some(false);
            let report = VerifyReport {
                pass,
                corollaries: CorollarySummary {
                    lower_set: rep.lower_set,
                    lambda_convex: rep.lambda_convex,
                    lambda_note: rep.lambda_note,
                    same_lattice_points: rep.same_lattice_points,
                    applies: rep.applies,
                    strengthened_pass: rep.strengthened_pass,
                    violations: rep.violations,
                },
                theorem: rep.theorem,
            };
            Ok(Outcome {
                file_name: "verify.json".into(),
                text: with_schema(&report),
                pass,
            })
        }
        Command::Example41 { m, a, b, k, rel_tol } => {
            let p = Example41Params::parse(*m, a, b, *k)?;
            let budget = QuadratureBudget {
                rel_tol: *rel_tol,
                ..Default::default()
            };
            let rep = example41(&p, budget)?;
            Ok(Outcome::ok("example41.json", with_schema(&rep)))
        }
        Command::Norm {
            polytope,
            m,
            gamma,
            alpha,
            method,
        } => {
            let s = load_polytope(polytope)?;
            let alpha = parse_alpha(alpha, s.dim())?;
            if *m == 0 {
                return Err(CliError::input("m", "must be at least 1"));
            }
            if *method == Method::Closed && *gamma != 0.0 {
                return Err(CliError::input("method", "the closed form needs gamma = 0"));
            }
            let w = WeightSpec::new(s, *m, *gamma)?;
            let verdict = finiteness_lp(&w, &alpha)?;
            let closed = if *gamma == 0.0 && *method != Method::Quad {
                Some(monomial_norm_closed_form(&w, &alpha)?)
            } else {
                None
            };
            let quad = if *method != Method::Closed && verdict.is_finite() {
                Some(quadrature_norm(&w, &alpha, QuadratureBudget::default())?)
            } else {
                None
            };
            let value = match (&closed, &quad) {
                (Some(c), _) => c.value,
                (None, Some(q)) => q.value,
                (None, None) => f64::INFINITY,
            };
            let report = json!({
                "alpha": alpha,
                "m": m,
                "gamma": gamma,
                "status": verdict.status,
                "value": if value.is_finite() { json!(value) } else { json!("inf") },
                "per_cone": closed.as_ref().map(|c| &c.cells),
                "witness": closed
                    .as_ref()
                    .and_then(|c| c.witness.as_ref())
                    .map(|w| json!(w))
                    .or_else(|| verdict.witness.as_ref().map(|w| json!({ "direction": w }))),
                "verdict": verdict,
                "quadrature": quad,
            });
            Ok(Outcome::ok("norm.json", with_schema(&report)))
        }
        Command::Coeff { poly, alpha, sigma, tau } => {
            let f = io::parse_polynomial(&read(poly)?)?;
            let window = CoefficientWindow::new(io::parse_list(sigma, "sigma")?, io::parse_list(tau, "tau")?)
                .map_err(|e| CliError::input("sigma", e.to_string()))?;
            if window.dim() != f.dim {
                return Err(CliError::input("sigma", format!("expected {} entries", f.dim)));
            }
            let alphas = match alpha {
                Some(a) => vec![parse_alpha(a, f.dim)?],
                None => f.terms.keys().cloned().collect(),
            };
            let mut deg = f.degrees();
            for a in &alphas {
                for (d, &v) in deg.iter_mut().zip(a) {
                    *d = (*d).max(v);
                }
            }
            let nodes = Nodes::for_degrees(&deg);
            let coeffs = taylor_coefficients(|z: &[Complex64]| f.eval(z), &alphas, &window, &nodes)?;
            let rows: Vec<Value> = alphas
                .iter()
                .zip(coeffs)
                .map(|(a, c)| json!({ "alpha": a, "re": c.re, "im": c.im }))
                .collect();
            let report = json!({ "window": window, "coefficients": rows });
            Ok(Outcome::ok("coeff.json", with_schema(&report)))
        }
        Command::Decay { config, alpha, norm } => {
            config.validate()?;
            let s = load_polytope(&config.polytope)?;
            let alpha = parse_alpha(alpha, s.dim())?;
            let opts = DecayOptions {
                norm: *norm,
                cone: Some(resolve_cone(&config.cone, &s, config.m, config.gamma, cli.exact)?),
                arith: arith(cli.exact),
                ..Default::default()
            };
            let curve = decay_demo(&s, config.m, config.gamma, &alpha, &opts)?;
            Ok(Outcome {
                file_name: "decay.json".into(),
                pass: curve.decays(),
                text: with_schema(&curve),
            })
        }
        Command::Figure {
            polytope,
            quad,
            m,
            gamma,
            cone,
            what,
            scale,
            no_annotations,
        } => {
            if *m == 0 {
                return Err(CliError::input("m", "must be at least 1"));
            }
            let (s, labels) = match (polytope, quad) {
                (Some(p), None) => (load_polytope(p)?, None),
                (None, Some(q)) => {
                    let (a, b) = quad_params(q)?;
                    let p = Example41Params::parse(*m, &a, &b, 1)?;
                    let s = p.polytope()?;
                    let labels = s
                        .vertices()
                        .iter()
                        .map(|v| match (v[0] == 0.0, v[1] == 0.0) {
                            (true, true) => "(0, 0)".to_string(),
                            (true, false) => "(0, m)".to_string(),
                            (false, true) => "(ma, 0)".to_string(),
                            (false, false) => "(mb, m(1−b))".to_string(),
                        })
                        .collect();
                    (s, Some(labels))
                }
                _ => return Err(CliError::input("polytope", "give --polytope or --quad")),
            };
            if s.dim() != 2 {
                return Err(slelong_core::Error::NotTwoDimensional(s.dim()).into());
            }
            let cone = resolve_cone(cone, &s, *m, *gamma, cli.exact)?;
            let spec = FigureSpec {
                what: *what,
                scale: *scale,
                annotations: !no_annotations,
            };
            let data = FigureData {
                polytope: s,
                m: *m,
                cone: Some(cone),
                labels,
            };
            Ok(Outcome::ok("figure.svg", emit_figure(&spec, &data)?))
        }
        Command::Suite { count, max_m } => {
            let mut r = rng(cli.seed);
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["index", "m", "gamma", "d_m", "rows", "finite", "hull_gain", "violations", "boundary", "pass"])
                .expect("in-memory write");
            let mut pass = true;
            for i in 0..*count {
                let s = random_polygon(&mut r);
                for m in 1..=*max_m {
                    let d = lattice_gap(&s, m, Arith::Exact)?.distance;
                    for gamma in [0.0, d / 2.0] {
                        let opts = ClassifyOptions {
                            arith: arith(cli.exact),
                            ..Default::default()
                        };
                        let table = classify(&s, m, gamma, &opts)?;
                        let rep = slelong_core::analysis::theorem_report(&table);
                        pass &= rep.pass;
                        w.write_record([
                            i.to_string(),
                            m.to_string(),
                            format!("{gamma:.12e}"),
                            format!("{:.12e}", rep.d_m),
                            rep.rows.to_string(),
                            rep.finite.to_string(),
                            rep.finite_outside_ms.len().to_string(),
                            rep.violations.len().to_string(),
                            rep.boundary.len().to_string(),
                            rep.pass.to_string(),
                        ])
                        .expect("in-memory write");
                    }
                }
            }
            let text = String::from_utf8(w.into_inner().expect("flush")).expect("utf-8");
            Ok(Outcome {
                file_name: "suite.csv".into(),
                text,
                pass,
            })
        }
        Command::Shape { name, params } => {
            let s = shape(name, params)?;
            let mut text = serde_json::to_string_pretty(&io::polytope_json(&s)).expect("json");
            text.push('\n');
            Ok(Outcome::ok("polytope.json", text))
        }
    }
}

/// Caps the rayon pool at `SLELONG_THREADS` workers when set.
pub fn init_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("SLELONG_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::input("SLELONG_THREADS", "expected a positive integer"))?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::input("SLELONG_THREADS", e.to_string()))?;
    #[cfg(not(feature = "parallel"))]
    let _ = n;
    Ok(())
}

/// Writes the artifact to `out` (or stdout) and maps the outcome to an exit code.
pub fn finish(cli: &Cli, outcome: &Outcome) -> Result<i32, CliError> {
    match &cli.out {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
                path: dir.display().to_string(),
                source,
            })?;
            let path = dir.join(&outcome.file_name);
            std::fs::write(&path, &outcome.text).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            println!("{}", path.display());
        }
        None => print!("{}", outcome.text),
    }
    Ok(outcome.exit_code())
}
