//! One function per subcommand. Each validates its parameters up front and
//! returns a [`Job`]: a plan for `--dry-run` and a closure doing the work.

use crate::config::Global;
use crate::Format;
use clap::Args;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::f64::consts::{LN_2, TAU};
use std::fmt;
use zplab_core::dirichlet::{coefficients, log_derivative_coefficients, zero_free_left_scan_window};
use zplab_core::eval::{evaluate_f, evaluate_with_error};
use zplab_core::export::fmt_f64;
use zplab_core::expr::Monomial;
use zplab_core::theorems::{Pipeline, TheoremId, Verdict, VerificationReport};
use zplab_core::zeros::{total_multiplicity, trivial_cluster_count, zeros_to_csv, FinderConfig, Rectangle, ZeroFinder};
use zplab_core::{parse_expression, Complex64, Error, FExpression};

/// Largest height accepted by the theorem pipelines.
const MAX_T: f64 = zplab_core::zeta::MAX_HEIGHT / 2.0;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Core(Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type Res<T> = Result<T, CliError>;

pub struct Output {
    pub json: Value,
    pub csv: String,
    pub failed: bool,
}

pub struct Job {
    pub plan: Value,
    pub default_format: Format,
    pub run: Box<dyn FnOnce(&Global) -> Res<Output>>,
}

fn progress(msg: &str) {
    eprintln!("zplab: {msg}");
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn expression(e: &Option<String>) -> Res<FExpression> {
    let text = e.as_deref().ok_or_else(|| bad("--expr is required"))?;
    Ok(parse_expression(text)?)
}

/// Parsed expression that also satisfies the `Σ_J c_j ≠ 0` hypothesis.
fn hypothesis_expression(e: &Option<String>) -> Res<FExpression> {
    let f = expression(e)?;
    f.degrees().require_condition()?;
    Ok(f)
}

fn check(ok: bool, msg: &str) -> Res<()> {
    if ok {
        Ok(())
    } else {
        Err(bad(msg))
    }
}

fn height(t: f64) -> Res<f64> {
    check((10.0..=MAX_T).contains(&t), &format!("T must lie in [10, {MAX_T}]"))?;
    Ok(t)
}

fn pair(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn finder_config(cfg: Option<FinderConfig>) -> Res<FinderConfig> {
    let cfg = cfg.unwrap_or_default();
    cfg.validate()?;
    Ok(cfg)
}

fn pipeline(f: &FExpression, cfg: FinderConfig, scan_epsilon: f64) -> Res<Pipeline> {
    progress("computing Dirichlet coefficients and the right zero-free abscissa");
    let mut p = Pipeline::new(f)?;
    p.finder = cfg;
    p.scan_epsilon = scan_epsilon;
    Ok(p)
}

const REPORT_HEADER: &str =
    "theorem_id,predicted_re,predicted_im,measured_re,measured_im,discrepancy,tolerance,verdict,zero_count,runtime_ms\n";

fn report_output(mut r: VerificationReport, g: &Global) -> Res<Output> {
    if g.no_timing {
        r.runtime_ms = 0;
    }
    let (p, m) = (quantity(r.predicted), quantity(r.measured));
    let verdict = match r.verdict {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Inconclusive => "inconclusive",
    };
    let csv = format!(
        "{REPORT_HEADER}{},{},{},{},{},{},{},{verdict},{},{}\n",
        r.theorem_id,
        fmt_f64(p.re),
        fmt_f64(p.im),
        fmt_f64(m.re),
        fmt_f64(m.im),
        fmt_f64(r.discrepancy),
        fmt_f64(r.tolerance),
        r.zero_count,
        r.runtime_ms
    );
    Ok(Output {
        json: serde_json::to_value(&r).map_err(|e| bad(e.to_string()))?,
        csv,
        failed: r.verdict == Verdict::Fail,
    })
}

fn quantity(q: zplab_core::theorems::Quantity) -> Complex64 {
    match q {
        zplab_core::theorems::Quantity::Real(x) => Complex64::new(x, 0.0),
        zplab_core::theorems::Quantity::Complex(z) => z,
    }
}

#[derive(Args, Serialize, Deserialize, Default, Debug)]
#[serde(deny_unknown_fields)]
pub struct EvalArgs {
    #[arg(long)]
    pub expr: Option<String>,
    /// A point "sigma,t"; repeat for several
    #[arg(long = "s", value_name = "SIGMA,T", allow_hyphen_values = true)]
    pub s: Option<Vec<String>>,
    /// Absolute error the value must be certified to; fails with exit 3 otherwise
    #[arg(long)]
    pub target: Option<f64>,
    /// Also evaluate F'
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub derivative: Option<bool>,
}

fn parse_point(p: &str) -> Res<Complex64> {
    let parts: Vec<&str> = p.split(',').map(str::trim).collect();
    let num = |x: &str| x.parse::<f64>().ok().filter(|v| v.is_finite());
    match parts.as_slice() {
        [s] => num(s).map(|s| Complex64::new(s, 0.0)),
        [s, t] => num(s).zip(num(t)).map(|(s, t)| Complex64::new(s, t)),
        _ => None,
    }
    .ok_or_else(|| bad(format!("point '{p}' is not of the form sigma,t")))
}

pub fn eval(a: EvalArgs) -> Res<Job> {
    let f = expression(&a.expr)?;
    let points = a.s.as_deref().unwrap_or_default().iter().map(|p| parse_point(p)).collect::<Res<Vec<_>>>()?;
    check(!points.is_empty(), "at least one --s point is required")?;
    for p in &points {
        check(p.im.abs() <= zplab_core::zeta::MAX_HEIGHT, "|t| must not exceed 1e5")?;
    }
    if let Some(t) = a.target {
        check(t >= zplab_core::zeta::MIN_TARGET, "--target must be at least 1e-13")?;
    }
    let with_d = a.derivative.unwrap_or(false);
    let plan = json!({
        "command": "eval",
        "expr": f.to_string(),
        "points": points.iter().map(|&p| pair(p)).collect::<Vec<_>>(),
        "target": a.target,
        "derivative": with_d,
    });
    let run = move |_: &Global| -> Res<Output> {
        let df = f.differentiate();
        let mut rows = Vec::new();
        let mut csv = String::from(if with_d { "sigma,t,re,im,error_bound,d_re,d_im\n" } else { "sigma,t,re,im,error_bound\n" });
        for s in points {
            let (mut v, err) = evaluate_with_error(&f, s)?;
            if let Some(target) = a.target {
                v = evaluate_f(&f, s, target)?;
            }
            let mut row = json!({ "s": pair(s), "value": pair(v), "error_bound": err });
            csv += &format!("{},{},{},{},{}", fmt_f64(s.re), fmt_f64(s.im), fmt_f64(v.re), fmt_f64(v.im), fmt_f64(err));
            if with_d {
                let (d, derr) = evaluate_with_error(&df, s)?;
                row["derivative"] = pair(d);
                row["derivative_error_bound"] = derr.into();
                csv += &format!(",{},{}", fmt_f64(d.re), fmt_f64(d.im));
            }
            csv.push('\n');
            rows.push(row);
        }
        Ok(Output { json: Value::Array(rows), csv, failed: false })
    };
    Ok(Job { plan, default_format: Format::Json, run: Box::new(run) })
}

#[derive(Args, Serialize, Deserialize, Default, Debug)]
#[serde(deny_unknown_fields)]
pub struct CoeffsArgs {
    #[arg(long)]
    pub expr: Option<String>,
    /// Number of coefficients
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub n: Option<usize>,
}

pub fn coeffs(a: CoeffsArgs) -> Res<Job> {
    let f = expression(&a.expr)?;
    let n = a.n.unwrap_or(100);
    check((2..=1 << 22).contains(&n), "N must lie in [2, 4194304]")?;
    let plan = json!({ "command": "coeffs", "expr": f.to_string(), "N": n });
    let run = move |_: &Global| -> Res<Output> {
        let c = coefficients(&f, n)?;
        let json = json!({
            "n_f": c.leading_index(),
            "leading": pair(c.leading()),
            "growth_bound": c.growth_bound(),
            "zero_threshold": c.zero_threshold(),
            "eta": c.etas().iter().map(|&e| pair(e)).collect::<Vec<_>>(),
        });
        Ok(Output { json, csv: c.to_csv(), failed: false })
    };
    Ok(Job { plan, default_format: Format::Csv, run: Box::new(run) })
}

#[derive(Args, Serialize, Deserialize, Default, Debug)]
#[serde(deny_unknown_fields)]
pub struct LogderivArgs {
    #[arg(long)]
    pub expr: Option<String>,
    /// Largest frequency d
    #[arg(long = "X")]
    #[serde(rename = "X")]
    pub x: Option<f64>,
}

pub fn logderiv(a: LogderivArgs) -> Res<Job> {
    let f = expression(&a.expr)?;
    let x = a.x.unwrap_or(10.0);
    check((1.0..=zplab_core::dirichlet::MAX_LATTICE_X).contains(&x), "X must lie in [1, 1000]")?;
    let plan = json!({ "command": "logderiv", "expr": f.to_string(), "X": x });
    let run = move |_: &Global| -> Res<Output> {
        let l = log_derivative_coefficients(&f, x)?;
        let entries: Vec<Value> = l.entries().map(|(d, v)| json!({ "d": d.to_string(), "value": pair(v) })).collect();
        let json = json!({
            "n_f": l.leading_index().to_string(),
            "depth": l.depth(),
            "X": l.truncation(),
            "entries": entries,
        });
        Ok(Output { json, csv: l.to_csv(), failed: false })
    };
    Ok(Job { plan, default_format: Format::Csv, run: Box::new(run) })
}

#[derive(Args, Serialize, Deserialize, Default, Debug)]
#[serde(deny_unknown_fields)]
pub struct DegreesArgs {
    #[arg(long)]
    pub expr: Option<String>,
}

pub fn degrees(a: DegreesArgs) -> Res<Job> {
    let f = expression(&a.expr)?;
    let plan = json!({ "command": "degrees", "expr": f.to_string() });
    let run = move |_: &Global| -> Res<Output> {
        let d = f.degrees();
        let j: Vec<String> = d
            .j
            .iter()
            .map(|&i| {
                let m = &f.monomials()[i];
                FExpression::new(vec![Monomial::new(Complex64::new(1.0, 0.0), m.exponents.clone())])
                    .map(|e| e.to_string())
                    .unwrap_or_default()
            })
            .collect();
        let json = json!({
            "deg1": d.deg1,
            "deg2": d.deg2,
            "J": j,
            "sumJ": pair(d.sum_j),
            "condition": d.condition_holds,
        });
        let csv = format!(
            "deg1,deg2,sumJ_re,sumJ_im,condition\n{},{},{},{},{}\n",
            d.deg1,
            d.deg2,
            fmt_f64(d.sum_j.re),
            fmt_f64(d.sum_j.im),
            d.condition_holds
        );
        Ok(Output { json, csv, failed: false })
    };
    Ok(Job { plan, default_format: Format::Json, run: Box::new(run) })
}

/// Explicit rectangle flags shared by `zeros` and `count`.
#[derive(Args, Serialize, Deserialize, Default, Debug, Clone, Copy)]
pub struct RectArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub sigma_lo: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub sigma_hi: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub t_lo: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub t_hi: Option<f64>,
}

impl RectArgs {
    fn rectangle(&self, cfg: &FinderConfig) -> Res<Option<Rectangle>> {
        match (self.sigma_lo, self.sigma_hi, self.t_lo, self.t_hi) {
            (None, None, None, None) => Ok(None),
            (Some(a), Some(b), Some(c), Some(d)) => {
                let r = Rectangle::new(a, b, c, d)?;
                if r.contains_pole() && !cfg.allow_pole {
                    return Err(Error::PoleInRectangle.into());
                }
                check(c.abs().max(d.abs()) <= zplab_core::zeta::MAX_HEIGHT, "|t| must not exceed 1e5")?;
                Ok(Some(r))
            }
            _ => Err(bad("give all of --sigma-lo, --sigma-hi, --t-lo, --t-hi or none")),
        }
    }
}

fn rect_json(r: &Rectangle) -> Value {
    json!({ "sigma_lo": r.sigma_lo, "sigma_hi": r.sigma_hi, "t_lo": r.t_lo, "t_hi": r.t_hi })
}

#[derive(Args, Serialize, Deserialize, Default, Debug)]
#[serde(deny_unknown_fields)]
pub struct ZerosArgs {
    #[arg(long)]
    pub expr: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    pub rect: RectArgs,
    /// Height for the default region [E1, E2] x [1, T]
    #[arg(long = "T")]
    #[serde(rename = "T")]
    pub t: Option<f64>,
    /// Zero-finder settings (config file only)
    #[arg(skip)]
    pub finder: Option<FinderConfig>,
}

pub fn zeros(a: ZerosArgs) -> Res<Job> {
    let cfg = finder_config(a.finder)?;
    let rect = a.rect.rectangle(&cfg)?;
    let f = if rect.is_some() { expression(&a.expr)? } else { hypothesis_expression(&a.expr)? };
    let t = match rect {
        Some(_) => None,
        None => Some(height(a.t.unwrap_or(50.0))?),
    };
    let plan = json!({
        "command": "zeros",
        "expr": f.to_string(),
        "region": rect.as_ref().map_or(json!(format!("[E1, E2] x [1, {}]", t.unwrap_or_default())), rect_json),
        "finder": cfg,
    });
    let run = move |_: &Global| -> Res<Output> {
        let (region, zs) = match rect {
            Some(r) => {
                progress(&format!("locating zeros in {r:?}"));
                (r, ZeroFinder::with_config(&f, cfg).locate_zeros(&r)?)
            }
            None => {
                let p = pipeline(&f, cfg, 0.5)?;
                progress("scanning for the left abscissa and locating zeros");
                let set = p.zeros(1.0, t.unwrap_or(50.0))?;
                (set.region, set.zeros)
            }
        };
        progress(&format!("{} zeros located", zs.len()));
        let json = json!({ "region": rect_json(&region), "count": total_multiplicity(&zs), "zeros": zs });
        Ok(Output { json, csv: zeros_to_csv(&zs), failed: false })
    };
    Ok(Job { plan, default_format: Format::Csv, run: Box::new(run) })
}

#[derive(Args, Serialize, Deserialize, Default, Debug)]
#[serde(deny_unknown_fields)]
pub struct CountArgs {
    #[arg(long)]
    pub expr: Option<String>,
    #[arg(long = "T")]
    #[serde(rename = "T")]
    pub t: Option<f64>,
    /// Tolerance constant: the count passes within C_tol log T
    #[arg(long)]
    pub c_tol: Option<f64>,
    #[command(flatten)]
    #[serde(flatten)]
    pub rect: RectArgs,
    #[arg(skip)]
    pub finder: Option<FinderConfig>,
}

pub fn count(a: CountArgs) -> Res<Job> {
    let cfg = finder_config(a.finder)?;
    if let Some(r) = a.rect.rectangle(&cfg)? {
        let f = expression(&a.expr)?;
        let plan = json!({ "command": "count", "expr": f.to_string(), "region": rect_json(&r) });
        let run = move |_: &Global| -> Res<Output> {
            progress(&format!("winding count over {r:?}"));
            let (n, used) = ZeroFinder::with_config(&f, cfg).winding_count_nudged(&r)?;
            let csv = format!("sigma_lo,sigma_hi,t_lo,t_hi,count\n{},{},{},{},{n}\n", fmt_f64(used.sigma_lo), fmt_f64(used.sigma_hi), fmt_f64(used.t_lo), fmt_f64(used.t_hi));
            Ok(Output { json: json!({ "region": rect_json(&used), "count": n }), csv, failed: false })
        };
        return Ok(Job { plan, default_format: Format::Json, run: Box::new(run) });
    }
    let f = hypothesis_expression(&a.expr)?;
    let t = height(a.t.unwrap_or(100.0))?;
    let c_tol = positive("c_tol", a.c_tol.unwrap_or(zplab_core::theorems::DEFAULT_COUNT_TOL))?;
    let plan = json!({ "command": "count", "expr": f.to_string(), "T": t, "C_tol": c_tol, "theorem": "T3" });
    let run = move |g: &Global| -> Res<Output> {
        let p = pipeline(&f, cfg, 0.5)?;
        progress(&format!("counting zeros with 1 < gamma < {t}"));
        report_output(p.verify_count(t, c_tol)?, g)
    };
    Ok(Job { plan, default_format: Format::Json, run: Box::new(run) })
}

fn positive(name: &str, v: f64) -> Res<f64> {
    check(v > 0.0 && v.is_finite(), &format!("{name} must be positive"))?;
    Ok(v)
}

fn epsilon(v: Option<f64>) -> Res<f64> {
    let e = v.unwrap_or(0.5);
    check(e > 0.0 && e < 1.0, "epsilon must lie in (0, 1)")?;
    Ok(e)
}

#[derive(Args, Serialize, Deserialize, Default, Debug)]
#[serde(deny_unknown_fields)]
pub struct ClusterArgs {
    #[arg(long)]
    pub expr: Option<String>,
    /// Disk center -2n
    #[arg(long)]
    pub n: Option<u32>,
    /// Scan n, n+1, ..., n_max
    #[arg(long)]
    pub n_max: Option<u32>,
    #[arg(long)]
    pub epsilon: Option<f64>,
}

pub fn cluster(a: ClusterArgs) -> Res<Job> {
    let f = expression(&a.expr)?;
    let n = a.n.unwrap_or(30);
    let n_max = a.n_max.unwrap_or(n);
    check(n >= 1 && n_max >= n && n_max - n <= 1000, "need 1 <= n <= n_max <= n + 1000")?;
    check(n_max <= 2000, "n must not exceed 2000")?;
    let eps = epsilon(a.epsilon)?;
    let plan = json!({ "command": "cluster", "expr": f.to_string(), "n": [n, n_max], "epsilon": eps });
    let run = move |_: &Global| -> Res<Output> {
        let deg1 = f.degrees().deg1;
        let mut rows = Vec::new();
        let mut csv = String::from("n,epsilon,count,deg1\n");
        for k in n..=n_max {
            let c = trivial_cluster_count(&f, k, eps)?;
            csv += &format!("{k},{},{c},{deg1}\n", fmt_f64(eps));
            rows.push(json!({ "n": k, "epsilon": eps, "count": c, "deg1": deg1 }));
        }
        Ok(Output { json: Value::Array(rows), csv, failed: false })
    };
    Ok(Job { plan, default_format: Format::Json, run: Box::new(run) })
}

#[derive(Args, Serialize, Deserialize, Default, Debug)]
#[serde(deny_unknown_fields)]
pub struct ZerofreeArgs {
    #[arg(long)]
    pub expr: Option<String>,
    /// Radius of the disks around -2n left out of the scan
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Scan heights 1 <= t <= T
    #[arg(long = "T")]
    #[serde(rename = "T")]
    pub t: Option<f64>,
    /// Leftmost scan column; chosen adaptively when absent
    #[arg(long, allow_negative_numbers = true)]
    pub sigma_min: Option<f64>,
}

pub fn zerofree(a: ZerofreeArgs) -> Res<Job> {
    let f = hypothesis_expression(&a.expr)?;
    let eps = epsilon(a.epsilon)?;
    let t = height(a.t.unwrap_or(50.0))?;
    if let Some(s) = a.sigma_min {
        check((zplab_core::dirichlet::MIN_SCAN_SIGMA..0.0).contains(&s), "sigma_min must lie in [-200, 0)")?;
    }
    let plan = json!({ "command": "zerofree", "expr": f.to_string(), "epsilon": eps, "T": t, "sigma_min": a.sigma_min });
    let run = move |_: &Global| -> Res<Output> {
        let p = pipeline(&f, FinderConfig::default(), eps)?;
        progress("scanning columns for the left abscissa");
        let e1 = match a.sigma_min {
            Some(s) => zero_free_left_scan_window(&f, s, eps, 1.0, t)?,
            None => p.left_abscissa(1.0, t)?,
        };
        let json = json!({
            "e2f": p.e2f(),
            "e1f_scan": e1,
            "epsilon": eps,
            "t_window": [1.0, t],
            "right": "certified by the coefficient tail bound",
            "left": "empirical grid scan",
        });
        let csv = format!("e2f,e1f_scan,epsilon,t_lo,t_hi\n{},{},{},1,{}\n", fmt_f64(p.e2f()), fmt_f64(e1), fmt_f64(eps), fmt_f64(t));
        Ok(Output { json, csv, failed: false })
    };
    Ok(Job { plan, default_format: Format::Json, run: Box::new(run) })
}

#[derive(Args, Serialize, Deserialize, Default, Debug)]
#[serde(deny_unknown_fields)]
pub struct VerifyArgs {
    #[arg(long)]
    pub expr: Option<String>,
    /// T1, T2, T3, T4, T5, T6 or C7
    #[arg(long)]
    pub theorem: Option<String>,
    #[arg(long = "T")]
    #[serde(rename = "T")]
    pub t: Option<f64>,
    /// Window length for T4 and T5 (defaults to T)
    #[arg(long = "U")]
    #[serde(rename = "U")]
    pub u: Option<f64>,
    /// Power-sum base for T6
    #[arg(long)]
    pub x: Option<f64>,
    /// Distance from the critical line for T5
    #[arg(long)]
    pub delta: Option<f64>,
    /// Disk radius for T1 and T2
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Trivial-zero index for T2
    #[arg(long)]
    pub n: Option<u32>,
    /// Scale for C7
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Largest Weyl frequency for C7
    #[arg(long)]
    pub m_max: Option<u32>,
    /// Tolerance constant; the default depends on the theorem
    #[arg(long)]
    pub c_tol: Option<f64>,
    #[arg(skip)]
    pub finder: Option<FinderConfig>,
}

struct Verify {
    id: TheoremId,
    t: f64,
    u: f64,
    x: f64,
    delta: f64,
    eps: f64,
    n: u32,
    alpha: f64,
    m_max: u32,
    c_tol: f64,
}

impl Verify {
    fn from_args(a: &VerifyArgs, id: TheoremId) -> Res<Self> {
        use zplab_core::theorems::*;
        let t = height(a.t.unwrap_or(if id == TheoremId::C7 { 500.0 } else { 100.0 }))?;
        let u = positive("U", a.u.unwrap_or(t))?;
        check(t + u <= MAX_T, "T + U exceeds the supported height")?;
        let x = a.x.unwrap_or(2.0);
        check(x > 1.0 && x <= zplab_core::dirichlet::MAX_LATTICE_X, "x must lie in (1, 1000]")?;
        let alpha = a.alpha.unwrap_or(LN_2 / TAU);
        check(alpha != 0.0 && alpha.is_finite(), "alpha must be a non-zero real")?;
        let m_max = a.m_max.unwrap_or(10);
        check((1..=10_000).contains(&m_max), "m_max must lie in [1, 10000]")?;
        let n = a.n.unwrap_or(30);
        check((1..=2000).contains(&n), "n must lie in [1, 2000]")?;
        let default_tol = match id {
            TheoremId::T1 | TheoremId::T2 => 0.0,
            TheoremId::T3 => DEFAULT_COUNT_TOL,
            TheoremId::T4 => DEFAULT_BETA_TOL,
            TheoremId::T5 => DEFAULT_CLUSTER_TOL,
            TheoremId::T6 => DEFAULT_POWER_TOL,
            TheoremId::C7 => DEFAULT_WEYL_TOL,
        };
        Ok(Verify {
            id,
            t,
            u,
            x,
            delta: positive("delta", a.delta.unwrap_or(0.05))?,
            eps: epsilon(a.epsilon)?,
            n,
            alpha,
            m_max,
            c_tol: a.c_tol.map_or(Ok(default_tol), |c| positive("c_tol", c))?,
        })
    }

    fn plan(&self) -> Value {
        let mut p = json!({ "theorem": self.id.to_string(), "T": self.t, "C_tol": self.c_tol });
        let extra: &[(&str, Value)] = match self.id {
            TheoremId::T1 => &[],
            TheoremId::T2 => &[("n", json!(self.n)), ("epsilon", json!(self.eps))],
            TheoremId::T3 => &[],
            TheoremId::T4 => &[("U", json!(self.u))],
            TheoremId::T5 => &[("U", json!(self.u)), ("delta", json!(self.delta))],
            TheoremId::T6 => &[("x", json!(self.x))],
            TheoremId::C7 => &[("alpha", json!(self.alpha)), ("m_max", json!(self.m_max))],
        };
        for (k, v) in extra {
            p[*k] = v.clone();
        }
        p
    }

    fn run(&self, p: &Pipeline) -> Res<VerificationReport> {
        let zeros = |lo: f64, hi: f64| {
            progress(&format!("locating zeros with {lo} < gamma < {hi}"));
            p.zeros(lo, hi)
        };
        Ok(match self.id {
            TheoremId::T1 => p.verify_zero_free(self.t)?,
            TheoremId::T2 => p.verify_trivial_cluster(self.n, self.eps)?,
            TheoremId::T3 => p.verify_count(self.t, self.c_tol)?,
            TheoremId::T4 => p.verify_beta_sum(&zeros(self.t, self.t + self.u)?, self.t, self.u, self.c_tol)?,
            TheoremId::T5 => p.verify_clustering(&zeros(self.t, self.t + self.u)?, self.t, self.u, self.delta, self.c_tol)?,
            TheoremId::T6 => p.verify_power_sum(&zeros(1.0, self.t)?, self.x, self.t, self.c_tol)?,
            TheoremId::C7 => p.verify_equidistribution(&zeros(1.0, self.t)?, self.t, self.alpha, self.m_max, self.c_tol)?.0,
        })
    }
}

fn verify_job(command: &str, a: VerifyArgs, id: TheoremId) -> Res<Job> {
    let f = hypothesis_expression(&a.expr)?;
    let cfg = finder_config(a.finder)?;
    let v = Verify::from_args(&a, id)?;
    let mut plan = v.plan();
    plan["command"] = command.into();
    plan["expr"] = f.to_string().into();
    let run = move |g: &Global| -> Res<Output> {
        let p = pipeline(&f, cfg, v.eps)?;
        report_output(v.run(&p)?, g)
    };
    Ok(Job { plan, default_format: Format::Json, run: Box::new(run) })
}

pub fn verify(a: VerifyArgs) -> Res<Job> {
    let id: TheoremId = a.theorem.as_deref().ok_or_else(|| bad("--theorem is required"))?.parse()?;
    verify_job("verify", a, id)
}

#[derive(Args, Serialize, Deserialize, Default, Debug)]
#[serde(deny_unknown_fields)]
pub struct PowersumArgs {
    #[arg(long)]
    pub expr: Option<String>,
    #[arg(long)]
    pub x: Option<f64>,
    #[arg(long = "T")]
    #[serde(rename = "T")]
    pub t: Option<f64>,
    #[arg(long)]
    pub c_tol: Option<f64>,
    #[arg(skip)]
    pub finder: Option<FinderConfig>,
}

pub fn powersum(a: PowersumArgs) -> Res<Job> {
    let args = VerifyArgs { expr: a.expr, t: a.t, x: a.x, c_tol: a.c_tol, finder: a.finder, ..Default::default() };
    verify_job("powersum", args, TheoremId::T6)
}

#[derive(Args, Serialize, Deserialize, Default, Debug)]
#[serde(deny_unknown_fields)]
pub struct EquidistArgs {
    #[arg(long)]
    pub expr: Option<String>,
    #[arg(long = "T")]
    #[serde(rename = "T")]
    pub t: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub m_max: Option<u32>,
    /// Largest acceptable |S_m|
    #[arg(long)]
    pub c_tol: Option<f64>,
    #[arg(skip)]
    pub finder: Option<FinderConfig>,
}

pub fn equidist(a: EquidistArgs) -> Res<Job> {
    let f = hypothesis_expression(&a.expr)?;
    let cfg = finder_config(a.finder)?;
    let args = VerifyArgs { t: a.t, alpha: a.alpha, m_max: a.m_max, c_tol: a.c_tol, ..Default::default() };
    let v = Verify::from_args(&args, TheoremId::C7)?;
    let mut plan = v.plan();
    plan["command"] = "equidist".into();
    plan["expr"] = f.to_string().into();
    let run = move |g: &Global| -> Res<Output> {
        let p = pipeline(&f, cfg, 0.5)?;
        progress(&format!("locating zeros with 1 < gamma < {}", v.t));
        let zs = p.zeros(1.0, v.t)?;
        let (r, w) = p.verify_equidistribution(&zs, v.t, v.alpha, v.m_max, v.c_tol)?;
        let mut csv = String::from("m,re,im,abs\n");
        for (m, s) in w.weyl_sums.iter().enumerate() {
            csv += &format!("{},{},{},{}\n", m + 1, fmt_f64(s.re), fmt_f64(s.im), fmt_f64(s.norm()));
        }
        let report = report_output(r, g)?;
        let json = json!({ "report": report.json, "weyl": w });
        Ok(Output { json, csv, failed: report.failed })
    };
    Ok(Job { plan, default_format: Format::Json, run: Box::new(run) })
}
