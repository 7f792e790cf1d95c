//! One function per subcommand, each producing an [`OutputRecord`].

use std::f64::consts::PI;

use clap::Args;
use num_complex::Complex64 as C64;
use ultraradical::{
    convergence_radius, master_series_eval, merged_series_eval, solver_aabbc, solver_abc, super_master_eval, ultra,
    Error, MasterParams, MergeOptions, RadiusKind, RootReport, SeriesEval, SeriesOptions, SolveOptions, TrinomialEq,
};

use crate::output::{Fields, OutputRecord};
use crate::parse::{parse_complex, parse_complex_list, parse_keyed, parse_n_list, Num};

#[derive(Debug)]
pub enum CmdError {
    /// Exit code 2.
    Usage(String),
    /// Exit code 3.
    Numeric(String),
}

impl CmdError {
    pub fn code(&self) -> i32 {
        match self {
            CmdError::Usage(_) => 2,
            CmdError::Numeric(_) => 3,
        }
    }
}

impl std::fmt::Display for CmdError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CmdError::Usage(m) | CmdError::Numeric(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CmdError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::InvalidOptions(_)
            | Error::NonFinite(_)
            | Error::ZeroExponent
            | Error::NoRootForIndex { .. }
            | Error::DegenerateEquation(_)
            | Error::ForbiddenC
            | Error::OutOfDomain(_)
            | Error::NormalizedNeedsPrincipal => CmdError::Usage(msg),
            _ => CmdError::Numeric(msg),
        }
    }
}

type CmdResult = Result<OutputRecord, CmdError>;

fn num(flag: &str, s: &str) -> Result<Num, CmdError> {
    parse_complex(s).map_err(|e| CmdError::Usage(format!("--{flag}: {e}")))
}

fn val(flag: &str, s: &str) -> Result<C64, CmdError> {
    num(flag, s).map(|n| n.value)
}

fn eval_fields(f: Fields, e: &SeriesEval) -> Fields {
    f.put("terms_used", e.terms_used).put("status", e.status.to_string())
}

#[derive(Debug, Args)]
pub struct RadiusArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
}

pub fn radius(args: &RadiusArgs) -> CmdResult {
    let (a, b) = (val("a", &args.a)?, val("b", &args.b)?);
    let mut rec = OutputRecord::new("radius", Fields::new().put("a", args.a.trim()).put("b", args.b.trim()));
    let rad = convergence_radius(a, b);
    rec.results.push(Fields::new().put("R", rad.value).put("kind", rad.kind.to_string()));
    if rad.kind == RadiusKind::EqualExponents {
        rec.warnings.push("b = a: series radius undefined; R is the limit 1/|a| and roots use the closed form".into());
    }
    Ok(rec)
}

#[derive(Debug, Args)]
pub struct UltraArgs {
    #[arg(short = 'n', allow_negative_numbers = true, default_value_t = 0)]
    pub n: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
}

pub fn ultra_cmd(args: &UltraArgs, opts: &SolveOptions) -> CmdResult {
    let (a, b, x) = (val("a", &args.a)?, val("b", &args.b)?, val("x", &args.x)?);
    let inputs = Fields::new().put("n", args.n).put("a", args.a.trim()).put("b", args.b.trim()).put("x", args.x.trim());
    let mut rec = OutputRecord::new("ultra", inputs);
    let bv = ultra(args.n, a, b, x, opts)?;
    let f = Fields::new()
        .put("value_re", bv.y.re)
        .put("value_im", bv.y.im)
        .put("n", args.n)
        .put("J", bv.row.to_string())
        .put("N", bv.big_n)
        .put("u", bv.u)
        .put("residual", bv.residual);
    rec.results.push(eval_fields(f, &bv.eval).put("route", bv.route.to_string()).put("refined", bv.refined));
    rec.warnings = bv.warnings;
    Ok(rec)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Pipeline {
    Abc,
    Aabbc,
}

#[derive(Debug, Args)]
#[allow(non_snake_case)]
pub struct SolveArgs {
    /// Branch indices: "0", "0..3", "0,2,5".
    #[arg(short = 'n', allow_hyphen_values = true, default_value = "0")]
    pub n: String,
    #[arg(long = "A", allow_hyphen_values = true)]
    pub A: String,
    #[arg(long = "a", allow_hyphen_values = true)]
    pub a: String,
    #[arg(long = "B", allow_hyphen_values = true)]
    pub B: String,
    #[arg(long = "b", allow_hyphen_values = true)]
    pub b: String,
    #[arg(long = "C", allow_hyphen_values = true)]
    pub C: String,
    #[arg(long, value_enum, default_value_t = Pipeline::Abc)]
    pub pipeline: Pipeline,
}

fn root_fields(n: i64, rep: &RootReport) -> Fields {
    let f = Fields::new()
        .put("value_re", rep.y.re)
        .put("value_im", rep.y.im)
        .put("n", n)
        .put("J", rep.transform.to_string())
        .put("transform", rep.transform.substitution())
        .put("N", rep.big_n)
        .put("u", rep.u)
        .put("f_re", rep.f.re)
        .put("f_im", rep.f.im)
        .put("residual", rep.residual);
    eval_fields(f, &rep.eval).put("route", rep.route.to_string()).put("refined", rep.refined)
}

fn failed_root_fields(n: i64) -> Fields {
    Fields::new()
        .put("value_re", f64::NAN)
        .put("value_im", f64::NAN)
        .put("n", n)
        .put("J", "")
        .put("transform", "")
        .put("N", crate::output::Field::Null)
        .put("u", crate::output::Field::Null)
        .put("f_re", f64::NAN)
        .put("f_im", f64::NAN)
        .put("residual", f64::NAN)
        .put("terms_used", 0usize)
        .put("status", "failed")
        .put("route", "")
        .put("refined", false)
}

pub fn solve(args: &SolveArgs, opts: &SolveOptions) -> CmdResult {
    let ns = parse_n_list(&args.n).map_err(|e| CmdError::Usage(format!("-n: {e}")))?;
    let (ca, ea, cb, eb, cc) =
        (val("A", &args.A)?, num("a", &args.a)?, val("B", &args.B)?, num("b", &args.b)?, val("C", &args.C)?);
    let eq = match (ea.exact, eb.exact) {
        (Some(qa), Some(qb)) => TrinomialEq::with_exact(ca, qa, cb, qb, cc),
        _ => TrinomialEq::new(ca, ea.value, cb, eb.value, cc),
    };
    let pipeline = match args.pipeline {
        Pipeline::Abc => "abc",
        Pipeline::Aabbc => "aabbc",
    };
    let inputs = Fields::new()
        .put("n", args.n.trim())
        .put("A", args.A.trim())
        .put("a", args.a.trim())
        .put("B", args.B.trim())
        .put("b", args.b.trim())
        .put("C", args.C.trim())
        .put("pipeline", pipeline);
    let mut rec = OutputRecord::new("solve", inputs);
    let mut first_err = None;
    for &n in &ns {
        let out = match args.pipeline {
            Pipeline::Abc => solver_abc(n, &eq, opts),
            Pipeline::Aabbc => solver_aabbc(n, &eq, opts),
        };
        match out {
            Ok(rep) => {
                rec.warnings.extend(rep.warnings.iter().map(|w| format!("n={n}: {w}")));
                rec.results.push(root_fields(n, &rep));
            }
            Err(e) => {
                rec.warnings.push(format!("n={n}: {e}"));
                rec.results.push(failed_root_fields(n));
                first_err.get_or_insert(e);
            }
        }
    }
    if rec.results.iter().all(|r| r.0.iter().any(|(k, v)| *k == "status" && *v == "failed".into())) {
        return match first_err.map(CmdError::from) {
            Some(CmdError::Usage(m)) => Err(CmdError::Usage(m)),
            _ => {
                rec.failed = true;
                Ok(rec)
            }
        };
    }
    Ok(rec)
}

#[derive(Debug, Args)]
pub struct TrajectoryArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
    /// Branches; defaults to 0..a-1 for integer a, else 0.
    #[arg(short = 'n', allow_hyphen_values = true)]
    pub n: Option<String>,
    /// Line start.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "arc", requires = "to")]
    pub from: Option<String>,
    /// Line end.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "arc", requires = "from")]
    pub to: Option<String>,
    /// x = P R exp(Q pi i/4); with --steps > 1, Q sweeps from 0.
    #[arg(long, num_args = 2, value_names = ["P=<p>", "Q=<q>"])]
    pub arc: Option<Vec<String>>,
    /// Points on the path; default 101 for lines, 1 for arcs.
    #[arg(long)]
    pub steps: Option<usize>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<std::path::PathBuf>,
}

fn default_branches(a: C64) -> Vec<i64> {
    match ultraradical::cx::as_integer(a) {
        Some(k) if k != 0 => (0..k.abs()).collect(),
        _ => vec![0],
    }
}

fn sweep(args: &TrajectoryArgs, a: C64, b: C64) -> Result<Vec<C64>, CmdError> {
    let at = |k: usize, steps: usize| if steps == 1 { 0.0 } else { k as f64 / (steps - 1) as f64 };
    if let Some(arc) = &args.arc {
        let p = parse_keyed(&arc[0], "P").map_err(|e| CmdError::Usage(format!("--arc: {e}")))?;
        let q = parse_keyed(&arc[1], "Q").map_err(|e| CmdError::Usage(format!("--arc: {e}")))?;
        let rad = convergence_radius(a, b).value;
        if !rad.is_finite() {
            return Err(CmdError::Usage("--arc needs a finite radius of convergence".into()));
        }
        let steps = args.steps.unwrap_or(1);
        return Ok((0..steps)
            .map(|k| {
                let qk = if steps == 1 { q } else { q * at(k, steps) };
                C64::from_polar(p * rad, qk * PI / 4.0)
            })
            .collect());
    }
    let (Some(from), Some(to)) = (&args.from, &args.to) else {
        return Err(CmdError::Usage("give either --from/--to or --arc".into()));
    };
    let (x0, x1) = (val("from", from)?, val("to", to)?);
    let steps = args.steps.unwrap_or(101);
    Ok((0..steps).map(|k| x0 + (x1 - x0) * at(k, steps)).collect())
}

pub fn trajectory(args: &TrajectoryArgs, opts: &SolveOptions) -> CmdResult {
    let (a, b) = (val("a", &args.a)?, val("b", &args.b)?);
    if args.steps == Some(0) {
        return Err(CmdError::Usage("--steps must be at least 1".into()));
    }
    let ns = match &args.n {
        Some(s) => parse_n_list(s).map_err(|e| CmdError::Usage(format!("-n: {e}")))?,
        None => default_branches(a),
    };
    let xs = sweep(args, a, b)?;
    let mut inputs =
        Fields::new().put("a", args.a.trim()).put("b", args.b.trim()).put("n", args.n.as_deref().unwrap_or("").trim());
    if let Some(arc) = &args.arc {
        inputs = inputs.put("arc", arc.join(" "));
    } else {
        inputs = inputs
            .put("from", args.from.as_deref().unwrap_or("").trim())
            .put("to", args.to.as_deref().unwrap_or("").trim());
    }
    inputs = inputs.put("steps", xs.len());
    let mut rec = OutputRecord::new("trajectory", inputs);
    for x in xs {
        for &n in &ns {
            let row = Fields::new().put("x_re", x.re).put("x_im", x.im).put("n", n);
            rec.results.push(match ultra(n, a, b, x, opts) {
                Ok(bv) => row
                    .put("y_re", bv.y.re)
                    .put("y_im", bv.y.im)
                    .put("J", bv.row.to_string())
                    .put("N", bv.big_n)
                    .put("u", bv.u)
                    .put("status", bv.eval.status.to_string()),
                Err(e) => {
                    rec.warnings.push(format!("x={x}, n={n}: {e}"));
                    row.put("y_re", f64::NAN)
                        .put("y_im", f64::NAN)
                        .put("J", "")
                        .put("N", crate::output::Field::Null)
                        .put("u", crate::output::Field::Null)
                        .put("status", "failed")
                }
            });
        }
    }
    Ok(rec)
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    pub m: String,
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    /// Single core exponent; use --bs for a merged series.
    #[arg(long, allow_hyphen_values = true, required_unless_present = "bs", conflicts_with = "bs")]
    pub b: Option<String>,
    #[arg(long, allow_hyphen_values = true, required_unless_present = "xs", conflicts_with = "xs")]
    pub x: Option<String>,
    /// Shift: integrate d times (d > 0) or differentiate (d < 0).
    #[arg(short = 'd', long, allow_negative_numbers = true, default_value_t = 0)]
    pub d: i32,
    /// Super-master multiplier.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "bs")]
    pub c: Option<String>,
    /// Merged cores, comma separated.
    #[arg(long, allow_hyphen_values = true, requires = "xs")]
    pub bs: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires = "bs")]
    pub xs: Option<String>,
    /// Highest total order of a merged series.
    #[arg(long, default_value_t = 60)]
    pub max_order: usize,
}

pub fn series(args: &SeriesArgs, sopts: &SeriesOptions) -> CmdResult {
    let (m, a) = (val("m", &args.m)?, val("a", &args.a)?);
    let mut inputs = Fields::new().put("m", args.m.trim()).put("a", args.a.trim());
    let eval = if let (Some(bs), Some(xs)) = (&args.bs, &args.xs) {
        if args.d != 0 {
            return Err(CmdError::Usage("-d is not available for merged series".into()));
        }
        let bl = parse_complex_list(bs).map_err(|e| CmdError::Usage(format!("--bs: {e}")))?;
        let xl = parse_complex_list(xs).map_err(|e| CmdError::Usage(format!("--xs: {e}")))?;
        inputs = inputs.put("bs", bs.trim()).put("xs", xs.trim()).put("max_order", args.max_order);
        let mo = MergeOptions { max_order: args.max_order, rel_tol: sopts.rel_tol };
        merged_series_eval(m, a, &bl, &xl, &mo)?
    } else {
        let (bs, xs) = (args.b.as_deref().unwrap_or_default(), args.x.as_deref().unwrap_or_default());
        let (b, x) = (val("b", bs)?, val("x", xs)?);
        inputs = inputs.put("b", bs.trim()).put("x", xs.trim()).put("d", args.d as i64);
        let p = MasterParams::new(m, a, b);
        match &args.c {
            Some(cs) => {
                if args.d != 0 {
                    return Err(CmdError::Usage("-d and --c cannot be combined".into()));
                }
                inputs = inputs.put("c", cs.trim());
                super_master_eval(&p, x, val("c", cs)?, sopts)?
            }
            None => master_series_eval(&p, x, args.d, sopts)?,
        }
    };
    let mut rec = OutputRecord::new("series", inputs);
    let f = Fields::new().put("value_re", eval.value.re).put("value_im", eval.value.im);
    rec.results.push(eval_fields(f, &eval).put("last_term_mag", eval.last_term_mag));
    match eval.status {
        ultraradical::SeriesStatus::Converged => {}
        ultraradical::SeriesStatus::Truncated => rec.warnings.push("series truncated before convergence".into()),
        ultraradical::SeriesStatus::Diverged => {
            rec.warnings.push("series diverged".into());
            rec.failed = true;
        }
    }
    Ok(rec)
}
