//! Roots of A Y^a + B Y^b + C = 0 from master series.
//!
//! Two pipelines are offered. `solver_abc` works on the substitution lists
//! directly; `solver_aabbc` maps the equation to the canonical ultra-radical
//! y^r = 1 + r x0 y^s and rescales.

use num_rational::Ratio;

use crate::continuation::{row_phase, select_trinomial, trinomial_row, Phase, PqProblem, Row};
use crate::cx::{arg, c, log_on_sheet, ppow, r, C64};
use crate::equation::{PowerEquation, PowerSum, TrinomialEq};
use crate::error::{Error, Result};
use crate::master::{convergence_radius, master_series_eval, MasterParams};
use crate::radical::ultra;
use crate::series::{SeriesEval, SeriesOptions, SeriesStatus};

/// Default half-width of the u search.
pub const U_MAX: u32 = 16;
/// Half-width used when the first search finds nothing within tolerance.
pub const U_MAX_WIDE: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub series: SeriesOptions,
    pub u_max: u32,
    /// Residual tolerance before scaling by max(1, |Y|^Re a).
    pub residual_tol: f64,
    /// Newton-polish roots in log space when the series was truncated or
    /// the residual misses the tolerance.
    pub refine: bool,
    /// |N| bound of the conjugate search; `None` picks a safe default.
    pub search_bound: Option<i64>,
    /// Root period for exponents that are not known exactly.
    pub period: Option<u64>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            series: SeriesOptions::default(),
            u_max: U_MAX,
            residual_tol: 1e-9,
            refine: true,
            search_bound: None,
            period: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Series,
    ClosedForm,
}

impl std::fmt::Display for Route {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Route::Series => "series",
            Route::ClosedForm => "closed-form",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootReport {
    pub y: C64,
    pub n: i64,
    pub u: i64,
    pub residual: f64,
    pub transform: Row,
    pub big_n: i64,
    /// Phase exponent: Y = e^f M(1;alpha;beta;Z).
    pub f: C64,
    pub route: Route,
    pub eval: SeriesEval,
    pub refined: bool,
    pub warnings: Vec<String>,
}

/// |sum_j c_j Y^(e_j)| with every power taken on sheet u.
pub fn verify_root<E: PowerEquation + ?Sized>(eq: &E, y: C64, u: i64) -> Result<f64> {
    if y == c(0.0, 0.0) {
        return Err(Error::ZeroRoot);
    }
    Ok(eq.power_sum().eval(log_on_sheet(y, u)).0.norm())
}

/// Residual tolerance for a root of magnitude |y|.
pub fn residual_tolerance(ps: &PowerSum, y: C64, base: f64) -> f64 {
    let top = ps.max_real_exponent();
    base * y.norm().powf(top).max(1.0)
}

fn search_u(ps: &PowerSum, y: C64, u_max: u32) -> (i64, f64) {
    let mut best: Option<(i64, f64, f64)> = None;
    for k in 0..=(u_max as i64) {
        for u in if k == 0 { vec![0] } else { vec![k, -k] } {
            let (val, scale, _) = ps.eval(log_on_sheet(y, u));
            let res = val.norm();
            match best {
                None => best = Some((u, res, scale)),
                Some((_, b, s)) => {
                    // differences at rounding level are ties; earlier (smaller |u|) wins
                    if res < b - 64.0 * f64::EPSILON * s.max(scale) {
                        best = Some((u, res, scale));
                    }
                }
            }
        }
    }
    let (u, res, _) = best.expect("search visits u = 0");
    (u, res)
}

/// Sheet u in [-u_max, u_max] minimizing the residual; smallest |u| wins
/// ties. The window is widened once to 64 when nothing meets tolerance.
pub fn find_u<E: PowerEquation + ?Sized>(eq: &E, y: C64, u_max: u32) -> Result<(i64, f64)> {
    find_u_with_tol(eq, y, u_max, 1e-9)
}

pub fn find_u_with_tol<E: PowerEquation + ?Sized>(eq: &E, y: C64, u_max: u32, base_tol: f64) -> Result<(i64, f64)> {
    if y == c(0.0, 0.0) {
        return Err(Error::ZeroRoot);
    }
    let ps = eq.power_sum();
    let found = search_u(&ps, y, u_max);
    if found.1 > residual_tolerance(&ps, y, base_tol) && u_max < U_MAX_WIDE {
        return Ok(search_u(&ps, y, U_MAX_WIDE));
    }
    Ok(found)
}

/// Newton iteration on F(lambda) = sum c_j exp(e_j lambda). Rejected when it
/// fails to reduce |F| or moves Y by more than `max_move`.
pub(crate) fn refine_log_root(ps: &PowerSum, lam0: C64, max_move: f64) -> Option<C64> {
    let (f0, _, _) = ps.eval(lam0);
    let mut lam = lam0;
    for _ in 0..60 {
        let (f, _, df) = ps.eval(lam);
        if df == c(0.0, 0.0) {
            break;
        }
        let step = f / df;
        if !(step.re.is_finite() && step.im.is_finite()) {
            return None;
        }
        lam -= step;
        if step.norm() <= 4.0 * f64::EPSILON * lam.norm().max(1.0) {
            break;
        }
    }
    let (f1, _, _) = ps.eval(lam);
    if f1.norm() > f0.norm() || (lam.exp() - lam0.exp()).norm() > max_move {
        return None;
    }
    Some(lam)
}

pub(crate) struct Finished {
    pub y: C64,
    pub u: i64,
    pub residual: f64,
    pub refined: bool,
    pub warnings: Vec<String>,
}

/// Sheet search, optional polish and tolerance check shared by every
/// root-producing operation.
pub(crate) fn finish<E: PowerEquation + ?Sized>(
    eq: &E,
    y: C64,
    status: SeriesStatus,
    opts: &SolveOptions,
) -> Result<Finished> {
    let ps = eq.power_sum();
    let (mut u, mut residual) = find_u_with_tol(eq, y, opts.u_max, opts.residual_tol)?;
    let mut y = y;
    let mut refined = false;
    let mut warnings = Vec::new();
    let tol = residual_tolerance(&ps, y, opts.residual_tol);
    if opts.refine && (status != SeriesStatus::Converged || residual > tol) {
        if let Some(lam) = refine_log_root(&ps, log_on_sheet(y, u), 1e-2 * y.norm().max(1.0)) {
            let y2 = lam.exp();
            let (u2, res2) = find_u_with_tol(eq, y2, opts.u_max, opts.residual_tol)?;
            if res2 <= residual {
                y = y2;
                u = u2;
                residual = res2;
                refined = true;
            }
        }
    }
    if status == SeriesStatus::Truncated {
        warnings.push(if refined {
            "series truncated at max_terms; value polished by Newton iteration".to_string()
        } else {
            "series truncated at max_terms".to_string()
        });
    }
    if residual > residual_tolerance(&ps, y, opts.residual_tol) {
        warnings.push(format!("residual {residual:e} exceeds tolerance"));
    }
    Ok(Finished { y, u, residual, refined, warnings })
}

/// Y and f for p Y^alpha = q + X Y^beta at index N, with the series
/// evaluation of M(1;alpha;beta;Z).
pub fn solve_pq(prob: &PqProblem, big_n: i64, opts: &SeriesOptions) -> Result<(C64, C64, SeriesEval)> {
    let (phase, eval) = eval_pq(prob, big_n, Row::Direct, opts)?;
    Ok((phase.v * eval.value, phase.f, eval))
}

pub(crate) fn eval_pq(prob: &PqProblem, big_n: i64, row: Row, opts: &SeriesOptions) -> Result<(Phase, SeriesEval)> {
    let phase = row_phase(prob, big_n, row)?;
    let eval = master_series_eval(&MasterParams::new(r(1.0), prob.alpha, prob.beta), phase.z, 0, opts)?;
    Ok((phase, eval))
}

/// Multiplies by Y^f so that Re a > Re b > 0, relabelling the terms.
/// Returns the normalized equation and f.
pub fn normalize(eq: &TrinomialEq) -> Result<(TrinomialEq, C64)> {
    eq.check_finite()?;
    let exact = eq.exact_exponents();
    let zero = Ratio::from_integer(0);
    let mut terms =
        [(eq.A, eq.a, exact.map(|e| e.0)), (eq.B, eq.b, exact.map(|e| e.1)), (eq.C, r(0.0), exact.map(|_| zero))];
    terms.sort_by(|x, y| y.1.re.total_cmp(&x.1.re));
    if !(terms[0].1.re > terms[1].1.re && terms[1].1.re > terms[2].1.re) {
        return Err(Error::DegenerateEquation("exponents must have distinct real parts"));
    }
    let shift = -terms[2].1;
    let mut out = TrinomialEq::new(terms[0].0, terms[0].1 + shift, terms[1].0, terms[1].1 + shift, terms[2].0);
    if let (Some(e0), Some(e1), Some(e2)) = (terms[0].2, terms[1].2, terms[2].2) {
        out.set_exact(Some((e0 - e2, e1 - e2)));
    }
    Ok((out, shift))
}

/// T = |b/A|^b |B/a|^a |(a-b)/C|^(a-b) for real a > b > 0. T < 1 means the
/// AB series converges for every root.
pub fn t_criterion(eq: &TrinomialEq) -> Result<f64> {
    if !eq.has_real_exponents() || !(eq.a.re > eq.b.re && eq.b.re > 0.0) {
        return Err(Error::DegenerateEquation("T needs real exponents with a > b > 0"));
    }
    let (a, b) = (eq.a.re, eq.b.re);
    let l = b * (b / eq.A.norm()).ln() + a * (eq.B.norm() / a).ln() + (a - b) * ((a - b) / eq.C.norm()).ln();
    Ok(l.exp())
}

/// p u^a = q + z u^b to the canonical y^a = 1 + a x y^b with u = k y.
/// Returns (x, k) where x = z (q/p)^(b/a) / (a q) and k = (q/p)^(1/a).
pub fn reduce_general(p: C64, a: C64, q: C64, z: C64, b: C64) -> Result<(C64, C64)> {
    let zero = c(0.0, 0.0);
    if a == zero {
        return Err(Error::ZeroExponent);
    }
    if p == zero || q == zero {
        return Err(Error::DegenerateEquation("p and q must be non-zero"));
    }
    let w = q / p;
    Ok((z * ppow(w, b / a) / (a * q), ppow(w, r(1.0) / a)))
}

/// Two-term equations left when one coefficient vanishes.
fn binomial_root(n: i64, eq: &TrinomialEq, opts: &SolveOptions) -> Result<Option<RootReport>> {
    let zero = c(0.0, 0.0);
    let zeros = [eq.A, eq.B, eq.C].iter().filter(|&&z| z == zero).count();
    if zeros == 0 {
        return Ok(None);
    }
    if zeros > 1 {
        return Err(Error::DegenerateEquation("at most one coefficient may vanish"));
    }
    // c1 Y^e1 + c2 Y^e2 = 0
    let ((c1, e1), (c2, e2)) = if eq.A == zero {
        ((eq.B, eq.b), (eq.C, r(0.0)))
    } else if eq.B == zero {
        ((eq.A, eq.a), (eq.C, r(0.0)))
    } else {
        ((eq.A, eq.a), (eq.B, eq.b))
    };
    let e = e1 - e2;
    if e == zero {
        return Err(Error::DegenerateEquation("remaining exponents coincide"));
    }
    let w = -c2 / c1;
    let y = (c(w.norm().ln(), arg(w) + std::f64::consts::TAU * n as f64) / e).exp();
    let fin = finish(eq, y, SeriesStatus::Converged, opts)?;
    Ok(Some(RootReport {
        y: fin.y,
        n,
        u: fin.u,
        residual: fin.residual,
        transform: Row::Direct,
        big_n: n,
        f: y.ln(),
        route: Route::ClosedForm,
        eval: SeriesEval { value: y, terms_used: 0, status: SeriesStatus::Converged, last_term_mag: 0.0 },
        refined: fin.refined,
        warnings: fin.warnings,
    }))
}

fn check_index(n: i64, eq: &TrinomialEq, opts: &SolveOptions) -> Result<()> {
    if let Some(period) = eq.root_period().or(opts.period) {
        if n < 0 || n as u64 >= period {
            return Err(Error::NoRootForIndex { n, period });
        }
    }
    Ok(())
}

/// Root n of A Y^a + B Y^b + C = 0 through the AB, BC and CA substitutions.
pub fn solver_abc(n: i64, eq: &TrinomialEq, opts: &SolveOptions) -> Result<RootReport> {
    eq.check_finite()?;
    if let Some(rep) = binomial_root(n, eq, opts)? {
        return Ok(rep);
    }
    let (ne, _) = normalize(eq)?;
    check_index(n, &ne, opts)?;

    let ab = trinomial_row(Row::Direct, &ne);
    let direct = if ne.has_real_exponents() {
        t_criterion(&ne)? < 1.0
    } else {
        let z = row_phase(&ab, n, Row::Direct)?.z;
        convergence_radius(ab.alpha, ab.beta).contains(z)
    };

    let conjugate = || -> Result<(Row, i64)> {
        let s = select_trinomial(n, &ne, opts.search_bound)?;
        Ok((s.row, s.big_n))
    };
    let primary = if direct { (Row::Direct, n) } else { conjugate()? };
    let mut attempts = vec![primary];
    let mut chosen = None;
    let (phase, eval) = eval_pq(&trinomial_row(primary.0, &ne), primary.1, primary.0, &opts.series)?;
    if eval.usable() {
        chosen = Some((primary, phase, eval));
    } else {
        let alternate = if direct { conjugate().ok() } else { Some((Row::Direct, n)) };
        if let Some(alt) = alternate {
            attempts.push(alt);
            let (ph, ev) = eval_pq(&trinomial_row(alt.0, &ne), alt.1, alt.0, &opts.series)?;
            if ev.usable() {
                chosen = Some((alt, ph, ev));
            }
        }
    }
    let ((row, big_n), phase, eval) = chosen.ok_or(Error::Diverged { attempts })?;
    let fin = finish(eq, phase.v * eval.value, eval.status, opts)?;
    Ok(RootReport {
        y: fin.y,
        n,
        u: fin.u,
        residual: fin.residual,
        transform: row,
        big_n,
        f: phase.f,
        route: Route::Series,
        eval,
        refined: fin.refined,
        warnings: fin.warnings,
    })
}

/// x0 = (B/(a C)) (-C/A)^(b/a) and Y = (-C/A)^(1/a) y for the normalized
/// equation.
#[allow(non_snake_case)]
pub fn aabbc_transform(eq: &TrinomialEq) -> Result<(C64, C64)> {
    reduce_general(eq.A, eq.a, -eq.C, -eq.B, eq.b)
}

/// Root n of A Y^a + B Y^b + C = 0 through the canonical ultra-radical.
pub fn solver_aabbc(n: i64, eq: &TrinomialEq, opts: &SolveOptions) -> Result<RootReport> {
    eq.check_finite()?;
    if let Some(rep) = binomial_root(n, eq, opts)? {
        return Ok(rep);
    }
    let (ne, _) = normalize(eq)?;
    check_index(n, &ne, opts)?;
    let (x0, k) = aabbc_transform(&ne)?;
    let bv = ultra(n, ne.a, ne.b, x0, opts)?;
    let fin = finish(eq, k * bv.y, bv.eval.status, opts)?;
    let mut warnings = bv.warnings;
    for w in fin.warnings {
        if !warnings.contains(&w) {
            warnings.push(w);
        }
    }
    Ok(RootReport {
        y: fin.y,
        n,
        u: fin.u,
        residual: fin.residual,
        transform: bv.row,
        big_n: bv.big_n,
        f: log_on_sheet(-ne.C / ne.A, 0) / ne.a + bv.f,
        route: bv.route,
        eval: bv.eval,
        refined: bv.refined || fin.refined,
        warnings,
    })
}
