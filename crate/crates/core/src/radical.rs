//! The ultra-radical: every branch of y^a = 1 + a x y^b, its derivative,
//! antiderivative and logarithm.

use std::f64::consts::TAU;

use crate::continuation::{row_phase, select_conjugate, transform_row, Phase, Row};
use crate::cx::{c, log_on_sheet, r, C64};
use crate::equation::{PowerEquation, TrinomialEq};
use crate::error::{Error, Result};
use crate::master::{convergence_radius, master_series_eval, MasterParams};
use crate::series::{SeriesEval, SeriesStatus};
use crate::solver::{finish, refine_log_root, Route, SolveOptions};

#[derive(Debug, Clone, PartialEq)]
pub struct BranchValue {
    pub y: C64,
    pub row: Row,
    pub big_n: i64,
    /// Phase f of the representation used (log of the prefactor v).
    pub f: C64,
    pub u: i64,
    pub residual: f64,
    pub eval: SeriesEval,
    pub route: Route,
    pub refined: bool,
    pub warnings: Vec<String>,
}

impl BranchValue {
    /// log y on the verified sheet.
    pub fn log(&self) -> C64 {
        log_on_sheet(self.y, self.u)
    }

    /// y^p on the verified sheet.
    pub fn pow(&self, p: C64) -> C64 {
        (p * self.log()).exp()
    }
}

fn check(a: C64, b: C64, x: C64) -> Result<()> {
    crate::cx::finite(a, "a")?;
    crate::cx::finite(b, "b")?;
    crate::cx::finite(x, "x")?;
    if a == c(0.0, 0.0) {
        return Err(Error::ZeroExponent);
    }
    Ok(())
}

/// f = (-Log(1 - a x) + 2 pi i n)/a, the b = a closed form in log space.
fn equal_exponent_log(n: i64, a: C64, x: C64) -> Result<C64> {
    let w = r(1.0) - a * x;
    if w == c(0.0, 0.0) {
        return Err(Error::ParameterDegeneracy("1 - a x = 0 with b = a"));
    }
    Ok((c(0.0, TAU * n as f64) - log_on_sheet(w, 0)) / a)
}

struct Picked {
    row: Row,
    big_n: i64,
    phase: Phase,
    eval: SeriesEval,
    warnings: Vec<String>,
}

/// Evaluates the representation chosen for branch n, falling back to the
/// other side of the radius when the first series diverges. `m` is the
/// master-series constant (1 for y, 0 for log y).
fn pick(n: i64, a: C64, b: C64, x: C64, m: f64, opts: &SolveOptions) -> Result<Picked> {
    let inside = convergence_radius(a, b).contains(x);
    let conjugate = || select_conjugate(n, a, b, x, opts.search_bound).map(|s| (s.row, s.big_n));
    let primary = if inside { (Row::Direct, n) } else { conjugate()? };
    let run = |(row, big_n): (Row, i64)| -> Result<Picked> {
        let tr = transform_row(row, a, b, x);
        let phase = row_phase(&tr, big_n, row)?;
        let eval = master_series_eval(&MasterParams::new(r(m), tr.alpha, tr.beta), phase.z, 0, &opts.series)?;
        let mut warnings = Vec::new();
        if !convergence_radius(tr.alpha, tr.beta).contains(phase.z) {
            warnings.push(format!("|Z| = {:e} is not inside the radius of the {row} series", phase.z.norm()));
        }
        Ok(Picked { row, big_n, phase, eval, warnings })
    };
    let first = run(primary)?;
    if first.eval.usable() {
        return Ok(first);
    }
    let alternate = if inside { conjugate().ok() } else { Some((Row::Direct, n)) };
    let mut attempts = vec![primary];
    if let Some(alt) = alternate {
        attempts.push(alt);
        if let Ok(second) = run(alt) {
            if second.eval.usable() {
                return Ok(second);
            }
        }
    }
    Err(Error::Diverged { attempts })
}

/// Branch n of y^a = 1 + a x y^b.
pub fn ultra(n: i64, a: C64, b: C64, x: C64, opts: &SolveOptions) -> Result<BranchValue> {
    check(a, b, x)?;
    let eq = TrinomialEq::canonical(a, b, x);
    if a == b {
        let f = equal_exponent_log(n, a, x)?;
        let y = f.exp();
        let fin = finish(&eq, y, SeriesStatus::Converged, opts)?;
        return Ok(BranchValue {
            y: fin.y,
            row: Row::Direct,
            big_n: n,
            f,
            u: fin.u,
            residual: fin.residual,
            eval: SeriesEval { value: y, terms_used: 0, status: SeriesStatus::Converged, last_term_mag: 0.0 },
            route: Route::ClosedForm,
            refined: fin.refined,
            warnings: fin.warnings,
        });
    }
    let p = pick(n, a, b, x, 1.0, opts)?;
    let fin = finish(&eq, p.phase.v * p.eval.value, p.eval.status, opts)?;
    let mut warnings = p.warnings;
    warnings.extend(fin.warnings);
    Ok(BranchValue {
        y: fin.y,
        row: p.row,
        big_n: p.big_n,
        f: p.phase.f,
        u: fin.u,
        residual: fin.residual,
        eval: p.eval,
        route: Route::Series,
        refined: fin.refined,
        warnings,
    })
}

/// dy/dx = y^(b-a+1) / (1 - b x y^(b-a)).
pub fn ultra_derivative(n: i64, a: C64, b: C64, x: C64, opts: &SolveOptions) -> Result<C64> {
    let bv = ultra(n, a, b, x, opts)?;
    let w = b * x * bv.pow(b - a);
    let den = r(1.0) - w;
    if den.norm() <= 1e-14 * (1.0 + w.norm()) {
        return Err(Error::SingularDerivative);
    }
    Ok(bv.pow(b - a + 1.0) / den)
}

/// Antiderivative of branch n in x. With `normalized` the constant is fixed
/// so that the principal branch integrates from 0.
pub fn ultra_integral(n: i64, a: C64, b: C64, x: C64, normalized: bool, opts: &SolveOptions) -> Result<C64> {
    if normalized && n != 0 {
        return Err(Error::NormalizedNeedsPrincipal);
    }
    let bv = ultra(n, a, b, x, opts)?;
    let y = bv.y;
    let one = r(1.0);
    if b == one {
        let g = x * y - (bv.pow(a) / a - bv.log()) / a;
        return Ok(if normalized { g + one / (a * a) } else { g });
    }
    let e = a - b + 1.0;
    if e == c(0.0, 0.0) {
        return Err(Error::ParameterDegeneracy("a - b + 1 = 0"));
    }
    let hi = bv.pow(e);
    let lo = bv.pow(one - b);
    if normalized {
        Ok(((a - b) / e * (hi - 1.0) + b / (one - b) * (lo - 1.0)) / a)
    } else {
        Ok(x * y - (hi / e - lo / (one - b)) / a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UltraLog {
    pub value: C64,
    pub row: Row,
    pub big_n: i64,
    pub eval: SeriesEval,
}

/// u_n = ln v_n + M(0;a;b;x V_n) with v_n = e^(2 pi i n/a), continued by the
/// conjugate rows outside the radius. a = 0 gives M(0;0;b;x).
pub fn ultralog(n: i64, a: C64, b: C64, x: C64, opts: &SolveOptions) -> Result<UltraLog> {
    crate::cx::finite(a, "a")?;
    crate::cx::finite(b, "b")?;
    crate::cx::finite(x, "x")?;
    if a == c(0.0, 0.0) {
        if n != 0 {
            return Err(Error::InvalidOptions("a = 0 has a single branch".into()));
        }
        let eval = master_series_eval(&MasterParams::new(r(0.0), a, b), x, 0, &opts.series)?;
        if !eval.usable() {
            return Err(Error::Diverged { attempts: vec![(Row::Direct, 0)] });
        }
        return Ok(UltraLog { value: eval.value, row: Row::Direct, big_n: 0, eval });
    }
    if a == b {
        let value = equal_exponent_log(n, a, x)?;
        let eval = SeriesEval { value, terms_used: 0, status: SeriesStatus::Converged, last_term_mag: 0.0 };
        return Ok(UltraLog { value, row: Row::Direct, big_n: n, eval });
    }
    let p = pick(n, a, b, x, 0.0, opts)?;
    let mut value = p.phase.f + p.eval.value;
    if opts.refine && p.eval.status != SeriesStatus::Converged {
        let ps = TrinomialEq::canonical(a, b, x).power_sum();
        if let Some(lam) = refine_log_root(&ps, value, 1e-2 * value.exp().norm().max(1.0)) {
            value = lam;
        }
    }
    Ok(UltraLog { value, row: p.row, big_n: p.big_n, eval: p.eval })
}

/// d/dx ln M(1;1;b;x) = u^b / (b + (1 - b) u) with u = M(1;1;b;x).
pub fn ulog_derivative(b: C64, x: C64, opts: &SolveOptions) -> Result<C64> {
    let lam = ultralog(0, r(1.0), b, x, opts)?.value;
    let u = lam.exp();
    let den = b + (r(1.0) - b) * u;
    if den.norm() <= 1e-14 * (b.norm() + u.norm()).max(1.0) {
        return Err(Error::SingularDerivative);
    }
    Ok((b * lam).exp() / den)
}

/// y' = y^(c+1)/(1 - b x y^c) is solved by the ultra-radical with (a, b) = (b - c, b).
pub fn ultra_from_ode(c: C64, b: C64) -> (C64, C64) {
    (b - c, b)
}
