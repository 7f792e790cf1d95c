//! Merged master series for equations with several power terms.
//!
//! ```text
//! <m;a;b_1..b_K;l_1..l_K> = prod_{g=1}^{L-1} (m - a g + sum_i b_i l_i),  L = sum_i l_i
//! <m;a;b;x> = m + sum_{|l| >= 1} prod_i x_i^(l_i)/l_i! * <m;a;b;l>
//! ```

use std::f64::consts::TAU;

use crate::continuation::Row;
use crate::cx::{arg, c, r, C64};
use crate::equation::MultiTermEq;
use crate::error::{Error, Result};
use crate::series::{sum_series, SeriesEval, SeriesOptions, SeriesStatus};
use crate::solver::{finish, RootReport, Route, SolveOptions};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MergeOptions {
    /// Highest total order summed.
    pub max_order: usize,
    pub rel_tol: f64,
}

impl Default for MergeOptions {
    fn default() -> Self {
        MergeOptions { max_order: 60, rel_tol: 1e-16 }
    }
}

pub fn merged_master_number(m: C64, a: C64, bs: &[C64], ells: &[usize]) -> Result<C64> {
    if bs.len() != ells.len() {
        return Err(Error::InvalidOptions("b and l lists differ in length".into()));
    }
    let total: usize = ells.iter().sum();
    let s: C64 = bs.iter().zip(ells).map(|(&b, &l)| b * l as f64).sum();
    Ok((1..total).fold(r(1.0), |acc, g| acc * (m - a * g as f64 + s)))
}

/// Multi-indices of total order `t` over `k` slots, the last slot varying
/// slowest.
pub fn compositions(t: usize, k: usize) -> Vec<Vec<usize>> {
    fn fill(rest: usize, slot: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slot == 0 {
            cur[0] = rest;
            out.push(cur.clone());
            return;
        }
        for v in 0..=rest {
            cur[slot] = v;
            fill(rest - v, slot - 1, cur, out);
        }
    }
    if k == 0 {
        return if t == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    fill(t, k - 1, &mut vec![0; k], &mut out);
    out
}

fn merged_term(m: C64, a: C64, bs: &[C64], xs: &[C64], ells: &[usize]) -> C64 {
    let total: usize = ells.iter().sum();
    let s: C64 = bs.iter().zip(ells).map(|(&b, &l)| b * l as f64).sum();
    let mut xf = ells.iter().enumerate().flat_map(|(i, &l)| (1..=l).map(move |j| (i, j)));
    let mut t = r(1.0);
    for g in 1..total {
        t *= m - a * g as f64 + s;
        if let Some((i, j)) = xf.next() {
            t *= xs[i] / j as f64;
        }
    }
    for (i, j) in xf {
        t *= xs[i] / j as f64;
    }
    t
}

/// Evaluates the merged series, summed in blocks of equal total order.
pub fn merged_series_eval(m: C64, a: C64, bs: &[C64], xs: &[C64], opts: &MergeOptions) -> Result<SeriesEval> {
    if bs.len() != xs.len() {
        return Err(Error::InvalidOptions("b and x lists differ in length".into()));
    }
    if bs.is_empty() {
        return Err(Error::InvalidOptions("at least one core is required".into()));
    }
    for &z in bs.iter().chain(xs).chain([&m, &a]) {
        crate::cx::finite(z, "merge parameter")?;
    }
    let driver = SeriesOptions { max_terms: opts.max_order, rel_tol: opts.rel_tol, divergence_window: 10 };
    sum_series(m, 1, &driver, true, |t| {
        Ok(compositions(t, bs.len()).iter().map(|ells| merged_term(m, a, bs, xs, ells)).sum())
    })
}

/// Root n of p Y^a = q + sum_i x_i Y^(b_i):
/// Y = v <1;a;b_i;x_i v^(b_i)/(a q)> with v = (q/p)^(1/a) on sheet n.
pub fn solve_multiterm(n: i64, eq: &MultiTermEq, mopts: &MergeOptions, opts: &SolveOptions) -> Result<RootReport> {
    let zero = c(0.0, 0.0);
    if eq.a == zero {
        return Err(Error::ZeroExponent);
    }
    if eq.p == zero || eq.q == zero {
        return Err(Error::DegenerateEquation("p and q must be non-zero"));
    }
    let w = eq.q / eq.p;
    let f = c(w.norm().ln(), arg(w) + TAU * n as f64) / eq.a;
    let v = f.exp();
    let bs: Vec<C64> = eq.terms.iter().map(|t| t.1).collect();
    let xs: Vec<C64> = eq.terms.iter().map(|&(x, b)| x * (b * f).exp() / (eq.a * eq.q)).collect();
    let eval = merged_series_eval(r(1.0), eq.a, &bs, &xs, mopts)?;
    if eval.status == SeriesStatus::Diverged {
        return Err(Error::Diverged { attempts: vec![(Row::Direct, n)] });
    }
    let fin = finish(eq, v * eval.value, eval.status, opts)?;
    Ok(RootReport {
        y: fin.y,
        n,
        u: fin.u,
        residual: fin.residual,
        transform: Row::Direct,
        big_n: n,
        f,
        route: Route::Series,
        eval,
        refined: fin.refined,
        warnings: fin.warnings,
    })
}
