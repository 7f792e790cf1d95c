//! Hyper-master series: products and quotients of master factors, with the
//! Gauss hypergeometric function as the main client.
//!
//! ```text
//! H(x) = c0 + x + sum_{l>=2} x^l/l! prod_{g=1}^{l-1}
//!        [prod_j (m_j - a_j g + b_j l) / prod_k (M_k - A_k g + B_k l)]
//! ```

use crate::cx::{as_integer, c, r, C64};
use crate::error::{Error, Result};
use crate::series::{sum_series, SeriesEval, SeriesOptions, SeriesStatus};

/// One factor (m - a g + b l).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triple {
    pub m: C64,
    pub a: C64,
    pub b: C64,
}

impl Triple {
    pub fn new(m: C64, a: C64, b: C64) -> Self {
        Triple { m, a, b }
    }

    pub fn real(m: f64, a: f64, b: f64) -> Self {
        Triple { m: r(m), a: r(a), b: r(b) }
    }

    #[inline]
    fn at(&self, g: usize, ell: usize) -> C64 {
        self.m - self.a * g as f64 + self.b * ell as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HyperParams {
    pub numer: Vec<Triple>,
    pub denom: Vec<Triple>,
    /// Constant term 1 instead of 0.
    pub unit_constant: bool,
}

fn hyper_term(p: &HyperParams, x: C64, ell: usize) -> Result<C64> {
    let mut t = r(1.0 / ell as f64);
    for g in 1..ell {
        let mut num = r(1.0);
        for f in &p.numer {
            num *= f.at(g, ell);
        }
        let mut den = r(1.0);
        for (k, f) in p.denom.iter().enumerate() {
            let d = f.at(g, ell);
            if d == c(0.0, 0.0) {
                return Err(Error::DenominatorZero { k, gamma: g, ell });
            }
            den *= d;
        }
        t *= num / den * x / g as f64;
    }
    Ok(t * x)
}

pub fn hyper_master_eval(p: &HyperParams, x: C64, opts: &SeriesOptions) -> Result<SeriesEval> {
    crate::cx::finite(x, "x")?;
    for f in p.numer.iter().chain(&p.denom) {
        for z in [f.m, f.a, f.b] {
            crate::cx::finite(z, "hyper-master factor")?;
        }
    }
    let constant = if p.unit_constant { r(1.0) } else { r(0.0) };
    sum_series(constant, 1, opts, true, |ell| hyper_term(p, x, ell))
}

fn forbidden_c(cc: C64) -> bool {
    matches!(as_integer(cc), Some(k) if k <= 0)
}

/// 2F1(a,b;c;x) = 1 + sum_{l>=1} ((ab/c) x)^l/l! prod_{g=1}^{l-1} (1+g/a)(1+g/b)/(1+g/c).
pub fn gauss_2f1(a: C64, b: C64, cc: C64, x: C64, opts: &SeriesOptions) -> Result<SeriesEval> {
    if forbidden_c(cc) {
        return Err(Error::ForbiddenC);
    }
    if !(x.norm() < 1.0) {
        return Err(Error::OutOfDomain("|x| < 1 is required"));
    }
    let zero = c(0.0, 0.0);
    if a == zero || b == zero {
        return Ok(SeriesEval { value: r(1.0), terms_used: 0, status: SeriesStatus::Converged, last_term_mag: 0.0 });
    }
    let one = r(1.0);
    let p = HyperParams {
        numer: vec![Triple::new(one, -one / a, zero), Triple::new(one, -one / b, zero)],
        denom: vec![Triple::new(one, -one / cc, zero)],
        unit_constant: true,
    };
    hyper_master_eval(&p, a * b / cc * x, opts)
}

/// Direct Pochhammer sum of the first `terms` terms, kept independent of the
/// master-factor route.
pub fn pochhammer_2f1_reference(a: C64, b: C64, cc: C64, x: C64, terms: usize) -> Result<C64> {
    if forbidden_c(cc) {
        return Err(Error::ForbiddenC);
    }
    let mut t = r(1.0);
    let mut s = r(0.0);
    for k in 0..terms {
        s += t;
        t = t * (a + k as f64) * (b + k as f64) / ((cc + k as f64) * (k + 1) as f64) * x;
    }
    Ok(s)
}
