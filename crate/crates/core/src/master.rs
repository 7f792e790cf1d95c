//! Master numbers, master series and their radius of convergence.
//!
//! ```text
//! M(m;a;b;x) = m + x + sum_{l>=2} x^l/l! * prod_{g=1}^{l-1} (m - a g + b l)
//! ```

use std::f64::consts::E;

use crate::cx::{r, C64};
use crate::error::{Error, Result};
use crate::series::{sum_series, SeriesEval, SeriesOptions};

/// Largest |d| accepted by the integration/differentiation shift.
pub const MAX_SHIFT: i32 = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MasterParams {
    pub m: C64,
    pub a: C64,
    pub b: C64,
}

impl MasterParams {
    pub fn new(m: C64, a: C64, b: C64) -> Self {
        MasterParams { m, a, b }
    }

    pub fn real(m: f64, a: f64, b: f64) -> Self {
        MasterParams { m: r(m), a: r(a), b: r(b) }
    }

    fn check(&self) -> Result<()> {
        for (z, w) in [(self.m, "m"), (self.a, "a"), (self.b, "b")] {
            crate::cx::finite(z, w)?;
        }
        Ok(())
    }
}

/// N(m;a;b;l) = prod_{g=1}^{l-1} (m - a g + b l); 1 for l < 2.
pub fn master_number(m: C64, a: C64, b: C64, ell: usize) -> C64 {
    let bl = b * ell as f64;
    (1..ell).fold(r(1.0), |acc, g| acc * (m - a * g as f64 + bl))
}

/// Coefficient of x^l: m for l = 0, otherwise N(m;a;b;l)/l! computed with the
/// factorial interleaved into the product.
pub fn series_coefficient(m: C64, a: C64, b: C64, ell: usize) -> Result<C64> {
    if ell == 0 {
        return Ok(m);
    }
    let bl = b * ell as f64;
    let mut t = r(1.0 / ell as f64);
    for g in 1..ell {
        t *= (m - a * g as f64 + bl) / g as f64;
    }
    if t.re.is_finite() && t.im.is_finite() {
        Ok(t)
    } else {
        Err(Error::Overflow { ell })
    }
}

const RESCALE: i32 = 512;

/// Keeps `t` within range by moving powers of two into `exp2`.
#[inline]
fn rebalance(t: &mut C64, exp2: &mut i32) {
    let mag = t.re.abs().max(t.im.abs());
    if mag > 1e150 {
        *t *= 2f64.powi(-RESCALE);
        *exp2 += RESCALE;
    } else if mag < 1e-150 && mag != 0.0 {
        *t *= 2f64.powi(RESCALE);
        *exp2 -= RESCALE;
    }
}

fn unscale(t: C64, exp2: i32) -> C64 {
    // two steps so that an intermediate power of two cannot overflow alone
    let h = exp2 / 2;
    t * 2f64.powi(h) * 2f64.powi(exp2 - h)
}

/// c_l l!/(l+d)! x^(l+d), the l-th term after a d-fold shift.
fn shifted_term(m: C64, a: C64, b: C64, x: C64, ell: usize, d: i32) -> C64 {
    let e = ell as i64 + d as i64;
    if e < 0 {
        return r(0.0);
    }
    let mut xs = e as usize;
    let mut t = if ell == 0 { m } else { r(1.0 / ell as f64) };
    let mut exp2 = 0i32;
    let bl = b * ell as f64;
    for g in 1..ell {
        t *= (m - a * g as f64 + bl) / g as f64;
        if xs > 0 {
            t *= x;
            xs -= 1;
        }
        if t == r(0.0) {
            return t;
        }
        rebalance(&mut t, &mut exp2);
    }
    if d > 0 {
        for j in 1..=d as usize {
            t /= (ell + j) as f64;
            if xs > 0 {
                t *= x;
                xs -= 1;
            }
        }
    } else {
        for j in 0..(-d) as usize {
            t *= (ell - j) as f64;
        }
    }
    for _ in 0..xs {
        t *= x;
        rebalance(&mut t, &mut exp2);
    }
    unscale(t, exp2)
}

/// Evaluates M(m;a;b;x;d). d > 0 integrates d times from 0, d < 0
/// differentiates |d| times.
pub fn master_series_eval(p: &MasterParams, x: C64, d: i32, opts: &SeriesOptions) -> Result<SeriesEval> {
    p.check()?;
    crate::cx::finite(x, "x")?;
    if d.abs() > MAX_SHIFT {
        return Err(Error::InvalidOptions(format!("|d| must be at most {MAX_SHIFT}")));
    }
    let may_diverge = !convergence_radius(p.a, p.b).contains(x);
    let (m, a, b) = (p.m, p.a, p.b);
    let constant = shifted_term(m, a, b, x, 0, d);
    sum_series(constant, 1, opts, may_diverge, |ell| Ok(shifted_term(m, a, b, x, ell, d)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadiusKind {
    General,
    /// a = 0: 1/|b e|.
    ZeroA,
    /// b = 0: 1/|a|.
    ZeroB,
    /// a = b = 0: the exponential series.
    Entire,
    /// b = a: the general formula is undefined; `value` holds its limit
    /// 1/|a| and the ultra-radical uses a closed form instead.
    EqualExponents,
}

impl std::fmt::Display for RadiusKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RadiusKind::General => "general",
            RadiusKind::ZeroA => "a=0",
            RadiusKind::ZeroB => "b=0",
            RadiusKind::Entire => "entire",
            RadiusKind::EqualExponents => "b=a",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Radius {
    pub value: f64,
    pub kind: RadiusKind,
}

impl Radius {
    /// Strictly inside the disc; |x| = R counts as outside.
    pub fn contains(&self, x: C64) -> bool {
        self.kind == RadiusKind::Entire || x.norm() < self.value
    }
}

/// R(a,b) = |(1 - a/b)^(b/a)| / |b - a| with the principal power.
pub fn convergence_radius(a: C64, b: C64) -> Radius {
    let zero = r(0.0);
    if a == zero && b == zero {
        return Radius { value: f64::INFINITY, kind: RadiusKind::Entire };
    }
    if a == zero {
        return Radius { value: 1.0 / (b.norm() * E), kind: RadiusKind::ZeroA };
    }
    if b == zero {
        return Radius { value: 1.0 / a.norm(), kind: RadiusKind::ZeroB };
    }
    if a == b {
        return Radius { value: 1.0 / a.norm(), kind: RadiusKind::EqualExponents };
    }
    let w = b / a;
    let z = r(1.0) - a / b;
    let modulus = (w * crate::cx::log_on_sheet(z, 0)).re.exp();
    Radius { value: modulus / (b - a).norm(), kind: RadiusKind::General }
}

/// S(m;a;b;x;c) = m + c (x + sum x^l/l! prod (c m - a g + b l)).
pub fn super_master_eval(p: &MasterParams, x: C64, c: C64, opts: &SeriesOptions) -> Result<SeriesEval> {
    p.check()?;
    crate::cx::finite(x, "x")?;
    crate::cx::finite(c, "c")?;
    let cm = c * p.m;
    let may_diverge = !convergence_radius(p.a, p.b).contains(x);
    let (a, b) = (p.a, p.b);
    let core = sum_series(r(0.0), 1, opts, may_diverge, |ell| Ok(shifted_term(cm, a, b, x, ell, 0)))?;
    Ok(SeriesEval { value: p.m + c * core.value, ..core })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

/// (M(x) -/+ M(-x))/2.
pub fn series_parity_part(p: &MasterParams, x: C64, parity: Parity, opts: &SeriesOptions) -> Result<SeriesEval> {
    let plus = master_series_eval(p, x, 0, opts)?;
    let minus = master_series_eval(p, -x, 0, opts)?;
    let value = match parity {
        Parity::Odd => (plus.value - minus.value) * 0.5,
        Parity::Even => (plus.value + minus.value) * 0.5,
    };
    Ok(SeriesEval {
        value,
        terms_used: plus.terms_used.max(minus.terms_used),
        status: SeriesEval::worst(plus.status, minus.status),
        last_term_mag: plus.last_term_mag.max(minus.last_term_mag),
    })
}
