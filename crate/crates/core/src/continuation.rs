//! Analytic continuation of ultra-radical branches beyond the radius of
//! convergence.
//!
//! Every representation of y^a = 1 + a x y^b reduces to p Y^alpha = q + X Y^beta
//! and is solved by
//!
//! ```text
//! f = [ln|q/p| + i(arg(q/p) + 2 pi N)] / alpha,   v = e^f,   V = e^(beta f)
//! Z = X V / (alpha q),                           y = v M(1;alpha;beta;Z)
//! ```
//!
//! Branch n owns the strip Im f in [2 pi n/a - pi/a, 2 pi n/a + pi/a) of the
//! log plane. A conjugate candidate (h or k row, index N) continues branch n
//! when its Im f falls into that strip.

use std::f64::consts::{PI, TAU};

use crate::cx::{arg, as_integer, c, wrap_tau, C64};
use crate::equation::TrinomialEq;
use crate::error::{Error, Result};
use crate::master::convergence_radius;

/// Angular tolerance for sector boundaries.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// Row of the transform table. `Direct`, `H`, `K` are also known as the AB,
/// BC and CA substitutions of the trinomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Row {
    Direct,
    H,
    K,
}

impl Row {
    pub fn substitution(self) -> &'static str {
        match self {
            Row::Direct => "AB",
            Row::H => "BC",
            Row::K => "CA",
        }
    }
}

impl std::fmt::Display for Row {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Row::Direct => "direct",
            Row::H => "h",
            Row::K => "k",
        })
    }
}

/// p Y^alpha = q + X Y^beta.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformRow {
    pub alpha: C64,
    pub beta: C64,
    pub p: C64,
    pub q: C64,
    pub x: C64,
}

/// The same two-term problem under the name used by the solver.
pub type PqProblem = TransformRow;

impl TransformRow {
    pub fn is_degenerate(&self) -> bool {
        let zero = c(0.0, 0.0);
        self.p == zero || self.q == zero || self.alpha == zero
    }
}

/// Row of the canonical table for y^a = 1 + a x y^b.
pub fn transform_row(row: Row, a: C64, b: C64, x: C64) -> TransformRow {
    trinomial_row(row, &TrinomialEq::canonical(a, b, x))
}

/// Substitution lists for A Y^a + B Y^b + C = 0.
pub fn trinomial_row(row: Row, eq: &TrinomialEq) -> TransformRow {
    let (a, b) = (eq.a, eq.b);
    match row {
        Row::Direct => TransformRow { alpha: a, beta: b, p: eq.A, q: -eq.C, x: -eq.B },
        Row::H => TransformRow { alpha: b - a, beta: -a, p: eq.B, q: -eq.A, x: -eq.C },
        Row::K => TransformRow { alpha: -b, beta: a - b, p: eq.C, q: -eq.B, x: -eq.A },
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Phase {
    pub f: C64,
    pub v: C64,
    pub big_v: C64,
    pub z: C64,
}

/// log(q/p) on sheet N divided by alpha.
fn phase_f(tr: &TransformRow, big_n: i64) -> C64 {
    let w = tr.q / tr.p;
    c(w.norm().ln(), arg(w) + TAU * big_n as f64) / tr.alpha
}

pub fn row_phase(tr: &TransformRow, big_n: i64, row: Row) -> Result<Phase> {
    if tr.is_degenerate() {
        return Err(Error::DegenerateTransform { row });
    }
    let f = phase_f(tr, big_n);
    let big_v = (tr.beta * f).exp();
    Ok(Phase { f, v: f.exp(), big_v, z: tr.x * big_v / (tr.alpha * tr.q) })
}

/// Phase of the canonical row J with index N.
pub fn branch_phase(row: Row, big_n: i64, a: C64, b: C64, x: C64) -> Result<Phase> {
    row_phase(&transform_row(row, a, b, x), big_n, row)
}

/// Im(b f) for a canonical candidate, kept for diagnostics.
pub fn imag_bf(row: Row, big_n: i64, a: C64, b: C64, x: C64) -> Result<f64> {
    Ok((b * branch_phase(row, big_n, a, b, x)?.f).im)
}

/// Sector of branch n in arg(v) space. `center` is reduced into [0, 2 pi);
/// `lo = center - pi/a` and `hi = center + pi/a` are not reduced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sector {
    pub center: f64,
    pub lo: f64,
    pub hi: f64,
}

impl Sector {
    /// Half-open membership [lo, hi) modulo 2 pi.
    pub fn contains(&self, angle: f64) -> bool {
        let width = self.hi - self.lo;
        if width >= TAU {
            return true;
        }
        (angle - self.lo).rem_euclid(TAU) < width
    }
}

fn half_width(a: C64) -> Result<f64> {
    let hw = PI * (c(1.0, 0.0) / a).re.abs();
    if !(hw > 0.0) || !hw.is_finite() {
        return Err(Error::NoSector(format!("{a}")));
    }
    Ok(hw)
}

pub fn sector_bounds(n: i64, a: C64) -> Result<Sector> {
    if a == c(0.0, 0.0) {
        return Err(Error::ZeroExponent);
    }
    let hw = half_width(a)?;
    let center = wrap_tau((c(0.0, TAU * n as f64) / a).im);
    Ok(Sector { center, lo: center - hw, hi: center + hw })
}

/// arg(v) of a canonical candidate, reduced into [0, 2 pi).
pub fn candidate_angle(row: Row, big_n: i64, a: C64, b: C64, x: C64) -> Result<f64> {
    Ok(wrap_tau(branch_phase(row, big_n, a, b, x)?.f.im))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Selection {
    pub row: Row,
    /// Index N, reduced modulo |alpha| when both row exponents are integers.
    pub big_n: i64,
    /// Unreduced index that matched the strip.
    pub raw_n: i64,
    /// Im f of the candidate, reduced into [0, 2 pi).
    pub angle: f64,
    /// The candidate sat on a sector boundary and was chosen by the
    /// tie-break (upper edge goes to h, lower edge to k).
    pub boundary: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Place {
    Inside,
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    row: Row,
    raw_n: i64,
    im_f: f64,
    place: Place,
    offset: f64,
}

struct Strip {
    center: f64,
    hw: f64,
}

fn strip_for(n: i64, eq: &TrinomialEq) -> Result<Strip> {
    let ab = trinomial_row(Row::Direct, eq);
    if ab.is_degenerate() {
        return Err(Error::DegenerateTransform { row: Row::Direct });
    }
    let hw = half_width(ab.alpha)?;
    Ok(Strip { center: phase_f(&ab, n).im, hw })
}

fn default_bound(n: i64, eq: &TrinomialEq, strip: &Strip) -> i64 {
    let spec_default = eq.a.norm().ceil() as i64 + n.abs() + 2;
    let reach = [Row::H, Row::K].iter().map(|&row| trinomial_row(row, eq).alpha.norm()).fold(0.0, f64::max);
    let needed = ((strip.center.abs() + strip.hw) * reach / TAU).ceil() as i64 + 2;
    spec_default.max(needed)
}

fn candidates(n: i64, eq: &TrinomialEq, bound: Option<i64>) -> Result<(Vec<Candidate>, i64)> {
    let strip = strip_for(n, eq)?;
    let bound = bound.unwrap_or_else(|| default_bound(n, eq, &strip));
    let lo = strip.center - strip.hw;
    let width = 2.0 * strip.hw;
    let mut out = Vec::new();
    for row in [Row::H, Row::K] {
        let tr = trinomial_row(row, eq);
        if tr.is_degenerate() {
            continue;
        }
        for big_n in -bound..=bound {
            let im_f = phase_f(&tr, big_n).im;
            let d = im_f - lo;
            let place = if d.abs() <= BOUNDARY_TOL {
                Place::Lower
            } else if (d - width).abs() <= BOUNDARY_TOL {
                Place::Upper
            } else if d > 0.0 && d < width {
                Place::Inside
            } else {
                continue;
            };
            out.push(Candidate { row, raw_n: big_n, im_f, place, offset: (im_f - strip.center).abs() });
        }
    }
    Ok((out, bound))
}

fn reduce_index(row: Row, raw_n: i64, eq: &TrinomialEq) -> i64 {
    let tr = trinomial_row(row, eq);
    match (as_integer(tr.alpha), as_integer(tr.beta)) {
        (Some(al), Some(_)) if al != 0 => raw_n.rem_euclid(al.abs()),
        _ => raw_n,
    }
}

fn pick(cands: &[Candidate]) -> Option<Candidate> {
    let mut inside: Vec<&Candidate> = cands.iter().filter(|c| c.place == Place::Inside).collect();
    if !inside.is_empty() {
        inside.sort_by(|x, y| {
            x.offset.total_cmp(&y.offset).then(x.row.cmp(&y.row)).then(x.raw_n.abs().cmp(&y.raw_n.abs()))
        });
        return Some(*inside[0]);
    }
    let preferred = cands
        .iter()
        .find(|c| c.place == Place::Upper && c.row == Row::H)
        .or_else(|| cands.iter().find(|c| c.place == Place::Lower && c.row == Row::K))
        .or_else(|| cands.iter().find(|c| c.place == Place::Upper))
        .or_else(|| cands.first());
    preferred.copied()
}

/// Conjugate candidate continuing branch n of A Y^a + B Y^b + C = 0.
pub fn select_trinomial(n: i64, eq: &TrinomialEq, bound: Option<i64>) -> Result<Selection> {
    let (cands, bound) = candidates(n, eq, bound)?;
    let chosen = pick(&cands).ok_or(Error::NoCandidate { n, bound })?;
    Ok(Selection {
        row: chosen.row,
        big_n: reduce_index(chosen.row, chosen.raw_n, eq),
        raw_n: chosen.raw_n,
        angle: wrap_tau(chosen.im_f),
        boundary: chosen.place != Place::Inside,
    })
}

/// Conjugate candidate continuing branch n of the canonical y^a = 1 + a x y^b.
pub fn select_conjugate(n: i64, a: C64, b: C64, x: C64, bound: Option<i64>) -> Result<Selection> {
    if a == c(0.0, 0.0) {
        return Err(Error::ZeroExponent);
    }
    select_trinomial(n, &TrinomialEq::canonical(a, b, x), bound)
}

/// Number of candidates strictly inside the strip of branch n.
pub fn strict_candidate_count(n: i64, eq: &TrinomialEq, bound: Option<i64>) -> Result<usize> {
    Ok(candidates(n, eq, bound)?.0.iter().filter(|c| c.place == Place::Inside).count())
}

/// Representation of the principal branch: direct inside the radius,
/// otherwise h when |arg x| <= pi |b - a| / |a|, else k.
pub fn principal_rule(a: C64, b: C64, x: C64) -> Row {
    let rad = convergence_radius(a, b);
    if a == b || rad.contains(x) {
        return Row::Direct;
    }
    if arg(x).abs() <= PI * (b - a).norm() / a.norm() {
        Row::H
    } else {
        Row::K
    }
}
