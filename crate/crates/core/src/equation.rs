//! Equation types: the trinomial A Y^a + B Y^b + C = 0 and the multi-term
//! p Y^a = q + sum_i x_i Y^(b_i), both viewed as exponential sums in
//! lambda = log Y.

use num_rational::Ratio;

use crate::cx::{as_integer, r, C64};
use crate::error::{Error, Result};

/// sum_j c_j exp(e_j lambda).
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSum {
    pub terms: Vec<(C64, C64)>,
}

impl PowerSum {
    /// (F(lambda), sum_j |c_j exp(e_j lambda)|, F'(lambda)).
    pub fn eval(&self, lam: C64) -> (C64, f64, C64) {
        let mut f = r(0.0);
        let mut scale = 0.0;
        let mut df = r(0.0);
        for &(coef, e) in &self.terms {
            let t = coef * (e * lam).exp();
            f += t;
            scale += t.norm();
            df += t * e;
        }
        (f, scale, df)
    }

    pub fn max_real_exponent(&self) -> f64 {
        self.terms.iter().map(|t| t.1.re).fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Anything whose roots are verified on a logarithmic sheet.
pub trait PowerEquation {
    fn power_sum(&self) -> PowerSum;
}

/// Exact exponents of a trinomial, when known.
pub type ExactExponents = (Ratio<i64>, Ratio<i64>);

/// A Y^a + B Y^b + C = 0.
#[allow(non_snake_case)]
#[derive(Debug, Clone, PartialEq)]
pub struct TrinomialEq {
    pub A: C64,
    pub a: C64,
    pub B: C64,
    pub b: C64,
    pub C: C64,
    exact: Option<ExactExponents>,
}

#[allow(non_snake_case)]
impl TrinomialEq {
    /// Integer-valued real exponents are recorded as exact automatically.
    pub fn new(A: C64, a: C64, B: C64, b: C64, C: C64) -> Self {
        let exact = match (as_integer(a), as_integer(b)) {
            (Some(i), Some(j)) => Some((Ratio::from_integer(i), Ratio::from_integer(j))),
            _ => None,
        };
        TrinomialEq { A, a, B, b, C, exact }
    }

    pub fn real(A: f64, a: f64, B: f64, b: f64, C: f64) -> Self {
        Self::new(r(A), r(a), r(B), r(b), r(C))
    }

    /// Rational exponents kept exact for period detection.
    pub fn with_exact(A: C64, a: Ratio<i64>, B: C64, b: Ratio<i64>, C: C64) -> Self {
        TrinomialEq { A, a: r(ratio_f64(a)), B, b: r(ratio_f64(b)), C, exact: Some((a, b)) }
    }

    /// y^a = 1 + a x y^b written as 1 y^a + (-a x) y^b + (-1) = 0.
    pub fn canonical(a: C64, b: C64, x: C64) -> Self {
        Self::new(r(1.0), a, -(a * x), b, r(-1.0))
    }

    pub fn exact_exponents(&self) -> Option<ExactExponents> {
        self.exact
    }

    pub(crate) fn set_exact(&mut self, e: Option<ExactExponents>) {
        self.exact = e;
    }

    pub fn check_finite(&self) -> Result<()> {
        for (z, w) in [(self.A, "A"), (self.a, "a"), (self.B, "B"), (self.b, "b"), (self.C, "C")] {
            crate::cx::finite(z, w)?;
        }
        Ok(())
    }

    /// Number of distinct roots per period of the branch index, for exact
    /// exponents with a > b > 0: the numerator of a over the common
    /// denominator of a and b.
    pub fn root_period(&self) -> Option<u64> {
        let (a, b) = self.exact?;
        if !(a > b && b > Ratio::from_integer(0)) {
            return None;
        }
        let d = num_integer::lcm(*a.denom(), *b.denom());
        Some((a * Ratio::from_integer(d)).to_integer() as u64)
    }

    pub(crate) fn has_real_exponents(&self) -> bool {
        self.a.im == 0.0 && self.b.im == 0.0
    }
}

impl PowerEquation for TrinomialEq {
    fn power_sum(&self) -> PowerSum {
        PowerSum { terms: vec![(self.A, self.a), (self.B, self.b), (self.C, r(0.0))] }
    }
}

/// p Y^a = q + sum_i x_i Y^(b_i).
#[derive(Debug, Clone, PartialEq)]
pub struct MultiTermEq {
    pub p: C64,
    pub a: C64,
    pub q: C64,
    pub terms: Vec<(C64, C64)>,
}

impl MultiTermEq {
    /// `terms` holds (x_i, b_i).
    pub fn new(p: C64, a: C64, q: C64, terms: Vec<(C64, C64)>) -> Self {
        MultiTermEq { p, a, q, terms }
    }

    pub fn real(p: f64, a: f64, q: f64, terms: &[(f64, f64)]) -> Self {
        Self::new(r(p), r(a), r(q), terms.iter().map(|&(x, b)| (r(x), r(b))).collect())
    }
}

impl PowerEquation for MultiTermEq {
    fn power_sum(&self) -> PowerSum {
        let mut terms = vec![(self.p, self.a), (-self.q, r(0.0))];
        terms.extend(self.terms.iter().map(|&(x, b)| (-x, b)));
        PowerSum { terms }
    }
}

pub fn ratio_f64(q: Ratio<i64>) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// Parses "p/q" or a terminating decimal into an exact rational.
pub fn parse_ratio(s: &str) -> Result<Ratio<i64>> {
    let s = s.trim();
    let bad = || Error::InvalidOptions(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Ratio::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|ch| ch.is_ascii_digit()) || frac.len() > 15 {
        return Err(bad());
    }
    let digits: i64 = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let den = 10i64.checked_pow(frac.len() as u32).ok_or_else(bad)?;
    let q = Ratio::new(digits, den);
    Ok(if neg { -q } else { q })
}
