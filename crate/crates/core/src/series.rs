//! Shared summation driver with the convergence and divergence tests used by
//! every series in the crate.

use crate::cx::C64;
use crate::error::{Error, Result};

/// Convergence controls for a single series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOptions {
    pub max_terms: usize,
    pub rel_tol: f64,
    pub divergence_window: usize,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        SeriesOptions { max_terms: 5000, rel_tol: 1e-16, divergence_window: 50 }
    }
}

impl SeriesOptions {
    pub fn validate(&self) -> Result<()> {
        if self.max_terms == 0 {
            return Err(Error::InvalidOptions("max_terms must be positive".into()));
        }
        if !(self.rel_tol > 0.0) || !self.rel_tol.is_finite() {
            return Err(Error::InvalidOptions("rel_tol must be a positive finite number".into()));
        }
        if self.divergence_window == 0 {
            return Err(Error::InvalidOptions("divergence_window must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeriesStatus {
    Converged,
    Truncated,
    Diverged,
}

impl std::fmt::Display for SeriesStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SeriesStatus::Converged => "converged",
            SeriesStatus::Truncated => "truncated",
            SeriesStatus::Diverged => "diverged",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesEval {
    pub value: C64,
    pub terms_used: usize,
    pub status: SeriesStatus,
    pub last_term_mag: f64,
}

impl SeriesEval {
    pub fn converged(&self) -> bool {
        self.status == SeriesStatus::Converged
    }

    /// Converged or truncated, i.e. the partial sum still approximates the
    /// function.
    pub fn usable(&self) -> bool {
        self.status != SeriesStatus::Diverged
    }

    /// Worst status of two evaluations combined into one.
    pub(crate) fn worst(a: SeriesStatus, b: SeriesStatus) -> SeriesStatus {
        use SeriesStatus::*;
        match (a, b) {
            (Diverged, _) | (_, Diverged) => Diverged,
            (Truncated, _) | (_, Truncated) => Truncated,
            _ => Converged,
        }
    }
}

/// Sums `constant + sum_{l >= start} term(l)`.
///
/// Convergence: three consecutive terms with |t| <= rel_tol |sum|.
/// Divergence (only when `may_diverge`): |t| grew for `divergence_window`
/// consecutive non-zero terms, or a non-finite value appeared.
pub(crate) fn sum_series<F>(
    constant: C64,
    start: usize,
    opts: &SeriesOptions,
    may_diverge: bool,
    mut term: F,
) -> Result<SeriesEval>
where
    F: FnMut(usize) -> Result<C64>,
{
    opts.validate()?;
    let mut sum = constant;
    let mut small_run = 0usize;
    let mut rising = 0usize;
    let mut prev_mag: Option<f64> = None;
    let mut last = 0.0;
    let mut used = 0usize;
    let mut ell = start;
    while used < opts.max_terms {
        let t = term(ell)?;
        used += 1;
        let mag = t.norm();
        if !mag.is_finite() {
            return Ok(SeriesEval { value: sum, terms_used: used, status: SeriesStatus::Diverged, last_term_mag: mag });
        }
        let next = sum + t;
        if !(next.re.is_finite() && next.im.is_finite()) {
            return Ok(SeriesEval { value: sum, terms_used: used, status: SeriesStatus::Diverged, last_term_mag: mag });
        }
        sum = next;
        last = mag;

        if mag <= opts.rel_tol * sum.norm() {
            small_run += 1;
            if small_run >= 3 {
                return Ok(SeriesEval {
                    value: sum,
                    terms_used: used,
                    status: SeriesStatus::Converged,
                    last_term_mag: mag,
                });
            }
        } else {
            small_run = 0;
        }

        if mag > 0.0 {
            if let Some(p) = prev_mag {
                if mag > p {
                    rising += 1;
                } else {
                    rising = 0;
                }
            }
            prev_mag = Some(mag);
            if may_diverge && rising >= opts.divergence_window {
                return Ok(SeriesEval {
                    value: sum,
                    terms_used: used,
                    status: SeriesStatus::Diverged,
                    last_term_mag: mag,
                });
            }
        }
        ell += 1;
    }
    Ok(SeriesEval { value: sum, terms_used: used, status: SeriesStatus::Truncated, last_term_mag: last })
}
