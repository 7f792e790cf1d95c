use std::fmt;

use crate::continuation::Row;

/// Everything the library can refuse to do.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid options: {0}")]
    InvalidOptions(String),

    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("coefficient overflow at order {ell}")]
    Overflow { ell: usize },

    #[error("degenerate transform row {row} (zero p, q or exponent)")]
    DegenerateTransform { row: Row },

    #[error("exponent `a` must be non-zero")]
    ZeroExponent,

    #[error("no sector can be formed for a = {0}")]
    NoSector(String),

    #[error("no conjugate candidate found for branch {n} within |N| <= {bound}")]
    NoCandidate { n: i64, bound: i64 },

    #[error("series diverged in every representation tried: {}", Attempts(.attempts))]
    Diverged { attempts: Vec<(Row, i64)> },

    #[error("derivative is singular (1 - b x y^(b-a) = 0)")]
    SingularDerivative,

    #[error("parameter degeneracy: {0}")]
    ParameterDegeneracy(&'static str),

    #[error("normalized integral is only defined for the principal branch")]
    NormalizedNeedsPrincipal,

    #[error("zero denominator factor (k = {k}, gamma = {gamma}, ell = {ell})")]
    DenominatorZero { k: usize, gamma: usize, ell: usize },

    #[error("c must not be a non-positive integer")]
    ForbiddenC,

    #[error("argument outside the domain: {0}")]
    OutOfDomain(&'static str),

    #[error("branch {n} has no root; the root set has period {period}")]
    NoRootForIndex { n: i64, period: u64 },

    #[error("degenerate equation: {0}")]
    DegenerateEquation(&'static str),

    #[error("zero is not a valid root for verification")]
    ZeroRoot,
}

struct Attempts<'a>(&'a [(Row, i64)]);

impl fmt::Display for Attempts<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (row, n)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({row}, {n})")?;
        }
        Ok(())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
