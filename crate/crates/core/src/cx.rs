//! Complex helpers shared by every module: principal argument, sheet-aware
//! logarithms and powers.

use std::f64::consts::{PI, TAU};

pub use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn r(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Principal argument in (-pi, pi]. A negative-zero imaginary part is read
/// as +0 so that negative reals always map to +pi.
#[inline]
pub fn arg(z: C64) -> f64 {
    (z.im + 0.0).atan2(z.re)
}

/// ln|z| + i(arg z + 2 pi u).
#[inline]
pub fn log_on_sheet(z: C64, u: i64) -> C64 {
    c(z.norm().ln(), arg(z) + TAU * u as f64)
}

/// z^p evaluated on sheet u.
#[inline]
pub fn pow_on_sheet(z: C64, p: C64, u: i64) -> C64 {
    (p * log_on_sheet(z, u)).exp()
}

/// Principal power. 0^p is 0 for Re p > 0 and 1 for p = 0.
pub fn ppow(z: C64, p: C64) -> C64 {
    if z == C64::new(0.0, 0.0) {
        if p == C64::new(0.0, 0.0) {
            return r(1.0);
        }
        return r(0.0);
    }
    pow_on_sheet(z, p, 0)
}

/// Reduce an angle into [0, 2 pi).
#[inline]
pub fn wrap_tau(t: f64) -> f64 {
    let w = t.rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// Integer value of a real-valued complex number, if it is one.
pub fn as_integer(z: C64) -> Option<i64> {
    if z.im != 0.0 || !z.re.is_finite() || z.re.fract() != 0.0 || z.re.abs() > 1e15 {
        return None;
    }
    Some(z.re as i64)
}

#[inline]
pub fn is_real(z: C64) -> bool {
    z.im == 0.0
}

pub fn finite(z: C64, what: &'static str) -> Result<C64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite(what))
    }
}

/// Radians to degrees.
pub fn deg(t: f64) -> f64 {
    t * 180.0 / PI
}
