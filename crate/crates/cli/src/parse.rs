//! Argument syntax: complex numbers "re+imi", exact rationals "p/q",
//! branch lists "0..2,5" and arc pairs "P=0.9".

use num_complex::Complex64 as C64;
use num_rational::Ratio;
use ultraradical::parse_ratio;

/// A parsed number, with the exact rational kept when the input was one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num {
    pub value: C64,
    pub exact: Option<Ratio<i64>>,
}

fn parse_real(s: &str) -> Result<f64, String> {
    let v = if s.contains('/') {
        let q = parse_ratio(s).map_err(|_| format!("`{s}` is not a rational p/q"))?;
        *q.numer() as f64 / *q.denom() as f64
    } else {
        s.parse::<f64>().map_err(|_| format!("`{s}` is not a number"))?
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

/// Index of the sign separating real and imaginary parts, if any.
fn split_point(body: &str) -> Option<usize> {
    let b = body.as_bytes();
    (1..b.len()).rev().find(|&k| (b[k] == b'+' || b[k] == b'-') && !matches!(b[k - 1], b'e' | b'E'))
}

pub fn parse_complex(input: &str) -> Result<Num, String> {
    let t: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err("empty number".into());
    }
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        let value = C64::new(parse_real(&t)?, 0.0);
        return Ok(Num { value, exact: parse_ratio(&t).ok() });
    };
    let (re, im) = match split_point(body) {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let re = if re.is_empty() { 0.0 } else { parse_real(re)? };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => parse_real(s.strip_prefix('+').unwrap_or(s))?,
    };
    Ok(Num { value: C64::new(re, im), exact: None })
}

/// Comma-separated integers and inclusive ranges "a..b" or "a..=b".
pub fn parse_n_list(input: &str) -> Result<Vec<i64>, String> {
    let mut out = Vec::new();
    for item in input.split(',').map(str::trim) {
        let int = |s: &str| s.trim().parse::<i64>().map_err(|_| format!("`{s}` is not an integer"));
        if let Some((lo, hi)) = item.split_once("..") {
            let (lo, hi) = (int(lo)?, int(hi.strip_prefix('=').unwrap_or(hi))?);
            if hi < lo {
                return Err(format!("empty range `{item}`"));
            }
            if hi - lo > 100_000 {
                return Err(format!("range `{item}` is too long"));
            }
            out.extend(lo..=hi);
        } else {
            out.push(int(item)?);
        }
    }
    Ok(out)
}

/// Comma-separated complex numbers.
pub fn parse_complex_list(input: &str) -> Result<Vec<C64>, String> {
    input.split(',').map(|s| parse_complex(s).map(|n| n.value)).collect()
}

/// "KEY=value" with a real value.
pub fn parse_keyed(input: &str, key: &str) -> Result<f64, String> {
    let (k, v) = input.split_once('=').ok_or_else(|| format!("expected {key}=<value>, got `{input}`"))?;
    if !k.trim().eq_ignore_ascii_case(key) {
        return Err(format!("expected {key}=<value>, got `{input}`"));
    }
    parse_real(v.trim())
}
