//! Complex scalars, field modes and their text representation.

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

/// Every stored coefficient is a double-precision complex number. Real-field
/// algebras keep the imaginary part at exactly zero.
pub type Scalar = Complex64;

/// Default absolute tolerance for structural zero tests.
pub const ZERO_TOL: f64 = 1e-9;

/// The ground field of an algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Real,
    Complex,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Real => f.write_str("real"),
            Field::Complex => f.write_str("complex"),
        }
    }
}

impl std::str::FromStr for Field {
    type Err = ScalarParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "real" | "r" => Ok(Field::Real),
            "complex" | "c" => Ok(Field::Complex),
            other => Err(ScalarParseError(format!("unknown field `{other}`"))),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
#[error("{0}")]
pub struct ScalarParseError(pub String);

pub fn c(re: f64, im: f64) -> Scalar {
    Complex64::new(re, im)
}

pub fn r(re: f64) -> Scalar {
    Complex64::new(re, 0.0)
}

pub fn is_finite(z: Scalar) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

pub fn is_zero(z: Scalar, tol: f64) -> bool {
    z.norm() <= tol
}

/// Parses `re+imi`, `re-imi`, a bare real `re`, or a bare imaginary `imi`.
pub fn parse_scalar(text: &str) -> Result<Scalar, ScalarParseError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(ScalarParseError("empty number".into()));
    }
    let bad = || ScalarParseError(format!("malformed complex number `{s}`"));
    let parse_f = |t: &str| -> Result<f64, ScalarParseError> {
        let v: f64 = t.parse().map_err(|_| bad())?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(ScalarParseError(format!("non-finite number `{s}`")))
        }
    };
    let Some(body) = s.strip_suffix('i') else {
        return Ok(r(parse_f(s)?));
    };
    // split at the last sign that is not a leading sign or an exponent sign
    let bytes = body.as_bytes();
    let mut split = None;
    for idx in (1..bytes.len()).rev() {
        let ch = bytes[idx];
        if (ch == b'+' || ch == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
            split = Some(idx);
            break;
        }
    }
    match split {
        Some(idx) => {
            let re = parse_f(&body[..idx])?;
            let im_txt = &body[idx..];
            let im = match im_txt {
                "+" => 1.0,
                "-" => -1.0,
                t => parse_f(t)?,
            };
            Ok(c(re, im))
        }
        None => {
            let im = match body {
                "" | "+" => 1.0,
                "-" => -1.0,
                t => parse_f(t)?,
            };
            Ok(c(0.0, im))
        }
    }
}

/// Writes `re+imi` with the shortest round-tripping decimal for each part.
pub fn format_scalar(z: Scalar) -> String {
    let re = clean_zero(z.re);
    let im = clean_zero(z.im);
    if im.is_sign_negative() {
        format!("{}-{}i", re, -im)
    } else {
        format!("{}+{}i", re, im)
    }
}

/// Human-oriented rendering: real numbers print without an imaginary part and
/// values are rounded to 10 decimals.
pub fn display_scalar(z: Scalar) -> String {
    let re = round10(z.re);
    let im = round10(z.im);
    if im == 0.0 {
        format!("{re}")
    } else if re == 0.0 {
        format!("{im}i")
    } else if im < 0.0 {
        format!("{re}-{}i", -im)
    } else {
        format!("{re}+{im}i")
    }
}

fn round10(v: f64) -> f64 {
    clean_zero((v * 1e10).round() / 1e10)
}

fn clean_zero(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

/// Lexicographic order on (re, im) where differences below `tol` count as ties.
pub fn lex_cmp(a: Scalar, b: Scalar, tol: f64) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    let cmp1 = |x: f64, y: f64| {
        if (x - y).abs() <= tol {
            Ordering::Equal
        } else if x < y {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    };
    cmp1(a.re, b.re).then(cmp1(a.im, b.im))
}

pub fn lex_cmp_slice(a: &[Scalar], b: &[Scalar], tol: f64) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = lex_cmp(*x, *y, tol);
        if o != std::cmp::Ordering::Equal {
            return o;
        }
    }
    a.len().cmp(&b.len())
}
