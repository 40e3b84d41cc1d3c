//! Sparse multivariate polynomials with complex coefficients.
//!
//! Monomials are exponent vectors over a variable list fixed by the caller.
//! Terms are ordered graded-first, then lexicographically with the earlier
//! variable ranking higher, so `a² > ab > b² > a > b`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::scalar::{format_scalar, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    /// Larger monomials sort first.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::var(nvars, i), Scalar::new(1.0, 0.0));
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c == Scalar::new(0.0, 0.0) {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert(Scalar::new(0.0, 0.0));
        *entry += c;
        if *entry == Scalar::new(0.0, 0.0) {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), *c);
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(Scalar::new(-1.0, 0.0)))
    }

    pub fn scale(&self, f: Scalar) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * f);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::constant(self.nvars, Scalar::new(1.0, 0.0));
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars, "evaluation point has wrong length");
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter()
                    .zip(point)
                    .fold(*c, |acc, (&e, &v)| acc * v.powu(e))
            })
            .sum()
    }

    /// Substitutes values for some variables, keeping the rest symbolic.
    pub fn substitute(&self, values: &[Option<Scalar>]) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut coef = *c;
            let mut exps = m.0.clone();
            for (i, v) in values.iter().enumerate() {
                if let Some(v) = v {
                    coef *= v.powu(exps[i]);
                    exps[i] = 0;
                }
            }
            out.add_term(Monomial(exps), coef);
        }
        out
    }

    pub fn leading(&self) -> Option<(&Monomial, Scalar)> {
        self.terms.iter().next().map(|(m, c)| (m, *c))
    }

    /// Drops coefficients below `tol` in modulus.
    pub fn prune(&self, tol: f64) -> Poly {
        let mut out = self.clone();
        out.terms.retain(|_, c| c.norm() > tol);
        out
    }

    /// Sign-normalized copy: the leading coefficient has positive real part
    /// (or, when purely imaginary, positive imaginary part).
    pub fn sign_normalized(&self) -> Poly {
        match self.leading() {
            Some((_, c)) if c.re < 0.0 || (c.re == 0.0 && c.im < 0.0) => {
                self.scale(Scalar::new(-1.0, 0.0))
            }
            _ => self.clone(),
        }
    }

    /// Copy with leading coefficient one.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some((_, c)) => self.scale(c.inv()),
            None => self.clone(),
        }
    }

    /// Same monomials and coefficients within `tol`.
    pub fn approx_eq(&self, other: &Poly, tol: f64) -> bool {
        self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .zip(&other.terms)
                .all(|((ma, ca), (mb, cb))| ma == mb && (ca - cb).norm() <= tol)
    }

    /// Equal up to a nonzero scalar factor.
    pub fn proportional(&self, other: &Poly, tol: f64) -> bool {
        self.monic().approx_eq(&other.monic(), tol)
    }

    /// Pretty form, e.g. `b²y-a²-2acx`.
    pub fn render(&self, names: &[String]) -> String {
        self.render_with(names, Style::Pretty)
    }

    /// ASCII form, e.g. `b^2*y - a^2 - 2*a*c*x`.
    pub fn render_ascii(&self, names: &[String]) -> String {
        self.render_with(names, Style::Ascii)
    }

    fn render_with(&self, names: &[String], style: Style) -> String {
        assert_eq!(names.len(), self.nvars, "one name per variable");
        if self.terms.is_empty() {
            return "0".into();
        }
        let joiner = match style {
            Style::Ascii => "*",
            Style::Pretty if names.iter().any(|n| n.chars().count() > 1) => "·",
            Style::Pretty => "",
        };
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.im == 0.0 && c.re < 0.0;
            let mag = if negative { -c } else { *c };
            match (idx, negative, style) {
                (0, true, _) => out.push('-'),
                (0, false, _) => {}
                (_, true, Style::Pretty) => out.push('-'),
                (_, false, Style::Pretty) => out.push('+'),
                (_, true, Style::Ascii) => out.push_str(" - "),
                (_, false, Style::Ascii) => out.push_str(" + "),
            }
            let factors: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| match (e, style) {
                        (1, _) => names[i].clone(),
                        (e, Style::Pretty) => format!("{}{}", names[i], superscript(e)),
                        (e, Style::Ascii) => format!("{}^{e}", names[i]),
                    })
                    .collect();
            let coef = format_coefficient(mag);
            if factors.is_empty() {
                out.push_str(&coef);
            } else {
                if coef != "1" {
                    out.push_str(&coef);
                    out.push_str(joiner);
                }
                out.push_str(&factors.join(joiner));
            }
        }
        out
    }
}

#[derive(Clone, Copy)]
enum Style {
    Pretty,
    Ascii,
}

fn format_coefficient(c: Scalar) -> String {
    if c.im == 0.0 {
        if c.re.fract() == 0.0 && c.re.abs() < 1e15 {
            format!("{}", c.re as i64)
        } else {
            format!("{}", c.re)
        }
    } else {
        format!("({})", format_scalar(c))
    }
}

fn superscript(e: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    e.to_string()
        .chars()
        .map(|ch| DIGITS[ch.to_digit(10).unwrap_or(0) as usize])
        .collect()
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyParseError {
    #[error("unexpected input at byte {0}")]
    Syntax(usize),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
}

/// Parses `lhs=rhs` (or a bare polynomial) into `lhs - rhs`. Accepts
/// integers, decimals, `i`, the given variable names, `+ - *`, `^` or `**`
/// with integer exponents, and parentheses.
pub fn parse_equation(text: &str, names: &[&str]) -> Result<Poly, PolyParseError> {
    let (lhs, rhs) = match text.split_once('=') {
        Some((l, r)) => (l, Some((l.len() + 1, r))),
        None => (text, None),
    };
    let left = PolyParser::new(lhs, 0, names).parse_all()?;
    match rhs {
        Some((offset, r)) => Ok(left.sub(&PolyParser::new(r, offset, names).parse_all()?)),
        None => Ok(left),
    }
}

struct PolyParser<'a> {
    src: &'a [u8],
    pos: usize,
    offset: usize,
    names: &'a [&'a str],
}

impl<'a> PolyParser<'a> {
    fn new(src: &'a str, offset: usize, names: &'a [&'a str]) -> Self {
        Self {
            src: src.as_bytes(),
            pos: 0,
            offset,
            names,
        }
    }

    fn err(&self) -> PolyParseError {
        PolyParseError::Syntax(self.offset + self.pos)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn parse_all(mut self) -> Result<Poly, PolyParseError> {
        let p = self.sum()?;
        if self.peek().is_some() {
            return Err(self.err());
        }
        Ok(p)
    }

    fn sum(&mut self) -> Result<Poly, PolyParseError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.product()?.scale(Scalar::new(-1.0, 0.0))
            }
            Some(b'+') => {
                self.pos += 1;
                self.product()?
            }
            _ => self.product()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.product()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.product()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Poly, PolyParseError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') if self.src.get(self.pos + 1) != Some(&b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                // implicit multiplication: `2a`, `(a+1)(b-1)`
                Some(ch) if ch == b'(' || ch.is_ascii_alphanumeric() => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly, PolyParseError> {
        let base = self.atom()?;
        let star_star = self.peek() == Some(b'*') && self.src.get(self.pos + 1) == Some(&b'*');
        if self.peek() == Some(b'^') || star_star {
            self.pos += if star_star { 2 } else { 1 };
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .ok()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| self.err())?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, PolyParseError> {
        let nvars = self.names.len();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let p = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.err());
                }
                self.pos += 1;
                Ok(p)
            }
            Some(ch) if ch.is_ascii_digit() || ch == b'.' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.')
                {
                    self.pos += 1;
                }
                let v: f64 = std::str::from_utf8(&self.src[start..self.pos])
                    .ok()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| self.err())?;
                Ok(Poly::constant(nvars, Scalar::new(v, 0.0)))
            }
            Some(ch) if ch.is_ascii_alphabetic() || ch == b'_' => {
                // longest variable name that matches here, else `i`
                let rest = &self.src[self.pos..];
                let hit = self
                    .names
                    .iter()
                    .enumerate()
                    .filter(|(_, n)| rest.starts_with(n.as_bytes()))
                    .max_by_key(|(_, n)| n.len());
                if let Some((idx, name)) = hit {
                    self.pos += name.len();
                    return Ok(Poly::var(nvars, idx));
                }
                if rest[0] == b'i' {
                    self.pos += 1;
                    return Ok(Poly::constant(nvars, Scalar::new(0.0, 1.0)));
                }
                let end = rest
                    .iter()
                    .position(|c| !c.is_ascii_alphanumeric())
                    .unwrap_or(rest.len());
                Err(PolyParseError::UnknownVariable(
                    String::from_utf8_lossy(&rest[..end]).into_owned(),
                ))
            }
            _ => Err(self.err()),
        }
    }
}

/// Joins equations as `p=0` with a separator.
pub fn render_system(polys: &[Poly], names: &[String], sep: &str) -> String {
    let mut out = String::new();
    for (i, p) in polys.iter().enumerate() {
        if i > 0 {
            out.push_str(sep);
        }
        let _ = write!(out, "{}=0", p.render(names));
    }
    out
}
