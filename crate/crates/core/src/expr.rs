//! Real-valued expressions in the variables `s` and `t`.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' expo)?
//! expo    := '-' expo | power            (right associative)
//! primary := number | 's' | 't' | func '(' expr ')' | '(' expr ')'
//! func    := exp | log | sin | cos | sqrt | abs
//! number  := digits ['.' digits] [('e' | 'E') ['+' | '-'] digits]
//! ```
//!
//! `^` binds tighter than unary minus, so `-2^2` is `-4` and `2^-1` is `0.5`.

use std::fmt;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    S,
    T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }

    fn prec(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
            BinOp::Pow => 4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Exp,
    Log,
    Sin,
    Cos,
    Sqrt,
    Abs,
}

impl Func {
    pub const ALL: [Func; 6] = [
        Func::Exp,
        Func::Log,
        Func::Sin,
        Func::Cos,
        Func::Sqrt,
        Func::Abs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
        }
    }

    fn lookup(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(f64),
    Var(Var),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {msg}")]
    Syntax { offset: usize, msg: String },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("`{func}` takes 1 argument, got {got} (byte {offset})")]
    Arity {
        func: String,
        got: usize,
        offset: usize,
    },
    #[error("number `{text}` at byte {offset} is out of range")]
    NumberRange { text: String, offset: usize },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error("division by zero in `{0}`")]
    DivisionByZero(String),
    #[error("log of a nonpositive value in `{0}`")]
    LogDomain(String),
    #[error("sqrt of a negative value in `{0}`")]
    SqrtDomain(String),
    #[error("non-finite value in `{0}`")]
    NonFinite(String),
}

const MAX_DEPTH: usize = 200;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn bytes(&self) -> &'a [u8] {
        self.src.as_bytes()
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.bytes()[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes().get(self.pos).copied()
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            offset: self.pos,
            msg: msg.into(),
        })
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return self.syntax("expression nested too deeply");
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        self.enter()?;
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(b'+') => BinOp::Add,
                Some(b'-') => BinOp::Sub,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(b'*') => BinOp::Mul,
                Some(b'/') => BinOp::Div,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            self.enter()?;
            let inner = self.unary()?;
            self.depth -= 1;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.enter()?;
            let exp = self.expo()?;
            self.depth -= 1;
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn expo(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            self.enter()?;
            let inner = self.expo()?;
            self.depth -= 1;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            None => self.syntax("unexpected end of input"),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.syntax("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(ch) if ch.is_ascii_digit() || ch == b'.' => self.number(),
            Some(ch) if ch.is_ascii_alphabetic() || ch == b'_' => self.ident(),
            Some(_) => {
                let ch = self.src[self.pos..].chars().next().unwrap_or('?');
                self.syntax(format!("unexpected character `{ch}`"))
            }
        }
    }

    fn number(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        let b = self.bytes();
        let mut i = self.pos;
        let digits = |i: &mut usize| {
            let s = *i;
            while *i < b.len() && b[*i].is_ascii_digit() {
                *i += 1;
            }
            *i - s
        };
        let mut n = digits(&mut i);
        if i < b.len() && b[i] == b'.' {
            i += 1;
            n += digits(&mut i);
        }
        if n == 0 {
            return self.syntax("malformed number");
        }
        if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
            let mut j = i + 1;
            if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
                j += 1;
            }
            if digits(&mut j) == 0 {
                self.pos = j;
                return self.syntax("malformed exponent");
            }
            i = j;
        }
        let text = &self.src[start..i];
        self.pos = i;
        let v: f64 = text.parse().map_err(|_| ParseError::Syntax {
            offset: start,
            msg: format!("malformed number `{text}`"),
        })?;
        if !v.is_finite() {
            return Err(ParseError::NumberRange {
                text: text.to_string(),
                offset: start,
            });
        }
        Ok(Expr::Num(v))
    }

    fn ident(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        let b = self.bytes();
        let mut i = self.pos;
        while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
            i += 1;
        }
        let name = &self.src[start..i];
        self.pos = i;
        match name {
            "s" => return Ok(Expr::Var(Var::S)),
            "t" => return Ok(Expr::Var(Var::T)),
            _ => {}
        }
        let Some(func) = Func::lookup(name) else {
            return Err(ParseError::UnknownIdentifier {
                name: name.to_string(),
                offset: start,
            });
        };
        if self.peek() != Some(b'(') {
            return self.syntax(format!("expected `(` after `{name}`"));
        }
        self.pos += 1;
        let mut args = Vec::new();
        if self.peek() != Some(b')') {
            loop {
                args.push(self.expr()?);
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b')') => break,
                    _ => return self.syntax("expected `,` or `)`"),
                }
            }
        }
        self.pos += 1;
        if args.len() != 1 {
            return Err(ParseError::Arity {
                func: name.to_string(),
                got: args.len(),
                offset: start,
            });
        }
        Ok(Expr::Call(
            func,
            Box::new(args.pop().expect("one argument")),
        ))
    }
}

/// Parses an expression; see the module docs for the grammar.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        src: text,
        pos: 0,
        depth: 0,
    };
    if p.peek().is_none() {
        return p.syntax("empty expression");
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        let ch = p.src[p.pos..].chars().next().unwrap_or('?');
        return p.syntax(format!("unexpected `{ch}`"));
    }
    Ok(e)
}

impl std::str::FromStr for Expr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse(s)
    }
}

const PREC_NEG: u8 = 3;
const PREC_ATOM: u8 = 5;

impl Expr {
    fn prec(&self) -> u8 {
        match self {
            Expr::Num(v) if *v < 0.0 => PREC_NEG,
            Expr::Num(_) | Expr::Var(_) | Expr::Call(..) => PREC_ATOM,
            Expr::Neg(_) => PREC_NEG,
            Expr::Bin(op, ..) => op.prec(),
        }
    }

    pub fn eval(&self, s: f64, t: f64) -> Result<f64, EvalError> {
        let v = match self {
            Expr::Num(v) => *v,
            Expr::Var(Var::S) => s,
            Expr::Var(Var::T) => t,
            Expr::Neg(e) => -e.eval(s, t)?,
            Expr::Bin(op, l, r) => {
                let a = l.eval(s, t)?;
                let b = r.eval(s, t)?;
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => {
                        if b == 0.0 {
                            return Err(EvalError::DivisionByZero(self.to_string()));
                        }
                        a / b
                    }
                    BinOp::Pow => a.powf(b),
                }
            }
            Expr::Call(f, arg) => {
                let x = arg.eval(s, t)?;
                match f {
                    Func::Exp => x.exp(),
                    Func::Log => {
                        if x <= 0.0 {
                            return Err(EvalError::LogDomain(self.to_string()));
                        }
                        x.ln()
                    }
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                    Func::Sqrt => {
                        if x < 0.0 {
                            return Err(EvalError::SqrtDomain(self.to_string()));
                        }
                        x.sqrt()
                    }
                    Func::Abs => x.abs(),
                }
            }
        };
        if !v.is_finite() {
            return Err(EvalError::NonFinite(self.to_string()));
        }
        Ok(v)
    }

    /// Which of `s` and `t` occur.
    pub fn vars(&self) -> (bool, bool) {
        match self {
            Expr::Num(_) => (false, false),
            Expr::Var(Var::S) => (true, false),
            Expr::Var(Var::T) => (false, true),
            Expr::Neg(e) | Expr::Call(_, e) => e.vars(),
            Expr::Bin(_, l, r) => {
                let (a, b) = l.vars();
                let (c, d) = r.vars();
                (a || c, b || d)
            }
        }
    }

    /// Fully parenthesized rendering.
    pub fn render_explicit(&self) -> String {
        match self {
            Expr::Num(v) => fmt_num(*v),
            Expr::Var(Var::S) => "s".into(),
            Expr::Var(Var::T) => "t".into(),
            Expr::Neg(e) => format!("(-{})", e.render_explicit()),
            Expr::Bin(op, l, r) => format!(
                "({} {} {})",
                l.render_explicit(),
                op.symbol(),
                r.render_explicit()
            ),
            Expr::Call(f, a) => format!("{}({})", f.name(), a.render_explicit()),
        }
    }

    fn render_min(&self, out: &mut String) {
        let wrap = |e: &Expr, paren: bool, out: &mut String| {
            if paren {
                out.push('(');
                e.render_min(out);
                out.push(')');
            } else {
                e.render_min(out);
            }
        };
        match self {
            Expr::Num(v) if *v < 0.0 => {
                out.push('(');
                out.push_str(&fmt_num(*v));
                out.push(')');
            }
            Expr::Num(v) => out.push_str(&fmt_num(*v)),
            Expr::Var(Var::S) => out.push('s'),
            Expr::Var(Var::T) => out.push('t'),
            Expr::Neg(e) => {
                out.push('-');
                wrap(e, e.prec() < PREC_NEG, out);
            }
            Expr::Call(f, a) => {
                out.push_str(f.name());
                out.push('(');
                a.render_min(out);
                out.push(')');
            }
            Expr::Bin(op, l, r) => {
                let p = op.prec();
                let (lp, rp) = if *op == BinOp::Pow {
                    (
                        l.prec() <= p,
                        !(r.prec() >= p || matches!(**r, Expr::Neg(_))),
                    )
                } else {
                    (l.prec() < p, r.prec() <= p)
                };
                wrap(l, lp, out);
                match op {
                    BinOp::Add | BinOp::Sub => {
                        out.push(' ');
                        out.push_str(op.symbol());
                        out.push(' ');
                    }
                    _ => out.push_str(op.symbol()),
                }
                wrap(r, rp, out);
            }
        }
    }
}

fn fmt_num(v: f64) -> String {
    format!("{v:?}").trim_end_matches(".0").to_string()
}

/// Minimal-parentheses rendering.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.render_min(&mut s);
        f.write_str(&s)
    }
}
