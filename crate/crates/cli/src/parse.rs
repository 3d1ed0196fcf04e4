//! Expression syntax for polynomials and differential forms.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' int)? | dblock
//! dblock := dvar ('^' dvar)*
//! base   := rational | var | '(' expr ')'
//! ```
//!
//! `dvar` is `d` immediately followed by a declared variable name, so with
//! variables `y, z` the token `dy` is a differential. A `^` after a
//! differential is a wedge; after anything else it is an integer power.
//! Products are wedge products, so `z*dy^dz` is a 2-form.

use std::fmt;

use algres::{DiffForm, Poly, Q};
use num_bigint::BigInt;
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the parsed text.
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at column {}: {}", self.pos + 1, self.msg)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = Result<T, ParseError>;

fn err<T>(pos: usize, msg: impl Into<String>) -> PResult<T> {
    Err(ParseError {
        pos,
        msg: msg.into(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Nonnegative rational literal.
    Num(Q),
    Var(String),
    /// Wedge of differentials of distinct variables, in the written order.
    Diff(Vec<String>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> PResult<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(text[start..i].parse().expect("digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().expect("in bounds");
                return err(start, format!("unexpected character {ch:?}"));
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn differential(&self, name: &str) -> Option<String> {
        let rest = name.strip_prefix('d')?;
        (!self.vars.iter().any(|v| v == name) && self.vars.iter().any(|v| v == rest))
            .then(|| rest.to_string())
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> PResult<Expr> {
        if let Some(Tok::Ident(name)) = self.peek() {
            if let Some(v) = self.differential(name) {
                self.bump();
                return self.dblock(v);
            }
        }
        let base = self.base()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(k)) => match u32::try_from(&k) {
                Ok(k) => Ok(Expr::Pow(Box::new(base), k)),
                Err(_) => err(pos, "exponent too large"),
            },
            Some(Tok::Ident(name)) if self.differential(&name).is_some() => {
                err(pos, "wedge '^' must follow a differential; use '*' to multiply by a form")
            }
            _ => err(pos, "expected an integer exponent after '^'"),
        }
    }

    fn dblock(&mut self, first: String) -> PResult<Expr> {
        let mut vars = vec![first];
        while self.peek() == Some(&Tok::Caret) {
            self.bump();
            let pos = self.pos();
            let next = match self.bump() {
                Some(Tok::Ident(name)) => self.differential(&name),
                _ => None,
            };
            let Some(v) = next else {
                return err(pos, "expected a differential after '^' (powers of differentials are not defined)");
            };
            if vars.contains(&v) {
                return err(pos, format!("repeated differential d{v}"));
            }
            vars.push(v);
        }
        Ok(Expr::Diff(vars))
    }

    fn base(&mut self) -> PResult<Expr> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => {
                if self.peek() != Some(&Tok::Slash) {
                    return Ok(Expr::Num(Q::from_integer(n)));
                }
                self.bump();
                let dpos = self.pos();
                match self.bump() {
                    Some(Tok::Int(d)) if !d.is_zero() => Ok(Expr::Num(Q::new(n, d))),
                    Some(Tok::Int(_)) => err(dpos, "zero denominator"),
                    _ => err(dpos, "expected an integer denominator after '/'"),
                }
            }
            Some(Tok::Ident(name)) => {
                if self.vars.contains(&name) {
                    Ok(Expr::Var(name))
                } else {
                    err(pos, format!("unknown variable {name:?}"))
                }
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                let cpos = self.pos();
                match self.bump() {
                    Some(Tok::RParen) => Ok(e),
                    _ => err(cpos, "expected ')'"),
                }
            }
            Some(Tok::Slash) => err(pos, "'/' only appears inside rational literals"),
            Some(_) => err(pos, "expected a number, variable, differential or '('"),
            None => err(pos, "unexpected end of input"),
        }
    }
}

/// Parses `text` to an AST over the declared variables.
pub fn parse_expr(text: &str, vars: &[String]) -> PResult<Expr> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        end: text.len(),
        vars,
    };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return err(p.pos(), "unexpected trailing input");
    }
    Ok(e)
}

fn var_index(vars: &[String], name: &str) -> usize {
    vars.iter().position(|v| v == name).expect("parser only admits declared variables")
}

/// Evaluates an AST to a form; functions are 0-forms.
pub fn eval(e: &Expr, vars: &[String]) -> Result<DiffForm, String> {
    let n = vars.len();
    Ok(match e {
        Expr::Num(c) => DiffForm::function(Poly::constant(n, c.clone())),
        Expr::Var(v) => DiffForm::function(Poly::var(n, var_index(vars, v))),
        Expr::Diff(vs) => {
            let idx: Vec<usize> = vs.iter().map(|v| var_index(vars, v)).collect();
            DiffForm::monomial(n, &idx, Poly::one(n)).map_err(|e| e.to_string())?
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let (x, y) = (eval(a, vars)?, eval(b, vars)?);
            let y = if matches!(e, Expr::Sub(..)) { -&y } else { y };
            let lift = |f: &DiffForm, deg: usize| {
                if f.degree() == 0 && f.is_zero() {
                    DiffForm::zero(n, deg)
                } else {
                    f.clone()
                }
            };
            let (x, y) = (lift(&x, y.degree()), lift(&y, x.degree()));
            if x.degree() != y.degree() {
                return Err(format!(
                    "cannot add forms of degree {} and {}",
                    x.degree(),
                    y.degree()
                ));
            }
            x.checked_add(&y).map_err(|e| e.to_string())?
        }
        Expr::Neg(a) => -&eval(a, vars)?,
        Expr::Mul(a, b) => eval(a, vars)?
            .wedge(&eval(b, vars)?)
            .map_err(|e| e.to_string())?,
        Expr::Pow(a, k) => {
            let x = eval(a, vars)?;
            match x.as_function() {
                Some(f) => DiffForm::function(f.pow(*k)),
                None if *k == 1 => x,
                None => return Err("powers of forms of positive degree are not defined".into()),
            }
        }
    })
}

fn wrap(msg: String) -> ParseError {
    ParseError { pos: 0, msg }
}

pub fn parse_form(text: &str, vars: &[String]) -> PResult<DiffForm> {
    eval(&parse_expr(text, vars)?, vars).map_err(wrap)
}

pub fn parse_poly(text: &str, vars: &[String]) -> PResult<Poly> {
    parse_form(text, vars)?
        .as_function()
        .ok_or_else(|| wrap("expected a function, found a form of positive degree".into()))
}

/// Comma-separated polynomials, optionally enclosed in `<...>`.
pub fn parse_poly_list(text: &str, vars: &[String]) -> PResult<Vec<Poly>> {
    let trimmed = text.trim();
    let (body, offset) = match trimmed.strip_prefix('<') {
        Some(rest) => match rest.strip_suffix('>') {
            Some(inner) => (inner, text.len() - text.trim_start().len() + 1),
            None => return err(text.len(), "missing closing '>'"),
        },
        None => (text, 0),
    };
    let mut out = Vec::new();
    let mut start = 0;
    for piece in body.split(',') {
        let p = parse_poly(piece, vars).map_err(|mut e| {
            e.pos += offset + start;
            e
        })?;
        out.push(p);
        start += piece.len() + 1;
    }
    Ok(out)
}

/// Splits and validates a `--vars` list such as `y,z`.
pub fn parse_vars(text: &str) -> Result<Vec<String>, String> {
    let vars: Vec<String> = text.split(',').map(|s| s.trim().to_string()).collect();
    for (i, v) in vars.iter().enumerate() {
        let mut chars = v.chars();
        let ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(format!("invalid variable name {v:?}"));
        }
        if vars[..i].contains(v) {
            return Err(format!("variable {v:?} declared twice"));
        }
        if let Some(rest) = v.strip_prefix('d') {
            if vars.iter().any(|w| w == rest) {
                return Err(format!("variable {v:?} clashes with the differential of {rest:?}"));
            }
        }
    }
    Ok(vars)
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) | Expr::Neg(_) => 1,
        Expr::Mul(..) => 2,
        Expr::Pow(..) => 3,
        Expr::Num(_) | Expr::Var(_) | Expr::Diff(_) => 4,
    }
}

fn render_at(e: &Expr, need: u8, leftmost: bool, out: &mut String) {
    let neg_misplaced = matches!(e, Expr::Neg(_)) && !leftmost;
    if prec(e) < need || neg_misplaced {
        out.push('(');
        render_at(e, 0, true, out);
        out.push(')');
        return;
    }
    match e {
        Expr::Num(c) => out.push_str(&c.to_string()),
        Expr::Var(v) => out.push_str(v),
        Expr::Diff(vs) => {
            let parts: Vec<String> = vs.iter().map(|v| format!("d{v}")).collect();
            out.push_str(&parts.join("^"));
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            render_at(a, 1, leftmost, out);
            out.push_str(if matches!(e, Expr::Add(..)) { " + " } else { " - " });
            render_at(b, 2, false, out);
        }
        Expr::Neg(a) => {
            out.push('-');
            render_at(a, 2, false, out);
        }
        Expr::Mul(a, b) => {
            render_at(a, 2, false, out);
            out.push('*');
            render_at(b, 3, false, out);
        }
        Expr::Pow(a, k) => {
            render_at(a, 4, false, out);
            out.push_str(&format!("^{k}"));
        }
    }
}

/// Text that parses back to the same AST, with minimal parentheses.
pub fn render(e: &Expr) -> String {
    let mut out = String::new();
    render_at(e, 0, true, &mut out);
    out
}
