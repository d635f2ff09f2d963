//! Canonical text, LaTeX and JSON forms of [`MPoly`] and [`RLaurent`].
//!
//! Text grammar (what [`to_text`] prints and [`parse_mpoly`] reads back):
//! terms `C*x1^a1*...*xn^an` in canonical order, with `C` parenthesized when
//! it has more than one `r`-term, `r^k` for parameter powers (`r^-k` for
//! negative `k`), and `^1` / `*1` elided, e.g.
//! `x1^2 + (2*r + 1)*x1 + r*x2 + r^2 + r`.
//!
//! The parser accepts a superset: any `+ - * ^ ( )` expression over integers,
//! `r` and `x1..xn`, with `/` allowed only by a nonzero unit `q*r^k`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::laurent::{RLaurent, Rational};
use super::mpoly::MPoly;
use crate::error::{Error, Result};

fn rational_text(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn r_power_text(k: i32) -> Option<String> {
    match k {
        0 => None,
        1 => Some("r".to_string()),
        k => Some(format!("r^{k}")),
    }
}

/// Body of `|q| * r^k` without sign.
fn laurent_term_body(q: &Rational, k: i32) -> String {
    let q = q.abs();
    match (q.is_one(), r_power_text(k)) {
        (_, None) => rational_text(&q),
        (true, Some(rp)) => rp,
        (false, Some(rp)) => format!("{}*{rp}", rational_text(&q)),
    }
}

/// Signed pieces `(negative, body)` in descending `r`-exponent order.
fn laurent_pieces(c: &RLaurent) -> Vec<(bool, String)> {
    c.terms()
        .rev()
        .map(|(k, q)| (q.is_negative(), laurent_term_body(q, k)))
        .collect()
}

fn join_pieces(pieces: &[(bool, String)]) -> String {
    if pieces.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (neg, body)) in pieces.iter().enumerate() {
        match (idx, neg) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(body);
    }
    out
}

pub(crate) fn laurent_to_text(c: &RLaurent) -> String {
    join_pieces(&laurent_pieces(c))
}

fn monomial_text(exps: &[u32]) -> String {
    exps.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{e}", i + 1)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Canonical text form.
pub fn to_text(p: &MPoly) -> String {
    let mut pieces = Vec::new();
    for (exps, c) in p.terms() {
        let mono = monomial_text(exps);
        if mono.is_empty() {
            pieces.extend(laurent_pieces(c));
            continue;
        }
        if c.len() == 1 {
            let (k, q) = c.terms().next().unwrap();
            let body = if q.abs().is_one() && k == 0 {
                mono
            } else {
                format!("{}*{mono}", laurent_term_body(q, k))
            };
            pieces.push((q.is_negative(), body));
        } else {
            pieces.push((false, format!("({})*{mono}", laurent_to_text(c))));
        }
    }
    join_pieces(&pieces)
}

fn rational_latex(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
    }
}

fn laurent_latex_pieces(c: &RLaurent) -> Vec<(bool, String)> {
    c.terms()
        .rev()
        .map(|(k, q)| {
            let a = q.abs();
            let rp = match k {
                0 => None,
                1 => Some("r".to_string()),
                k => Some(format!("r^{{{k}}}")),
            };
            let body = match (a.is_one(), rp) {
                (_, None) => rational_latex(&a),
                (true, Some(rp)) => rp,
                (false, Some(rp)) => format!("{} {rp}", rational_latex(&a)),
            };
            (q.is_negative(), body)
        })
        .collect()
}

fn join_latex(pieces: &[(bool, String)]) -> String {
    join_pieces(pieces)
}

/// LaTeX rendering with `x_{i}` subscripts and explicit `r` powers.
pub fn to_latex(p: &MPoly) -> String {
    let mut pieces = Vec::new();
    for (exps, c) in p.terms() {
        let mono = exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("x_{{{}}}", i + 1)
                } else {
                    format!("x_{{{}}}^{{{e}}}", i + 1)
                }
            })
            .collect::<Vec<_>>()
            .join(" ");
        if mono.is_empty() {
            pieces.extend(laurent_latex_pieces(c));
        } else if c.len() == 1 {
            let (neg, body) = laurent_latex_pieces(c).remove(0);
            let body = if body == "1" { mono } else { format!("{body} {mono}") };
            pieces.push((neg, body));
        } else {
            pieces.push((false, format!("\\left({}\\right) {mono}", join_latex(&laurent_latex_pieces(c)))));
        }
    }
    join_latex(&pieces)
}

pub fn laurent_to_latex(c: &RLaurent) -> String {
    join_latex(&laurent_latex_pieces(c))
}

// ---------------------------------------------------------------------------
// parsing

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    R,
    X(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |i: &mut usize| -> String {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().collect()
    };
    while i < chars.len() {
        let ch = chars[i];
        match ch {
            c if c.is_whitespace() => i += 1,
            '0'..='9' => {
                let d = digits(&mut i);
                out.push(Tok::Int(d.parse().map_err(|_| Error::Parse(format!("bad integer {d}")))?));
            }
            'r' => {
                out.push(Tok::R);
                i += 1;
            }
            'x' => {
                i += 1;
                let d = digits(&mut i);
                let idx: usize = d
                    .parse()
                    .map_err(|_| Error::Parse(format!("expected variable index after 'x' at {i}")))?;
                out.push(Tok::X(idx));
            }
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    n: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                -self.term()?
            }
            Some(Tok::Plus) => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc += &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let d = self.unary()?;
                    let u = unit_of(&d).ok_or_else(|| Error::Parse(format!("cannot divide by {d}")))?;
                    acc = acc.scale(&u);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MPoly> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let e: u32 = match self.bump() {
            Some(Tok::Int(v)) => v
                .try_into()
                .map_err(|_| Error::Parse("exponent too large".into()))?,
            other => return Err(Error::Parse(format!("expected exponent, found {other:?}"))),
        };
        if neg {
            let u = unit_of(&base).ok_or_else(|| Error::Parse(format!("negative power of {base}")))?;
            Ok(MPoly::constant(self.n, u.pow(e)))
        } else {
            Ok(base.pow(e))
        }
    }

    fn atom(&mut self) -> Result<MPoly> {
        match self.bump() {
            Some(Tok::Int(v)) => Ok(MPoly::constant(self.n, RLaurent::from_rational(Rational::from_integer(v)))),
            Some(Tok::R) => Ok(MPoly::constant(self.n, RLaurent::r())),
            Some(Tok::X(i)) => {
                if i == 0 || i > self.n {
                    return Err(Error::Parse(format!("x{i} is not a variable when n = {}", self.n)));
                }
                Ok(MPoly::var(self.n, i))
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(e),
                    other => Err(Error::Parse(format!("expected ')', found {other:?}"))),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Inverse of `p` when `p` is a unit `q*r^k` of `Q[r, 1/r]`.
fn unit_of(p: &MPoly) -> Option<RLaurent> {
    if p.len() != 1 {
        return None;
    }
    let (exps, c) = p.terms().next()?;
    if exps.iter().any(|&e| e > 0) || c.len() != 1 {
        return None;
    }
    let (k, q) = c.terms().next()?;
    if q.is_zero() {
        return None;
    }
    Some(RLaurent::monomial(q.recip(), -k))
}

/// Parses a polynomial in `x1..xn`.
pub fn parse_mpoly(s: &str, n: usize) -> Result<MPoly> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty input".into()));
    }
    let mut p = Parser { toks, pos: 0, n };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(out)
}

/// Parses a Laurent polynomial in `r` (no `x` variables allowed).
pub fn parse_laurent(s: &str) -> Result<RLaurent> {
    let p = parse_mpoly(s, 0)?;
    Ok(p.coeff(&[]))
}

impl std::str::FromStr for RLaurent {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_laurent(s)
    }
}

// ---------------------------------------------------------------------------
// JSON

#[derive(Serialize, Deserialize)]
struct CoeffJson {
    r: i32,
    q: String,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    x: Vec<u32>,
    c: Vec<CoeffJson>,
}

#[derive(Serialize, Deserialize)]
struct MPolyJson {
    n: usize,
    terms: Vec<TermJson>,
}

fn laurent_json(c: &RLaurent) -> Vec<CoeffJson> {
    c.terms()
        .rev()
        .map(|(k, q)| CoeffJson {
            r: k,
            q: rational_text(q),
        })
        .collect()
}

fn laurent_from_json(c: &[CoeffJson]) -> Result<RLaurent> {
    let mut terms = Vec::with_capacity(c.len());
    for t in c {
        let q: Rational = t
            .q
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational {:?}", t.q)))?;
        terms.push((t.r, q));
    }
    Ok(RLaurent::from_terms(terms))
}

impl Serialize for MPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MPolyJson {
            n: self.n(),
            terms: self
                .terms()
                .map(|(e, c)| TermJson {
                    x: e.to_vec(),
                    c: laurent_json(c),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = MPolyJson::deserialize(d)?;
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            if t.x.len() != j.n {
                return Err(D::Error::custom(format!("exponent vector {:?} has length != {}", t.x, j.n)));
            }
            terms.push((t.x.clone(), laurent_from_json(&t.c).map_err(D::Error::custom)?));
        }
        Ok(MPoly::from_terms(j.n, terms))
    }
}

impl Serialize for RLaurent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        laurent_json(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for RLaurent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let c = Vec::<CoeffJson>::deserialize(d)?;
        laurent_from_json(&c).map_err(D::Error::custom)
    }
}
