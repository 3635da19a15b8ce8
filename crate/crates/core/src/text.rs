//! Line-oriented text formats for Grassmann numbers, supermatrices,
//! superfunctions, scalars and Lie superalgebras. `#` starts a comment.
//!
//! Expressions are sums of products of rationals (`3/2`), even variables
//! `x1 x2^3 x1^-1`, parameters `g1`, odd generators `xi1` and odd
//! parameters `eta1`, with `*` optional and parentheses allowed:
//! `3/2 xi1 xi3 - 1`, `(x1^2 + 1) xi2`.

use std::cmp::Reverse;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::berezin::Integral;
use crate::error::{Error, Result};
use crate::grassmann::{Grassmann, GrassmannElement, OddIndex};
use crate::lie_super::LieSuperAlgebra;
use crate::polynomial::Polynomial;
use crate::scalar::{format_rational, Parity, Rational, Scalar};
use crate::superdomain::{Interval, SuperDomainShape, SuperFunction};
use crate::supermatrix::SuperMatrix;

/// Names an expression may use: `x1..x{even}`, `g1..g{params}`,
/// `xi1..xi{odd}`, `eta1..eta{aux}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Vocabulary {
    pub even: usize,
    pub params: usize,
    pub odd: usize,
    pub aux: usize,
}

impl Vocabulary {
    pub fn grassmann(generators: usize) -> Self {
        Vocabulary {
            odd: generators,
            ..Default::default()
        }
    }

    pub fn of_shape(shape: &SuperDomainShape) -> Self {
        Vocabulary {
            even: shape.m(),
            params: shape.params(),
            odd: shape.n(),
            aux: shape.aux(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

struct Lexed {
    token: Token,
    column: usize,
}

fn lex(src: &str, line: usize, first_column: usize) -> Result<Vec<Lexed>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = first_column + i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Token::Plus),
            '-' => Some(Token::Minus),
            '*' => Some(Token::Star),
            '^' => Some(Token::Caret),
            '(' => Some(Token::Open),
            ')' => Some(Token::Close),
            _ => None,
        };
        if let Some(token) = single {
            out.push(Lexed { token, column });
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let numer: String = chars[start..i].iter().collect();
            let mut value = Rational::from_integer(numer.parse::<BigInt>().expect("digits"));
            if i < chars.len() && chars[i] == '/' {
                i += 1;
                let dstart = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if dstart == i {
                    return Err(Error::parse(line, first_column + i, "expected a denominator after '/'"));
                }
                let denom: BigInt = chars[dstart..i].iter().collect::<String>().parse().expect("digits");
                if denom.is_zero() {
                    return Err(Error::parse(line, first_column + dstart, "zero denominator"));
                }
                value /= Rational::from_integer(denom);
            }
            out.push(Lexed {
                token: Token::Number(value),
                column,
            });
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Lexed {
                token: Token::Ident(chars[start..i].iter().collect()),
                column,
            });
        } else {
            return Err(Error::parse(line, column, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Lexed>,
    pos: usize,
    line: usize,
    end_column: usize,
    vocab: &'a Vocabulary,
}

type Value = Grassmann<Polynomial>;

impl Parser<'_> {
    fn generators(&self) -> usize {
        self.vocab.odd + self.vocab.aux
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|l| &l.token)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_column, |l| l.column)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(self.line, self.column(), message)
    }

    fn expression(&mut self) -> Result<Value> {
        let mut acc = Value::zero(self.generators());
        let mut first = true;
        loop {
            let mut negative = false;
            let mut saw_operator = false;
            while let Some(t @ (Token::Plus | Token::Minus)) = self.peek() {
                negative ^= *t == Token::Minus;
                saw_operator = true;
                self.pos += 1;
            }
            if !first && !saw_operator {
                return Ok(acc);
            }
            let term = self.term()?;
            acc = acc.try_add(&if negative { term.negated() } else { term })?;
            first = false;
            if !matches!(self.peek(), Some(Token::Plus | Token::Minus)) {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = acc.try_mul(&self.power()?)?;
                }
                Some(Token::Number(_) | Token::Ident(_) | Token::Open) => {
                    acc = acc.try_mul(&self.power()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Value> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let column = self.column();
        let exponent = match self.peek() {
            Some(Token::Number(r)) if r.is_integer() => r.to_integer(),
            _ => return Err(self.error("expected an integer exponent")),
        };
        self.pos += 1;
        let k: usize = exponent
            .try_into()
            .map_err(|_| Error::parse(self.line, column, "exponent too large"))?;
        if negative {
            let inverse = base
                .inv_even()
                .map_err(|e| Error::parse(self.line, column, format!("negative power: {e}")))?;
            inverse.try_pow(k)
        } else {
            base.try_pow(k)
        }
    }

    fn atom(&mut self) -> Result<Value> {
        let column = self.column();
        let gens = self.generators();
        match self.peek().cloned() {
            Some(Token::Number(r)) => {
                self.pos += 1;
                Ok(Value::constant(gens, Polynomial::constant(r)))
            }
            Some(Token::Open) => {
                self.pos += 1;
                let inner = self.expression()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                self.identifier(&name)
                    .ok_or_else(|| Error::parse(self.line, column, format!("unknown name '{name}'")))
            }
            Some(_) => Err(self.error("expected a number, a name or '('")),
            None => Err(self.error("unexpected end of expression")),
        }
    }

    fn identifier(&self, name: &str) -> Option<Value> {
        let split = name.find(|c: char| c.is_ascii_digit())?;
        let (prefix, digits) = name.split_at(split);
        let k: usize = digits.parse().ok()?;
        if k == 0 {
            return None;
        }
        let i = k - 1;
        let v = self.vocab;
        let gens = self.generators();
        match prefix {
            "x" if i < v.even => Some(Value::constant(gens, Polynomial::var(i))),
            "g" if i < v.params => Some(Value::constant(gens, Polynomial::var(v.even + i))),
            "xi" if i < v.odd => Value::generator(gens, i).ok(),
            "eta" if i < v.aux => Value::generator(gens, v.odd + i).ok(),
            _ => None,
        }
    }
}

/// Parses an expression on one line; `first_column` is the 1-based column
/// of `src` within that line.
pub fn parse_expression_at(src: &str, vocab: &Vocabulary, line: usize, first_column: usize) -> Result<Grassmann<Polynomial>> {
    let tokens = lex(src, line, first_column)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        line,
        end_column: first_column + src.chars().count(),
        vocab,
    };
    let value = parser.expression()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(value)
}

pub fn parse_expression(src: &str, vocab: &Vocabulary) -> Result<Grassmann<Polynomial>> {
    parse_expression_at(src, vocab, 1, 1)
}

fn to_rational_coefficients(value: &Grassmann<Polynomial>, line: usize, column: usize) -> Result<GrassmannElement> {
    let mut out = GrassmannElement::zero(value.generators());
    for (k, p) in value.terms() {
        let c = p
            .as_constant()
            .ok_or_else(|| Error::parse(line, column, "expected a Grassmann number without even variables"))?;
        out.add_term(*k, c);
    }
    Ok(out)
}

/// Parses a Grassmann number such as `3/2 xi1 xi3 - 1`.
pub fn parse_grassmann(src: &str, generators: usize) -> Result<GrassmannElement> {
    let value = parse_expression(src, &Vocabulary::grassmann(generators))?;
    to_rational_coefficients(&value, 1, 1)
}

fn join_signed(parts: Vec<(bool, String)>) -> String {
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (negative, body)) in parts.into_iter().enumerate() {
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

fn odd_names(index: OddIndex, odd: usize) -> Vec<String> {
    index
        .indices()
        .map(|j| if j < odd { format!("xi{}", j + 1) } else { format!("eta{}", j - odd + 1) })
        .collect()
}

/// Canonical form: highest odd degree first, then lexicographic, e.g.
/// `3/2 xi1 xi3 - 1`.
pub fn format_grassmann(x: &GrassmannElement) -> String {
    format_odd_sum(x, x.generators())
}

/// An integral over a shape with odd parameters: a Grassmann number in
/// `eta<k>` times a power of `s`, e.g. `(2 eta1 - 1)*s`.
pub fn format_integral(i: &Integral) -> String {
    if let Ok(s) = i.scalar() {
        return s.to_string();
    }
    let value = format!("({})", format_odd_sum(i.value(), 0));
    match i.gauss_exponent() {
        0 => value,
        1 => format!("{value}*s"),
        k => format!("{value}*s^{k}"),
    }
}

fn format_odd_sum(x: &GrassmannElement, odd: usize) -> String {
    let mut terms: Vec<(&OddIndex, &Rational)> = x.terms().collect();
    terms.sort_by_key(|(k, _)| (Reverse(k.len()), k.indices().collect::<Vec<_>>()));
    let parts = terms
        .into_iter()
        .map(|(k, c)| {
            let mut factors = odd_names(*k, odd);
            if factors.is_empty() || !c.abs().is_one() {
                factors.insert(0, format_rational(&c.abs()));
            }
            (c.is_negative(), factors.join(" "))
        })
        .collect();
    join_signed(parts)
}

/// Canonical form of a superfunction value: `(poly) xi1 xi2` per odd
/// monomial, highest odd degree first.
pub fn format_function(f: &SuperFunction) -> String {
    let shape = f.shape();
    let (m, n) = (shape.m(), shape.n());
    let var_name = move |i: usize| if i < m { format!("x{}", i + 1) } else { format!("g{}", i - m + 1) };
    let mut terms: Vec<(&OddIndex, &Polynomial)> = f.terms().collect();
    terms.sort_by_key(|(k, _)| (Reverse(k.len()), k.indices().collect::<Vec<_>>()));
    let parts = terms
        .into_iter()
        .map(|(k, p)| {
            let odd = odd_names(*k, n).join(" ");
            match p.as_single_term() {
                Some((mono, c)) => {
                    let body = Polynomial::monomial(mono.clone(), c.abs()).format_with(&var_name);
                    let body = match (odd.is_empty(), body == "1") {
                        (true, _) => body,
                        (false, true) => odd,
                        (false, false) => format!("{body} {odd}"),
                    };
                    (c.is_negative(), body)
                }
                None if odd.is_empty() => (false, format!("({})", p.format_with(&var_name))),
                None => (false, format!("({}) {odd}", p.format_with(&var_name))),
            }
        })
        .collect();
    join_signed(parts)
}

/// Parses `3/2`, `-s`, `3/2*s^2`, `5 s^-1` (`s = √(2π)`).
pub fn parse_scalar(src: &str) -> Result<Scalar> {
    let trimmed = src.trim();
    let lead = src.len() - src.trim_start().len() + 1;
    let (coeff_part, gauss) = match trimmed.find('s') {
        None => (trimmed, 0),
        Some(pos) => {
            let rest = trimmed[pos + 1..].trim();
            let exponent = if rest.is_empty() {
                1
            } else {
                let e = rest
                    .strip_prefix('^')
                    .ok_or_else(|| Error::parse(1, lead + pos + 1, "expected '^' after s"))?;
                e.trim()
                    .parse::<i32>()
                    .map_err(|_| Error::parse(1, lead + pos + 2, "expected an integer power of s"))?
            };
            (trimmed[..pos].trim_end().trim_end_matches('*').trim_end(), exponent)
        }
    };
    let rational = match coeff_part {
        "" | "+" => Rational::one(),
        "-" => -Rational::one(),
        text => {
            let value = parse_expression_at(text, &Vocabulary::default(), 1, lead)?;
            to_rational_coefficients(&value, 1, lead)?.body()
        }
    };
    Ok(Scalar::new(rational, gauss))
}

/// Non-empty lines with comments removed, as `(line number, text, column
/// of the first kept character)`.
fn content_lines(src: &str) -> Vec<(usize, &str, usize)> {
    src.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let text = raw.split('#').next().unwrap_or("");
            let trimmed = text.trim();
            if trimmed.is_empty() {
                None
            } else {
                let column = text.len() - text.trim_start().len() + 1;
                Some((i + 1, trimmed, column))
            }
        })
        .collect()
}

fn parse_usizes(text: &str, line: usize, column: usize, expected: usize, what: &str) -> Result<Vec<usize>> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != expected {
        return Err(Error::parse(line, column, format!("expected {what}")));
    }
    fields
        .iter()
        .map(|f| f.parse::<usize>().map_err(|_| Error::parse(line, column, format!("expected {what}"))))
        .collect()
}

/// Supermatrix file: header `p q N`, then `(p+q)²` Grassmann numbers in
/// `Λ_N`, one per line, row-major.
pub fn parse_supermatrix(src: &str) -> Result<SuperMatrix<Rational>> {
    let lines = content_lines(src);
    let Some(&(line, header, column)) = lines.first() else {
        return Err(Error::parse(1, 1, "missing header 'p q N'"));
    };
    let dims = parse_usizes(header, line, column, 3, "header 'p q N'")?;
    let (p, q, gens) = (dims[0], dims[1], dims[2]);
    if gens > 63 {
        return Err(Error::parse(line, column, "at most 63 generators"));
    }
    let size = (p + q) * (p + q);
    let body = &lines[1..];
    if body.len() != size {
        let at = body.get(size).map_or((line, column), |l| (l.0, l.2));
        return Err(Error::parse(at.0, at.1, format!("expected {size} entries, found {}", body.len())));
    }
    let mut entries = Vec::with_capacity(size);
    for &(line, text, column) in body {
        let value = parse_expression_at(text, &Vocabulary::grassmann(gens), line, column)?;
        entries.push(to_rational_coefficients(&value, line, column)?);
    }
    SuperMatrix::new(p, q, gens, entries).map_err(|e| Error::parse(body[0].0, 1, e.to_string()))
}

pub fn format_supermatrix(x: &SuperMatrix<Rational>) -> String {
    let mut out = format!("{} {} {}\n", x.p(), x.q(), x.generators());
    for e in x.entries() {
        out.push_str(&format_grassmann(e));
        out.push('\n');
    }
    out
}

fn parse_interval(text: &str, line: usize, column: usize) -> Result<Interval> {
    let bad = || Error::parse(line, column, format!("bad interval '{text}'"));
    if text == "R" {
        return Ok(Interval::real_line());
    }
    let inner = text
        .strip_prefix(['[', '('])
        .and_then(|t| t.strip_suffix([']', ')']))
        .ok_or_else(bad)?;
    let (lo, hi) = inner.split_once(',').ok_or_else(bad)?;
    let bound = |s: &str| -> Result<Option<Rational>> {
        match s.trim() {
            "-inf" | "inf" => Ok(None),
            s => parse_scalar(s)
                .ok()
                .filter(|v| v.gauss_exponent() == 0)
                .map(|v| Some(v.value().clone()))
                .ok_or_else(bad),
        }
    };
    match (bound(lo)?, bound(hi)?) {
        (None, None) => Ok(Interval::real_line()),
        (Some(a), None) if text.starts_with('[') => Ok(Interval::from(a)),
        (Some(a), Some(b)) if text.starts_with('[') && text.ends_with(']') => {
            Interval::closed(a, b).map_err(|_| bad())
        }
        (None, Some(b)) if text.ends_with(']') => Ok(Interval { lo: None, hi: Some(b) }),
        _ => Err(bad()),
    }
}

/// Superfunction file: header `m n aux`, then `box I1 .. Im` with each
/// interval `R`, `[a,b]`, `[a,inf)` or `(-inf,b]` (without this line every
/// interval is `R`), then lines `polynomial : odd monomial` whose
/// right side is `1` or a product of `xi<i>`/`eta<k>`.
pub fn parse_superfunction(src: &str) -> Result<SuperFunction> {
    let lines = content_lines(src);
    let Some(&(line, header, column)) = lines.first() else {
        return Err(Error::parse(1, 1, "missing header 'm n aux'"));
    };
    let dims = parse_usizes(header, line, column, 3, "header 'm n aux'")?;
    let (m, n, aux) = (dims[0], dims[1], dims[2]);
    if n + aux > 63 {
        return Err(Error::parse(line, column, "at most 63 odd generators"));
    }
    let mut rest = &lines[1..];
    let mut boxes = vec![Interval::real_line(); m];
    if let Some(&(line, text, column)) = rest.first() {
        if let Some(spec) = text.strip_prefix("box") {
            let fields: Vec<&str> = spec.split_whitespace().collect();
            if fields.len() != m {
                return Err(Error::parse(line, column, format!("box needs {m} intervals")));
            }
            boxes = fields.iter().map(|f| parse_interval(f, line, column)).collect::<Result<_>>()?;
            rest = &rest[1..];
        }
    }
    let shape = SuperDomainShape::new(boxes, n).with_params(0, aux);
    let even_vocab = Vocabulary {
        even: m,
        ..Default::default()
    };
    let odd_vocab = Vocabulary {
        odd: n,
        aux,
        ..Default::default()
    };
    let mut value = Grassmann::zero(n + aux);
    for &(line, text, column) in rest {
        let (left, right) = text
            .split_once(':')
            .ok_or_else(|| Error::parse(line, column, "expected 'polynomial : odd monomial'"))?;
        let right_column = column + left.len() + 1;
        let poly = parse_expression_at(left, &even_vocab, line, column)?.body();
        let odd = parse_expression_at(right, &odd_vocab, line, right_column)?;
        let single: Vec<_> = odd.terms().collect();
        let (&index, sign) = match single.as_slice() {
            [(k, c)] if c.is_constant() && c.as_constant().is_some_and(|c| c.abs().is_one()) => {
                (*k, c.as_constant().unwrap())
            }
            _ => return Err(Error::parse(line, right_column, "right side must be a single odd monomial")),
        };
        value.add_term(index, poly.scale(&sign));
    }
    SuperFunction::from_value(&shape, value)
}

/// Canonical file text for a superfunction, readable by
/// [`parse_superfunction`].
pub fn format_superfunction(f: &SuperFunction) -> Result<String> {
    let shape = f.shape();
    if shape.params() != 0 {
        return Err(Error::Dimension("superfunction files carry no even parameters".into()));
    }
    let mut out = format!("{} {} {}\n", shape.m(), shape.n(), shape.aux());
    if shape.m() > 0 {
        let boxes: Vec<String> = shape.boxes().iter().map(ToString::to_string).collect();
        out.push_str(&format!("box {}\n", boxes.join(" ")));
    }
    let mut terms: Vec<(&OddIndex, &Polynomial)> = f.terms().collect();
    terms.sort_by_key(|(k, _)| (Reverse(k.len()), k.indices().collect::<Vec<_>>()));
    for (k, p) in terms {
        let odd = odd_names(*k, shape.n());
        let odd = if odd.is_empty() { "1".to_string() } else { odd.join(" ") };
        out.push_str(&format!("{p} : {odd}\n"));
    }
    Ok(out)
}

/// Lie superalgebra file: header `name:parity ...` (parity `0` or `1`),
/// then lines `i j -> c1 ... cn` with 0-based basis indices. Omitted
/// brackets are zero or the graded-antisymmetric partner of a listed one.
pub fn parse_lie_algebra(src: &str) -> Result<LieSuperAlgebra> {
    let lines = content_lines(src);
    let Some(&(line, header, column)) = lines.first() else {
        return Err(Error::parse(1, 1, "missing header 'name:parity ...'"));
    };
    let mut names = Vec::new();
    let mut parities = Vec::new();
    for field in header.split_whitespace() {
        let (name, parity) = field
            .split_once(':')
            .ok_or_else(|| Error::parse(line, column, format!("expected name:parity, found '{field}'")))?;
        let parity = match parity {
            "0" => Parity::Even,
            "1" => Parity::Odd,
            _ => return Err(Error::parse(line, column, format!("parity of {name} must be 0 or 1"))),
        };
        if names.iter().any(|n| n == name) {
            return Err(Error::parse(line, column, format!("duplicate generator name {name}")));
        }
        names.push(name.to_string());
        parities.push(parity);
    }
    let dim = names.len();
    let mut given = Vec::new();
    for &(line, text, column) in &lines[1..] {
        let (pair, coeffs) = text
            .split_once("->")
            .ok_or_else(|| Error::parse(line, column, "expected 'i j -> c1 ... cn'"))?;
        let idx = parse_usizes(pair, line, column, 2, "two basis indices")?;
        if idx.iter().any(|&i| i >= dim) {
            return Err(Error::parse(line, column, format!("basis index out of range 0..{dim}")));
        }
        let values: Vec<&str> = coeffs.split_whitespace().collect();
        if values.len() != dim {
            return Err(Error::parse(line, column + pair.len() + 2, format!("expected {dim} coefficients")));
        }
        let vector = values
            .iter()
            .map(|v| {
                parse_scalar(v)
                    .ok()
                    .filter(|s| s.gauss_exponent() == 0)
                    .map(|s| s.value().clone())
                    .ok_or_else(|| Error::parse(line, column + pair.len() + 2, format!("bad coefficient '{v}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        given.push((idx[0], idx[1], vector));
    }
    LieSuperAlgebra::from_brackets(names, parities, &given).map_err(|e| Error::parse(line, column, e.to_string()))
}

pub fn format_lie_algebra(g: &LieSuperAlgebra) -> String {
    let header: Vec<String> = g
        .names()
        .iter()
        .zip(g.parities())
        .map(|(n, p)| format!("{n}:{}", p.bit()))
        .collect();
    let mut out = header.join(" ");
    out.push('\n');
    for i in 0..g.dim() {
        for j in i..g.dim() {
            let v = g.structure_constant(i, j);
            if v.iter().any(|c| !c.is_zero()) {
                let cs: Vec<String> = v.iter().map(format_rational).collect();
                out.push_str(&format!("{i} {j} -> {}\n", cs.join(" ")));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn grassmann_round_trip() {
        let x = parse_grassmann("3/2 xi1 xi3 - 1", 4).unwrap();
        assert_eq!(format_grassmann(&x), "3/2 xi1 xi3 - 1");
        assert_eq!(parse_grassmann("xi3 * xi1", 4).unwrap(), parse_grassmann("-xi1 xi3", 4).unwrap());
        assert_eq!(parse_grassmann("(1 + xi1)^2", 2).unwrap(), parse_grassmann("1 + 2 xi1", 2).unwrap());
        assert_eq!(format_grassmann(&GrassmannElement::zero(2)), "0");
    }

    #[test]
    fn parse_errors_have_positions() {
        match parse_grassmann("1 + xi5", 4) {
            Err(Error::Parse { line: 1, column: 5, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_grassmann("2 + $", 1) {
            Err(Error::Parse { column: 5, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_grassmann("(1 + xi1", 1), Err(Error::Parse { .. })));
        assert!(matches!(parse_grassmann("1/0", 1), Err(Error::Parse { .. })));
    }

    #[test]
    fn scalars() {
        for (text, r, e) in [("3/2", rat(3) / rat(2), 0), ("-s", rat(-1), 1), ("3/2*s^2", rat(3) / rat(2), 2), ("s^-1", rat(1), -1)] {
            let s = parse_scalar(text).unwrap();
            assert_eq!(s, Scalar::new(r, e));
            assert_eq!(parse_scalar(&s.to_string()).unwrap(), s);
        }
    }

    #[test]
    fn supermatrix_file() {
        let src = "# diag(6,3)\n1 1 0\n6\n0\n0\n3\n";
        let x = parse_supermatrix(src).unwrap();
        assert_eq!(x.berezinian().unwrap().body(), rat(2));
        assert_eq!(parse_supermatrix(&format_supermatrix(&x)).unwrap(), x);
        match parse_supermatrix("1 1 2\n1\nxi1\nxi2\n") {
            Err(Error::Parse { .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_supermatrix("1 1 2\n1\nxi1 +\nxi2\n1") {
            Err(Error::Parse { line: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn superfunction_file() {
        let src = "2 2 1\nbox [0,1] R\nx1^2 - 3 : xi1 xi2\n1/2 x2 : eta1\n7 : 1\n";
        let f = parse_superfunction(src).unwrap();
        assert_eq!(f.shape().interval(0), &Interval::closed(rat(0), rat(1)).unwrap());
        assert_eq!(f.coefficient(OddIndex::from_bits(0b011)).format_with(&|i| format!("x{}", i + 1)), "x1^2 - 3");
        let text = format_superfunction(&f).unwrap();
        assert_eq!(parse_superfunction(&text).unwrap(), f);
        assert_eq!(parse_superfunction("0 2 0\n1 : xi2 xi1\n").unwrap().coefficient(OddIndex::from_bits(3)), Polynomial::from_int(-1));
        assert!(matches!(parse_superfunction("1 0 0\nbox [1,0]\n1 : 1\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn lie_file() {
        let src = "E11:0 E22:0 E12:1 E21:1\n0 2 -> 0 0 1 0\n0 3 -> 0 0 0 -1\n1 2 -> 0 0 -1 0\n1 3 -> 0 0 0 1\n2 3 -> 1 1 0 0\n";
        let g = parse_lie_algebra(src).unwrap();
        assert_eq!(g, LieSuperAlgebra::gl11());
        assert_eq!(parse_lie_algebra(&format_lie_algebra(&g)).unwrap(), g);
        assert!(matches!(parse_lie_algebra("A:2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_lie_algebra("A:0 B:1\n0 5 -> 1 0\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn function_format() {
        let shape = SuperDomainShape::euclidean(1, 2);
        let f = SuperFunction::from_value(&shape, parse_expression("(x1^2 + 1) xi1 xi2 - 3 x1 xi2 + 2", &Vocabulary::of_shape(&shape)).unwrap()).unwrap();
        assert_eq!(format_function(&f), "(x1^2 + 1) xi1 xi2 - 3 x1 xi2 + 2");
        let back = parse_expression(&format_function(&f), &Vocabulary::of_shape(&shape)).unwrap();
        assert_eq!(&back, f.value());
    }
}
