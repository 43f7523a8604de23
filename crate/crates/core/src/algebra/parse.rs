//! Parser for polynomial and rational-function strings.
//!
//! Grammar: integer literals, `+ - * / ^`, parentheses, identifiers and `sqrt(d)`.
//! Juxtaposition multiplies (`2t`, `3(t+1)`). Identifiers listed as fibre variables
//! become polynomial variables; any other identifier is the single base variable.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::field::{Fe, Rational};
use super::poly::Poly;
use super::ratfunc::RatFunc;
use crate::error::AlgebraError;

/// Polynomial in the fibre variables with rational-function coefficients in the base variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub terms: BTreeMap<Vec<u32>, RatFunc>,
    nvars: usize,
}

impl Expr {
    pub fn constant(nvars: usize, r: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(vec![0; nvars], r);
        }
        Expr { terms, nvars }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(e, RatFunc::one());
        Expr { terms, nvars }
    }

    /// The base-variable part when no fibre variable occurs.
    pub fn as_base(&self) -> Option<RatFunc> {
        match self.terms.len() {
            0 => Some(RatFunc::zero()),
            1 => self.terms.get(&vec![0; self.nvars]).cloned(),
            _ => None,
        }
    }

    pub fn coeff(&self, exps: &[u32]) -> RatFunc {
        self.terms.get(exps).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn add(&self, o: &Expr) -> Expr {
        let mut terms = self.terms.clone();
        for (k, v) in &o.terms {
            let s = match terms.get(k) {
                Some(a) => a + v,
                None => v.clone(),
            };
            if s.is_zero() {
                terms.remove(k);
            } else {
                terms.insert(k.clone(), s);
            }
        }
        Expr { terms, nvars: self.nvars }
    }

    pub fn neg(&self) -> Expr {
        Expr { terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(), nvars: self.nvars }
    }

    pub fn sub(&self, o: &Expr) -> Expr {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Expr) -> Expr {
        let mut out = Expr::constant(self.nvars, RatFunc::zero());
        for (ka, va) in &self.terms {
            for (kb, vb) in &o.terms {
                let k: Vec<u32> = ka.iter().zip(kb).map(|(a, b)| a + b).collect();
                let mut single = BTreeMap::new();
                single.insert(k, va * vb);
                out = out.add(&Expr { terms: single, nvars: self.nvars });
            }
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn pow(&self, e: u32) -> Expr {
        let mut out = Expr::constant(self.nvars, RatFunc::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Multiplies every coefficient by `r`.
    pub fn scale_by(&self, r: &RatFunc) -> Expr {
        if r.is_zero() {
            return Expr::constant(self.nvars, RatFunc::zero());
        }
        Expr { terms: self.terms.iter().map(|(k, v)| (k.clone(), v * r)).collect(), nvars: self.nvars }
    }

    /// Substitutes the base variable `t ↦ f(t)` in every coefficient.
    pub fn compose_base(&self, f: &RatFunc) -> Expr {
        Expr { terms: self.terms.iter().map(|(k, v)| (k.clone(), v.compose(f))).collect(), nvars: self.nvars }
    }

    /// Substitutes fibre variable `i ↦ images[i]`, coefficients composed with `base` first.
    pub fn substitute(&self, images: &[Expr], base: &RatFunc) -> Expr {
        let n = images.first().map_or(self.nvars, |e| e.nvars);
        let mut out = Expr::constant(n, RatFunc::zero());
        for (k, v) in &self.terms {
            let mut term = Expr::constant(n, v.compose(base));
            for (i, &e) in k.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[i].pow(e));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Degree in fibre variable `i`.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|k| k[i]).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parsed {
    pub expr: Expr,
    pub base_var: Option<String>,
    pub radicand: i64,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
    End,
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    fibre: &'a [&'a str],
    base_var: Option<String>,
    radicand: i64,
}

fn err(pos: usize, msg: impl Into<String>) -> AlgebraError {
    AlgebraError::Parse { pos, msg: msg.into() }
}

fn tokenize(s: &str) -> Result<Vec<(Tok, usize)>, AlgebraError> {
    let b = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < b.len() {
        let c = b[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && (b[i] as char).is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Num(s[st..i].parse().unwrap()), st));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < b.len() && ((b[i] as char).is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(s[st..i].to_string()), st));
        } else if c == '*' && b.get(i + 1) == Some(&b'*') {
            out.push((Tok::Op('^'), i));
            i += 2;
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), i));
            i += 1;
        } else {
            return Err(err(i, format!("unexpected character '{c}'")));
        }
    }
    out.push((Tok::End, s.len()));
    Ok(out)
}

fn is_squarefree_int(d: i64) -> bool {
    let n = d.unsigned_abs();
    let mut k = 2u64;
    while k * k <= n {
        if n % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    true
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn at(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, c: char) -> Result<(), AlgebraError> {
        if self.peek() == &Tok::Op(c) {
            self.bump();
            Ok(())
        } else {
            Err(err(self.at(), format!("expected '{c}'")))
        }
    }

    fn nvars(&self) -> usize {
        self.fibre.len()
    }

    fn expr(&mut self) -> Result<Expr, AlgebraError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Op('-') => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, AlgebraError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Tok::Op('/') => {
                    self.bump();
                    let pos = self.at();
                    let d = self.unary()?;
                    let d = d.as_base().ok_or_else(|| err(pos, "division by a fibre variable"))?;
                    if d.is_zero() {
                        return Err(err(pos, "division by zero"));
                    }
                    acc = acc.mul(&Expr::constant(self.nvars(), d.inv()));
                }
                Tok::Num(_) | Tok::Ident(_) | Tok::Op('(') => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, AlgebraError> {
        match self.peek() {
            Tok::Op('-') => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Tok::Op('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn exponent(&mut self) -> Result<i64, AlgebraError> {
        let pos = self.at();
        let neg = if self.peek() == &Tok::Op('-') {
            self.bump();
            true
        } else {
            false
        };
        let paren = self.peek() == &Tok::Op('(');
        if paren {
            self.bump();
        }
        let inner_neg = if paren && self.peek() == &Tok::Op('-') {
            self.bump();
            true
        } else {
            false
        };
        let n = match self.bump() {
            Tok::Num(n) => i64::try_from(n).map_err(|_| err(pos, "exponent too large"))?,
            _ => return Err(err(pos, "expected integer exponent")),
        };
        if paren {
            self.expect(')')?;
        }
        Ok(if neg ^ inner_neg { -n } else { n })
    }

    fn power(&mut self) -> Result<Expr, AlgebraError> {
        let base = self.atom()?;
        if self.peek() != &Tok::Op('^') {
            return Ok(base);
        }
        self.bump();
        let pos = self.at();
        let e = self.exponent()?;
        if e > 200 {
            return Err(err(pos, "exponent too large"));
        }
        if e >= 0 {
            let mut acc = Expr::constant(self.nvars(), RatFunc::one());
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            Ok(acc)
        } else {
            let b = base.as_base().ok_or_else(|| err(pos, "negative power of a fibre variable"))?;
            if b.is_zero() {
                return Err(err(pos, "division by zero"));
            }
            Ok(Expr::constant(self.nvars(), b.pow(e as i32)))
        }
    }

    fn atom(&mut self) -> Result<Expr, AlgebraError> {
        let pos = self.at();
        match self.bump() {
            Tok::Num(n) => Ok(Expr::constant(
                self.nvars(),
                RatFunc::constant(Fe::from_rational(Rational::from_integer(n))),
            )),
            Tok::Op('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) if name == "sqrt" => {
                self.expect('(')?;
                let neg = if self.peek() == &Tok::Op('-') {
                    self.bump();
                    true
                } else {
                    false
                };
                let d = match self.bump() {
                    Tok::Num(n) => i64::try_from(n).map_err(|_| err(pos, "radicand too large"))?,
                    _ => return Err(err(pos, "sqrt takes an integer literal")),
                };
                self.expect(')')?;
                let d = if neg { -d } else { d };
                if d == 0 || d == 1 || !is_squarefree_int(d) {
                    return Err(err(pos, format!("radicand {d} must be squarefree and not 0 or 1")));
                }
                if self.radicand != 0 && self.radicand != d {
                    return Err(err(
                        pos,
                        format!("multiple radicands: sqrt({}) and sqrt({d})", self.radicand),
                    ));
                }
                self.radicand = d;
                Ok(Expr::constant(self.nvars(), RatFunc::constant(Fe::sqrt_of(d))))
            }
            Tok::Ident(name) => {
                if let Some(i) = self.fibre.iter().position(|v| *v == name) {
                    return Ok(Expr::var(self.nvars(), i));
                }
                match &self.base_var {
                    Some(b) if *b != name => Err(err(
                        pos,
                        format!("second base variable '{name}' (already using '{b}')"),
                    )),
                    _ => {
                        self.base_var = Some(name);
                        Ok(Expr::constant(self.nvars(), RatFunc::x()))
                    }
                }
            }
            Tok::End => Err(err(pos, "unexpected end of input")),
            Tok::Op(c) => Err(err(pos, format!("unexpected '{c}'"))),
        }
    }
}

/// Parses `s` as a polynomial in `fibre` variables over the base rational function field.
pub fn parse_expr(s: &str, fibre: &[&str]) -> Result<Parsed, AlgebraError> {
    parse_expr_with_base(s, fibre, None)
}

/// As [`parse_expr`], with the base variable name fixed in advance when given.
pub fn parse_expr_with_base(
    s: &str,
    fibre: &[&str],
    base: Option<&str>,
) -> Result<Parsed, AlgebraError> {
    let mut p = Parser {
        toks: tokenize(s)?,
        pos: 0,
        fibre,
        base_var: base.map(str::to_string),
        radicand: 0,
    };
    let expr = p.expr()?;
    if p.peek() != &Tok::End {
        return Err(err(p.at(), "trailing input"));
    }
    Ok(Parsed { expr, base_var: p.base_var, radicand: p.radicand })
}

pub fn parse_ratfunc(s: &str) -> Result<RatFunc, AlgebraError> {
    let p = parse_expr(s, &[])?;
    Ok(p.expr.as_base().expect("no fibre variables"))
}

pub fn parse_poly(s: &str) -> Result<Poly, AlgebraError> {
    let r = parse_ratfunc(s)?;
    r.as_poly().cloned().ok_or_else(|| AlgebraError::Shape("a polynomial".into()))
}

pub fn parse_fe(s: &str) -> Result<Fe, AlgebraError> {
    parse_ratfunc(s)?.as_constant().ok_or_else(|| AlgebraError::Shape("a constant".into()))
}

/// Convenience for tests and registry data; panics on malformed input.
pub fn poly(s: &str) -> Poly {
    parse_poly(s).unwrap_or_else(|e| panic!("bad polynomial literal {s:?}: {e}"))
}

pub fn ratfunc(s: &str) -> RatFunc {
    parse_ratfunc(s).unwrap_or_else(|e| panic!("bad rational function literal {s:?}: {e}"))
}

pub fn fe(s: &str) -> Fe {
    parse_fe(s).unwrap_or_else(|e| panic!("bad constant literal {s:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_and_fractions() {
        assert_eq!(poly("t^2 - 1"), Poly::from_ints(&[-1, 0, 1]));
        assert_eq!(poly("2t(t+1)"), Poly::from_ints(&[0, 2, 2]));
        assert_eq!(fe("-1/144"), Fe::frac(-1, 144));
        assert_eq!(ratfunc("t^3/(t-1)").den(), &Poly::from_ints(&[-1, 1]));
        assert_eq!(poly("s^-1*s^2"), Poly::from_ints(&[0, 1]));
    }

    #[test]
    fn radicands() {
        let w = fe("1 + sqrt(-3)");
        assert_eq!(w.radicand(), -3);
        assert!(parse_fe("sqrt(2) + sqrt(3)").is_err());
        assert!(parse_fe("sqrt(4)").is_err());
        assert!(parse_fe("sqrt(2)*sqrt(2) + 1").is_ok());
    }

    #[test]
    fn fibre_variables() {
        let p = parse_expr("x^3 + t*x^2 + s", &["x", "y"]);
        assert!(p.is_err());
        let p = parse_expr("x^3 + t^2*x + y*x/t", &["x", "y"]).unwrap();
        assert_eq!(p.base_var.as_deref(), Some("t"));
        assert_eq!(p.expr.coeff(&[1, 1]), ratfunc("1/t"));
        assert!(parse_expr("t/x", &["x", "y"]).is_err());
    }

    #[test]
    fn errors_carry_positions() {
        match parse_poly("t + * 2") {
            Err(AlgebraError::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
    }
}
