use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rational;
use crate::error::Error;

/// Product of parameter powers, stored as `(name, exponent)` pairs sorted by name.
/// Exponents are always positive; the empty monomial is the constant `1`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Arc<str>, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(name: &str) -> Self {
        Monomial(vec![(Arc::from(name), 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&str, u32)> {
        self.0.iter().map(|(n, e)| (n.as_ref(), *e))
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out: Vec<(Arc<str>, u32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }
}

// Graded order: higher total degree first, then lexicographic by factors.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (name, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Sparse multivariate polynomial over the rationals. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

const MAX_TERMS: usize = 10_000;
const MAX_EXPONENT: u32 = 16;
const MAX_NESTING: usize = 64;
const MAX_DEGREE: u32 = 64;
const MAX_COEFF_BITS: u64 = 4096;

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Polynomial::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn var(name: &str) -> Self {
        let mut p = Polynomial::zero();
        p.terms.insert(Monomial::var(name), Rational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// The constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Variables occurring with nonzero coefficient, in lexicographic order.
    pub fn variables(&self) -> BTreeSet<String> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().map(|(n, _)| n.to_string()))
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Polynomial) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &Polynomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn mul_ref(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    fn checked_pow(&self, exp: u32) -> Result<Polynomial, Error> {
        if exp > MAX_EXPONENT {
            return Err(Error::Parse(format!(
                "exponent {exp} exceeds {MAX_EXPONENT}"
            )));
        }
        let mut acc = Polynomial::constant(Rational::one());
        for _ in 0..exp {
            acc = acc.mul_ref(self);
            let too_big = acc.terms.len() > MAX_TERMS
                || acc.degree() > MAX_DEGREE
                || acc.terms.values().any(|c| {
                    c.numer().bits() > MAX_COEFF_BITS || c.denom().bits() > MAX_COEFF_BITS
                });
            if too_big {
                return Err(Error::Parse("polynomial expression too large".into()));
            }
        }
        Ok(acc)
    }

    /// Exact value at `assignment`. Every variable of the polynomial must be assigned.
    pub fn eval(&self, assignment: &BTreeMap<String, Rational>) -> Result<Rational, Error> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (name, e) in m.factors() {
                let x = assignment
                    .get(name)
                    .ok_or_else(|| Error::MissingVariable(name.to_string()))?;
                v *= &x.pow(e);
            }
            total += &v;
        }
        Ok(total)
    }

    /// Substitutes the assigned variables and leaves the rest symbolic.
    pub fn substitute(&self, assignment: &BTreeMap<String, Rational>) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Vec::new();
            for (name, e) in m.factors() {
                match assignment.get(name) {
                    Some(x) => coeff *= &x.pow(e),
                    None => rest.push((Arc::from(name), e)),
                }
            }
            out.add_term(Monomial(rest), coeff);
        }
        out
    }

    /// Parses expressions such as `2*alpha4 - 1/2`, `(a2 + 3)^2` or `-beta5*gamma`.
    pub fn parse(input: &str) -> Result<Polynomial, Error> {
        let tokens = tokenize(input)?;
        let mut parser = Parser {
            tokens,
            pos: 0,
            depth: 0,
        };
        let p = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(Error::Parse(format!(
                "unexpected trailing input in polynomial {input:?}"
            )));
        }
        Ok(p)
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

impl From<i64> for Polynomial {
    fn from(c: i64) -> Self {
        Polynomial::constant(Rational::from_int(c))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.mul_ref(rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
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

fn tokenize(input: &str) -> Result<Vec<Token>, Error> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                out.push(Token::Plus);
                i += 1;
            }
            b'-' => {
                out.push(Token::Minus);
                i += 1;
            }
            b'*' => {
                out.push(Token::Star);
                i += 1;
            }
            b'/' => {
                out.push(Token::Slash);
                i += 1;
            }
            b'^' => {
                out.push(Token::Caret);
                i += 1;
            }
            b'(' => {
                out.push(Token::LParen);
                i += 1;
            }
            b')' => {
                out.push(Token::RParen);
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &input[start..i];
                if digits.len() > 256 {
                    return Err(Error::Parse("integer literal too long".into()));
                }
                out.push(Token::Int(digits.parse().expect("ascii digits")));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Token::Ident(input[start..i].to_string()));
            }
            _ => {
                let ch = input[i..].chars().next().unwrap_or('?');
                return Err(Error::Parse(format!(
                    "unexpected character {ch:?} in polynomial {input:?}"
                )));
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Polynomial, Error> {
        let mut acc = match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                -&self.term()?
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
            if acc.terms.len() > MAX_TERMS {
                return Err(Error::Parse("polynomial expression too large".into()));
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial, Error> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = acc.mul_ref(&self.factor()?);
                    if acc.terms.len() > MAX_TERMS {
                        return Err(Error::Parse("polynomial expression too large".into()));
                    }
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let d = self.factor()?;
                    let c = d.as_constant().ok_or_else(|| {
                        Error::Parse("division by a non-constant expression".into())
                    })?;
                    let inv = c
                        .recip()
                        .ok_or_else(|| Error::Parse("division by zero".into()))?;
                    acc = acc.scale(&inv);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, Error> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.pos += 1;
            match self.next() {
                Some(Token::Int(k)) => {
                    let e: u32 = u32::try_from(&k)
                        .map_err(|_| Error::Parse("exponent out of range".into()))?;
                    base.checked_pow(e)
                }
                _ => Err(Error::Parse("expected integer exponent after '^'".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial, Error> {
        match self.next() {
            Some(Token::Int(k)) => Ok(Polynomial::constant(Rational::from(k))),
            Some(Token::Ident(name)) => Ok(Polynomial::var(&name)),
            Some(Token::Minus) => {
                self.depth += 1;
                if self.depth > MAX_NESTING {
                    return Err(Error::Parse("unary minus nested too deeply".into()));
                }
                let inner = self.factor()?;
                self.depth -= 1;
                Ok(-&inner)
            }
            Some(Token::LParen) => {
                self.depth += 1;
                if self.depth > MAX_NESTING {
                    return Err(Error::Parse("parentheses nested too deeply".into()));
                }
                let inner = self.expr()?;
                self.depth -= 1;
                match self.next() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(Error::Parse("missing ')'".into())),
                }
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of polynomial".into())),
        }
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Polynomial::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assign(pairs: &[(&str, Rational)]) -> BTreeMap<String, Rational> {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect()
    }

    #[test]
    fn eval_of_zero_is_zero() {
        assert_eq!(
            Polynomial::zero().eval(&BTreeMap::new()).unwrap(),
            Rational::zero()
        );
    }

    #[test]
    fn eval_single_variable() {
        let p = Polynomial::var("alpha4");
        let v = p.eval(&assign(&[("alpha4", Rational::one())])).unwrap();
        assert_eq!(v, Rational::one());
    }

    #[test]
    fn constraint_vanishes_at_matching_weight() {
        // 2(i-2)a1 - b2 at i = 4, a1 = 1, b2 = 4
        let p = Polynomial::parse("2*(4-2)*a1 - b2").unwrap();
        let v = p
            .eval(&assign(&[
                ("a1", Rational::one()),
                ("b2", Rational::from_int(4)),
            ]))
            .unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn missing_variable_is_an_error() {
        let p = Polynomial::parse("x + y").unwrap();
        let err = p.eval(&assign(&[("x", Rational::one())])).unwrap_err();
        assert!(matches!(err, Error::MissingVariable(ref v) if v == "y"));
    }

    #[test]
    fn display_is_canonical() {
        let p = Polynomial::parse("-1/2 + alpha4*2 + beta^2 - gamma*alpha4").unwrap();
        assert_eq!(p.to_string(), "-alpha4*gamma + beta^2 + 2*alpha4 - 1/2");
        assert_eq!(Polynomial::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "", "x +", "2/x", "1/0", "(x", "x^y", "x ^ 99", "3 $ 4", "x y",
        ] {
            assert!(Polynomial::parse(bad).is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn substitute_partially() {
        let p = Polynomial::parse("a*b + a + 1").unwrap();
        let q = p.substitute(&assign(&[("a", Rational::from_int(2))]));
        assert_eq!(q, Polynomial::parse("2*b + 3").unwrap());
    }
}
