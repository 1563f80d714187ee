//! Homogeneous polynomials in `x, y, z` and their text syntax.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::apoly::{pow, AffinePoly};
use super::rat::{primitive_integers, rat, rat_to_string, Rat};
use crate::error::{Error, Result};

pub type Exponent = (u32, u32, u32);

/// A ternary form of fixed degree. The zero form is allowed and reports
/// itself through [`TernaryForm::is_zero`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TernaryForm {
    degree: u32,
    coeffs: BTreeMap<Exponent, Rat>,
}

impl TernaryForm {
    pub fn zero(degree: u32) -> Self {
        TernaryForm { degree, coeffs: BTreeMap::new() }
    }

    pub fn monomial(c: Rat, e: Exponent) -> Self {
        let mut f = TernaryForm::zero(e.0 + e.1 + e.2);
        f.add_term(e, c);
        f
    }

    pub fn from_terms(degree: u32, terms: impl IntoIterator<Item = (Exponent, Rat)>) -> Result<Self> {
        let mut f = TernaryForm::zero(degree);
        for (e, c) in terms {
            let d = e.0 + e.1 + e.2;
            if d != degree {
                return Err(Error::NotHomogeneous(degree, d));
            }
            f.add_term(e, c);
        }
        Ok(f)
    }

    /// Convenience constructor from integer coefficients; panics on
    /// inhomogeneous input.
    pub fn from_int_terms(terms: &[(i64, Exponent)]) -> Self {
        let degree = terms.first().map_or(0, |(_, e)| e.0 + e.1 + e.2);
        TernaryForm::from_terms(degree, terms.iter().map(|&(c, e)| (e, rat(c)))).expect("homogeneous terms")
    }

    fn add_term(&mut self, e: Exponent, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rat)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, e: Exponent) -> Rat {
        self.coeffs.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// All exponent triples of degree `d`, in a fixed order (x-power
    /// descending, then y-power descending).
    pub fn monomial_basis(d: u32) -> Vec<Exponent> {
        let mut out = Vec::new();
        for a in (0..=d).rev() {
            for b in (0..=d - a).rev() {
                out.push((a, b, d - a - b));
            }
        }
        out
    }

    pub fn coefficient_vector(&self) -> Vec<Rat> {
        TernaryForm::monomial_basis(self.degree).into_iter().map(|e| self.coeff(e)).collect()
    }

    pub fn from_coefficient_vector(degree: u32, v: &[Rat]) -> Self {
        let basis = TernaryForm::monomial_basis(degree);
        assert_eq!(basis.len(), v.len());
        let mut f = TernaryForm::zero(degree);
        for (e, c) in basis.into_iter().zip(v) {
            f.add_term(e, c.clone());
        }
        f
    }

    pub fn scale(&self, c: &Rat) -> TernaryForm {
        let mut f = TernaryForm::zero(self.degree);
        for (e, v) in &self.coeffs {
            f.add_term(*e, v * c);
        }
        f
    }

    pub fn eval(&self, p: &[Rat; 3]) -> Rat {
        self.coeffs
            .iter()
            .map(|(&(a, b, c), k)| k * pow(&p[0], a) * pow(&p[1], b) * pow(&p[2], c))
            .fold(Rat::zero(), |acc, t| acc + t)
    }

    /// Partial derivative with respect to variable `var` (0 = x, 1 = y, 2 = z).
    pub fn partial(&self, var: usize) -> TernaryForm {
        let mut f = TernaryForm::zero(self.degree.saturating_sub(1));
        for (&(a, b, c), k) in &self.coeffs {
            let exps = [a, b, c];
            if exps[var] == 0 {
                continue;
            }
            let mut e = exps;
            e[var] -= 1;
            f.add_term((e[0], e[1], e[2]), k * rat(exps[var] as i64));
        }
        f
    }

    pub fn gradient(&self) -> [TernaryForm; 3] {
        [self.partial(0), self.partial(1), self.partial(2)]
    }

    /// Sets one variable to 1: `var = 2` gives `f(x, y, 1)` in `(u, v) = (x, y)`,
    /// `var = 1` gives `f(x, 1, z)` in `(x, z)`, `var = 0` gives `f(1, y, z)` in `(y, z)`.
    pub fn dehomogenize(&self, var: usize) -> AffinePoly {
        AffinePoly::from_terms(self.coeffs.iter().map(|(&(a, b, c), k)| {
            let e = match var {
                2 => (a, b),
                1 => (a, c),
                _ => (b, c),
            };
            (e, k.clone())
        }))
    }

    /// Homogenizes `f(x, y)` with respect to `z` to the given degree.
    pub fn homogenize(f: &AffinePoly, degree: u32) -> TernaryForm {
        let mut out = TernaryForm::zero(degree);
        for (&(a, b), c) in f.terms() {
            assert!(a + b <= degree, "degree too small to homogenize");
            out.add_term((a, b, degree - a - b), c.clone());
        }
        out
    }

    /// Largest `k` with `z^k` dividing the form.
    pub fn z_valuation(&self) -> u32 {
        self.coeffs.keys().map(|e| e.2).min().unwrap_or(0)
    }

    /// Divides by `z^k`; `k` must not exceed [`Self::z_valuation`].
    pub fn divide_z_power(&self, k: u32) -> TernaryForm {
        let mut f = TernaryForm::zero(self.degree - k);
        for (&(a, b, c), v) in &self.coeffs {
            f.add_term((a, b, c - k), v.clone());
        }
        f
    }

    /// Substitutes `(x, y, z) <- (L0, L1, L2)` for linear forms given by rows
    /// of `m`: `Li = m[i][0] x + m[i][1] y + m[i][2] z`.
    pub fn linear_substitute(&self, m: &[[Rat; 3]; 3]) -> TernaryForm {
        let lin: Vec<TernaryForm> = m
            .iter()
            .map(|row| {
                TernaryForm::from_terms(
                    1,
                    [((1, 0, 0), row[0].clone()), ((0, 1, 0), row[1].clone()), ((0, 0, 1), row[2].clone())],
                )
                .expect("linear")
            })
            .collect();
        let powers: Vec<Vec<TernaryForm>> = lin
            .iter()
            .map(|l| {
                let mut ps = vec![TernaryForm::constant_one()];
                for _ in 0..self.degree {
                    let next = ps.last().unwrap() * l;
                    ps.push(next);
                }
                ps
            })
            .collect();
        let mut out = TernaryForm::zero(self.degree);
        for (&(a, b, c), k) in &self.coeffs {
            let t = &(&powers[0][a as usize] * &powers[1][b as usize]) * &powers[2][c as usize];
            out = &out + &t.scale(k);
        }
        out
    }

    pub fn constant_one() -> TernaryForm {
        TernaryForm::monomial(Rat::one(), (0, 0, 0))
    }

    /// The form divided by its positive rational content: coprime integer
    /// coefficients, signs unchanged.
    pub fn primitive(&self) -> TernaryForm {
        if self.is_zero() {
            return self.clone();
        }
        let vals: Vec<Rat> = self.coeffs.values().cloned().collect();
        let ints = primitive_integers(&vals);
        let mut f = TernaryForm::zero(self.degree);
        for (e, c) in self.coeffs.keys().zip(ints) {
            f.add_term(*e, Rat::from_integer(c));
        }
        f
    }

    /// The rational by which [`Self::primitive`] scaled the form.
    pub fn content(&self) -> Rat {
        if self.is_zero() {
            return Rat::zero();
        }
        let p = self.primitive();
        let (e, c) = p.coeffs.iter().next().unwrap();
        self.coeff(*e) / c
    }
}

impl Add for &TernaryForm {
    type Output = TernaryForm;
    fn add(self, rhs: &TernaryForm) -> TernaryForm {
        let degree = if self.is_zero() { rhs.degree } else { self.degree };
        assert!(rhs.is_zero() || self.is_zero() || self.degree == rhs.degree, "adding forms of different degree");
        let mut out = self.clone();
        out.degree = degree;
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &TernaryForm {
    type Output = TernaryForm;
    fn sub(self, rhs: &TernaryForm) -> TernaryForm {
        self + &(-rhs)
    }
}

impl Neg for &TernaryForm {
    type Output = TernaryForm;
    fn neg(self) -> TernaryForm {
        self.scale(&rat(-1))
    }
}

impl Mul for &TernaryForm {
    type Output = TernaryForm;
    fn mul(self, rhs: &TernaryForm) -> TernaryForm {
        let mut out = TernaryForm::zero(self.degree + rhs.degree);
        for (&(a, b, c), k) in &self.coeffs {
            for (&(x, y, z), l) in &rhs.coeffs {
                out.add_term((a + x, b + y, c + z), k * l);
            }
        }
        out
    }
}

impl fmt::Display for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for e in TernaryForm::monomial_basis(self.degree) {
            let c = self.coeff(e);
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mut factors = Vec::new();
            for (name, k) in [("x", e.0), ("y", e.1), ("z", e.2)] {
                match k {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{k}")),
                }
            }
            if !mag.is_one() || factors.is_empty() {
                factors.insert(0, rat_to_string(&mag));
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TernaryForm({self})")
    }
}

impl FromStr for TernaryForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_form(s)
    }
}

/// Parses text such as `y^2*z - x^3 + 3/2 x z^2` or `x*(y^2 - x*z)`.
/// Products may omit `*`; parenthesized groups may be raised to powers.
pub fn parse_form(text: &str) -> Result<TernaryForm> {
    let mut parser = Parser { bytes: text.as_bytes(), pos: 0 };
    let poly = parser.expression()?;
    if parser.peek().is_some() {
        return parser.error("unexpected character");
    }
    let degrees: Vec<u32> = poly.keys().map(|e| e.0 + e.1 + e.2).collect();
    let (lo, hi) = (degrees.iter().min().copied(), degrees.iter().max().copied());
    if lo != hi {
        return Err(Error::NotHomogeneous(lo.unwrap(), hi.unwrap()));
    }
    TernaryForm::from_terms(lo.unwrap_or(0), poly)
}

type Sparse = BTreeMap<Exponent, Rat>;

fn sparse_mul(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (e, c) in a {
        for (f, d) in b {
            let k = (e.0 + f.0, e.1 + f.1, e.2 + f.2);
            *out.entry(k).or_insert_with(Rat::zero) += c * d;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn error<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.to_string() })
    }

    fn starts_factor(c: Option<u8>) -> bool {
        matches!(c, Some(c) if c.is_ascii_digit() || matches!(c, b'x' | b'y' | b'z' | b'('))
    }

    fn expression(&mut self) -> Result<Sparse> {
        let mut sum = Sparse::new();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            None => return self.error("empty expression"),
            _ => 1,
        };
        loop {
            for (e, c) in self.term()? {
                *sum.entry(e).or_insert_with(Rat::zero) += c * rat(sign);
            }
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                _ => break,
            }
            self.pos += 1;
        }
        sum.retain(|_, c| !c.is_zero());
        Ok(sum)
    }

    fn term(&mut self) -> Result<Sparse> {
        if !Self::starts_factor(self.peek()) {
            return self.error("expected a number, a variable or '('");
        }
        let mut product = self.factor()?;
        loop {
            if self.peek() == Some(b'*') {
                self.pos += 1;
                if !Self::starts_factor(self.peek()) {
                    return self.error("dangling '*'");
                }
            } else if !Self::starts_factor(self.peek()) {
                break;
            }
            product = sparse_mul(&product, &self.factor()?);
        }
        Ok(product)
    }

    fn factor(&mut self) -> Result<Sparse> {
        let base = match self.peek() {
            Some(c) if c.is_ascii_digit() => Sparse::from([((0, 0, 0), self.number()?)]),
            Some(c @ (b'x' | b'y' | b'z')) => {
                self.pos += 1;
                let mut e = [0u32; 3];
                e[(c - b'x') as usize] = 1;
                Sparse::from([((e[0], e[1], e[2]), Rat::one())])
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expression()?;
                if self.peek() != Some(b')') {
                    return self.error("expected ')'");
                }
                self.pos += 1;
                inner
            }
            _ => return self.error("expected a number, a variable or '('"),
        };
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let k = self.exponent()?;
        let mut out = Sparse::from([((0, 0, 0), Rat::one())]);
        for _ in 0..k {
            out = sparse_mul(&out, &base);
        }
        Ok(out)
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected digits");
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digit string"))
    }

    fn number(&mut self) -> Result<Rat> {
        let num = self.digits()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let den = self.digits()?;
            if den.is_zero() {
                return self.error("zero denominator");
            }
            return Ok(Rat::new(num, den));
        }
        Ok(Rat::from_integer(num))
    }

    fn exponent(&mut self) -> Result<u32> {
        let n = self.digits()?;
        match u32::try_from(n) {
            Ok(k) if k <= 1000 => Ok(k),
            _ => self.error("exponent too large"),
        }
    }
}
