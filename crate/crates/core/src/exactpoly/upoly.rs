//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use num_bigint::BigInt;
use num_integer::Integer;

use super::modp;
use super::rat::{primitive_integers, rat, rat_to_string, Rat};

/// Coefficients stored low degree first, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<Rat>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        UPoly::from_coeffs(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        UPoly::from_coeffs(coeffs)
    }

    /// `x - r`
    pub fn linear_root(r: &Rat) -> Self {
        UPoly::from_coeffs(vec![-r.clone(), Rat::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        UPoly::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn lc(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::from_coeffs(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * rat(i as i64)).collect())
    }

    pub fn scale(&self, c: &Rat) -> UPoly {
        if c.is_zero() {
            return UPoly::zero();
        }
        UPoly { coeffs: self.coeffs.iter().map(|v| v * c).collect() }
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let inv = self.lc().recip();
        self.scale(&inv)
    }

    pub fn pow(&self, k: u32) -> UPoly {
        let mut acc = UPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UPoly) -> (UPoly, UPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let inv_lc = divisor.lc().recip();
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &inv_lc;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (UPoly::from_coeffs(quot), UPoly::from_coeffs(rem))
    }

    /// Quotient of a division known to be exact.
    pub fn exact_div(&self, divisor: &UPoly) -> UPoly {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn rem(&self, divisor: &UPoly) -> UPoly {
        self.div_rem(divisor).1
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return if self.is_zero() { other.monic() } else { self.monic() };
        }
        if self.is_constant() || other.is_constant() {
            return UPoly::one();
        }
        let (a, b) = (primitive_integers(&self.coeffs), primitive_integers(&other.coeffs));
        if coprime_mod_p(&a, &b) {
            return UPoly::one();
        }
        let g = primitive_prs_gcd(a, b);
        UPoly::from_coeffs(g.into_iter().map(Rat::from_integer).collect()).monic()
    }

    /// Product of the distinct irreducible factors, made monic.
    pub fn squarefree_part(&self) -> UPoly {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).monic()
    }

    /// Newton interpolation through `(xs[i], ys[i])`; abscissae must be distinct.
    pub fn interpolate(xs: &[Rat], ys: &[Rat]) -> UPoly {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        let mut table: Vec<Rat> = ys.to_vec();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = &table[i] - &table[i - 1];
                let den = &xs[i] - &xs[i - level];
                table[i] = num / den;
            }
        }
        let mut result = UPoly::zero();
        for i in (0..n).rev() {
            result = &(&result * &UPoly::linear_root(&xs[i])) + &UPoly::constant(table[i].clone());
        }
        result
    }
}

/// A single large prime not dividing either leading coefficient: a constant
/// gcd modulo that prime proves the integer polynomials coprime.
fn coprime_mod_p(a: &[BigInt], b: &[BigInt]) -> bool {
    let prime = modp::primes_from(1_000_000_007)
        .find(|&q| {
            let q = BigInt::from(q);
            !(a.last().unwrap() % &q).is_zero() && !(b.last().unwrap() % &q).is_zero()
        })
        .unwrap();
    let g = modp::gcd(&modp::reduce(a, prime), &modp::reduce(b, prime), prime);
    g.len() == 1
}

fn int_content_free(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    let g = p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in &mut p {
            *c /= &g;
        }
    }
    p
}

/// Greatest common divisor of integer polynomials (low degree first) by the
/// primitive pseudo-remainder sequence.
fn primitive_prs_gcd(a: Vec<BigInt>, b: Vec<BigInt>) -> Vec<BigInt> {
    let (mut x, mut y) = (int_content_free(a), int_content_free(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let dy = y.len() - 1;
        let lc = y[dy].clone();
        let mut r = x;
        while r.len() > dy {
            let shift = r.len() - 1 - dy;
            let lr = r.last().unwrap().clone();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            for (j, yj) in y.iter().enumerate() {
                r[shift + j] -= &lr * yj;
            }
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        x = y;
        y = int_content_free(r);
    }
    x
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::from_coeffs(out)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Add for UPoly {
    type Output = UPoly;
    fn add(self, rhs: UPoly) -> UPoly {
        &self + &rhs
    }
}

impl Sub for UPoly {
    type Output = UPoly;
    fn sub(self, rhs: UPoly) -> UPoly {
        &self - &rhs
    }
}

impl Mul for UPoly {
    type Output = UPoly;
    fn mul(self, rhs: UPoly) -> UPoly {
        &self * &rhs
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({})t^{}", rat_to_string(c), i))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat::ratio;

    #[test]
    fn division_identity() {
        let a = UPoly::from_ints(&[1, 0, -3, 2, 5]);
        let b = UPoly::from_ints(&[2, 1, 3]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn gcd_finds_shared_factor() {
        let common = UPoly::from_ints(&[-1, 1]);
        let a = &common * &UPoly::from_ints(&[2, 0, 1]);
        let b = &common * &UPoly::from_ints(&[3, 1]);
        assert_eq!(a.gcd(&b), common);
        assert_eq!(UPoly::from_ints(&[1, 1]).gcd(&UPoly::from_ints(&[2, 1])), UPoly::one());
    }

    #[test]
    fn squarefree_part_drops_repeats() {
        let a = UPoly::from_ints(&[-1, 1]).pow(3) * UPoly::from_ints(&[2, 1]);
        assert_eq!(a.squarefree_part(), UPoly::from_ints(&[-2, 1, 1]));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = UPoly::from_coeffs(vec![ratio(1, 2), rat(-3), rat(0), ratio(7, 3)]);
        let xs: Vec<Rat> = (0..4).map(rat).collect();
        let ys: Vec<Rat> = xs.iter().map(|x| p.eval(x)).collect();
        assert_eq!(UPoly::interpolate(&xs, &ys), p);
    }
}
