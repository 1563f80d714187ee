//! Sparse bivariate polynomials in local coordinates `(u, v)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rat::{rat, rat_to_string, Rat};
use super::upoly::UPoly;

/// Which of the two standard blow-up charts a step uses.
///
/// `First`: `(u, v) <- (u, u*v)`, exceptional line `u = 0`.
/// `Second`: `(u, v) <- (u*v, v)`, exceptional line `v = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BlowupChart {
    First,
    Second,
}

/// Where a local equation lives: one of the affine charts of the plane or a
/// blow-up chart at a given depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChartTag {
    /// `z = 1`, local coordinates `(x, y)`.
    Z,
    /// `y = 1`, local coordinates `(x, z)`.
    Y,
    /// `x = 1`, local coordinates `(y, z)`.
    X,
    Blowup {
        level: usize,
        chart: BlowupChart,
    },
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AffinePoly {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl AffinePoly {
    pub fn zero() -> Self {
        AffinePoly::default()
    }

    pub fn constant(c: Rat) -> Self {
        AffinePoly::term(c, 0, 0)
    }

    pub fn term(c: Rat, a: u32, b: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        AffinePoly { terms }
    }

    pub fn from_terms(iter: impl IntoIterator<Item = ((u32, u32), Rat)>) -> Self {
        let mut p = AffinePoly::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: (u32, u32), c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: u32, b: u32) -> Rat {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest total degree of a term (the multiplicity at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).min()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).max()
    }

    pub fn degree_in_v(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, b)| b).max()
    }

    pub fn scale(&self, c: &Rat) -> AffinePoly {
        if c.is_zero() {
            return AffinePoly::zero();
        }
        AffinePoly { terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    pub fn eval(&self, u: &Rat, v: &Rat) -> Rat {
        self.terms.iter().map(|(&(a, b), c)| c * pow(u, a) * pow(v, b)).fold(Rat::zero(), |acc, t| acc + t)
    }

    pub fn d_du(&self) -> AffinePoly {
        AffinePoly::from_terms(
            self.terms.iter().filter(|(&(a, _), _)| a > 0).map(|(&(a, b), c)| ((a - 1, b), c * rat(a as i64))),
        )
    }

    pub fn d_dv(&self) -> AffinePoly {
        AffinePoly::from_terms(
            self.terms.iter().filter(|(&(_, b), _)| b > 0).map(|(&(a, b), c)| ((a, b - 1), c * rat(b as i64))),
        )
    }

    /// Degree-`k` homogeneous part evaluated at `u = 1`, as a polynomial in `v`.
    pub fn form_at_u1(&self, k: u32) -> UPoly {
        let mut coeffs = vec![Rat::zero(); k as usize + 1];
        for (&(a, b), c) in &self.terms {
            if a + b == k {
                coeffs[b as usize] = c.clone();
            }
        }
        UPoly::from_coeffs(coeffs)
    }

    /// Pullback under one blow-up chart map (no division).
    pub fn pullback(&self, chart: BlowupChart) -> AffinePoly {
        AffinePoly {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| {
                    let e = match chart {
                        BlowupChart::First => (a + b, b),
                        BlowupChart::Second => (a, a + b),
                    };
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Multiplies by `u^du v^dv`; `None` if some exponent would go negative.
    pub fn shift(&self, du: i64, dv: i64) -> Option<AffinePoly> {
        let mut terms = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            let na = a as i64 + du;
            let nb = b as i64 + dv;
            if na < 0 || nb < 0 {
                return None;
            }
            terms.insert((na as u32, nb as u32), c.clone());
        }
        Some(AffinePoly { terms })
    }

    /// Divides out the exceptional coordinate of `chart` to the power `m`.
    pub fn divide_exceptional(&self, chart: BlowupChart, m: i64) -> Option<AffinePoly> {
        match chart {
            BlowupChart::First => self.shift(-m, 0),
            BlowupChart::Second => self.shift(0, -m),
        }
    }

    /// `f(u + a, v + b)`
    pub fn translate(&self, a: &Rat, b: &Rat) -> AffinePoly {
        if a.is_zero() && b.is_zero() {
            return self.clone();
        }
        let mut out = AffinePoly::zero();
        for (&(i, j), c) in &self.terms {
            let ui = binomial_expand(a, i);
            let vj = binomial_expand(b, j);
            for (k, ck) in ui.iter().enumerate() {
                if ck.is_zero() {
                    continue;
                }
                for (l, cl) in vj.iter().enumerate() {
                    if cl.is_zero() {
                        continue;
                    }
                    out.add_term((k as u32, l as u32), c * ck * cl);
                }
            }
        }
        out
    }

    /// `f(u0, v)` as a polynomial in `v`.
    pub fn restrict_u(&self, u0: &Rat) -> UPoly {
        let n = self.degree_in_v().map_or(0, |d| d as usize + 1);
        let mut coeffs = vec![Rat::zero(); n];
        for (&(a, b), c) in &self.terms {
            coeffs[b as usize] += c * pow(u0, a);
        }
        UPoly::from_coeffs(coeffs)
    }

    /// Coefficients in `v`, each a polynomial in `u`.
    pub fn as_poly_in_v(&self) -> Vec<UPoly> {
        let n = self.degree_in_v().map_or(0, |d| d as usize + 1);
        let mut out: Vec<Vec<Rat>> = vec![Vec::new(); n];
        for (&(a, b), c) in &self.terms {
            let slot = &mut out[b as usize];
            if slot.len() <= a as usize {
                slot.resize(a as usize + 1, Rat::zero());
            }
            slot[a as usize] = c.clone();
        }
        out.into_iter().map(UPoly::from_coeffs).collect()
    }

    pub fn from_poly_in_v(coeffs: &[UPoly]) -> AffinePoly {
        AffinePoly::from_terms(
            coeffs
                .iter()
                .enumerate()
                .flat_map(|(b, p)| p.coeffs().iter().enumerate().map(move |(a, c)| ((a as u32, b as u32), c.clone()))),
        )
    }

    /// Rescales so the lowest-order part has a positive leading coefficient.
    pub fn normalize_sign(&self) -> AffinePoly {
        let Some(m) = self.order() else {
            return self.clone();
        };
        let lead = self
            .terms
            .iter()
            .filter(|(&(a, b), _)| a + b == m)
            .map(|(_, c)| c)
            .next_back()
            .cloned()
            .unwrap_or_else(Rat::one);
        if lead < Rat::zero() {
            -self
        } else {
            self.clone()
        }
    }
}

pub(crate) fn pow(x: &Rat, k: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

/// Coefficients of `(t + a)^n` in `t`, low degree first.
fn binomial_expand(a: &Rat, n: u32) -> Vec<Rat> {
    let mut coeffs = vec![Rat::one()];
    for _ in 0..n {
        let mut next = vec![Rat::zero(); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] += c;
            next[k] += c * a;
        }
        coeffs = next;
    }
    coeffs
}

impl Add for &AffinePoly {
    type Output = AffinePoly;
    fn add(self, rhs: &AffinePoly) -> AffinePoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &AffinePoly {
    type Output = AffinePoly;
    fn sub(self, rhs: &AffinePoly) -> AffinePoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &AffinePoly {
    type Output = AffinePoly;
    fn mul(self, rhs: &AffinePoly) -> AffinePoly {
        let mut out = AffinePoly::zero();
        for (&(a, b), c) in &self.terms {
            for (&(x, y), d) in &rhs.terms {
                out.add_term((a + x, b + y), c * d);
            }
        }
        out
    }
}

impl Neg for &AffinePoly {
    type Output = AffinePoly;
    fn neg(self) -> AffinePoly {
        AffinePoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl fmt::Debug for AffinePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(&(a, b), c)| format!("({})u^{}v^{}", rat_to_string(c), a, b)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cusp() -> AffinePoly {
        // v^2 - u^3
        AffinePoly::from_terms([((0, 2), rat(1)), ((3, 0), rat(-1))])
    }

    #[test]
    fn chart_one_strict_transform_of_cusp() {
        let f = cusp();
        assert_eq!(f.order(), Some(2));
        let t = f.pullback(BlowupChart::First).divide_exceptional(BlowupChart::First, 2).unwrap();
        // v'^2 - u
        assert_eq!(t, AffinePoly::from_terms([((0, 2), rat(1)), ((1, 0), rat(-1))]));
        assert!(t.pullback(BlowupChart::First).divide_exceptional(BlowupChart::First, 2).is_none());
    }

    #[test]
    fn translation_round_trip() {
        let f = &cusp() + &AffinePoly::term(rat(5), 1, 1);
        let (a, b) = (rat(2), rat(-3));
        let g = f.translate(&a, &b).translate(&-a.clone(), &-b.clone());
        assert_eq!(g, f);
        assert_eq!(f.translate(&a, &b).eval(&rat(0), &rat(0)), f.eval(&a, &b));
    }

    #[test]
    fn poly_in_v_round_trip() {
        let f = &cusp() + &AffinePoly::term(rat(5), 2, 1);
        assert_eq!(AffinePoly::from_poly_in_v(&f.as_poly_in_v()), f);
    }
}
