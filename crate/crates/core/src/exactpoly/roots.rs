//! Rational roots of univariate polynomials and of binary forms.
//!
//! Roots are found p-adically: a simple root modulo a good prime is Hensel
//! lifted until rational reconstruction is unambiguous, then checked exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modp;
use super::rat::{primitive_integers, Rat};
use super::upoly::UPoly;

/// Distinct rational roots in increasing order. The zero polynomial has none.
pub fn rational_roots(p: &UPoly) -> Vec<Rat> {
    if p.is_constant() {
        return Vec::new();
    }
    roots_of_squarefree(p.squarefree_part())
}

fn roots_of_squarefree(mut sqf: UPoly) -> Vec<Rat> {
    let mut roots = Vec::new();
    if sqf.coeff(0).is_zero() {
        roots.push(Rat::zero());
        sqf = sqf.exact_div(&UPoly::monomial(Rat::one(), 1));
    }
    match sqf.degree() {
        None | Some(0) => {}
        Some(1) => roots.push(-sqf.coeff(0) / sqf.coeff(1)),
        Some(n) => roots.extend(hensel_roots(&sqf, n)),
    }
    roots.sort();
    roots
}

/// Degree of the squarefree part minus the number of rational roots: how many
/// distinct roots (counted over the algebraic closure) are irrational.
pub fn irrational_root_count(p: &UPoly) -> usize {
    if p.is_constant() {
        return 0;
    }
    let sqf = p.squarefree_part();
    sqf.degree().unwrap_or(0) - roots_of_squarefree(sqf).len()
}

fn hensel_roots(sqf: &UPoly, n: usize) -> Vec<Rat> {
    let ints = primitive_integers(sqf.coeffs());
    let a_bound = ints[0].abs();
    let b_bound = ints[n].abs();
    let bound = BigInt::from(2) * &a_bound * &b_bound;

    let prime = modp::primes_from(101)
        .find(|&q| {
            let f = modp::reduce(&ints, q);
            modp::is_good_reduction(&f, n, q)
        })
        .expect("some prime gives a squarefree reduction");
    let f_mod = modp::reduce(&ints, prime);
    let df: Vec<BigInt> = ints.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();

    let mut found = Vec::new();
    for r0 in 0..prime {
        if modp::eval(&f_mod, r0, prime) != 0 {
            continue;
        }
        let mut modulus = BigInt::from(prime);
        let mut r = BigInt::from(r0);
        while modulus <= bound {
            modulus = &modulus * &modulus;
            let fr = eval_int(&ints, &r).mod_floor(&modulus);
            let dfr = eval_int(&df, &r).mod_floor(&modulus);
            let inv = mod_inverse(&dfr, &modulus).expect("simple root has invertible derivative");
            r = (&r - fr * inv).mod_floor(&modulus);
        }
        if let Some((a, b)) = reconstruct(&r, &modulus, &a_bound, &b_bound) {
            let cand = Rat::new(a, b);
            if sqf.eval(&cand).is_zero() {
                found.push(cand);
            }
        }
    }
    found
}

fn eval_int(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// Finds `a/b` with `a ≡ b r (mod m)`, `|a| <= a_bound`, `0 < b <= b_bound`.
fn reconstruct(r: &BigInt, m: &BigInt, a_bound: &BigInt, b_bound: &BigInt) -> Option<(BigInt, BigInt)> {
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > a_bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() {
        return None;
    }
    let (mut a, mut b) = (r1, t1);
    if b.is_negative() {
        a = -a;
        b = -b;
    }
    if &b > b_bound {
        return None;
    }
    Some((a, b))
}

/// Root of a binary form `B(s, t)`, as a point `[s : t]` of the projective line.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum BinaryRoot {
    /// `[r : 1]`
    Finite(Rat),
    /// `[1 : 0]`
    Infinite,
}

/// Rational roots of a nonzero binary form of degree `degree` whose
/// dehomogenization `B(s, 1)` is `affine`; also reports whether irrational
/// roots exist.
pub fn binary_form_roots(affine: &UPoly, degree: usize) -> (Vec<BinaryRoot>, bool) {
    let mut roots: Vec<BinaryRoot> = rational_roots(affine).into_iter().map(BinaryRoot::Finite).collect();
    let irrational = irrational_root_count(affine) > 0;
    if affine.degree().unwrap_or(0) < degree {
        roots.push(BinaryRoot::Infinite);
    }
    (roots, irrational)
}
