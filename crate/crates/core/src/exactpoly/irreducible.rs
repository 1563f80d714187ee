//! Heuristic irreducibility test over the rationals.
//!
//! If `F = G H` then the restriction of `F` to any line along which `F` keeps
//! its degree splits as well, and so does its reduction modulo any prime that
//! keeps the degree. Finding one line and one prime where the reduction is
//! irreducible therefore proves `F` irreducible over `Q`. Failing to find one
//! after a bounded search is reported as "probably reducible".

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::form::TernaryForm;
use super::modp;
use super::rat::{primitive_integers, rat, Rat};
use super::upoly::UPoly;

const LINES: usize = 24;
const PRIMES_PER_LINE: usize = 12;
const PRIME_SEARCH: usize = 200;

/// Restriction of `f` to the line `p + s q`, as a polynomial in `s`.
pub fn restrict_to_line(f: &TernaryForm, p: &[Rat; 3], q: &[Rat; 3]) -> UPoly {
    let lin = |i: usize| UPoly::from_coeffs(vec![p[i].clone(), q[i].clone()]);
    let (lx, ly, lz) = (lin(0), lin(1), lin(2));
    let mut out = UPoly::zero();
    for (&(a, b, c), k) in f.terms() {
        let t = lx.pow(a) * ly.pow(b) * lz.pow(c);
        out = &out + &t.scale(k);
    }
    out
}

/// True when some line section of `f` is irreducible modulo some prime.
/// Deterministic: the lines come from a fixed-seed generator.
pub fn probably_irreducible(f: &TernaryForm) -> bool {
    let d = f.degree() as usize;
    if d <= 1 {
        return true;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1ee7);
    for _ in 0..LINES {
        let mut draw = || -> [Rat; 3] { [0, 1, 2].map(|_| rat(rng.gen_range(-9..=9))) };
        let (p, q) = (draw(), draw());
        let section = restrict_to_line(f, &p, &q);
        if section.degree() != Some(d) || !section.gcd(&section.derivative()).is_constant() {
            continue;
        }
        let ints: Vec<BigInt> = primitive_integers(section.coeffs());
        let good_primes = modp::primes_from(3)
            .take(PRIME_SEARCH)
            .filter(|&prime| modp::is_good_reduction(&modp::reduce(&ints, prime), d, prime))
            .take(PRIMES_PER_LINE);
        for prime in good_primes {
            if modp::count_irreducible_factors(&modp::reduce(&ints, prime), prime) == 1 {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::form::parse_form;

    #[test]
    fn line_restriction_agrees_with_evaluation() {
        let f = parse_form("y^2*z - x^3 - x^2*z").unwrap();
        let p = [rat(1), rat(-2), rat(3)];
        let q = [rat(0), rat(5), rat(-1)];
        let r = restrict_to_line(&f, &p, &q);
        for s in -3..4 {
            let s = rat(s);
            let pt = [&p[0] + &s * &q[0], &p[1] + &s * &q[1], &p[2] + &s * &q[2]];
            assert_eq!(r.eval(&s), f.eval(&pt));
        }
    }

    #[test]
    fn irreducible_curves_pass() {
        for text in ["y^2*z - x^3", "y^2*z - x^3 - x^2*z", "y^2*z^3 - x^5", "x^2 + y*z", "y^2*z - x^3 + x*z^2"] {
            assert!(probably_irreducible(&parse_form(text).unwrap()), "{text}");
        }
    }

    #[test]
    fn reducible_curves_fail() {
        for text in ["x*y^2 - x^2*z", "x*y", "x^2 - y^2", "x^2*z - y^2*z"] {
            assert!(!probably_irreducible(&parse_form(text).unwrap()), "{text}");
        }
    }
}
