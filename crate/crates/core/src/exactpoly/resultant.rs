//! Resultants and greatest common divisors of bivariate polynomials.
//!
//! A bivariate polynomial is handled as an [`AffinePoly`] in `(u, v)` and,
//! where convenient, as a polynomial in `v` with coefficients in `Q[u]`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::apoly::AffinePoly;
use super::form::TernaryForm;
use super::matrix::RatMatrix;
use super::modp;
use super::rat::{common_denominator, rat, Rat};
use super::upoly::UPoly;

/// Sylvester resultant of `a` and `b`, treated as polynomials of formal
/// degrees `na` and `nb` (leading coefficients may vanish).
pub fn sylvester_resultant(a: &UPoly, na: usize, b: &UPoly, nb: usize) -> Rat {
    let n = na + nb;
    if n == 0 {
        return Rat::one();
    }
    let mut m = RatMatrix::zeros(n, n);
    for i in 0..nb {
        for k in 0..=na {
            m.set(i, i + k, a.coeff(na - k));
        }
    }
    for i in 0..na {
        for k in 0..=nb {
            m.set(nb + i, i + k, b.coeff(nb - k));
        }
    }
    m.determinant()
}

/// `res_v(a, b)` as a polynomial in `u`, computed modulo word-sized primes
/// and lifted by Chinese remaindering.
pub fn resultant_v(a: &AffinePoly, b: &AffinePoly) -> UPoly {
    if a.is_zero() || b.is_zero() {
        return UPoly::zero();
    }
    let (ia, ca) = integer_rows(a);
    let (ib, cb) = integer_rows(b);
    let (na, nb) = (ia.len() - 1, ib.len() - 1);
    let norm = |rows: &[Vec<BigInt>]| rows.iter().flatten().map(|c| c.abs()).sum::<BigInt>();
    let bound = BigInt::from(2) * num_traits::pow(norm(&ia), nb) * num_traits::pow(norm(&ib), na);
    let samples = a.total_degree().unwrap_or(0) as usize * b.total_degree().unwrap_or(0) as usize + 1;
    let primes = crt_primes();
    let mut modulus = BigInt::one();
    let mut acc = vec![BigInt::zero(); samples];
    for &p in primes {
        if modulus > bound {
            break;
        }
        let residues = resultant_mod_p(&ia, &ib, samples, p);
        let pb = BigInt::from(p);
        let inv = BigInt::from(modp::invmod((&modulus % &pb).to_u64().unwrap(), p));
        for (x, r) in acc.iter_mut().zip(residues) {
            let diff = (BigInt::from(r) - &*x).mod_floor(&pb);
            *x += &modulus * ((diff * &inv) % &pb);
        }
        modulus *= pb;
    }
    if modulus <= bound {
        return resultant_by_evaluation(a, b);
    }
    let half = &modulus / 2;
    let coeffs: Vec<Rat> =
        acc.into_iter().map(|x| Rat::from_integer(if x > half { x - &modulus } else { x })).collect();
    // res(ca a, cb b) = ca^nb cb^na res(a, b)
    let scale = num_traits::pow(ca, nb) * num_traits::pow(cb, na);
    UPoly::from_coeffs(coeffs).scale(&scale.recip())
}

/// Coefficients of `v^k` as integer polynomials in `u`, after scaling by the
/// returned positive factor.
fn integer_rows(a: &AffinePoly) -> (Vec<Vec<BigInt>>, Rat) {
    let rows = a.as_poly_in_v();
    let den = common_denominator(rows.iter().flat_map(|r| r.coeffs().iter()));
    let c = Rat::from_integer(den);
    let ints = rows.iter().map(|r| r.coeffs().iter().map(|x| (x * &c).to_integer()).collect()).collect();
    (ints, c)
}

fn crt_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| modp::primes_from(1 << 31).take(64).collect())
}

/// Coefficients of `res_v` modulo `p`, by evaluation at `u = 0..samples`.
fn resultant_mod_p(a: &[Vec<BigInt>], b: &[Vec<BigInt>], samples: usize, p: u64) -> Vec<u64> {
    let ra: Vec<Vec<u64>> = a.iter().map(|r| modp::reduce(r, p)).collect();
    let rb: Vec<Vec<u64>> = b.iter().map(|r| modp::reduce(r, p)).collect();
    let (na, nb) = (a.len() - 1, b.len() - 1);
    let n = na + nb;
    let ys: Vec<u64> = (0..samples as u64)
        .map(|u| {
            let va: Vec<u64> = ra.iter().map(|r| modp::eval(r, u, p)).collect();
            let vb: Vec<u64> = rb.iter().map(|r| modp::eval(r, u, p)).collect();
            let mut m = vec![vec![0u64; n]; n];
            for i in 0..nb {
                for k in 0..=na {
                    m[i][i + k] = va[na - k];
                }
            }
            for i in 0..na {
                for k in 0..=nb {
                    m[nb + i][i + k] = vb[nb - k];
                }
            }
            det_mod_p(m, p)
        })
        .collect();
    interpolate_mod_p(&ys, p)
}

fn det_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = m.len();
    let mut det = 1u64;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| m[r][c] != 0) else {
            return 0;
        };
        if piv != c {
            m.swap(piv, c);
            det = (p - det) % p;
        }
        det = modp::mulmod(det, m[c][c], p);
        let inv = modp::invmod(m[c][c], p);
        for r in c + 1..n {
            if m[r][c] == 0 {
                continue;
            }
            let f = modp::mulmod(m[r][c], inv, p);
            for k in c..n {
                m[r][k] = (m[r][k] + p - modp::mulmod(f, m[c][k], p)) % p;
            }
        }
    }
    det
}

/// Coefficients of the polynomial taking `ys[i]` at `i`, modulo `p`.
fn interpolate_mod_p(ys: &[u64], p: u64) -> Vec<u64> {
    let n = ys.len();
    let mut table = ys.to_vec();
    for level in 1..n {
        let inv = modp::invmod(level as u64, p);
        for i in (level..n).rev() {
            table[i] = modp::mulmod((table[i] + p - table[i - 1]) % p, inv, p);
        }
    }
    // Newton form with nodes 0, 1, ..., expanded from the top
    let mut out = vec![0u64; n];
    for i in (0..n).rev() {
        // out = out * (u - i) + table[i]
        let mut next = vec![0u64; n];
        for k in 0..n {
            if out[k] == 0 {
                continue;
            }
            if k + 1 < n {
                next[k + 1] = (next[k + 1] + out[k]) % p;
            }
            next[k] = (next[k] + p - modp::mulmod(out[k], i as u64 % p, p)) % p;
        }
        next[0] = (next[0] + table[i]) % p;
        out = next;
    }
    out
}

/// Exact fallback: evaluation over the rationals and Newton interpolation.
fn resultant_by_evaluation(a: &AffinePoly, b: &AffinePoly) -> UPoly {
    let na = a.degree_in_v().unwrap_or(0) as usize;
    let nb = b.degree_in_v().unwrap_or(0) as usize;
    let da = a.total_degree().unwrap_or(0) as usize;
    let db = b.total_degree().unwrap_or(0) as usize;
    let samples = da * db + 1;
    let (mut xs, mut ys) = (Vec::with_capacity(samples), Vec::with_capacity(samples));
    for i in 0..samples {
        let u = rat(i as i64);
        let r = sylvester_resultant(&a.restrict_u(&u), na, &b.restrict_u(&u), nb);
        xs.push(u);
        ys.push(r);
    }
    UPoly::interpolate(&xs, &ys)
}

type PolyInV = Vec<UPoly>;

fn trim(mut p: PolyInV) -> PolyInV {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn content(p: &PolyInV) -> UPoly {
    p.iter().fold(UPoly::zero(), |acc, c| acc.gcd(c))
}

fn primitive_part(p: &PolyInV) -> PolyInV {
    let c = content(p);
    if c.is_zero() {
        return p.clone();
    }
    p.iter().map(|x| x.exact_div(&c)).collect()
}

/// Pseudo-remainder of `a` by `b` with respect to `v`.
fn pseudo_rem(a: &PolyInV, b: &PolyInV) -> PolyInV {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let lr = r.last().unwrap().clone();
        let mut next: PolyInV = r.iter().map(|c| c * lb).collect();
        for (j, bj) in b.iter().enumerate() {
            next[shift + j] = &next[shift + j] - &(&lr * bj);
        }
        r = trim(next);
    }
    r
}

/// Specializes `u` at a point where both leading coefficients in `v` survive:
/// a constant gcd there rules out any common factor of positive `v`-degree.
fn coprime_in_v(a: &PolyInV, b: &PolyInV) -> bool {
    if a.len() < 2 || b.len() < 2 {
        return true;
    }
    let (la, lb) = (a.last().unwrap(), b.last().unwrap());
    let Some(u) = (3..40).map(rat).find(|u| !la.eval(u).is_zero() && !lb.eval(u).is_zero()) else {
        return false;
    };
    let at = |p: &PolyInV| UPoly::from_coeffs(p.iter().map(|c| c.eval(&u)).collect());
    at(a).gcd(&at(b)).is_constant()
}

/// Greatest common divisor in `Q[u, v]`, up to a rational scalar.
pub fn bivariate_gcd(a: &AffinePoly, b: &AffinePoly) -> AffinePoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let (pa, pb) = (trim(a.as_poly_in_v()), trim(b.as_poly_in_v()));
    let c = content(&pa).gcd(&content(&pb));
    if coprime_in_v(&pa, &pb) {
        return AffinePoly::from_poly_in_v(&[c]);
    }
    let (mut x, mut y) = (primitive_part(&pa), primitive_part(&pb));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = if r.is_empty() { r } else { primitive_part(&r) };
    }
    if x.len() == 1 {
        return AffinePoly::from_poly_in_v(&[c]);
    }
    let g: PolyInV = x.iter().map(|k| k * &c).collect();
    AffinePoly::from_poly_in_v(&g)
}

/// Greatest common divisor of forms, up to a rational scalar, returned in
/// primitive form. The gcd of zero forms is the zero form.
pub fn form_gcd(forms: &[TernaryForm]) -> TernaryForm {
    let nonzero: Vec<&TernaryForm> = forms.iter().filter(|f| !f.is_zero()).collect();
    let Some(first) = nonzero.first() else {
        return TernaryForm::zero(0);
    };
    let zval = nonzero.iter().map(|f| f.z_valuation()).min().unwrap();
    let mut g = first.divide_z_power(first.z_valuation()).dehomogenize(2);
    for f in &nonzero[1..] {
        if g.total_degree() == Some(0) {
            break;
        }
        g = bivariate_gcd(&g, &f.divide_z_power(f.z_valuation()).dehomogenize(2));
    }
    let deg = g.total_degree().unwrap_or(0);
    let h = TernaryForm::homogenize(&g, deg);
    let zpow = TernaryForm::monomial(Rat::one(), (0, 0, zval));
    (&h * &zpow).primitive()
}

/// Whether `f` is squarefree, together with its primitive part.
pub fn squarefree_and_primitive(f: &TernaryForm) -> (bool, TernaryForm) {
    let prim = f.primitive();
    if f.degree() == 0 {
        return (true, prim);
    }
    let [fx, fy, fz] = prim.gradient();
    let g = form_gcd(&[prim.clone(), fx, fy, fz]);
    (g.degree() == 0, prim)
}
