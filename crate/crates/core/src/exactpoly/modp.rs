//! Polynomial arithmetic modulo a small prime.
//!
//! Used to pick Hensel primes for rational root finding and to count the
//! irreducible factors of a reduction (Berlekamp), which bounds the number of
//! factors over the rationals from above.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

pub type PolyModP = Vec<u64>;

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn trim(mut f: PolyModP) -> PolyModP {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn reduce(coeffs: &[BigInt], p: u64) -> PolyModP {
    let pb = BigInt::from(p);
    trim(coeffs.iter().map(|c| c.mod_floor(&pb).to_u64().expect("residue fits in u64")).collect())
}

pub fn eval(f: &[u64], x: u64, p: u64) -> u64 {
    f.iter().rev().fold(0, |acc, &c| (mulmod(acc, x, p) + c) % p)
}

fn derivative(f: &[u64], p: u64) -> PolyModP {
    trim(f.iter().enumerate().skip(1).map(|(i, &c)| mulmod(c, i as u64 % p, p)).collect())
}

fn rem(f: &[u64], g: &[u64], p: u64) -> PolyModP {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    let inv = invmod(*g.last().unwrap(), p);
    while r.len() > dg && !r.is_empty() {
        let shift = r.len() - 1 - dg;
        let c = mulmod(*r.last().unwrap(), inv, p);
        for (j, &gj) in g.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - mulmod(c, gj, p)) % p;
        }
        r = trim(r);
    }
    r
}

pub(crate) fn gcd(f: &[u64], g: &[u64], p: u64) -> PolyModP {
    let (mut a, mut b) = (trim(f.to_vec()), trim(g.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn mul_rem(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> PolyModP {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    rem(&trim(out), modulus, p)
}

/// True when `f` keeps its degree `n` mod `p` and is squarefree there.
pub fn is_good_reduction(f: &[u64], n: usize, p: u64) -> bool {
    if f.len() != n + 1 {
        return false;
    }
    let df = derivative(f, p);
    if df.is_empty() {
        return n == 0;
    }
    gcd(f, &df, p).len() == 1
}

/// Number of irreducible factors of a squarefree `f` over GF(p) (Berlekamp).
pub fn count_irreducible_factors(f: &[u64], p: u64) -> usize {
    let n = f.len() - 1;
    if n <= 1 {
        return n;
    }
    // x^p mod f by repeated squaring
    let mut xp: PolyModP = vec![1];
    let mut base: PolyModP = rem(&[0, 1], f, p);
    let mut e = p;
    while e > 0 {
        if e & 1 == 1 {
            xp = mul_rem(&xp, &base, f, p);
        }
        base = mul_rem(&base, &base, f, p);
        e >>= 1;
    }
    let mut rows = Vec::with_capacity(n);
    let mut cur: PolyModP = vec![1];
    for i in 0..n {
        let mut row = vec![0u64; n];
        for (j, &c) in cur.iter().enumerate() {
            row[j] = c;
        }
        row[i] = (row[i] + p - 1) % p;
        rows.push(row);
        cur = mul_rem(&cur, &xp, f, p);
    }
    n - rank_mod_p(rows, p)
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = invmod(rows[rank][col], p);
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let factor = mulmod(rows[r][col], inv, p);
                for c in col..ncols {
                    let sub = mulmod(factor, rows[rank][c], p);
                    rows[r][c] = (rows[r][c] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Odd primes in increasing order starting at `from`.
pub fn primes_from(from: u64) -> impl Iterator<Item = u64> {
    (from.max(3)..).filter(|&n| n % 2 == 1 && is_prime(n))
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
