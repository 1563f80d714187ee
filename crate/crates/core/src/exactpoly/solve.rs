//! Common zeros in the projective plane of a finite set of forms.
//!
//! After a linear change of coordinates that makes the first form monic in
//! `y`, affine zeros are projected to the `x`-axis with resultants against
//! fixed linear combinations of the remaining forms, and points on the line
//! `z = 0` are read off binary forms.

use num_traits::{One, Zero};

use super::form::TernaryForm;
use super::rat::{rat, Rat};
use super::resultant::{form_gcd, resultant_v};
use super::roots::{irrational_root_count, rational_roots};
use super::upoly::UPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveError {
    /// A common zero has no rational coordinates.
    NonRational,
    /// The forms share a curve.
    PositiveDimensional,
}

pub type ProjectivePoint = [Rat; 3];

/// Scales a nonzero point so that its last nonzero coordinate is 1.
pub fn normalize_point(p: &ProjectivePoint) -> ProjectivePoint {
    let k = p.iter().rposition(|c| !c.is_zero()).expect("nonzero projective point");
    let inv = p[k].recip();
    [&p[0] * &inv, &p[1] * &inv, &p[2] * &inv]
}

/// All common zeros of `forms`, normalized and sorted.
pub fn common_zeros(forms: &[TernaryForm]) -> Result<Vec<ProjectivePoint>, SolveError> {
    let forms: Vec<TernaryForm> = forms.iter().filter(|f| !f.is_zero()).cloned().collect();
    if forms.is_empty() {
        return Err(SolveError::PositiveDimensional);
    }
    if forms.iter().any(|f| f.degree() == 0) {
        return Ok(Vec::new());
    }
    if form_gcd(&forms).degree() > 0 {
        return Err(SolveError::PositiveDimensional);
    }
    let pivot = forms.iter().enumerate().min_by_key(|(_, f)| f.degree()).map(|(i, _)| i).unwrap();
    let mut ordered = vec![forms[pivot].clone()];
    ordered.extend(forms.iter().enumerate().filter(|&(i, _)| i != pivot).map(|(_, f)| f.clone()));

    let (a, b) = monic_shift(&ordered[0]);
    // (x, y, z) = (x' + a y', y', z' + b y')
    let m = [[rat(1), a.clone(), rat(0)], [rat(0), rat(1), rat(0)], [rat(0), b.clone(), rat(1)]];
    let moved: Vec<TernaryForm> = ordered.iter().map(|f| f.linear_substitute(&m)).collect();

    let mut points = affine_zeros(&moved)?;
    points.extend(zeros_at_infinity(&moved)?);
    let mut out: Vec<ProjectivePoint> =
        points.into_iter().map(|[x, y, z]| normalize_point(&[&x + &a * &y, y.clone(), &z + &b * &y])).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Smallest `(a, b)` with `f(a, 1, b) != 0`.
fn monic_shift(f: &TernaryForm) -> (Rat, Rat) {
    for s in 0i64.. {
        for a in -s..=s {
            for b in [-(s - a.abs()), s - a.abs()] {
                let (ra, rb) = (rat(a), rat(b));
                if !f.eval(&[ra.clone(), rat(1), rb.clone()]).is_zero() {
                    return (ra, rb);
                }
            }
        }
    }
    unreachable!()
}

const SMALL_TRIES: usize = 3;

/// Coefficient of the `i`-th extra form in the `t`-th combination.
fn combination_coeff(t: usize, i: usize) -> Rat {
    if t < SMALL_TRIES {
        rat((((i + 1) * (2 * t + 3) + t) % 7) as i64 - 3)
    } else {
        num_traits::pow(rat((t - SMALL_TRIES) as i64), i + 1)
    }
}

fn affine_zeros(forms: &[TernaryForm]) -> Result<Vec<ProjectivePoint>, SolveError> {
    let polys: Vec<_> = forms.iter().map(|f| f.dehomogenize(2)).collect();
    let g1 = &polys[0];
    let xs = if polys.len() == 1 {
        unreachable!("a single form has a curve of zeros")
    } else {
        let d = g1.degree_in_v().unwrap_or(0) as usize;
        // A few combinations with small coefficients usually suffice; the
        // powers of t that follow are enough in every case.
        let tries = SMALL_TRIES + d * (polys.len() - 2) + 1;
        let mut acc: Option<UPoly> = None;
        for t in 0..tries {
            let mut h = polys[1].clone();
            for (i, p) in polys[2..].iter().enumerate() {
                h = &h + &p.scale(&combination_coeff(t, i));
            }
            let r = resultant_v(g1, &h);
            let next = match acc {
                None => r,
                Some(prev) => prev.gcd(&r),
            };
            acc = Some(next);
            let cur = acc.as_ref().unwrap();
            if cur.is_zero() {
                continue;
            }
            if cur.is_constant() || irrational_root_count(cur) == 0 {
                break;
            }
        }
        acc.unwrap()
    };
    if xs.is_zero() {
        return Err(SolveError::PositiveDimensional);
    }
    if irrational_root_count(&xs) > 0 {
        return Err(SolveError::NonRational);
    }
    let mut out = Vec::new();
    for alpha in rational_roots(&xs) {
        let g = polys.iter().fold(UPoly::zero(), |acc, p| acc.gcd(&p.restrict_u(&alpha)));
        if g.is_zero() {
            return Err(SolveError::PositiveDimensional);
        }
        if irrational_root_count(&g) > 0 {
            return Err(SolveError::NonRational);
        }
        for beta in rational_roots(&g) {
            out.push([alpha.clone(), beta, Rat::one()]);
        }
    }
    Ok(out)
}

fn zeros_at_infinity(forms: &[TernaryForm]) -> Result<Vec<ProjectivePoint>, SolveError> {
    // B(s) = F(s, 1, 0)
    let binary = |f: &TernaryForm| {
        let mut coeffs = vec![Rat::zero(); f.degree() as usize + 1];
        for (&(a, _, c), k) in f.terms() {
            if c == 0 {
                coeffs[a as usize] = k.clone();
            }
        }
        UPoly::from_coeffs(coeffs)
    };
    let g = forms.iter().fold(UPoly::zero(), |acc, f| acc.gcd(&binary(f)));
    let one_zero_zero = [rat(1), rat(0), rat(0)];
    let at_x = forms.iter().all(|f| f.eval(&one_zero_zero).is_zero());
    if g.is_zero() {
        return Err(SolveError::PositiveDimensional);
    }
    if irrational_root_count(&g) > 0 {
        return Err(SolveError::NonRational);
    }
    let mut out: Vec<ProjectivePoint> = rational_roots(&g).into_iter().map(|s| [s, rat(1), rat(0)]).collect();
    if at_x {
        out.push(one_zero_zero);
    }
    Ok(out)
}
