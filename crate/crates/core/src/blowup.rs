//! Local equations at infinitely near points and the exceptional-divisor
//! bookkeeping on the blown-up plane.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::cluster::{proximity_matrix, Cluster, InfNearPoint, ProximityMatrix, Step, WeightedCluster};
use crate::error::{Error, Result};
use crate::exactpoly::{AffinePoly, ChartTag, Rat, TernaryForm};

/// A local equation together with the chart it lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalEquation {
    pub poly: AffinePoly,
    pub chart: ChartTag,
}

impl LocalEquation {
    pub fn order(&self) -> u32 {
        self.poly.order().unwrap_or(u32::MAX)
    }
}

/// One chart step: pull back, divide by the exceptional coordinate to the
/// power `m`, move the chosen point to the origin. `None` if the division is
/// not exact.
pub fn step_local(g: &AffinePoly, step: &Step, m: i64) -> Option<AffinePoly> {
    let h = g.pullback(step.chart()).divide_exceptional(step.chart(), m)?;
    Some(match step {
        Step::First(t) => h.translate(&Rat::zero(), t),
        Step::Second => h,
    })
}

fn chart_tag(p: &InfNearPoint) -> ChartTag {
    match p.path().last() {
        Some(s) => ChartTag::Blowup { level: p.level(), chart: s.chart() },
        None => match p.base_chart().0 {
            2 => ChartTag::Z,
            1 => ChartTag::Y,
            _ => ChartTag::X,
        },
    }
}

/// Local equation of the strict transform of `f` at `p`, with `p` at the
/// origin. At each step the exponent divided out is the multiplicity at that
/// step's center.
pub fn strict_transform_local(f: &TernaryForm, p: &InfNearPoint) -> Result<LocalEquation> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let mut g = p.local_equation_at_origin(f);
    for step in p.path() {
        let m = g.order().unwrap_or(0) as i64;
        g = step_local(&g, step, m).expect("the order always divides the pullback");
    }
    Ok(LocalEquation { poly: g.normalize_sign(), chart: chart_tag(p) })
}

/// `e_P(F)`: order of the strict transform at `p`; 0 when `p` is not on it.
pub fn multiplicity(f: &TernaryForm, p: &InfNearPoint) -> Result<u32> {
    Ok(strict_transform_local(f, p)?.order())
}

/// Local equation at `p` of the virtual transform with respect to the
/// weights of `kw` at the points preceding `p` (weight 0 off the cluster).
/// `None` when some division is not exact, i.e. the virtual transform has a
/// negative exceptional coefficient before reaching `p`.
pub fn virtual_transform_local(f: &TernaryForm, kw: &WeightedCluster, p: &InfNearPoint) -> Option<AffinePoly> {
    let mut g = p.local_equation_at_origin(f);
    for (level, step) in p.path().iter().enumerate() {
        let m = kw.weight(&p.ancestor(level));
        g = step_local(&g, step, m)?;
    }
    Some(g)
}

/// A divisor on the blown-up plane in class data: the degree of the plane
/// curve, its multiplicities at the cluster points and its coefficients on
/// the strict transforms of the exceptional curves, all aligned with the
/// canonical order of the cluster.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExcDecomposition {
    pub degree: u32,
    pub points: Vec<InfNearPoint>,
    pub e: Vec<i64>,
    pub exc: Vec<i64>,
}

impl ExcDecomposition {
    fn proximity(&self) -> ProximityMatrix {
        proximity_matrix(&self.points.iter().cloned().collect())
    }

    pub fn is_effective(&self) -> bool {
        self.exc.iter().all(|&c| c >= 0)
    }

    /// Self-intersection of the strict part `d L - sum c_P E~_P`, from the
    /// intersection form of the `E~` curves (no use of the `e` vector).
    pub fn strict_self_intersection(&self) -> i64 {
        let gram = exceptional_gram(&self.proximity());
        let d = self.degree as i64;
        let c = &self.exc;
        let mut q = 0;
        for i in 0..c.len() {
            for j in 0..c.len() {
                q += c[i] * gram[i][j] * c[j];
            }
        }
        d * d + q
    }

    pub fn to_json(&self) -> Value {
        json!({ "degree": self.degree, "e": self.e, "exc": self.exc })
    }
}

/// Intersection matrix of the curves `E~_P`: `-P^T P` for the proximity
/// matrix `P`.
pub fn exceptional_gram(pm: &ProximityMatrix) -> Vec<Vec<i64>> {
    let n = pm.len();
    let mut g = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            g[i][j] = -(0..n).map(|k| pm.entries[k][i] * pm.entries[k][j]).sum::<i64>();
        }
    }
    g
}

/// `(E~_P)^2 = -1 - #{Q in K : Q proximate to P}`.
pub fn exceptional_self_intersection(k: &Cluster, p: &InfNearPoint) -> i64 {
    -1 - k.iter().filter(|q| q.is_proximate_to(p)).count() as i64
}

/// Coefficients of the total transform `E-_P` on the curves `E~_Q`, built by
/// the recursion `E-_P = E~_P + sum_{Q prox P} E-_Q`.
pub fn bar_e_expansion(k: &Cluster, p: &InfNearPoint) -> Vec<i64> {
    let points: Vec<&InfNearPoint> = k.iter().collect();
    let n = points.len();
    let mut bars: Vec<Vec<i64>> = vec![Vec::new(); n];
    for i in (0..n).rev() {
        let mut v = vec![0i64; n];
        v[i] = 1;
        for j in i + 1..n {
            if points[j].is_proximate_to(points[i]) {
                for (a, b) in v.iter_mut().zip(&bars[j]) {
                    *a += b;
                }
            }
        }
        bars[i] = v;
    }
    let idx = points.iter().position(|q| *q == p).expect("point in cluster");
    bars.swap_remove(idx)
}

fn multiplicities(f: &TernaryForm, points: &[InfNearPoint]) -> Result<Vec<i64>> {
    points.iter().map(|p| multiplicity(f, p).map(|m| m as i64)).collect()
}

/// `D-` over `K`: coefficients `P^{-1} e` on the `E~` curves.
pub fn total_transform(f: &TernaryForm, k: &Cluster) -> Result<ExcDecomposition> {
    let pm = proximity_matrix(k);
    let e = multiplicities(f, &pm.points)?;
    let exc = pm.solve(&e);
    Ok(ExcDecomposition { degree: f.degree(), points: pm.points, e, exc })
}

/// `D- - sum m_P E-_P`: coefficients `P^{-1} (e - m)`.
pub fn virtual_transform(f: &TernaryForm, kw: &WeightedCluster) -> Result<ExcDecomposition> {
    let pm = proximity_matrix(&kw.cluster());
    let e = multiplicities(f, &pm.points)?;
    let diff: Vec<i64> = pm.points.iter().zip(&e).map(|(p, ep)| ep - kw.weight(p)).collect();
    let exc = pm.solve(&diff);
    Ok(ExcDecomposition { degree: f.degree(), points: pm.points, e, exc })
}

/// The virtual transform is effective.
pub fn goes_through(f: &TernaryForm, kw: &WeightedCluster) -> Result<bool> {
    Ok(virtual_transform(f, kw)?.is_effective())
}

/// `e_P(F) = m_P` at every point of the cluster.
pub fn goes_through_effectively(f: &TernaryForm, kw: &WeightedCluster) -> Result<bool> {
    for (p, &m) in kw.iter() {
        if multiplicity(f, p)? as i64 != m {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The virtual transform coincides with the strict transform.
pub fn virtual_equals_strict(f: &TernaryForm, kw: &WeightedCluster) -> Result<bool> {
    Ok(virtual_transform(f, kw)?.exc.iter().all(|c| c.is_zero()))
}
