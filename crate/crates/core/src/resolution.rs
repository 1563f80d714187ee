//! The weighted cluster of singular points of a plane curve, found by
//! blowing up singular points until the strict transform is smooth.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use crate::blowup::step_local;
use crate::cluster::{Cluster, InfNearPoint, Step, WeightedCluster};
use crate::error::{Error, Result};
use crate::exactpoly::roots::{irrational_root_count, rational_roots};
use crate::exactpoly::{common_zeros, AffinePoly, ProjectivePoint, Rat, SolveError, TernaryForm, UPoly};

pub const DEFAULT_MAX_DEPTH: usize = 50;

/// Proper singular points: common zeros of the three partial derivatives.
pub fn singular_points(f: &TernaryForm) -> Result<Vec<ProjectivePoint>> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let grad: Vec<TernaryForm> = f.gradient().into_iter().collect();
    if grad.iter().all(|g| g.is_zero()) {
        return Ok(Vec::new());
    }
    common_zeros(&grad).map_err(|e| match e {
        SolveError::NonRational => Error::NonRationalSingularity,
        SolveError::PositiveDimensional => Error::PositiveDimensionalSingularLocus,
    })
}

/// `K^C` with weights `e_P(C)`, using the default depth bound.
pub fn singular_cluster(f: &TernaryForm) -> Result<WeightedCluster> {
    singular_cluster_with_depth(f, DEFAULT_MAX_DEPTH)
}

pub fn singular_cluster_with_depth(f: &TernaryForm, max_depth: usize) -> Result<WeightedCluster> {
    let points = singular_points(f)?;
    let parts: Vec<Result<BTreeMap<InfNearPoint, i64>>> = points
        .par_iter()
        .map(|q| {
            let p = InfNearPoint::proper(q);
            let g = p.local_equation_at_origin(f);
            let mut out = BTreeMap::new();
            explore(&p, &g, max_depth, &mut out)?;
            Ok(out)
        })
        .collect();
    let mut all = BTreeMap::new();
    for part in parts {
        all.extend(part?);
    }
    WeightedCluster::from_weights(all)
}

/// Records `p` if the local equation `g` is singular there and recurses into
/// the singular points on its exceptional line.
fn explore(p: &InfNearPoint, g: &AffinePoly, max_depth: usize, out: &mut BTreeMap<InfNearPoint, i64>) -> Result<()> {
    let m = g.order().unwrap_or(0);
    if m < 2 {
        return Ok(());
    }
    if p.level() > max_depth {
        return Err(Error::DepthExceeded(max_depth));
    }
    out.insert(p.clone(), m as i64);
    let mi = m as i64;
    // On u = 0 the first-chart transform is p(v) + u q(v) + ..., with p and q
    // the tangent cone and the next form at u = 1.
    let tangent = g.form_at_u1(m);
    let next = g.form_at_u1(m + 1);
    let candidates = tangent.gcd(&tangent.derivative()).gcd(&next);
    if irrational_root_count(&candidates) > 0 {
        return Err(Error::NonRationalSingularity);
    }
    for t in rational_roots(&candidates) {
        let step = Step::First(t);
        let h = step_local(g, &step, mi).expect("order divides pullback");
        explore(&p.child(step), &h, max_depth, out)?;
    }
    if tangent.degree().is_none_or(|d| d < m as usize) {
        let h = step_local(g, &Step::Second, mi).expect("order divides pullback");
        explore(&p.second(), &h, max_depth, out)?;
    }
    Ok(())
}

/// Whether the strict transform of `f` on the surface obtained by blowing up
/// all points of `k` is nonsingular. Proper points are checked with the
/// Jacobian of `f`; points on each exceptional line not themselves in `k`
/// with the Jacobian of the local strict transform.
pub fn is_resolved(f: &TernaryForm, k: &Cluster) -> Result<bool> {
    for q in singular_points(f)? {
        if !k.contains(&InfNearPoint::proper(&q)) {
            return Ok(false);
        }
    }
    for p in k {
        let g = crate::blowup::strict_transform_local(f, p)?.poly;
        let m = g.order().unwrap_or(0) as i64;
        if m == 0 {
            continue;
        }
        let h = g.pullback(Step::Second.chart()).divide_exceptional(Step::Second.chart(), m).unwrap();
        let at_second = p.second();
        if !k.contains(&at_second) && h.order().unwrap_or(0) >= 2 {
            return Ok(false);
        }
        let h = step_local(&g, &Step::First(Rat::zero()), m).unwrap();
        let on_line = |poly: &AffinePoly| -> UPoly { poly.restrict_u(&Rat::zero()) };
        let sing = on_line(&h).gcd(&on_line(&h.d_du())).gcd(&on_line(&h.d_dv()));
        if irrational_root_count(&sing) > 0 {
            return Ok(false);
        }
        for t in rational_roots(&sing) {
            if !k.contains(&p.first(t)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{parse_form, rat};

    fn form(s: &str) -> TernaryForm {
        parse_form(s).unwrap()
    }

    #[test]
    fn singular_point_examples() {
        assert!(singular_points(&form("x^2 + y*z")).unwrap().is_empty());
        let p = InfNearPoint::from_ints(0, 0, 1);
        assert_eq!(singular_points(&form("y^2*z - x^3 - x^2*z")).unwrap(), vec![p.origin().clone()]);
        let q = InfNearPoint::from_ints(0, 1, 0);
        let mut want = vec![p.origin().clone(), q.origin().clone()];
        want.sort();
        assert_eq!(singular_points(&form("y^2*z^3 - x^5")).unwrap(), want);
    }

    #[test]
    fn clusters_of_the_corpus() {
        let p = InfNearPoint::from_ints(0, 0, 1);
        let nodal = singular_cluster(&form("y^2*z - x^3 - x^2*z")).unwrap();
        assert_eq!(nodal, WeightedCluster::from_pairs([(p.clone(), 2)]).unwrap());
        let cusp = singular_cluster(&form("y^2*z - x^3")).unwrap();
        assert_eq!(cusp, nodal);
        let q = InfNearPoint::from_ints(0, 1, 0);
        let quintic = singular_cluster(&form("y^2*z^3 - x^5")).unwrap();
        let want =
            WeightedCluster::from_pairs([(p.clone(), 2), (p.first(rat(0)), 2), (q.clone(), 3), (q.first(rat(0)), 2)])
                .unwrap();
        assert_eq!(quintic, want);
    }

    #[test]
    fn vertical_tangent_uses_second_chart() {
        // tangent line x = 0
        let p = InfNearPoint::from_ints(0, 0, 1);
        let k = singular_cluster(&form("x^2*z^3 - y^5")).unwrap();
        let r = InfNearPoint::from_ints(1, 0, 0);
        let want = [(p.clone(), 2), (p.second(), 2), (r.clone(), 3), (r.first(rat(0)), 2)];
        assert_eq!(k, WeightedCluster::from_pairs(want).unwrap());
    }

    #[test]
    fn depth_bound() {
        // A4 singularity y^2 = x^5 needs two blow-ups at the origin
        assert_eq!(singular_cluster_with_depth(&form("y^2*z^3 - x^5"), 0), Err(Error::DepthExceeded(0)));
    }

    #[test]
    fn resolved_examples() {
        let nodal = form("y^2*z - x^3 - x^2*z");
        let p = InfNearPoint::from_ints(0, 0, 1);
        assert!(is_resolved(&nodal, &Cluster::from([p])).unwrap());
        assert!(!is_resolved(&nodal, &Cluster::new()).unwrap());
        assert!(is_resolved(&form("x^2 + y*z"), &Cluster::new()).unwrap());
    }
}
