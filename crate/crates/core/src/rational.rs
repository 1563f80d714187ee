//! Rational curves of nonnegative type, the system `L_C` and the checks
//! tying it to the resolution of the curve.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::blowup::{goes_through_effectively, total_transform};
use crate::cluster::{restrict_gt1, InfNearPoint, WeightedCluster};
use crate::error::{Error, Result};
use crate::exactpoly::irreducible::{probably_irreducible, restrict_to_line};
use crate::exactpoly::roots::rational_roots;
use crate::exactpoly::{normalize_point, rat, squarefree_and_primitive, ProjectivePoint, Rat, TernaryForm};
use crate::linsys::{base_cluster, system_through, LinearSystem};
use crate::resolution::{singular_cluster_with_depth, DEFAULT_MAX_DEPTH};

/// Number of general members drawn by the general-member check.
pub const GENERAL_MEMBERS: usize = 3;
/// Draws allowed per general member before the check fails.
pub const MEMBER_RETRIES: usize = 8;

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub assume_irreducible: bool,
    pub max_depth: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { assume_irreducible: false, max_depth: DEFAULT_MAX_DEPTH }
    }
}

#[derive(Clone, Debug)]
pub struct CurveAnalysis {
    pub form: TernaryForm,
    pub degree: u32,
    pub singular_cluster: WeightedCluster,
    pub nu_tilde: i64,
    pub arithmetic_genus: i64,
    pub delta: i64,
    pub geometric_genus: i64,
    pub is_rational: bool,
    pub omega_nonempty: bool,
    pub lc: Option<LinearSystem>,
}

impl CurveAnalysis {
    pub fn dim_lc(&self) -> Option<i64> {
        self.lc.as_ref().map(|l| l.proj_dim())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "curve": self.form.to_string(),
            "degree": self.degree,
            "nuTilde": self.nu_tilde,
            "arithmeticGenus": self.arithmetic_genus,
            "delta": self.delta,
            "genus": self.geometric_genus,
            "omegaNonempty": self.omega_nonempty,
            "dimLC": self.dim_lc(),
            "cluster": self.singular_cluster.to_json(),
        })
    }
}

/// Squarefree, (probably) irreducible primitive form of positive degree.
pub fn prepare(f: &TernaryForm, opts: &Options) -> Result<TernaryForm> {
    if f.is_zero() || f.degree() == 0 {
        return Err(Error::ZeroForm);
    }
    let (squarefree, prim) = squarefree_and_primitive(f);
    if !squarefree {
        return Err(Error::NotSquarefree);
    }
    if !opts.assume_irreducible && !probably_irreducible(&prim) {
        return Err(Error::Reducible);
    }
    Ok(prim)
}

fn arithmetic_genus(d: u32) -> i64 {
    let d = d as i64;
    (d - 1) * (d - 2) / 2
}

fn delta_of(kw: &WeightedCluster) -> i64 {
    kw.iter().map(|(_, &m)| m * (m - 1) / 2).sum()
}

fn nu_of(d: u32, kw: &WeightedCluster) -> i64 {
    (d as i64).pow(2) - kw.iter().map(|(_, &m)| m * m).sum::<i64>()
}

pub fn analyze(f: &TernaryForm, opts: &Options) -> Result<CurveAnalysis> {
    let form = prepare(f, opts)?;
    let degree = form.degree();
    let kc = singular_cluster_with_depth(&form, opts.max_depth)?;
    let nu_tilde = nu_of(degree, &kc);
    let pa = arithmetic_genus(degree);
    let delta = delta_of(&kc);
    let genus = pa - delta;
    if genus < 0 {
        return Err(Error::GenusNegative(genus));
    }
    let is_rational = genus == 0;
    let omega_nonempty = is_rational && nu_tilde >= 0;
    let lc = if omega_nonempty { Some(system_through(degree, &kc)?) } else { None };
    Ok(CurveAnalysis {
        form,
        degree,
        singular_cluster: kc,
        nu_tilde,
        arithmetic_genus: pa,
        delta,
        geometric_genus: genus,
        is_rational,
        omega_nonempty,
        lc,
    })
}

/// Self-intersection of the strict transform on the minimal resolution.
pub fn nu_tilde(f: &TernaryForm) -> Result<i64> {
    Ok(analyze(f, &Options::default())?.nu_tilde)
}

pub fn geometric_genus(f: &TernaryForm) -> Result<i64> {
    Ok(analyze(f, &Options::default())?.geometric_genus)
}

pub fn omega_nonempty(f: &TernaryForm) -> Result<bool> {
    Ok(analyze(f, &Options::default())?.omega_nonempty)
}

/// Degree-`d` forms going virtually through the singular cluster.
#[allow(non_snake_case)]
pub fn compute_LC(f: &TernaryForm) -> Result<LinearSystem> {
    lc_of(&analyze(f, &Options::default())?)
}

fn lc_of(a: &CurveAnalysis) -> Result<LinearSystem> {
    if !a.is_rational {
        return Err(Error::NotRational);
    }
    if a.nu_tilde < 0 {
        return Err(Error::NotNonnegativeType);
    }
    Ok(a.lc.clone().expect("present when omega is nonempty"))
}

/// For `F` in `L`: whether `L` is contained in `L_C`.
pub fn membership_is_rational_system(f: &TernaryForm, l: &LinearSystem) -> Result<bool> {
    if !l.contains(f) {
        return Err(Error::NotMember);
    }
    let lc = compute_LC(f)?;
    Ok(l.proj_dim() >= 1 && l.basis().iter().all(|b| lc.contains(b)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl CheckStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skipped => "skipped",
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }
}

pub const CHECK_NAMES: [&str; 5] =
    ["dimension", "baseClusterEqualsSingularCluster", "curveGoesThroughEffectively", "generalMember", "subPencil"];

#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub analysis: CurveAnalysis,
    pub checks: Vec<(&'static str, CheckStatus)>,
}

impl TheoremReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|(_, s)| *s != CheckStatus::Fail)
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.analysis.to_json();
        let mut checks = Map::new();
        for (name, status) in &self.checks {
            checks.insert(name.to_string(), json!(status.as_str()));
        }
        v["checks"] = Value::Object(checks);
        v
    }
}

/// Runs the five checks on `f`. When the curve has no rational system
/// through it every check is reported as skipped.
pub fn verify_theorem(f: &TernaryForm, opts: &Options, seed: u64) -> Result<TheoremReport> {
    let analysis = analyze(f, opts)?;
    let Some(lc) = analysis.lc.clone() else {
        let checks = CHECK_NAMES.iter().map(|n| (*n, CheckStatus::Skipped)).collect();
        return Ok(TheoremReport { analysis, checks });
    };
    let kc = &analysis.singular_cluster;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let dim = CheckStatus::from_bool(lc.proj_dim() == analysis.nu_tilde + 1 && lc.contains(&analysis.form));
    let base = base_cluster(&lc);
    let same_cluster = CheckStatus::from_bool(base.as_ref().is_ok_and(|b| b == kc));
    let effective = CheckStatus::from_bool(match &base {
        Ok(b) => goes_through_effectively(&analysis.form, b).unwrap_or(false),
        Err(_) => false,
    });
    let general = match &base {
        Ok(b) => CheckStatus::from_bool(general_members_ok(&lc, b, opts, &mut rng)),
        Err(_) => CheckStatus::Fail,
    };
    let pencil = sub_pencil_check(&analysis, &lc, &mut rng);
    let checks = vec![
        (CHECK_NAMES[0], dim),
        (CHECK_NAMES[1], same_cluster),
        (CHECK_NAMES[2], effective),
        (CHECK_NAMES[3], general),
        (CHECK_NAMES[4], pencil),
    ];
    Ok(TheoremReport { analysis, checks })
}

/// Each of several seeded members must, within a few draws, be squarefree of
/// genus 0 with singular cluster equal to the weight->1 part of `K_L`.
fn general_members_ok(lc: &LinearSystem, base: &WeightedCluster, opts: &Options, rng: &mut ChaCha8Rng) -> bool {
    let Ok(expected) = restrict_gt1(base) else {
        return false;
    };
    let d = lc.degree();
    (0..GENERAL_MEMBERS).all(|_| {
        (0..MEMBER_RETRIES).any(|_| {
            let member = lc.random_member(rng);
            let (squarefree, _) = squarefree_and_primitive(&member);
            if !squarefree {
                return false;
            }
            match singular_cluster_with_depth(&member, opts.max_depth) {
                Ok(kd) => kd == expected && arithmetic_genus(d) - delta_of(&kd) == 0,
                Err(_) => false,
            }
        })
    })
}

/// Builds the pencil of members of `L_C` through `nu` rational points of the
/// curve, then checks `K^C` is inside its base cluster and
/// `nu = (C~ on the base cluster)^2 + #(new base points)`.
fn sub_pencil_check(a: &CurveAnalysis, lc: &LinearSystem, rng: &mut ChaCha8Rng) -> CheckStatus {
    let nu = a.nu_tilde as usize;
    let proper_singular: Vec<ProjectivePoint> =
        a.singular_cluster.points().iter().filter(|p| p.is_proper()).map(|p| p.origin().clone()).collect();
    let mut candidates = rational_points(&a.form, nu + 6, &proper_singular);
    if candidates.len() < nu {
        return CheckStatus::Skipped;
    }
    candidates.shuffle(rng);
    candidates.truncate(nu);
    let Ok(pencil) = lc.through_points(&candidates) else {
        return CheckStatus::Fail;
    };
    if pencil.proj_dim() != 1 || !pencil.contains(&a.form) {
        return CheckStatus::Fail;
    }
    let Ok(k_lambda) = base_cluster(&pencil) else {
        return CheckStatus::Fail;
    };
    let kc = a.singular_cluster.cluster();
    let kl = k_lambda.cluster();
    if !kc.is_subset(&kl) {
        return CheckStatus::Fail;
    }
    let Ok(decomp) = total_transform(&a.form, &kl) else {
        return CheckStatus::Fail;
    };
    let extra = kl.difference(&kc).count() as i64;
    CheckStatus::from_bool(a.nu_tilde == decomp.strict_self_intersection() + extra)
}

/// Up to `count` smooth rational points of the curve, found on lines through
/// the given points and through the coordinate vertices.
pub fn rational_points(f: &TernaryForm, count: usize, singular: &[ProjectivePoint]) -> Vec<ProjectivePoint> {
    let mut found: BTreeSet<ProjectivePoint> = BTreeSet::new();
    if count == 0 {
        return Vec::new();
    }
    let mut centers: Vec<ProjectivePoint> = singular.to_vec();
    for v in [[0, 0, 1], [0, 1, 0], [1, 0, 0]] {
        centers.push(v.map(rat));
    }
    let singular_set: BTreeSet<ProjectivePoint> = singular.iter().map(normalize_point).collect();
    let grad = f.gradient();
    for radius in 1..=4i64 {
        for p in &centers {
            for a in -radius..=radius {
                for b in -radius..=radius {
                    for c in -radius..=radius {
                        let q = [rat(a), rat(b), rat(c)];
                        if [a, b, c].iter().all(|v| *v == 0) {
                            continue;
                        }
                        let section = restrict_to_line(f, p, &q);
                        if section.is_zero() {
                            continue;
                        }
                        let mut pts: Vec<ProjectivePoint> = rational_roots(&section)
                            .into_iter()
                            .map(|s| [&p[0] + &s * &q[0], &p[1] + &s * &q[1], &p[2] + &s * &q[2]])
                            .filter(|pt| pt.iter().any(|v| *v != Rat::from_integer(0.into())))
                            .collect();
                        if section.degree() < Some(f.degree() as usize) {
                            pts.push(q.clone());
                        }
                        for pt in pts {
                            let pt = normalize_point(&pt);
                            let smooth = grad.iter().any(|g| g.eval(&pt) != Rat::from_integer(0.into()));
                            if smooth && !singular_set.contains(&pt) && f.eval(&pt) == Rat::from_integer(0.into()) {
                                found.insert(pt);
                                if found.len() >= count {
                                    return found.into_iter().collect();
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    found.into_iter().collect()
}

/// Singular cluster points that are proper.
pub fn proper_points(kw: &WeightedCluster) -> Vec<InfNearPoint> {
    kw.points().into_iter().filter(|p| p.is_proper()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_form;

    fn form(s: &str) -> TernaryForm {
        parse_form(s).unwrap()
    }

    #[test]
    fn invariants_of_examples() {
        assert_eq!(nu_tilde(&form("x + 2y - z")), Ok(1));
        assert_eq!(nu_tilde(&form("y^2*z - x^3 - x^2*z")), Ok(5));
        assert_eq!(nu_tilde(&form("y^2*z^3 - x^5")), Ok(4));
        assert_eq!(geometric_genus(&form("y^2*z - x^3 + x*z^2")), Ok(1));
        assert_eq!(geometric_genus(&form("y^2*z^3 - x^5")), Ok(0));
        assert_eq!(omega_nonempty(&form("y^2*z - x^3 + x*z^2")), Ok(false));
        assert_eq!(omega_nonempty(&form("y^2*z - x^3 - x^2*z")), Ok(true));
    }

    #[test]
    fn lc_dimensions() {
        assert_eq!(compute_LC(&form("x^2 + y*z")).unwrap().proj_dim(), 5);
        assert_eq!(compute_LC(&form("y^2*z - x^3 - x^2*z")).unwrap().proj_dim(), 6);
        assert_eq!(compute_LC(&form("y^2*z - x^3 + x*z^2")), Err(Error::NotRational));
    }

    #[test]
    fn rational_pencils() {
        let nodal = form("y^2*z - x^3 - x^2*z");
        let lines = form("x^3 - x*y^2");
        let pencil = LinearSystem::new(3, &[nodal.clone(), lines]).unwrap();
        assert_eq!(membership_is_rational_system(&nodal, &pencil), Ok(true));
        let smooth = form("x^3 + y^3 + z^3");
        let pencil = LinearSystem::new(3, &[nodal.clone(), smooth]).unwrap();
        assert_eq!(membership_is_rational_system(&nodal, &pencil), Ok(false));
        assert_eq!(membership_is_rational_system(&nodal, &compute_LC(&nodal).unwrap()), Ok(true));
        let other = LinearSystem::new(3, &[form("x^3 + z^3"), form("y^3")]).unwrap();
        assert_eq!(membership_is_rational_system(&nodal, &other), Err(Error::NotMember));
    }

    #[test]
    fn finds_rational_points() {
        let f = form("y^2*z^3 - x^5");
        let pts = rational_points(&f, 4, &[]);
        assert_eq!(pts.len(), 4);
        for p in &pts {
            assert_eq!(f.eval(p), rat(0));
        }
    }

    #[test]
    fn theorem_on_rational_examples() {
        for s in ["x + 2y - z", "x^2 + y*z", "y^2*z - x^3", "y^2*z^3 - x^5"] {
            let r = verify_theorem(&form(s), &Options::default(), 7).unwrap();
            assert!(r.all_passed(), "{s}: {:?}", r.checks);
            assert!(r.checks.iter().all(|(_, s)| *s == CheckStatus::Pass), "{s}: {:?}", r.checks);
        }
        let r = verify_theorem(&form("x^3 + y^3 + z^3"), &Options::default(), 7).unwrap();
        assert!(r.checks.iter().all(|(_, s)| *s == CheckStatus::Skipped));
    }

    #[test]
    fn theorem_on_nodal_cubic() {
        let r = verify_theorem(&form("y^2*z - x^3 - x^2*z"), &Options::default(), 0).unwrap();
        assert!(r.checks.iter().all(|(_, s)| *s == CheckStatus::Pass), "{:?}", r.checks);
        assert_eq!((r.analysis.nu_tilde, r.analysis.dim_lc(), r.analysis.singular_cluster.len()), (5, Some(6), 1));
    }
}
