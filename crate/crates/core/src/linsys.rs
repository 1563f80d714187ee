//! Linear systems of plane curves: passage conditions through weighted
//! clusters, multiplicities of systems and base-point clusters.

use std::collections::{BTreeMap, VecDeque};

use num_traits::Zero;
use rand::Rng;
use serde_json::{json, Value};

use crate::blowup::{goes_through_effectively, multiplicity, step_local, virtual_transform, virtual_transform_local};
use crate::cluster::{Cluster, InfNearPoint, Step, WeightedCluster};
use crate::error::{Error, Result};
use crate::exactpoly::roots::{irrational_root_count, rational_roots};
use crate::exactpoly::{
    common_zeros, form_gcd, AffinePoly, ProjectivePoint, Rat, RatMatrix, SolveError, TernaryForm, UPoly,
};

/// Bound on the number of points explored by [`base_cluster`].
const MAX_BASE_POINTS: usize = 512;

/// A linear system given by a basis of forms of one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    degree: u32,
    basis: Vec<TernaryForm>,
}

impl LinearSystem {
    /// Spans the given forms; dependent forms are dropped. Errors on an empty
    /// span or mixed degrees.
    pub fn new(degree: u32, forms: &[TernaryForm]) -> Result<Self> {
        if forms.iter().any(|f| !f.is_zero() && f.degree() != degree) {
            return Err(Error::DegreeMismatch);
        }
        let mut basis: Vec<TernaryForm> = Vec::new();
        for f in forms.iter().filter(|f| !f.is_zero()) {
            let mut trial = basis.clone();
            trial.push(f.clone());
            if coefficient_matrix(degree, &trial).rank() == trial.len() {
                basis.push(f.primitive());
            }
        }
        if basis.is_empty() {
            return Err(Error::EmptySystem);
        }
        Ok(LinearSystem { degree, basis })
    }

    /// Every form of the degree.
    pub fn complete(degree: u32) -> Self {
        let basis = TernaryForm::monomial_basis(degree)
            .into_iter()
            .map(|e| TernaryForm::monomial(Rat::from_integer(1.into()), e))
            .collect();
        LinearSystem { degree, basis }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn basis(&self) -> &[TernaryForm] {
        &self.basis
    }

    /// Projective dimension.
    pub fn proj_dim(&self) -> i64 {
        self.basis.len() as i64 - 1
    }

    /// Greatest common divisor of the basis.
    pub fn fixed_part(&self) -> TernaryForm {
        form_gcd(&self.basis)
    }

    pub fn has_fixed_component(&self) -> bool {
        self.fixed_part().degree() > 0
    }

    fn require_no_fixed_component(&self) -> Result<()> {
        if self.has_fixed_component() {
            return Err(Error::FixedComponentPresent);
        }
        Ok(())
    }

    /// Coefficients of `f` on the basis, if `f` is in the span.
    pub fn coordinates(&self, f: &TernaryForm) -> Option<Vec<Rat>> {
        if f.degree() != self.degree && !f.is_zero() {
            return None;
        }
        // columns: basis members and -f
        let n = self.basis.len();
        let mut cols: Vec<Vec<Rat>> = self.basis.iter().map(|b| b.coefficient_vector()).collect();
        let fv = if f.is_zero() { vec![Rat::zero(); cols[0].len()] } else { f.coefficient_vector() };
        cols.push(fv.into_iter().map(|c| -c).collect());
        let rows = cols[0].len();
        let m = RatMatrix::from_rows(n + 1, (0..rows).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect());
        let kernel = m.kernel_basis();
        let v = kernel.into_iter().find(|v| !v[n].is_zero())?;
        let scale = v[n].recip();
        Some(v[..n].iter().map(|c| c * &scale).collect())
    }

    pub fn contains(&self, f: &TernaryForm) -> bool {
        self.coordinates(f).is_some()
    }

    /// `sum c_i B_i`
    pub fn combination(&self, coeffs: &[Rat]) -> TernaryForm {
        self.basis.iter().zip(coeffs).fold(TernaryForm::zero(self.degree), |acc, (b, c)| &acc + &b.scale(c))
    }

    /// A member with small pseudorandom integer coefficients.
    pub fn random_member(&self, rng: &mut impl Rng) -> TernaryForm {
        loop {
            let coeffs: Vec<Rat> =
                self.basis.iter().map(|_| Rat::from_integer(rng.gen_range(-7i64..=7).into())).collect();
            let f = self.combination(&coeffs);
            if !f.is_zero() {
                return f;
            }
        }
    }

    /// Members through the given proper points.
    pub fn through_points(&self, points: &[ProjectivePoint]) -> Result<LinearSystem> {
        let rows: Vec<Vec<Rat>> = points.iter().map(|p| self.basis.iter().map(|b| b.eval(p)).collect()).collect();
        self.subsystem(rows)
    }

    /// Members whose basis coordinates satisfy the given linear conditions.
    fn subsystem(&self, rows: Vec<Vec<Rat>>) -> Result<LinearSystem> {
        if rows.is_empty() {
            return Ok(self.clone());
        }
        let kernel = RatMatrix::from_rows(self.basis.len(), rows).kernel_basis();
        if kernel.is_empty() {
            return Err(Error::EmptySystem);
        }
        let forms: Vec<TernaryForm> = kernel.iter().map(|v| self.combination(v).primitive()).collect();
        Ok(LinearSystem { degree: self.degree, basis: forms })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree,
            "basis": self.basis.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            "projDim": self.proj_dim(),
        })
    }
}

fn coefficient_matrix(degree: u32, forms: &[TernaryForm]) -> RatMatrix {
    let cols = TernaryForm::monomial_basis(degree).len();
    RatMatrix::from_rows(cols, forms.iter().map(|f| f.coefficient_vector()).collect())
}

/// Degree-`d` forms going virtually through `kw`. Points are processed in
/// canonical order; at each point the virtual transforms of the current
/// basis are expanded and their jets of order below the weight are made to
/// vanish.
pub fn system_through(degree: u32, kw: &WeightedCluster) -> Result<LinearSystem> {
    let mut sys = LinearSystem::complete(degree);
    for (p, &m) in kw.iter() {
        if m <= 0 {
            continue;
        }
        let locals: Vec<AffinePoly> = sys
            .basis
            .iter()
            .map(|b| virtual_transform_local(b, kw, p).expect("earlier conditions make the divisions exact"))
            .collect();
        let mut rows = Vec::new();
        for total in 0..m as u32 {
            for a in 0..=total {
                rows.push(locals.iter().map(|g| g.coeff(a, total - a)).collect());
            }
        }
        sys = sys.subsystem(rows)?;
    }
    Ok(sys)
}

/// Local equations of the basis of the strict transform of the system at
/// `p`, dividing at each predecessor by the multiplicity of the system there.
fn transformed_basis_at(l: &LinearSystem, p: &InfNearPoint) -> Vec<AffinePoly> {
    let mut gs: Vec<AffinePoly> = l.basis.iter().map(|b| p.local_equation_at_origin(b)).collect();
    for step in p.path() {
        let e = system_order(&gs);
        gs = gs.iter().map(|g| step_local(g, step, e).expect("system order divides")).collect();
    }
    gs
}

fn system_order(gs: &[AffinePoly]) -> i64 {
    gs.iter().filter_map(|g| g.order()).min().unwrap_or(0) as i64
}

/// `e_P(L)`: the least multiplicity at `p` of the strict transform of the
/// system on the surface where all predecessors of `p` are blown up.
pub fn multiplicity_of_system(l: &LinearSystem, p: &InfNearPoint) -> Result<i64> {
    l.require_no_fixed_component()?;
    Ok(system_order(&transformed_basis_at(l, p)))
}

/// `K_L` with weights `e(L)`, explored breadth first from the proper base
/// points.
pub fn base_cluster(l: &LinearSystem) -> Result<WeightedCluster> {
    l.require_no_fixed_component()?;
    let proper = common_zeros(&l.basis).map_err(|e| match e {
        SolveError::NonRational => Error::NonRationalBasePoint,
        SolveError::PositiveDimensional => Error::FixedComponentPresent,
    })?;
    let mut queue: VecDeque<(InfNearPoint, Vec<AffinePoly>)> = proper
        .iter()
        .map(|q| {
            let p = InfNearPoint::proper(q);
            let gs = l.basis.iter().map(|b| p.local_equation_at_origin(b)).collect();
            (p, gs)
        })
        .collect();
    let mut weights = BTreeMap::new();
    while let Some((p, gs)) = queue.pop_front() {
        let e = system_order(&gs);
        if e == 0 {
            continue;
        }
        if weights.len() >= MAX_BASE_POINTS {
            return Err(Error::DepthExceeded(MAX_BASE_POINTS));
        }
        let first: Vec<AffinePoly> =
            gs.iter().map(|g| step_local(g, &Step::First(Rat::zero()), e).expect("order divides")).collect();
        let on_line = first.iter().fold(UPoly::zero(), |acc, h| acc.gcd(&h.restrict_u(&Rat::zero())));
        if irrational_root_count(&on_line) > 0 {
            return Err(Error::NonRationalBasePoint);
        }
        for t in rational_roots(&on_line) {
            let step = Step::First(t);
            let hs = gs.iter().map(|g| step_local(g, &step, e).expect("order divides")).collect();
            queue.push_back((p.child(step), hs));
        }
        let second: Vec<AffinePoly> =
            gs.iter().map(|g| step_local(g, &Step::Second, e).expect("order divides")).collect();
        if second.iter().all(|h| h.coeff(0, 0).is_zero()) {
            queue.push_back((p.second(), second));
        }
        weights.insert(p, e);
    }
    WeightedCluster::from_weights(weights)
}

/// Proper base points: the minimal elements of the base cluster.
pub fn base_locus(l: &LinearSystem) -> Result<Vec<ProjectivePoint>> {
    Ok(base_cluster(l)?.points().into_iter().filter(|p| p.is_proper()).map(|p| p.origin().clone()).collect())
}

fn require_member(l: &LinearSystem, f: &TernaryForm) -> Result<()> {
    if f.is_zero() || !l.contains(f) {
        return Err(Error::NotMember);
    }
    Ok(())
}

/// The weighted cluster `(K, e(L))`.
pub fn system_weights(l: &LinearSystem, k: &Cluster) -> Result<WeightedCluster> {
    let pairs: Result<Vec<(InfNearPoint, i64)>> =
        k.iter().map(|p| Ok((p.clone(), multiplicity_of_system(l, p)?))).collect();
    WeightedCluster::from_pairs(pairs?)
}

/// `e_P(F) = e_P(L)` for every `P` in `K`.
pub fn member_strict_in_transformed(l: &LinearSystem, f: &TernaryForm, k: &Cluster) -> Result<bool> {
    require_member(l, f)?;
    for p in k {
        if multiplicity(f, p)? as i64 != multiplicity_of_system(l, p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The strict transform of `F` is the transform of `F` as a member of the
/// system: the virtual transform over `(K, e(L))` has no exceptional part.
pub fn member_condition_strict_is_member(l: &LinearSystem, f: &TernaryForm, k: &Cluster) -> Result<bool> {
    require_member(l, f)?;
    let kw = system_weights(l, k)?;
    Ok(virtual_transform(f, &kw)?.exc.iter().all(|c| *c == 0))
}

/// `e_P(F) <= e_P(L)` for every `P` in `K`.
pub fn member_condition_bounded(l: &LinearSystem, f: &TernaryForm, k: &Cluster) -> Result<bool> {
    require_member(l, f)?;
    for p in k {
        if multiplicity(f, p)? as i64 > multiplicity_of_system(l, p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `F` goes through `(K, e(L))` effectively.
pub fn member_condition_effective(l: &LinearSystem, f: &TernaryForm, k: &Cluster) -> Result<bool> {
    require_member(l, f)?;
    goes_through_effectively(f, &system_weights(l, k)?)
}
