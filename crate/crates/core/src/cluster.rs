//! Infinitely near points, clusters, weighted clusters and proximity.
//!
//! A point of `S*` is a proper point of the plane together with a path of
//! blow-up steps. At a point placed at the origin of local coordinates
//! `(u, v)`, the step `First(t)` picks the point `(0, t)` of the chart
//! `(u, v) <- (u, u v)` and the step `Second` picks the origin of the chart
//! `(u, v) <- (u v, v)`, which is the only point of the exceptional line
//! missing from the first chart.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactpoly::rat::rat_to_string;
use crate::exactpoly::{normalize_point, AffinePoly, BlowupChart, ProjectivePoint, Rat, TernaryForm};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    First(Rat),
    Second,
}

impl Step {
    pub fn chart(&self) -> BlowupChart {
        match self {
            Step::First(_) => BlowupChart::First,
            Step::Second => BlowupChart::Second,
        }
    }

    /// Coordinates of the point in its chart.
    pub fn coords(&self) -> (Rat, Rat) {
        match self {
            Step::First(t) => (Rat::zero(), t.clone()),
            Step::Second => (Rat::zero(), Rat::zero()),
        }
    }
}

/// A proper or infinitely near point. The derived order compares the origin
/// first and then the path lexicographically, so every point sorts after its
/// predecessors.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InfNearPoint {
    origin: ProjectivePoint,
    path: Vec<Step>,
}

impl InfNearPoint {
    pub fn proper(p: &ProjectivePoint) -> Self {
        InfNearPoint { origin: normalize_point(p), path: Vec::new() }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        InfNearPoint::proper(&[Rat::from_integer(x.into()), Rat::from_integer(y.into()), Rat::from_integer(z.into())])
    }

    pub fn child(&self, step: Step) -> Self {
        let mut path = self.path.clone();
        path.push(step);
        InfNearPoint { origin: self.origin.clone(), path }
    }

    /// Child in the first chart at coordinate `t` on the exceptional line.
    pub fn first(&self, t: Rat) -> Self {
        self.child(Step::First(t))
    }

    pub fn second(&self) -> Self {
        self.child(Step::Second)
    }

    pub fn origin(&self) -> &ProjectivePoint {
        &self.origin
    }

    pub fn path(&self) -> &[Step] {
        &self.path
    }

    pub fn level(&self) -> usize {
        self.path.len()
    }

    pub fn is_proper(&self) -> bool {
        self.path.is_empty()
    }

    pub fn parent(&self) -> Option<InfNearPoint> {
        if self.path.is_empty() {
            return None;
        }
        Some(InfNearPoint { origin: self.origin.clone(), path: self.path[..self.path.len() - 1].to_vec() })
    }

    /// The predecessor at `level` (which must not exceed the own level).
    pub fn ancestor(&self, level: usize) -> InfNearPoint {
        InfNearPoint { origin: self.origin.clone(), path: self.path[..level].to_vec() }
    }

    /// `self <= other` in the natural order.
    pub fn precedes(&self, other: &InfNearPoint) -> bool {
        self.origin == other.origin && other.path.starts_with(&self.path)
    }

    /// Levels of the points this point is proximate to: always the parent,
    /// plus at most one earlier point whose exceptional curve still passes
    /// through it.
    pub fn proximate_levels(&self) -> Vec<usize> {
        // owners of the local axes {u = 0} and {v = 0}
        let (mut u_owner, mut v_owner): (Option<usize>, Option<usize>) = (None, None);
        for (level, step) in self.path.iter().enumerate() {
            match step {
                Step::First(t) => {
                    u_owner = Some(level);
                    if !t.is_zero() {
                        v_owner = None;
                    }
                }
                Step::Second => v_owner = Some(level),
            }
        }
        let mut out: Vec<usize> = [u_owner, v_owner].into_iter().flatten().collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn proximate_to(&self) -> Vec<InfNearPoint> {
        self.proximate_levels().into_iter().map(|l| self.ancestor(l)).collect()
    }

    pub fn is_proximate_to(&self, other: &InfNearPoint) -> bool {
        other.origin == self.origin
            && other.level() < self.level()
            && self.path.starts_with(&other.path)
            && self.proximate_levels().contains(&other.level())
    }

    /// Satellite points are proximate to two points.
    pub fn is_satellite(&self) -> bool {
        self.proximate_levels().len() == 2
    }

    /// Which affine chart of the plane holds the origin, and the local
    /// coordinates of the origin there. Charts are chosen by the last
    /// nonzero coordinate: `z`, then `y`, then `x`.
    pub fn base_chart(&self) -> (usize, Rat, Rat) {
        let [x, y, z] = &self.origin;
        if !z.is_zero() {
            (2, x.clone(), y.clone())
        } else if !y.is_zero() {
            (1, x.clone(), Rat::zero())
        } else {
            (0, y.clone(), Rat::zero())
        }
    }

    /// Local equation of `f` at the origin of this point's proper point.
    pub fn local_equation_at_origin(&self, f: &TernaryForm) -> AffinePoly {
        let (var, a, b) = self.base_chart();
        f.dehomogenize(var).translate(&a, &b)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "origin": self.origin.iter().map(rat_to_string).collect::<Vec<_>>(),
            "path": self.path.iter().map(|s| {
                let (a, b) = s.coords();
                json!({
                    "chart": match s { Step::First(_) => "I", Step::Second => "II" },
                    "coords": [rat_to_string(&a), rat_to_string(&b)],
                })
            }).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for InfNearPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let o: Vec<String> = self.origin.iter().map(rat_to_string).collect();
        write!(f, "[{}]", o.join(":"))?;
        for s in &self.path {
            match s {
                Step::First(t) => write!(f, ">I({})", rat_to_string(t))?,
                Step::Second => write!(f, ">II")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for InfNearPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub type Cluster = BTreeSet<InfNearPoint>;

/// True iff every point's predecessors lie in the set.
pub fn is_cluster<'a>(points: impl IntoIterator<Item = &'a InfNearPoint> + Clone) -> bool {
    let set: BTreeSet<&InfNearPoint> = points.clone().into_iter().collect();
    set.iter().all(|p| match p.parent() {
        None => true,
        Some(q) => set.contains(&q),
    })
}

pub fn subcluster_check(sub: &Cluster, k: &Cluster) -> bool {
    sub.is_subset(k) && is_cluster(sub)
}

/// A cluster with an integer weight on each point.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct WeightedCluster {
    weights: BTreeMap<InfNearPoint, i64>,
}

impl WeightedCluster {
    pub fn new() -> Self {
        WeightedCluster::default()
    }

    /// Fails with `NotClosed` unless the points form a cluster.
    pub fn from_weights(weights: BTreeMap<InfNearPoint, i64>) -> Result<Self> {
        if !is_cluster(weights.keys()) {
            return Err(Error::NotClosed);
        }
        Ok(WeightedCluster { weights })
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (InfNearPoint, i64)>) -> Result<Self> {
        WeightedCluster::from_weights(pairs.into_iter().collect())
    }

    pub fn insert(&mut self, p: InfNearPoint, m: i64) {
        self.weights.insert(p, m);
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, p: &InfNearPoint) -> i64 {
        self.weights.get(p).copied().unwrap_or(0)
    }

    pub fn contains(&self, p: &InfNearPoint) -> bool {
        self.weights.contains_key(p)
    }

    /// Points in canonical order.
    pub fn points(&self) -> Vec<InfNearPoint> {
        self.weights.keys().cloned().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&InfNearPoint, &i64)> {
        self.weights.iter()
    }

    pub fn cluster(&self) -> Cluster {
        self.weights.keys().cloned().collect()
    }

    pub fn weights(&self) -> Vec<i64> {
        self.weights.values().copied().collect()
    }

    /// Same cluster with every weight replaced.
    pub fn reweighted(&self, f: impl Fn(&InfNearPoint) -> i64) -> WeightedCluster {
        WeightedCluster { weights: self.weights.keys().map(|p| (p.clone(), f(p))).collect() }
    }

    /// Restriction to a subcluster, keeping weights.
    pub fn restrict(&self, sub: &Cluster) -> Result<WeightedCluster> {
        WeightedCluster::from_pairs(sub.iter().filter(|p| self.contains(p)).map(|p| (p.clone(), self.weight(p))))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.weights
                .iter()
                .map(|(p, m)| {
                    let mut v = p.to_json();
                    v["weight"] = json!(m);
                    v
                })
                .collect(),
        )
    }
}

impl fmt::Debug for WeightedCluster {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.weights.iter()).finish()
    }
}

/// Points with weight greater than one; errors if they do not form a cluster.
pub fn restrict_gt1(kw: &WeightedCluster) -> Result<WeightedCluster> {
    WeightedCluster::from_pairs(kw.iter().filter(|(_, &m)| m > 1).map(|(p, &m)| (p.clone(), m)))
}

/// Proximity matrix of a cluster under the canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProximityMatrix {
    pub points: Vec<InfNearPoint>,
    pub entries: Vec<Vec<i64>>,
}

impl ProximityMatrix {
    pub fn new(k: &Cluster) -> Self {
        let points: Vec<InfNearPoint> = k.iter().cloned().collect();
        let index: BTreeMap<&InfNearPoint, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let n = points.len();
        let mut entries = vec![vec![0i64; n]; n];
        for (i, q) in points.iter().enumerate() {
            entries[i][i] = 1;
            for p in q.proximate_to() {
                let j = *index.get(&p).expect("cluster is closed under predecessors");
                entries[i][j] = -1;
            }
        }
        ProximityMatrix { points, entries }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Inverse by forward substitution; the matrix is unipotent lower
    /// triangular, so the inverse is integral.
    pub fn inverse(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        let mut inv = vec![vec![0i64; n]; n];
        for col in 0..n {
            for i in 0..n {
                let mut acc = if i == col { 1 } else { 0 };
                for j in 0..i {
                    acc -= self.entries[i][j] * inv[j][col];
                }
                inv[i][col] = acc;
            }
        }
        inv
    }

    /// `P v`
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.entries.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// `P^T v`
    pub fn apply_transpose(&self, v: &[i64]) -> Vec<i64> {
        let n = self.len();
        (0..n).map(|j| (0..n).map(|i| self.entries[i][j] * v[i]).sum()).collect()
    }

    /// Solves `P x = v`.
    pub fn solve(&self, v: &[i64]) -> Vec<i64> {
        let mut x = vec![0i64; self.len()];
        for i in 0..self.len() {
            let mut acc = v[i];
            for j in 0..i {
                acc -= self.entries[i][j] * x[j];
            }
            x[i] = acc;
        }
        x
    }
}

pub fn proximity_matrix(k: &Cluster) -> ProximityMatrix {
    ProximityMatrix::new(k)
}

/// DOT rendering: one node per point labeled by its weight, solid edges from
/// each point to its immediate successors, dashed edges for proximity to a
/// non-immediate predecessor.
pub fn enriques_dot(kw: &WeightedCluster) -> String {
    let points = kw.points();
    let index: BTreeMap<&InfNearPoint, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut out = String::from("digraph enriques {\n  node [shape=circle];\n");
    for (i, p) in points.iter().enumerate() {
        out.push_str(&format!("  n{i} [label=\"{}\", tooltip=\"{}\"];\n", kw.weight(p), p));
    }
    for (i, q) in points.iter().enumerate() {
        if let Some(parent) = q.parent() {
            out.push_str(&format!("  n{} -> n{i};\n", index[&parent]));
        }
        for p in q.proximate_to() {
            if p.level() + 1 < q.level() {
                out.push_str(&format!("  n{} -> n{i} [style=dashed];\n", index[&p]));
            }
        }
    }
    out.push_str("}\n");
    out
}

/// The local coordinates `(u, v)` of each point relative to its parent's
/// blow-up, as used by the chart conventions; proper points report the
/// coordinates of their base chart.
pub fn chart_coordinates(p: &InfNearPoint) -> (Rat, Rat) {
    match p.path().last() {
        Some(step) => step.coords(),
        None => {
            let (_, a, b) = p.base_chart();
            (a, b)
        }
    }
}

/// Whether `q` lies on the strict transform of the exceptional curve of
/// `p`, decided by following the curve through the charts. Independent of
/// [`InfNearPoint::proximate_levels`]; used to cross-check it.
pub fn lies_on_exceptional_transform(q: &InfNearPoint, p: &InfNearPoint) -> bool {
    if !(p.precedes(q) && p.level() < q.level()) {
        return false;
    }
    // Track the curve as an implicit equation in local coordinates.
    let steps = &q.path()[p.level()..];
    let mut curve = match steps[0] {
        Step::First(_) => AffinePoly::term(Rat::one(), 1, 0),
        Step::Second => AffinePoly::term(Rat::one(), 0, 1),
    };
    let shift = |c: &AffinePoly, s: &Step| match s {
        Step::First(t) => c.translate(&Rat::zero(), t),
        Step::Second => c.clone(),
    };
    curve = shift(&curve, &steps[0]);
    for s in &steps[1..] {
        if curve.eval(&Rat::zero(), &Rat::zero()) != Rat::zero() {
            return false;
        }
        let m = curve.order().unwrap_or(0) as i64;
        let g = curve.pullback(s.chart()).divide_exceptional(s.chart(), m).expect("order divides");
        curve = shift(&g, s);
    }
    curve.eval(&Rat::zero(), &Rat::zero()).is_zero()
}
