#![allow(clippy::needless_range_loop)]

//! Oracles shared by the integration and acceptance tests. Nothing here calls
//! into the blow-up, resolution or linear-system code of the library; only
//! the data types and the parser are reused.

#![allow(dead_code)]

use std::collections::BTreeMap;

use curvesys::cluster::{InfNearPoint, Step, WeightedCluster};
use curvesys::exactpoly::{parse_form, rat, Rat, TernaryForm};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn form(s: &str) -> TernaryForm {
    parse_form(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

/// The curves named by the acceptance criteria, with their expected
/// `(nu~, projective dim of L_C)` when the curve is rational.
pub const RATIONAL_CORPUS: [(&str, &str, i64, i64); 5] = [
    ("line", "x + 2y - z", 1, 2),
    ("smooth conic", "x^2 + y*z", 4, 5),
    ("nodal cubic", "y^2*z - x^3 - x^2*z", 5, 6),
    ("cuspidal cubic", "y^2*z - x^3", 5, 6),
    ("quintic", "y^2*z^3 - x^5", 4, 5),
];

pub const SMOOTH_CUBIC: &str = "y^2*z - x^3 + x*z^2";

/// Sparse polynomial in two variables, kept deliberately separate from the
/// library's own polynomial type.
pub type P2 = BTreeMap<(u32, u32), Rat>;

fn p2_add_term(p: &mut P2, e: (u32, u32), c: Rat) {
    if c.is_zero() {
        return;
    }
    let entry = p.entry(e).or_insert_with(Rat::zero);
    *entry += c;
    if entry.is_zero() {
        p.remove(&e);
    }
}

pub fn p2_mul(a: &P2, b: &P2) -> P2 {
    let mut out = P2::new();
    for (&(i, j), c) in a {
        for (&(k, l), d) in b {
            p2_add_term(&mut out, (i + k, j + l), c * d);
        }
    }
    out
}

fn p2_pow(a: &P2, n: u32) -> P2 {
    let mut out = P2::from([((0, 0), Rat::one())]);
    for _ in 0..n {
        out = p2_mul(&out, a);
    }
    out
}

fn p2_lin(cu: i64, cv: i64, c0: &Rat) -> P2 {
    let mut p = P2::new();
    p2_add_term(&mut p, (1, 0), rat(cu));
    p2_add_term(&mut p, (0, 1), rat(cv));
    p2_add_term(&mut p, (0, 0), c0.clone());
    p
}

/// Substitutes `u -> su`, `v -> sv` into `p`.
fn p2_compose(p: &P2, su: &P2, sv: &P2) -> P2 {
    let mut out = P2::new();
    for (&(i, j), c) in p {
        let term = p2_mul(&p2_pow(su, i), &p2_pow(sv, j));
        for (e, d) in term {
            p2_add_term(&mut out, e, &d * c);
        }
    }
    out
}

/// The two affine coordinates of the base chart, written as polynomials in
/// the local coordinates at `p`, after composing every blow-up of the path.
fn chart_map(p: &InfNearPoint) -> (usize, P2, P2) {
    let [x, y, z] = p.origin().clone();
    let (var, a, b) = if !z.is_zero() {
        (2, x / &z, y / &z)
    } else if !y.is_zero() {
        (1, x / &y, Rat::zero())
    } else {
        (0, y / &x, Rat::zero())
    };
    let mut cu = p2_lin(1, 0, &a);
    let mut cv = p2_lin(0, 1, &b);
    for step in p.path() {
        let (su, sv) = match step {
            // u -> u, v -> u (v + t)
            Step::First(t) => (p2_lin(1, 0, &Rat::zero()), p2_mul(&p2_lin(1, 0, &Rat::zero()), &p2_lin(0, 1, t))),
            // u -> u v, v -> v
            Step::Second => (P2::from([((1, 1), Rat::one())]), p2_lin(0, 1, &Rat::zero())),
        };
        cu = p2_compose(&cu, &su, &sv);
        cv = p2_compose(&cv, &su, &sv);
    }
    (var, cu, cv)
}

/// Total pullback of `f` to the local coordinates at `p`: no exceptional
/// factor is divided out.
pub fn total_pullback(f: &TernaryForm, p: &InfNearPoint) -> P2 {
    let (var, cu, cv) = chart_map(p);
    let mut out = P2::new();
    for (&(a, b, c), k) in f.terms() {
        let exps = [a, b, c];
        let (i, j) = match var {
            2 => (exps[0], exps[1]),
            1 => (exps[0], exps[2]),
            _ => (exps[1], exps[2]),
        };
        let term = p2_mul(&p2_pow(&cu, i), &p2_pow(&cv, j));
        for (e, d) in term {
            p2_add_term(&mut out, e, &d * k);
        }
    }
    out
}

/// Exponents of `u` and `v` carried by the weighted exceptional part
/// `sum m_Q E-_Q` at `p`, tracked along the path: the new exceptional line
/// collects the pulled-back exponents plus the weight of its center.
pub fn virtual_exponents(kw: &WeightedCluster, p: &InfNearPoint) -> (u32, u32) {
    let (mut a, mut b) = (0u32, 0u32);
    for (level, step) in p.path().iter().enumerate() {
        let m = kw.weight(&p.ancestor(level)).max(0) as u32;
        match step {
            Step::First(t) => {
                a = a + b + m;
                if !t.is_zero() {
                    b = 0;
                }
            }
            Step::Second => b = a + b + m,
        }
    }
    (a, b)
}

/// Linear conditions on the coefficient vector of a degree-`d` form for it
/// to go virtually through `kw`: at every point the total pullback must be
/// divisible by the tracked exceptional monomial and the quotient must have
/// order at least the weight.
pub fn condition_rows(d: u32, kw: &WeightedCluster) -> Vec<Vec<Rat>> {
    let monos = monomials(d);
    let pulls: Vec<Vec<(InfNearPoint, P2)>> = monos
        .iter()
        .map(|&e| {
            let f = TernaryForm::monomial(Rat::one(), e);
            kw.points().into_iter().map(|p| (p.clone(), total_pullback(&f, &p))).collect()
        })
        .collect();
    let mut rows = Vec::new();
    for (idx, p) in kw.points().iter().enumerate() {
        let m = kw.weight(p).max(0) as u32;
        let (a, b) = virtual_exponents(kw, p);
        let mut keys: Vec<(u32, u32)> = pulls.iter().flat_map(|v| v[idx].1.keys().copied()).collect();
        keys.sort();
        keys.dedup();
        for (i, j) in keys {
            let below = i < a || j < b;
            if below || (i - a) + (j - b) < m {
                rows.push(pulls.iter().map(|v| v[idx].1.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)).collect());
            }
        }
    }
    rows
}

/// Monomials `x^a y^b z^c` of degree `d`.
pub fn monomials(d: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            out.push((a, b, d - a - b));
        }
    }
    out
}

/// Rank by plain Gaussian elimination with rational pivots.
pub fn naive_rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let pivot = m[rank][c].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let factor = &m[r][c] / &pivot;
                for k in c..cols {
                    let delta = &factor * &m[rank][k];
                    m[r][k] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Projective dimension of the degree-`d` forms through `kw`, or -1 if only
/// the zero form is left.
pub fn oracle_proj_dim(d: u32, kw: &WeightedCluster) -> i64 {
    let n = monomials(d).len();
    n as i64 - naive_rank(&condition_rows(d, kw)) as i64 - 1
}

/// Order of the lowest nonzero homogeneous part, or `None` for zero.
pub fn p2_order(p: &P2) -> Option<u32> {
    p.keys().map(|&(i, j)| i + j).min()
}

/// Multiplicity of `f` at `p` from the total pullback: divide out the
/// exceptional exponents carried by `f`'s own multiplicities along the path.
pub fn oracle_multiplicity(f: &TernaryForm, p: &InfNearPoint) -> u32 {
    let mut own = WeightedCluster::new();
    for level in 0..p.level() {
        let q = p.ancestor(level);
        let e = oracle_multiplicity(f, &q);
        own.insert(q, e as i64);
    }
    let t = total_pullback(f, p);
    let (a, b) = virtual_exponents(&own, p);
    let q: P2 = t.into_iter().map(|((i, j), c)| ((i - a, j - b), c)).collect();
    p2_order(&q).unwrap_or(0)
}

const ORIGINS: [[i64; 3]; 6] = [[0, 0, 1], [1, 0, 1], [0, 1, 0], [1, 2, 1], [1, 0, 0], [-1, 1, 1]];

/// A random weighted cluster: one or two proper points, each with a few
/// infinitely near points, weights nonincreasing along each path.
pub fn random_weighted_cluster(rng: &mut ChaCha8Rng, max_points: usize) -> WeightedCluster {
    let mut kw = WeightedCluster::new();
    let roots = rng.gen_range(1..=2);
    let mut origins = ORIGINS.to_vec();
    for _ in 0..roots {
        let o = origins.remove(rng.gen_range(0..origins.len()));
        let root = InfNearPoint::from_ints(o[0], o[1], o[2]);
        let w = rng.gen_range(1..=3);
        kw.insert(root.clone(), w);
        let mut tree = vec![root];
        let extra = rng.gen_range(0..max_points);
        for _ in 0..extra {
            let parent = tree[rng.gen_range(0..tree.len())].clone();
            let step = if rng.gen_bool(0.25) { Step::Second } else { Step::First(rat(rng.gen_range(-1..=2))) };
            let child = parent.child(step);
            if kw.contains(&child) {
                continue;
            }
            let w = rng.gen_range(1..=kw.weight(&parent).max(1));
            kw.insert(child.clone(), w);
            tree.push(child);
        }
    }
    kw
}

/// A random closed subset of the cluster: drop a random point and
/// everything after it.
pub fn random_subcluster(rng: &mut ChaCha8Rng, kw: &WeightedCluster) -> WeightedCluster {
    let points = kw.points();
    let cut = &points[rng.gen_range(0..points.len())];
    let mut out = WeightedCluster::new();
    for (p, &m) in kw.iter() {
        if !(p == cut || cut.precedes(p)) {
            out.insert(p.clone(), m);
        }
    }
    out
}

/// Random small-integer combination of the given forms.
pub fn random_combination(rng: &mut ChaCha8Rng, forms: &[TernaryForm]) -> TernaryForm {
    let d = forms[0].degree();
    let mut f = TernaryForm::zero(d);
    for g in forms {
        let c: i64 = rng.gen_range(-5..=5);
        f = &f + &g.scale(&rat(c));
    }
    f
}

/// Outcome of one randomized instance of the going-through assertions;
/// `None` where the hypotheses of an assertion were not met.
#[derive(Clone, Debug, Default)]
pub struct Section1Outcome {
    pub subcluster: Option<bool>,
    pub forced_equality: Option<bool>,
    pub member_equivalence: Option<bool>,
    pub general_member: Option<bool>,
}

/// Draws a weighted cluster, a degree and a member of the system through
/// the cluster, then evaluates each assertion whose hypotheses hold.
pub fn section1_instance(rng: &mut ChaCha8Rng) -> Section1Outcome {
    use curvesys::blowup::{goes_through, goes_through_effectively, multiplicity};
    use curvesys::cluster::restrict_gt1;
    use curvesys::exactpoly::squarefree_and_primitive;
    use curvesys::linsys::{
        base_cluster, member_condition_bounded, member_condition_effective, member_condition_strict_is_member,
        member_strict_in_transformed, system_through,
    };
    use curvesys::resolution::singular_cluster;

    let mut out = Section1Outcome::default();
    let kw = random_weighted_cluster(rng, 4);
    let d = rng.gen_range(2..=5);
    let Ok(l) = system_through(d, &kw) else { return out };
    if l.proj_dim() < 1 {
        return out;
    }
    let f = random_combination(rng, l.basis());
    if !f.is_zero() && goes_through(&f, &kw).unwrap() {
        let sub = random_subcluster(rng, &kw);
        out.subcluster = Some(goes_through(&f, &sub).unwrap());
        let e: Vec<i64> = kw.points().iter().map(|p| multiplicity(&f, p).unwrap() as i64).collect();
        if e.iter().zip(kw.weights()).all(|(a, m)| *a <= m) {
            out.forced_equality = Some(e == kw.weights());
        }
    }
    let Ok(base) = base_cluster(&l) else { return out };
    let k = if rng.gen_bool(0.5) { random_subcluster(rng, &base) } else { base.clone() }.cluster();
    let member = if rng.gen_bool(0.5) { f.clone() } else { l.basis()[rng.gen_range(0..l.basis().len())].clone() };
    if !member.is_zero() {
        let answers = [
            member_condition_strict_is_member(&l, &member, &k),
            member_strict_in_transformed(&l, &member, &k),
            member_condition_bounded(&l, &member, &k),
            member_condition_effective(&l, &member, &k),
        ];
        if answers.iter().all(|a| a.is_ok()) {
            let a: Vec<bool> = answers.into_iter().map(|a| a.unwrap()).collect();
            out.member_equivalence = Some(a.iter().all(|x| *x == a[0]));
        }
    }
    let Ok(expected) = restrict_gt1(&base) else {
        out.general_member = Some(false);
        return out;
    };
    let ok = (0..8).any(|_| {
        let dm = random_combination(rng, l.basis());
        if dm.is_zero() || !squarefree_and_primitive(&dm).0 {
            return false;
        }
        matches!(singular_cluster(&dm), Ok(kd) if kd == expected) && goes_through_effectively(&dm, &base).unwrap()
    });
    out.general_member = Some(ok);
    out
}
