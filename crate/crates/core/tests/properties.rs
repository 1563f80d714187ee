#![allow(clippy::needless_range_loop)]

mod common;

use common::*;
use curvesys::blowup::{bar_e_expansion, multiplicity, total_transform};
use curvesys::cluster::{proximity_matrix, Cluster};
use curvesys::exactpoly::{parse_form, ratio, squarefree_and_primitive, Rat, RatMatrix, TernaryForm};
use curvesys::linsys::system_through;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-60i64..60, 1i64..25).prop_map(|(n, d)| ratio(n, d))
}

fn arb_form(max_degree: u32) -> impl Strategy<Value = TernaryForm> {
    (1..=max_degree).prop_flat_map(|d| {
        let n = monomials(d).len();
        prop::collection::vec(-4i64..=4, n).prop_map(move |cs| {
            TernaryForm::from_terms(d, monomials(d).into_iter().zip(cs).map(|(e, c)| (e, ratio(c, 1)))).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_arithmetic_is_exact(a in arb_rat(), b in arb_rat()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a * &b) / &b, a.clone());
            prop_assert_eq!(&b * &b.recip(), Rat::from_integer(1.into()));
        }
    }

    #[test]
    fn forms_round_trip_through_text(f in arb_form(4)) {
        prop_assume!(!f.is_zero());
        prop_assert_eq!(parse_form(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn squares_are_not_squarefree(f in arb_form(2)) {
        prop_assume!(!f.is_zero() && f.degree() > 0);
        let (sq, _) = squarefree_and_primitive(&(&f * &f));
        prop_assert!(!sq);
    }

    #[test]
    fn rank_plus_nullity(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 1..5)) {
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let m = RatMatrix::from_ints(&refs);
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn proximity_inverse_is_nonnegative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = random_weighted_cluster(&mut rng, 5).cluster();
        let pm = proximity_matrix(&k);
        let inv = pm.inverse();
        let n = pm.len();
        for (i, row) in pm.entries.iter().enumerate() {
            for j in 0..n {
                prop_assert!(inv[i][j] >= 0);
                let prod: i64 = (0..n).map(|l| row[l] * inv[l][j]).sum();
                prop_assert_eq!(prod, i64::from(i == j));
            }
        }
    }

    #[test]
    fn tilde_from_bar_expansion(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = random_weighted_cluster(&mut rng, 5).cluster();
        let points: Vec<_> = k.iter().cloned().collect();
        for (i, p) in points.iter().enumerate() {
            let mut v = bar_e_expansion(&k, p);
            for q in points.iter().filter(|q| q.is_proximate_to(p)) {
                for (a, b) in v.iter_mut().zip(bar_e_expansion(&k, q)) {
                    *a -= b;
                }
            }
            let unit: Vec<i64> = (0..points.len()).map(|j| i64::from(i == j)).collect();
            prop_assert_eq!(v, unit);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn strict_self_intersection_identity(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let kw = random_weighted_cluster(&mut rng, 4);
        let d = 2 + (seed % 4) as u32;
        let Ok(l) = system_through(d, &kw) else { return Ok(()) };
        let f = random_combination(&mut rng, l.basis());
        prop_assume!(!f.is_zero());
        let k: Cluster = kw.cluster();
        let t = total_transform(&f, &k).unwrap();
        let e: Vec<i64> = k.iter().map(|p| multiplicity(&f, p).unwrap() as i64).collect();
        let d = f.degree() as i64;
        prop_assert_eq!(t.strict_self_intersection(), d * d - e.iter().map(|x| x * x).sum::<i64>());
    }

    #[test]
    fn systems_have_at_least_expected_dimension(seed in any::<u64>(), d in 1u32..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let kw = random_weighted_cluster(&mut rng, 4);
        let conditions: i64 = kw.iter().map(|(_, &m)| m * (m + 1) / 2).sum();
        let expected = monomials(d).len() as i64 - conditions - 1;
        let got = system_through(d, &kw).map_or(-1, |l| l.proj_dim());
        prop_assert!(got >= expected.max(-1));
    }

    #[test]
    fn going_through_assertions(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let o = section1_instance(&mut rng);
        for r in [o.subcluster, o.forced_equality, o.member_equivalence, o.general_member] {
            prop_assert_ne!(r, Some(false), "{:?}", o);
        }
    }
}
