use narayana_lab::lbp::{invert_lbp, lbp_sequence};
use narayana_lab::paths::{enumerate_paths, path_stats, path_sum, path_weight, SchroederPath};
use narayana_lab::ring::{rat, tq};
use narayana_lab::{CoefficientSeq, LaurentPoly, Var};
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-5i64..=5, -4i64..=4, -4i64..=4), 0..6).prop_map(LaurentPoly::from_terms)
}

fn nonzero_poly() -> impl Strategy<Value = LaurentPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn var() -> impl Strategy<Value = Var> {
    prop_oneof![Just(Var::T), Just(Var::Q)]
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
        prop_assert!((&a + &(-a.clone())).is_zero());
    }

    #[test]
    fn exact_division_inverts_multiplication(a in poly(), b in nonzero_poly()) {
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn substitutions_are_homomorphisms(a in poly(), b in poly(), v in var(), k in -3i64..=3) {
        prop_assert_eq!(a.subst_inverse(v).subst_inverse(v), a.clone());
        prop_assert_eq!((&a * &b).subst_inverse(v), &a.subst_inverse(v) * &b.subst_inverse(v));
        prop_assert_eq!((&a + &b).subst_power(v, k), &a.subst_power(v, k) + &b.subst_power(v, k));
        prop_assert_eq!((&a * &b).subst_power(v, k), &a.subst_power(v, k) * &b.subst_power(v, k));
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly(), tn in 1i64..6, qn in -6i64..-1, d in 1i64..5) {
        let (t0, q0) = (rat(tn, d), rat(qn, d + 1));
        let ev = |p: &LaurentPoly| p.eval(&t0, &q0).unwrap();
        prop_assert_eq!(ev(&(&a * &b)), ev(&a) * ev(&b));
        prop_assert_eq!(ev(&(&a + &b)), ev(&a) + ev(&b));
    }

    #[test]
    fn json_round_trip(a in poly()) {
        prop_assert_eq!(LaurentPoly::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn inversion_is_an_involution(seed in 0u64..500, n in 0usize..5) {
        let cs = CoefficientSeq::random_rational(seed, 6);
        let p = &lbp_sequence(&cs, n).unwrap()[n];
        prop_assert_eq!(&invert_lbp(&invert_lbp(p).unwrap()).unwrap(), p);
    }

    #[test]
    fn random_paths_have_level_area_weights(k in 0usize..8, idx in any::<prop::sample::Index>()) {
        let paths = enumerate_paths(k).unwrap();
        let p: &SchroederPath = &paths[idx.index(paths.len())];
        let s = path_stats(p);
        prop_assert_eq!(path_weight(p, &CoefficientSeq::q_narayana()).unwrap(), tq(s.level, s.area));
        prop_assert_eq!(s.length as usize, k);
    }
}

/// Path counts by a direct height DP, independent of the library's transfer matrix.
fn schroeder_count(k: usize) -> u64 {
    let len = 2 * k;
    // ways[x][h]; a level step spans two columns.
    let mut ways = vec![vec![0u64; len + 2]; len + 1];
    ways[0][0] = 1;
    for x in 1..=len {
        for h in 0..=len {
            let up = if h > 0 { ways[x - 1][h - 1] } else { 0 };
            let level = if x >= 2 { ways[x - 2][h] } else { 0 };
            ways[x][h] = up + ways[x - 1][h + 1] + level;
        }
    }
    ways[len][0]
}

#[test]
fn path_counts_three_ways() {
    let ones = CoefficientSeq::new(
        "ones",
        |_| Ok(LaurentPoly::one()),
        |_| Ok(LaurentPoly::one()),
        LaurentPoly::one(),
    );
    let large_schroeder = [1u64, 2, 6, 22, 90, 394, 1806, 8558, 41586];
    for (k, &expected) in large_schroeder.iter().enumerate() {
        let n = enumerate_paths(k).unwrap().len() as u64;
        assert_eq!(n, expected);
        assert_eq!(schroeder_count(k), n);
        assert_eq!(path_sum(k, &ones).unwrap(), LaurentPoly::from_int(n as i64));
    }
}
