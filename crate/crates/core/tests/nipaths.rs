use narayana_lab::nipaths::*;
use narayana_lab::ring::{rat, tq};
use narayana_lab::symbolic::SymbolicSystem;
use narayana_lab::{CoefficientSeq, LaurentPoly, Report};

fn assert_report(r: &Report) {
    assert!(!r.is_empty());
    if let Some(f) = r.failures().next() {
        panic!("{} n={} k={}: {:?} != {:?}", f.check, f.n, f.k, f.lhs, f.rhs);
    }
}

#[test]
fn genpoly_matches_closed_form() {
    for m in 0..=1 {
        for n in 0..=4 {
            assert_eq!(tuple_genpoly(m, n).unwrap(), cor63(m, n).unwrap(), "m={m} n={n}");
        }
    }
}

#[test]
fn counts_at_one() {
    for n in 0..=4 {
        let v = tuple_genpoly(1, n).unwrap().eval(&rat(1, 1), &rat(1, 1)).unwrap();
        assert_eq!(v, rat(1 << (n * (n + 1) / 2), 1));
    }
}

#[test]
fn weight_is_level_and_area() {
    let cs = CoefficientSeq::q_narayana();
    for (m, n) in [(1, 2), (2, 2), (1, 3), (3, 1)] {
        for p in enumerate_tuples(m, n).unwrap() {
            assert_eq!(p.weight(&cs).unwrap(), tq(p.level(), p.area()), "{p:?}");
        }
    }
}

#[test]
fn gessel_viennot_narayana() {
    let cs = CoefficientSeq::q_narayana();
    for n in 1..=3 {
        for s in n..=n + 3 {
            assert_report(&thm41_check(&cs, s, n).unwrap());
        }
        for s in -2..=(1 - n) {
            assert_report(&thm41_check(&cs, s, n).unwrap());
        }
    }
}

#[test]
fn gessel_viennot_random() {
    for seed in 1..=3 {
        let cs = CoefficientSeq::random_rational(seed, 8);
        for n in 1..=2 {
            for s in n..=n + 2 {
                assert_report(&thm41_check(&cs, s, n).unwrap());
            }
            for s in -2..=(1 - n) {
                assert_report(&thm41_check(&cs, s, n).unwrap());
            }
        }
    }
}

#[test]
fn gessel_viennot_symbolic() {
    let cs = SymbolicSystem::default().coefficient_seq();
    assert_report(&thm41_check(&cs, 3, 2).unwrap());
    assert_report(&thm41_check(&cs, -1, 2).unwrap());
}

#[test]
fn gap_has_no_tuple_expansion() {
    let cs = CoefficientSeq::q_narayana();
    assert!(thm41_check(&cs, 1, 2).is_err());
    assert!(thm41_rhs(&cs, 0, 3).is_err());
}

#[test]
fn member_baselines_are_implied() {
    for (m, n) in [(0, 3), (1, 2), (1, 3), (2, 2), (3, 2)] {
        let words = |b: bool| -> Vec<Vec<String>> {
            enumerate_tuples_with(m, n, b)
                .unwrap()
                .iter()
                .map(|t| t.paths().iter().map(|p| p.to_step_string()).collect())
                .collect()
        };
        assert_eq!(words(true), words(false), "m={m} n={n}");
    }
}

#[test]
fn s_np2_tuple_count() {
    // |S_(2,n)| = 2^(n(n+1)/2) sum_{l=0}^{n} C(n+1, l).
    for n in 0..=3 {
        let v = tuple_genpoly(2, n).unwrap().eval(&rat(1, 1), &rat(1, 1)).unwrap();
        assert_eq!(v, rat((1 << (n * (n + 1) / 2)) * ((1 << (n + 1)) - 1), 1));
    }
}

#[test]
fn closed_form_small() {
    let one = LaurentPoly::one();
    assert_eq!(cor63(1, 1).unwrap(), &LaurentPoly::t() + &LaurentPoly::q());
    assert_eq!(cor63(0, 0).unwrap(), one);
}
