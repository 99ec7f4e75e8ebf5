use std::collections::BTreeMap;
use std::sync::Arc;

use narayana_lab::aztec::*;
use narayana_lab::nipaths::{enumerate_tuples, tuple_genpoly};
use narayana_lab::ring::{rat, tq};
use narayana_lab::LaurentPoly;

fn at_one(p: &LaurentPoly) -> i64 {
    let v = p.eval(&rat(1, 1), &rat(1, 1)).unwrap();
    assert!(v.is_integer());
    i64::try_from(v.to_integer()).unwrap()
}

fn region(kind: RegionKind, n: i64) -> Arc<Region> {
    Arc::new(build_region(kind, n).unwrap())
}

#[test]
fn region_examples() {
    assert_eq!(region(RegionKind::Aztec, 1).len(), 4);
    assert_eq!(region(RegionKind::Aztec, 5).len(), 60);
    assert_eq!(region(RegionKind::AztecCut2, 1).len(), 10);
    let cut = region(RegionKind::AztecCut2, 2);
    let full = region(RegionKind::Aztec, 3);
    let missing: Vec<_> = full.cells().iter().filter(|c| !cut.contains(**c)).collect();
    assert_eq!(missing, vec![&(-1, -3), &(0, -3)]);
}

#[test]
fn border_cells_are_white() {
    for kind in [RegionKind::Aztec, RegionKind::AztecCut2] {
        for n in 1..=4 {
            let r = region(kind, n);
            let colours: BTreeMap<_, _> = checkerboard_color(&r).into_iter().collect();
            for c in r.upper_left_border() {
                assert!(colours[&c], "{kind:?} {n} {c:?}");
            }
            // Leftmost cell of every row in the upper half lies on that border.
            for j in 0..r.order() {
                let left = r.cells().iter().filter(|c| c.1 == j).map(|c| c.0).min().unwrap();
                assert!(colours[&(left, j)]);
            }
        }
    }
}

#[test]
fn tiling_counts() {
    for n in 0..=5 {
        let ts = enumerate_tilings(&region(RegionKind::Aztec, n)).unwrap();
        assert_eq!(ts.len(), 1usize << (n * (n + 1) / 2), "n = {n}");
    }
    for n in 0..=3 {
        let ts = enumerate_tilings(&region(RegionKind::AztecCut2, n)).unwrap();
        assert_eq!(ts.len() as i64, at_one(&variant_formula(n).unwrap()), "n = {n}");
    }
    assert_eq!(enumerate_tilings(&region(RegionKind::AztecCut2, 1)).unwrap().len(), 6);
}

#[test]
fn enumeration_is_deterministic() {
    let r = region(RegionKind::Aztec, 3);
    assert_eq!(enumerate_tilings(&r).unwrap(), enumerate_tilings(&r).unwrap());
}

#[test]
fn v_stat_examples() {
    let r = region(RegionKind::Aztec, 1);
    let ts = enumerate_tilings(&r).unwrap();
    let vs: Vec<i64> = ts.iter().map(|t| v_stat(t).unwrap()).collect();
    assert_eq!(vs.iter().copied().min(), Some(0));
    assert_eq!(vs.iter().copied().max(), Some(1));
    for n in 1..=4 {
        for t in enumerate_tilings(&region(RegionKind::Aztec, n)).unwrap() {
            assert_eq!(t.vertical_count() % 2, 0);
        }
    }
}

#[test]
fn all_horizontal_maps_to_all_level() {
    for n in 1..=4 {
        let r = region(RegionKind::Aztec, n);
        let t0: Vec<_> = enumerate_tilings(&r)
            .unwrap()
            .into_iter()
            .filter(|t| t.vertical_count() == 0)
            .collect();
        assert_eq!(t0.len(), 1);
        let p = tiling_to_paths(&t0[0]).unwrap();
        assert!(p.paths().iter().all(|q| q.to_step_string().chars().all(|c| c == 'L')));
        assert_eq!(p.area(), 2 * n * (n + 1) * (n - 1) / 3);
    }
}

#[test]
fn level_tuple_gives_horizontal_pair() {
    let r = region(RegionKind::Aztec, 1);
    let level = enumerate_tuples(1, 1)
        .unwrap()
        .into_iter()
        .find(|p| p.paths()[0].to_step_string() == "L")
        .unwrap();
    let t = paths_to_tiling(&level, &r).unwrap();
    let ds = t.dominoes();
    assert_eq!(ds.len(), 2);
    assert!(ds.iter().all(|d| d.orientation == Orientation::Horizontal));
    let parities: Vec<_> = ds.iter().map(|d| d.parity).collect();
    assert!(parities.contains(&Parity::Even) && parities.contains(&Parity::Odd));
}

#[test]
fn bijection_on_diamonds() {
    for n in 0..=4 {
        let rep = bijection_check(&region(RegionKind::Aztec, n)).unwrap();
        assert!(rep.all_pass(), "n = {n}: {:?}", rep.failures().next());
    }
}

#[test]
fn bijection_on_cut_regions() {
    for n in 0..=3 {
        let rep = bijection_check(&region(RegionKind::AztecCut2, n)).unwrap();
        assert!(rep.all_pass(), "n = {n}: {:?}", rep.failures().next());
    }
}

#[test]
fn ranks_and_connectivity() {
    let r1 = region(RegionKind::Aztec, 1);
    let t1 = enumerate_tilings(&r1).unwrap();
    let ranks = rank_bfs(&t1).unwrap();
    for (t, r) in t1.iter().zip(&ranks) {
        assert_eq!(*r, t.vertical_count() / 2);
    }
    let t2 = enumerate_tilings(&region(RegionKind::Aztec, 2)).unwrap();
    let r2 = rank_bfs(&t2).unwrap();
    assert!(r2.contains(&4));
    assert_eq!(r2.iter().max(), Some(&5));
    for n in 3..=4 {
        let ts = enumerate_tilings(&region(RegionKind::Aztec, n)).unwrap();
        assert!(rank_bfs(&ts).is_ok(), "n = {n} disconnected");
    }
}

#[test]
fn dropping_tilings_disconnects() {
    let ts = enumerate_tilings(&region(RegionKind::Aztec, 2)).unwrap();
    let (base, rest): (Vec<_>, Vec<_>) = ts.into_iter().partition(|t| t.vertical_count() == 0);
    assert_eq!(base.len(), 1);
    assert!(matches!(
        rank_bfs(&rest),
        Err(narayana_lab::Error::Disconnected { reached: 0, total: 7 })
    ));
}

#[test]
fn aztec_diamond_theorem() {
    assert_eq!(adt_formula(0), LaurentPoly::one());
    let one = LaurentPoly::one();
    let a = &one + &tq(1, 1);
    let b = &one + &tq(1, 3);
    assert_eq!(adt_formula(1), a);
    assert_eq!(adt_formula(2), &(&a * &a) * &b);
    assert_eq!(at_one(&adt_formula(3)), 64);
    for n in 0..=4 {
        assert_eq!(ad_poly(n).unwrap(), adt_formula(n), "n = {n}");
    }
}

#[test]
fn level_and_area_identities() {
    for n in 1..=4 {
        let rep = lemma71_check(n).unwrap();
        assert!(rep.all_pass(), "n = {n}: {:?}", rep.failures().next());
        assert!(rep.len() >= 3 << (n * (n + 1) / 2));
    }
}

#[test]
fn variant_theorem() {
    assert_eq!(variant_formula(0).unwrap(), LaurentPoly::one());
    assert_eq!(at_one(&variant_formula(1).unwrap()), 6);
    for n in 0..=3 {
        let enumerated = tiling_poly(&region(RegionKind::AztecCut2, n)).unwrap();
        assert_eq!(enumerated, variant_formula(n).unwrap(), "n = {n}");
    }
}

#[test]
fn tiling_statistics_match_tuple_polynomial() {
    // t^v q^r = t^(n(n+1)/2 - level) q^(area - base), summed over S_(1,n).
    for n in 1..=3 {
        let half = n * (n + 1) / 2;
        let base = 2 * n * (n + 1) * (n - 1) / 3;
        let via_tuples = tuple_genpoly(1, n)
            .unwrap()
            .subst_inverse(narayana_lab::Var::T)
            .shift(half, -base);
        assert_eq!(via_tuples, adt_formula(n));
    }
}

#[test]
fn size_limit() {
    assert!(matches!(
        enumerate_tilings(&region(RegionKind::Aztec, 6)),
        Err(narayana_lab::Error::SizeLimit(_))
    ));
}

#[test]
fn json_shape() {
    let ts = enumerate_tilings(&region(RegionKind::Aztec, 1)).unwrap();
    let v: serde_json::Value = serde_json::to_value(&ts[0]).unwrap();
    assert_eq!(v["kind"], "aztec");
    assert_eq!(v["dominoes"].as_array().unwrap().len(), 2);
}
