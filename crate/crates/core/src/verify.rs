//! The acceptance suite: eight criteria, each a batch of exact comparisons.

use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::aztec::{
    ad_poly, adt_formula, enumerate_tilings, lemma71_check, rank_bfs, tiling_poly, variant_formula, Region, RegionKind,
};
use crate::coeffs::CoefficientSeq;
use crate::dets::{det_s_np2, lemma61, narayana_det, thm62, toeplitz_det, DetTable};
use crate::error::Result;
use crate::lbp::{moments, orthogonality_check, pade_check, LbpSystem};
use crate::nipaths::{cor63, enumerate_tuples, thm41_check, tuple_genpoly};
use crate::paths::{enumerate_paths, path_stats, path_sum, path_weight};
use crate::qnarayana::{narayana_enum, narayana_rec};
use crate::report::Report;
use crate::ring::{rat, tq, LaurentPoly, Var};
use crate::symbolic::SymbolicSystem;

pub const CRITERIA: [&str; 8] = [
    "q-Narayana values",
    "moments",
    "orthogonality and Pade",
    "determinants",
    "non-intersecting tuples",
    "Aztec diamond theorem",
    "cut diamond variant",
    "property suite",
];

/// Sizes the suite runs at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Scale {
    /// Also run the optional sizes (`n = 4` diamonds, `n = 3` cut regions, `n = 4` tuples).
    pub optional: bool,
}

impl Scale {
    pub const MANDATORY: Scale = Scale { optional: false };
    pub const FULL: Scale = Scale { optional: true };

    /// Optional sizes add a few seconds in a debug build; below that only the mandatory ones run.
    pub fn for_budget(budget: Option<Duration>) -> Scale {
        match budget {
            Some(b) if b < Duration::from_secs(10) => Scale::MANDATORY,
            _ => Scale::FULL,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub title: &'static str,
    pub pass: bool,
    pub checks: usize,
    pub failures: Vec<String>,
    pub elapsed_ms: u128,
}

#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn ok(&mut self, what: impl Into<String>, cond: bool) {
        self.checks += 1;
        if !cond {
            self.failures.push(what.into());
        }
    }

    fn eq(&mut self, what: impl Into<String>, lhs: Result<LaurentPoly>, rhs: Result<LaurentPoly>) {
        self.checks += 1;
        match (lhs, rhs) {
            (Ok(a), Ok(b)) if a == b => {}
            (Ok(a), Ok(b)) => self.failures.push(format!("{}: {a:?} != {b:?}", what.into())),
            (Err(e), _) | (_, Err(e)) => self.failures.push(format!("{}: {e}", what.into())),
        }
    }

    fn report(&mut self, what: &str, r: Result<Report>) {
        match r {
            Ok(r) => {
                self.checks += r.len();
                self.failures.extend(
                    r.failures()
                        .map(|e| format!("{what}: {} n={} k={}: {:?} != {:?}", e.check, e.n, e.k, e.lhs, e.rhs)),
                );
            }
            Err(e) => {
                self.checks += 1;
                self.failures.push(format!("{what}: {e}"));
            }
        }
    }

    fn fallible(&mut self, what: &str, f: impl FnOnce(&mut Tally) -> Result<()>) {
        if let Err(e) = f(self) {
            self.checks += 1;
            self.failures.push(format!("{what}: {e}"));
        }
    }
}

pub fn run_all(scale: Scale) -> Vec<CriterionResult> {
    (1..=CRITERIA.len()).map(|id| run_criterion(id, scale)).collect()
}

/// Runs criterion `id` in `1..=8`.
pub fn run_criterion(id: usize, scale: Scale) -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::default();
    match id {
        1 => narayana_values(&mut t),
        2 => moment_list(&mut t),
        3 => orthogonality_pade(&mut t),
        4 => determinants(&mut t),
        5 => tuples(&mut t, scale),
        6 => aztec_theorem(&mut t, scale),
        7 => cut_variant(&mut t, scale),
        8 => properties(&mut t),
        _ => t.ok(format!("no criterion {id}"), false),
    }
    CriterionResult {
        id,
        title: CRITERIA.get(id.wrapping_sub(1)).copied().unwrap_or("unknown"),
        pass: t.failures.is_empty(),
        checks: t.checks,
        failures: t.failures,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

fn eval_at(p: &LaurentPoly, t0: i64, q0: i64) -> Result<num_rational::BigRational> {
    p.eval(&rat(t0, 1), &rat(q0, 1))
}

fn narayana_values(t: &mut Tally) {
    let listed = [
        LaurentPoly::from_terms([(1, 1, 0), (1, 0, 1)]),
        LaurentPoly::from_terms([(1, 2, 0), (2, 1, 1), (1, 1, 3), (1, 0, 2), (1, 0, 4)]),
        LaurentPoly::from_terms([
            (1, 3, 0),
            (3, 2, 1),
            (2, 2, 3),
            (1, 2, 5),
            (3, 1, 2),
            (4, 1, 4),
            (2, 1, 6),
            (1, 1, 8),
            (1, 0, 3),
            (2, 0, 5),
            (1, 0, 7),
            (1, 0, 9),
        ]),
    ];
    for (k, p) in listed.into_iter().enumerate() {
        t.eq(format!("N_{} listed", k + 1), narayana_enum(k + 1), Ok(p));
    }
    for k in 0..=8 {
        t.eq(format!("N_{k} enum vs rec"), narayana_enum(k), Ok(narayana_rec(k)));
    }
    for (k, s) in [1, 2, 6, 22, 90].into_iter().enumerate() {
        t.ok(
            format!("N_{k}(1,1) = {s}"),
            eval_at(&narayana_rec(k), 1, 1).ok() == Some(rat(s, 1)),
        );
    }
    for k in 0..=8u64 {
        let catalan = binomial(2 * k, k) / (k + 1);
        let v = eval_at(&narayana_rec(k as usize), 0, 1);
        t.ok(
            format!("N_{k}(0,1) Catalan"),
            v.ok().map(|r| r.to_integer()) == Some(catalan),
        );
    }
}

/// `f_{-2} .. f_3` as listed, built from the coefficient accessors.
fn listed_moments(cs: &CoefficientSeq) -> Result<Vec<(i64, LaurentPoly)>> {
    let shape = |cs: &CoefficientSeq| -> Result<[LaurentPoly; 3]> {
        let (b1, b2, c0, c1) = (cs.b(1)?, cs.b(2)?, cs.c(0)?, cs.c(1)?);
        let k = cs.kappa().clone();
        let f2 = &k * &(&b1 + &c0);
        let two = LaurentPoly::from_int(2);
        let inner = &(&(&(&(&b1 * &b2) + &(&b1 * &b1)) + &(&b1 * &c1)) + &(&two * &(&b1 * &c0))) + &(&c0 * &c0);
        Ok([k.clone(), f2, &k * &inner])
    };
    let [f1, f2, f3] = shape(cs)?;
    let [f0, fm1, fm2] = shape(&cs.dual()?)?;
    Ok(vec![(-2, fm2), (-1, fm1), (0, f0), (1, f1), (2, f2), (3, f3)])
}

fn moment_list(t: &mut Tally) {
    let mut systems = vec![
        SymbolicSystem::default().coefficient_seq(),
        CoefficientSeq::q_narayana(),
    ];
    systems.extend((1..=3).map(|seed| CoefficientSeq::random_rational(seed, 6)));
    for cs in systems {
        t.fallible(cs.name(), |t| {
            let m = moments(&cs, -2, 3)?;
            for (k, v) in listed_moments(&cs)? {
                t.eq(format!("{} f_{k}", cs.name()), m.get(k).cloned(), Ok(v));
            }
            Ok(())
        });
    }
    // The dual side written out directly in b, c, kappa.
    let s = SymbolicSystem::default();
    t.fallible("symbolic f_-1", |t| {
        let m = moments(&s.coefficient_seq(), -1, 0)?;
        t.eq("f_-1", m.get(-1).cloned(), s.parse("k*b1*c0^-2*c1^-1 + k*c0^-2"));
        t.eq("f_0", m.get(0).cloned(), s.parse("k*c0^-1"));
        Ok(())
    });
}

fn orthogonality_pade(t: &mut Tally) {
    let cs = CoefficientSeq::q_narayana();
    match LbpSystem::new(cs.clone(), 5) {
        Ok(sys) => {
            t.report("orthogonality", orthogonality_check(&sys, 5));
            t.report("cfs in dets", crate::dets::cfs_in_dets_check(&sys, 4));
        }
        Err(e) => t.ok(format!("q-Narayana system: {e}"), false),
    }
    for n in 0..=4 {
        t.fallible("pade", |t| {
            let sys = LbpSystem::with_window(cs.clone(), n, -(n as i64) - 3, n as i64 + 3)?;
            let r = pade_check(&sys, n, 2)?;
            let first = |name: &str| r.entries.iter().find(|e| e.check == name).map(|e| e.k);
            t.ok(
                format!("pade n={n} infinity order"),
                first("pade_first_difference_infinity") == Some(n as i64 + 1),
            );
            t.ok(
                format!("pade n={n} zero order"),
                first("pade_first_difference_zero") == Some(n as i64),
            );
            t.report("pade", Ok(r));
            Ok(())
        });
    }
}

fn determinants(t: &mut Tally) {
    let s = SymbolicSystem::default();
    t.fallible("eight monomials", |t| {
        let m = moments(&s.coefficient_seq(), 2, 4)?;
        let expect = s.parse(
            "-k^2*b1*c0*c1^2 - 2*k^2*b1*b2*c0*c1 - k^2*b1*b2^2*c0 - k^2*b1*b2*c0*c2 \
             - k^2*b1^2*b2*c2 - k^2*b1*b2*b3*c0 - k^2*b1^2*b2*b3",
        );
        t.eq("Delta^(3)_2", toeplitz_det(&m, 3, 2), expect);
        Ok(())
    });
    t.fallible("closed forms", |t| {
        let m = moments(&CoefficientSeq::q_narayana(), -8, 10)?;
        for n in 0..=4usize {
            for s in -(n as i64)..=n as i64 + 1 {
                let direct = toeplitz_det(&m, s, n);
                t.eq(format!("thm62 ({s},{n}) vs toeplitz"), thm62(s, n), direct.clone());
                t.eq(format!("narayana_det ({s},{n})"), narayana_det(s, n), direct);
            }
            for s in [0, 1] {
                t.eq(format!("lemma61 ({s},{n})"), lemma61(s, n), toeplitz_det(&m, s, n));
            }
        }
        Ok(())
    });
    t.fallible("sylvester", |t| {
        let mut tab = DetTable::new();
        for n in 0..=3i64 {
            for s in -6..=6 {
                t.eq(
                    format!("sylvester ({s},{n})"),
                    tab.sylvester_extend(s, n),
                    narayana_det(s, n as usize),
                );
            }
        }
        t.report("sylvester identities", Ok(tab.sylvester_check()));
        Ok(())
    });
    for n in 0..=3usize {
        t.eq(
            format!("det (n+2, n) n={n}"),
            det_s_np2(n),
            narayana_det(n as i64 + 2, n),
        );
    }
}

fn tuples(t: &mut Tally, scale: Scale) {
    t.ok("|S_(1,2)| = 8", enumerate_tuples(1, 2).map(|v| v.len()).ok() == Some(8));
    let nmax = if scale.optional { 4 } else { 3 };
    for m in 0..=1 {
        for n in 0..=nmax {
            t.eq(format!("genpoly S_({m},{n})"), tuple_genpoly(m, n), cor63(m, n));
        }
    }
    let cs = CoefficientSeq::q_narayana();
    for n in 1..=3 {
        for s in n..=n + 3 {
            t.report("gessel-viennot", thm41_check(&cs, s, n));
        }
        for s in -2..=(1 - n) {
            t.report("gessel-viennot dual", thm41_check(&cs, s, n));
        }
    }
}

fn aztec_theorem(t: &mut Tally, scale: Scale) {
    let nmax = if scale.optional { 4 } else { 3 };
    for n in 0..=nmax {
        t.eq(format!("AD_{n}"), ad_poly(n), Ok(adt_formula(n)));
    }
    for n in 0..=5 {
        let count = Region::aztec(n)
            .and_then(|r| enumerate_tilings(&Arc::new(r)))
            .map(|v| v.len());
        t.ok(format!("|T_{n}|"), count.ok() == Some(1usize << (n * (n + 1) / 2)));
    }
    for n in 1..=nmax.min(3) {
        t.report("lemma71", lemma71_check(n));
    }
}

fn cut_variant(t: &mut Tally, scale: Scale) {
    let nmax = if scale.optional { 3 } else { 2 };
    for n in 0..=3 {
        t.fallible("cut region", |t| {
            let r = Arc::new(Region::build(RegionKind::AztecCut2, n)?);
            if n <= nmax {
                t.eq(format!("cut n={n} polynomial"), tiling_poly(&r), variant_formula(n));
            }
            let count = enumerate_tilings(&r)?.len() as i64;
            t.ok(
                format!("cut n={n} count"),
                eval_at(&variant_formula(n)?, 1, 1)? == rat(count, 1),
            );
            Ok(())
        });
    }
}

fn random_poly(rng: &mut ChaCha8Rng) -> LaurentPoly {
    let terms: Vec<(i64, i64, i64)> = (0..rng.gen_range(0..5))
        .map(|_| (rng.gen_range(-4..=4), rng.gen_range(-3..=3), rng.gen_range(-3..=3)))
        .collect();
    LaurentPoly::from_terms(terms)
}

fn properties(t: &mut Tally) {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..64 {
        let (a, b, c) = (random_poly(&mut rng), random_poly(&mut rng), random_poly(&mut rng));
        t.ok(format!("assoc #{i}"), &(&a * &b) * &c == &a * &(&b * &c));
        t.ok(format!("commute #{i}"), &a * &b == &b * &a && &a + &b == &b + &a);
        t.ok(format!("distrib #{i}"), &a * &(&b + &c) == &(&a * &b) + &(&a * &c));
        t.ok(format!("negation #{i}"), (&a + &(-a.clone())).is_zero());
        for v in [Var::T, Var::Q] {
            t.ok(format!("involution #{i}"), a.subst_inverse(v).subst_inverse(v) == a);
            t.ok(
                format!("homomorphism #{i}"),
                (&a * &b).subst_inverse(v) == &a.subst_inverse(v) * &b.subst_inverse(v),
            );
        }
        let (t0, q0) = (
            rat(rng.gen_range(1..=5), rng.gen_range(1..=4)),
            rat(-rng.gen_range(1..=5), 3),
        );
        let ev = |p: &LaurentPoly| p.eval(&t0, &q0).ok();
        t.ok(
            format!("evaluation #{i}"),
            ev(&(&a * &b)) == ev(&a).zip(ev(&b)).map(|(x, y)| x * y),
        );
    }
    let ones = CoefficientSeq::new(
        "ones",
        |_| Ok(LaurentPoly::one()),
        |_| Ok(LaurentPoly::one()),
        LaurentPoly::one(),
    );
    let qn = CoefficientSeq::q_narayana();
    for k in 0..=8 {
        t.fallible("paths", |t| {
            let paths = enumerate_paths(k)?;
            t.eq(
                format!("|S_{k}| DP"),
                path_sum(k, &ones),
                Ok(LaurentPoly::from_int(paths.len() as i64)),
            );
            let all = paths.iter().all(|p| {
                let s = path_stats(p);
                path_weight(p, &qn).ok() == Some(tq(s.level, s.area))
            });
            t.ok(format!("w = t^level q^area on S_{k}"), all);
            Ok(())
        });
    }
    for n in 0..=4 {
        let connected = Region::aztec(n)
            .and_then(|r| enumerate_tilings(&Arc::new(r)))
            .and_then(|ts| rank_bfs(&ts).map(|_| ()));
        t.ok(format!("move graph T_{n} connected"), connected.is_ok());
    }
}
