//! Tuples of non-intersecting Schröder paths and the determinant identities
//! they count.

use std::collections::HashSet;

use serde::Serialize;

use crate::coeffs::CoefficientSeq;
use crate::dets::toeplitz_det;
use crate::error::{Error, Result};
use crate::lbp::moments;
use crate::paths::{for_each_path, path_stats, path_weight, Point, SchroederPath};
use crate::report::{CheckEntry, Report};
use crate::ring::{sign_pow, tq, LaurentPoly};

/// Largest `m + n` accepted by [`enumerate_tuples`].
pub const MAX_TUPLE_SIZE: i64 = 7;

/// `n` paths, the `k`-th from `(-k, k)` to `(2m + k, k)`, pairwise vertex-disjoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PathTuple {
    m: i64,
    paths: Vec<SchroederPath>,
}

impl PathTuple {
    /// Validates endpoints, baselines and disjointness.
    pub fn new(m: i64, paths: Vec<SchroederPath>) -> Result<Self> {
        let mut seen = HashSet::new();
        for (k, p) in paths.iter().enumerate() {
            let k = k as i64;
            if p.start() != (-k, k) || p.end() != (2 * m + k, k) {
                return Err(Error::Malformed(format!(
                    "path {k} must run from ({}, {k}) to ({}, {k})",
                    -k,
                    2 * m + k
                )));
            }
            for pt in p.occupied_points() {
                if !seen.insert(pt) {
                    return Err(Error::Malformed(format!("paths meet at {pt:?}")));
                }
            }
        }
        Ok(PathTuple { m, paths })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn paths(&self) -> &[SchroederPath] {
        &self.paths
    }

    pub fn level(&self) -> i64 {
        self.paths.iter().map(|p| path_stats(p).level).sum()
    }

    /// Sum of member areas, each measured against the x-axis.
    pub fn area(&self) -> i64 {
        self.paths.iter().map(|p| path_stats(p).area).sum()
    }

    pub fn weight(&self, cs: &CoefficientSeq) -> Result<LaurentPoly> {
        self.paths.iter().map(|p| path_weight(p, cs)).product()
    }
}

fn check_size(m: i64, n: i64) -> Result<()> {
    if m < 0 || n < 0 {
        return Err(Error::OutOfRange(format!("S_({m},{n}) needs m, n >= 0")));
    }
    if m + n > MAX_TUPLE_SIZE {
        return Err(Error::SizeLimit(format!(
            "S_({m},{n}) is too large to enumerate (limit m + n <= {MAX_TUPLE_SIZE})"
        )));
    }
    Ok(())
}

/// All tuples of `S_(m,n)`, lowest path varying slowest.
pub fn enumerate_tuples(m: i64, n: i64) -> Result<Vec<PathTuple>> {
    enumerate_tuples_with(m, n, true)
}

/// As [`enumerate_tuples`]; with `member_baselines == false` every path may dip
/// to the x-axis instead of staying at or above its own start height.
pub fn enumerate_tuples_with(m: i64, n: i64, member_baselines: bool) -> Result<Vec<PathTuple>> {
    check_size(m, n)?;
    let mut out = Vec::new();
    let mut occupied: HashSet<Point> = HashSet::new();
    let mut stack: Vec<SchroederPath> = Vec::new();
    extend(m, n, member_baselines, &mut occupied, &mut stack, &mut out)?;
    Ok(out)
}

fn extend(
    m: i64,
    n: i64,
    member_baselines: bool,
    occupied: &mut HashSet<Point>,
    stack: &mut Vec<SchroederPath>,
    out: &mut Vec<PathTuple>,
) -> Result<()> {
    let k = stack.len() as i64;
    if k == n {
        out.push(PathTuple {
            m,
            paths: stack.clone(),
        });
        return Ok(());
    }
    let baseline = if member_baselines { k } else { 0 };
    let mut candidates = Vec::new();
    for_each_path(
        (-k, k),
        (2 * m + k, k),
        baseline,
        |pt| occupied.contains(&pt),
        |steps| {
            candidates.push(steps.to_vec());
        },
    );
    for steps in candidates {
        let path = SchroederPath::new((-k, k), steps, baseline)?;
        let pts = path.occupied_points();
        occupied.extend(pts.iter().copied());
        stack.push(path);
        extend(m, n, member_baselines, occupied, stack, out)?;
        stack.pop();
        for pt in &pts {
            occupied.remove(pt);
        }
    }
    Ok(())
}

/// `sum over S_(m,n) of t^level q^area`.
pub fn tuple_genpoly(m: i64, n: i64) -> Result<LaurentPoly> {
    Ok(enumerate_tuples(m, n)?.iter().map(|t| tq(t.level(), t.area())).sum())
}

/// `sum over S_(m,n) of w`.
pub fn tuple_weight_sum(m: i64, n: i64, cs: &CoefficientSeq) -> Result<LaurentPoly> {
    enumerate_tuples(m, n)?.iter().map(|t| t.weight(cs)).sum()
}

/// `q^(n(n-1)(3m+2n-1)/3) prod_{k=1}^{m+n-1} (t + q^(2k-1))^(m+n-k)` for `m` in `{0, 1}`.
pub fn cor63(m: i64, n: i64) -> Result<LaurentPoly> {
    if m != 0 && m != 1 {
        return Err(Error::OutOfRange(format!("closed form needs m in {{0, 1}}, got {m}")));
    }
    if n < 0 {
        return Err(Error::OutOfRange(format!("n = {n}")));
    }
    let mut v = tq(0, n * (n - 1) * (3 * m + 2 * n - 1) / 3);
    for k in 1..m + n {
        v *= &(&LaurentPoly::t() + &tq(0, 2 * k - 1)).pow((m + n - k) as u32);
    }
    Ok(v)
}

/// The signed tuple sum that equals `Delta^(s)_n`: over `S_(s-n, n)` with `b`, `kappa`
/// when `s >= n`, over `S_(|s|-n+1, n)` with the dual labels when `s <= -n+1`.
pub fn thm41_rhs(cs: &CoefficientSeq, s: i64, n: i64) -> Result<LaurentPoly> {
    let (labels, m) = if s >= n {
        (cs.clone(), s - n)
    } else if s <= -n + 1 {
        (cs.dual()?, s.abs() - n + 1)
    } else {
        return Err(Error::OutOfRange(format!(
            "no tuple expansion for s = {s}, n = {n} (needs s >= n or s <= 1 - n)"
        )));
    };
    let mut pre = &sign_pow(n * (n - 1) / 2) * &labels.kappa().pow(n as u32);
    for j in 1..n {
        pre *= &labels.b(j)?.pow((n - j) as u32);
    }
    Ok(&pre * &tuple_weight_sum(m, n, &labels)?)
}

/// Compares `Delta^(s)_n` from the moment determinant with [`thm41_rhs`].
pub fn thm41_check(cs: &CoefficientSeq, s: i64, n: i64) -> Result<Report> {
    if n < 0 {
        return Err(Error::OutOfRange(format!("n = {n}")));
    }
    let rhs = thm41_rhs(cs, s, n)?;
    let lo = (s - n + 1).min(s);
    let hi = (s + n - 1).max(s);
    let m = moments(cs, lo, hi)?;
    let lhs = toeplitz_det(&m, s, n as usize)?;
    let name = if s >= n {
        "gessel_viennot"
    } else {
        "gessel_viennot_dual"
    };
    let mut report = Report::new();
    report.push(CheckEntry::equality(name, n, s, lhs, rhs));
    Ok(report)
}
