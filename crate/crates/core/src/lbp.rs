//! Laurent biorthogonal polynomials, their moments, the moment functional and
//! T-fraction convergents.

use std::collections::BTreeMap;

use crate::coeffs::CoefficientSeq;
use crate::dets::{det, toeplitz_det};
use crate::error::{Error, Result};
use crate::paths::{enumerate_paths, path_sum, path_weight};
use crate::report::{CheckEntry, Report};
use crate::ring::{series_expand, sign_pow, LaurentPoly, Point, ZPoly};

/// Largest `|k|` for which moments are computed.
pub const MAX_MOMENT_INDEX: i64 = 64;

/// A Laurent polynomial in `z`: exponent to coefficient.
pub type ZLaurent = BTreeMap<i64, LaurentPoly>;

/// Moments `f_k` for every `k` in `[kmin, kmax]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentMap {
    kmin: i64,
    kmax: i64,
    values: Vec<LaurentPoly>,
}

impl MomentMap {
    pub fn window(&self) -> (i64, i64) {
        (self.kmin, self.kmax)
    }

    pub fn covers(&self, lo: i64, hi: i64) -> bool {
        lo > hi || (self.kmin <= lo && hi <= self.kmax)
    }

    pub fn get(&self, k: i64) -> Result<&LaurentPoly> {
        if k < self.kmin || k > self.kmax {
            return Err(Error::WindowExceeded(k));
        }
        Ok(&self.values[(k - self.kmin) as usize])
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &LaurentPoly)> {
        (self.kmin..).zip(self.values.iter())
    }
}

/// `f_{k+1} = kappa * sum_{S_k} w` and `f_{-k} = kappa~ * sum_{S_k} w~` for `k` in the window.
pub fn moments(cs: &CoefficientSeq, kmin: i64, kmax: i64) -> Result<MomentMap> {
    if kmin > kmax {
        return Err(Error::OutOfRange(format!("empty moment window [{kmin}, {kmax}]")));
    }
    if kmin < -MAX_MOMENT_INDEX || kmax > MAX_MOMENT_INDEX + 1 {
        return Err(Error::SizeLimit(format!(
            "moment window [{kmin}, {kmax}] exceeds |k| <= {MAX_MOMENT_INDEX}"
        )));
    }
    let dual = if kmin <= 0 { Some(cs.dual()?) } else { None };
    let values = (kmin..=kmax)
        .map(|k| {
            if k >= 1 {
                Ok(cs.kappa() * &path_sum((k - 1) as usize, cs)?)
            } else {
                let d = dual.as_ref().expect("dual computed for nonpositive indices");
                Ok(d.kappa() * &path_sum((-k) as usize, d)?)
            }
        })
        .collect::<Result<_>>()?;
    Ok(MomentMap { kmin, kmax, values })
}

/// `P_0..P_N` from `P_{n+1} = (z - c_n) P_n - b_n z P_{n-1}`, `P_0 = 1`, `P_1 = z - c_0`.
pub fn lbp_sequence(cs: &CoefficientSeq, n: usize) -> Result<Vec<ZPoly>> {
    let p1 = &ZPoly::z() - &ZPoly::constant(cs.c(0)?);
    three_term(cs, n, ZPoly::one(), p1)
}

/// `Q_0..Q_N`: same recurrence, `Q_0 = 0`, `Q_1 = kappa`.
pub fn numerator_sequence(cs: &CoefficientSeq, n: usize) -> Result<Vec<ZPoly>> {
    three_term(cs, n, ZPoly::zero(), ZPoly::constant(cs.kappa().clone()))
}

fn three_term(cs: &CoefficientSeq, n: usize, y0: ZPoly, y1: ZPoly) -> Result<Vec<ZPoly>> {
    let mut out = vec![y0];
    if n >= 1 {
        out.push(y1);
    }
    for m in 1..n {
        let cm = ZPoly::constant(cs.c(m as i64)?);
        let bm = ZPoly::monomial(cs.b(m as i64)?, 1);
        let next = &(&(&ZPoly::z() - &cm) * &out[m]) - &(&bm * &out[m - 1]);
        out.push(next);
    }
    Ok(out)
}

/// Coefficients of the inverted family; see [`CoefficientSeq::dual`].
pub fn dual_coeffs(cs: &CoefficientSeq) -> Result<CoefficientSeq> {
    cs.dual()
}

/// `z^n P(1/z) / P(0)` for `n = deg P`.
pub fn invert_lbp(p: &ZPoly) -> Result<ZPoly> {
    let n = p
        .degree()
        .ok_or_else(|| Error::ZeroDivisor("cannot invert the zero polynomial".into()))?;
    let c0 = p.at_zero();
    if !c0.is_unit() {
        return Err(Error::NonUnit(c0.to_string()));
    }
    Ok(p.reversed(n).scale(&c0.inverse_unit()?))
}

/// `F[expr]` extended linearly from `F[z^k] = f_k`.
pub fn functional_apply(m: &MomentMap, expr: &ZLaurent) -> Result<LaurentPoly> {
    let mut acc = LaurentPoly::zero();
    for (&k, c) in expr {
        if !c.is_zero() {
            acc += &(c * m.get(k)?);
        }
    }
    Ok(acc)
}

/// `F[p(z) z^shift]`.
pub fn functional_apply_shifted(m: &MomentMap, p: &ZPoly, shift: i64) -> Result<LaurentPoly> {
    let expr: ZLaurent = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| (i as i64 + shift, c.clone()))
        .collect();
    functional_apply(m, &expr)
}

/// `P_0..P_N`, `Q_0..Q_N` and a moment window.
#[derive(Debug, Clone)]
pub struct LbpSystem {
    cs: CoefficientSeq,
    p: Vec<ZPoly>,
    q: Vec<ZPoly>,
    moments: MomentMap,
}

impl LbpSystem {
    /// Degree `N` with the moment window `[-N, N+1]`.
    pub fn new(cs: CoefficientSeq, n: usize) -> Result<Self> {
        Self::with_window(cs, n, -(n as i64), n as i64 + 1)
    }

    pub fn with_window(cs: CoefficientSeq, n: usize, kmin: i64, kmax: i64) -> Result<Self> {
        let p = lbp_sequence(&cs, n)?;
        let q = numerator_sequence(&cs, n)?;
        let moments = moments(&cs, kmin, kmax)?;
        Ok(LbpSystem { cs, p, q, moments })
    }

    pub fn coefficients(&self) -> &CoefficientSeq {
        &self.cs
    }

    pub fn degree(&self) -> usize {
        self.p.len() - 1
    }

    pub fn p(&self, n: usize) -> Result<&ZPoly> {
        self.p
            .get(n)
            .ok_or_else(|| Error::OutOfRange(format!("P_{n} not computed (N = {})", self.degree())))
    }

    pub fn q(&self, n: usize) -> Result<&ZPoly> {
        self.q
            .get(n)
            .ok_or_else(|| Error::OutOfRange(format!("Q_{n} not computed (N = {})", self.degree())))
    }

    pub fn moments(&self) -> &MomentMap {
        &self.moments
    }
}

/// `F[P_n z^-k] = h_n delta_{n,k}` for `0 <= k <= n <= N`, plus `h_n Delta0_n = Delta0_{n+1}`.
pub fn orthogonality_check(sys: &LbpSystem, n_max: usize) -> Result<Report> {
    let m = sys.moments();
    let mut report = Report::new();
    for n in 0..=n_max {
        let p = sys.p(n)?;
        for k in 0..=n {
            let lhs = functional_apply_shifted(m, p, -(k as i64))?;
            if k < n {
                report.push(CheckEntry::equality(
                    "orthogonality",
                    n as i64,
                    k as i64,
                    lhs,
                    LaurentPoly::zero(),
                ));
            } else {
                let h = lhs.clone();
                report.push(CheckEntry {
                    check: "orthogonality".into(),
                    n: n as i64,
                    k: k as i64,
                    pass: !h.is_zero(),
                    lhs,
                    rhs: h.clone(),
                });
                let d_n = toeplitz_det(m, 0, n)?;
                let d_n1 = toeplitz_det(m, 0, n + 1)?;
                report.push(CheckEntry::equality(
                    "h_determinant_ratio",
                    n as i64,
                    k as i64,
                    &h * &d_n,
                    d_n1,
                ));
            }
        }
    }
    Ok(report)
}

/// Compares `Q_n / P_n` with `F_+` at infinity through `z^-n` and with `F_-` at
/// zero through `z^(n-1)`, over `extra` further orders.
///
/// Besides the per-coefficient entries, `pade_first_difference_*` entries carry
/// in `k` the first order where the two series differ (`-1` if none was found),
/// and pass iff that order lies beyond the guaranteed one.
pub fn pade_check(sys: &LbpSystem, n: usize, extra: usize) -> Result<Report> {
    let (p, q) = (sys.p(n)?, sys.q(n)?);
    let m = sys.moments();
    let order = n + extra;
    let mut report = Report::new();

    let at_inf = series_expand(q, p, Point::Infinity, order)?;
    let f_plus: Vec<LaurentPoly> = (0..=order)
        .map(|j| {
            if j == 0 {
                Ok(LaurentPoly::zero())
            } else {
                m.get(j as i64).cloned()
            }
        })
        .collect::<Result<_>>()?;
    for (j, f) in f_plus.iter().enumerate().take(n + 1) {
        report.push(CheckEntry::equality(
            "pade_infinity",
            n as i64,
            j as i64,
            at_inf.coeff(j).clone(),
            f.clone(),
        ));
    }
    let first = (0..=order).find(|&j| at_inf.coeff(j) != &f_plus[j]);
    report.push(first_difference_entry(
        "pade_first_difference_infinity",
        n,
        first,
        n as i64,
        &at_inf,
        &f_plus,
    ));

    let at_zero = series_expand(q, p, Point::Zero, order)?;
    let f_minus: Vec<LaurentPoly> = (0..=order)
        .map(|j| m.get(-(j as i64)).map(|f| -f))
        .collect::<Result<_>>()?;
    for (j, f) in f_minus.iter().enumerate().take(n) {
        report.push(CheckEntry::equality(
            "pade_zero",
            n as i64,
            j as i64,
            at_zero.coeff(j).clone(),
            f.clone(),
        ));
    }
    let first = (0..=order).find(|&j| at_zero.coeff(j) != &f_minus[j]);
    report.push(first_difference_entry(
        "pade_first_difference_zero",
        n,
        first,
        n as i64 - 1,
        &at_zero,
        &f_minus,
    ));
    Ok(report)
}

fn first_difference_entry(
    name: &str,
    n: usize,
    first: Option<usize>,
    guaranteed: i64,
    series: &crate::ring::FormalSeries,
    target: &[LaurentPoly],
) -> CheckEntry {
    match first {
        Some(j) => CheckEntry {
            check: name.into(),
            n: n as i64,
            k: j as i64,
            pass: j as i64 > guaranteed,
            lhs: series.coeff(j).clone(),
            rhs: target[j].clone(),
        },
        None => CheckEntry {
            check: name.into(),
            n: n as i64,
            k: -1,
            pass: true,
            lhs: LaurentPoly::zero(),
            rhs: LaurentPoly::zero(),
        },
    }
}

/// `f_{n,k} = f_{n+1,k-1} + c_n f_{n,k-1} + b_n f_{n-1,k}` with `f_{n,k} := F[P_n z^(k+1)]`,
/// `f_{-1,k} = 0` and `f_{n,-1} = kappa~ delta_{n,0}`.
pub fn generalized_moment_check(sys: &LbpSystem, n_max: usize, k_max: usize) -> Result<Report> {
    let m = sys.moments();
    let cs = sys.coefficients();
    let f = |n: i64, k: i64| -> Result<LaurentPoly> {
        if n < 0 {
            return Ok(LaurentPoly::zero());
        }
        functional_apply_shifted(m, sys.p(n as usize)?, k + 1)
    };
    let mut report = Report::new();
    let kappa_dual = m.get(0)?.clone();
    for n in 0..=n_max as i64 {
        let expected = if n == 0 {
            kappa_dual.clone()
        } else {
            LaurentPoly::zero()
        };
        report.push(CheckEntry::equality(
            "generalized_moment_boundary",
            n,
            -1,
            f(n, -1)?,
            expected,
        ));
        for k in 0..=k_max as i64 {
            let mut rhs = &f(n + 1, k - 1)? + &(&cs.c(n)? * &f(n, k - 1)?);
            if n >= 1 {
                rhs += &(&cs.b(n)? * &f(n - 1, k)?);
            }
            report.push(CheckEntry::equality("generalized_moment", n, k, f(n, k)?, rhs));
        }
    }
    Ok(report)
}

/// Expands `Q_n / P_n` at both points and compares with the path sums
/// `kappa * sum_{S_j} w` (coefficient of `z^-(j+1)`) and
/// `-kappa~ * sum_{S_j} w~` (coefficient of `z^j`) for `j <= order`.
pub fn tfrac_series_check(cs: &CoefficientSeq, order: usize, n: usize) -> Result<Report> {
    if n <= order {
        return Err(Error::OutOfRange(format!(
            "convergent T_{n} only determines the series through order {}",
            n.saturating_sub(1)
        )));
    }
    let p = lbp_sequence(cs, n)?.pop().expect("nonempty");
    let q = numerator_sequence(cs, n)?.pop().expect("nonempty");
    let dual = cs.dual()?;
    let at_inf = series_expand(&q, &p, Point::Infinity, order + 1)?;
    let at_zero = series_expand(&q, &p, Point::Zero, order)?;
    let mut report = Report::new();
    for j in 0..=order {
        let mut plus = LaurentPoly::zero();
        let mut minus = LaurentPoly::zero();
        for path in enumerate_paths(j)? {
            debug_assert_eq!(path.stats().length, j as i64);
            plus += &path_weight(&path, cs)?;
            minus += &path_weight(&path, &dual)?;
        }
        let plus = cs.kappa() * &plus;
        let minus = -(dual.kappa() * &minus);
        report.push(CheckEntry::equality(
            "tfrac_infinity",
            n as i64,
            j as i64,
            at_inf.coeff(j + 1).clone(),
            plus,
        ));
        report.push(CheckEntry::equality(
            "tfrac_zero",
            n as i64,
            j as i64,
            at_zero.coeff(j).clone(),
            minus,
        ));
    }
    Ok(report)
}

/// The bordered moment determinant with last row `1, z, ..., z^n`, divided by `Delta0_n`.
pub fn lbp_determinant_form(sys: &LbpSystem, n: usize) -> Result<ZPoly> {
    let m = sys.moments();
    let rows: Vec<Vec<LaurentPoly>> = (0..n as i64)
        .map(|j| (0..=n as i64).map(|k| m.get(k - j).cloned()).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let delta = toeplitz_det(m, 0, n)?;
    if delta.is_zero() {
        return Err(Error::ZeroDivisor(format!("Delta^(0)_{n} vanishes")));
    }
    let mut coeffs = Vec::with_capacity(n + 1);
    for col in 0..=n {
        let minor: Vec<Vec<LaurentPoly>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != col)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let cof = &sign_pow((n + col) as i64) * &det(&minor)?;
        coeffs.push(cof.exact_div(&delta)?);
    }
    Ok(ZPoly::new(coeffs))
}

/// The `n`-th convergent `kappa/(z - c_0 - b_1 z/(z - c_1 - ...))` flattened from
/// the innermost level outwards; the pair is not reduced.
pub fn tfrac_convergent(cs: &CoefficientSeq, n: usize) -> Result<(ZPoly, ZPoly)> {
    if n == 0 {
        return Ok((ZPoly::zero(), ZPoly::one()));
    }
    let (mut num, mut den) = (ZPoly::zero(), ZPoly::one());
    for j in (1..n).rev() {
        let lin = &ZPoly::z() - &ZPoly::constant(cs.c(j as i64)?);
        let new_den = &(&lin * &den) - &num;
        let new_num = &ZPoly::monomial(cs.b(j as i64)?, 1) * &den;
        (num, den) = (new_num, new_den);
    }
    let lin = &ZPoly::z() - &ZPoly::constant(cs.c(0)?);
    let new_den = &(&lin * &den) - &num;
    let new_num = den.scale(cs.kappa());
    Ok((new_num, new_den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::tq;

    fn lp(v: i64) -> LaurentPoly {
        LaurentPoly::from_int(v)
    }

    #[test]
    fn narayana_first_polynomials() {
        let cs = CoefficientSeq::q_narayana();
        let p = lbp_sequence(&cs, 2).unwrap();
        assert_eq!(p[0], ZPoly::one());
        assert_eq!(p[1], ZPoly::new(vec![-tq(1, 0), lp(1)]));
        let b1c0c1 = &(&tq(0, 1) + &tq(1, 0)) + &tq(1, 2);
        assert_eq!(p[2], ZPoly::new(vec![tq(2, 2), -b1c0c1, lp(1)]));
    }

    #[test]
    fn moments_at_small_indices() {
        let cs = CoefficientSeq::q_narayana();
        let m = moments(&cs, -1, 2).unwrap();
        assert_eq!(m.get(1).unwrap(), &lp(1));
        assert_eq!(m.get(2).unwrap(), &(&tq(1, 0) + &tq(0, 1)));
        assert_eq!(m.get(0).unwrap(), &tq(-1, 0));
        assert_eq!(m.get(-1).unwrap(), &(&tq(-2, 0) + &tq(-3, -1)));
        assert_eq!(m.get(3), Err(Error::WindowExceeded(3)));
    }

    #[test]
    fn functional_on_constants_and_p1() {
        let cs = CoefficientSeq::q_narayana();
        let m = moments(&cs, 0, 1).unwrap();
        let five: ZLaurent = [(0, lp(5))].into();
        assert_eq!(
            functional_apply(&m, &five).unwrap(),
            tq(-1, 0).scale(&crate::ring::rat(5, 1))
        );
        let p1 = &lbp_sequence(&cs, 1).unwrap()[1];
        assert!(functional_apply_shifted(&m, p1, 0).unwrap().is_zero());
        assert_eq!(functional_apply_shifted(&m, p1, 1), Err(Error::WindowExceeded(2)));
    }

    #[test]
    fn invert_p1() {
        let cs = CoefficientSeq::q_narayana();
        let p1 = &lbp_sequence(&cs, 1).unwrap()[1];
        assert_eq!(invert_lbp(p1).unwrap(), ZPoly::new(vec![-tq(-1, 0), lp(1)]));
        let nonunit = ZPoly::new(vec![&tq(1, 0) + &lp(1), lp(1)]);
        assert!(matches!(invert_lbp(&nonunit), Err(Error::NonUnit(_))));
    }

    #[test]
    fn convergent_of_order_one() {
        let cs = CoefficientSeq::q_narayana();
        let (num, den) = tfrac_convergent(&cs, 1).unwrap();
        assert_eq!(num, ZPoly::one());
        assert_eq!(den, ZPoly::new(vec![-tq(1, 0), lp(1)]));
    }

    #[test]
    fn determinant_form_small() {
        let sys = LbpSystem::new(CoefficientSeq::q_narayana(), 1).unwrap();
        assert_eq!(lbp_determinant_form(&sys, 0).unwrap(), ZPoly::one());
        assert_eq!(
            lbp_determinant_form(&sys, 1).unwrap(),
            ZPoly::new(vec![-tq(1, 0), lp(1)])
        );
    }
}
