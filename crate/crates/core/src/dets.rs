//! Toeplitz moment determinants, their closed forms, Sylvester-identity
//! extension of the q-Narayana determinant table, and q-binomials.

use std::collections::BTreeMap;

use crate::coeffs::CoefficientSeq;
use crate::error::{Error, Result};
use crate::lbp::{functional_apply_shifted, LbpSystem, MomentMap};
use crate::qnarayana::{NarayanaMethod, NarayanaTable};
use crate::report::{CheckEntry, Report};
use crate::ring::{sign_pow, tq, LaurentPoly, Var};

/// Largest matrix handled by [`det`]; the minor table has `2^n` entries.
pub const MAX_DET_SIZE: usize = 16;

fn check_square(m: &[Vec<LaurentPoly>]) -> Result<usize> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Malformed("matrix is not square".into()));
    }
    if n > MAX_DET_SIZE {
        return Err(Error::SizeLimit(format!("{n}x{n} determinant (limit {MAX_DET_SIZE})")));
    }
    Ok(n)
}

/// Determinant by Laplace expansion along rows, memoized on column subsets.
///
/// `minor[mask]` is the determinant of the first `popcount(mask)` rows restricted
/// to the columns in `mask`. Division-free.
pub fn det(m: &[Vec<LaurentPoly>]) -> Result<LaurentPoly> {
    let n = check_square(m)?;
    let mut minor = vec![LaurentPoly::zero(); 1 << n];
    minor[0] = LaurentPoly::one();
    let mut masks: Vec<usize> = (1..1usize << n).collect();
    masks.sort_by_key(|x| x.count_ones());
    for mask in masks {
        let row = mask.count_ones() as usize - 1;
        let mut acc = LaurentPoly::zero();
        for (col, entry) in m[row].iter().enumerate() {
            if mask & (1 << col) == 0 || entry.is_zero() {
                continue;
            }
            let rest = mask & !(1 << col);
            if minor[rest].is_zero() {
                continue;
            }
            let above = (mask >> (col + 1)).count_ones();
            let term = entry * &minor[rest];
            if above % 2 == 0 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        minor[mask] = acc;
    }
    Ok(minor.pop().expect("full mask"))
}

/// Fraction-free Gaussian elimination with exact division.
pub fn det_bareiss(m: &[Vec<LaurentPoly>]) -> Result<LaurentPoly> {
    let n = check_square(m)?;
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    let mut a = m.to_vec();
    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(LaurentPoly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.exact_div(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// `Delta^(s)_n = det(f_{s-j+k})_{j,k<n}`.
pub fn toeplitz_det(m: &MomentMap, s: i64, n: usize) -> Result<LaurentPoly> {
    let n = n as i64;
    let rows: Vec<Vec<LaurentPoly>> = (0..n)
        .map(|j| (0..n).map(|k| m.get(s - j + k).cloned()).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    det(&rows)
}

/// Product forms of `Delta^(1)_n` (from `b, c, kappa`) and `Delta^(0)_n` (same form in the dual coefficients).
pub fn det_closed_cfs(cs: &CoefficientSeq, s: i64, n: usize) -> Result<LaurentPoly> {
    let cs = match s {
        1 => cs.clone(),
        0 => cs.dual()?,
        _ => {
            return Err(Error::OutOfRange(format!(
                "closed coefficient form needs s in {{0, 1}}, got {s}"
            )))
        }
    };
    let n = n as i64;
    let mut num = &sign_pow(n * (n - 1) / 2) * &cs.kappa().pow(n as u32);
    let mut den = LaurentPoly::one();
    for k in 1..n {
        let e = (n - k) as u32;
        num *= &cs.b(k)?.pow(e);
        den *= &cs.c(k - 1)?.pow(e);
    }
    num.exact_div(&den)
}

/// `b_n Delta1_n Delta0_n = -Delta1_{n+1} Delta0_{n-1}`,
/// `c_n Delta1_n Delta0_{n+1} = Delta1_{n+1} Delta0_n`,
/// `h_n Delta0_n = Delta0_{n+1}` for `n <= n_max`, by cross-multiplication.
pub fn cfs_in_dets_check(sys: &LbpSystem, n_max: usize) -> Result<Report> {
    let m = sys.moments();
    let cs = sys.coefficients();
    let d0: Vec<LaurentPoly> = (0..=n_max + 1).map(|n| toeplitz_det(m, 0, n)).collect::<Result<_>>()?;
    let d1: Vec<LaurentPoly> = (0..=n_max + 1).map(|n| toeplitz_det(m, 1, n)).collect::<Result<_>>()?;
    let mut report = Report::new();
    for n in 0..=n_max {
        let ni = n as i64;
        if n >= 1 {
            let lhs = &(&cs.b(ni)? * &d1[n]) * &d0[n];
            let rhs = -(&d1[n + 1] * &d0[n - 1]);
            report.push(CheckEntry::equality("b_from_dets", ni, 0, lhs, rhs));
        }
        let lhs = &(&cs.c(ni)? * &d1[n]) * &d0[n + 1];
        report.push(CheckEntry::equality("c_from_dets", ni, 0, lhs, &d1[n + 1] * &d0[n]));
        let h = functional_apply_shifted(m, sys.p(n)?, -ni)?;
        report.push(CheckEntry::equality(
            "h_from_dets",
            ni,
            0,
            &h * &d0[n],
            d0[n + 1].clone(),
        ));
    }
    Ok(report)
}

/// `det(N_{s+j-k-1})_{j,k<n}` with entries from the given construction.
pub fn narayana_det_with(s: i64, n: usize, method: NarayanaMethod) -> Result<LaurentPoly> {
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    let ni = n as i64;
    let tab = NarayanaTable::build(s - ni, s + ni - 2, method)?;
    let rows: Vec<Vec<LaurentPoly>> = (0..ni)
        .map(|j| (0..ni).map(|k| tab.get(s + j - k - 1).cloned()).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    det(&rows)
}

/// `det(N_{s+j-k-1})` with nonnegative-index entries taken from path enumeration.
pub fn narayana_det(s: i64, n: usize) -> Result<LaurentPoly> {
    narayana_det_with(s, n, NarayanaMethod::Enumeration)
}

/// Closed forms of `N^(1)_n` and `N^(0)_n`.
pub fn lemma61(s: i64, n: usize) -> Result<LaurentPoly> {
    let n = n as i64;
    let tri = n * (n - 1) / 2;
    let mono = match s {
        1 => tq(-tri, tri),
        0 => tq(-n * (n + 1) / 2, -tri),
        _ => return Err(Error::OutOfRange(format!("closed form needs s in {{0, 1}}, got {s}"))),
    };
    Ok(&sign_pow(tri) * &mono)
}

/// `phi^(s)_n = (-1)^(n(n-1)/2) t^(-(n-s)(n-s+1)/2) q^(n(n-1)(2s-1)/2)`.
pub fn phi(s: i64, n: usize) -> LaurentPoly {
    let n = n as i64;
    &sign_pow(n * (n - 1) / 2) * &tq(-(n - s) * (n - s + 1) / 2, n * (n - 1) * (2 * s - 1) / 2)
}

/// The closed form of `N^(s)_n` for `-n <= s <= n+1`.
pub fn thm62(s: i64, n: usize) -> Result<LaurentPoly> {
    let ni = n as i64;
    if s < -ni || s > ni + 1 {
        return Err(Error::OutOfRange(format!(
            "closed form needs -{n} <= s <= {}, got {s}",
            n + 1
        )));
    }
    let mut v = phi(s, n);
    if s >= 1 {
        for k in 1..s {
            v *= &(&LaurentPoly::t() + &tq(0, 2 * k - 1)).pow((s - k) as u32);
        }
    } else {
        let a = -s;
        for k in 1..=a {
            v *= &(&LaurentPoly::t() + &tq(0, -2 * k + 1)).pow((a - k + 1) as u32);
        }
    }
    Ok(v)
}

/// `[m choose n]_q` by `[m,n] = [m-1,n-1] + q^n [m-1,n]`.
pub fn qbinom(m: i64, n: i64) -> Result<LaurentPoly> {
    if n < 0 || n > m {
        return Err(Error::OutOfRange(format!(
            "q-binomial [{m} choose {n}] needs 0 <= n <= m"
        )));
    }
    let mut row = vec![LaurentPoly::one()];
    for mm in 1..=m {
        let mut next = Vec::with_capacity(mm as usize + 1);
        for k in 0..=mm {
            let mut v = LaurentPoly::zero();
            if k >= 1 {
                v += &row[k as usize - 1];
            }
            if k < mm {
                v += &(&tq(0, k) * &row[k as usize]);
            }
            next.push(v);
        }
        row = next;
    }
    Ok(row.swap_remove(n as usize))
}

/// `prod_{k=1}^{n} (1 - q^(m-k+1)) / (1 - q^k)` by exact division.
pub fn qbinom_product(m: i64, n: i64) -> Result<LaurentPoly> {
    if n < 0 || n > m {
        return Err(Error::OutOfRange(format!(
            "q-binomial [{m} choose {n}] needs 0 <= n <= m"
        )));
    }
    let one = LaurentPoly::one();
    let mut num = LaurentPoly::one();
    let mut den = LaurentPoly::one();
    for k in 1..=n {
        num *= &(&one - &tq(0, m - k + 1));
        den *= &(&one - &tq(0, k));
    }
    num.exact_div(&den)
}

/// The closed form of `N^(n+2)_n`.
pub fn det_s_np2(n: usize) -> Result<LaurentPoly> {
    let ni = n as i64;
    let mut v = &sign_pow(ni * (ni - 1) / 2) * &tq(0, ni * (ni - 1) * (2 * ni + 3) / 2);
    for k in 1..=ni {
        v *= &(&LaurentPoly::t() + &tq(0, 2 * k - 1)).pow((ni - k + 1) as u32);
    }
    let mut sum = LaurentPoly::zero();
    for l in 0..=ni {
        let qb = qbinom(ni + 1, l)?.subst_power(Var::Q, 2);
        sum += &(&tq(ni - l, l * l) * &qb);
    }
    Ok(&v * &sum)
}

/// Values of `N^(s)_n`, seeded from the closed forms on rows `s = 0, 1` and
/// extended with
/// `N^(s)_{n+1} N^(s)_{n-1} - (N^(s)_n)^2 + N^(s+1)_n N^(s-1)_n = 0`.
#[derive(Debug, Clone, Default)]
pub struct DetTable {
    values: BTreeMap<(i64, i64), LaurentPoly>,
}

impl DetTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// The stored value, if computed.
    pub fn value(&self, s: i64, n: i64) -> Option<&LaurentPoly> {
        self.values.get(&(s, n))
    }

    pub fn entries(&self) -> impl Iterator<Item = ((i64, i64), &LaurentPoly)> {
        self.values.iter().map(|(k, v)| (*k, v))
    }

    /// `N^(s)_n`, computing and storing whatever the identity needs.
    pub fn sylvester_extend(&mut self, s: i64, n: i64) -> Result<LaurentPoly> {
        if let Some(v) = self.values.get(&(s, n)) {
            return Ok(v.clone());
        }
        let v = match (s, n) {
            (_, n) if n < -1 => return Err(Error::OutOfRange(format!("n = {n}"))),
            (_, -1) => LaurentPoly::zero(),
            (_, 0) => LaurentPoly::one(),
            (0 | 1, n) => lemma61(s, n as usize)?,
            (s, n) => {
                // Row s is solved from the identity centred on the row next to it, towards {0, 1}.
                let (mid, other) = if s >= 2 { (s - 1, s - 2) } else { (s + 1, s + 2) };
                let a = self.sylvester_extend(mid, n)?;
                let up = self.sylvester_extend(mid, n + 1)?;
                let down = self.sylvester_extend(mid, n - 1)?;
                let divisor = self.sylvester_extend(other, n)?;
                if divisor.is_zero() {
                    return Err(Error::ZeroDivisor(format!("N^({other})_{n} vanishes")));
                }
                (&(&a * &a) - &(&up * &down)).exact_div(&divisor)?
            }
        };
        self.values.insert((s, n), v.clone());
        Ok(v)
    }

    /// The identity at every stored `(s, n)` whose neighbours are stored too.
    pub fn sylvester_check(&self) -> Report {
        let mut report = Report::new();
        for (&(s, n), v) in &self.values {
            let get = |s, n| self.values.get(&(s, n));
            if let (Some(up), Some(down), Some(l), Some(r)) =
                (get(s, n + 1), get(s, n - 1), get(s + 1, n), get(s - 1, n))
            {
                let lhs = &(&(up * down) - &(v * v)) + &(l * r);
                report.push(CheckEntry::equality("sylvester", n, s, lhs, LaurentPoly::zero()));
            }
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qnarayana::narayana_rec;

    fn lp(v: i64) -> LaurentPoly {
        LaurentPoly::from_int(v)
    }

    #[test]
    fn small_determinants() {
        assert_eq!(det(&[]).unwrap(), lp(1));
        let m = vec![vec![lp(2), lp(3)], vec![lp(5), lp(7)]];
        assert_eq!(det(&m).unwrap(), lp(-1));
        let m3 = vec![
            vec![lp(2), lp(0), lp(1)],
            vec![lp(1), lp(3), lp(2)],
            vec![lp(1), lp(1), lp(2)],
        ];
        assert_eq!(det(&m3).unwrap(), lp(6));
        assert_eq!(det_bareiss(&m3).unwrap(), lp(6));
    }

    #[test]
    fn bareiss_handles_zero_pivot() {
        let m = vec![vec![lp(0), lp(1)], vec![lp(1), lp(0)]];
        assert_eq!(det_bareiss(&m).unwrap(), lp(-1));
        assert_eq!(det(&m).unwrap(), lp(-1));
    }

    #[test]
    fn qbinom_examples() {
        assert_eq!(qbinom(2, 1).unwrap(), &lp(1) + &tq(0, 1));
        assert_eq!(
            qbinom(4, 2).unwrap(),
            LaurentPoly::from_terms([(1, 0, 0), (1, 0, 1), (2, 0, 2), (1, 0, 3), (1, 0, 4)])
        );
        assert_eq!(qbinom(5, 0).unwrap(), lp(1));
        assert!(qbinom(2, 3).is_err());
    }

    #[test]
    fn s_np2_small() {
        assert_eq!(det_s_np2(0).unwrap(), lp(1));
        assert_eq!(det_s_np2(1).unwrap(), narayana_rec(2));
    }

    #[test]
    fn closed_forms_small() {
        assert_eq!(lemma61(1, 2).unwrap(), -tq(-1, 1));
        assert_eq!(lemma61(0, 2).unwrap(), -tq(-3, -1));
        assert_eq!(lemma61(1, 0).unwrap(), lp(1));
    }

    #[test]
    fn closed_form_range() {
        assert!(thm62(4, 2).is_err());
        assert!(thm62(-3, 2).is_err());
        assert_eq!(thm62(1, 3).unwrap(), lemma61(1, 3).unwrap());
        assert_eq!(thm62(0, 3).unwrap(), lemma61(0, 3).unwrap());
    }

    #[test]
    fn table_extends_from_seed_rows() {
        let mut tab = DetTable::new();
        assert_eq!(tab.sylvester_extend(3, 1).unwrap(), narayana_rec(2));
        assert_eq!(tab.sylvester_extend(2, 2).unwrap(), narayana_det(2, 2).unwrap());
        assert!(tab.sylvester_check().all_pass());
    }
}
