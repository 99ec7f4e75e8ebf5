//! q-Narayana polynomials `N_k(t, q)`: by path enumeration, by recurrence, at
//! negative index, and their one-variable specializations.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::paths::{for_each_path, path_stats, SchroederPath, Step, MAX_PATH_K};
use crate::ring::{tq, LaurentPoly, Var};

/// Which construction produces `N_k` for `k >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum NarayanaMethod {
    Enumeration,
    #[default]
    Recurrence,
}

/// Sums a per-path monomial over `S_k` without materializing the path list.
fn sum_over_paths(k: usize, term: impl Fn(&SchroederPath) -> LaurentPoly) -> Result<LaurentPoly> {
    if k > MAX_PATH_K {
        return Err(Error::SizeLimit(format!(
            "S_{k} has too many paths to enumerate (limit k <= {MAX_PATH_K})"
        )));
    }
    let mut acc = LaurentPoly::zero();
    let mut err = None;
    for_each_path(
        (0, 0),
        (2 * k as i64, 0),
        0,
        |_| false,
        |steps: &[Step]| match SchroederPath::from_origin(steps.to_vec()) {
            Ok(p) => acc += &term(&p),
            Err(e) => err = Some(e),
        },
    );
    match err {
        Some(e) => Err(e),
        None => Ok(acc),
    }
}

/// `sum over P in S_k of t^level(P) q^area(P)`.
pub fn narayana_enum(k: usize) -> Result<LaurentPoly> {
    sum_over_paths(k, |p| {
        let s = path_stats(p);
        tq(s.level, s.area)
    })
}

/// `N_0..N_k` from `N_k = t N_{k-1} + sum_{j<k} q^(2j+1) N_j N_{k-j-1}`.
pub fn narayana_rec_table(k: usize) -> Vec<LaurentPoly> {
    let mut out: Vec<LaurentPoly> = vec![LaurentPoly::one()];
    for m in 1..=k {
        let mut v = &LaurentPoly::t() * &out[m - 1];
        for j in 0..m {
            v += &(&tq(0, 2 * j as i64 + 1) * &(&out[j] * &out[m - j - 1]));
        }
        out.push(v);
    }
    out
}

pub fn narayana_rec(k: usize) -> LaurentPoly {
    narayana_rec_table(k).pop().expect("table includes N_0")
}

/// `N_m = t^(2m+1) N_{-m-1}(t, 1/q)` for `m <= -1`, the value for which `N_m = f_{m+1}`.
pub fn narayana_neg(m: i64) -> Result<LaurentPoly> {
    narayana_neg_with(m, NarayanaMethod::Recurrence)
}

pub fn narayana_neg_with(m: i64, method: NarayanaMethod) -> Result<LaurentPoly> {
    if m > -1 {
        return Err(Error::OutOfRange(format!("negative-index N requires m <= -1, got {m}")));
    }
    let base = narayana_nonneg((-m - 1) as usize, method)?;
    Ok(base.subst_inverse(Var::Q).shift(2 * m + 1, 0))
}

fn narayana_nonneg(k: usize, method: NarayanaMethod) -> Result<LaurentPoly> {
    match method {
        NarayanaMethod::Enumeration => narayana_enum(k),
        NarayanaMethod::Recurrence => Ok(narayana_rec(k)),
    }
}

/// `N_k` for any integer `k`.
pub fn narayana(k: i64, method: NarayanaMethod) -> Result<LaurentPoly> {
    if k >= 0 {
        narayana_nonneg(k as usize, method)
    } else {
        narayana_neg_with(k, method)
    }
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

/// `L_k(t) = sum_{j=1}^{k} (1/k) C(k,j) C(k,j-1) (1+t)^j`, with `L_0 = 1`.
pub fn classic_narayana(k: usize) -> LaurentPoly {
    if k == 0 {
        return LaurentPoly::one();
    }
    let one_plus_t = &LaurentPoly::one() + &LaurentPoly::t();
    let k64 = k as u64;
    (1..=k64)
        .map(|j| {
            let c = BigRational::new(binomial(k64, j) * binomial(k64, j - 1), BigInt::from(k64));
            one_plus_t.pow(j as u32).scale(&c)
        })
        .sum()
}

/// `A_k(q) = sum over P in S_k of q^area(P)`.
pub fn area_poly(k: usize) -> Result<LaurentPoly> {
    sum_over_paths(k, |p| tq(0, path_stats(p).area))
}

/// `N_k` for every `k` in `[kmin, kmax]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NarayanaTable {
    kmin: i64,
    values: Vec<LaurentPoly>,
}

impl NarayanaTable {
    pub fn build(kmin: i64, kmax: i64, method: NarayanaMethod) -> Result<Self> {
        if kmin > kmax {
            return Err(Error::OutOfRange(format!("empty window [{kmin}, {kmax}]")));
        }
        let rec = match method {
            NarayanaMethod::Recurrence => {
                let top = kmax.max(-kmin - 1).max(0) as usize;
                Some(narayana_rec_table(top))
            }
            NarayanaMethod::Enumeration => None,
        };
        let values = (kmin..=kmax)
            .map(|k| match &rec {
                Some(tab) if k >= 0 => Ok(tab[k as usize].clone()),
                Some(tab) => Ok(tab[(-k - 1) as usize].subst_inverse(Var::Q).shift(2 * k + 1, 0)),
                None => narayana(k, method),
            })
            .collect::<Result<_>>()?;
        Ok(NarayanaTable { kmin, values })
    }

    pub fn window(&self) -> (i64, i64) {
        (self.kmin, self.kmin + self.values.len() as i64 - 1)
    }

    pub fn get(&self, k: i64) -> Result<&LaurentPoly> {
        usize::try_from(k - self.kmin)
            .ok()
            .and_then(|i| self.values.get(i))
            .ok_or(Error::WindowExceeded(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n2() -> LaurentPoly {
        LaurentPoly::from_terms([(1, 2, 0), (2, 1, 1), (1, 1, 3), (1, 0, 2), (1, 0, 4)])
    }

    #[test]
    fn small_values() {
        assert_eq!(narayana_enum(0).unwrap(), LaurentPoly::one());
        assert_eq!(narayana_enum(1).unwrap(), &tq(1, 0) + &tq(0, 1));
        assert_eq!(narayana_enum(2).unwrap(), n2());
        assert_eq!(narayana_rec(2), n2());
    }

    #[test]
    fn n3_matches_listed_expansion() {
        let n3 = LaurentPoly::from_terms([
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
        ]);
        assert_eq!(narayana_enum(3).unwrap(), n3);
        assert_eq!(narayana_rec(3), n3);
    }

    #[test]
    fn negative_indices() {
        assert_eq!(narayana_neg(-1).unwrap(), tq(-1, 0));
        assert_eq!(narayana_neg(-2).unwrap(), &tq(-2, 0) + &tq(-3, -1));
        assert_eq!(narayana_neg(-3).unwrap(), n2().subst_inverse(Var::Q).shift(-5, 0));
        assert!(narayana_neg(0).is_err());
    }

    #[test]
    fn classic_values() {
        assert_eq!(classic_narayana(0), LaurentPoly::one());
        assert_eq!(classic_narayana(1), &LaurentPoly::one() + &LaurentPoly::t());
        assert_eq!(
            classic_narayana(2),
            LaurentPoly::from_terms([(1, 2, 0), (3, 1, 0), (2, 0, 0)])
        );
    }

    #[test]
    fn table_lookup() {
        let tab = NarayanaTable::build(-2, 2, NarayanaMethod::Recurrence).unwrap();
        assert_eq!(tab.get(2).unwrap(), &n2());
        assert_eq!(tab.get(-2).unwrap(), &narayana_neg(-2).unwrap());
        assert_eq!(tab.get(3), Err(Error::WindowExceeded(3)));
        let by_enum = NarayanaTable::build(-2, 2, NarayanaMethod::Enumeration).unwrap();
        assert_eq!(tab, by_enum);
    }
}
