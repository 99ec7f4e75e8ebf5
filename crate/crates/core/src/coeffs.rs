//! Recurrence data `b_n` (n >= 1), `c_n` (n >= 0) and the first moment `kappa`.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ring::{rat, tq, LaurentPoly};

type CoeffFn = Arc<dyn Fn(i64) -> Result<LaurentPoly> + Send + Sync>;

/// Coefficients of `P_{n+1} = (z - c_n) P_n - b_n z P_{n-1}` together with `kappa = f_1`.
///
/// Coefficients are produced on demand, so infinite families such as the
/// q-Narayana system need no truncation. Cloning is cheap.
#[derive(Clone)]
pub struct CoefficientSeq {
    name: String,
    b: CoeffFn,
    c: CoeffFn,
    kappa: LaurentPoly,
}

impl fmt::Debug for CoefficientSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoefficientSeq")
            .field("name", &self.name)
            .field("kappa", &self.kappa)
            .finish_non_exhaustive()
    }
}

impl CoefficientSeq {
    pub fn new<B, C>(name: impl Into<String>, b: B, c: C, kappa: LaurentPoly) -> Self
    where
        B: Fn(i64) -> Result<LaurentPoly> + Send + Sync + 'static,
        C: Fn(i64) -> Result<LaurentPoly> + Send + Sync + 'static,
    {
        CoefficientSeq {
            name: name.into(),
            b: Arc::new(b),
            c: Arc::new(c),
            kappa,
        }
    }

    /// `b_n = q^(2n-1)`, `c_n = t q^(2n)`, `kappa = 1`.
    pub fn q_narayana() -> Self {
        Self::new(
            "q-narayana",
            |n| Ok(tq(0, 2 * n - 1)),
            |n| Ok(tq(1, 2 * n)),
            LaurentPoly::one(),
        )
    }

    /// Finite tables: `b[0]` is `b_1`, `c[0]` is `c_0`. Indices past the end are undefined.
    pub fn from_tables(name: impl Into<String>, b: Vec<LaurentPoly>, c: Vec<LaurentPoly>, kappa: LaurentPoly) -> Self {
        let b = Arc::new(b);
        let c = Arc::new(c);
        Self::new(
            name,
            move |n| {
                usize::try_from(n - 1)
                    .ok()
                    .and_then(|i| b.get(i).cloned())
                    .ok_or(Error::UndefinedCoefficient { name: "b", index: n })
            },
            move |n| {
                usize::try_from(n)
                    .ok()
                    .and_then(|i| c.get(i).cloned())
                    .ok_or(Error::UndefinedCoefficient { name: "c", index: n })
            },
            kappa,
        )
    }

    /// Seeded random nonzero rationals `p/d` with `|p| <= 9`, `1 <= d <= 7`,
    /// for `b_1..b_len`, `c_0..c_{len-1}` and `kappa`.
    pub fn random_rational(seed: u64, len: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = || -> LaurentPoly {
            loop {
                let p: i64 = rng.gen_range(-9..=9);
                let d: i64 = rng.gen_range(1..=7);
                if p != 0 {
                    return LaurentPoly::constant(rat(p, d));
                }
            }
        };
        let kappa = draw();
        let b = (0..len).map(|_| draw()).collect();
        let c = (0..len).map(|_| draw()).collect();
        Self::from_tables(format!("random(seed={seed})"), b, c, kappa)
    }

    pub fn with_kappa(mut self, kappa: LaurentPoly) -> Self {
        self.kappa = kappa;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kappa(&self) -> &LaurentPoly {
        &self.kappa
    }

    /// `b_n` for `n >= 1`; errors if undefined or zero.
    pub fn b(&self, n: i64) -> Result<LaurentPoly> {
        if n < 1 {
            return Err(Error::UndefinedCoefficient { name: "b", index: n });
        }
        let v = (self.b)(n)?;
        if v.is_zero() {
            return Err(Error::ZeroCoefficient { name: "b", index: n });
        }
        Ok(v)
    }

    /// `c_n` for `n >= 0`; errors if undefined or zero.
    pub fn c(&self, n: i64) -> Result<LaurentPoly> {
        if n < 0 {
            return Err(Error::UndefinedCoefficient { name: "c", index: n });
        }
        let v = (self.c)(n)?;
        if v.is_zero() {
            return Err(Error::ZeroCoefficient { name: "c", index: n });
        }
        Ok(v)
    }

    /// Coefficients of the inverted family:
    /// `b~_n = b_n / (c_{n-1} c_n)`, `c~_n = 1 / c_n`, `kappa~ = kappa / c_0`.
    pub fn dual(&self) -> Result<CoefficientSeq> {
        let kappa = self.kappa.exact_div(&self.c(0)?)?;
        let (sb, sc) = (self.clone(), self.clone());
        Ok(Self::new(
            format!("dual({})", self.name),
            move |n| {
                let den = &sb.c(n - 1)? * &sb.c(n)?;
                sb.b(n)?.exact_div(&den)
            },
            move |n| LaurentPoly::one().exact_div(&sc.c(n)?),
            kappa,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn narayana_values() {
        let cs = CoefficientSeq::q_narayana();
        assert_eq!(cs.b(1).unwrap(), tq(0, 1));
        assert_eq!(cs.b(3).unwrap(), tq(0, 5));
        assert_eq!(cs.c(0).unwrap(), tq(1, 0));
        assert_eq!(cs.c(2).unwrap(), tq(1, 4));
        assert!(cs.b(0).is_err());
        assert!(cs.c(-1).is_err());
    }

    #[test]
    fn zero_coefficient_is_an_error() {
        let cs = CoefficientSeq::from_tables(
            "z",
            vec![LaurentPoly::zero()],
            vec![LaurentPoly::one()],
            LaurentPoly::one(),
        );
        assert_eq!(cs.b(1), Err(Error::ZeroCoefficient { name: "b", index: 1 }));
        assert!(matches!(cs.c(1), Err(Error::UndefinedCoefficient { .. })));
    }

    #[test]
    fn random_systems_are_reproducible() {
        let a = CoefficientSeq::random_rational(7, 5);
        let b = CoefficientSeq::random_rational(7, 5);
        for n in 1..=5 {
            assert_eq!(a.b(n).unwrap(), b.b(n).unwrap());
        }
        assert_eq!(a.kappa(), b.kappa());
    }

    #[test]
    fn dual_requires_unit_c() {
        let cs = CoefficientSeq::from_tables(
            "nonunit",
            vec![LaurentPoly::one()],
            vec![LaurentPoly::t() + LaurentPoly::q(), LaurentPoly::one()],
            LaurentPoly::t() + LaurentPoly::q(),
        );
        let d = cs.dual().unwrap();
        assert!(d.kappa().is_one());
        assert!(matches!(d.c(0), Err(Error::InexactDivision { .. })));
    }
}
