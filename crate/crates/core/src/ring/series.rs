//! Truncated expansions of rational functions in `z` at `z = 0` and `z = infinity`.

use serde::Serialize;

use super::laurent::LaurentPoly;
use super::zpoly::ZPoly;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Point {
    Zero,
    Infinity,
}

/// A series truncated at order `M` (inclusive).
///
/// At zero, `coeffs[j]` is the coefficient of `z^j`; at infinity it is the
/// coefficient of `z^-j`. Either way there are exactly `M + 1` coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalSeries {
    point: Point,
    coeffs: Vec<LaurentPoly>,
}

impl FormalSeries {
    pub fn new(point: Point, coeffs: Vec<LaurentPoly>) -> Self {
        assert!(!coeffs.is_empty(), "a series keeps at least the order-0 coefficient");
        FormalSeries { point, coeffs }
    }

    pub fn point(&self) -> Point {
        self.point
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    /// Coefficient of `z^j` (at zero) or `z^-j` (at infinity).
    pub fn coeff(&self, j: usize) -> &LaurentPoly {
        &self.coeffs[j]
    }

    /// First index at which the two series differ, if any within the common order.
    pub fn first_difference(&self, other: &FormalSeries) -> Option<usize> {
        self.coeffs.iter().zip(&other.coeffs).position(|(a, b)| a != b)
    }
}

/// Expands `num / den` at `point` through `order`.
///
/// At zero the constant term of `den` must be a unit; at infinity its leading
/// coefficient must be, and `num` may not have larger degree than `den`.
pub fn series_expand(num: &ZPoly, den: &ZPoly, point: Point, order: usize) -> Result<FormalSeries> {
    let Some(d) = den.degree() else {
        return Err(Error::ZeroDivisor("series denominator is zero".into()));
    };
    let mut out: Vec<LaurentPoly> = Vec::with_capacity(order + 1);
    match point {
        Point::Zero => {
            let inv = den.at_zero().inverse_unit()?;
            for j in 0..=order {
                let mut acc = num.coeff(j);
                for i in 1..=j.min(d) {
                    acc -= &(&den.coeff(i) * &out[j - i]);
                }
                out.push(&acc * &inv);
            }
        }
        Point::Infinity => {
            if num.degree().is_some_and(|n| n > d) {
                return Err(Error::Malformed(format!(
                    "numerator degree exceeds denominator degree {d} at infinity"
                )));
            }
            let inv = den.leading().unwrap().inverse_unit()?;
            // den(z) * sum_j a_j z^-j = num(z); match the z^(d-j) coefficient.
            for j in 0..=order {
                let mut acc = if j <= d { num.coeff(d - j) } else { LaurentPoly::zero() };
                for i in (0..d).rev() {
                    let back = d - i;
                    if back > j {
                        break;
                    }
                    acc -= &(&den.coeff(i) * &out[j - back]);
                }
                out.push(&acc * &inv);
            }
        }
    }
    Ok(FormalSeries::new(point, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lin(c0: &LaurentPoly) -> ZPoly {
        &ZPoly::z() - &ZPoly::constant(c0.clone())
    }

    #[test]
    fn geometric_series_at_infinity() {
        let c0 = LaurentPoly::term(1, 1, 2);
        let s = series_expand(&ZPoly::one(), &lin(&c0), Point::Infinity, 3).unwrap();
        assert_eq!(
            s.coeffs(),
            &[LaurentPoly::zero(), LaurentPoly::one(), c0.clone(), c0.pow(2)]
        );
    }

    #[test]
    fn long_division_at_zero() {
        let c0 = LaurentPoly::term(1, 1, 0);
        let kappa = LaurentPoly::term(3, 0, 1);
        let s = series_expand(&ZPoly::constant(kappa.clone()), &lin(&c0), Point::Zero, 1).unwrap();
        let inv = c0.inverse_unit().unwrap();
        assert_eq!(s.coeff(0), &-(&kappa * &inv));
        assert_eq!(s.coeff(1), &-(&kappa * &inv.pow(2)));
    }

    #[test]
    fn non_unit_divisor_is_rejected() {
        let c0 = LaurentPoly::t() + LaurentPoly::q();
        assert!(matches!(
            series_expand(&ZPoly::one(), &lin(&c0), Point::Zero, 2),
            Err(Error::NonUnit(_))
        ));
        let den = ZPoly::new(vec![LaurentPoly::one(), c0]);
        assert!(series_expand(&ZPoly::one(), &den, Point::Infinity, 2).is_err());
    }

    #[test]
    fn numerator_of_larger_degree_at_infinity() {
        let num = &ZPoly::z() * &ZPoly::z();
        assert!(series_expand(&num, &ZPoly::z(), Point::Infinity, 2).is_err());
    }
}
