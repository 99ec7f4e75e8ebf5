//! Bivariate Laurent polynomials in `t` and `q` over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent pair `(e_t, e_q)`. Ordered lexicographically.
pub type Exponent = (i64, i64);

/// One of the two ring indeterminates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    T,
    Q,
}

/// An exact element of `Q[t, 1/t, q, 1/q]`.
///
/// Terms are kept in a `BTreeMap` keyed by exponent pair, so iteration order is
/// the canonical lexicographic order on `(e_t, e_q)`. No stored coefficient is
/// ever zero; the zero polynomial is the empty map.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Exponent, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: BigRational, et: i64, eq: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((et, eq), c);
        }
        LaurentPoly { terms }
    }

    /// `coeff * t^et * q^eq` with an integer coefficient.
    pub fn term(coeff: i64, et: i64, eq: i64) -> Self {
        Self::monomial(BigRational::from_integer(BigInt::from(coeff)), et, eq)
    }

    pub fn t() -> Self {
        Self::term(1, 1, 0)
    }

    pub fn q() -> Self {
        Self::term(1, 0, 1)
    }

    /// Builds a polynomial from `(coeff, e_t, e_q)` triples; repeated exponents add up.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, i64, i64)>,
    {
        let mut p = LaurentPoly::zero();
        for (c, et, eq) in terms {
            p.add_term((et, eq), BigRational::from_integer(BigInt::from(c)));
        }
        p
    }

    pub(crate) fn from_map(mut terms: BTreeMap<Exponent, BigRational>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        LaurentPoly { terms }
    }

    fn add_term(&mut self, e: Exponent, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical `(e_t, e_q)` order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &BigRational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, et: i64, eq: i64) -> BigRational {
        self.terms.get(&(et, eq)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The constant term (coefficient of `t^0 q^0`).
    pub fn constant_term(&self) -> BigRational {
        self.coeff(0, 0)
    }

    /// A single term with nonzero coefficient is invertible in the Laurent ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    /// `true` when every coefficient is an integer.
    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// `true` when every coefficient is a nonnegative integer and no exponent is negative.
    pub fn is_counting_poly(&self) -> bool {
        self.terms
            .iter()
            .all(|(&(et, eq), c)| et >= 0 && eq >= 0 && c.is_integer() && !c.is_negative())
    }

    pub fn inverse_unit(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NonUnit(self.to_string()));
        }
        let (&(et, eq), c) = self.terms.iter().next().expect("unit has one term");
        Ok(Self::monomial(c.recip(), -et, -eq))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiplies by `t^dt q^dq`.
    pub fn shift(&self, dt: i64, dq: i64) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(et, eq), c)| ((et + dt, eq + dq), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        if self.is_unit() {
            let (&(et, eq), c) = self.terms.iter().next().unwrap();
            let e = exp as i64;
            return Self::monomial(Pow::pow(c, exp), et * e, eq * e);
        }
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power allowing negative exponents for units.
    pub fn powi(&self, exp: i64) -> Result<Self> {
        if exp >= 0 {
            Ok(self.pow(exp as u32))
        } else {
            Ok(self.inverse_unit()?.pow((-exp) as u32))
        }
    }

    /// Negates every exponent of `var` (the substitution `var -> 1/var`).
    pub fn subst_inverse(&self, var: Var) -> Self {
        self.map_exponents(|(et, eq)| match var {
            Var::T => (-et, eq),
            Var::Q => (et, -eq),
        })
    }

    /// The substitution `var -> var^k` for a nonzero integer `k`.
    pub fn subst_power(&self, var: Var, k: i64) -> Self {
        self.map_exponents(|(et, eq)| match var {
            Var::T => (et * k, eq),
            Var::Q => (et, eq * k),
        })
    }

    fn map_exponents<F: Fn(Exponent) -> Exponent>(&self, f: F) -> Self {
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.terms {
            out.add_term(f(*e), c.clone());
        }
        out
    }

    /// Evaluates at `t = t0`, `q = q0`.
    pub fn eval(&self, t0: &BigRational, q0: &BigRational) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (&(et, eq), c) in &self.terms {
            acc += c * rat_pow(t0, et, "t")? * rat_pow(q0, eq, "q")?;
        }
        Ok(acc)
    }

    /// Specializes a single variable, leaving the other symbolic.
    pub fn eval_var(&self, var: Var, value: &BigRational) -> Result<Self> {
        let mut out = LaurentPoly::zero();
        for (&(et, eq), c) in &self.terms {
            let (e, name, keep) = match var {
                Var::T => (et, "t", (0, eq)),
                Var::Q => (eq, "q", (et, 0)),
            };
            out.add_term(keep, c * rat_pow(value, e, name)?);
        }
        Ok(out)
    }

    /// Inclusive exponent range of `var` over all terms; `None` for zero.
    pub fn degree_range(&self, var: Var) -> Option<(i64, i64)> {
        let pick = |e: &Exponent| match var {
            Var::T => e.0,
            Var::Q => e.1,
        };
        let lo = self.terms.keys().map(pick).min()?;
        let hi = self.terms.keys().map(pick).max()?;
        Some((lo, hi))
    }

    fn leading(&self) -> Option<(Exponent, &BigRational)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    /// Exact quotient `self / divisor` in the Laurent ring.
    ///
    /// Lexicographic leading-term elimination. Exponents of an exact quotient are
    /// confined to the box given by subtracting the divisor's per-variable degree
    /// ranges from the dividend's, which bounds the loop for inexact inputs.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::ZeroDivisor(format!("({self}) / 0")));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if divisor.is_unit() {
            return Ok(self * &divisor.inverse_unit()?);
        }
        let inexact = || Error::InexactDivision {
            dividend: self.to_string(),
            divisor: divisor.to_string(),
        };
        let (at, bt) = (
            self.degree_range(Var::T).unwrap(),
            divisor.degree_range(Var::T).unwrap(),
        );
        let (aq, bq) = (
            self.degree_range(Var::Q).unwrap(),
            divisor.degree_range(Var::Q).unwrap(),
        );
        let t_box = (at.0 - bt.0, at.1 - bt.1);
        let q_box = (aq.0 - bq.0, aq.1 - bq.1);
        if t_box.0 > t_box.1 || q_box.0 > q_box.1 {
            return Err(inexact());
        }
        let max_steps = ((t_box.1 - t_box.0 + 1) * (q_box.1 - q_box.0 + 1)) as usize;

        let (lead_e, lead_c) = divisor.leading().unwrap();
        let lead_c = lead_c.clone();
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        for _ in 0..max_steps {
            let Some((re, rc)) = rem.leading() else {
                return Ok(quot);
            };
            let e = (re.0 - lead_e.0, re.1 - lead_e.1);
            if e.0 < t_box.0 || e.0 > t_box.1 || e.1 < q_box.0 || e.1 > q_box.1 {
                return Err(inexact());
            }
            let c = rc / &lead_c;
            let step = LaurentPoly::monomial(c.clone(), e.0, e.1);
            rem -= &(divisor * &step);
            quot.add_term(e, c);
        }
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(inexact())
        }
    }
}

fn rat_pow(base: &BigRational, e: i64, name: &str) -> Result<BigRational> {
    if e == 0 {
        return Ok(BigRational::one());
    }
    if base.is_zero() {
        if e < 0 {
            return Err(Error::DivisionByZero(format!("{name}^{e} at {name}=0")));
        }
        return Ok(BigRational::zero());
    }
    let p = Pow::pow(base, e.unsigned_abs() as u32);
    Ok(if e < 0 { p.recip() } else { p })
}

impl fmt::Display for LaurentPoly {
    /// Highest terms first, e.g. `t^2 + 2*t*q + q^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&(et, eq), c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || (et == 0 && eq == 0) {
                factors.push(mag.to_string());
            }
            for (name, e) in [("t", et), ("q", eq)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::from_int(c)
    }
}

impl From<BigRational> for LaurentPoly {
    fn from(c: BigRational) -> Self {
        LaurentPoly::constant(c)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self * rhs;
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut acc: BTreeMap<Exponent, BigRational> = BTreeMap::new();
        for (&(a0, a1), ca) in &self.terms {
            for (&(b0, b1), cb) in &rhs.terms {
                let e = (a0 + b0, a1 + b1);
                let prod = ca * cb;
                acc.entry(e).and_modify(|v| *v += &prod).or_insert(prod);
            }
        }
        LaurentPoly::from_map(acc)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        *self += &rhs;
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        let mut acc = LaurentPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        let mut acc = LaurentPoly::one();
        for p in iter {
            acc = &acc * &p;
        }
        acc
    }
}

/// Sign `(-1)^e`.
pub fn sign_pow(e: i64) -> LaurentPoly {
    if e.rem_euclid(2) == 0 {
        LaurentPoly::one()
    } else {
        LaurentPoly::from_int(-1)
    }
}

/// `coeff * t^et * q^eq`; convenience for formulas.
pub fn tq(et: i64, eq: i64) -> LaurentPoly {
    LaurentPoly::term(1, et, eq)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn arithmetic_examples() {
        let tq_sum = LaurentPoly::t() + LaurentPoly::q();
        assert_eq!(&tq_sum + &LaurentPoly::zero(), tq_sum);
        let diff = LaurentPoly::t() - LaurentPoly::q();
        assert_eq!(&tq_sum * &diff, LaurentPoly::from_terms([(1, 2, 0), (-1, 0, 2)]));
        assert_eq!(
            tq_sum.pow(2),
            LaurentPoly::from_terms([(1, 2, 0), (2, 1, 1), (1, 0, 2)])
        );
    }

    #[test]
    fn zero_is_canonical() {
        let p = LaurentPoly::t() - LaurentPoly::t();
        assert!(p.is_zero());
        assert_eq!(p, LaurentPoly::zero());
        assert_eq!(p.to_string(), "0");
    }

    #[test]
    fn subst_inverse_examples() {
        let p = LaurentPoly::t() + LaurentPoly::q();
        assert_eq!(
            p.subst_inverse(Var::Q),
            LaurentPoly::from_terms([(1, 1, 0), (1, 0, -1)])
        );
        assert_eq!(p.subst_inverse(Var::Q).subst_inverse(Var::Q), p);
        let n2 = LaurentPoly::from_terms([(1, 2, 0), (2, 1, 1), (1, 1, 3), (1, 0, 2), (1, 0, 4)]);
        assert_eq!(
            n2.subst_inverse(Var::Q),
            LaurentPoly::from_terms([(1, 2, 0), (2, 1, -1), (1, 1, -3), (1, 0, -2), (1, 0, -4)])
        );
    }

    #[test]
    fn eval_examples() {
        let n2 = LaurentPoly::from_terms([(1, 2, 0), (2, 1, 1), (1, 1, 3), (1, 0, 2), (1, 0, 4)]);
        assert_eq!(n2.eval(&rat(1, 1), &rat(1, 1)).unwrap(), rat(6, 1));
        assert_eq!(n2.eval(&rat(0, 1), &rat(1, 1)).unwrap(), rat(2, 1));
        let pole = LaurentPoly::term(1, 1, -1);
        assert!(matches!(
            pole.eval(&rat(1, 1), &rat(0, 1)),
            Err(Error::DivisionByZero(_))
        ));
        assert_eq!(
            LaurentPoly::term(3, -2, 1).eval(&rat(2, 1), &rat(1, 3)).unwrap(),
            rat(1, 4)
        );
    }

    #[test]
    fn exact_div_examples() {
        let t = LaurentPoly::t();
        let q = LaurentPoly::q();
        let num = &t.pow(2) - &q.pow(2);
        assert_eq!(num.exact_div(&(&t - &q)).unwrap(), &t + &q);
        let one = LaurentPoly::one();
        assert_eq!(
            (&one - &q.pow(4)).exact_div(&(&one - &q.pow(2))).unwrap(),
            &one + &q.pow(2)
        );
        assert!(matches!(
            (&t + &q).exact_div(&(&t - &q)),
            Err(Error::InexactDivision { .. })
        ));
        assert!(matches!(t.exact_div(&LaurentPoly::zero()), Err(Error::ZeroDivisor(_))));
    }

    #[test]
    fn exact_div_with_negative_exponents() {
        let a = LaurentPoly::from_terms([(2, -1, 3), (-1, 2, -2), (5, 0, 0)]);
        let b = LaurentPoly::from_terms([(1, 1, 1), (-3, -2, 0)]);
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&b).unwrap(), a);
        assert_eq!(prod.exact_div(&a).unwrap(), b);
    }

    #[test]
    fn display_is_readable() {
        let p = LaurentPoly::from_terms([(1, 2, 0), (-2, 1, 1), (1, 0, -1)]);
        assert_eq!(p.to_string(), "t^2 - 2*t*q + q^-1");
        assert_eq!(LaurentPoly::from_int(-3).to_string(), "-3");
    }

    #[test]
    fn unit_inverse() {
        let u = LaurentPoly::monomial(rat(2, 3), 1, -2);
        assert!((&u * &u.inverse_unit().unwrap()).is_one());
        assert!((LaurentPoly::t() + LaurentPoly::q()).inverse_unit().is_err());
    }
}
