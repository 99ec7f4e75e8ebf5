//! Symbolic recurrence coefficients by Kronecker substitution.
//!
//! Each symbol `kappa, b_1..b_4, c_0..c_3` is mapped to `t^(16^i)`. The map is a
//! ring homomorphism into `Q[t, 1/t]`, and it is injective on Laurent
//! polynomials whose per-symbol exponents lie in `[-8, 7]`, so identities among
//! such expressions can be checked exactly inside [`LaurentPoly`] and decoded
//! back to monomials in the original symbols.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::coeffs::CoefficientSeq;
use crate::error::{Error, Result};
use crate::ring::{parse_rational, LaurentPoly};

const BASE: i64 = 16;
const HALF: i64 = BASE / 2;

/// Symbol table `k` (kappa), `b1..b{nb}`, `c0..c{nc-1}`.
#[derive(Debug, Clone)]
pub struct SymbolicSystem {
    names: Vec<String>,
}

/// A decoded monomial: coefficient and one exponent per symbol.
pub type Monomial = (BigRational, Vec<i64>);

impl Default for SymbolicSystem {
    fn default() -> Self {
        Self::new(4, 4)
    }
}

impl SymbolicSystem {
    pub fn new(nb: usize, nc: usize) -> Self {
        let mut names = vec!["k".to_string()];
        names.extend((1..=nb).map(|i| format!("b{i}")));
        names.extend((0..nc).map(|i| format!("c{i}")));
        assert!(names.len() <= 15, "exponent code would overflow i64");
        SymbolicSystem { names }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    fn index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::Parse(format!("unknown symbol {name:?}")))
    }

    fn code(i: usize) -> i64 {
        BASE.pow(i as u32)
    }

    pub fn symbol(&self, name: &str) -> Result<LaurentPoly> {
        Ok(LaurentPoly::term(1, Self::code(self.index(name)?), 0))
    }

    /// The coefficient system whose `b_n`, `c_n`, `kappa` are the bare symbols.
    pub fn coefficient_seq(&self) -> CoefficientSeq {
        let (sb, sc) = (self.clone(), self.clone());
        CoefficientSeq::new(
            "symbolic",
            move |n| {
                sb.symbol(&format!("b{n}"))
                    .map_err(|_| Error::UndefinedCoefficient { name: "b", index: n })
            },
            move |n| {
                sc.symbol(&format!("c{n}"))
                    .map_err(|_| Error::UndefinedCoefficient { name: "c", index: n })
            },
            self.symbol("k").expect("kappa is always defined"),
        )
    }

    /// Parses sums of monomials such as `-k^2*b1*c0 + 2*b2^-1`.
    pub fn parse(&self, expr: &str) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        let cleaned: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut prev: Option<char> = None;
        for ch in cleaned.chars() {
            if (ch == '+' || ch == '-') && prev.is_some_and(|p| p != '^') {
                chunks.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '+' || ch == '-') && prev.is_none() {
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
            prev = Some(ch);
        }
        chunks.push((neg, cur));
        for (neg, mono) in chunks {
            if mono.is_empty() {
                return Err(Error::Parse(format!("empty term in {expr:?}")));
            }
            let mut term = LaurentPoly::one();
            for factor in mono.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (
                        b,
                        e.parse::<i64>()
                            .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?,
                    ),
                    None => (factor, 1),
                };
                let f = if base.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                    LaurentPoly::constant(parse_rational(base).map_err(Error::Parse)?)
                } else {
                    self.symbol(base)?
                };
                term = &term * &f.powi(exp)?;
            }
            if neg {
                term = -term;
            }
            out += &term;
        }
        Ok(out)
    }

    /// Splits an encoded polynomial back into symbol monomials.
    pub fn decode(&self, p: &LaurentPoly) -> Result<Vec<Monomial>> {
        let mut out = Vec::new();
        for ((et, eq), c) in p.terms() {
            if eq != 0 {
                return Err(Error::Malformed(format!("q^{eq} in a symbolic expression")));
            }
            let mut rest = et;
            let mut exps = Vec::with_capacity(self.names.len());
            for _ in 0..self.names.len() {
                let mut d = rest.rem_euclid(BASE);
                if d >= HALF {
                    d -= BASE;
                }
                exps.push(d);
                rest = (rest - d) / BASE;
            }
            if rest != 0 {
                return Err(Error::Malformed(format!("t^{et} is outside the symbol code range")));
            }
            out.push((c.clone(), exps));
        }
        Ok(out)
    }

    /// Human-readable rendering of an encoded polynomial, monomials sorted.
    pub fn render(&self, p: &LaurentPoly) -> Result<String> {
        let mut monos: BTreeMap<String, BigRational> = BTreeMap::new();
        for (c, exps) in self.decode(p)? {
            let factors: Vec<String> = self
                .names
                .iter()
                .zip(&exps)
                .filter(|(_, &e)| e != 0)
                .map(|(n, &e)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
                .collect();
            monos.insert(factors.join("*"), c);
        }
        if monos.is_empty() {
            return Ok("0".into());
        }
        let parts: Vec<String> = monos
            .into_iter()
            .map(|(m, c)| {
                let m = if m.is_empty() { "1".to_string() } else { m };
                if c.is_one() {
                    m
                } else if (-c.clone()).is_one() {
                    format!("-{m}")
                } else if c.is_negative() {
                    format!("-{}*{m}", -c)
                } else {
                    format!("{c}*{m}")
                }
            })
            .collect();
        Ok(parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_decode_round_trip() {
        let s = SymbolicSystem::default();
        let p = s.parse("-k^2*b1*c0*c1^2 + 2*b2^-1*c3 - 3").unwrap();
        let monos = s.decode(&p).unwrap();
        assert_eq!(monos.len(), 3);
        let rendered = s.render(&p).unwrap();
        assert_eq!(s.parse(&rendered.replace(" + -", " - ")).unwrap(), p);
    }

    #[test]
    fn symbols_multiply_like_monomials() {
        let s = SymbolicSystem::default();
        let lhs = &s.parse("b1 + c0").unwrap() * &s.parse("b1 - c0").unwrap();
        assert_eq!(lhs, s.parse("b1^2 - c0^2").unwrap());
    }

    #[test]
    fn unknown_symbol_is_an_error() {
        let s = SymbolicSystem::new(2, 2);
        assert!(s.parse("b3").is_err());
        assert!(matches!(
            s.coefficient_seq().b(3),
            Err(Error::UndefinedCoefficient { name: "b", index: 3 })
        ));
    }
}
