//! `{"terms":[{"t":int,"q":int,"coeff":"n/d"}]}` encoding of [`LaurentPoly`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use super::laurent::LaurentPoly;

#[derive(Serialize, Deserialize)]
struct TermRepr {
    t: i64,
    q: i64,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    terms: Vec<TermRepr>,
}

/// Always `numerator/denominator`, denominator positive and reduced.
pub fn format_rational(c: &BigRational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| format!("bad numerator in {s:?}"))?;
    let d: BigInt = d.parse().map_err(|_| format!("bad denominator in {s:?}"))?;
    if d == BigInt::from(0) {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(BigRational::new(n, d))
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms = self
            .terms()
            .map(|((t, q), c)| TermRepr {
                t,
                q,
                coeff: format_rational(c),
            })
            .collect();
        PolyRepr { terms }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(deserializer)?;
        let mut map = BTreeMap::new();
        for term in repr.terms {
            let c = parse_rational(&term.coeff).map_err(de::Error::custom)?;
            if map.insert((term.t, term.q), c).is_some() {
                return Err(de::Error::custom(format!(
                    "duplicate exponent ({}, {})",
                    term.t, term.q
                )));
            }
        }
        Ok(LaurentPoly::from_map(map))
    }
}

impl LaurentPoly {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializing a polynomial cannot fail")
    }

    pub fn from_json(s: &str) -> crate::Result<Self> {
        serde_json::from_str(s).map_err(|e| crate::Error::Parse(e.to_string()))
    }
}
