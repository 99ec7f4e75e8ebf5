//! Exact arithmetic: Laurent polynomials in `t, q`, polynomials in `z` over
//! them, and truncated series at `z = 0` and `z = infinity`.

mod json;
mod laurent;
mod series;
mod zpoly;

pub use json::{format_rational, parse_rational};
pub use laurent::{sign_pow, tq, Exponent, LaurentPoly, Var};
pub use series::{series_expand, FormalSeries, Point};
pub use zpoly::ZPoly;

use num_rational::BigRational;

/// `a / b` as an exact rational; panics on `b == 0`.
pub fn rat(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}
