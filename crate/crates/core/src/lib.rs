//! Exact computations around Laurent biorthogonal polynomials whose moments are
//! generating functions of Schröder paths, their q-Narayana specialization,
//! Toeplitz moment determinants counted by non-intersecting paths, and the matching
//! Aztec diamond domino tilings.

pub mod aztec;
pub mod coeffs;
pub mod dets;
pub mod error;
pub mod lbp;
pub mod nipaths;
pub mod paths;
pub mod qnarayana;
pub mod report;
pub mod ring;
pub mod svg;
pub mod symbolic;
pub mod verify;

pub use coeffs::CoefficientSeq;
pub use error::{Error, Result};
pub use report::{CheckEntry, Report};
pub use ring::{FormalSeries, LaurentPoly, Point, Var, ZPoly};
