//! Exact-arithmetic genus computations for complete intersections in
//! products of complex projective spaces.
//!
//! The crate is organized in layers:
//!
//! * [`qseries`] — truncated power series in `q^2` with arbitrary-precision
//!   rational coefficients, the value domain of every genus computed here.
//! * [`mseries`] — the truncated multivariate polynomial ring modelling the
//!   cohomology of `CP^{n_1} x ... x CP^{n_s}` with `q`-series coefficients.
//! * [`charseries`] — characteristic series of multiplicative genera
//!   (Witten, A-hat, L) as univariate series over the `q`-series ring, plus
//!   exact theta-function product expansions.
//! * [`geometry`] — the complete-intersection model: characteristic classes,
//!   the string-condition certificate, and genus evaluation by coefficient
//!   extraction.
//! * [`search`] — enumeration of string-admissible degree matrices and
//!   vanishing-verification sweeps.
//! * [`oracle`] — independent floating-complex verification: numeric theta
//!   functions, their transformation laws, and genus values recovered as
//!   contour-integral residues.

pub mod charseries;
pub mod error;
pub mod geometry;
pub mod mseries;
pub mod oracle;
pub mod qseries;
pub mod search;

pub use charseries::{CharSeries, SeriesKind, ThetaExpansion, ThetaKind};
pub use error::Error;
pub use geometry::{CompleteIntersection, GenusKind, GenusReport, StringCertificate};
pub use mseries::{LinearForm, MSeries};
pub use qseries::QSeries;
pub use search::{AmbientSpec, CanonicalMatrix, SearchBounds, SweepReport};

/// Arbitrary-precision rational, the coefficient type of the exact path.
pub type Rat = num_rational::BigRational;
/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;

/// Convenience constructor for small rationals.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(Int::from(numer), Int::from(denom))
}

/// Convenience constructor for small integers as rationals.
pub fn rat_int(n: i64) -> Rat {
    Rat::from(Int::from(n))
}
