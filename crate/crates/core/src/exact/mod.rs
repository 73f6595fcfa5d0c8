//! Exact arithmetic substrate.
//!
//! Everything symbolic in the crate is built from four layers:
//! - [`Rational`]: arbitrary precision rationals (re-exported `BigRational`)
//! - [`ParamPoly`]: polynomials in named parameters with rational coefficients
//! - [`LaurentPoly`]: finitely supported Laurent polynomials in `t` over `ParamPoly`
//! - [`HalfGridSeries`]: truncated series in `z` with exponents on the grid `(1/2)Z`

pub mod laurent;
pub mod param_poly;
pub mod parse;
pub mod rational;
pub mod series;

pub use laurent::LaurentPoly;
pub use param_poly::{Monomial, ParamPoly};
pub use rational::{parse_rational, rat, ratio, Rational};
pub use series::{Exponent, HalfGridSeries, SeriesTerm};
