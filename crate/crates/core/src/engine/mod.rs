//! The `P_{k,i}` / `Q_{m,i}` coefficient families: recursions, generating
//! series, Bell polynomial expansions, the integral route and ODE checks.

pub mod bell;
pub mod integral;
pub mod ode;
pub mod quartic;
pub mod tables;

pub use bell::{bell, faa_series, neg32_coeff, BellTable};
pub use integral::{integral_p_series, integral_q_series};
pub use ode::{build_ode_data, ode_residual_p, ode_residual_q, OdeData};
pub use quartic::{quartic_ode_residual, quartic_recursion_check};
pub use tables::{p_coeff, p_series, q_coeff, q_series, CoeffTables, PCoeffTable, QCoeffTable};

/// Default truncation order `4n + 8` for a curve of degree `n`.
pub fn default_order(n: usize) -> i64 {
    4 * n as i64 + 8
}
