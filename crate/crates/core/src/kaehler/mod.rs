//! Reduction of 1-forms to the basis `omega_0 = t^-1 dt`,
//! `omega_k = t^-k u dt` (`1 <= k <= n`) of `Omega^1_R / dR`.

pub mod form;
pub mod lemmas;
pub mod oracle;
mod vector;

pub use form::{normalize, NormalForm, OneForm};
pub use lemmas::{
    cocycle, odd_class, psi, reduce_even_even, reduce_even_odd, reduce_odd_even, reduce_odd_odd,
    rewrite_step, RewriteRule,
};
pub use oracle::{oracle_reduce, QuotientOracle, ReductionWindow};
pub use vector::CentralVector;
