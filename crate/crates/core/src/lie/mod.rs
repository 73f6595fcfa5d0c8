//! Simple Lie algebras, loop elements and the centrally extended bracket.

pub mod algebra;
pub mod bracket;
pub mod loop_elem;

pub use crate::kaehler::psi;
pub use algebra::{LieVector, SimpleLieAlgebra};
pub use bracket::{
    monomial_cocycle, structure_table, BracketVariant, LoopAlgebra, ParityFilter, TableEntry,
};
pub use loop_elem::LoopElement;
