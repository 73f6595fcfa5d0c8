pub mod curve;
pub mod engine;
pub mod error;
pub mod exact;
pub mod golden;
pub mod kaehler;
pub mod lie;
pub mod verify;

pub use error::{Error, Result};
