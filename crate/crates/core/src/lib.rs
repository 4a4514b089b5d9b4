//! Subword complexes on powers of Coxeter elements, their counting-matrix
//! fans, completeness and regularity checks.

mod a4_data;
pub mod complex;
pub mod counting;
pub mod coxeter;
pub mod error;
pub mod fan;
pub mod regularity;

pub use error::{Result, SubfanError};
