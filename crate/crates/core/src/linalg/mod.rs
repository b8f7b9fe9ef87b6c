//! Exact linear algebra over the integers and over Z/2.

mod integer;
mod z2;

pub use integer::{invariant_factors_by_minors, smith_normal_form, IntegerMatrix, SmithDecomposition};
pub use z2::{z2_solve, BitVec, DimensionMismatch, Echelon, Z2Matrix};
