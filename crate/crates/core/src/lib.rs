pub mod analysis;
pub mod chains;
pub mod characteristic;
pub mod classify;
pub mod complex;
pub mod cup;
pub mod homology;
pub mod linalg;
