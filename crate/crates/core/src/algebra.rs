//! Placeholder.
pub struct VNAlgebra;
