//! Placeholder.
pub struct TypeReport;
pub enum FactorType { Placeholder }
