//! Placeholder.
pub struct PartialIsometry;
pub struct Factor;
#[derive(Debug, Clone, Copy)]
pub enum Normalization { UnitMinimal, UnitTotal }
#[derive(Debug, Clone)]
pub enum Comparison { Placeholder }
