pub mod error;
pub mod grassmann;
pub mod saes;
pub mod states;
pub mod isospec;
pub mod cli;
pub mod superfock;

pub use error::{Error, Result};
pub use grassmann::{AlgebraConfig, AnalyticFn, GrassmannElement, Involution, Part};
pub use superfock::{FockSpace, Letter, OperatorMatrix, Sector, SuperOperatorExpr, SuperState};

#[cfg(test)]
pub(crate) mod testutil;
