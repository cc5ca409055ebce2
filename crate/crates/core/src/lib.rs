pub mod braid;
pub mod error;

pub use error::{Error, Result};
pub mod diagram;
pub mod fsl;
pub mod tqft;
