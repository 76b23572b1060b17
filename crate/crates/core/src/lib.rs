pub mod acceptance;
pub mod constructions;
pub mod designs;
pub mod error;
pub mod exactmath;
pub mod format;
pub mod scheme;
pub mod search;

pub use error::{Error, Result};
