pub mod claims;
pub mod cli;
pub mod engine;
pub mod error;
pub mod linalg;
pub mod scheme;
pub mod space;
pub mod terracini;

pub use error::{Error, Result};
